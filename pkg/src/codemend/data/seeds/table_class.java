public class Times {
    public int twice(int n) {
        return n * 2;
    }

    public int thrice(int n) {
        return n * 3;
    }
}
