public int sumDoubles(int a, int b) {
    int sum = a + b;
    if (a == b) {
        sum = sum * 2;
    }
    return sum;
}
