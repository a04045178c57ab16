public int safeDivide(int a, int b) {
    try {
        return a / b;
    } catch (Exception e) {
        return 0;
    }
}
