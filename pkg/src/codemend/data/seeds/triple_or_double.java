public int tripleOrDouble(int n) {
    if (n > 10) {
        return n * 3;
    }
    return n * 2;
}
