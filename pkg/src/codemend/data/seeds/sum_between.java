public int sumBetween(int lo, int hi) {
    int sum = 0;
    for (int i = lo; i <= hi; i++) {
        sum = sum + i;
    }
    return sum;
}
