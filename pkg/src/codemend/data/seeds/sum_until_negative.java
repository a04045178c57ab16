public int sumUntilNegative(int[] data) {
    int total = 0;
    int i = 0;
    while (i < data.length && data[i] >= 0) {
        total += data[i];
        i++;
    }
    return total;
}
