public int countPositive(int[] xs) {
    int count = 0;
    int i = 0;
    while (i < xs.length) {
        if (xs[i] > 0) {
            count = count + 1;
        }
        i++;
    }
    return count;
}
