public int countDown(int n) {
    do {
        n--;
    } while (n > 0);
    return n;
}
