public boolean lastDigitMatch(int a, int b) {
    int da = a % 10;
    int db = b % 10;
    return da == db;
}
