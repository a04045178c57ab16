public int makeTens(int n) {
    int tens = 0;
    while (n >= 10) {
        n -= 10;
        tens++;
    }
    return tens;
}
