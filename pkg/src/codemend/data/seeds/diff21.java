public int diff21(int n) {
    int diff = 21 - n;
    if (diff < 0) {
        diff = -diff;
        diff = diff * 2;
    }
    return diff;
}
