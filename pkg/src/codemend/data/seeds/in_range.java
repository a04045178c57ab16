public boolean inRange(int n, int low, int high) {
    boolean ok = n >= low && n <= high;
    return ok;
}
