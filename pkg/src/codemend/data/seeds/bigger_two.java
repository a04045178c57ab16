public int biggerTwo(int a, int b) {
    // returns the larger of the two arguments
    if (a >= b) {
        return a;
    }
    return b;
}
