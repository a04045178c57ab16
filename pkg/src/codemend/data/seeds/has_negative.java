public boolean hasNegative(int[] data) {
    for (int i = 0; i < data.length; i++) {
        if (data[i] < 0) {
            return true;
        }
    }
    return false;
}
