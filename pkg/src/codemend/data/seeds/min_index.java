public int minIndex(int[] arr) {
    int idx = 0;
    for (int i = 1; i < arr.length; i++) {
        if (arr[i] < arr[idx]) {
            idx = i;
        }
    }
    return idx;
}
