public int[] doubleAll(int[] nums) {
    int[] out = new int[nums.length];
    for (int i = 0; i < nums.length; i++) {
        out[i] = nums[i] * 2;
    }
    return out;
}
