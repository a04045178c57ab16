public double average(int[] scores) {
    double total = 0;
    for (int i = 0; i < scores.length; i++) {
        total += scores[i];
    }
    return total / scores.length;
}
