public void printSquares(int n) {
    for (int i = 1; i <= n; i++) {
        int square = i * i;
        System.out.println("square: " + square);
    }
}
