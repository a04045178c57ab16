public void markGrid(int rows, int cols) {
    for (int r = 0; r < rows; r++) {
        String line = "";
        for (int c = 0; c < cols; c++) {
            line = line + "*";
        }
        System.out.println(line);
    }
}
