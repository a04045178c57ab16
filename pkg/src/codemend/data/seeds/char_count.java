public int charCount(String text, char target) {
    int hits = 0;
    for (int i = 0; i < text.length(); i++) {
        if (text.charAt(i) == target) {
            hits++;
        }
    }
    return hits;
}
