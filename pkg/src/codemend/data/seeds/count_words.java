public int countWords(String sentence) {
    String trimmed = sentence.trim();
    if (trimmed.isEmpty()) {
        return 0;
    }
    String[] parts = trimmed.split(" ");
    return parts.length;
}
