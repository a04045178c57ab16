public String reverseString(String text) {
    String result = "";
    for (int i = text.length() - 1; i >= 0; i--) {
        result = result + text.charAt(i);
    }
    return result;
}
