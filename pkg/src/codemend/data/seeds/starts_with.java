public boolean startsWithHi(String str) {
    if (str.length() < 2) {
        return false;
    }
    String head = str.substring(0, 2);
    return head.equals("hi");
}
