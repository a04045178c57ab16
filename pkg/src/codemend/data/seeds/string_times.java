public String stringTimes(String str, int n) {
    String result = "";
    int i = 0;
    while (i < n) {
        result = result + str;
        i++;
    }
    return result;
}
