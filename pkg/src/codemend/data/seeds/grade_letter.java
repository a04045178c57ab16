public String gradeLetter(int score) {
    switch (score / 10) {
        case 10:
            return "A";
        case 9:
            return "A";
        case 8:
            return "B";
        case 7:
            return "C";
        default:
            return "F";
    }
}
