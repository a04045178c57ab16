public String vowelOrNot(char letter) {
    switch (letter) {
        case 'a':
        case 'e':
        case 'i':
        case 'o':
        case 'u':
            return "vowel";
        default:
            return "consonant";
    }
}
