public String greeting(String name) {
    String message = "Hello, " + name + "!";
    return message;
}
