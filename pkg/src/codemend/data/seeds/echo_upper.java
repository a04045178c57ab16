public void echoUpper(String text) {
    String loud = text.toUpperCase();
    System.out.println(loud);
    System.out.println("done");
}
