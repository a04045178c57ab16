public boolean parrotTrouble(boolean talking, int hour) {
    boolean early = hour < 7;
    boolean late = hour > 20;
    return talking && (early || late);
}
