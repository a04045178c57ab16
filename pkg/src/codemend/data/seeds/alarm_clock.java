public String alarmClock(int day, boolean vacation) {
    boolean weekend = day == 0 || day == 6;
    if (vacation) {
        if (weekend) {
            return "off";
        }
        return "10:00";
    }
    if (weekend) {
        return "10:00";
    }
    return "7:00";
}
