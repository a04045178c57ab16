public boolean sleepIn(boolean weekday, boolean vacation) {
    /* we sleep in when it is not a weekday or we are on vacation */
    if (!weekday || vacation) {
        return true;
    }
    return false;
}
