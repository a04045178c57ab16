public double celsiusToF(double celsius) {
    double f = celsius * 9.0 / 5.0 + 32.0;
    return f;
}
