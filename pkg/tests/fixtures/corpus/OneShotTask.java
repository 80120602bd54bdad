package sample;

/** A whole class wrapped around a single operation. */
class OneShotTask {
    public void execute() {
        int total = 0;
        total = total + 1;
    }
}
