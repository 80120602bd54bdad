package sample.cc;

class DeepBranching {
    int grind(int x) {
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        if (x > 1) { x = x - 1; }
        return x;
    }
}
