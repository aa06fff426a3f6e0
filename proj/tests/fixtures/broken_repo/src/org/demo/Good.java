package org.demo;

public class Good {
    private int count;

    public int next() {
        return ++count;
    }
}
