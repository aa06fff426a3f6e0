package org.demo;

public class Broken {
    private String label = "ok";

    public void fine() {
        System.out.println(label);
    }

    public void broken( {
        int x = ;
    }
