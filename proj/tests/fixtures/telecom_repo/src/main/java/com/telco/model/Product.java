package com.telco.model;

import java.util.Objects;

public class Product implements Comparable<Product> {
    private int id;
    private String name, description;
    private double price = 0.0;
    private ProductType type;

    static {
        System.setProperty("product.loaded", "true");
    }

    {
        price = 0.0;
    }

    public Product(int id, String name) {
        this.id = id;
        this.name = name;
    }

    public int getId() { return id; }

    public String getName() {
        return name;
    }

    public double getPrice() {
        return price;
    }

    public void setPrice(double price) {
        if (price < 0) {
            throw new IllegalArgumentException("negative price: " + price);
        }
        this.price = price;
    }

    @Override
    public int compareTo(Product other) {
        return Integer.compare(id, other.id);
    }

    @Override
    public boolean equals(Object o) {
        if (!(o instanceof Product)) return false;
        return id == ((Product) o).id && Objects.equals(name, ((Product) o).name);
    }

    @Override
    public int hashCode() {
        return Objects.hash(id, name);
    }

    public static class Builder {
        private int id;
        private String name;

        public Builder id(int id) {
            this.id = id;
            return this;
        }

        public Product build() {
            return new Product(id, name);
        }
    }
}
