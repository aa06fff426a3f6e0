package com.shop.cart;

import java.util.ArrayList;
import java.util.List;

/**
 * A shopping cart holding item prices in cents.
 */
public class Cart {
    private final List<Long> items = new ArrayList<>();
    private static final int MAX_ITEMS = 50;

    public Cart(List<Long> initial) {
        items.addAll(initial);
    }

    public void addItem(long priceCents) {
        if (items.size() >= MAX_ITEMS) {
            throw new IllegalStateException("cart full");
        }
        items.add(priceCents);
    }

    // Sum of all item prices.
    public long totalCents() {
        long total = 0;
        for (long p : items) {
            total += p;
        }
        return total;
    }
}
