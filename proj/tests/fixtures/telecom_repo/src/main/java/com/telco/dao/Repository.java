package com.telco.dao;

import java.util.List;
import java.util.Optional;

public interface Repository<T, K> {
    String DEFAULT_SCHEMA = "telco";

    List<T> findAll();

    Optional<T> findById(K id);

    default int count() {
        return findAll().size();
    }

    static <T> boolean isEmpty(Repository<T, ?> repo) {
        return repo.count() == 0;
    }
}
