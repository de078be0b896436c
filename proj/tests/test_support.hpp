#pragma once

#include "qhtk/int_matrix.hpp"

#include <initializer_list>
#include <vector>

namespace qhtest {

inline qhtk::IntMatrix mat(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<qhtk::Int>> r;
    for (const auto& row : rows) {
        std::vector<qhtk::Int> v;
        for (long long x : row) v.emplace_back(x);
        r.push_back(std::move(v));
    }
    return qhtk::IntMatrix::from_rows(r);
}

inline std::vector<qhtk::Int> vec(std::initializer_list<long long> xs) {
    std::vector<qhtk::Int> v;
    for (long long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace qhtest
