#pragma once
#include <complex>
#include <cstddef>
#include <span>

namespace helmlab {

// Fixed-shape binary tree summation; the traversal depends only on the length.
template <class T>
T pairwise_sum(std::span<const T> v) {
    const std::size_t n = v.size();
    if (n == 0) return T{};
    if (n <= 8) {
        T s = v[0];
        for (std::size_t i = 1; i < n; ++i) s += v[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise_sum(v.subspan(0, h)) + pairwise_sum(v.subspan(h));
}

// Pairwise sum of fn(i), i in [0, n), without materializing the terms.
template <class T, class Fn>
T pairwise_reduce(std::size_t begin, std::size_t end, Fn&& fn) {
    const std::size_t n = end - begin;
    if (n == 0) return T{};
    if (n <= 8) {
        T s = fn(begin);
        for (std::size_t i = begin + 1; i < end; ++i) s += fn(i);
        return s;
    }
    const std::size_t mid = begin + n / 2;
    return pairwise_reduce<T>(begin, mid, fn) + pairwise_reduce<T>(mid, end, fn);
}

}  // namespace helmlab
