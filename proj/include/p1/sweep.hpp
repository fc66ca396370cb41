#pragma once

// Grid sweep kernel: evaluates an index-wise function over [0, n) into a vector.
// The OpenMP version and the serial reference produce identical output order.

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <vector>

namespace p1 {

template <class T>
std::vector<T> sweep_serial(std::size_t n, const std::function<T(std::size_t)>& fn) {
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) out.push_back(fn(i));
    return out;
}

template <class T>
std::vector<T> sweep_parallel(std::size_t n, const std::function<T(std::size_t)>& fn) {
    std::vector<std::optional<T>> slots(n);
    std::vector<std::exception_ptr> errs(n);
    const long long nn = static_cast<long long>(n);
#pragma omp parallel for schedule(dynamic, 1)
    for (long long i = 0; i < nn; ++i) {
        try {
            slots[i].emplace(fn(static_cast<std::size_t>(i)));
        } catch (...) {
            errs[i] = std::current_exception();
        }
    }
    std::vector<T> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (errs[i]) std::rethrow_exception(errs[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

// Selects the kernel; tests flip this to compare the two.
bool& sweep_use_parallel();

template <class T>
std::vector<T> sweep(std::size_t n, const std::function<T(std::size_t)>& fn) {
    return sweep_use_parallel() ? sweep_parallel<T>(n, fn) : sweep_serial<T>(n, fn);
}

}  // namespace p1
