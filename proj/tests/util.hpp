#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include <doctest.h>

#define CHECK_NEAR(a, b, tol)                                                              \
    do {                                                                                   \
        const double a_ = (a), b_ = (b);                                                   \
        INFO(#a " = " << a_ << ", expected " << b_ << " +- " << (tol));                    \
        CHECK(std::abs(a_ - b_) <= (tol));                                                 \
    } while (0)

namespace tu {

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
};

}  // namespace tu
