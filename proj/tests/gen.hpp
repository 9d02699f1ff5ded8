#pragma once
// Hand-rolled generators for the property tests.

#include <cstdint>
#include <random>
#include <vector>

#include "latticeq/core/quadratic_form.hpp"
#include "latticeq/core/rational.hpp"

namespace gen {

using latticeq::QuadraticForm;
using latticeq::Rational;

inline std::mt19937_64& rng() {
    static std::mt19937_64 r(20261014);
    return r;
}

inline std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng());
}

inline double real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// Small rational p/q with |p| <= num_max and 1 <= q <= den_max.
inline Rational rational(std::int64_t num_max = 9, std::int64_t den_max = 6) {
    return Rational(integer(-num_max, num_max), integer(1, den_max));
}

inline Rational nonzero_rational(std::int64_t num_max = 9, std::int64_t den_max = 6) {
    for (;;) {
        Rational r = rational(num_max, den_max);
        if (r != 0) return r;
    }
}

/// Even n in [lo, hi].
inline std::int64_t even_n(std::int64_t lo, std::int64_t hi) { return 2 * integer((lo + 1) / 2, hi / 2); }

inline QuadraticForm form(std::size_t m) {
    std::vector<Rational> c(m * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i; j < m; ++j) {
            c[i * m + j] = rational();
            c[j * m + i] = c[i * m + j];
        }
    }
    return QuadraticForm(m, std::move(c));
}

inline std::vector<std::int64_t> point(std::size_t m, std::int64_t n) {
    std::vector<std::int64_t> p(m);
    for (auto& v : p) v = integer(-n / 2, n / 2 - 1);
    return p;
}

}  // namespace gen
