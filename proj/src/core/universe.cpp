#include "latticeq/core/universe.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "latticeq/core/errors.hpp"

namespace latticeq {

FiniteUniverse::FiniteUniverse(std::int64_t n, std::int64_t h_n) : n_(n), h_n_(h_n) {
    if (n < 2 || n % 2 != 0) {
        throw PreconditionError("universe size n must be a positive even integer, got " + std::to_string(n));
    }
    if (h_n < 1) {
        throw PreconditionError("discrete Planck integer h_n must be >= 1, got " + std::to_string(h_n));
    }
    if (std::gcd(h_n, n) != 1) {
        throw PreconditionError("gcd(h_n, n) must be 1 for the twisted Fourier basis to be orthonormal; gcd(" +
                                std::to_string(h_n) + ", " + std::to_string(n) + ") = " +
                                std::to_string(std::gcd(h_n, n)));
    }
    spacing_ = std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
}

double FiniteUniverse::nu() const noexcept {
    return 2.0 * std::numbers::pi / static_cast<double>(n_);
}

std::int64_t FiniteUniverse::wrap(std::int64_t k) const noexcept {
    std::int64_t r = (k + n_ / 2) % n_;
    if (r < 0) r += n_;
    return r - n_ / 2;
}

ContinuumRef::ContinuumRef(double h) : hbar(h) {
    if (!(h > 0.0) || !std::isfinite(h)) throw PreconditionError("hbar must be a positive real");
}

Interval::Interval(double l, double h) : lo(l), hi(h) {
    if (!(l < h)) throw PreconditionError("interval needs lo < hi");
}

bool Interval::bounded() const noexcept {
    return std::isfinite(lo) && std::isfinite(hi);
}

FiniteUniverse make_universe(std::int64_t n, std::int64_t h_n) {
    return FiniteUniverse(n, h_n);
}

double embed_point(const FiniteUniverse& u, std::int64_t k) {
    if (!u.contains(k)) {
        throw PreconditionError("lattice point " + std::to_string(k) + " outside [" + std::to_string(u.min_point()) +
                                ", " + std::to_string(u.max_point()) + "]");
    }
    return static_cast<double>(k) * u.spacing();
}

double lattice_distance(const FiniteUniverse& u, std::int64_t k1, std::int64_t k2) {
    if (!u.contains(k1) || !u.contains(k2)) throw PreconditionError("lattice point out of range");
    std::int64_t d = k1 > k2 ? k1 - k2 : k2 - k1;
    d = std::min(d, u.n() - d);
    return static_cast<double>(d) * u.spacing();
}

double window_diameter_bound(const FiniteUniverse& u) {
    return std::sqrt(static_cast<double>(u.n()) / (2.0 * std::numbers::pi));
}

std::int64_t max_local_window(const FiniteUniverse& u) {
    // 2m <= sqrt(n/2pi)  <=>  8 pi m^2 <= n
    auto m = static_cast<std::int64_t>(std::floor(window_diameter_bound(u) / 2.0));
    const double n = static_cast<double>(u.n());
    while (m > 0 && 8.0 * std::numbers::pi * static_cast<double>(m) * static_cast<double>(m) > n) --m;
    while (8.0 * std::numbers::pi * static_cast<double>(m + 1) * static_cast<double>(m + 1) <= n) ++m;
    return m;
}

std::int64_t highly_divisible(int bound, std::int64_t scale) {
    if (bound < 1 || scale < 1) throw PreconditionError("highly_divisible needs bound >= 1 and scale >= 1");
    std::int64_t l = 1;
    for (std::int64_t j = 2; j <= bound; ++j) {
        std::int64_t g = std::gcd(l, j);
        if (l / g > INT64_MAX / j) throw PreconditionError("lcm(1.." + std::to_string(bound) + ") overflows");
        l = l / g * j;
    }
    if (l > INT64_MAX / scale) throw PreconditionError("highly divisible n overflows");
    return l * scale;
}

int divisibility_bound(std::int64_t n) {
    int b = 0;
    while (b < 64 && n % (b + 1) == 0) ++b;
    return b;
}

}  // namespace latticeq
