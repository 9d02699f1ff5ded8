#pragma once

#include <cstdint>
#include <limits>

namespace latticeq {

/// The lattice universe Z cap [-n/2, n/2) with spacing sqrt(2 pi / n), a
/// discrete Planck integer h_n and phase unit nu = 2 pi / n.
///
/// n is even and gcd(h_n, n) = 1; both are checked on construction.
/// sqrt(n) is not required to be an integer.
class FiniteUniverse {
public:
    FiniteUniverse(std::int64_t n, std::int64_t h_n);

    std::int64_t n() const noexcept { return n_; }
    std::int64_t h_n() const noexcept { return h_n_; }

    /// sqrt(2 pi / n); also the measure of a single lattice point.
    double spacing() const noexcept { return spacing_; }
    double point_measure() const noexcept { return spacing_; }

    /// nu = 2 pi / n as the pair (numerator multiple of pi, denominator) = (2, n).
    std::int64_t nu_pi_numerator() const noexcept { return 2; }
    std::int64_t nu_denominator() const noexcept { return n_; }
    double nu() const noexcept;

    std::int64_t min_point() const noexcept { return -n_ / 2; }
    std::int64_t max_point() const noexcept { return n_ / 2 - 1; }
    bool contains(std::int64_t k) const noexcept { return k >= min_point() && k <= max_point(); }

    /// Storage index of lattice point k, in [0, n).
    std::size_t index_of(std::int64_t k) const noexcept { return static_cast<std::size_t>(k + n_ / 2); }
    std::int64_t point_at(std::size_t index) const noexcept { return static_cast<std::int64_t>(index) - n_ / 2; }

    /// Representative of k modulo n inside [-n/2, n/2).
    std::int64_t wrap(std::int64_t k) const noexcept;

    bool operator==(const FiniteUniverse&) const = default;

private:
    std::int64_t n_;
    std::int64_t h_n_;
    double spacing_;
};

/// The continuum universe U(inf) = R with reduced Planck constant hbar > 0.
struct ContinuumRef {
    explicit ContinuumRef(double hbar);
    double hbar;
};

/// Closed named domain [lo, hi]; infinite endpoints mark unbounded support.
struct Interval {
    Interval(double lo, double hi);

    double lo;
    double hi;

    bool bounded() const noexcept;
    bool contains(double x) const noexcept { return x >= lo && x <= hi; }
    double length() const noexcept { return hi - lo; }

    static constexpr double inf = std::numeric_limits<double>::infinity();
};

FiniteUniverse make_universe(std::int64_t n, std::int64_t h_n);

/// k -> k * sqrt(2 pi / n).
double embed_point(const FiniteUniverse& u, std::int64_t k);

/// spacing * cyclic distance in Z / nZ.
double lattice_distance(const FiniteUniverse& u, std::int64_t k1, std::int64_t k2);

/// Largest m with 2m <= sqrt(n / 2 pi). Zero means the universe is too small
/// for any local window.
std::int64_t max_local_window(const FiniteUniverse& u);

/// sqrt(n / 2 pi): diameter bound for windows in embedded coordinates.
double window_diameter_bound(const FiniteUniverse& u);

/// lcm(1..bound) * scale. Throws on 64-bit overflow.
std::int64_t highly_divisible(int bound, std::int64_t scale = 1);

/// Largest B such that every integer 1..B divides n.
int divisibility_bound(std::int64_t n);

}  // namespace latticeq
