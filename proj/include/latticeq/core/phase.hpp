#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "latticeq/core/rational.hpp"

namespace latticeq {

using Complex = std::complex<double>;

/// Exact exponent r of the unit phase e^{-pi i r}, kept reduced in [0, 2).
class PhaseExponent {
public:
    PhaseExponent() = default;
    explicit PhaseExponent(const Rational& r);
    PhaseExponent(const BigInt& num, const BigInt& den);

    const BigInt& num() const noexcept { return num_; }
    const BigInt& den() const noexcept { return den_; }
    Rational value() const { return Rational(num_, den_); }

    PhaseExponent operator+(const PhaseExponent& other) const;
    bool operator==(const PhaseExponent& other) const = default;

private:
    BigInt num_ = 0;
    BigInt den_ = 1;
};

/// e^{-pi i r}. Quarter turns are returned exactly.
Complex eval_phase(const PhaseExponent& p);

/// e^{-2 pi i r / m} for 0 <= r < m. Quarter turns are exact.
Complex turn_phase(std::uint64_t r, std::uint64_t m);
Complex turn_phase(const BigInt& r, const BigInt& m);

/// Exact phase of an integer-coefficient polynomial:
///   k -> e^{-pi i P(k) / n},  P(k) = sum_j coeff_j k^j with rational coeff_j.
/// Internally P is cleared to integers over a common denominator D and the
/// residue of D*P(k) is tracked modulo 2*D*n, so no rounding happens before the
/// final trigonometric evaluation.
class PolyPhase {
public:
    PolyPhase(std::span<const Rational> coeffs, std::int64_t n);

    Complex at(std::int64_t k) const;
    PhaseExponent exponent(std::int64_t k) const;

    /// Calls sink(value) for k = first, first+1, ..., first+count-1 using a
    /// forward-difference table. Same results as at(), faster for long runs.
    template <class Sink>
    void walk(std::int64_t first, std::int64_t count, Sink&& sink) const;

    std::size_t degree() const noexcept { return int_coeffs_.size() - 1; }
    bool fast() const noexcept { return fast_; }

private:
    std::uint64_t residue_u64(std::int64_t k) const;
    BigInt residue_big(std::int64_t k) const;

    std::vector<BigInt> int_coeffs_;
    BigInt modulus_;
    BigInt denominator_;
    bool fast_ = false;
    std::vector<std::uint64_t> coeff_mod_;
    std::uint64_t modulus_u64_ = 0;
};

namespace detail {

inline std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    std::uint64_t s = a + b;  // a, b < m < 2^62
    return s >= m ? s - m : s;
}

}  // namespace detail

template <class Sink>
void PolyPhase::walk(std::int64_t first, std::int64_t count, Sink&& sink) const {
    if (count <= 0) return;
    const std::size_t d = degree();
    if (!fast_ || count <= static_cast<std::int64_t>(d) + 1) {
        for (std::int64_t j = 0; j < count; ++j) sink(at(first + j));
        return;
    }
    const std::uint64_t m = modulus_u64_;
    // diff[j] holds the j-th forward difference at the current k.
    std::vector<std::uint64_t> diff(d + 1);
    std::vector<std::uint64_t> vals(d + 1);
    for (std::size_t j = 0; j <= d; ++j) vals[j] = residue_u64(first + static_cast<std::int64_t>(j));
    for (std::size_t level = 0; level <= d; ++level) {
        diff[level] = vals[0];
        for (std::size_t j = 0; j + 1 < vals.size() - level; ++j) {
            vals[j] = vals[j + 1] >= vals[j] ? vals[j + 1] - vals[j] : vals[j + 1] + m - vals[j];
        }
    }
    for (std::int64_t step = 0; step < count; ++step) {
        sink(turn_phase(diff[0], m));
        for (std::size_t level = 0; level < d; ++level) {
            diff[level] = detail::add_mod(diff[level], diff[level + 1], m);
        }
    }
}

}  // namespace latticeq
