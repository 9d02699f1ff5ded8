#include "latticeq/core/phase.hpp"

#include <cmath>
#include <numbers>

#include "latticeq/core/errors.hpp"

namespace latticeq {

namespace {

void normalize(BigInt& num, BigInt& den) {
    if (den == 0) throw PreconditionError("phase exponent with zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    BigInt g = gcd(num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    num = mod_floor(num, 2 * den);
}

// e^{-2 pi i x} for x = r/m in [0, 1), evaluated on the nearest half-turn
// representative so the argument stays in [-pi, pi].
Complex turn_from_fraction(double x) {
    if (x > 0.5) x -= 1.0;
    double theta = -2.0 * std::numbers::pi * x;
    return {std::cos(theta), std::sin(theta)};
}

}  // namespace

PhaseExponent::PhaseExponent(const Rational& r) : num_(numer(r)), den_(denom(r)) {
    normalize(num_, den_);
}

PhaseExponent::PhaseExponent(const BigInt& num, const BigInt& den) : num_(num), den_(den) {
    normalize(num_, den_);
}

PhaseExponent PhaseExponent::operator+(const PhaseExponent& other) const {
    return PhaseExponent(value() + other.value());
}

Complex turn_phase(std::uint64_t r, std::uint64_t m) {
    if (r == 0) return {1.0, 0.0};
    // Quarter turns: compare 4r against m, 2m, 3m without overflow (m < 2^62).
    if ((m & 3u) == 0) {
        std::uint64_t q = m >> 2;
        if (r == q) return {0.0, -1.0};
        if (r == 2 * q) return {-1.0, 0.0};
        if (r == 3 * q) return {0.0, 1.0};
    } else if ((m & 1u) == 0 && r == (m >> 1)) {
        return {-1.0, 0.0};
    }
    return turn_from_fraction(static_cast<double>(r) / static_cast<double>(m));
}

Complex turn_phase(const BigInt& r, const BigInt& m) {
    if (m <= BigInt(UINT64_MAX >> 2)) {
        return turn_phase(static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(m));
    }
    if (r == 0) return {1.0, 0.0};
    BigInt four_r = 4 * r;
    if (four_r == m) return {0.0, -1.0};
    if (four_r == 2 * m) return {-1.0, 0.0};
    if (four_r == 3 * m) return {0.0, 1.0};
    return turn_from_fraction(to_double(Rational(r, m)));
}

Complex eval_phase(const PhaseExponent& p) {
    // e^{-pi i num/den} = e^{-2 pi i num / (2 den)}
    return turn_phase(p.num(), 2 * p.den());
}

PolyPhase::PolyPhase(std::span<const Rational> coeffs, std::int64_t n) {
    if (n <= 0) throw PreconditionError("PolyPhase needs n > 0");
    if (coeffs.empty()) throw PreconditionError("PolyPhase needs at least one coefficient");
    denominator_ = 1;
    for (const auto& c : coeffs) denominator_ = lcm(denominator_, denom(c));
    modulus_ = 2 * denominator_ * BigInt(n);
    int_coeffs_.reserve(coeffs.size());
    for (const auto& c : coeffs) {
        int_coeffs_.push_back(mod_floor(numer(c) * (denominator_ / denom(c)), modulus_));
    }
    while (int_coeffs_.size() > 1 && int_coeffs_.back() == 0) int_coeffs_.pop_back();
    fast_ = modulus_ < (BigInt(1) << 62);
    if (fast_) {
        modulus_u64_ = static_cast<std::uint64_t>(modulus_);
        for (const auto& c : int_coeffs_) coeff_mod_.push_back(static_cast<std::uint64_t>(c));
    }
}

std::uint64_t PolyPhase::residue_u64(std::int64_t k) const {
    const std::uint64_t m = modulus_u64_;
    std::int64_t km = k % static_cast<std::int64_t>(m);
    if (km < 0) km += static_cast<std::int64_t>(m);
    const auto x = static_cast<unsigned __int128>(km);
    unsigned __int128 acc = 0;
    for (std::size_t j = coeff_mod_.size(); j-- > 0;) {
        acc = (acc * x + coeff_mod_[j]) % m;
    }
    return static_cast<std::uint64_t>(acc);
}

BigInt PolyPhase::residue_big(std::int64_t k) const {
    BigInt x = mod_floor(BigInt(k), modulus_);
    BigInt acc = 0;
    for (std::size_t j = int_coeffs_.size(); j-- > 0;) {
        acc = (acc * x + int_coeffs_[j]) % modulus_;
    }
    return acc;
}

Complex PolyPhase::at(std::int64_t k) const {
    if (fast_) return turn_phase(residue_u64(k), modulus_u64_);
    return turn_phase(residue_big(k), modulus_);
}

PhaseExponent PolyPhase::exponent(std::int64_t k) const {
    // e^{-2 pi i N/M} = e^{-pi i N/(M/2)}
    BigInt r = fast_ ? BigInt(residue_u64(k)) : residue_big(k);
    return PhaseExponent(r, modulus_ / 2);
}

}  // namespace latticeq
