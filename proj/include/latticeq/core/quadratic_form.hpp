#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json.hpp>

#include "latticeq/core/rational.hpp"

namespace latticeq {

/// Linear form b(y) = sum_j coeffs[j] * y_j over Q.
struct LinearForm {
    std::vector<Rational> coeffs;

    std::size_t arity() const noexcept { return coeffs.size(); }
    bool is_zero() const;
    Rational evaluate(std::span<const std::int64_t> y) const;
    bool operator==(const LinearForm&) const = default;
};

/// Q(x) = x^T C x with C a symmetric rational matrix: the diagonal carries the
/// squared-term coefficients and each off-diagonal entry half a cross term.
class QuadraticForm {
public:
    QuadraticForm() = default;

    /// Row-major coefficients; symmetry is checked exactly. When
    /// require_positive_definite is set, leading principal minors are verified.
    QuadraticForm(std::size_t arity, std::vector<Rational> coeffs, bool require_positive_definite = false);

    static QuadraticForm zero(std::size_t arity);

    std::size_t arity() const noexcept { return arity_; }
    const Rational& coeff(std::size_t i, std::size_t j) const { return coeffs_[i * arity_ + j]; }
    const std::vector<Rational>& coeffs() const noexcept { return coeffs_; }
    bool positive_definite() const noexcept { return positive_definite_; }

    Rational evaluate(std::span<const std::int64_t> x) const;
    Rational evaluate(std::span<const Rational> x) const;

    bool operator==(const QuadraticForm& other) const {
        return arity_ == other.arity_ && coeffs_ == other.coeffs_;
    }

private:
    std::size_t arity_ = 0;
    std::vector<Rational> coeffs_;
    bool positive_definite_ = false;
};

/// Exact test through leading principal minors.
bool is_positive_definite(const QuadraticForm& q);

/// Q = a x_i^2 + 2 x_i b(y) + c(y), y the remaining variables in order.
struct SingledOut {
    Rational a;
    LinearForm b;
    QuadraticForm c;
};

SingledOut single_out_variable(const QuadraticForm& q, std::size_t index);

/// Positive rational g with b = g * (L_1 y_1 + ... ) for coprime integers L,
/// signed so the first nonzero L is positive. Zero for the zero form.
Rational linear_content(const LinearForm& b);

/// Period with respect to the singled-out variable: a if a != 0, else the
/// content of b, else 1 for constant predicates. The cyclic period of the
/// summand in k is n / period, not the period itself.
Rational period(const Rational& a, const LinearForm& b);

/// Writes a = A / D with D clearing the denominators of a and of every
/// coefficient of b.
struct DenseModulus {
    BigInt A;
    BigInt D;
};
DenseModulus dense_modulus(const Rational& a, const LinearForm& b);

/// p in X_a  <=>  A | D b(p)  <=>  b(p)/a is an integer.
bool dense_domain_membership(std::span<const std::int64_t> p, const Rational& a, const LinearForm& b);

void to_json(nlohmann::json& j, const QuadraticForm& q);
void from_json(const nlohmann::json& j, QuadraticForm& q);

}  // namespace latticeq
