#include "latticeq/core/quadratic_form.hpp"

#include <string>

#include "latticeq/core/errors.hpp"

namespace latticeq {

bool LinearForm::is_zero() const {
    for (const auto& c : coeffs) {
        if (c != 0) return false;
    }
    return true;
}

Rational LinearForm::evaluate(std::span<const std::int64_t> y) const {
    if (y.size() != coeffs.size()) throw PreconditionError("linear form arity mismatch");
    Rational s = 0;
    for (std::size_t j = 0; j < y.size(); ++j) s += coeffs[j] * y[j];
    return s;
}

QuadraticForm::QuadraticForm(std::size_t arity, std::vector<Rational> coeffs, bool require_positive_definite)
    : arity_(arity), coeffs_(std::move(coeffs)) {
    if (coeffs_.size() != arity_ * arity_) {
        throw PreconditionError("quadratic form needs " + std::to_string(arity_ * arity_) + " coefficients, got " +
                                std::to_string(coeffs_.size()));
    }
    for (std::size_t i = 0; i < arity_; ++i) {
        for (std::size_t j = i + 1; j < arity_; ++j) {
            if (coeff(i, j) != coeff(j, i)) throw PreconditionError("quadratic form matrix is not symmetric");
        }
    }
    positive_definite_ = is_positive_definite(*this);
    if (require_positive_definite && !positive_definite_) {
        throw PreconditionError("quadratic form is not positive definite");
    }
}

QuadraticForm QuadraticForm::zero(std::size_t arity) {
    return QuadraticForm(arity, std::vector<Rational>(arity * arity, Rational(0)));
}

Rational QuadraticForm::evaluate(std::span<const std::int64_t> x) const {
    if (x.size() != arity_) throw PreconditionError("quadratic form arity mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < arity_; ++i) {
        if (x[i] == 0) continue;
        Rational row = 0;
        for (std::size_t j = 0; j < arity_; ++j) row += coeff(i, j) * x[j];
        s += row * x[i];
    }
    return s;
}

Rational QuadraticForm::evaluate(std::span<const Rational> x) const {
    if (x.size() != arity_) throw PreconditionError("quadratic form arity mismatch");
    Rational s = 0;
    for (std::size_t i = 0; i < arity_; ++i) {
        Rational row = 0;
        for (std::size_t j = 0; j < arity_; ++j) row += coeff(i, j) * x[j];
        s += row * x[i];
    }
    return s;
}

bool is_positive_definite(const QuadraticForm& q) {
    const std::size_t m = q.arity();
    if (m == 0) return false;
    // Fraction-free elimination would be cheaper; exact Gaussian elimination
    // on rationals is plenty for the arities used here. The k-th pivot equals
    // minor_k / minor_{k-1}, so all pivots positive <=> all minors positive.
    std::vector<Rational> a = q.coeffs();
    for (std::size_t k = 0; k < m; ++k) {
        const Rational pivot = a[k * m + k];
        if (pivot <= 0) return false;
        for (std::size_t i = k + 1; i < m; ++i) {
            const Rational f = a[i * m + k] / pivot;
            if (f == 0) continue;
            for (std::size_t j = k; j < m; ++j) a[i * m + j] -= f * a[k * m + j];
        }
    }
    return true;
}

SingledOut single_out_variable(const QuadraticForm& q, std::size_t index) {
    const std::size_t m = q.arity();
    if (index >= m) throw PreconditionError("variable index out of range");
    SingledOut out;
    out.a = q.coeff(index, index);
    std::vector<Rational> rest;
    rest.reserve((m - 1) * (m - 1));
    for (std::size_t i = 0; i < m; ++i) {
        if (i == index) continue;
        out.b.coeffs.push_back(q.coeff(index, i));
        for (std::size_t j = 0; j < m; ++j) {
            if (j != index) rest.push_back(q.coeff(i, j));
        }
    }
    out.c = QuadraticForm(m - 1, std::move(rest));
    return out;
}

Rational linear_content(const LinearForm& b) {
    BigInt g = 0;
    BigInt l = 1;
    Rational first_nonzero = 0;
    for (const auto& c : b.coeffs) {
        if (c == 0) continue;
        if (first_nonzero == 0) first_nonzero = c;
        BigInt num = numer(c);
        g = gcd(g, num < 0 ? BigInt(-num) : num);
        l = lcm(l, denom(c));
    }
    if (g == 0) return 0;
    Rational content(g, l);
    return first_nonzero < 0 ? Rational(-content) : content;
}

Rational period(const Rational& a, const LinearForm& b) {
    if (a != 0) return a;
    if (!b.is_zero()) return linear_content(b);
    return 1;
}

DenseModulus dense_modulus(const Rational& a, const LinearForm& b) {
    if (a == 0) throw PreconditionError("d-dense domain is undefined for a = 0");
    BigInt d = denom(a);
    for (const auto& c : b.coeffs) d = lcm(d, denom(c));
    BigInt A = numer(a) * (d / denom(a));
    return {A < 0 ? BigInt(-A) : A, d};
}

bool dense_domain_membership(std::span<const std::int64_t> p, const Rational& a, const LinearForm& b) {
    const DenseModulus dm = dense_modulus(a, b);
    const Rational db = b.evaluate(p) * dm.D;
    // D clears every denominator of b, so D*b(p) is an integer.
    return numer(db) % dm.A == 0;
}

void to_json(nlohmann::json& j, const QuadraticForm& q) {
    nlohmann::json coeffs = nlohmann::json::array();
    auto part = [](const BigInt& v) -> nlohmann::json {
        if (v >= BigInt(INT64_MIN) && v <= BigInt(INT64_MAX)) return static_cast<std::int64_t>(v);
        return v.str();
    };
    for (const auto& c : q.coeffs()) coeffs.push_back({part(numer(c)), part(denom(c))});
    j = nlohmann::json{{"arity", q.arity()}, {"coeffs", coeffs}};
}

void from_json(const nlohmann::json& j, QuadraticForm& q) {
    const auto arity = j.at("arity").get<std::size_t>();
    std::vector<Rational> coeffs;
    for (const auto& c : j.at("coeffs")) {
        auto part = [](const nlohmann::json& v) {
            return v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<std::int64_t>());
        };
        if (!c.is_array() || c.size() != 2) throw PreconditionError("quadratic form coefficient must be [num, den]");
        BigInt den = part(c[1]);
        if (den == 0) throw PreconditionError("quadratic form coefficient with zero denominator");
        coeffs.emplace_back(part(c[0]), den);
    }
    q = QuadraticForm(arity, std::move(coeffs));
}

}  // namespace latticeq
