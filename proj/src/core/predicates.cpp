#include "latticeq/core/predicates.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "latticeq/core/errors.hpp"

namespace latticeq {

PhaseExponent gaussian_exponent(const GaussianPredicate& pred, std::span<const std::int64_t> k,
                                const FiniteUniverse& u) {
    if (k.size() != pred.arity()) {
        throw PreconditionError("Gaussian predicate has arity " + std::to_string(pred.arity()) + ", got " +
                                std::to_string(k.size()) + " arguments");
    }
    return PhaseExponent(pred.form.evaluate(k) / u.n());
}

Complex eval_gaussian(const GaussianPredicate& pred, std::span<const std::int64_t> k, const FiniteUniverse& u) {
    return pred.eta * eval_phase(gaussian_exponent(pred, k, u));
}

Complex eval_gaussian_continuum(const GaussianPredicate& pred, std::span<const double> x) {
    if (x.size() != pred.arity()) throw PreconditionError("Gaussian predicate arity mismatch");
    double q = 0.0;
    const std::size_t m = pred.arity();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) q += to_double(pred.form.coeff(i, j)) * x[i] * x[j];
    }
    return pred.eta * std::polar(1.0, -q / 2.0);
}

PolyPhase BoundGaussian::phase() const {
    const Rational coeffs[] = {c, 2 * b, a};
    return PolyPhase(coeffs, n);
}

Complex BoundGaussian::at(std::int64_t k) const {
    return eta * phase().at(k);
}

BoundGaussian bind_gaussian(const GaussianPredicate& pred, std::size_t index, std::span<const std::int64_t> params,
                            const FiniteUniverse& u) {
    if (pred.arity() == 0 || index >= pred.arity()) throw PreconditionError("quantified variable index out of range");
    if (params.size() + 1 != pred.arity()) {
        throw PreconditionError("predicate has " + std::to_string(pred.arity() - 1) + " parameters, got " +
                                std::to_string(params.size()));
    }
    SingledOut parts = single_out_variable(pred.form, index);
    BoundGaussian g{pred.eta, parts.a, parts.b.evaluate(params), parts.c.evaluate(params), parts.b, u.n()};
    return g;
}

PerturbedGaussianPredicate::PerturbedGaussianPredicate(std::int64_t H, std::int64_t L, const FiniteUniverse& u)
    : H_(H), L_(L), n_(u.n()) {
    if (H < 1 || L < 1) throw PreconditionError("perturbed Gaussian needs positive integers H and L");
    if (n_ % H != 0) throw PreconditionError("H = " + std::to_string(H) + " must divide n = " + std::to_string(n_));
    if (n_ % (2 * H) != 0 || n_ / (2 * H) <= 1) {
        throw PreconditionError("n/(2H) must be an integer greater than 1 (n = " + std::to_string(n_) +
                                ", H = " + std::to_string(H) + ")");
    }
}

double PerturbedGaussianPredicate::h() const noexcept {
    return 1.0 / (2.0 * std::numbers::pi * static_cast<double>(H_));
}

double PerturbedGaussianPredicate::lambda() const noexcept {
    return static_cast<double>(n_) / static_cast<double>(L_);
}

PolyPhase PerturbedGaussianPredicate::phase() const {
    const Rational coeffs[] = {0, 0, Rational(H_), 0, Rational(H_, L_)};
    return PolyPhase(coeffs, n_);
}

PolyPhase PerturbedGaussianPredicate::gaussian_phase() const {
    const Rational coeffs[] = {0, 0, Rational(H_)};
    return PolyPhase(coeffs, n_);
}

PolyPhase PerturbedGaussianPredicate::quartic_phase() const {
    const Rational coeffs[] = {0, 0, 0, 0, Rational(H_, L_)};
    return PolyPhase(coeffs, n_);
}

Complex PerturbedGaussianPredicate::at(std::int64_t k) const {
    return phase().at(k);
}

Complex SampledPredicate::eval_real(std::span<const double> x) const {
    if (x.size() != domain.size()) throw PreconditionError("sampled predicate arity mismatch");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!domain[i].contains(x[i])) return {0.0, 0.0};
    }
    return f(x);
}

Complex SampledPredicate::eval_lattice(std::span<const std::int64_t> k, const FiniteUniverse& u) const {
    std::vector<double> x(k.size());
    for (std::size_t i = 0; i < k.size(); ++i) x[i] = static_cast<double>(k[i]) * u.spacing();
    return eval_real(x);
}

}  // namespace latticeq
