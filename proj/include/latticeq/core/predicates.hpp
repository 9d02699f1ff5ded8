#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "latticeq/core/phase.hpp"
#include "latticeq/core/quadratic_form.hpp"
#include "latticeq/core/universe.hpp"

namespace latticeq {

/// eta * e^{-pi i Q(k)/n} on U(n); eta * e^{-i Q(x)/2} on the continuum.
struct GaussianPredicate {
    Complex eta{1.0, 0.0};
    QuadraticForm form;

    std::size_t arity() const noexcept { return form.arity(); }
};

/// Exact exponent Q(k)/n reduced mod 2.
PhaseExponent gaussian_exponent(const GaussianPredicate& pred, std::span<const std::int64_t> k,
                                const FiniteUniverse& u);

Complex eval_gaussian(const GaussianPredicate& pred, std::span<const std::int64_t> k, const FiniteUniverse& u);

Complex eval_gaussian_continuum(const GaussianPredicate& pred, std::span<const double> x);

/// The predicate restricted to variable `index` with the others fixed:
///   k -> eta * e^{-pi i (a k^2 + 2 b k + c)/n}
/// with a, b, c exact rationals. Shares the exact phase walker with the sums.
struct BoundGaussian {
    Complex eta;
    Rational a;
    Rational b;  // b(p) evaluated at the fixed parameters
    Rational c;  // c(p) evaluated at the fixed parameters
    LinearForm b_form;
    std::int64_t n;

    PolyPhase phase() const;
    Complex at(std::int64_t k) const;
};

BoundGaussian bind_gaussian(const GaussianPredicate& pred, std::size_t index, std::span<const std::int64_t> params,
                            const FiniteUniverse& u);

/// Lattice anharmonic state e^{-pi i H (k^2 + k^4/L) / n}.
///
/// Derived quantities: h = 1/(2 pi H), lambda = n/L, and on the continuum
/// side x = k/sqrt(n) (this scaling is used only by the anharmonic harness).
class PerturbedGaussianPredicate {
public:
    /// Requires H | n and n/(2H) an integer greater than 1.
    PerturbedGaussianPredicate(std::int64_t H, std::int64_t L, const FiniteUniverse& u);

    std::int64_t H() const noexcept { return H_; }
    std::int64_t L() const noexcept { return L_; }
    std::int64_t n() const noexcept { return n_; }
    double h() const noexcept;
    double lambda() const noexcept;
    double lambda_h() const noexcept { return lambda() * h(); }
    /// n / (2H), the half-width of the global summation range.
    std::int64_t half_period() const noexcept { return n_ / (2 * H_); }

    Complex at(std::int64_t k) const;
    PolyPhase phase() const;
    /// Pure Gaussian part e^{-pi i H k^2 / n}.
    PolyPhase gaussian_phase() const;
    /// Quartic factor e^{-pi i H k^4 / (L n)}.
    PolyPhase quartic_phase() const;

private:
    std::int64_t H_;
    std::int64_t L_;
    std::int64_t n_;
};

/// A test function: f on the product of its domain intervals and zero outside.
/// Lattice points are mapped through the embedding k -> k * spacing.
struct SampledPredicate {
    std::vector<Interval> domain;
    std::function<Complex(std::span<const double>)> f;

    std::size_t arity() const noexcept { return domain.size(); }
    Complex eval_real(std::span<const double> x) const;
    Complex eval_lattice(std::span<const std::int64_t> k, const FiniteUniverse& u) const;
};

}  // namespace latticeq
