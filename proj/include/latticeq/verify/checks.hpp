#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "latticeq/core/predicates.hpp"
#include "latticeq/core/quadratic_form.hpp"
#include "latticeq/quantifier/quantifier.hpp"
#include "latticeq/verify/report.hpp"

namespace latticeq::verify {

using quant::Complex;
using quant::Exec;
using quant::Window;

struct ErrorBound {
    double M_f;
    double length;
    std::int64_t n;
    double bound;
};

/// Left-rule bound M_f * (m2 - m1) * spacing / 2.
ErrorBound riemann_error_bound(double M_f, const Window& w, const FiniteUniverse& u);

/// A finite computation with a continuum reference and a per-n error bound.
struct Quantity {
    std::string id;
    std::function<Complex(const FiniteUniverse&, Exec)> finite;
    Complex continuum;
    std::function<double(const FiniteUniverse&)> bound;
    /// Whether the sweep must fit a decay exponent.
    bool fit_exponent = true;
};

/// "gaussian-window", "gaussian-norm" or "constant".
Quantity named_quantity(const std::string& id);
std::vector<std::string> quantity_names();

struct ConvergenceRow {
    std::int64_t n;
    Complex value;
    Complex reference;
    double abs_err;
    double bound;
};

struct ConvergenceReport {
    std::string quantity;
    std::vector<ConvergenceRow> rows;
    /// Least-squares slope of -log(err) against log(n); NaN without two positive errors.
    double alpha;
};

ConvergenceReport convergence_sweep(const Quantity& q, const std::vector<std::int64_t>& n_list, std::int64_t h_n = 1,
                                    Exec exec = {});

struct ConvergenceTolerances {
    double alpha_lo = 0.35;
    double alpha_hi = 0.65;
};
VerificationReport to_report(const ConvergenceReport& c, const ConvergenceTolerances& tol = {});

/// Fits alpha in err ~ C n^{-alpha}.
double fit_decay_exponent(const std::vector<std::int64_t>& n, const std::vector<double>& err);

/// First `count` members and first `count` non-members of X_a among
/// p = 0, 1, 2, ... (single parameter) up to `scan` candidates.
struct SampleSet {
    std::vector<std::vector<std::int64_t>> inside;
    std::vector<std::vector<std::int64_t>> outside;
};
SampleSet gauss_samples(const Rational& a, const LinearForm& b, std::size_t count, std::int64_t scan = 1000);

struct GaussTolerances {
    double closed_form = 1e-8;
    double outside = 1e-10;
};

/// (1/sqrt n) sum e^{-pi i (a k^2 + 2 k b(p))/n} over the one-period range, per sample.
VerificationReport gauss_lemma_check(const Rational& a, const LinearForm& b,
                                     const std::vector<std::vector<std::int64_t>>& samples, const FiniteUniverse& u,
                                     const GaussTolerances& tol = {}, Exec exec = {});

struct LocalGlobalOptions {
    double c_tail = 2.0;
    std::int64_t m_min = 5;
};

/// E^(-m,m) against the measure-matched global value sqrt(2 pi) E^glob for m in
/// [m_min, m_max]; passes when every gap is at most c_tail/(a m).
VerificationReport local_global_check(const Rational& a, const LinearForm& b, std::span<const std::int64_t> p,
                                      const FiniteUniverse& u, const LocalGlobalOptions& opt = {}, Exec exec = {});

struct AnharmonicReport {
    std::int64_t n;
    std::int64_t H;
    std::int64_t L;
    double h;
    double lambda;
    Complex eglob;
    Complex t0;
    Complex tphi;
    Complex ratio;
    Complex predicted;
    double residual;
    /// |Eglob - sqrt(h) (T0 + Tphi)|
    double split_residual;
    double fp_err;
};

struct AnharmonicOptions {
    double lambda_h_max = 0.05;
    double tolerance_factor = 5.0;
};

/// L = round(n / (2 pi H lambda_h)), at least 1.
std::int64_t auto_L(std::int64_t n, std::int64_t H, double lambda_h);

AnharmonicReport anharmonic_check(std::int64_t H, std::int64_t L, const FiniteUniverse& u,
                                  const AnharmonicOptions& opt = {}, Exec exec = {});
VerificationReport to_report(const AnharmonicReport& a, const AnharmonicOptions& opt = {});

/// |T_phi| / (lambda h (n/H)^{5/2}) over a grid; passes when max/min <= factor.
struct GridPoint {
    std::int64_t n;
    std::int64_t H;
    std::int64_t L;
};
VerificationReport tphi_scaling_check(const std::vector<GridPoint>& grid, double factor = 3.0, Exec exec = {});

/// Standard 3x3 grid: n/(2H) = q, H in Hs, L from lambda_h in lhs.
std::vector<GridPoint> standard_grid(std::int64_t q, const std::vector<std::int64_t>& Hs,
                                     const std::vector<double>& lhs);

struct OperatorTolerances {
    double commutation = 1e-12;
    double isometry = 1e-9;
    double inverse = 1e-10;
    double parseval = 1e-9;
    double dense_fast = 1e-9;
    double diagonal = 1e-9;
};

/// Commutation defect, U/V/F isometry and F V F^{-1} diagonality per n.
VerificationReport weyl_check(const std::vector<std::int64_t>& ns, std::int64_t h_n, int trials,
                              const OperatorTolerances& tol = {}, std::uint64_t seed = 1);

/// Inverse, Parseval and dense/fast agreement per n.
VerificationReport fourier_check(const std::vector<std::int64_t>& ns, std::int64_t h_n, int trials,
                                 const OperatorTolerances& tol = {}, std::uint64_t seed = 1);

/// Spectral evolution of u[x0] against the free kernel modulus on the central half.
VerificationReport propagator_check(std::int64_t n, std::int64_t h_n, double t, std::int64_t x0,
                                    double rel_tol = 0.02);

}  // namespace latticeq::verify
