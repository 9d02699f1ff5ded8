#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "latticeq/core/predicates.hpp"
#include "latticeq/core/universe.hpp"
#include "latticeq/quantifier/summation.hpp"

namespace latticeq::quant {

/// Closed window [m1, m2] in embedded coordinates.
struct Window {
    Window(double m1, double m2);
    static Window symmetric(double m) { return Window(-m, m); }
    double m1;
    double m2;
    double length() const noexcept { return m2 - m1; }
    bool operator==(const Window&) const = default;
};

/// Sum over every point of U(n), ignoring the diameter bound.
struct WholeUniverse {
    bool operator==(const WholeUniverse&) const = default;
};

using WindowPolicy = std::variant<Window, WholeUniverse>;

struct QuantifierResult {
    enum class Scope { window, universe, global };

    Complex value;
    Scope scope = Scope::window;
    std::optional<Window> window;
    std::int64_t terms = 0;
    double fp_err = 0;
};

void to_json(nlohmann::ordered_json& j, const QuantifierResult& r);

using LatticeFunction = std::function<Complex(std::int64_t)>;

/// Lattice points k with m1 <= k * spacing <= m2, clipped to U(n). Empty when lo > hi.
struct LatticeRange {
    std::int64_t lo;
    std::int64_t hi;
    std::int64_t count() const noexcept { return hi >= lo ? hi - lo + 1 : 0; }
};
LatticeRange lattice_range(const Window& w, const FiniteUniverse& u);

/// Rejects windows whose diameter reaches sqrt(n/2pi).
void check_window(const Window& w, const FiniteUniverse& u);

QuantifierResult window_quantify(const LatticeFunction& f, const Window& w, const FiniteUniverse& u, Exec exec = {});
QuantifierResult window_quantify(const BoundGaussian& g, const Window& w, const FiniteUniverse& u, Exec exec = {});

QuantifierResult universe_quantify(const LatticeFunction& f, const FiniteUniverse& u, Exec exec = {});

QuantifierResult quantify(const LatticeFunction& f, const WindowPolicy& policy, const FiniteUniverse& u,
                          Exec exec = {});

enum class LocalMode { fixed_max, sequence };

/// fixed_max: one result at m = max_local_window(u). sequence: m = 1..max.
std::vector<QuantifierResult> local_quantify(const LatticeFunction& f, const FiniteUniverse& u, LocalMode mode,
                                             Exec exec = {});
std::vector<QuantifierResult> local_quantify(const BoundGaussian& g, const FiniteUniverse& u, LocalMode mode,
                                             Exec exec = {});

/// Period of the bound predicate and its half range n/(2|P|), checked to be a
/// positive integer.
struct GlobalRange {
    Rational period;
    std::int64_t half;
};
GlobalRange global_range(const Rational& a, const LinearForm& b, const FiniteUniverse& u);

/// (1/sqrt n) sum over (-n/2P, n/2P] (+ shift) of the bound Gaussian.
QuantifierResult global_quantify(const BoundGaussian& g, const FiniteUniverse& u, Exec exec = {},
                                 std::int64_t shift = 0);
QuantifierResult global_quantify(const GaussianPredicate& pred, std::size_t index,
                                 std::span<const std::int64_t> params, const FiniteUniverse& u, Exec exec = {},
                                 std::int64_t shift = 0);
QuantifierResult global_quantify(const PerturbedGaussianPredicate& pred, const FiniteUniverse& u, Exec exec = {});

/// sqrt(1/a) e^{sigma i pi/4} e^{tau pi i b^2/(a n)}; requires a > 0 and n/(2a) a positive integer.
Complex gauss_closed_form_discrete(const Rational& a, const Rational& b, std::int64_t n);

/// |a|^{-1/2} e^{sigma' sign(a) i pi/4} e^{-pi i b^2/a}: the integral of e^{pi i (a x^2 + 2 b x)}.
Complex gauss_closed_form_continuum(double a, double b);

struct DeltaResult {
    Complex sum;
    Complex predicted;
    std::int64_t terms = 0;
    double fp_err = 0;
};

/// (1/sqrt n) sum_{-n/2b <= k < n/2b} e^{pi i 2 b k p / n} against b^{-1} delta(p).
DeltaResult discrete_delta_sum(const Rational& b, std::int64_t p, const FiniteUniverse& u, Exec exec = {});

/// sqrt(n) at p = 0, else 0.
double discrete_delta(std::int64_t p, const FiniteUniverse& u);

/// k -> pred(k * s, params * s) with the quantified variable at `index`.
LatticeFunction bind_sampled(const SampledPredicate& pred, std::size_t index, std::span<const std::int64_t> params,
                             const FiniteUniverse& u);

/// E_x psi(x) conj(phi(x)).
Complex inner_product(const LatticeFunction& psi, const LatticeFunction& phi, const FiniteUniverse& u,
                      const WindowPolicy& policy, Exec exec = {});
/// Unary sampled predicates; without a policy the window is the intersection of
/// the two domains, which must be bounded.
Complex inner_product(const SampledPredicate& psi, const SampledPredicate& phi, const FiniteUniverse& u,
                      std::optional<WindowPolicy> policy = std::nullopt, Exec exec = {});

double norm(const LatticeFunction& psi, const FiniteUniverse& u, const WindowPolicy& policy, Exec exec = {});
double norm(const SampledPredicate& psi, const FiniteUniverse& u, std::optional<WindowPolicy> policy = std::nullopt,
            Exec exec = {});

}  // namespace latticeq::quant
