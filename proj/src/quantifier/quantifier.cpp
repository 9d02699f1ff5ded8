#include "latticeq/quantifier/quantifier.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "latticeq/core/errors.hpp"
#include "latticeq/sign_ledger.hpp"

namespace latticeq::quant {

namespace {

QuantifierResult scaled(const SumResult& s, double scale, Complex factor = {1.0, 0.0}) {
    QuantifierResult r;
    r.value = s.value * factor * scale;
    r.terms = s.terms;
    r.fp_err = s.fp_err * std::abs(factor) * std::abs(scale);
    return r;
}

SumResult sum_function(const LatticeFunction& f, std::int64_t first, std::int64_t count, Exec exec) {
    return chunked_sum_terms(first, count, f, exec);
}

SumResult sum_phase(const PolyPhase& phase, std::int64_t first, std::int64_t count, Exec exec) {
    return chunked_sum(
        first, count,
        [&](std::int64_t lo, std::int64_t len, CompensatedSum& acc) {
            phase.walk(lo, len, [&](Complex z) { acc.add(z); });
        },
        exec);
}

QuantifierResult window_result(const SumResult& s, const Window& w, const FiniteUniverse& u, Complex factor) {
    QuantifierResult r = scaled(s, u.spacing(), factor);
    r.scope = QuantifierResult::Scope::window;
    r.window = w;
    return r;
}

std::string fmt(const Rational& r) { return to_string(r); }

}  // namespace

Window::Window(double lo, double hi) : m1(lo), m2(hi) {
    if (!std::isfinite(lo) || !std::isfinite(hi)) throw PreconditionError("window endpoints must be finite");
    if (!(lo < hi)) throw PreconditionError("window needs m1 < m2");
}

void to_json(nlohmann::ordered_json& j, const QuantifierResult& r) {
    j = nlohmann::ordered_json::object();
    j["value"] = {r.value.real(), r.value.imag()};
    switch (r.scope) {
        case QuantifierResult::Scope::window:
            j["window"] = {r.window->m1, r.window->m2};
            break;
        case QuantifierResult::Scope::universe:
            j["window"] = "universe";
            break;
        case QuantifierResult::Scope::global:
            j["window"] = "global";
            break;
    }
    j["terms"] = r.terms;
    j["fp_err"] = r.fp_err;
}

LatticeRange lattice_range(const Window& w, const FiniteUniverse& u) {
    const double s = u.spacing();
    auto lo = static_cast<std::int64_t>(std::ceil(w.m1 / s));
    auto hi = static_cast<std::int64_t>(std::floor(w.m2 / s));
    // Settle the products exactly as the membership test reads them.
    while (static_cast<double>(lo) * s < w.m1) ++lo;
    while (static_cast<double>(lo - 1) * s >= w.m1) --lo;
    while (static_cast<double>(hi) * s > w.m2) --hi;
    while (static_cast<double>(hi + 1) * s <= w.m2) ++hi;
    return {std::max(lo, u.min_point()), std::min(hi, u.max_point())};
}

void check_window(const Window& w, const FiniteUniverse& u) {
    double bound = window_diameter_bound(u);
    if (!(w.length() < bound)) {
        throw PreconditionError("window diameter " + std::to_string(w.length()) + " is not below sqrt(n/2pi) = " +
                                std::to_string(bound) + " for n = " + std::to_string(u.n()));
    }
}

QuantifierResult window_quantify(const LatticeFunction& f, const Window& w, const FiniteUniverse& u, Exec exec) {
    check_window(w, u);
    LatticeRange r = lattice_range(w, u);
    return window_result(sum_function(f, r.lo, r.count(), exec), w, u, 1.0);
}

QuantifierResult window_quantify(const BoundGaussian& g, const Window& w, const FiniteUniverse& u, Exec exec) {
    check_window(w, u);
    LatticeRange r = lattice_range(w, u);
    return window_result(sum_phase(g.phase(), r.lo, r.count(), exec), w, u, g.eta);
}

QuantifierResult universe_quantify(const LatticeFunction& f, const FiniteUniverse& u, Exec exec) {
    QuantifierResult r = scaled(sum_function(f, u.min_point(), u.n(), exec), u.spacing());
    r.scope = QuantifierResult::Scope::universe;
    return r;
}

QuantifierResult quantify(const LatticeFunction& f, const WindowPolicy& policy, const FiniteUniverse& u, Exec exec) {
    if (const auto* w = std::get_if<Window>(&policy)) return window_quantify(f, *w, u, exec);
    return universe_quantify(f, u, exec);
}

namespace {

template <class WindowSum>
std::vector<QuantifierResult> local_impl(const FiniteUniverse& u, LocalMode mode, WindowSum&& sum) {
    std::int64_t m_max = max_local_window(u);
    if (m_max == 0) {
        throw PreconditionError("degenerate universe: n = " + std::to_string(u.n()) +
                                " admits no local window (need 8 pi m^2 <= n for m >= 1)");
    }
    std::vector<QuantifierResult> out;
    std::int64_t first = mode == LocalMode::fixed_max ? m_max : 1;
    for (std::int64_t m = first; m <= m_max; ++m) {
        Window w = Window::symmetric(static_cast<double>(m));
        out.push_back(sum(w));
    }
    return out;
}

}  // namespace

// Local windows satisfy 2m <= sqrt(n/2pi), so the strict diameter check is
// bypassed here; equality can only occur when n/2pi is a perfect square.
std::vector<QuantifierResult> local_quantify(const LatticeFunction& f, const FiniteUniverse& u, LocalMode mode,
                                             Exec exec) {
    return local_impl(u, mode, [&](const Window& w) {
        LatticeRange r = lattice_range(w, u);
        return window_result(sum_function(f, r.lo, r.count(), exec), w, u, 1.0);
    });
}

std::vector<QuantifierResult> local_quantify(const BoundGaussian& g, const FiniteUniverse& u, LocalMode mode,
                                             Exec exec) {
    PolyPhase phase = g.phase();
    return local_impl(u, mode, [&](const Window& w) {
        LatticeRange r = lattice_range(w, u);
        return window_result(sum_phase(phase, r.lo, r.count(), exec), w, u, g.eta);
    });
}

GlobalRange global_range(const Rational& a, const LinearForm& b, const FiniteUniverse& u) {
    Rational p = period(a, b);
    if (p < 0) p = -p;
    Rational half = Rational(u.n()) / (2 * p);
    if (!is_integer(half) || half <= 0) {
        throw PreconditionError("global quantifier needs n/(2P) to be a positive integer: n = " +
                                std::to_string(u.n()) + ", P = " + fmt(p) + ", n/(2P) = " + fmt(half) +
                                "; n must be divisible by " + numer(Rational(2) * p).str());
    }
    return {p, to_int64(numer(half))};
}

QuantifierResult global_quantify(const BoundGaussian& g, const FiniteUniverse& u, Exec exec, std::int64_t shift) {
    GlobalRange range = global_range(g.a, g.b_form, u);
    SumResult s = sum_phase(g.phase(), -range.half + 1 + shift, 2 * range.half, exec);
    QuantifierResult r = scaled(s, 1.0 / std::sqrt(static_cast<double>(u.n())), g.eta);
    r.scope = QuantifierResult::Scope::global;
    return r;
}

QuantifierResult global_quantify(const GaussianPredicate& pred, std::size_t index, std::span<const std::int64_t> params,
                                 const FiniteUniverse& u, Exec exec, std::int64_t shift) {
    return global_quantify(bind_gaussian(pred, index, params, u), u, exec, shift);
}

QuantifierResult global_quantify(const PerturbedGaussianPredicate& pred, const FiniteUniverse& u, Exec exec) {
    if (pred.n() != u.n()) throw PreconditionError("perturbed predicate built for a different universe");
    std::int64_t half = pred.half_period();
    SumResult s = sum_phase(pred.phase(), -half + 1, 2 * half, exec);
    QuantifierResult r = scaled(s, 1.0 / std::sqrt(static_cast<double>(u.n())));
    r.scope = QuantifierResult::Scope::global;
    return r;
}

Complex gauss_closed_form_discrete(const Rational& a, const Rational& b, std::int64_t n) {
    if (a <= 0) throw PreconditionError("discrete Gauss closed form needs a > 0, got a = " + fmt(a));
    Rational half = Rational(n) / (2 * a);
    if (!is_integer(half) || half <= 0) {
        throw PreconditionError("discrete Gauss closed form needs n/(2a) a positive integer: n = " +
                                std::to_string(n) + ", a = " + fmt(a));
    }
    // e^{tau pi i b^2/(a n)} = e^{-pi i r} with r = -tau b^2/(a n)
    PhaseExponent shift(Rational(-ledger::tau) * b * b / (a * n));
    Complex base = std::polar(1.0, ledger::sigma * std::numbers::pi / 4.0);
    return std::sqrt(1.0 / to_double(a)) * base * eval_phase(shift);
}

Complex gauss_closed_form_continuum(double a, double b) {
    if (a == 0.0) throw PreconditionError("continuum Gauss closed form needs a != 0 (a = 0 is the delta case)");
    double sgn = a > 0 ? 1.0 : -1.0;
    return std::polar(1.0 / std::sqrt(std::abs(a)),
                      ledger::sigma_prime * sgn * std::numbers::pi / 4.0 - std::numbers::pi * b * b / a);
}

double discrete_delta(std::int64_t p, const FiniteUniverse& u) {
    return p == 0 ? std::sqrt(static_cast<double>(u.n())) : 0.0;
}

DeltaResult discrete_delta_sum(const Rational& b, std::int64_t p, const FiniteUniverse& u, Exec exec) {
    if (b <= 0) throw PreconditionError("discrete delta needs b > 0, got b = " + fmt(b));
    Rational half_r = Rational(u.n()) / (2 * b);
    if (!is_integer(half_r) || half_r <= 0) {
        throw PreconditionError("discrete delta needs n/(2b) a positive integer: n = " + std::to_string(u.n()) +
                                ", b = " + fmt(b));
    }
    std::int64_t half = to_int64(numer(half_r));
    // e^{+pi i 2 b p k / n} = e^{-pi i (-2 b p) k / n}
    const Rational coeffs[] = {0, Rational(-2) * b * p};
    PolyPhase phase(coeffs, u.n());
    SumResult s = sum_phase(phase, -half, 2 * half, exec);
    double scale = 1.0 / std::sqrt(static_cast<double>(u.n()));
    DeltaResult r;
    r.sum = s.value * scale;
    r.predicted = discrete_delta(p, u) / to_double(b);
    r.terms = s.terms;
    r.fp_err = s.fp_err * scale;
    return r;
}

LatticeFunction bind_sampled(const SampledPredicate& pred, std::size_t index, std::span<const std::int64_t> params,
                             const FiniteUniverse& u) {
    if (index >= pred.arity() || params.size() + 1 != pred.arity()) {
        throw PreconditionError("sampled predicate arity " + std::to_string(pred.arity()) + " does not match " +
                                std::to_string(params.size()) + " parameters");
    }
    std::vector<double> fixed(pred.arity());
    for (std::size_t j = 0, q = 0; j < pred.arity(); ++j) {
        if (j != index) fixed[j] = static_cast<double>(params[q++]) * u.spacing();
    }
    const double s = u.spacing();
    return [pred, index, fixed, s](std::int64_t k) {
        std::vector<double> x = fixed;
        x[index] = static_cast<double>(k) * s;
        return pred.eval_real(x);
    };
}

Complex inner_product(const LatticeFunction& psi, const LatticeFunction& phi, const FiniteUniverse& u,
                      const WindowPolicy& policy, Exec exec) {
    LatticeFunction prod = [&](std::int64_t k) { return psi(k) * std::conj(phi(k)); };
    return quantify(prod, policy, u, exec).value;
}

namespace {

WindowPolicy effective_policy(const SampledPredicate& psi, const SampledPredicate& phi,
                              const std::optional<WindowPolicy>& policy) {
    if (psi.arity() != 1 || phi.arity() != 1) throw PreconditionError("inner product expects unary predicates");
    if (policy) return *policy;
    double lo = std::max(psi.domain[0].lo, phi.domain[0].lo);
    double hi = std::min(psi.domain[0].hi, phi.domain[0].hi);
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw PreconditionError("inner product over an unbounded effective domain needs an explicit window");
    }
    if (!(lo < hi)) throw PreconditionError("inner product domains do not overlap; give an explicit window");
    return Window(lo, hi);
}

}  // namespace

Complex inner_product(const SampledPredicate& psi, const SampledPredicate& phi, const FiniteUniverse& u,
                      std::optional<WindowPolicy> policy, Exec exec) {
    WindowPolicy p = effective_policy(psi, phi, policy);
    return inner_product(bind_sampled(psi, 0, {}, u), bind_sampled(phi, 0, {}, u), u, p, exec);
}

double norm(const LatticeFunction& psi, const FiniteUniverse& u, const WindowPolicy& policy, Exec exec) {
    return std::sqrt(std::abs(inner_product(psi, psi, u, policy, exec)));
}

double norm(const SampledPredicate& psi, const FiniteUniverse& u, std::optional<WindowPolicy> policy, Exec exec) {
    return std::sqrt(std::abs(inner_product(psi, psi, u, policy, exec)));
}

}  // namespace latticeq::quant
