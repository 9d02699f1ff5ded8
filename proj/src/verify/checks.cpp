#include "latticeq/verify/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "latticeq/core/errors.hpp"
#include "latticeq/operators/operators.hpp"
#include "latticeq/sign_ledger.hpp"

namespace latticeq::verify {

namespace {

constexpr double pi = std::numbers::pi;

Json rational_json(const Rational& r) { return to_string(r); }

Json linear_json(const LinearForm& b) {
    Json j = Json::array();
    for (const auto& c : b.coeffs) j.push_back(to_string(c));
    return j;
}

Json ints_json(std::span<const std::int64_t> v) {
    Json j = Json::array();
    for (auto x : v) j.push_back(x);
    return j;
}

Json nan_to_null(double v) { return std::isfinite(v) ? Json(v) : Json(); }

}  // namespace

ErrorBound riemann_error_bound(double M_f, const Window& w, const FiniteUniverse& u) {
    if (!(M_f >= 0.0)) throw PreconditionError("riemann_error_bound needs M_f >= 0");
    return {M_f, w.length(), u.n(), M_f * w.length() * u.spacing() / 2.0};
}

Quantity named_quantity(const std::string& id) {
    // max |d/dx e^{-x^2}| = sqrt(2) e^{-1/2} at x = 1/sqrt 2
    const double slope = std::sqrt(2.0) * std::exp(-0.5);
    const Window w4(-4.0, 4.0);
    if (id == "gaussian-window") {
        return {id,
                [w4](const FiniteUniverse& u, Exec exec) {
                    const double s = u.spacing();
                    quant::LatticeFunction f = [s](std::int64_t k) {
                        double x = static_cast<double>(k) * s;
                        return Complex(std::exp(-x * x), 0.0);
                    };
                    return quant::window_quantify(f, w4, u, exec).value;
                },
                std::sqrt(pi) * std::erf(4.0),
                [w4, slope](const FiniteUniverse& u) { return riemann_error_bound(slope, w4, u).bound; }, true};
    }
    if (id == "gaussian-norm") {
        const double norm_slope = slope / std::sqrt(pi);
        return {id,
                [w4](const FiniteUniverse& u, Exec exec) {
                    const double s = u.spacing();
                    const double c = std::pow(pi, -0.25);
                    quant::LatticeFunction psi = [s, c](std::int64_t k) {
                        double x = static_cast<double>(k) * s;
                        return Complex(c * std::exp(-x * x / 2.0), 0.0);
                    };
                    return quant::inner_product(psi, psi, u, w4, exec);
                },
                std::erf(4.0),
                [w4, norm_slope](const FiniteUniverse& u) { return riemann_error_bound(norm_slope, w4, u).bound; },
                true};
    }
    if (id == "constant") {
        const Window w1(-1.0, 1.0);
        return {id,
                [w1](const FiniteUniverse& u, Exec exec) {
                    quant::LatticeFunction one = [](std::int64_t) { return Complex(1.0, 0.0); };
                    return quant::window_quantify(one, w1, u, exec).value;
                },
                2.0,
                // flat integrand: only the endpoint cells contribute
                [](const FiniteUniverse& u) { return u.spacing(); }, false};
    }
    throw PreconditionError("unknown quantity '" + id + "' (expected gaussian-window, gaussian-norm or constant)");
}

std::vector<std::string> quantity_names() { return {"gaussian-window", "gaussian-norm", "constant"}; }

double fit_decay_exponent(const std::vector<std::int64_t>& n, const std::vector<double>& err) {
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n.size() && i < err.size(); ++i) {
        if (err[i] > 0.0) {
            xs.push_back(std::log(static_cast<double>(n[i])));
            ys.push_back(std::log(err[i]));
        }
    }
    if (xs.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    const double m = static_cast<double>(xs.size());
    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
    }
    const double mx = sx / m, my = sy / m;
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    if (sxx == 0.0) return std::numeric_limits<double>::quiet_NaN();
    return -sxy / sxx;
}

ConvergenceReport convergence_sweep(const Quantity& q, const std::vector<std::int64_t>& n_list, std::int64_t h_n,
                                    Exec exec) {
    for (std::size_t i = 1; i < n_list.size(); ++i) {
        if (n_list[i] <= n_list[i - 1]) throw PreconditionError("convergence sweep needs strictly increasing n");
    }
    std::vector<FiniteUniverse> universes;
    universes.reserve(n_list.size());
    for (auto n : n_list) universes.emplace_back(n, h_n);
    ConvergenceReport rep{q.id, std::vector<ConvergenceRow>(n_list.size()), 0.0};
    quant::parallel_for(
        static_cast<std::int64_t>(n_list.size()),
        [&](std::int64_t i) {
            const FiniteUniverse& u = universes[static_cast<std::size_t>(i)];
            Complex v = q.finite(u, Exec{1});
            rep.rows[static_cast<std::size_t>(i)] = {u.n(), v, q.continuum, std::abs(v - q.continuum), q.bound(u)};
        },
        exec);
    std::vector<double> errs;
    for (const auto& r : rep.rows) errs.push_back(r.abs_err);
    rep.alpha = fit_decay_exponent(n_list, errs);
    return rep;
}

VerificationReport to_report(const ConvergenceReport& c, const ConvergenceTolerances& tol) {
    VerificationReport r = make_report("converge");
    Quantity q = named_quantity(c.quantity);
    r.params["quantity"] = c.quantity;
    r.params["alpha"] = nan_to_null(c.alpha);
    r.params["fit_exponent"] = q.fit_exponent;
    bool dominated = true;
    for (const auto& row : c.rows) {
        bool ok = row.abs_err <= row.bound;
        dominated = dominated && ok;
        r.rows.push_back({{"n", row.n},
                          {"value", complex_json(row.value)},
                          {"reference", complex_json(row.reference)},
                          {"abs_err", row.abs_err},
                          {"bound", row.bound},
                          {"pass", ok}});
    }
    bool alpha_ok = true;
    if (q.fit_exponent) alpha_ok = std::isfinite(c.alpha) && c.alpha >= tol.alpha_lo && c.alpha <= tol.alpha_hi;
    r.params["bound_dominated"] = dominated;
    r.pass = dominated && alpha_ok;
    r.tolerances["alpha_lo"] = tol.alpha_lo;
    r.tolerances["alpha_hi"] = tol.alpha_hi;
    return r;
}

SampleSet gauss_samples(const Rational& a, const LinearForm& b, std::size_t count, std::int64_t scan) {
    if (b.arity() != 1) throw PreconditionError("gauss_samples scans a single parameter");
    SampleSet s;
    for (std::int64_t p = 0; p < scan && (s.inside.size() < count || s.outside.size() < count); ++p) {
        std::int64_t v[] = {p};
        auto& bucket = dense_domain_membership(v, a, b) ? s.inside : s.outside;
        if (bucket.size() < count) bucket.push_back({p});
    }
    return s;
}

VerificationReport gauss_lemma_check(const Rational& a, const LinearForm& b,
                                     const std::vector<std::vector<std::int64_t>>& samples, const FiniteUniverse& u,
                                     const GaussTolerances& tol, Exec exec) {
    if (a <= 0) throw PreconditionError("Gauss lemma check needs a > 0");
    quant::global_range(a, b, u);  // divisibility, with the failing factor named
    VerificationReport r = make_report("gauss");
    r.params["a"] = rational_json(a);
    r.params["b"] = linear_json(b);
    r.params["n"] = u.n();
    r.params["h_n"] = u.h_n();
    r.tolerances["closed_form"] = tol.closed_form;
    r.tolerances["outside"] = tol.outside;
    for (const auto& p : samples) {
        if (p.size() != b.arity()) throw PreconditionError("sample arity does not match b");
        BoundGaussian g{Complex(1.0, 0.0), a, b.evaluate(p), Rational(0), b, u.n()};
        quant::QuantifierResult q = quant::global_quantify(g, u, exec);
        bool inside = dense_domain_membership(p, a, b);
        Complex cf = quant::gauss_closed_form_discrete(a, g.b, u.n());
        Complex ref = inside ? cf : Complex(0.0, 0.0);
        double residual = std::abs(q.value - ref);
        bool ok = residual <= (inside ? tol.closed_form : tol.outside);
        r.pass = r.pass && ok;
        r.rows.push_back({{"p", ints_json(p)},
                          {"in_dense", inside},
                          {"value", complex_json(q.value)},
                          {"reference", complex_json(ref)},
                          {"closed_form", complex_json(cf)},
                          {"residual", residual},
                          {"fp_err", q.fp_err},
                          {"pass", ok}});
    }
    return r;
}

VerificationReport local_global_check(const Rational& a, const LinearForm& b, std::span<const std::int64_t> p,
                                      const FiniteUniverse& u, const LocalGlobalOptions& opt, Exec exec) {
    if (a <= 0) throw PreconditionError("local-global check needs a > 0");
    if (p.size() != b.arity()) throw PreconditionError("parameter arity does not match b");
    if (!dense_domain_membership(p, a, b)) {
        throw PreconditionError("parameters lie outside the d-dense set X_a; the local-global identity is not claimed there");
    }
    BoundGaussian g{Complex(1.0, 0.0), a, b.evaluate(p), Rational(0), b, u.n()};
    quant::QuantifierResult glob = quant::global_quantify(g, u, exec);
    const Complex matched = std::sqrt(2.0 * pi) * glob.value;
    std::vector<quant::QuantifierResult> seq = quant::local_quantify(g, u, quant::LocalMode::sequence, exec);
    const std::int64_t m_max = static_cast<std::int64_t>(seq.size());
    VerificationReport r = make_report("local-global");
    r.params["a"] = rational_json(a);
    r.params["b"] = linear_json(b);
    r.params["p"] = ints_json(p);
    r.params["n"] = u.n();
    r.params["h_n"] = u.h_n();
    r.params["m_max"] = m_max;
    r.params["eglob"] = complex_json(glob.value);
    r.params["eglob_matched"] = complex_json(matched);
    r.tolerances["c_tail"] = opt.c_tail;
    r.tolerances["m_min"] = opt.m_min;
    const double ad = to_double(a);
    double worst = 0.0;
    for (std::int64_t m = std::max<std::int64_t>(opt.m_min, 1); m <= m_max; ++m) {
        const auto& e = seq[static_cast<std::size_t>(m - 1)];
        double gap = std::abs(matched - e.value);
        double bound = opt.c_tail / (ad * static_cast<double>(m));
        bool ok = gap <= bound;
        worst = std::max(worst, gap / bound);
        r.pass = r.pass && ok;
        r.rows.push_back({{"m", m}, {"value", complex_json(e.value)}, {"gap", gap}, {"bound", bound}, {"pass", ok}});
    }
    r.params["worst_gap_over_bound"] = worst;
    return r;
}

std::int64_t auto_L(std::int64_t n, std::int64_t H, double lambda_h) {
    if (!(lambda_h > 0.0)) throw PreconditionError("auto L needs lambda*h > 0");
    double L = std::round(static_cast<double>(n) / (2.0 * pi * static_cast<double>(H) * lambda_h));
    return std::max<std::int64_t>(1, static_cast<std::int64_t>(L));
}

AnharmonicReport anharmonic_check(std::int64_t H, std::int64_t L, const FiniteUniverse& u,
                                  const AnharmonicOptions& opt, Exec exec) {
    PerturbedGaussianPredicate pred(H, L, u);
    if (!(pred.lambda_h() <= opt.lambda_h_max)) {
        throw PreconditionError("lambda*h = " + std::to_string(pred.lambda_h()) + " exceeds the smallness threshold " +
                                std::to_string(opt.lambda_h_max));
    }
    const std::int64_t half = pred.half_period();
    const std::int64_t first = -half + 1, count = 2 * half;
    quant::QuantifierResult eg = quant::global_quantify(pred, u, exec);
    const PolyPhase gphase = pred.gaussian_phase();
    const PolyPhase qphase = pred.quartic_phase();
    quant::SumResult s0 = quant::chunked_sum(
        first, count,
        [&](std::int64_t lo, std::int64_t len, quant::CompensatedSum& acc) {
            gphase.walk(lo, len, [&](Complex z) { acc.add(z); });
        },
        exec);
    quant::SumResult sphi = quant::chunked_sum(
        first, count,
        [&](std::int64_t lo, std::int64_t len, quant::CompensatedSum& acc) {
            std::vector<Complex> gv;
            gv.reserve(static_cast<std::size_t>(len));
            gphase.walk(lo, len, [&](Complex z) { gv.push_back(z); });
            std::size_t i = 0;
            qphase.walk(lo, len, [&](Complex z) { acc.add(gv[i++] * (z - 1.0)); });
        },
        exec);
    const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(u.n()));
    const double sqrt_2piH = std::sqrt(2.0 * pi * static_cast<double>(H));
    AnharmonicReport a;
    a.n = u.n();
    a.H = H;
    a.L = L;
    a.h = pred.h();
    a.lambda = pred.lambda();
    a.eglob = eg.value;
    a.t0 = sqrt_2piH * inv_sqrt_n * s0.value;
    a.tphi = sqrt_2piH * inv_sqrt_n * sphi.value;
    const Complex unit = std::polar(1.0, ledger::sigma * pi / 4.0);
    a.ratio = a.eglob / (std::sqrt(2.0 * pi * a.h) * unit);
    a.predicted = Complex(1.0, ledger::anharmonic_s * pred.lambda_h());
    a.residual = std::abs(a.ratio - a.predicted);
    a.split_residual = std::abs(a.eglob - std::sqrt(a.h) * (a.t0 + a.tphi));
    a.fp_err = eg.fp_err + std::sqrt(a.h) * sqrt_2piH * inv_sqrt_n * (s0.fp_err + sphi.fp_err);
    return a;
}

VerificationReport to_report(const AnharmonicReport& a, const AnharmonicOptions& opt) {
    VerificationReport r = make_report("anharmonic");
    const double lh = a.lambda * a.h;
    r.params["n"] = a.n;
    r.params["H"] = a.H;
    r.params["L"] = a.L;
    r.params["h"] = a.h;
    r.params["lambda"] = a.lambda;
    r.params["lambda_h"] = lh;
    r.params["n_over_H"] = static_cast<double>(a.n) / static_cast<double>(a.H);
    r.tolerances["residual"] = opt.tolerance_factor * lh * lh;
    r.tolerances["lambda_h_max"] = opt.lambda_h_max;
    r.tolerances["split"] = 10.0 * a.fp_err;
    bool ok = a.residual <= opt.tolerance_factor * lh * lh;
    bool split_ok = a.split_residual <= std::max(10.0 * a.fp_err, 1e-14);
    r.rows.push_back({{"eglob", complex_json(a.eglob)},
                      {"t0", complex_json(a.t0)},
                      {"tphi", complex_json(a.tphi)},
                      {"ratio", complex_json(a.ratio)},
                      {"predicted", complex_json(a.predicted)},
                      {"residual", a.residual},
                      {"split_residual", a.split_residual},
                      {"fp_err", a.fp_err},
                      {"pass", ok && split_ok}});
    r.pass = ok && split_ok;
    return r;
}

std::vector<GridPoint> standard_grid(std::int64_t q, const std::vector<std::int64_t>& Hs,
                                     const std::vector<double>& lhs) {
    std::vector<GridPoint> g;
    for (auto H : Hs) {
        for (double lh : lhs) {
            std::int64_t n = 2 * q * H;
            g.push_back({n, H, auto_L(n, H, lh)});
        }
    }
    return g;
}

VerificationReport tphi_scaling_check(const std::vector<GridPoint>& grid, double factor, Exec exec) {
    VerificationReport r = make_report("anharmonic-scaling");
    r.tolerances["max_over_min"] = factor;
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (const auto& gp : grid) {
        FiniteUniverse u(gp.n, 1);
        AnharmonicOptions opt;
        opt.lambda_h_max = std::numeric_limits<double>::infinity();
        AnharmonicReport a = anharmonic_check(gp.H, gp.L, u, opt, exec);
        const double lh = a.lambda * a.h;
        const double nh = static_cast<double>(gp.n) / static_cast<double>(gp.H);
        const double c = std::abs(a.tphi) / (lh * std::pow(nh, 2.5));
        lo = std::min(lo, c);
        hi = std::max(hi, c);
        r.rows.push_back({{"n", gp.n},
                          {"H", gp.H},
                          {"L", gp.L},
                          {"lambda_h", lh},
                          {"n_over_H", nh},
                          {"tphi_abs", std::abs(a.tphi)},
                          {"normalized", c}});
    }
    const double spread = grid.empty() ? 1.0 : hi / lo;
    r.params["points"] = grid.size();
    r.params["spread"] = spread;
    r.pass = spread <= factor;
    return r;
}

namespace {

double iso_defect(const ops::StateVector& before, const ops::StateVector& after) {
    return std::abs(after.norm() - before.norm()) / before.norm();
}

}  // namespace

VerificationReport weyl_check(const std::vector<std::int64_t>& ns, std::int64_t h_n, int trials,
                              const OperatorTolerances& tol, std::uint64_t seed) {
    VerificationReport r = make_report("weyl");
    r.params["h_n"] = h_n;
    r.params["trials"] = trials;
    r.tolerances["commutation"] = tol.commutation;
    r.tolerances["isometry"] = tol.isometry;
    r.tolerances["diagonal"] = tol.diagonal;
    for (auto n : ns) {
        FiniteUniverse u(n, h_n);
        std::mt19937_64 rng(seed);
        double comm = ops::commutation_defect(u, trials, seed);
        double iso_u = 0, iso_v = 0, iso_f = 0, diag = 0;
        const std::int64_t h = h_n % n;
        const auto h2 = static_cast<std::int64_t>(static_cast<__int128>(h) * h % n);
        for (int t = 0; t < trials; ++t) {
            ops::StateVector psi = ops::StateVector::random(u, rng);
            iso_u = std::max(iso_u, iso_defect(psi, ops::weyl_u(psi)));
            iso_v = std::max(iso_v, iso_defect(psi, ops::weyl_v(psi)));
            ops::StateVector f = ops::fourier_forward(psi);
            iso_f = std::max(iso_f, iso_defect(psi, f));
            ops::StateVector fv = ops::fourier_forward(ops::weyl_v(psi));
            double d = 0;
            for (std::size_t i = 0; i < f.size(); ++i) {
                std::int64_t p = u.point_at(i);
                auto e = static_cast<std::int64_t>(static_cast<__int128>(h2) * p % n);
                // e^{-i nu h^2 p}
                Complex lam = turn_phase(static_cast<std::uint64_t>(e < 0 ? e + n : e), static_cast<std::uint64_t>(n));
                d = std::max(d, std::abs(fv.amplitudes()[i] - lam * f.amplitudes()[i]));
            }
            diag = std::max(diag, d / psi.norm());
        }
        bool ok = comm <= tol.commutation && iso_u <= tol.isometry && iso_v <= tol.isometry &&
                  iso_f <= tol.isometry && diag <= tol.diagonal;
        r.pass = r.pass && ok;
        r.rows.push_back({{"n", n},
                          {"commutation_defect", comm},
                          {"u_isometry", iso_u},
                          {"v_isometry", iso_v},
                          {"f_isometry", iso_f},
                          {"fvf_diagonal_defect", diag},
                          {"h_squared_equals_h", h2 == h},
                          {"pass", ok}});
    }
    return r;
}

VerificationReport fourier_check(const std::vector<std::int64_t>& ns, std::int64_t h_n, int trials,
                                 const OperatorTolerances& tol, std::uint64_t seed) {
    VerificationReport r = make_report("fourier");
    r.params["h_n"] = h_n;
    r.params["trials"] = trials;
    r.tolerances["inverse"] = tol.inverse;
    r.tolerances["parseval"] = tol.parseval;
    r.tolerances["dense_fast"] = tol.dense_fast;
    for (auto n : ns) {
        FiniteUniverse u(n, h_n);
        std::mt19937_64 rng(seed);
        double inv = 0, pars = 0, agree = 0;
        const bool overlap = n <= ops::dense_fourier_limit;
        for (int t = 0; t < trials; ++t) {
            ops::StateVector psi = ops::StateVector::random(u, rng);
            ops::StateVector f = ops::fourier_forward(psi);
            ops::StateVector back = ops::fourier_inverse(f);
            for (std::size_t i = 0; i < psi.size(); ++i) {
                inv = std::max(inv, std::abs(back.amplitudes()[i] - psi.amplitudes()[i]));
            }
            pars = std::max(pars, iso_defect(psi, f));
            if (overlap) {
                // the automatic path is the dense one here
                ops::StateVector q = ops::fourier_forward(psi, ops::FourierPath::fast);
                agree = std::max(agree, ops::distance(f, q) / psi.norm());
            }
        }
        bool ok = inv <= tol.inverse && pars <= tol.parseval && agree <= tol.dense_fast;
        r.pass = r.pass && ok;
        r.rows.push_back({{"n", n},
                          {"inverse_defect", inv},
                          {"parseval_defect", pars},
                          {"dense_fast_defect", overlap ? Json(agree) : Json()},
                          {"pass", ok}});
    }
    return r;
}

VerificationReport propagator_check(std::int64_t n, std::int64_t h_n, double t, std::int64_t x0, double rel_tol) {
    FiniteUniverse u(n, h_n);
    ops::StateVector e = ops::evolve_free(ops::StateVector::basis(u, x0), t);
    const double s = u.spacing();
    const double expected = std::abs(ops::free_propagator_kernel(t, 0.0, 0.0));
    VerificationReport r = make_report("propagator");
    r.params["n"] = n;
    r.params["h_n"] = h_n;
    r.params["t"] = t;
    r.params["x0"] = x0;
    r.params["kernel_modulus"] = expected;
    r.tolerances["relative"] = rel_tol;
    double worst = 0.0;
    const std::int64_t lo = -n / 4, hi = n / 4;
    const std::int64_t stride = std::max<std::int64_t>(1, (hi - lo) / 32);
    for (std::int64_t k = lo; k < hi; ++k) {
        // c_r = s * psi(x_r) under psi = E_x psi(x) u[x]
        double modulus = std::abs(e.at(u.wrap(k + x0))) / s;
        double rel = std::abs(modulus / expected - 1.0);
        worst = std::max(worst, rel);
        if ((k - lo) % stride == 0) {
            r.rows.push_back({{"r", u.wrap(k + x0)},
                              {"x_minus_x0", static_cast<double>(k) * s},
                              {"modulus", modulus},
                              {"kernel_modulus", expected},
                              {"rel_err", rel}});
        }
    }
    r.params["worst_rel_err"] = worst;
    r.pass = worst <= rel_tol;
    return r;
}

}  // namespace latticeq::verify
