#include "latticeq/operators/operators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "latticeq/core/errors.hpp"
#include "latticeq/core/phase.hpp"

namespace latticeq::ops {

namespace {

std::uint64_t residue(std::int64_t v, std::int64_t n) {
    std::int64_t r = v % n;
    return static_cast<std::uint64_t>(r < 0 ? r + n : r);
}

// e^{+2 pi i r / n}
Complex plus_turn(std::int64_t r, std::int64_t n) {
    return turn_phase((static_cast<std::uint64_t>(n) - residue(r, n)) % static_cast<std::uint64_t>(n),
                      static_cast<std::uint64_t>(n));
}

}  // namespace

StateVector weyl_u(const StateVector& s) {
    const FiniteUniverse& u = s.universe();
    StateVector out(u);
    for (std::size_t i = 0; i < s.size(); ++i) out.amplitudes()[i] = s.amplitudes()[i] * plus_turn(u.point_at(i), u.n());
    return out;
}

StateVector weyl_v(const StateVector& s) {
    const FiniteUniverse& u = s.universe();
    StateVector out(u);
    const std::int64_t h = u.h_n() % u.n();
    for (std::size_t i = 0; i < s.size(); ++i) {
        out.at(u.wrap(u.point_at(i) + h)) = s.amplitudes()[i];
    }
    return out;
}

Complex commutation_phase(const FiniteUniverse& u) {
    return plus_turn(u.h_n() % u.n(), u.n());
}

double commutation_defect(const FiniteUniverse& u, int trials, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    const Complex phase = commutation_phase(u);
    double worst = 0.0;
    for (int t = 0; t < trials; ++t) {
        StateVector psi = StateVector::random(u, rng);
        StateVector lhs = weyl_u(weyl_v(psi));
        StateVector rhs = phase * weyl_v(weyl_u(psi));
        worst = std::max(worst, distance(lhs, rhs) / psi.norm());
    }
    return worst;
}

StateVector apply_kernel(const KernelOperator& k, const quant::LatticeFunction& psi, const FiniteUniverse& u,
                         const quant::WindowPolicy& policy, quant::Exec exec) {
    if (const auto* w = std::get_if<quant::Window>(&policy); w && k.support) {
        if (w->m2 < k.support->m1 || k.support->m2 < w->m1) {
            throw PreconditionError("window [" + std::to_string(w->m1) + ", " + std::to_string(w->m2) +
                                    "] does not meet the support of kernel '" + k.name + "'");
        }
    }
    StateVector out(u);
    quant::parallel_for(
        u.n(),
        [&](std::int64_t i) {
            std::int64_t z = u.point_at(static_cast<std::size_t>(i));
            quant::LatticeFunction integrand = [&](std::int64_t x) { return k.kappa(z, x) * psi(x); };
            out.amplitudes()[static_cast<std::size_t>(i)] = quant::quantify(integrand, policy, u).value;
        },
        exec);
    return out;
}

KernelOperator identity_kernel(const FiniteUniverse& u) {
    const double inv = 1.0 / u.spacing();
    return {"identity", [inv](std::int64_t z, std::int64_t x) { return z == x ? Complex(inv, 0.0) : Complex(0.0, 0.0); },
            std::nullopt};
}

KernelOperator character_kernel(const FiniteUniverse& u) {
    const std::int64_t n = u.n();
    const std::int64_t h = u.h_n() % n;
    return {"character",
            [n, h](std::int64_t z, std::int64_t x) {
                auto e = static_cast<__int128>(h) * residue(z, n) % n * residue(x, n) % n;
                return turn_phase(static_cast<std::uint64_t>(e), static_cast<std::uint64_t>(n));
            },
            std::nullopt};
}

KernelOperator zero_kernel() {
    return {"zero", [](std::int64_t, std::int64_t) { return Complex(0.0, 0.0); }, std::nullopt};
}

Complex free_propagator_kernel(double t, double x, double x0) {
    if (t == 0.0) throw PreconditionError("free propagator needs t != 0");
    const double d = x - x0;
    Complex pref = 1.0 / std::sqrt(Complex(0.0, 2.0 * std::numbers::pi * t));
    return pref * std::polar(1.0, d * d / (2.0 * t));
}

StateVector evolve_free(const StateVector& s, double t, FourierPath path) {
    if (t == 0.0) return s;
    const FiniteUniverse& u = s.universe();
    StateVector v = fourier_forward(s, path);
    const std::int64_t h = u.h_n() % u.n();
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::int64_t p = u.point_at(i);
        auto hp = static_cast<std::int64_t>(static_cast<__int128>(h) * p % u.n());
        double kp = static_cast<double>(u.wrap(hp)) * u.spacing();
        v.amplitudes()[i] *= std::polar(1.0, -t * kp * kp / 2.0);
    }
    return fourier_inverse(v, path);
}

Complex harmonic_kernel(double omega, double t, double hbar, double x, double x0, CrossTerm cross) {
    if (!(omega > 0.0)) throw PreconditionError("harmonic kernel needs omega > 0");
    if (!(hbar > 0.0)) throw PreconditionError("harmonic kernel needs hbar > 0");
    const double wt = omega * t;
    const double sn = std::sin(wt);
    if (std::abs(sn) <= 1e-12 * std::max(1.0, std::abs(wt))) {
        throw PreconditionError("harmonic kernel caustic: omega*t = " + std::to_string(wt) + " is a multiple of pi");
    }
    const double c = static_cast<double>(static_cast<int>(cross));
    Complex pref = std::sqrt(Complex(omega, 0.0) / Complex(0.0, 2.0 * std::numbers::pi * hbar * sn));
    double phase = omega * ((x0 * x0 + x * x) * std::cos(wt) - c * x0 * x) / (2.0 * hbar * sn);
    return pref * std::polar(1.0, phase);
}

std::function<Complex(double, double)> closed_kernel(const std::string& name, const ClosedKernelParams& p) {
    if (name == "free") {
        if (p.t == 0.0) throw PreconditionError("free propagator needs t != 0");
        return [t = p.t](double x, double x0) { return free_propagator_kernel(t, x, x0); };
    }
    if (name == "harmonic") {
        harmonic_kernel(p.omega, p.t, p.hbar, 0.0, 0.0, p.cross);  // validates
        return [p](double x, double x0) { return harmonic_kernel(p.omega, p.t, p.hbar, x, x0, p.cross); };
    }
    throw PreconditionError("unknown kernel '" + name + "' (expected free or harmonic)");
}

}  // namespace latticeq::ops
