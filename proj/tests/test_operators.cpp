#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "gen.hpp"
#include "latticeq/core/errors.hpp"
#include "latticeq/operators/fourier.hpp"
#include "latticeq/operators/operators.hpp"

using namespace latticeq;
using namespace latticeq::ops;

namespace {

const double pi = std::numbers::pi;

StateVector random_state(const FiniteUniverse& u) {
    static std::mt19937_64 rng(7);
    return StateVector::random(u, rng);
}

// Naive O(n^2) transform with the same convention, computed in long double.
StateVector naive_forward(const StateVector& s) {
    const FiniteUniverse& u = s.universe();
    const std::int64_t n = u.n();
    StateVector out(u);
    for (std::int64_t p = u.min_point(); p <= u.max_point(); ++p) {
        std::complex<long double> acc = 0;
        for (std::int64_t x = u.min_point(); x <= u.max_point(); ++x) {
            std::int64_t e = ((u.h_n() * p % n) * x % n + n) % n;
            long double ang = -2 * std::numbers::pi_v<long double> * e / n;
            acc += std::complex<long double>(std::cos(ang), std::sin(ang)) *
                   std::complex<long double>(s.at(x).real(), s.at(x).imag());
        }
        acc /= std::sqrt(static_cast<long double>(n));
        out.at(p) = Complex(static_cast<double>(acc.real()), static_cast<double>(acc.imag()));
    }
    return out;
}

}  // namespace

TEST(Weyl, UExamples) {
    FiniteUniverse u(4, 1);
    StateVector du = weyl_u(StateVector::basis(u, 1));
    EXPECT_LE(std::abs(du.at(1) - Complex(0, 1)), 1e-15);
    StateVector z = weyl_u(StateVector::basis(u, 0));
    EXPECT_EQ(z.at(0), Complex(1));
}

TEST(Weyl, VCycle) {
    FiniteUniverse u(4, 1);
    StateVector s = StateVector::basis(u, 1);
    StateVector v = s;
    for (int j = 0; j < 4; ++j) v = weyl_v(v);
    EXPECT_EQ(distance(v, s), 0.0);
    EXPECT_EQ(weyl_v(s).at(-2), Complex(1));  // 1 + 1 wraps to -2
}

TEST(Weyl, CommutationOnBasis) {
    FiniteUniverse u(4, 1);
    StateVector e0 = StateVector::basis(u, 0);
    StateVector lhs = weyl_u(weyl_v(e0));
    StateVector rhs = commutation_phase(u) * weyl_v(weyl_u(e0));
    EXPECT_LE(std::abs(lhs.at(1) - Complex(0, 1)), 1e-15);
    EXPECT_LE(distance(lhs, rhs), 1e-15);
}

TEST(Weyl, CommutationRandom) {
    EXPECT_LE(commutation_defect(FiniteUniverse(16, 3), 100), 1e-12);
    // nu h = 2 pi: with n = 2 and h = 1 the phase is e^{i pi}; at h = n + 1 it reduces to h = 1.
    FiniteUniverse u(6, 7);
    EXPECT_LE(commutation_defect(u, 10), 1e-12);
}

TEST(Weyl, Isometries) {
    for (std::int64_t n : {16, 256, 4096}) {
        FiniteUniverse u(n, 1);
        for (int t = 0; t < 10; ++t) {
            StateVector s = random_state(u);
            double nrm = s.norm();
            EXPECT_NEAR(weyl_u(s).norm(), nrm, 1e-9 * nrm);
            EXPECT_NEAR(weyl_v(s).norm(), nrm, 1e-9 * nrm);
            EXPECT_NEAR(fourier_forward(s).norm(), nrm, 1e-9 * nrm);
            EXPECT_NEAR(evolve_free(s, 0.7).norm(), nrm, 1e-9 * nrm);
        }
    }
}

TEST(Fourier, BasisZeroIsUniform) {
    FiniteUniverse u(64, 1);
    StateVector f = fourier_forward(StateVector::basis(u, 0));
    for (auto a : f.amplitudes()) EXPECT_LE(std::abs(a - Complex(1.0 / 8.0)), 1e-15);
}

TEST(Fourier, MatchesNaive) {
    for (auto [n, h] : {std::pair<std::int64_t, std::int64_t>{12, 5}, {64, 1}, {90, 7}, {128, 3}}) {
        FiniteUniverse u(n, h);
        StateVector s = random_state(u);
        StateVector ref = naive_forward(s);
        EXPECT_LE(distance(fourier_forward(s, FourierPath::dense), ref), 1e-12);
        EXPECT_LE(distance(fourier_forward(s, FourierPath::fast), ref), 1e-12);
    }
}

TEST(Fourier, FastPathSizes) {
    // Mixed radix, small primes and a large prime factor (Bluestein).
    for (std::int64_t n : {2, 6, 30, 98, 2 * 67, 2 * 101 * 3, 4100, 2 * 4099}) {
        FiniteUniverse u(n, 1);
        StateVector s = random_state(u);
        EXPECT_LE(distance(fourier_forward(s, FourierPath::fast), fourier_forward(s, FourierPath::dense)),
                  1e-10 * s.norm())
            << n;
        EXPECT_LE(distance(fourier_inverse(fourier_forward(s, FourierPath::fast), FourierPath::fast), s), 1e-10) << n;
    }
}

TEST(Fourier, InverseElementwise) {
    for (std::int64_t n : {16, 256, 4096}) {
        FiniteUniverse u(n, n == 16 ? 3 : 1);
        StateVector s = random_state(u);
        StateVector back = fourier_inverse(fourier_forward(s));
        double worst = 0;
        for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(back.amplitudes()[i] - s.amplitudes()[i]));
        EXPECT_LE(worst, 1e-10);
    }
}

TEST(Fourier, DiagonalizesV) {
    for (auto [n, h] : {std::pair<std::int64_t, std::int64_t>{16, 1}, {16, 3}, {256, 5}}) {
        FiniteUniverse u(n, h);
        for (std::int64_t p = u.min_point(); p <= u.max_point(); ++p) {
            StateVector e = StateVector::basis(u, p);
            StateVector w = fourier_forward(weyl_v(fourier_inverse(e)));
            // entry e^{-i nu h^2 p}
            Complex expected = std::polar(1.0, -2 * pi * static_cast<double>((h * h * p) % n) / n);
            EXPECT_LE(std::abs(w.at(p) - expected), 1e-9);
            EXPECT_LE(std::abs(w.norm() - 1.0), 1e-12);
            if (h == 1) {
                EXPECT_LE(std::abs(w.at(p) - std::polar(1.0, -2 * pi * p / n)), 1e-9);
            }
        }
    }
}

TEST(Fourier, MomentumBasis) {
    FiniteUniverse u(32, 1);
    StateVector v = momentum_basis(u, 3);
    StateVector f = fourier_forward(v);
    EXPECT_LE(std::abs(f.at(3) - Complex(1)), 1e-12);
}

TEST(Kernel, IdentityAndZero) {
    FiniteUniverse u(64, 1);
    StateVector s = random_state(u);
    quant::LatticeFunction psi = [&](std::int64_t x) { return s.at(x); };
    EXPECT_LE(distance(apply_kernel(identity_kernel(u), psi, u, quant::WholeUniverse{}), s), 1e-12);
    EXPECT_EQ(apply_kernel(zero_kernel(), psi, u, quant::WholeUniverse{}).norm(), 0.0);
}

TEST(Kernel, CharacterMatchesFourier) {
    FiniteUniverse u(64, 1);
    StateVector s = random_state(u);
    quant::LatticeFunction psi = [&](std::int64_t x) { return s.at(x); };
    StateVector k = apply_kernel(character_kernel(u), psi, u, quant::WholeUniverse{});
    StateVector f = fourier_forward(s);
    f *= std::sqrt(2 * pi);  // spacing * sqrt(n)
    EXPECT_LE(distance(k, f), 1e-11);
}

TEST(Kernel, Linearity) {
    FiniteUniverse u(64, 3);
    StateVector a = random_state(u), b = random_state(u);
    Complex alpha(0.3, -1.2), beta(2.0, 0.5);
    auto apply = [&](const StateVector& s) {
        quant::LatticeFunction psi = [&](std::int64_t x) { return s.at(x); };
        return apply_kernel(character_kernel(u), psi, u, quant::WholeUniverse{}, quant::Exec{4});
    };
    StateVector combo = alpha * a;
    combo += beta * b;
    StateVector lhs = apply(combo);
    StateVector rhs = alpha * apply(a);
    rhs += beta * apply(b);
    EXPECT_LE(distance(lhs, rhs), 1e-11);
}

TEST(Kernel, SupportMismatch) {
    FiniteUniverse u(1000, 1);
    KernelOperator k = identity_kernel(u);
    k.support = quant::Window(5, 6);
    EXPECT_THROW(apply_kernel(k, [](std::int64_t) { return Complex(1); }, u, quant::Window(-2, 2)), PreconditionError);
}

TEST(Propagator, Kernel) {
    EXPECT_NEAR(std::abs(free_propagator_kernel(1, 0.3, 0.3)), 1 / std::sqrt(2 * pi), 1e-15);
    Complex at0 = free_propagator_kernel(1, 0, 0);
    Complex at1 = free_propagator_kernel(1, std::sqrt(2 * pi), 0);
    EXPECT_LE(std::abs(at1 / at0 - Complex(-1)), 1e-14);
    // prefactor phase e^{-i pi/4}
    EXPECT_LE(std::abs(at0 - std::polar(1 / std::sqrt(2 * pi), -pi / 4)), 1e-15);
}

TEST(Propagator, ZeroTimeIsIdentity) {
    FiniteUniverse u(256, 1);
    StateVector s = random_state(u);
    EXPECT_EQ(distance(evolve_free(s, 0.0), s), 0.0);
}

TEST(Propagator, GroupProperty) {
    FiniteUniverse u(512, 1);
    StateVector s = random_state(u);
    EXPECT_LE(distance(evolve_free(evolve_free(s, 0.4), 0.6), evolve_free(s, 1.0)), 1e-11);
    EXPECT_LE(distance(evolve_free(evolve_free(s, 0.8), -0.8), s), 1e-11);
}

TEST(Harmonic, FreeLimit) {
    for (double x : {-1.5, 0.0, 0.7, 2.0}) {
        for (double x0 : {-0.5, 0.0, 1.0}) {
            Complex h = harmonic_kernel(1e-4, 1.0, 1.0, x, x0);
            Complex f = free_propagator_kernel(1.0, x, x0);
            EXPECT_LE(std::abs(h - f), 1e-6) << x << " " << x0;
        }
    }
    // The literal single cross term does not degenerate to the free kernel.
    EXPECT_GT(std::abs(harmonic_kernel(1e-4, 1.0, 1.0, 1.0, 1.0, CrossTerm::literal) - free_propagator_kernel(1, 1, 1)),
              0.1);
}

TEST(Harmonic, QuarterPeriodIsFourierKernel) {
    const double w = 2.0, t = pi / 4;  // omega t = pi/2
    Complex base = harmonic_kernel(w, t, 1.0, 0.0, 0.0);
    for (double x : {-1.0, 0.3, 1.2})
        for (double x0 : {-0.8, 0.5}) {
            Complex k = harmonic_kernel(w, t, 1.0, x, x0);
            EXPECT_LE(std::abs(k / base - std::polar(1.0, -w * x * x0)), 1e-12);
        }
}

TEST(Harmonic, Caustic) {
    EXPECT_THROW(harmonic_kernel(1.0, pi, 1.0, 0, 0), PreconditionError);
    EXPECT_THROW(closed_kernel("harmonic", {.t = 2 * pi}), PreconditionError);
    EXPECT_THROW(closed_kernel("nope", {}), PreconditionError);
    EXPECT_NO_THROW(closed_kernel("free", {}));
}

TEST(State, CsvAndJsonRoundTrip) {
    FiniteUniverse u(16, 3);
    StateVector s = random_state(u);
    std::stringstream csv;
    write_csv(csv, s);
    EXPECT_EQ(distance(read_csv(csv, u), s), 0.0);
    EXPECT_EQ(distance(state_from_json(nlohmann::json::parse(state_to_json(s).dump())), s), 0.0);
    EXPECT_THROW(s.at(8), PreconditionError);
}
