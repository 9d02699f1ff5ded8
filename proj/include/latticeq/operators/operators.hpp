#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <string>

#include "latticeq/operators/fourier.hpp"
#include "latticeq/operators/state.hpp"
#include "latticeq/quantifier/quantifier.hpp"

namespace latticeq::ops {

/// U: u[r] -> e^{i r nu} u[r].
StateVector weyl_u(const StateVector& s);
/// V: u[r] -> u[r + h_n], cyclically.
StateVector weyl_v(const StateVector& s);

/// e^{i nu h_n}, exact root of unity.
Complex commutation_phase(const FiniteUniverse& u);

/// max over `trials` random states of |(UV - e^{i nu h} VU) psi| / |psi|.
double commutation_defect(const FiniteUniverse& u, int trials, std::uint64_t seed = 1);

/// Binary lattice kernel kappa(z, x) with an optional support window in x.
struct KernelOperator {
    std::string name;
    std::function<Complex(std::int64_t z, std::int64_t x)> kappa;
    std::optional<quant::Window> support;
};

/// (L psi)(z) = E_x kappa(z, x) psi(x), tabulated for every z in U(n).
/// Explicit windows must overlap the kernel support.
StateVector apply_kernel(const KernelOperator& k, const quant::LatticeFunction& psi, const FiniteUniverse& u,
                         const quant::WindowPolicy& policy, quant::Exec exec = {});

/// Lattice indicator (z = x) / spacing: the reproducing kernel.
KernelOperator identity_kernel(const FiniteUniverse& u);
/// e^{-2 pi i h z x / n}, the conjugated v-basis character.
KernelOperator character_kernel(const FiniteUniverse& u);
KernelOperator zero_kernel();

/// (1/sqrt(2 pi i t)) e^{i (x - x0)^2 / (2t)}, principal square root.
Complex free_propagator_kernel(double t, double x, double x0);

/// F, multiply v[p] by e^{-i t (k_p)^2 / 2}, F^{-1}. k_p = wrap(h_n p) * spacing is
/// the lattice wave number of v[p]; it is p * spacing when h_n = 1.
StateVector evolve_free(const StateVector& s, double t, FourierPath path = FourierPath::automatic);

enum class CrossTerm { mehler = 2, literal = 1 };

/// sqrt(omega / (2 pi i hbar sin wt)) exp(i omega ((x0^2 + x^2) cos wt - c x0 x) / (2 hbar sin wt)).
Complex harmonic_kernel(double omega, double t, double hbar, double x, double x0,
                        CrossTerm cross = CrossTerm::mehler);

/// Closed-form kernels by name: "free" (t) and "harmonic" (omega, t, hbar, cross).
struct ClosedKernelParams {
    double t = 1.0;
    double omega = 1.0;
    double hbar = 1.0;
    CrossTerm cross = CrossTerm::mehler;
};
std::function<Complex(double x, double x0)> closed_kernel(const std::string& name, const ClosedKernelParams& params);

}  // namespace latticeq::ops
