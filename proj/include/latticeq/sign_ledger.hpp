#pragma once

// Frozen sign and typo conventions. Every value here is checked by the
// sign_oracle tool before the core library builds; see SIGN_LEDGER.md.

namespace latticeq::ledger {

inline constexpr const char* version = "SL-1";

/// Discrete Gauss sum phase: (1/sqrt n) sum_k e^{-pi i a k^2/n} = a^{-1/2} e^{sigma i pi/4}.
inline constexpr int sigma = -1;
/// Shift phase after completing the square: e^{tau pi i b^2/(a n)}.
inline constexpr int tau = +1;
/// Fresnel phase: integral of e^{pi i a x^2} dx = |a|^{-1/2} e^{sigma_prime sign(a) i pi/4}.
inline constexpr int sigma_prime = +1;
/// First-order anharmonic coefficient: 1 + i s lambda h.
inline constexpr int anharmonic_s = +1;

/// Free propagator exponent uses (x - x0)^2.
inline constexpr bool propagator_squared_difference = true;
/// Harmonic kernel cross-term coefficient (Mehler).
inline constexpr int harmonic_cross_default = 2;
/// Perturbed Gaussian exponent denominator: e^{-pi i H (k^2 + k^4/L) / n}.
inline constexpr int perturbed_denominator_factor = 1;

}  // namespace latticeq::ledger
