#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "latticeq/core/universe.hpp"

namespace latticeq::ops {

using Complex = std::complex<double>;

/// Coordinates over the position basis u[r], r in [-n/2, n/2).
class StateVector {
public:
    explicit StateVector(const FiniteUniverse& u);
    StateVector(const FiniteUniverse& u, std::vector<Complex> amplitudes);

    /// u[r]
    static StateVector basis(const FiniteUniverse& u, std::int64_t r);
    /// Independent standard normal real and imaginary parts.
    static StateVector random(const FiniteUniverse& u, std::mt19937_64& rng);

    const FiniteUniverse& universe() const noexcept { return universe_; }
    std::size_t size() const noexcept { return amplitudes_.size(); }
    Complex& at(std::int64_t r);
    const Complex& at(std::int64_t r) const;
    std::vector<Complex>& amplitudes() noexcept { return amplitudes_; }
    const std::vector<Complex>& amplitudes() const noexcept { return amplitudes_; }

    /// Euclidean norm of the coordinates (u[r] is orthonormal).
    double norm() const;
    StateVector& operator*=(Complex c);
    StateVector& operator+=(const StateVector& other);
    StateVector& operator-=(const StateVector& other);

private:
    FiniteUniverse universe_;
    std::vector<Complex> amplitudes_;
};

StateVector operator-(StateVector a, const StateVector& b);
StateVector operator*(Complex c, StateVector a);
double distance(const StateVector& a, const StateVector& b);

/// Rows "index,re,im" with the lattice point as index, after a header line.
void write_csv(std::ostream& out, const StateVector& s);
StateVector read_csv(std::istream& in, const FiniteUniverse& u);

/// {"n": n, "h_n": h, "amplitudes": [[re, im], ...]}
nlohmann::ordered_json state_to_json(const StateVector& s);
StateVector state_from_json(const nlohmann::json& j);

}  // namespace latticeq::ops
