#include "latticeq/operators/state.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "latticeq/core/errors.hpp"

namespace latticeq::ops {

StateVector::StateVector(const FiniteUniverse& u)
    : universe_(u), amplitudes_(static_cast<std::size_t>(u.n()), Complex{0.0, 0.0}) {}

StateVector::StateVector(const FiniteUniverse& u, std::vector<Complex> amplitudes)
    : universe_(u), amplitudes_(std::move(amplitudes)) {
    if (amplitudes_.size() != static_cast<std::size_t>(u.n())) {
        throw PreconditionError("state has " + std::to_string(amplitudes_.size()) + " amplitudes, universe has n = " +
                                std::to_string(u.n()));
    }
}

StateVector StateVector::basis(const FiniteUniverse& u, std::int64_t r) {
    if (!u.contains(r)) throw PreconditionError("basis index " + std::to_string(r) + " outside U(n)");
    StateVector s(u);
    s.at(r) = 1.0;
    return s;
}

StateVector StateVector::random(const FiniteUniverse& u, std::mt19937_64& rng) {
    std::normal_distribution<double> dist;
    StateVector s(u);
    for (auto& c : s.amplitudes_) {
        double re = dist(rng);
        double im = dist(rng);
        c = {re, im};
    }
    return s;
}

Complex& StateVector::at(std::int64_t r) {
    if (!universe_.contains(r)) throw PreconditionError("lattice point " + std::to_string(r) + " outside U(n)");
    return amplitudes_[universe_.index_of(r)];
}

const Complex& StateVector::at(std::int64_t r) const {
    if (!universe_.contains(r)) throw PreconditionError("lattice point " + std::to_string(r) + " outside U(n)");
    return amplitudes_[universe_.index_of(r)];
}

double StateVector::norm() const {
    double s = 0.0;
    for (const auto& c : amplitudes_) s += std::norm(c);
    return std::sqrt(s);
}

StateVector& StateVector::operator*=(Complex c) {
    for (auto& a : amplitudes_) a *= c;
    return *this;
}

StateVector& StateVector::operator+=(const StateVector& other) {
    if (!(other.universe_ == universe_)) throw PreconditionError("states live on different universes");
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] += other.amplitudes_[i];
    return *this;
}

StateVector& StateVector::operator-=(const StateVector& other) {
    if (!(other.universe_ == universe_)) throw PreconditionError("states live on different universes");
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) amplitudes_[i] -= other.amplitudes_[i];
    return *this;
}

StateVector operator-(StateVector a, const StateVector& b) {
    a -= b;
    return a;
}

StateVector operator*(Complex c, StateVector a) {
    a *= c;
    return a;
}

double distance(const StateVector& a, const StateVector& b) {
    return (a - b).norm();
}

namespace {

std::string shortest(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

double parse_double(const std::string& field, std::size_t line) {
    double v = 0.0;
    const char* first = field.data();
    const char* last = first + field.size();
    while (first < last && *first == ' ') ++first;
    auto res = std::from_chars(first, last, v);
    if (res.ec != std::errc() || res.ptr != last) throw ParseError("bad number '" + field + "'", line, 1);
    return v;
}

}  // namespace

void write_csv(std::ostream& out, const StateVector& s) {
    out << "index,re,im\n";
    const auto& u = s.universe();
    for (std::size_t i = 0; i < s.size(); ++i) {
        const Complex& c = s.amplitudes()[i];
        out << u.point_at(i) << ',' << shortest(c.real()) << ',' << shortest(c.imag()) << '\n';
    }
}

StateVector read_csv(std::istream& in, const FiniteUniverse& u) {
    StateVector s(u);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (lineno == 1 && line.rfind("index", 0) == 0) continue;
        std::stringstream ss(line);
        std::string a, b, c;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c)) {
            throw ParseError("expected index,re,im", lineno, 1);
        }
        auto k = static_cast<std::int64_t>(parse_double(a, lineno));
        if (!u.contains(k)) throw PreconditionError("CSV index " + a + " outside U(n)");
        s.at(k) = {parse_double(b, lineno), parse_double(c, lineno)};
    }
    return s;
}

nlohmann::ordered_json state_to_json(const StateVector& s) {
    nlohmann::ordered_json j;
    j["n"] = s.universe().n();
    j["h_n"] = s.universe().h_n();
    auto amps = nlohmann::ordered_json::array();
    for (const auto& c : s.amplitudes()) amps.push_back({c.real(), c.imag()});
    j["amplitudes"] = std::move(amps);
    return j;
}

StateVector state_from_json(const nlohmann::json& j) {
    FiniteUniverse u(j.at("n").get<std::int64_t>(), j.at("h_n").get<std::int64_t>());
    const auto& amps = j.at("amplitudes");
    std::vector<Complex> v;
    v.reserve(amps.size());
    for (const auto& a : amps) v.emplace_back(a.at(0).get<double>(), a.at(1).get<double>());
    return StateVector(u, std::move(v));
}

}  // namespace latticeq::ops
