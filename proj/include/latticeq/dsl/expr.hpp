#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "latticeq/core/rational.hpp"

namespace latticeq::dsl {

struct Expr {
    enum class Kind { number, pi, imag, n, var, neg, add, sub, mul, div, pow, exp };

    Kind kind = Kind::number;
    Rational value;       // number
    std::string name;     // var: "k", "x", "p1", ...
    int exponent = 0;     // pow
    std::vector<Expr> args;
    int line = 1;
    int col = 1;

    /// Structural equality; source positions are ignored.
    bool operator==(const Expr& other) const;
};

inline constexpr std::size_t max_source_bytes = 64 * 1024;
inline constexpr int max_exponent = 64;

/// Recursive descent over
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := atom ['^' int] | '-' factor
///   atom   := number | pi | i | n | k | x | p<digits> | '(' expr ')' | exp '(' expr ')'
/// Throws ParseError with line:col.
Expr parse(std::string_view text);

/// Direct print of the tree with minimal parentheses.
std::string print_expr(const Expr& e);

/// Variable ordering: k, then p1, p2, ... by index, then x.
bool variable_less(const std::string& a, const std::string& b);

/// Values for numeric evaluation. Lattice variables are integers; x is the
/// embedded coordinate k * spacing.
struct Env {
    std::int64_t n = 0;
    std::int64_t k = 0;
    std::vector<std::int64_t> p;  // p[0] is p1
};

std::complex<double> evaluate(const Expr& e, const Env& env);

}  // namespace latticeq::dsl
