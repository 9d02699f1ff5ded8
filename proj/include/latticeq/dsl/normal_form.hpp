#pragma once

#include <string>
#include <utility>
#include <vector>

#include "latticeq/core/rational.hpp"
#include "latticeq/dsl/expr.hpp"

namespace latticeq::dsl {

struct NormalForm;

/// i^{0|1} pi^a n^b prod v^e [exp(arg)]; a and b may be negative.
struct Monomial {
    int i = 0;
    int pi = 0;
    int n = 0;
    std::vector<std::pair<std::string, int>> vars;  // variable_less order, exponents > 0
    std::vector<NormalForm> exp_arg;                // empty or one argument

    int degree() const;
};

/// Sum of monomials with exact rational coefficients, sorted, no zero terms.
struct NormalForm {
    std::vector<std::pair<Monomial, Rational>> terms;

    bool is_zero() const { return terms.empty(); }
    static NormalForm constant(const Rational& c);
};

int compare(const Monomial& a, const Monomial& b);
int compare(const NormalForm& a, const NormalForm& b);
bool operator==(const Monomial& a, const Monomial& b);
bool operator==(const NormalForm& a, const NormalForm& b);

NormalForm add(const NormalForm& a, const NormalForm& b);
NormalForm multiply(const NormalForm& a, const NormalForm& b);
NormalForm scale(const NormalForm& a, const Rational& c);

/// Distributes products and powers, collects like monomials, folds products of
/// exponentials into one exp. Throws ParseError on non-monomial divisors.
NormalForm normalize(const Expr& e);

std::string print_normal(const NormalForm& nf);

/// print_normal(normalize(e)).
std::string print_canonical(const Expr& e);

}  // namespace latticeq::dsl
