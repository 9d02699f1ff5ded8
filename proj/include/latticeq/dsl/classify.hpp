#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "latticeq/core/predicates.hpp"
#include "latticeq/core/quadratic_form.hpp"
#include "latticeq/dsl/expr.hpp"
#include "latticeq/dsl/normal_form.hpp"

namespace latticeq::dsl {

struct ClassifiedPredicate {
    enum class Tag { gaussian, perturbed, sampled };

    Tag tag = Tag::sampled;
    Expr source;
    NormalForm normal;
    /// Lattice variables in order k, p1, p2, ...; x counts as k.
    std::vector<std::string> variables;

    // gaussian
    Rational eta_re = 0;
    Rational eta_im = 0;
    QuadraticForm form;

    // perturbed
    std::int64_t H = 0;
    std::int64_t L = 0;

    std::complex<double> eta() const { return {to_double(eta_re), to_double(eta_im)}; }
    GaussianPredicate gaussian() const;
    PerturbedGaussianPredicate perturbed(const FiniteUniverse& u) const;
};

const char* tag_name(ClassifiedPredicate::Tag t);

ClassifiedPredicate classify(const Expr& e);

// universe: points must lie in U(n). closure: the endpoint n/2 is also accepted.
enum class PointRange { universe, closure };


/// Exact core evaluation for Gaussian and perturbed tags, direct AST
/// evaluation for sampled ones. `point` lists values for `variables`.
std::complex<double> evaluate(const ClassifiedPredicate& c, std::span<const std::int64_t> point,
                              const FiniteUniverse& u, PointRange range = PointRange::universe);

/// Env from a point listed in the order of `variables`.
Env make_env(const ClassifiedPredicate& c, std::span<const std::int64_t> point, const FiniteUniverse& u,
             PointRange range = PointRange::universe);

}  // namespace latticeq::dsl
