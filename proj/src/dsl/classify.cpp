#include "latticeq/dsl/classify.hpp"

#include <algorithm>

#include "latticeq/core/errors.hpp"

namespace latticeq::dsl {

namespace {

void collect_vars(const NormalForm& nf, std::vector<std::string>& out) {
    for (const auto& [m, c] : nf.terms) {
        for (const auto& [v, e] : m.vars) out.push_back(v == "x" ? "k" : v);
        if (!m.exp_arg.empty()) collect_vars(m.exp_arg[0], out);
    }
}

std::vector<std::string> ordered_vars(const NormalForm& nf) {
    std::vector<std::string> v;
    collect_vars(nf, v);
    std::sort(v.begin(), v.end(), variable_less);
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

bool plain_constant(const Monomial& m) { return m.pi == 0 && m.n == 0 && m.vars.empty(); }

// -pi i (...) / n scaffold
bool phase_monomial(const Monomial& m) { return m.i == 1 && m.pi == 1 && m.n == -1 && m.exp_arg.empty(); }

bool try_gaussian(ClassifiedPredicate& c) {
    const NormalForm& nf = c.normal;
    if (nf.is_zero()) return false;
    const auto& arg0 = nf.terms[0].first.exp_arg;
    if (arg0.empty()) return false;
    Rational re = 0, im = 0;
    for (const auto& [m, coeff] : nf.terms) {
        if (!plain_constant(m) || m.exp_arg.empty() || !(m.exp_arg[0] == arg0[0])) return false;
        (m.i ? im : re) += coeff;
    }
    const NormalForm& arg = arg0[0];
    for (const auto& [m, coeff] : arg.terms) {
        if (!phase_monomial(m) || m.degree() != 2) return false;
        for (const auto& [v, e] : m.vars)
            if (v == "x") return false;
    }
    std::vector<std::string> vars = ordered_vars(arg);
    const std::size_t dim = vars.size();
    std::vector<Rational> mat(dim * dim, Rational(0));
    auto index = [&](const std::string& v) {
        return static_cast<std::size_t>(std::find(vars.begin(), vars.end(), v) - vars.begin());
    };
    for (const auto& [m, coeff] : arg.terms) {
        const Rational q = -coeff;
        if (m.vars.size() == 1) {
            std::size_t a = index(m.vars[0].first);
            mat[a * dim + a] += q;
        } else {
            std::size_t a = index(m.vars[0].first), b = index(m.vars[1].first);
            mat[a * dim + b] += q / 2;
            mat[b * dim + a] += q / 2;
        }
    }
    c.tag = ClassifiedPredicate::Tag::gaussian;
    c.eta_re = re;
    c.eta_im = im;
    c.form = QuadraticForm(dim, std::move(mat));
    c.variables = std::move(vars);
    return true;
}

bool try_perturbed(ClassifiedPredicate& c) {
    const NormalForm& nf = c.normal;
    if (nf.terms.size() != 1) return false;
    const auto& [outer, coeff] = nf.terms[0];
    if (coeff != 1 || outer.i != 0 || !plain_constant(outer) || outer.exp_arg.empty()) return false;
    const NormalForm& arg = outer.exp_arg[0];
    if (arg.terms.size() != 2) return false;
    Rational c2 = 0, c4 = 0;
    for (const auto& [m, q] : arg.terms) {
        if (!phase_monomial(m) || m.vars.size() != 1 || m.vars[0].first != "k") return false;
        if (m.vars[0].second == 2) c2 = -q;
        else if (m.vars[0].second == 4) c4 = -q;
        else return false;
    }
    if (c2 <= 0 || c4 <= 0 || !is_integer(c2)) return false;
    Rational L = c2 / c4;
    if (!is_integer(L)) return false;
    c.tag = ClassifiedPredicate::Tag::perturbed;
    c.H = to_int64(numer(c2));
    c.L = to_int64(numer(L));
    c.variables = {"k"};
    return true;
}

}  // namespace

const char* tag_name(ClassifiedPredicate::Tag t) {
    switch (t) {
        case ClassifiedPredicate::Tag::gaussian: return "gaussian";
        case ClassifiedPredicate::Tag::perturbed: return "perturbed";
        case ClassifiedPredicate::Tag::sampled: return "sampled";
    }
    return "sampled";
}

GaussianPredicate ClassifiedPredicate::gaussian() const {
    if (tag != Tag::gaussian) throw PreconditionError("expression is not a Gaussian predicate");
    return {eta(), form};
}

PerturbedGaussianPredicate ClassifiedPredicate::perturbed(const FiniteUniverse& u) const {
    if (tag != Tag::perturbed) throw PreconditionError("expression is not a perturbed Gaussian predicate");
    return PerturbedGaussianPredicate(H, L, u);
}

ClassifiedPredicate classify(const Expr& e) {
    ClassifiedPredicate c;
    c.source = e;
    c.normal = normalize(e);
    if (try_gaussian(c) || try_perturbed(c)) return c;
    c.tag = ClassifiedPredicate::Tag::sampled;
    c.variables = ordered_vars(c.normal);
    return c;
}

Env make_env(const ClassifiedPredicate& c, std::span<const std::int64_t> point, const FiniteUniverse& u,
             PointRange range) {
    if (point.size() != c.variables.size()) {
        throw PreconditionError("expression has " + std::to_string(c.variables.size()) + " variables, got " +
                                std::to_string(point.size()) + " values");
    }
    Env env;
    env.n = u.n();
    for (std::size_t j = 0; j < point.size(); ++j) {
        const bool edge = range == PointRange::closure && point[j] == u.n() / 2;
        if (!u.contains(point[j]) && !edge) {
            const std::int64_t hi = range == PointRange::closure ? u.n() / 2 : u.max_point();
            throw PreconditionError("point " + std::to_string(point[j]) + " outside [" + std::to_string(u.min_point()) +
                                    ", " + std::to_string(hi) + "]");
        }
        const std::string& v = c.variables[j];
        if (v == "k") {
            env.k = point[j];
        } else {
            std::size_t idx = std::stoul(v.substr(1));
            if (env.p.size() < idx) env.p.resize(idx, 0);
            env.p[idx - 1] = point[j];
        }
    }
    return env;
}

std::complex<double> evaluate(const ClassifiedPredicate& c, std::span<const std::int64_t> point,
                              const FiniteUniverse& u, PointRange range) {
    Env env = make_env(c, point, u, range);
    switch (c.tag) {
        case ClassifiedPredicate::Tag::gaussian: return eval_gaussian(c.gaussian(), point, u);
        case ClassifiedPredicate::Tag::perturbed: {
            // pointwise values need none of the global-range divisibility conditions
            const Rational coeffs[] = {0, 0, Rational(c.H), 0, Rational(c.H, c.L)};
            return PolyPhase(coeffs, u.n()).at(env.k);
        }
        case ClassifiedPredicate::Tag::sampled: return evaluate(c.source, env);
    }
    return {};
}

}  // namespace latticeq::dsl
