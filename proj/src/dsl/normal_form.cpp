#include "latticeq/dsl/normal_form.hpp"

#include <algorithm>

#include "latticeq/core/errors.hpp"

namespace latticeq::dsl {

namespace {

constexpr std::size_t max_terms = 20000;

template <class T>
int cmp3(const T& a, const T& b) {
    return a < b ? -1 : (b < a ? 1 : 0);
}

int compare_vars(const std::vector<std::pair<std::string, int>>& a,
                 const std::vector<std::pair<std::string, int>>& b) {
    for (std::size_t j = 0; j < a.size() && j < b.size(); ++j) {
        if (a[j].first != b[j].first) return variable_less(a[j].first, b[j].first) ? -1 : 1;
        if (a[j].second != b[j].second) return a[j].second > b[j].second ? -1 : 1;
    }
    return cmp3(b.size(), a.size());
}

void sort_terms(NormalForm& nf) {
    std::sort(nf.terms.begin(), nf.terms.end(),
              [](const auto& x, const auto& y) { return compare(x.first, y.first) < 0; });
}

// Merges equal neighbours of a sorted term list and drops zeros.
void collect(NormalForm& nf) {
    sort_terms(nf);
    std::vector<std::pair<Monomial, Rational>> out;
    for (auto& t : nf.terms) {
        if (!out.empty() && compare(out.back().first, t.first) == 0) {
            out.back().second += t.second;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [](const auto& t) { return t.second == 0; });
    nf.terms = std::move(out);
    if (nf.terms.size() > max_terms) throw ParseError("expression too large after expansion", 1, 1);
}

std::pair<Monomial, Rational> multiply_mono(const Monomial& a, const Monomial& b) {
    Monomial m;
    Rational c = 1;
    m.i = a.i + b.i;
    if (m.i == 2) {
        m.i = 0;
        c = -1;
    }
    m.pi = a.pi + b.pi;
    m.n = a.n + b.n;
    std::size_t x = 0, y = 0;
    while (x < a.vars.size() || y < b.vars.size()) {
        if (y == b.vars.size() || (x < a.vars.size() && variable_less(a.vars[x].first, b.vars[y].first))) {
            m.vars.push_back(a.vars[x++]);
        } else if (x == a.vars.size() || variable_less(b.vars[y].first, a.vars[x].first)) {
            m.vars.push_back(b.vars[y++]);
        } else {
            m.vars.emplace_back(a.vars[x].first, a.vars[x].second + b.vars[y].second);
            ++x;
            ++y;
        }
    }
    if (!a.exp_arg.empty() && !b.exp_arg.empty()) {
        NormalForm s = add(a.exp_arg[0], b.exp_arg[0]);
        if (!s.is_zero()) m.exp_arg.push_back(std::move(s));
    } else if (!a.exp_arg.empty()) {
        m.exp_arg = a.exp_arg;
    } else if (!b.exp_arg.empty()) {
        m.exp_arg = b.exp_arg;
    }
    return {std::move(m), c};
}

NormalForm symbol(int i, int pi, int n) {
    Monomial m;
    m.i = i;
    m.pi = pi;
    m.n = n;
    return {{{m, Rational(1)}}};
}

NormalForm inverse_monomial(const NormalForm& d, const Expr& at) {
    if (d.terms.size() != 1 || !d.terms[0].first.vars.empty() || !d.terms[0].first.exp_arg.empty()) {
        throw ParseError("divisor must be a single literal or symbol product", at.line, at.col);
    }
    const auto& [m, c] = d.terms[0];
    Monomial inv;
    inv.pi = -m.pi;
    inv.n = -m.n;
    Rational coeff = 1 / c;
    if (m.i == 1) {  // 1/i = -i
        inv.i = 1;
        coeff = -coeff;
    }
    return {{{inv, coeff}}};
}

}  // namespace

int Monomial::degree() const {
    int d = 0;
    for (const auto& v : vars) d += v.second;
    return d;
}

NormalForm NormalForm::constant(const Rational& c) {
    NormalForm nf;
    if (c != 0) nf.terms.push_back({Monomial{}, c});
    return nf;
}

// Order: exp-free first, higher degree first, then variables, pi, n, i, exp argument.
int compare(const Monomial& a, const Monomial& b) {
    if (int c = cmp3(a.exp_arg.size(), b.exp_arg.size())) return c;
    if (int c = cmp3(b.degree(), a.degree())) return c;
    if (int c = compare_vars(a.vars, b.vars)) return c;
    if (int c = cmp3(b.pi, a.pi)) return c;
    if (int c = cmp3(b.n, a.n)) return c;
    if (int c = cmp3(a.i, b.i)) return c;
    if (!a.exp_arg.empty()) return compare(a.exp_arg[0], b.exp_arg[0]);
    return 0;
}

int compare(const NormalForm& a, const NormalForm& b) {
    for (std::size_t j = 0; j < a.terms.size() && j < b.terms.size(); ++j) {
        if (int c = compare(a.terms[j].first, b.terms[j].first)) return c;
        if (a.terms[j].second != b.terms[j].second) return a.terms[j].second < b.terms[j].second ? -1 : 1;
    }
    return cmp3(a.terms.size(), b.terms.size());
}

bool operator==(const Monomial& a, const Monomial& b) { return compare(a, b) == 0; }
bool operator==(const NormalForm& a, const NormalForm& b) { return compare(a, b) == 0; }

NormalForm add(const NormalForm& a, const NormalForm& b) {
    NormalForm r = a;
    r.terms.insert(r.terms.end(), b.terms.begin(), b.terms.end());
    collect(r);
    return r;
}

NormalForm scale(const NormalForm& a, const Rational& c) {
    if (c == 0) return {};
    NormalForm r = a;
    for (auto& t : r.terms) t.second *= c;
    return r;
}

NormalForm multiply(const NormalForm& a, const NormalForm& b) {
    if (a.terms.size() * b.terms.size() > max_terms) throw ParseError("expression too large after expansion", 1, 1);
    NormalForm r;
    for (const auto& x : a.terms) {
        for (const auto& y : b.terms) {
            auto [m, c] = multiply_mono(x.first, y.first);
            r.terms.emplace_back(std::move(m), c * x.second * y.second);
        }
    }
    collect(r);
    return r;
}

NormalForm normalize(const Expr& e) {
    using K = Expr::Kind;
    switch (e.kind) {
        case K::number: return NormalForm::constant(e.value);
        case K::pi: return symbol(0, 1, 0);
        case K::imag: return symbol(1, 0, 0);
        case K::n: return symbol(0, 0, 1);
        case K::var: {
            Monomial m;
            m.vars.emplace_back(e.name, 1);
            return {{{m, Rational(1)}}};
        }
        case K::neg: return scale(normalize(e.args[0]), -1);
        case K::add: return add(normalize(e.args[0]), normalize(e.args[1]));
        case K::sub: return add(normalize(e.args[0]), scale(normalize(e.args[1]), -1));
        case K::mul: return multiply(normalize(e.args[0]), normalize(e.args[1]));
        case K::div: {
            NormalForm d = normalize(e.args[1]);
            if (d.is_zero()) throw ParseError("division by zero", e.line, e.col);
            return multiply(normalize(e.args[0]), inverse_monomial(d, e));
        }
        case K::pow: {
            NormalForm base = normalize(e.args[0]);
            NormalForm r = NormalForm::constant(1);
            for (int j = 0; j < e.exponent; ++j) r = multiply(r, base);
            return r;
        }
        case K::exp: {
            NormalForm arg = normalize(e.args[0]);
            if (arg.is_zero()) return NormalForm::constant(1);
            Monomial m;
            m.exp_arg.push_back(std::move(arg));
            return {{{m, Rational(1)}}};
        }
    }
    return {};
}

namespace {

std::string power(const std::string& base, int e) {
    return e == 1 ? base : base + "^" + std::to_string(e);
}

std::string print_term(const Monomial& m, const Rational& abs_coeff) {
    std::vector<std::string> num;
    if (m.i) num.push_back("i");
    if (m.pi > 0) num.push_back(power("pi", m.pi));
    if (m.n > 0) num.push_back(power("n", m.n));
    for (const auto& [v, e] : m.vars) num.push_back(power(v, e));
    if (!m.exp_arg.empty()) num.push_back("exp(" + print_normal(m.exp_arg[0]) + ")");
    std::string s;
    if (num.empty() || abs_coeff != 1) {
        s = to_string(abs_coeff);
    }
    for (const auto& f : num) s += (s.empty() ? "" : "*") + f;
    if (m.pi < 0) s += "/" + power("pi", -m.pi);
    if (m.n < 0) s += "/" + power("n", -m.n);
    return s;
}

}  // namespace

std::string print_normal(const NormalForm& nf) {
    if (nf.is_zero()) return "0";
    std::string s;
    bool first = true;
    for (const auto& [m, c] : nf.terms) {
        const bool negative = c < 0;
        const std::string body = print_term(m, negative ? Rational(-c) : c);
        if (first) s += negative ? "-" + body : body;
        else s += (negative ? " - " : " + ") + body;
        first = false;
    }
    return s;
}

std::string print_canonical(const Expr& e) { return print_normal(normalize(e)); }

}  // namespace latticeq::dsl
