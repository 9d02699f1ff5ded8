#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "dsl_corpus.hpp"
#include "gen.hpp"
#include "latticeq/core/errors.hpp"
#include "latticeq/dsl/classify.hpp"
#include "latticeq/dsl/normal_form.hpp"

using namespace latticeq;
using namespace latticeq::dsl;

namespace {

std::string error_of(const std::string& text) {
    try {
        parse(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return "";
}

std::complex<double> at(const std::string& text, std::int64_t n, std::int64_t k, std::vector<std::int64_t> p = {}) {
    return evaluate(parse(text), Env{n, k, std::move(p)});
}

const char* var_names[] = {"k", "p1", "p2"};

// Renders sum_{i<=j} c_ij v_i v_j with shuffled terms, random factor order and grouping.
std::string render_form(const std::vector<std::pair<std::pair<int, int>, Rational>>& terms) {
    std::vector<std::string> parts;
    for (const auto& [ij, c] : terms) {
        std::string a = var_names[ij.first], b = var_names[ij.second];
        std::string vars;
        if (ij.first == ij.second && gen::integer(0, 1)) vars = a + "^2";
        else vars = gen::integer(0, 1) ? a + "*" + b : b + "*" + a;
        std::string coeff = "(" + to_string(c) + ")";
        switch (gen::integer(0, 2)) {
            case 0: parts.push_back(coeff + "*" + vars); break;
            case 1: parts.push_back(vars + "*" + coeff); break;
            default: parts.push_back("(" + coeff + "*(" + vars + "))"); break;
        }
    }
    std::shuffle(parts.begin(), parts.end(), gen::rng());
    std::string s = parts.empty() ? "0" : parts[0];
    for (std::size_t j = 1; j < parts.size(); ++j) s = gen::integer(0, 1) ? "(" + s + ")+" + parts[j] : s + "+" + parts[j];
    return s;
}

}  // namespace

TEST(Parse, Examples) {
    EXPECT_NO_THROW(parse("exp(-pi*i*(k^2)/n)"));
    EXPECT_NO_THROW(parse("exp(-pi*i*(3/2*k^2 + 2*k*p1)/n)"));
    EXPECT_NE(error_of("k^(1/2)").find("non-integer exponent"), std::string::npos);
    EXPECT_NE(error_of("q + 1").find("unknown identifier 'q'"), std::string::npos);
    EXPECT_EQ(error_of("exp(-k^2\n  + exp(k"), "2:10: expected ')'");
    EXPECT_NE(error_of("").find("expected"), std::string::npos);
    EXPECT_NE(error_of("k^65").find("64"), std::string::npos);
    EXPECT_NE(error_of("k/(k+1)").find("1:2"), std::string::npos);
    EXPECT_THROW(parse(std::string(max_source_bytes + 1, 'k')), ParseError);
    EXPECT_THROW(parse(std::string(5000, '(') + "k" + std::string(5000, ')')), ParseError);
}

TEST(Parse, Precedence) {
    EXPECT_EQ(at("-k^2", 16, 3), std::complex<double>(-9));
    EXPECT_EQ(at("6/2^2", 16, 0), std::complex<double>(1.5));
    EXPECT_EQ(at("8/2/2", 16, 0), std::complex<double>(2));
    EXPECT_EQ(at("2-3-4", 16, 0), std::complex<double>(-5));
    EXPECT_EQ(at("2*k^2+1", 16, 3), std::complex<double>(19));
    EXPECT_EQ(at("i^2", 16, 0), std::complex<double>(-1));
    EXPECT_EQ(at("p2 - p1", 16, 0, {4, 9}), std::complex<double>(5));
}

TEST(Parse, StructuralEqualityIgnoresPositions) {
    EXPECT_EQ(parse("k+1"), parse(" k +  1"));
    EXPECT_FALSE(parse("k+1") == parse("1+k"));
}

TEST(Normalize, Examples) {
    EXPECT_EQ(print_canonical(parse("k + k")), "2*k");
    EXPECT_EQ(print_canonical(parse("(k)")), "k");
    EXPECT_EQ(print_canonical(parse("exp(-pi*i*(k^2)/n)")), "exp(-i*pi*k^2/n)");
    EXPECT_EQ(print_canonical(parse("k - k")), "0");
    EXPECT_EQ(normalize(parse("(k+1)^2")), normalize(parse("k^2 + 2*k + 1")));
}

TEST(Classify, Examples) {
    auto g = classify(parse("exp(-pi*i*(k^2+p1^2)/n)"));
    ASSERT_EQ(g.tag, ClassifiedPredicate::Tag::gaussian);
    EXPECT_EQ(g.eta(), std::complex<double>(1));
    EXPECT_EQ(g.form, QuadraticForm(2, {1, 0, 0, 1}));

    auto p = classify(parse("exp(-pi*i*7*(k^2 + k^4/100)/n)"));
    ASSERT_EQ(p.tag, ClassifiedPredicate::Tag::perturbed);
    EXPECT_EQ(p.H, 7);
    EXPECT_EQ(p.L, 100);

    EXPECT_EQ(classify(parse("exp(-k^2)")).tag, ClassifiedPredicate::Tag::sampled);
    EXPECT_STREQ(tag_name(ClassifiedPredicate::Tag::perturbed), "perturbed");
}

TEST(Classify, EvaluationExample) {
    FiniteUniverse u(12, 1);
    auto c = classify(parse("exp(-pi*i*(3/2*k^2 + 2*k*p1)/n)"));
    std::int64_t pt[] = {2, 3};
    EXPECT_LE(std::abs(evaluate(c, pt, u) - std::complex<double>(0, 1)), 1e-15);
    std::int64_t out[] = {6, 0};
    EXPECT_THROW(evaluate(c, out, u), PreconditionError);
    EXPECT_NO_THROW(evaluate(c, out, u, PointRange::closure));
    std::int64_t short_pt[] = {1};
    EXPECT_THROW(evaluate(c, short_pt, u), PreconditionError);
}

TEST(Corpus, ParsesClassifiesRoundTrips) {
    auto corpus = load_corpus(LATTICEQ_TEST_DATA "/dsl_corpus.txt");
    ASSERT_EQ(corpus.size(), 30u);
    for (const auto& entry : corpus) {
        SCOPED_TRACE(entry.expr);
        Expr e = parse(entry.expr);
        ClassifiedPredicate c = classify(e);
        EXPECT_EQ(tag_name(c.tag), entry.tag);
        std::string canon = print_canonical(e);
        Expr again = parse(canon);
        EXPECT_EQ(normalize(again), normalize(e));
        EXPECT_EQ(print_canonical(again), canon);
        EXPECT_EQ(parse(print_canonical(again)), again);
        EXPECT_EQ(classify(again).tag, c.tag);
    }
}

TEST(Corpus, EvaluationAgreement) {
    auto corpus = load_corpus(LATTICEQ_TEST_DATA "/dsl_corpus.txt");
    FiniteUniverse u(1024, 1);
    for (const auto& entry : corpus) {
        ClassifiedPredicate c = classify(parse(entry.expr));
        if (c.tag == ClassifiedPredicate::Tag::sampled) continue;
        for (int t = 0; t < 100; ++t) {
            auto pt = gen::point(c.variables.size(), u.n());
            Env env = make_env(c, pt, u);
            auto direct = evaluate(c.source, env);
            auto core = evaluate(c, pt, u);
            double tol = 1e-10;
            if (c.tag == ClassifiedPredicate::Tag::perturbed) {
                // the AST rounds a phase of size pi H (k^2 + k^4/L)/n before exp
                long double k = static_cast<long double>(pt[0]);
                long double arg = 3.2L * c.H * (k * k + k * k * k * k / c.L) / u.n();
                tol += 64 * std::numeric_limits<long double>::epsilon() * static_cast<double>(arg);
            }
            ASSERT_LE(std::abs(direct - core), tol) << entry.expr;
        }
    }
}

TEST(Properties, ReassociationInvariance) {
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<std::pair<std::pair<int, int>, Rational>> terms;
        for (int i = 0; i < 3; ++i)
            for (int j = i; j < 3; ++j) {
                Rational c = gen::rational();
                if (c != 0) terms.push_back({{i, j}, c});
            }
        if (terms.empty()) continue;
        bool has_k = std::any_of(terms.begin(), terms.end(), [](auto& t) { return t.first.first == 0; });
        if (!has_k) terms.push_back({{0, 0}, 1});
        std::string a = "exp(-pi*i*(" + render_form(terms) + ")/n)";
        std::string b = "exp(-i*(" + render_form(terms) + ")*pi/n)";
        ClassifiedPredicate ca = classify(parse(a)), cb = classify(parse(b));
        ASSERT_EQ(ca.tag, ClassifiedPredicate::Tag::gaussian) << a;
        ASSERT_EQ(cb.tag, ca.tag) << b;
        ASSERT_EQ(cb.form, ca.form) << a << " vs " << b;
        ASSERT_EQ(cb.variables, ca.variables);
        ASSERT_EQ(normalize(parse(a)), normalize(parse(b)));
    }
}

TEST(Properties, GaussianEvaluationMatchesCore) {
    FiniteUniverse u(4096, 1);
    for (int trial = 0; trial < 200; ++trial) {
        QuadraticForm q = gen::form(2);
        std::vector<std::pair<std::pair<int, int>, Rational>> terms;
        terms.push_back({{0, 0}, q.coeff(0, 0)});
        terms.push_back({{0, 1}, 2 * q.coeff(0, 1)});
        terms.push_back({{1, 1}, q.coeff(1, 1)});
        std::string text;
        for (const auto& [ij, c] : terms) {
            text += (text.empty() ? "" : "+") + std::string("(") + to_string(c) + ")*" + var_names[ij.first] + "*" +
                    var_names[ij.second];
        }
        text = "exp(-pi*i*(" + text + ")/n)";
        ClassifiedPredicate c = classify(parse(text));
        if (c.tag != ClassifiedPredicate::Tag::gaussian) continue;  // all terms cancelled to a lower arity
        if (c.variables.size() != 2) continue;
        GaussianPredicate g{1.0, q};
        auto pt = gen::point(2, u.n());
        EXPECT_LE(std::abs(evaluate(c, pt, u) - eval_gaussian(g, pt, u)), 1e-10) << text;
    }
}
