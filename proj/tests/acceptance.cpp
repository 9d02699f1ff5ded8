// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance <id>|all [--out DIR]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <random>
#include <sstream>

#include "dsl_corpus.hpp"
#include "latticeq/cli/cli.hpp"
#include "latticeq/dsl/classify.hpp"
#include "latticeq/dsl/normal_form.hpp"
#include "latticeq/quantifier/quantifier.hpp"
#include "latticeq/verify/checks.hpp"

using namespace latticeq;
using verify::Json;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::filesystem::path out_dir = "acceptance_out";

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<Rational> gauss_as = {1, 2, Rational(1, 2), Rational(3, 2), 4};
const std::int64_t gauss_n = 1441440;

Outcome gauss_inside() {
    auto t0 = std::chrono::steady_clock::now();
    FiniteUniverse u(gauss_n, 1);
    double worst = 0;
    bool ok = true;
    for (const auto& a : gauss_as) {
        LinearForm b{{1}};
        auto s = verify::gauss_samples(a, b, 5);
        auto r = verify::gauss_lemma_check(a, b, s.inside, u, {}, {4});
        ok = ok && r.pass && s.inside.size() == 5;
        for (const auto& row : r.rows) worst = std::max(worst, row["residual"].get<double>());
    }
    double t = seconds_since(t0);
    return {ok && worst <= 1e-8 && t < 60, "worst residual " + fmt(worst) + " (tol 1e-8), " + fmt(t) + " s"};
}

Outcome gauss_outside() {
    FiniteUniverse u(gauss_n, 1);
    double worst = 0;
    std::size_t count = 0;
    for (const auto& a : gauss_as) {
        LinearForm b{{1}};
        auto s = verify::gauss_samples(a, b, 5);
        if (s.outside.empty()) continue;  // A = 1: every p is d-dense
        auto r = verify::gauss_lemma_check(a, b, s.outside, u, {}, {4});
        for (const auto& row : r.rows) worst = std::max(worst, row["residual"].get<double>());
        count += s.outside.size();
    }
    return {worst <= 1e-10, "worst |E^glob| outside X_a " + fmt(worst) + " over " + std::to_string(count) +
                                " samples (tol 1e-10)"};
}

Outcome delta() {
    FiniteUniverse u(10000, 1);
    double worst = 0;
    for (std::int64_t b : {1, 2, 5}) {
        const std::int64_t cell = 10000 / (2 * b);
        for (std::int64_t p : {std::int64_t{0}, std::int64_t{1}, std::int64_t{-3}, std::int64_t{17}, cell - 1, -cell + 1}) {
            auto r = quant::discrete_delta_sum(b, p, u);
            worst = std::max(worst, std::abs(r.sum - r.predicted));
        }
    }
    return {worst <= 1e-10, "worst residual " + fmt(worst) + " over both branches (tol 1e-10)"};
}

Outcome converge() {
    auto t0 = std::chrono::steady_clock::now();
    const std::vector<std::int64_t> ns{10000, 40000, 160000, 640000, 2560000};
    bool ok = true;
    std::string detail;
    for (std::string id : {"gaussian-window", "gaussian-norm"}) {
        auto c = verify::convergence_sweep(verify::named_quantity(id), ns, 1, {4});
        auto r = verify::to_report(c);
        ok = ok && r.pass;
        detail += id + " alpha=" + fmt(c.alpha) + (r.params["bound_dominated"].get<bool>() ? " dominated; " : " NOT dominated; ");
    }
    double t = seconds_since(t0);
    return {ok && t < 120, detail + fmt(t) + " s"};
}

Outcome local_global() {
    auto t0 = std::chrono::steady_clock::now();
    FiniteUniverse u(1000000, 1);
    std::filesystem::create_directories(out_dir);
    bool ok = true;
    std::string detail;
    for (std::int64_t a : {1, 4}) {
        std::int64_t p[] = {0};
        auto r = verify::local_global_check(a, LinearForm{{0}}, p, u, {}, {4});
        ok = ok && r.pass;
        std::ofstream(out_dir / ("local_global_a" + std::to_string(a) + ".csv")) << verify::emit_csv(r);
        detail += "a=" + std::to_string(a) + " worst gap/bound " + fmt(r.params["worst_gap_over_bound"].get<double>()) + "; ";
    }
    double t = seconds_since(t0);
    return {ok && t < 60, detail + "tail-gap CSV in " + out_dir.string() + ", " + fmt(t) + " s"};
}

Outcome weyl() {
    auto r = verify::weyl_check({16, 256, 4096}, 1, 100);
    double comm = 0, iso = 0;
    for (const auto& row : r.rows) {
        comm = std::max(comm, row["commutation_defect"].get<double>());
        for (const char* k : {"u_isometry", "v_isometry", "f_isometry"}) iso = std::max(iso, row[k].get<double>());
    }
    return {r.pass, "commutation " + fmt(comm) + " (tol 1e-12), isometry " + fmt(iso) + " (tol 1e-9)"};
}

Outcome fourier() {
    auto r = verify::fourier_check({16, 256, 4096}, 1, 100);
    double inv = 0, par = 0, df = 0;
    for (const auto& row : r.rows) {
        inv = std::max(inv, row["inverse_defect"].get<double>());
        par = std::max(par, row["parseval_defect"].get<double>());
        if (row["n"] == 4096) df = row["dense_fast_defect"].get<double>();
    }
    return {r.pass, "inverse " + fmt(inv) + ", parseval " + fmt(par) + ", dense/fast at 4096 " + fmt(df)};
}

Outcome propagator() {
    auto r = verify::propagator_check(40000, 1, 1.0, 0, 0.02);
    return {r.pass, "worst relative modulus error " + fmt(r.params["worst_rel_err"].get<double>()) + " (tol 0.02)"};
}

Outcome anharmonic_ratio() {
    const std::int64_t H = 10000;
    FiniteUniverse u(4 * H, 1);
    bool ok = true;
    std::string detail;
    for (double lh : {0.005, 0.01, 0.02}) {
        auto a = verify::anharmonic_check(H, verify::auto_L(u.n(), H, lh), u);
        auto r = verify::to_report(a);
        ok = ok && r.pass;
        detail += "lh=" + fmt(lh) + " residual " + fmt(a.residual) + " (tol " + fmt(5 * a.lambda * a.h * a.lambda * a.h) + "); ";
    }
    return {ok, detail};
}

Outcome anharmonic_scaling() {
    auto grid = verify::standard_grid(2, {10000, 20000, 40000}, {0.005, 0.01, 0.02});
    auto r = verify::tphi_scaling_check(grid, 3.0);
    return {r.pass, "max/min of |T_phi|/(lh (n/H)^2.5) = " + fmt(r.params["spread"].get<double>()) + " (tol 3)"};
}

Outcome dsl_corpus() {
    auto corpus = load_corpus(LATTICEQ_TEST_DATA "/dsl_corpus.txt");
    int good = 0;
    double worst = 0;
    FiniteUniverse u(1024, 1);
    std::mt19937_64 rng(9);
    for (const auto& e : corpus) {
        try {
            auto ast = dsl::parse(e.expr);
            auto c = dsl::classify(ast);
            auto again = dsl::parse(dsl::print_canonical(ast));
            bool rt = dsl::normalize(again) == dsl::normalize(ast) &&
                      dsl::print_canonical(again) == dsl::print_canonical(ast);
            if (rt && e.tag == dsl::tag_name(c.tag)) ++good;
            if (c.tag == dsl::ClassifiedPredicate::Tag::gaussian) {
                std::uniform_int_distribution<std::int64_t> d(u.min_point(), u.max_point());
                for (int t = 0; t < 100; ++t) {
                    std::vector<std::int64_t> pt(c.variables.size());
                    for (auto& v : pt) v = d(rng);
                    auto direct = dsl::evaluate(c.source, dsl::make_env(c, pt, u));
                    worst = std::max(worst, std::abs(direct - dsl::evaluate(c, pt, u)));
                }
            }
        } catch (const std::exception&) {
        }
    }
    return {good == 30 && corpus.size() == 30 && worst <= 1e-10,
            std::to_string(good) + "/" + std::to_string(corpus.size()) + " round-trip; worst Gaussian evaluation gap " +
                fmt(worst) + " (tol 1e-10)"};
}

Outcome reproducibility() {
    std::string base;
    bool ok = true;
    for (std::string t : {"1", "2", "8"}) {
        std::vector<std::string> args{"verify", "converge", "--quantity", "gaussian-window", "--n", "1e4..6.4e5",
                                      "--threads", t};
        std::ostringstream a, b, err;
        cli::run(args, a, err);
        cli::run(args, b, err);
        ok = ok && a.str() == b.str() && !a.str().empty();
        Json j = Json::parse(a.str());
        j["params"]["run_config"].erase("threads");
        if (base.empty()) base = j.dump();
        ok = ok && j.dump() == base;
    }
    return {ok, "verify converge repeated at 1, 2, 8 threads: byte-identical" + std::string(ok ? "" : " NOT")};
}

struct Criterion {
    std::string id;
    std::string name;
    std::function<Outcome()> run;
};

const std::vector<Criterion> criteria = {
    {"1a", "Gauss summation on X_a", gauss_inside},
    {"1b", "Gauss summation vanishes off X_a", gauss_outside},
    {"2", "discrete delta", delta},
    {"3", "finite to continuum convergence", converge},
    {"4", "local equals global", local_global},
    {"5", "Weyl relations", weyl},
    {"6", "Fourier duality", fourier},
    {"7", "free propagator", propagator},
    {"8a", "anharmonic first-order ratio", anharmonic_ratio},
    {"8b", "T_phi scaling", anharmonic_scaling},
    {"9", "DSL corpus", dsl_corpus},
    {"10", "reproducibility", reproducibility},
};

}  // namespace

int main(int argc, char** argv) {
    std::string which = argc > 1 ? argv[1] : "all";
    for (int i = 2; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--out") out_dir = argv[i + 1];
    }
    bool all_ok = true, found = false;
    for (const auto& c : criteria) {
        if (which != "all" && which != c.id) continue;
        found = true;
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        all_ok = all_ok && o.pass;
        std::cout << (o.pass ? "PASS " : "FAIL ") << c.id << " " << c.name << ": " << o.detail << std::endl;
    }
    if (!found) {
        std::cerr << "unknown criterion '" << which << "'\n";
        return 2;
    }
    return all_ok ? 0 : 1;
}
