#include "latticeq/cli/cli.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>

#include "latticeq/core/errors.hpp"
#include "latticeq/dsl/classify.hpp"
#include "latticeq/operators/operators.hpp"
#include "latticeq/quantifier/quantifier.hpp"
#include "latticeq/sign_ledger.hpp"
#include "latticeq/verify/checks.hpp"

namespace latticeq::cli {

using Json = nlohmann::ordered_json;

std::int64_t parse_count(const std::string& text) {
    std::string s = text;
    std::int64_t exp10 = 0;
    auto e = s.find_first_of("eE");
    if (e != std::string::npos) {
        try {
            std::size_t used = 0;
            exp10 = std::stoll(s.substr(e + 1), &used);
            if (used != s.size() - e - 1) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw PreconditionError("bad integer '" + text + "'");
        }
        s = s.substr(0, e);
    }
    if (exp10 < 0 || exp10 > 18) throw PreconditionError("exponent out of range in '" + text + "'");
    Rational r;
    try {
        r = parse_rational(s);
    } catch (const std::exception&) {
        throw PreconditionError("bad integer '" + text + "'");
    }
    for (std::int64_t j = 0; j < exp10; ++j) r *= 10;
    if (!is_integer(r)) throw PreconditionError("'" + text + "' is not an integer");
    return to_int64(numer(r));
}

std::vector<std::int64_t> parse_n_list(const std::string& text, std::int64_t factor) {
    std::vector<std::int64_t> out;
    auto dots = text.find("..");
    if (dots != std::string::npos) {
        if (factor < 2) throw PreconditionError("range factor must be at least 2");
        std::int64_t lo = parse_count(text.substr(0, dots));
        std::int64_t hi = parse_count(text.substr(dots + 2));
        if (lo < 1 || hi < lo) throw PreconditionError("bad range '" + text + "'");
        for (std::int64_t v = lo; v <= hi; v *= factor) {
            out.push_back(v);
            if (v > hi / factor) break;
        }
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (!item.empty()) out.push_back(parse_count(item));
    }
    if (out.empty()) throw PreconditionError("empty n list");
    return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::vector<std::pair<std::string, std::string>> kv;
    std::string line;
    std::size_t lineno = 0;
    auto trim = [](std::string s) {
        auto b = s.find_first_not_of(" \t\r");
        auto e = s.find_last_not_of(" \t\r");
        return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
    };
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ParseError("expected key=value in " + path, lineno, 1);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty()) throw ParseError("empty key in " + path, lineno, 1);
        kv.emplace_back(key, value);
    }
    return kv;
}

Json RunConfig::to_json() const {
    Json j;
    j["command"] = command;
    j["universe"] = {{"n", n}, {"h_n", h_n}};
    j["params"] = params;
    j["tolerances"] = tolerances;
    j["sign_ledger_version"] = ledger::version;
    j["output"] = {{"out", out_dir}, {"format", format}};
    j["threads"] = threads;
    j["term_ceiling"] = term_ceiling;
    return j;
}

namespace {

struct Options {
    std::string n;
    std::int64_t hn = 1;
    int threads = 1;
    std::string config;
    std::string out;
    std::string format = "json";
    double term_ceiling = 5e8;

    // eval / quantify
    std::string expr;
    std::vector<std::string> at;
    std::vector<double> window;
    bool local = false;
    bool sequence = false;
    bool global = false;
    bool universe = false;
    std::string params;
    std::int64_t shift = 0;

    // verify
    std::string suite;
    std::string a = "1";
    std::string b = "1";
    std::string p = "0";
    int samples = 5;
    double c_tail = 2.0;
    std::int64_t m_min = 5;
    std::string quantity = "gaussian-window";
    std::int64_t factor = 4;
    double alpha_lo = 0.35;
    double alpha_hi = 0.65;
    int trials = 100;
    double t = 1.0;
    std::int64_t x0 = 0;
    double tol = 0.02;
    std::int64_t H = 10000;
    std::string L = "auto";
    double lambda_h = 0.01;
    std::int64_t q = 2;
    bool grid = false;
    std::uint64_t seed = 1;

    // plotdata
    std::string report;
    std::string columns;
};

const std::set<std::string> flag_keys = {"local", "sequence", "global", "universe", "grid"};

std::vector<std::int64_t> parse_int_tuple(const std::string& text) {
    std::vector<std::int64_t> v;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            v.push_back(std::stoll(item, &used));
            if (used != item.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
            throw PreconditionError("bad lattice point '" + item + "'");
        }
    }
    return v;
}

LinearForm parse_linear(const std::string& text) {
    LinearForm b;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) b.coeffs.push_back(parse_rational(item));
    if (b.coeffs.empty()) throw PreconditionError("empty linear form");
    return b;
}

Json ints(const std::vector<std::int64_t>& v) {
    Json j = Json::array();
    for (auto x : v) j.push_back(x);
    return j;
}

class Runner {
public:
    Runner(Options o, std::ostream& out) : o_(std::move(o)), out_(out) {
        cfg_.h_n = o_.hn;
        cfg_.threads = std::max(1, o_.threads);
        cfg_.out_dir = o_.out;
        cfg_.format = o_.format;
        cfg_.term_ceiling = o_.term_ceiling;
        exec_ = quant::Exec{cfg_.threads};
    }

    int eval();
    int quantify();
    int verify();
    int plotdata();
    int universe_info();

private:
    FiniteUniverse universe(std::int64_t fallback = 0) {
        if (o_.n.empty() && fallback == 0) throw PreconditionError("--n is required");
        cfg_.n = o_.n.empty() ? fallback : parse_count(o_.n);
        return FiniteUniverse(cfg_.n, cfg_.h_n);
    }

    void guard(double terms) const {
        if (terms > cfg_.term_ceiling) {
            std::ostringstream s;
            s << "job needs about " << terms << " terms, above the ceiling " << cfg_.term_ceiling
              << " (raise --term-ceiling to run it)";
            throw PreconditionError(s.str());
        }
    }

    void emit(const Json& j) {
        out_ << j.dump(2) << '\n';
    }

    int emit_report(verify::VerificationReport r) {
        r.params["run_config"] = cfg_.to_json();
        const std::string json = verify::emit_json(r);
        const std::string csv = verify::emit_csv(r);
        out_ << (cfg_.format == "csv" ? csv : json);
        if (!cfg_.out_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cfg_.out_dir, ec);
            write_file(std::filesystem::path(cfg_.out_dir) / (r.kind + ".json"), json);
            write_file(std::filesystem::path(cfg_.out_dir) / (r.kind + ".csv"), csv);
        }
        return r.pass ? ok : check_failed;
    }

    static void write_file(const std::filesystem::path& p, const std::string& body) {
        std::ofstream f(p, std::ios::binary);
        if (!f) throw IoError("cannot write '" + p.string() + "'");
        f << body;
        if (!f) throw IoError("write failed for '" + p.string() + "'");
    }

    int verify_gauss();
    int verify_local_global();
    int verify_converge();
    int verify_fourier();
    int verify_weyl();
    int verify_propagator();
    int verify_anharmonic();

    Options o_;
    std::ostream& out_;
    RunConfig cfg_;
    quant::Exec exec_;
};

int Runner::universe_info() {
    cfg_.command = "universe-info";
    FiniteUniverse u = universe();
    Json j;
    j["n"] = u.n();
    j["h_n"] = u.h_n();
    j["spacing"] = u.spacing();
    j["nu"] = u.nu();
    j["min_point"] = u.min_point();
    j["max_point"] = u.max_point();
    j["max_local_window"] = max_local_window(u);
    j["window_diameter_bound"] = window_diameter_bound(u);
    j["divisibility_bound"] = divisibility_bound(u.n());
    j["run_config"] = cfg_.to_json();
    emit(j);
    return ok;
}

int Runner::eval() {
    cfg_.command = "eval";
    FiniteUniverse u = universe();
    dsl::Expr e = dsl::parse(o_.expr);
    dsl::ClassifiedPredicate c = dsl::classify(e);
    cfg_.params["expr"] = o_.expr;
    Json points = Json::array();
    std::vector<std::vector<std::int64_t>> at;
    for (const auto& s : o_.at) at.push_back(parse_int_tuple(s));
    if (at.empty() && c.variables.empty()) at.emplace_back();
    for (const auto& pt : at) {
        auto v = dsl::evaluate(c, pt, u, dsl::PointRange::closure);
        points.push_back({{"at", ints(pt)}, {"value", verify::complex_json(v)}});
    }
    cfg_.params["at"] = o_.at;
    Json j;
    j["expr"] = o_.expr;
    j["canonical"] = dsl::print_canonical(e);
    j["tag"] = dsl::tag_name(c.tag);
    j["variables"] = c.variables;
    j["points"] = std::move(points);
    j["run_config"] = cfg_.to_json();
    emit(j);
    return ok;
}

int Runner::quantify() {
    cfg_.command = "quantify";
    FiniteUniverse u = universe();
    dsl::Expr e = dsl::parse(o_.expr);
    dsl::ClassifiedPredicate c = dsl::classify(e);
    const int modes = (!o_.window.empty()) + o_.local + o_.global + o_.universe;
    if (modes != 1) throw PreconditionError("choose exactly one of --window m1 m2, --local, --global, --universe");
    std::vector<std::int64_t> params = o_.params.empty() ? std::vector<std::int64_t>{} : parse_int_tuple(o_.params);
    cfg_.params["expr"] = o_.expr;
    cfg_.params["params"] = ints(params);

    // Parameters are every variable except k, in order.
    std::vector<std::string> vars = c.variables;
    const bool has_k = !vars.empty() && vars[0] == "k";
    const std::size_t expected = has_k ? vars.size() - 1 : vars.size();
    if (params.size() != expected) {
        throw PreconditionError("expression needs " + std::to_string(expected) + " parameter value(s) via --params, got " +
                                std::to_string(params.size()));
    }
    auto full_point = [&](std::int64_t k) {
        std::vector<std::int64_t> pt;
        if (has_k) pt.push_back(k);
        pt.insert(pt.end(), params.begin(), params.end());
        return pt;
    };
    for (auto v : params) {
        if (!u.contains(v)) throw PreconditionError("parameter " + std::to_string(v) + " outside U(n)");
    }

    // Gaussian with k prepended when it does not occur.
    std::optional<GaussianPredicate> gauss;
    if (c.tag == dsl::ClassifiedPredicate::Tag::gaussian) {
        GaussianPredicate g = c.gaussian();
        if (!has_k) {
            const std::size_t m = g.form.arity() + 1;
            std::vector<Rational> mat(m * m, Rational(0));
            for (std::size_t i = 1; i < m; ++i)
                for (std::size_t j = 1; j < m; ++j) mat[i * m + j] = g.form.coeff(i - 1, j - 1);
            g.form = QuadraticForm(m, std::move(mat));
        }
        gauss = g;
    }
    std::optional<BoundGaussian> bound;
    if (gauss) bound = bind_gaussian(*gauss, 0, params, u);

    quant::LatticeFunction f;
    if (c.tag == dsl::ClassifiedPredicate::Tag::perturbed) {
        const Rational coeffs[] = {0, 0, Rational(c.H), 0, Rational(c.H, c.L)};
        PolyPhase phase(coeffs, u.n());
        f = [phase](std::int64_t k) { return phase.at(k); };
    } else if (!bound) {
        dsl::Env base = dsl::make_env(c, full_point(0), u);
        f = [&c, base](std::int64_t k) {
            dsl::Env env = base;
            env.k = k;
            return dsl::evaluate(c.source, env);
        };
    }

    Json result;
    const double s = u.spacing();
    if (!o_.window.empty()) {
        if (o_.window.size() != 2) throw PreconditionError("--window takes m1 m2");
        quant::Window w(o_.window[0], o_.window[1]);
        cfg_.params["mode"] = "window";
        cfg_.params["window"] = {w.m1, w.m2};
        guard(static_cast<double>(quant::lattice_range(w, u).count()));
        auto r = bound ? quant::window_quantify(*bound, w, u, exec_) : quant::window_quantify(f, w, u, exec_);
        quant::to_json(result, r);
    } else if (o_.universe) {
        cfg_.params["mode"] = "universe";
        guard(static_cast<double>(u.n()));
        if (bound) {
            BoundGaussian g = *bound;
            f = [g](std::int64_t k) { return g.at(k); };
        }
        quant::to_json(result, quant::universe_quantify(f, u, exec_));
    } else if (o_.local) {
        cfg_.params["mode"] = o_.sequence ? "local-sequence" : "local";
        const double m = static_cast<double>(max_local_window(u));
        guard(o_.sequence ? m * (m + 1) / s : 2 * m / s);
        auto mode = o_.sequence ? quant::LocalMode::sequence : quant::LocalMode::fixed_max;
        auto rs = bound ? quant::local_quantify(*bound, u, mode, exec_) : quant::local_quantify(f, u, mode, exec_);
        if (o_.sequence) {
            result = Json::array();
            for (const auto& r : rs) {
                Json j;
                quant::to_json(j, r);
                result.push_back(j);
            }
        } else {
            quant::to_json(result, rs.front());
        }
    } else {
        cfg_.params["mode"] = "global";
        cfg_.params["shift"] = o_.shift;
        quant::QuantifierResult r;
        if (bound) {
            quant::GlobalRange range = quant::global_range(bound->a, bound->b_form, u);
            guard(2.0 * static_cast<double>(range.half));
            r = quant::global_quantify(*bound, u, exec_, o_.shift);
        } else if (c.tag == dsl::ClassifiedPredicate::Tag::perturbed) {
            PerturbedGaussianPredicate pred = c.perturbed(u);
            guard(2.0 * static_cast<double>(pred.half_period()));
            r = quant::global_quantify(pred, u, exec_);
        } else {
            throw PreconditionError("the global quantifier needs a Gaussian or perturbed Gaussian predicate; '" +
                                    o_.expr + "' is sampled");
        }
        quant::to_json(result, r);
    }
    Json j;
    j["expr"] = o_.expr;
    j["tag"] = dsl::tag_name(c.tag);
    j["result"] = std::move(result);
    j["run_config"] = cfg_.to_json();
    emit(j);
    return ok;
}

int Runner::verify() {
    cfg_.command = "verify " + o_.suite;
    if (o_.suite == "gauss") return verify_gauss();
    if (o_.suite == "local-global") return verify_local_global();
    if (o_.suite == "converge") return verify_converge();
    if (o_.suite == "fourier") return verify_fourier();
    if (o_.suite == "weyl") return verify_weyl();
    if (o_.suite == "propagator") return verify_propagator();
    if (o_.suite == "anharmonic") return verify_anharmonic();
    throw PreconditionError("unknown suite '" + o_.suite + "'");
}

int Runner::verify_gauss() {
    FiniteUniverse u = universe(1441440);
    Rational a = parse_rational(o_.a);
    LinearForm b = parse_linear(o_.b);
    if (o_.samples < 0) throw PreconditionError("--samples must be non-negative");
    cfg_.params["a"] = o_.a;
    cfg_.params["b"] = o_.b;
    cfg_.params["samples"] = o_.samples;
    verify::GaussTolerances tol;
    cfg_.tolerances["closed_form"] = tol.closed_form;
    cfg_.tolerances["outside"] = tol.outside;
    quant::GlobalRange range = quant::global_range(a, b, u);
    std::vector<std::vector<std::int64_t>> pts;
    if (b.arity() == 1) {
        verify::SampleSet s = verify::gauss_samples(a, b, static_cast<std::size_t>(o_.samples));
        pts = s.inside;
        pts.insert(pts.end(), s.outside.begin(), s.outside.end());
    } else {
        pts.push_back(std::vector<std::int64_t>(b.arity(), 0));
    }
    guard(2.0 * static_cast<double>(range.half) * static_cast<double>(pts.size()));
    return emit_report(verify::gauss_lemma_check(a, b, pts, u, tol, exec_));
}

int Runner::verify_local_global() {
    FiniteUniverse u = universe(1000000);
    Rational a = parse_rational(o_.a);
    LinearForm b = parse_linear(o_.b);
    std::vector<std::int64_t> p = parse_int_tuple(o_.p);
    cfg_.params["a"] = o_.a;
    cfg_.params["b"] = o_.b;
    cfg_.params["p"] = ints(p);
    cfg_.tolerances["c_tail"] = o_.c_tail;
    cfg_.tolerances["m_min"] = o_.m_min;
    const double m = static_cast<double>(max_local_window(u));
    guard(m * (m + 1) / u.spacing() + 2.0 * static_cast<double>(u.n()));
    verify::LocalGlobalOptions opt{o_.c_tail, o_.m_min};
    return emit_report(verify::local_global_check(a, b, p, u, opt, exec_));
}

int Runner::verify_converge() {
    std::vector<std::int64_t> ns = parse_n_list(o_.n.empty() ? "1e4..2.56e6" : o_.n, o_.factor);
    cfg_.n = ns.back();
    cfg_.params["quantity"] = o_.quantity;
    cfg_.params["n_list"] = ints(ns);
    cfg_.tolerances["alpha_lo"] = o_.alpha_lo;
    cfg_.tolerances["alpha_hi"] = o_.alpha_hi;
    verify::Quantity q = verify::named_quantity(o_.quantity);
    double terms = 0;
    for (auto n : ns) terms += 8.0 / std::sqrt(2.0 * std::numbers::pi / static_cast<double>(n));
    guard(terms);
    auto rep = verify::convergence_sweep(q, ns, cfg_.h_n, exec_);
    return emit_report(verify::to_report(rep, {o_.alpha_lo, o_.alpha_hi}));
}

int Runner::verify_fourier() {
    std::vector<std::int64_t> ns = parse_n_list(o_.n.empty() ? "16,256,4096" : o_.n, o_.factor);
    cfg_.n = ns.back();
    cfg_.params["n_list"] = ints(ns);
    cfg_.params["trials"] = o_.trials;
    cfg_.params["seed"] = o_.seed;
    return emit_report(verify::fourier_check(ns, cfg_.h_n, o_.trials, {}, o_.seed));
}

int Runner::verify_weyl() {
    std::vector<std::int64_t> ns = parse_n_list(o_.n.empty() ? "16,256,4096" : o_.n, o_.factor);
    cfg_.n = ns.back();
    cfg_.params["n_list"] = ints(ns);
    cfg_.params["trials"] = o_.trials;
    cfg_.params["seed"] = o_.seed;
    return emit_report(verify::weyl_check(ns, cfg_.h_n, o_.trials, {}, o_.seed));
}

int Runner::verify_propagator() {
    FiniteUniverse u = universe(40000);
    cfg_.params["t"] = o_.t;
    cfg_.params["x0"] = o_.x0;
    cfg_.tolerances["relative"] = o_.tol;
    return emit_report(verify::propagator_check(u.n(), u.h_n(), o_.t, o_.x0, o_.tol));
}

int Runner::verify_anharmonic() {
    if (o_.H < 1 || o_.q < 1) throw PreconditionError("--H and --q must be positive");
    cfg_.params["H"] = o_.H;
    cfg_.params["L"] = o_.L;
    cfg_.params["lambda_h"] = o_.lambda_h;
    cfg_.params["q"] = o_.q;
    cfg_.params["grid"] = o_.grid;
    if (o_.grid) {
        cfg_.n = 2 * o_.q * o_.H;
        auto grid = verify::standard_grid(o_.q, {o_.H, 2 * o_.H, 4 * o_.H}, {o_.lambda_h / 2, o_.lambda_h, 2 * o_.lambda_h});
        cfg_.tolerances["max_over_min"] = 3.0;
        return emit_report(verify::tphi_scaling_check(grid, 3.0, exec_));
    }
    FiniteUniverse u = universe(2 * o_.q * o_.H);
    std::int64_t L = o_.L == "auto" ? verify::auto_L(u.n(), o_.H, o_.lambda_h) : parse_count(o_.L);
    cfg_.params["L_effective"] = L;
    verify::AnharmonicOptions opt;
    cfg_.tolerances["factor"] = opt.tolerance_factor;
    cfg_.tolerances["lambda_h_max"] = opt.lambda_h_max;
    guard(3.0 * static_cast<double>(u.n()) / static_cast<double>(o_.H));
    return emit_report(verify::to_report(verify::anharmonic_check(o_.H, L, u, opt, exec_), opt));
}

int Runner::plotdata() {
    cfg_.command = "plotdata";
    std::ifstream in(o_.report, std::ios::binary);
    if (!in) throw IoError("cannot read report '" + o_.report + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    verify::VerificationReport r = verify::parse_report(buf.str());
    std::string cols = o_.columns;
    if (cols.empty()) {
        if (r.kind == "converge") cols = "n,abs_err";
        else if (r.kind == "local-global") cols = "m,gap";
        else if (r.kind == "gauss") cols = "p,residual";
        else if (r.kind == "propagator") cols = "x_minus_x0,modulus";
        else if (r.kind == "anharmonic-scaling") cols = "lambda_h,normalized";
        else if (r.kind == "weyl") cols = "n,commutation_defect";
        else if (r.kind == "fourier") cols = "n,inverse_defect";
    }
    // Select columns from the CSV mirror.
    std::stringstream csv(verify::emit_csv(r));
    std::string header;
    std::getline(csv, header);
    std::vector<std::string> names;
    {
        std::stringstream hs(header);
        std::string h;
        while (std::getline(hs, h, ',')) names.push_back(h);
    }
    std::vector<std::size_t> pick;
    if (cols.empty()) {
        for (std::size_t i = 0; i < names.size() && i < 2; ++i) pick.push_back(i);
    } else {
        std::stringstream cs(cols);
        std::string c;
        while (std::getline(cs, c, ',')) {
            auto it = std::find(names.begin(), names.end(), c);
            if (it == names.end()) throw PreconditionError("report has no column '" + c + "'");
            pick.push_back(static_cast<std::size_t>(it - names.begin()));
        }
    }
    std::ostringstream body;
    for (std::size_t i = 0; i < pick.size(); ++i) body << (i ? "," : "") << names[pick[i]];
    body << '\n';
    std::string line;
    while (std::getline(csv, line)) {
        std::vector<std::string> cells;
        std::stringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (line.back() == ',') cells.emplace_back();
        for (std::size_t i = 0; i < pick.size(); ++i) body << (i ? "," : "") << (pick[i] < cells.size() ? cells[pick[i]] : "");
        body << '\n';
    }
    if (!o_.out.empty()) {
        std::filesystem::path p(o_.out);
        if (std::filesystem::is_directory(p)) p /= r.kind + "_plot.csv";
        write_file(p, body.str());
    } else {
        out_ << body.str();
    }
    return ok;
}

std::vector<std::string> inject_config(const std::vector<std::string>& args) {
    std::string path;
    std::set<std::string> given;
    for (std::size_t i = 0; i < args.size(); ++i) {
        const std::string& a = args[i];
        if (a.rfind("--", 0) != 0) continue;
        std::string key = a.substr(2);
        auto eq = key.find('=');
        std::string inline_value;
        if (eq != std::string::npos) {
            inline_value = key.substr(eq + 1);
            key = key.substr(0, eq);
        }
        given.insert(key);
        if (key == "config") path = eq != std::string::npos ? inline_value : (i + 1 < args.size() ? args[i + 1] : "");
    }
    if (path.empty()) return args;
    std::vector<std::string> out = args;
    for (const auto& [k, v] : read_config_file(path)) {
        if (given.count(k) || k == "config") continue;
        if (flag_keys.count(k)) {
            if (v == "true" || v == "1" || v == "yes") out.push_back("--" + k);
            continue;
        }
        if (k == "window") {
            std::stringstream ss(v);
            std::string m1, m2;
            ss >> m1 >> m2;
            out.push_back("--window=" + m1);
            out.push_back("--window=" + m2);
            continue;
        }
        out.push_back("--" + k + "=" + v);
    }
    return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    Options o;
    if (const char* env = std::getenv("LATTICEQ_THREADS")) {
        try {
            o.threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            err << "ignoring LATTICEQ_THREADS='" << env << "'\n";
        }
    }
    CLI::App app{"Finite lattice universes: exact-phase predicates, quantifiers, Weyl operators and checks", "latticeq"};
    app.fallthrough();
    app.require_subcommand(1);
    app.add_option("--n", o.n, "universe size n (also 1e6; converge/fourier/weyl take lists or lo..hi)");
    app.add_option("--hn", o.hn, "discrete Planck integer h_n")->capture_default_str();
    app.add_option("--threads", o.threads, "thread count (default from LATTICEQ_THREADS, else 1)");
    app.add_option("--config", o.config, "key=value config file; flags override it");
    app.add_option("--out", o.out, "output directory for report files");
    app.add_option("--format", o.format, "stdout format")->check(CLI::IsMember({"json", "csv"}))->capture_default_str();
    app.add_option("--term-ceiling", o.term_ceiling, "refuse jobs estimated above this many terms")->capture_default_str();

    auto* eval = app.add_subcommand("eval", "evaluate an expression at lattice points");
    eval->add_option("expr", o.expr, "predicate expression")->required();
    eval->add_option("--at", o.at, "point as k[,p1,...]; repeatable");

    auto* quantify = app.add_subcommand("quantify", "apply a quantifier in k");
    quantify->add_option("expr", o.expr, "predicate expression")->required();
    quantify->add_option("--window", o.window, "window m1 m2")->expected(2)->allow_extra_args(false);
    quantify->add_flag("--local", o.local, "local quantifier at m_max");
    quantify->add_flag("--sequence", o.sequence, "with --local: every m = 1..m_max");
    quantify->add_flag("--global", o.global, "global one-period quantifier");
    quantify->add_flag("--universe", o.universe, "sum over all of U(n)");
    quantify->add_option("--params", o.params, "values of p1,p2,...");
    quantify->add_option("--shift", o.shift, "translate the global range");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", o.suite, "suite")
        ->required()
        ->check(CLI::IsMember({"gauss", "local-global", "converge", "fourier", "weyl", "propagator", "anharmonic"}));
    verify->add_option("--a", o.a, "leading coefficient a")->capture_default_str();
    verify->add_option("--b", o.b, "linear form coefficients b1,b2,...")->capture_default_str();
    verify->add_option("--p", o.p, "parameter point p1,p2,...")->capture_default_str();
    verify->add_option("--samples", o.samples, "samples inside and outside X_a")->capture_default_str();
    verify->add_option("--c-tail", o.c_tail, "tail constant")->capture_default_str();
    verify->add_option("--m-min", o.m_min, "smallest window checked")->capture_default_str();
    verify->add_option("--quantity", o.quantity, "gaussian-window, gaussian-norm or constant")->capture_default_str();
    verify->add_option("--factor", o.factor, "ratio of a lo..hi range")->capture_default_str();
    verify->add_option("--alpha-lo", o.alpha_lo, "lowest accepted decay exponent")->capture_default_str();
    verify->add_option("--alpha-hi", o.alpha_hi, "highest accepted decay exponent")->capture_default_str();
    verify->add_option("--trials", o.trials, "random states per n")->capture_default_str();
    verify->add_option("--seed", o.seed, "random seed")->capture_default_str();
    verify->add_option("--t", o.t, "evolution time")->capture_default_str();
    verify->add_option("--x0", o.x0, "initial lattice point")->capture_default_str();
    verify->add_option("--tol", o.tol, "relative tolerance")->capture_default_str();
    verify->add_option("--H", o.H, "perturbed Gaussian H")->capture_default_str();
    verify->add_option("--L", o.L, "perturbed Gaussian L or 'auto'")->capture_default_str();
    verify->add_option("--lambda-h", o.lambda_h, "target lambda*h for L=auto")->capture_default_str();
    verify->add_option("--q", o.q, "n/(2H) when --n is absent")->capture_default_str();
    verify->add_flag("--grid", o.grid, "T_phi scaling over a 3x3 (H, L) grid");

    auto* plot = app.add_subcommand("plotdata", "extract CSV columns from a report");
    plot->add_option("report", o.report, "report JSON path")->required();
    plot->add_option("--columns", o.columns, "comma-separated column names");

    auto* info = app.add_subcommand("universe-info", "describe U(n)");

    try {
        std::vector<std::string> args = inject_config(raw_args);
        std::vector<const char*> argv{"latticeq"};
        for (const auto& a : args) argv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(argv.size()), argv.data());
        } catch (const CLI::CallForHelp&) {
            out << app.help();
            return ok;
        } catch (const CLI::ParseError& e) {
            err << "latticeq: " << e.what() << '\n';
            return parse_error;
        }
        Runner r(o, out);
        if (*eval) return r.eval();
        if (*quantify) return r.quantify();
        if (*verify) return r.verify();
        if (*plot) return r.plotdata();
        if (*info) return r.universe_info();
        return parse_error;
    } catch (const ParseError& e) {
        err << "latticeq: parse error: " << e.what() << '\n';
        return parse_error;
    } catch (const IoError& e) {
        err << "latticeq: I/O error: " << e.what() << '\n';
        return io_error;
    } catch (const std::invalid_argument& e) {
        err << "latticeq: precondition: " << e.what() << '\n';
        return precondition;
    } catch (const std::exception& e) {
        err << "latticeq: error: " << e.what() << '\n';
        return precondition;
    }
}

}  // namespace latticeq::cli
