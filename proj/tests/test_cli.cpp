#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "latticeq/cli/cli.hpp"
#include "latticeq/core/errors.hpp"
#include "latticeq/verify/report.hpp"

using namespace latticeq;
using namespace latticeq::cli;
using Json = nlohmann::ordered_json;

namespace {

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun run_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::complex<double> complex_of(const Json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

std::filesystem::path temp_dir(const std::string& name) {
    auto p = std::filesystem::temp_directory_path() / ("latticeq_test_" + name);
    std::filesystem::remove_all(p);
    std::filesystem::create_directories(p);
    return p;
}

}  // namespace

TEST(Parsing, Counts) {
    EXPECT_EQ(parse_count("1e6"), 1000000);
    EXPECT_EQ(parse_count("2.56e6"), 2560000);
    EXPECT_EQ(parse_count("720720"), 720720);
    EXPECT_THROW(parse_count("1.5"), PreconditionError);
    EXPECT_THROW(parse_count("abc"), PreconditionError);
    EXPECT_EQ(parse_n_list("1e4..2.56e6", 4), (std::vector<std::int64_t>{10000, 40000, 160000, 640000, 2560000}));
    EXPECT_EQ(parse_n_list("16,256,4096"), (std::vector<std::int64_t>{16, 256, 4096}));
}

TEST(Eval, Examples) {
    CliRun r = run_cli({"eval", "exp(-pi*i*k^2/n)", "--n", "4", "--at", "2"});
    ASSERT_EQ(r.code, ok) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_LE(std::abs(complex_of(j["points"][0]["value"]) - std::complex<double>(-1)), 1e-15);
    EXPECT_EQ(j["run_config"]["sign_ledger_version"], "SL-1");

    r = run_cli({"eval", "exp(-pi*i*k^2/n)", "--n", "5", "--at", "0"});
    EXPECT_EQ(r.code, precondition);

    r = run_cli({"eval", "exp(-pi*i*k^2/n)", "--n", "4", "--at", "3"});
    EXPECT_EQ(r.code, precondition);
    EXPECT_NE(r.err.find("outside"), std::string::npos);

    r = run_cli({"eval", "exp(-pi*i*k^(1/2)/n)", "--n", "4", "--at", "1"});
    EXPECT_EQ(r.code, parse_error);
    EXPECT_NE(r.err.find("non-integer exponent"), std::string::npos);

    r = run_cli({"eval", "exp(-pi*i*(3/2*k^2 + 2*k*p1)/n)", "--n", "12", "--at", "2,3", "--at", "0,0"});
    ASSERT_EQ(r.code, ok);
    j = Json::parse(r.out);
    EXPECT_LE(std::abs(complex_of(j["points"][0]["value"]) - std::complex<double>(0, 1)), 1e-15);
    EXPECT_EQ(j["points"].size(), 2u);
}

TEST(Quantify, Examples) {
    CliRun r = run_cli({"quantify", "exp(-pi*i*k^2/n)", "--global", "--n", "720720"});
    ASSERT_EQ(r.code, ok) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_LE(std::abs(complex_of(j["result"]["value"]) - std::polar(1.0, -std::numbers::pi / 4)), 1e-9);
    EXPECT_EQ(j["result"]["window"], "global");

    r = run_cli({"quantify", "exp(-x^2)", "--window", "-4", "4", "--n", "1e6"});
    ASSERT_EQ(r.code, ok) << r.err;
    j = Json::parse(r.out);
    EXPECT_NEAR(j["result"]["value"][0].get<double>(), std::sqrt(std::numbers::pi) * std::erf(4.0), 1e-9);

    r = run_cli({"quantify", "exp(-3*pi*i*k^2/n)", "--global", "--n", "10"});
    EXPECT_EQ(r.code, precondition);
    EXPECT_NE(r.err.find("divisible by 6"), std::string::npos);

    r = run_cli({"quantify", "exp(-x^2)", "--global", "--n", "1000"});
    EXPECT_EQ(r.code, precondition);

    r = run_cli({"quantify", "exp(-x^2)", "--window", "-40", "40", "--n", "1000"});
    EXPECT_EQ(r.code, precondition);
}

TEST(Quantify, ModesAndParams) {
    CliRun r = run_cli({"quantify", "exp(-x^2)", "--local", "--sequence", "--n", "10000"});
    ASSERT_EQ(r.code, ok) << r.err;
    EXPECT_EQ(Json::parse(r.out)["result"].size(), 19u);

    r = run_cli({"quantify", "exp(-pi*i*(k^2 + 2*k*p1)/n)", "--global", "--n", "720", "--params", "3"});
    ASSERT_EQ(r.code, ok) << r.err;

    r = run_cli({"quantify", "exp(-pi*i*(k^2 + 2*k*p1)/n)", "--global", "--n", "720"});
    EXPECT_EQ(r.code, precondition);

    r = run_cli({"quantify", "exp(-pi*i*k^2/n)", "--universe", "--local", "--n", "720"});
    EXPECT_EQ(r.code, precondition);

    r = run_cli({"quantify", "exp(-pi*i*2*(k^2 + k^4/9)/n)", "--global", "--n", "720"});
    EXPECT_EQ(r.code, ok) << r.err;
}

TEST(Quantify, TermCeiling) {
    CliRun r = run_cli({"quantify", "exp(-pi*i*k^2/n)", "--universe", "--n", "1e6", "--term-ceiling", "1000"});
    EXPECT_EQ(r.code, precondition);
    EXPECT_NE(r.err.find("ceiling"), std::string::npos);
}

TEST(Verify, GaussPassesAndWritesFiles) {
    auto dir = temp_dir("gauss");
    CliRun r = run_cli({"verify", "gauss", "--a", "1", "--b", "0", "--n", "1441440", "--out", dir.string()});
    ASSERT_EQ(r.code, ok) << r.err;
    EXPECT_TRUE(std::filesystem::exists(dir / "gauss.json"));
    EXPECT_TRUE(std::filesystem::exists(dir / "gauss.csv"));
    std::ifstream in(dir / "gauss.json");
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(buf.str(), r.out);
    auto rep = verify::parse_report(buf.str());
    EXPECT_EQ(rep.params["run_config"]["universe"]["n"], 1441440);
    EXPECT_EQ(rep.params["run_config"]["command"], "verify gauss");
}

TEST(Verify, FailureExitCode) {
    CliRun r = run_cli({"verify", "gauss", "--a", "3/2", "--b", "1", "--n", "1441440", "--samples", "2"});
    EXPECT_EQ(r.code, check_failed);  // outside samples do not vanish
    r = run_cli({"verify", "nosuch"});
    EXPECT_EQ(r.code, parse_error);
    r = run_cli({"verify", "gauss", "--a", "1", "--b", "0", "--n", "1e3"});
    EXPECT_EQ(r.code, ok) << r.err;
}

TEST(Verify, CsvFormat) {
    CliRun r = run_cli({"verify", "propagator", "--n", "4e4", "--format", "csv"});
    ASSERT_EQ(r.code, ok) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "r,x_minus_x0,modulus,kernel_modulus,rel_err");
    r = run_cli({"verify", "propagator", "--format", "xml"});
    EXPECT_EQ(r.code, parse_error);
}

TEST(Plotdata, Extracts) {
    auto dir = temp_dir("plot");
    CliRun r = run_cli({"verify", "converge", "--quantity", "gaussian-window", "--n", "1e4..1.6e5", "--out", dir.string()});
    // three points are too few for a stable decay fit; only the files matter here
    ASSERT_TRUE(r.code == ok || r.code == check_failed) << r.err;
    r = run_cli({"plotdata", (dir / "converge.json").string()});
    ASSERT_EQ(r.code, ok) << r.err;
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,abs_err");
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 4);

    r = run_cli({"verify", "local-global", "--a", "1", "--b", "0", "--n", "1e5", "--out", dir.string()});
    ASSERT_EQ(r.code, check_failed);  // C_tail = 2 is the tail asymptote
    r = run_cli({"plotdata", (dir / "local-global.json").string()});
    ASSERT_EQ(r.code, ok);
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "m,gap");

    r = run_cli({"plotdata", (dir / "converge.json").string(), "--columns", "n,bound,abs_err"});
    EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n,bound,abs_err");
    r = run_cli({"plotdata", (dir / "converge.json").string(), "--columns", "nope"});
    EXPECT_EQ(r.code, precondition);

    r = run_cli({"plotdata", (dir / "missing.json").string()});
    EXPECT_EQ(r.code, io_error);
}

TEST(Config, Precedence) {
    auto dir = temp_dir("config");
    {
        std::ofstream cfg(dir / "run.cfg");
        cfg << "# defaults\nn = 720720\nglobal = true\nthreads = 3\n";
    }
    CliRun r = run_cli({"quantify", "exp(-pi*i*k^2/n)", "--config", (dir / "run.cfg").string()});
    ASSERT_EQ(r.code, ok) << r.err;
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["run_config"]["universe"]["n"], 720720);
    EXPECT_EQ(j["run_config"]["threads"], 3);

    r = run_cli({"quantify", "exp(-pi*i*k^2/n)", "--config", (dir / "run.cfg").string(), "--n", "16", "--threads", "2"});
    ASSERT_EQ(r.code, ok) << r.err;
    j = Json::parse(r.out);
    EXPECT_EQ(j["run_config"]["universe"]["n"], 16);
    EXPECT_EQ(j["run_config"]["threads"], 2);

    setenv("LATTICEQ_THREADS", "5", 1);
    r = run_cli({"universe-info", "--n", "16"});
    EXPECT_EQ(Json::parse(r.out)["run_config"]["threads"], 5);
    r = run_cli({"quantify", "exp(-pi*i*k^2/n)", "--config", (dir / "run.cfg").string()});
    EXPECT_EQ(Json::parse(r.out)["run_config"]["threads"], 3);
    unsetenv("LATTICEQ_THREADS");

    r = run_cli({"universe-info", "--config", (dir / "absent.cfg").string(), "--n", "16"});
    EXPECT_EQ(r.code, io_error);
    {
        std::ofstream cfg(dir / "bad.cfg");
        cfg << "n 12\n";
    }
    r = run_cli({"universe-info", "--config", (dir / "bad.cfg").string()});
    EXPECT_EQ(r.code, parse_error);
}

TEST(UniverseInfo, Fields) {
    CliRun r = run_cli({"universe-info", "--n", "1000"});
    ASSERT_EQ(r.code, ok);
    Json j = Json::parse(r.out);
    EXPECT_EQ(j["max_local_window"], 6);
    EXPECT_EQ(j["min_point"], -500);
    r = run_cli({});
    EXPECT_EQ(r.code, parse_error);
}

TEST(Reproducibility, ByteIdenticalAcrossRunsAndThreads) {
    std::string base;
    for (std::string t : {"1", "2", "8"}) {
        std::vector<std::string> args{"verify", "gauss", "--a", "3/2", "--b", "1", "--n", "1441440", "--threads", t};
        CliRun a = run_cli(args), b = run_cli(args);
        ASSERT_EQ(a.out, b.out);
        Json j = Json::parse(a.out);
        j["params"]["run_config"].erase("threads");
        if (base.empty()) base = j.dump();
        EXPECT_EQ(j.dump(), base);
    }
}
