#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace latticeq::cli {

enum ExitCode : int { ok = 0, check_failed = 1, parse_error = 2, precondition = 3, io_error = 4 };

/// Integer from "720720", "1e6" or "2.56e6"; must be exact.
std::int64_t parse_count(const std::string& text);

/// "16,256,4096", a single value, or a geometric range "1e4..2.56e6" with the
/// given factor (both endpoints included when hit).
std::vector<std::int64_t> parse_n_list(const std::string& text, std::int64_t factor = 4);

/// key=value lines; '#' starts a comment. Throws IoError / ParseError.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Effective settings of one command, echoed into everything it writes.
struct RunConfig {
    std::string command;
    std::int64_t n = 0;
    std::int64_t h_n = 1;
    int threads = 1;
    std::string out_dir;
    std::string format = "json";
    double term_ceiling = 5e8;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    nlohmann::ordered_json tolerances = nlohmann::ordered_json::object();

    nlohmann::ordered_json to_json() const;
};

/// Runs one command; args exclude the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latticeq::cli
