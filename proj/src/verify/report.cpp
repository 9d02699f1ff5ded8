#include "latticeq/verify/report.hpp"

#include <algorithm>
#include <sstream>
#include <vector>

#include "latticeq/core/errors.hpp"
#include "latticeq/sign_ledger.hpp"

namespace latticeq::verify {

VerificationReport make_report(std::string kind) {
    VerificationReport r;
    r.kind = std::move(kind);
    r.sign_ledger_version = ledger::version;
    return r;
}

Json to_json(const VerificationReport& r) {
    Json j;
    j["kind"] = r.kind;
    j["params"] = r.params;
    j["rows"] = r.rows;
    j["pass"] = r.pass;
    j["tolerances"] = r.tolerances;
    j["sign_ledger_version"] = r.sign_ledger_version;
    return j;
}

VerificationReport report_from_json(const Json& j) {
    VerificationReport r;
    try {
        r.kind = j.at("kind").get<std::string>();
        r.params = j.at("params");
        r.rows = j.at("rows");
        r.pass = j.at("pass").get<bool>();
        r.tolerances = j.at("tolerances");
        r.sign_ledger_version = j.at("sign_ledger_version").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed report: ") + e.what(), 1, 1);
    }
    return r;
}

std::string emit_json(const VerificationReport& r) {
    return to_json(r).dump(2) + "\n";
}

VerificationReport parse_report(const std::string& text) {
    Json j;
    try {
        j = Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("report is not JSON: ") + e.what(), 1, e.byte);
    }
    return report_from_json(j);
}

namespace {

bool is_complex_pair(const Json& v) {
    // complex values are written as float pairs; integer pairs are tuples
    return v.is_array() && v.size() == 2 && v[0].is_number_float() && v[1].is_number_float();
}

std::string scalar_text(const Json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    if (v.is_array()) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ';';
            s += scalar_text(v[i]);
        }
        return s;
    }
    return v.dump();
}

std::vector<std::string> column_keys(const Json& rows) {
    std::vector<std::string> keys;
    if (rows.empty()) return keys;
    for (const auto& [k, v] : rows[0].items()) keys.push_back(k);
    return keys;
}

struct Columns {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> cells;
};

Columns tabulate(const Json& rows) {
    Columns c;
    std::vector<std::string> keys = column_keys(rows);
    std::vector<bool> split(keys.size(), false);
    for (std::size_t i = 0; i < keys.size(); ++i) {
        bool any = false, all = true;
        for (const auto& row : rows) {
            if (!row.contains(keys[i]) || row[keys[i]].is_null()) continue;
            any = true;
            all = all && is_complex_pair(row[keys[i]]);
        }
        split[i] = any && all;
        if (split[i]) {
            c.header.push_back(keys[i] + "_re");
            c.header.push_back(keys[i] + "_im");
        } else {
            c.header.push_back(keys[i]);
        }
    }
    for (const auto& row : rows) {
        std::vector<std::string> line;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            const Json v = row.contains(keys[i]) ? row[keys[i]] : Json();
            if (split[i]) {
                if (is_complex_pair(v)) {
                    line.push_back(v[0].dump());
                    line.push_back(v[1].dump());
                } else {
                    line.push_back(scalar_text(v));
                    line.push_back("");
                }
            } else {
                line.push_back(scalar_text(v));
            }
        }
        c.cells.push_back(std::move(line));
    }
    return c;
}

}  // namespace

std::string emit_csv(const VerificationReport& r) {
    Columns c = tabulate(r.rows);
    std::ostringstream out;
    for (std::size_t i = 0; i < c.header.size(); ++i) out << (i ? "," : "") << c.header[i];
    out << '\n';
    for (const auto& line : c.cells) {
        for (std::size_t i = 0; i < line.size(); ++i) out << (i ? "," : "") << line[i];
        out << '\n';
    }
    return out.str();
}

std::string emit_table(const VerificationReport& r) {
    std::ostringstream out;
    out << r.kind << ": " << (r.pass ? "PASS" : "FAIL") << "  (sign ledger " << r.sign_ledger_version << ")\n";
    for (const auto& [k, v] : r.params.items()) out << "  " << k << " = " << scalar_text(v) << '\n';
    for (const auto& [k, v] : r.tolerances.items()) out << "  tolerance " << k << " = " << scalar_text(v) << '\n';
    Columns c = tabulate(r.rows);
    if (c.header.empty()) return out.str();
    std::vector<std::size_t> width(c.header.size());
    for (std::size_t i = 0; i < c.header.size(); ++i) width[i] = c.header[i].size();
    for (const auto& line : c.cells)
        for (std::size_t i = 0; i < line.size(); ++i) width[i] = std::max(width[i], line[i].size());
    auto emit_line = [&](const std::vector<std::string>& line) {
        for (std::size_t i = 0; i < line.size(); ++i) {
            out << (i ? "  " : "") << line[i] << std::string(width[i] - line[i].size(), ' ');
        }
        out << '\n';
    };
    emit_line(c.header);
    for (const auto& line : c.cells) emit_line(line);
    return out.str();
}

}  // namespace latticeq::verify
