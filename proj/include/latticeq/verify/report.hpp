#pragma once

#include <string>

#include <nlohmann/json.hpp>

namespace latticeq::verify {

using Json = nlohmann::ordered_json;

/// A theorem check: inputs, one row per measurement, verdict.
struct VerificationReport {
    std::string kind;
    Json params = Json::object();
    Json rows = Json::array();
    bool pass = true;
    Json tolerances = Json::object();
    std::string sign_ledger_version;

    bool operator==(const VerificationReport&) const = default;
};

VerificationReport make_report(std::string kind);

Json to_json(const VerificationReport& r);
VerificationReport report_from_json(const Json& j);

/// Pretty JSON with a trailing newline; field order is fixed.
std::string emit_json(const VerificationReport& r);
VerificationReport parse_report(const std::string& text);

/// One line per row. Columns are the keys of the first row; complex values
/// ([re, im] pairs) split into name_re, name_im; other arrays are joined by ';'.
std::string emit_csv(const VerificationReport& r);

/// Aligned text table with a header block.
std::string emit_table(const VerificationReport& r);

/// Pair encoding of a complex number.
template <class C>
Json complex_json(const C& z) {
    return Json::array({z.real(), z.imag()});
}

}  // namespace latticeq::verify
