#ifndef MBZETA_REPORT_IO_HPP
#define MBZETA_REPORT_IO_HPP

#include <string>

#include <json.hpp>

#include <mbzeta/verify.hpp>

namespace mbzeta
{

inline constexpr int report_schema_version = 1;

inline constexpr const char *csv_header = "id,lhs_re,lhs_im,rhs_re,rhs_im,abs_err,rel_err,tolerance,pass";

/// {version, environment, entries[], overall_pass}; entries carry
/// {id, lhs_re, lhs_im, rhs_re, rhs_im, abs_err, rel_err, tolerance, pass}
/// and, for checks that raised, an extra "error" string.
nlohmann::json report_to_json(const VerificationReport &report);
std::string report_to_csv(const VerificationReport &report);
std::string report_to_text(const VerificationReport &report);

/// Throws ConfigError on malformed input and UnknownCaseKind on an
/// unrecognised "kind". A missing "cases" key selects the built-in battery.
SuiteConfig parse_suite_config(const nlohmann::json &doc);
SuiteConfig load_suite_config(const std::string &path);

// "re,im" or "re".
Complex parse_complex(const std::string &text);

} // namespace mbzeta

#endif
