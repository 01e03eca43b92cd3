#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "divisum/constants.hpp"
#include "divisum/verifier.hpp"

namespace divisum {

inline constexpr const char* kReportSchema = "divisum.verification/1";
inline constexpr const char* kConstantsSchema = "divisum.constants/1";

/// Structured report (JSON). Keys, in order: schema, spec, range, checked,
/// violations[], violations_dropped, max_ratio, max_ratio_at, last_violation,
/// precision_escalations, indeterminate, wall_time. wall_time is omitted when
/// include_timing is false so that reports of identical runs are
/// byte-identical.
std::string report_to_json(const VerificationReport& report, bool include_timing = true);

/// Flat export: one summary row, then one row per listed violation.
///   record,spec,from,to,checked,x,side,lhs,rhs_mid,rhs_rad,max_ratio,max_ratio_at
std::string report_to_csv(const VerificationReport& report);

std::string threshold_to_json(const ThresholdResult& result);

std::string constants_to_json(const ConstantsTable& table);
std::string constants_to_text(const ConstantsTable& table);

/// RFC 4180 field quoting.
std::string csv_escape(const std::string& field);
/// Splits one line of comma-delimited text honoring double quotes.
std::vector<std::string> csv_split(const std::string& line);

}  // namespace divisum
