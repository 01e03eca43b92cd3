#include "divisum/report_io.hpp"

#include <cstdio>
#include <iomanip>
#include <sstream>

#include "json.hpp"

namespace divisum {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json point_json(const CheckPoint& at) {
  return ordered_json{{"n", at.n}, {"side", to_string(at.side)}};
}

ordered_json enclosure_json(const Enclosure& e, int digits = 25) {
  return ordered_json{{"mid", e.mid_string(digits)}, {"rad", e.rad_string()}};
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string report_to_json(const VerificationReport& report, bool include_timing) {
  ordered_json j;
  j["schema"] = kReportSchema;
  j["spec"] = report.spec_name;
  j["range"] = {{"from", report.from}, {"to", report.to}};
  j["checked"] = report.checked;
  ordered_json violations = ordered_json::array();
  for (const auto& v : report.violations) {
    ordered_json item = point_json(v.at);
    item["x"] = v.x;
    item["lhs"] = v.lhs;
    item["rhs_bound"] = enclosure_json(v.rhs_bound);
    violations.push_back(std::move(item));
  }
  j["violations"] = std::move(violations);
  j["violations_dropped"] = report.violations_dropped;
  j["max_ratio"] = report.max_ratio;
  j["max_ratio_at"] = point_json(report.max_ratio_at);
  j["last_violation"] =
      report.last_violation ? point_json(*report.last_violation) : ordered_json(nullptr);
  j["precision_escalations"] = report.precision_escalations;
  j["indeterminate"] = report.indeterminate;
  if (include_timing) j["wall_time"] = report.wall_time;
  return j.dump(2) + "\n";
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else if (c != '\r') {
      fields.back() += c;
    }
  }
  return fields;
}

std::string report_to_csv(const VerificationReport& report) {
  std::ostringstream out;
  out << "record,spec,from,to,checked,x,side,lhs,rhs_mid,rhs_rad,max_ratio,max_ratio_at\n";
  out << "summary," << csv_escape(report.spec_name) << ',' << report.from << ',' << report.to
      << ',' << report.checked << ",,,,,," << fmt_double(report.max_ratio) << ','
      << report.max_ratio_at.n << '\n';
  for (const auto& v : report.violations) {
    out << "violation," << csv_escape(report.spec_name) << ',' << report.from << ','
        << report.to << ",," << fmt_double(v.x) << ',' << to_string(v.at.side) << ','
        << csv_escape(v.lhs) << ',' << v.rhs_bound.mid_string(25) << ','
        << v.rhs_bound.rad_string() << ",,\n";
  }
  return out.str();
}

std::string threshold_to_json(const ThresholdResult& r) {
  ordered_json j;
  j["schema"] = "divisum.threshold/1";
  j["spec"] = r.spec_name;
  j["scan_limit"] = r.scan_limit;
  j["threshold"] = r.threshold;
  j["last_violation"] = r.last_violation ? ordered_json(*r.last_violation) : ordered_json(nullptr);
  j["crossing"] = r.crossing ? ordered_json(*r.crossing) : ordered_json(nullptr);
  j["violations_found"] = r.violations_found;
  return j.dump(2) + "\n";
}

std::string constants_to_json(const ConstantsTable& table) {
  ordered_json j;
  j["schema"] = kConstantsSchema;
  j["precision_bits"] = table.precision;
  ordered_json entries = ordered_json::array();
  for (const auto& e : constant_entries(table)) {
    ordered_json item;
    item["name"] = e.name;
    item["mid"] = e.value.mid_string(40);
    item["rad"] = e.value.rad_string();
    item["exact"] = e.exact;
    item["formula"] = e.formula;
    entries.push_back(std::move(item));
  }
  j["constants"] = std::move(entries);
  return j.dump(2) + "\n";
}

std::string constants_to_text(const ConstantsTable& table) {
  std::ostringstream out;
  out << "# constants at " << table.precision << " bits (" << kConstantsSchema << ")\n";
  for (const auto& e : constant_entries(table)) {
    out << std::left << std::setw(12) << e.name << ' ';
    if (e.exact)
      out << std::setw(44) << (e.formula + " (exact)");
    else
      out << std::setw(44) << e.value.mid_string(40);
    out << " +/- " << std::setw(10) << e.value.rad_string() << "  " << e.formula << '\n';
  }
  const Enclosure inv_pi2 = Enclosure(1, table.precision) / pow(table.pi, 2);
  out << "D1 contains 1/pi^2: " << (table.D1.contains(inv_pi2) || inv_pi2.contains(table.D1) ? "yes" : "no")
      << '\n';
  return out.str();
}

}  // namespace divisum
