#include "divisum/class_bounds.hpp"

#include <istream>
#include <ostream>
#include <string>

#include "divisum/errors.hpp"
#include "divisum/report_io.hpp"
#include "divisum/summatory.hpp"

namespace divisum {

namespace {

constexpr std::int64_t kCorollaryThreshold = 193;

std::int64_t parse_int(const std::string& field, const char* what) {
  std::size_t used = 0;
  std::int64_t v = 0;
  try {
    v = std::stoll(field, &used);
  } catch (const std::exception&) {
    throw DomainError(std::string("bad ") + what + " '" + field + "'");
  }
  if (used != field.size()) throw DomainError(std::string("bad ") + what + " '" + field + "'");
  return v;
}

}  // namespace

Enclosure minkowski_bound(int n_K, int r1, int r2, const Enclosure& abs_disc) {
  if (n_K < 2 || n_K > 4) throw SignatureError("degree must be 2, 3 or 4");
  if (r1 < 0 || r2 < 0 || r1 + 2 * r2 != n_K)
    throw SignatureError("r1 + 2 r2 must equal n_K (got r1=" + std::to_string(r1) +
                         ", r2=" + std::to_string(r2) + ", n_K=" + std::to_string(n_K) + ")");
  const int prec = abs_disc.precision();
  std::int64_t fact = 1, power = 1;
  for (int i = 1; i <= n_K; ++i) {
    fact *= i;
    power *= n_K;
  }
  const Enclosure prefactor = Enclosure::rational(fact, power, prec);
  const Enclosure four_over_pi = Enclosure(4, prec) / Enclosure::pi(prec);
  return prefactor * pow(four_over_pi, r2) * sqrt(abs_disc);
}

Enclosure minkowski_bound(const NumberFieldInput& input, int precision) {
  if (input.abs_disc < 1) throw DomainError("|d_K| must be >= 1");
  return minkowski_bound(input.n_K, input.r1, input.r2, Enclosure(input.abs_disc, precision));
}

std::int64_t class_bound_exact(const Enclosure& b) {
  if (b.certainly_lt(Enclosure(1, b.precision())))
    throw DomainError("Minkowski bound below 1");
  std::int64_t floor_b = 0;
  if (!b.floor_if_determined(floor_b))
    throw IndeterminateError("floor of the Minkowski bound is not determined");
  if (floor_b < 1) throw DomainError("Minkowski bound below 1");
  return summatory_d4_exact(floor_b).value;
}

Enclosure class_bound_formula(const Enclosure& b) {
  const Enclosure threshold(kCorollaryThreshold, b.precision());
  if (!threshold.certainly_le(b))
    throw DomainError("the (1/3) b log^3 b bound needs b >= 193");
  return b * pow(log(b), 3) / Enclosure(3, b.precision());
}

ClassBoundResult class_bound(const NumberFieldInput& input, int precision) {
  if (input.n_K != 4) throw SignatureError("class-number bound is implemented for quartic fields");
  for (int prec = precision;; prec *= 2) {
    Enclosure b = minkowski_bound(input, prec);
    std::int64_t exact = 0;
    try {
      exact = class_bound_exact(b);
    } catch (const IndeterminateError&) {
      if (prec * 2 > kMaxPrecision) throw;
      continue;
    }
    ClassBoundResult r{std::move(b), exact, std::nullopt, "exact sum"};
    if (Enclosure(kCorollaryThreshold, prec).certainly_le(r.b)) {
      r.bound_formula = class_bound_formula(r.b);
      r.method_note = r.bound_formula->certainly_lt(Enclosure(exact, prec))
                          ? "formula smaller"
                          : "exact sum smaller";
    } else {
      r.method_note = "exact sum (b < 193, formula n/a)";
    }
    return r;
  }
}

std::vector<BatchRow> batch_class_bounds(std::istream& in, int precision) {
  std::vector<BatchRow> rows;
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (header) {
      header = false;
      const auto cols = csv_split(line);
      if (cols.size() < 5 || cols[0] != "label" || cols[1] != "n_K" || cols[2] != "r1" ||
          cols[3] != "r2" || cols[4] != "abs_disc")
        throw DomainError("expected header label,n_K,r1,r2,abs_disc");
      continue;
    }
    BatchRow row;
    try {
      row.fields = csv_split(line);
      const auto& f = row.fields;
      if (!f.empty()) row.label = f[0];
      if (f.size() != 5) throw DomainError("expected 5 columns, got " + std::to_string(f.size()));
      row.input.n_K = static_cast<int>(parse_int(f[1], "n_K"));
      row.input.r1 = static_cast<int>(parse_int(f[2], "r1"));
      row.input.r2 = static_cast<int>(parse_int(f[3], "r2"));
      row.input.abs_disc = parse_int(f[4], "abs_disc");
      row.result = class_bound(row.input, precision);
    } catch (const Error& e) {
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_batch_csv(std::ostream& out, const std::vector<BatchRow>& rows) {
  out << "label,n_K,r1,r2,abs_disc,b_mid,b_rad,bound_exact,bound_formula,error\n";
  for (const auto& row : rows) {
    out << csv_escape(row.label) << ',';
    if (row.result) {
      const auto& r = *row.result;
      out << row.input.n_K << ',' << row.input.r1 << ',' << row.input.r2 << ','
          << row.input.abs_disc << ',' << r.b.mid_string(20) << ',' << r.b.rad_string() << ','
          << r.bound_exact << ',' << (r.bound_formula ? r.bound_formula->mid_string(20) : "")
          << ",\n";
    } else {
      for (std::size_t i = 1; i < 5; ++i)
        out << (i < row.fields.size() ? csv_escape(row.fields[i]) : "") << ',';
      out << ",,,," << csv_escape(row.error) << '\n';
    }
  }
}

}  // namespace divisum
