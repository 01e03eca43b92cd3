// divisum: exact divisor sums, certified constants and envelope verification.
//
// Exit codes: 0 all checks passed, 1 a certain violation was found,
// 2 configuration, input or capacity error.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "divisum/class_bounds.hpp"
#include "divisum/errors.hpp"
#include "divisum/report_io.hpp"
#include "divisum/summatory.hpp"
#include "divisum/verifier.hpp"

using namespace divisum;
using nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitViolation = 1;
constexpr int kExitConfig = 2;

struct RunConfig {
  int precision = kDefaultPrecision;
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "text";
  std::string output;
  bool no_timing = false;

  ScanOptions scan() const {
    ScanOptions o;
    o.precision = precision;
    o.segment_size = segment_size;
    o.workers = workers;
    return o;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw Error("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string with_rad(const Enclosure& e, int digits = 20) {
  return e.mid_string(digits) + " +/- " + e.rad_string();
}

ordered_json enc_json(const Enclosure& e, int digits = 25) {
  return ordered_json{{"mid", e.mid_string(digits)}, {"rad", e.rad_string()}};
}

std::string point_text(const CheckPoint& p) {
  return p.side == Side::AT ? "x = " + std::to_string(p.n) : "x -> " + std::to_string(p.n + 1) + "-";
}

void write_report_text(std::ostream& os, const VerificationReport& r, bool timing) {
  os << "spec            " << r.spec_name << '\n'
     << "range           [" << r.from << ", " << r.to << "]\n"
     << "checked         " << r.checked << '\n'
     << "violations      " << r.violation_count() << '\n'
     << "indeterminate   " << r.indeterminate << '\n'
     << "escalations     " << r.precision_escalations << '\n'
     << "max ratio       " << r.max_ratio << " at " << point_text(r.max_ratio_at) << '\n';
  if (r.last_violation) os << "last violation  " << point_text(*r.last_violation) << '\n';
  if (timing) os << "wall time       " << r.wall_time << " s\n";
  for (const auto& v : r.violations)
    os << "  violation at " << point_text(v.at) << ": value " << v.lhs << ", bound "
       << v.rhs_bound.mid_string(15) << '\n';
  os << (r.passed() ? "PASS" : "FAIL") << '\n';
}

void write_report(std::ostream& os, const VerificationReport& r, const RunConfig& cfg) {
  if (cfg.format == "structured")
    os << report_to_json(r, !cfg.no_timing) << '\n';
  else if (cfg.format == "tabular")
    os << report_to_csv(r);
  else
    write_report_text(os, r, !cfg.no_timing);
}

std::optional<Rational> parse_k(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational{std::stoll(text), 1};
    return Rational{std::stoll(text.substr(0, slash)), std::stoll(text.substr(slash + 1))};
  } catch (const std::exception&) {
    throw DomainError("bad K '" + text + "', expected p/q");
  }
}

std::int64_t sieve_sum(FunctionKind kind, std::int64_t x, std::size_t seg) {
  std::int64_t last = 0;
  stream_summatory(kind, x, [&](std::int64_t, std::int64_t running) { last = running; }, seg);
  return last;
}

// ---- subcommands ---------------------------------------------------------

int cmd_constants(const RunConfig& cfg) {
  const ConstantsTable t = build_constants_table(cfg.precision);
  Output out(cfg.output);
  if (cfg.format == "structured") {
    out.os() << constants_to_json(t) << '\n';
  } else if (cfg.format == "tabular") {
    out.os() << "name,mid,rad,formula,exact\n";
    for (const auto& e : constant_entries(t))
      out.os() << csv_escape(e.name) << ',' << e.value.mid_string(40) << ',' << e.value.rad_string() << ','
               << csv_escape(e.formula) << ',' << (e.exact ? "true" : "false") << '\n';
  } else {
    out.os() << constants_to_text(t);
  }
  return kExitPass;
}

int cmd_sum(const RunConfig& cfg, const std::string& kind_name, std::int64_t x, const std::string& method) {
  if (x < 1) throw DomainError("x must be >= 1");
  const FunctionKind kind = parse_function_kind(kind_name);
  std::vector<std::pair<std::string, std::int64_t>> values;
  if (method == "sieve" || method == "both") values.emplace_back("sieve", sieve_sum(kind, x, cfg.segment_size));
  if (method == "identity" || method == "both")
    values.emplace_back("identity", summatory_exact(kind, x, cfg.segment_size).value);
  Output out(cfg.output);
  if (cfg.format == "structured") {
    ordered_json j{{"function", std::string(to_string(kind))}, {"x", x}};
    for (const auto& [m, v] : values) j[m] = v;
    out.os() << j.dump(2) << '\n';
  } else if (cfg.format == "tabular") {
    out.os() << "function,x,method,value\n";
    for (const auto& [m, v] : values) out.os() << to_string(kind) << ',' << x << ',' << m << ',' << v << '\n';
  } else {
    for (const auto& [m, v] : values) out.os() << v << (values.size() > 1 ? "  (" + m + ")" : "") << '\n';
  }
  if (values.size() == 2 && values[0].second != values[1].second) {
    std::cerr << "sieve and identity disagree\n";
    return kExitViolation;
  }
  return kExitPass;
}

int cmd_eval(const RunConfig& cfg, const std::string& what, const std::string& x_text) {
  const ConstantsTable t = build_constants_table(cfg.precision);
  const int p = cfg.precision;
  const Enclosure x = Enclosure::decimal(x_text, p);
  auto as_int = [&]() {
    std::int64_t n = 0;
    if (!x.floor_if_determined(n) || !x.contains(Enclosure(n, p)))
      throw DomainError(what + " needs an integer x");
    return n;
  };
  std::vector<std::pair<std::string, Enclosure>> rows;
  auto approx = [&](const std::string& name, const Enclosure& exact, const ApproxResult& a) {
    rows.emplace_back(name + "_exact", exact);
    rows.emplace_back(name + "_main", a.main);
    rows.emplace_back(name + (a.certified ? "_radius" : "_radius_uncertified"), a.radius);
    rows.emplace_back(name + "_difference", exact - a.main);
  };
  if (what == "main-d4") {
    rows.emplace_back(what, main_term_d4(x, t));
  } else if (what == "main-dsq") {
    rows.emplace_back(what, main_term_dsq(x, t));
  } else if (what == "envelope-d4") {
    rows.emplace_back(what, envelope(theorem_spec(TheoremKind::D4_FULL, t), x));
  } else if (what == "envelope-dsq") {
    rows.emplace_back(what, envelope(theorem_spec(TheoremKind::DSQ_FULL, t), x));
  } else if (what == "delta") {
    rows.emplace_back(what, delta_of_x(as_int(), t));
  } else if (what == "s1") {
    approx("s1", S1_exact(as_int(), p), S1_approx(x, t));
  } else if (what == "s2") {
    approx("s2", S2_exact(as_int(), p), S2_approx(x, t));
  } else if (what == "s3") {
    approx("s3", S3_exact(as_int(), p), S3_approx(x, t));
  } else {
    const PriorBound b = parse_prior_bound(what);
    rows.emplace_back(what, prior_bound(b, x, b == PriorBound::KITCHEN ? 2 : 4, t));
  }
  Output out(cfg.output);
  if (cfg.format == "structured") {
    ordered_json j{{"x", x_text}};
    for (const auto& [name, v] : rows) j[name] = enc_json(v);
    out.os() << j.dump(2) << '\n';
  } else if (cfg.format == "tabular") {
    out.os() << "quantity,x,mid,rad\n";
    for (const auto& [name, v] : rows)
      out.os() << name << ',' << x_text << ',' << v.mid_string(25) << ',' << v.rad_string() << '\n';
  } else {
    for (const auto& [name, v] : rows) out.os() << name << " = " << with_rad(v) << '\n';
  }
  return kExitPass;
}

struct VerifyArgs {
  std::string spec = "thm1";
  std::optional<std::int64_t> from;
  std::optional<std::int64_t> to;
  bool extended = false;
  std::string k;
  std::int64_t fine_grid_steps = 0;
};

int cmd_verify(const RunConfig& cfg, const VerifyArgs& a) {
  ConstantsCache cache(cfg.precision);
  const ConstantsTable& t = cache.at(cfg.precision);
  const ScanOptions opts = cfg.scan();
  const std::int64_t default_to = a.extended ? t.x0 * t.x0 : 10'000'000;
  const std::int64_t to = a.to.value_or(default_to);
  VerificationReport report;
  if (a.spec == "s1") {
    report = verify_s1_constant(a.to.value_or(599'999), cache, opts);
  } else if (a.spec == "delta") {
    report = verify_delta_alpha(a.from.value_or(t.x0), to, cache, opts);
  } else if (a.spec == "s2") {
    const std::int64_t from = a.from.value_or(t.x0);
    if (from < t.x0 || to < from) throw DomainError("s2 needs x0 <= from <= to");
    std::vector<std::int64_t> xs;
    const double lf = std::log(double(from)), lt = std::log(double(to));
    for (int i = 0; i < 100; ++i)
      xs.push_back(std::clamp<std::int64_t>(std::llround(std::exp(lf + (lt - lf) * i / 99.0)), from, to));
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    report = verify_s2_expansion(xs, cache, opts);
  } else {
    const TheoremSpec spec = theorem_spec(parse_theorem_kind(a.spec), t, parse_k(a.k));
    if (a.fine_grid_steps > 0) {
      report = verify_fine_grid(spec, a.from.value_or(2), a.to.value_or(3), a.fine_grid_steps, cache, opts);
    } else {
      report = verify_envelope(spec, a.from.value_or(spec.is_clean() ? spec.threshold : 2), to, cache, opts);
    }
  }
  Output out(cfg.output);
  write_report(out.os(), report, cfg);
  return report.passed() ? kExitPass : kExitViolation;
}

int cmd_threshold(const RunConfig& cfg, const std::string& spec_name, std::int64_t limit, const std::string& k) {
  ConstantsCache cache(cfg.precision);
  const TheoremSpec spec = theorem_spec(parse_theorem_kind(spec_name), cache.at(cfg.precision), parse_k(k));
  if (!spec.is_clean()) throw DomainError("threshold needs d4-clean or dsq-clean");
  const ThresholdResult r = find_threshold(spec, limit, cache, cfg.scan());
  Output out(cfg.output);
  if (cfg.format == "structured") {
    out.os() << threshold_to_json(r) << '\n';
  } else if (cfg.format == "tabular") {
    out.os() << "spec,scan_limit,threshold,last_violation,crossing,violations_found\n"
             << csv_escape(r.spec_name) << ',' << r.scan_limit << ',' << r.threshold << ','
             << (r.last_violation ? std::to_string(*r.last_violation) : "") << ','
             << (r.crossing ? std::to_string(*r.crossing) : "") << ',' << r.violations_found << '\n';
  } else {
    out.os() << r.threshold << '\n';
    if (r.last_violation)
      out.os() << "last violation at x = " << *r.last_violation << ", bound holds from x = " << *r.crossing
               << " on; " << r.violations_found << " violations below\n";
    out.os() << "scanned to " << r.scan_limit << '\n';
  }
  // The stated threshold is part of the spec; disagreeing with it is a violation.
  return r.threshold == spec.threshold ? kExitPass : kExitViolation;
}

struct ClassArgs {
  int nk = 4;
  int r1 = 0;
  int r2 = 0;
  std::int64_t disc = 0;
  std::string batch;
};

int cmd_class_bound(const RunConfig& cfg, const ClassArgs& a) {
  std::vector<BatchRow> rows;
  if (!a.batch.empty()) {
    std::ifstream in(a.batch);
    if (!in) throw Error("cannot open batch file '" + a.batch + "'");
    rows = batch_class_bounds(in, cfg.precision);
  } else {
    if (a.disc < 1) throw DomainError("--disc is required and must be >= 1");
    const int r1 = a.r1 == 0 && a.r2 * 2 < a.nk ? a.nk - 2 * a.r2 : a.r1;
    BatchRow row{"input", {a.nk, r1, a.r2, a.disc}, std::nullopt, ""};
    row.result = class_bound(row.input, cfg.precision);
    rows.push_back(std::move(row));
  }
  Output out(cfg.output);
  if (cfg.format == "tabular") {
    write_batch_csv(out.os(), rows);
  } else if (cfg.format == "structured") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      ordered_json j{{"label", r.label}, {"n_K", r.input.n_K}, {"r1", r.input.r1}, {"r2", r.input.r2},
                     {"abs_disc", r.input.abs_disc}};
      if (r.result) {
        j["b"] = enc_json(r.result->b);
        j["bound_exact"] = r.result->bound_exact;
        j["bound_formula"] = r.result->bound_formula ? enc_json(*r.result->bound_formula) : ordered_json(nullptr);
        j["note"] = r.result->method_note;
      } else {
        j["error"] = r.error;
      }
      arr.push_back(std::move(j));
    }
    out.os() << arr.dump(2) << '\n';
  } else {
    for (const auto& r : rows) {
      if (!rows.empty() && !a.batch.empty()) out.os() << r.label << ": ";
      if (!r.result) {
        out.os() << "error: " << r.error << '\n';
        continue;
      }
      out.os() << "bound " << r.result->bound_exact << "  (b = " << r.result->b.mid_string(15);
      if (r.result->bound_formula) out.os() << ", (1/3) b log^3 b = " << r.result->bound_formula->mid_string(15);
      out.os() << "; " << r.result->method_note << ")\n";
    }
  }
  const bool any_error = std::any_of(rows.begin(), rows.end(), [](const BatchRow& r) { return !r.error.empty(); });
  return any_error ? kExitConfig : kExitPass;
}

int cmd_compare(const RunConfig& cfg, const std::vector<double>& xs) {
  const ConstantsTable t = build_constants_table(cfg.precision);
  const auto rows = compare_prior_bounds(xs, t);
  auto opt_int = [](const std::optional<std::int64_t>& v) { return v ? std::to_string(*v) : std::string(); };
  Output out(cfg.output);
  if (cfg.format == "structured") {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rows) {
      arr.push_back({{"x", r.x},
                     {"exact_d4", r.exact_d4 ? ordered_json(*r.exact_d4) : ordered_json(nullptr)},
                     {"new_d4", enc_json(r.new_d4, 15)},
                     {"hall", enc_json(r.hall, 15)},
                     {"lounge", enc_json(r.lounge, 15)},
                     {"games", r.games ? enc_json(*r.games, 15) : ordered_json(nullptr)},
                     {"sharper_than_hall_and_lounge", r.sharper_than_hall_and_lounge},
                     {"exact_dsq", r.exact_dsq ? ordered_json(*r.exact_dsq) : ordered_json(nullptr)},
                     {"new_dsq", enc_json(r.new_dsq, 15)},
                     {"kitchen", enc_json(r.kitchen, 15)},
                     {"asymptotic_dsq", enc_json(r.asymptotic_dsq, 15)},
                     {"kitchen_over_asymptotic", enc_json(r.kitchen_over_asymptotic, 15)}});
    }
    out.os() << arr.dump(2) << '\n';
    return kExitPass;
  }
  const bool csv = cfg.format == "tabular";
  const char* sep = csv ? "," : "  ";
  out.os() << (csv ? "" : "# ") << "x" << sep << "exact_d4" << sep << "new_d4" << sep << "hall" << sep << "lounge"
           << sep << "games" << sep << "sharper" << sep << "exact_dsq" << sep << "new_dsq" << sep << "kitchen"
           << sep << "asymptotic_dsq" << sep << "kitchen_over_asymptotic\n";
  for (const auto& r : rows) {
    char xbuf[32];
    std::snprintf(xbuf, sizeof xbuf, "%.17g", r.x);
    out.os() << xbuf << sep << opt_int(r.exact_d4) << sep << r.new_d4.mid_string(10) << sep
             << r.hall.mid_string(10) << sep << r.lounge.mid_string(10) << sep
             << (r.games ? r.games->mid_string(10) : "") << sep << (r.sharper_than_hall_and_lounge ? "yes" : "no")
             << sep << opt_int(r.exact_dsq) << sep << r.new_dsq.mid_string(10) << sep << r.kitchen.mid_string(10)
             << sep << r.asymptotic_dsq.mid_string(10) << sep << r.kitchen_over_asymptotic.mid_string(10) << '\n';
  }
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact divisor sums, certified constants and explicit-bound verification"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_config("--config", "", "TOML/INI file mirroring the command-line options");

  RunConfig cfg;
  auto* precision_opt = app.add_option("--precision", cfg.precision, "working precision in bits (env DIVISUM_PRECISION)")
      ->check(CLI::Range(64, kMaxPrecision))
      ->capture_default_str();
  app.add_option("--segment-size", cfg.segment_size, "sieve segment length")
      ->check(CLI::Range(std::size_t{1} << 10, std::size_t{1} << 30))
      ->capture_default_str();
  app.add_option("--workers", cfg.workers, "worker threads for scans")->check(CLI::PositiveNumber)->capture_default_str();
  app.add_option("--format", cfg.format, "output format")
      ->check(CLI::IsMember({"text", "structured", "tabular"}))
      ->capture_default_str();
  app.add_option("--output", cfg.output, "write output to this file instead of stdout");
  app.add_flag("--no-timing", cfg.no_timing, "omit wall time so identical runs give identical reports");

  std::function<int()> run;

  app.add_subcommand("constants", "print the constants table")->callback([&] { run = [&] { return cmd_constants(cfg); }; });

  std::string sum_kind, sum_method = "identity";
  std::int64_t sum_x = 0;
  auto* sum = app.add_subcommand("sum", "exact summatory value");
  sum->add_option("kind", sum_kind, "d, d4 or dsq")->required()->check(CLI::IsMember({"d", "d4", "dsq"}));
  sum->add_option("x", sum_x)->required();
  sum->add_option("--method", sum_method)->check(CLI::IsMember({"sieve", "identity", "both"}))->capture_default_str();
  sum->callback([&] { run = [&] { return cmd_sum(cfg, sum_kind, sum_x, sum_method); }; });

  std::string eval_what, eval_x;
  auto* eval = app.add_subcommand("eval", "evaluate a formula at x");
  eval->add_option("quantity", eval_what,
                   "main-d4, main-dsq, envelope-d4, envelope-dsq, delta, s1, s2, s3, hall, lounge, games, kitchen")
      ->required();
  eval->add_option("x", eval_x, "decimal or integer abscissa")->required();
  eval->callback([&] { run = [&] { return cmd_eval(cfg, eval_what, eval_x); }; });

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "scan a bound over a range of x");
  verify->add_option("spec", va.spec, "thm1, thm3, d4-clean, dsq-clean, s1, delta or s2")->capture_default_str();
  verify->add_option("--from", va.from);
  verify->add_option("--to", va.to);
  verify->add_flag("--extended", va.extended, "scan up to 5560^2");
  verify->add_option("--k", va.k, "K for dsq-clean (1/4 or 1)");
  verify->add_option("--fine-grid", va.fine_grid_steps, "check x on a grid with this many steps per unit instead");
  verify->callback([&] { run = [&] { return cmd_verify(cfg, va); }; });

  std::string th_spec = "d4-clean", th_k;
  std::int64_t th_limit = 100000;
  auto* threshold = app.add_subcommand("threshold", "find where a clean bound starts to hold");
  threshold->add_option("spec", th_spec, "d4-clean or dsq-clean")->capture_default_str();
  threshold->add_option("--limit", th_limit)->capture_default_str();
  threshold->add_option("--k", th_k, "K for dsq-clean (1/4 or 1)");
  threshold->callback([&] { run = [&] { return cmd_threshold(cfg, th_spec, th_limit, th_k); }; });

  ClassArgs ca;
  auto* cb = app.add_subcommand("class-bound", "class number bound from the Minkowski bound");
  cb->add_option("--nk", ca.nk)->capture_default_str();
  cb->add_option("--r1", ca.r1, "real places (default n_K - 2 r2)");
  cb->add_option("--r2", ca.r2);
  cb->add_option("--disc", ca.disc, "absolute discriminant");
  cb->add_option("--batch", ca.batch, "CSV file with label,n_K,r1,r2,abs_disc");
  cb->callback([&] { run = [&] { return cmd_class_bound(cfg, ca); }; });

  std::vector<double> cmp_xs{2, 10, 100, 1e3, 1e4, 1e5, 1e6};
  auto* compare = app.add_subcommand("compare", "compare with earlier bounds");
  compare->add_option("x", cmp_xs, "abscissae")->capture_default_str();
  compare->callback([&] { run = [&] { return cmd_compare(cfg, cmp_xs); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    // An explicit --precision wins over the environment.
    if (const char* env = std::getenv("DIVISUM_PRECISION"); env && precision_opt->count() == 0) {
      std::size_t used = 0;
      int bits = 0;
      try {
        bits = std::stoi(env, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used == 0 || env[used] != '\0' || bits < 64 || bits > kMaxPrecision)
        throw Error(std::string("DIVISUM_PRECISION must be an integer in [64, ") + std::to_string(kMaxPrecision) +
                    "], got '" + env + "'");
      cfg.precision = bits;
    }
    return run();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
