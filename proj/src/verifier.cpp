#include "divisum/verifier.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <functional>
#include <thread>

#include "divisum/errors.hpp"
#include "divisum/int_math.hpp"
#include "divisum/summatory.hpp"

namespace divisum {

namespace {

// The double-precision pass only accepts a check point when the slack
// exceeds this fraction of the magnitudes involved. That is many orders above
// the rounding of a few libm calls and additions, so anything it accepts
// would also pass in enclosure arithmetic. Everything else, and every
// violation, is decided in enclosure arithmetic.
constexpr double kFastRelativeMargin = 1e-9;

struct FastEval {
  double lhs;
  double rhs;
  double scale;
};

using ExactEval = std::function<std::pair<Enclosure, Enclosure>(const ConstantsTable&, int)>;

enum class Outcome { PASS, FAIL, INDETERMINATE };

struct Decision {
  Outcome outcome = Outcome::PASS;
  std::optional<Enclosure> rhs;
  std::int64_t escalations = 0;
};

Decision decide_exact(const ExactEval& exact, ConstantsCache& constants) {
  Decision d;
  for (int prec = constants.base_precision();; prec *= 2) {
    auto [lhs, rhs] = exact(constants.at(prec), prec);
    if (lhs.certainly_le(rhs)) {
      d.outcome = Outcome::PASS;
      return d;
    }
    if (rhs.certainly_lt(lhs)) {
      d.outcome = Outcome::FAIL;
      d.rhs = std::move(rhs);
      return d;
    }
    if (prec * 2 > kMaxPrecision) {
      d.outcome = Outcome::INDETERMINATE;
      d.rhs = std::move(rhs);
      return d;
    }
    ++d.escalations;
  }
}

Decision decide(const FastEval& fast, double extra_error, const ExactEval& exact,
                ConstantsCache& constants) {
  if (fast.rhs - fast.lhs > extra_error + kFastRelativeMargin * fast.scale) return {};
  return decide_exact(exact, constants);
}

class Recorder {
 public:
  Recorder(VerificationReport& report, std::size_t cap) : report_(report), cap_(cap) {}

  void record(const CheckPoint& at, double x, double ratio, Decision&& decision,
              const std::string& lhs) {
    ++report_.checked;
    if (ratio > report_.max_ratio || first_) {
      report_.max_ratio = ratio;
      report_.max_ratio_at = at;
      first_ = false;
    }
    report_.precision_escalations += decision.escalations;
    if (decision.outcome == Outcome::INDETERMINATE) ++report_.indeterminate;
    if (decision.outcome != Outcome::FAIL) return;
    report_.last_violation = at;
    if (report_.violations.size() < cap_)
      report_.violations.push_back({at, x, lhs, std::move(*decision.rhs)});
    else
      ++report_.violations_dropped;
  }

 private:
  VerificationReport& report_;
  std::size_t cap_;
  bool first_ = true;
};

double point_x(const CheckPoint& at) {
  return static_cast<double>(at.side == Side::AT ? at.n : at.n + 1);
}

std::int64_t point_x_int(const CheckPoint& at) { return at.side == Side::AT ? at.n : at.n + 1; }

// Check rule for step functions built from integer running sums.
class IntegerRule {
 public:
  virtual ~IntegerRule() = default;
  virtual FastEval fast(std::int64_t sum, double x) const = 0;
  virtual std::pair<Enclosure, Enclosure> exact(std::int64_t sum, const Enclosure& x,
                                                const ConstantsTable& table) const = 0;
};

class EnvelopeRule final : public IntegerRule {
 public:
  explicit EnvelopeRule(const TheoremSpec& spec) : spec_(spec) {
    for (const auto& c : spec.main_term) coef_.push_back(c.mid_double());
  }

  FastEval fast(std::int64_t sum, double x) const override {
    const double L = std::log(x);
    double main = 0.0;
    for (double c : coef_) main = main * L + c;
    main *= x;
    double env = 0.0;
    for (const auto& t : spec_.envelope)
      env += t.coeff.to_double() * std::pow(x, t.x_power.to_double()) * std::pow(L, t.log_power);
    const auto s = static_cast<double>(sum);
    const double lhs = spec_.is_clean() ? s : std::abs(s - main);
    return {lhs, env, std::abs(s) + std::abs(main) + env};
  }

  std::pair<Enclosure, Enclosure> exact(std::int64_t sum, const Enclosure& x,
                                        const ConstantsTable& table) const override {
    const TheoremSpec spec = spec_at(table);
    const Enclosure s(sum, x.precision());
    Enclosure lhs = spec.is_clean() ? s : abs(s - main_term(spec, x));
    return {std::move(lhs), envelope(spec, x)};
  }

  TheoremSpec spec_at(const ConstantsTable& table) const {
    std::optional<Rational> K;
    if (spec_.is_clean()) K = spec_.envelope.front().coeff;
    return theorem_spec(spec_.kind, table, K);
  }

 private:
  const TheoremSpec& spec_;
  std::vector<double> coef_;
};

class DeltaRule final : public IntegerRule {
 public:
  explicit DeltaRule(const ConstantsTable& table)
      : gamma_(table.gamma.mid_double()), alpha_(table.alpha.to_double()) {}

  FastEval fast(std::int64_t sum, double x) const override {
    const double main = x * (std::log(x) + 2.0 * gamma_ - 1.0);
    const auto s = static_cast<double>(sum);
    const double rhs = alpha_ * std::sqrt(x);
    return {std::abs(s - main), rhs, std::abs(s) + std::abs(main) + rhs};
  }

  std::pair<Enclosure, Enclosure> exact(std::int64_t sum, const Enclosure& x,
                                        const ConstantsTable& table) const override {
    return {abs(delta_at(sum, x, table)), table.alpha.enclose(x.precision()) * sqrt(x)};
  }

 private:
  double gamma_;
  double alpha_;
};

VerificationReport empty_report(const std::string& name, std::int64_t from, std::int64_t to) {
  VerificationReport r;
  r.spec_name = name;
  r.from = from;
  r.to = to;
  r.max_ratio_at = {from, Side::AT};
  return r;
}

// Runs job(i) for i in [0, count) on `workers` threads; results in index order.
std::vector<VerificationReport> run_jobs(std::size_t count, unsigned workers,
                                         const std::function<VerificationReport(std::size_t)>& job) {
  std::vector<VerificationReport> results(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        results[i] = job(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(count)));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  return results;
}

VerificationReport scan_integer_sums(const std::string& name, FunctionKind kind,
                                     const IntegerRule& rule, std::int64_t from, std::int64_t to,
                                     ConstantsCache& constants, const ScanOptions& options) {
  if (from < 2 || to < from)
    throw DomainError("scan range must satisfy 2 <= from <= to");
  const auto started = std::chrono::steady_clock::now();
  const auto seg = static_cast<std::int64_t>(options.segment_size);
  // Every check point needs the sum at n only; x -> (n+1)^- evaluates the
  // continuous side at n + 1.
  const auto count = static_cast<std::size_t>((to - from) / seg + 1);
  constants.at(constants.base_precision());

  auto job = [&](std::size_t i) {
    const std::int64_t lo = from + static_cast<std::int64_t>(i) * seg;
    const std::int64_t hi = std::min(to, lo + seg - 1);
    VerificationReport report = empty_report(name, lo, hi);
    Recorder recorder(report, options.max_violations);
    std::int64_t running =
        lo > 1 ? summatory_exact(kind, lo - 1, options.segment_size).value : 0;
    const auto table = tabulate(kind, lo, hi + 1, options.segment_size);
    for (std::int64_t n = lo; n <= hi; ++n) {
      running = checked_add(running, table[n]);
      for (Side side : {Side::AT, Side::LEFT_LIMIT}) {
        const CheckPoint at{n, side};
        const double x = point_x(at);
        const FastEval fe = rule.fast(running, x);
        const std::int64_t sum = running;
        Decision d = decide(fe, 0.0,
                            [&](const ConstantsTable& t, int prec) {
                              return rule.exact(sum, Enclosure(point_x_int(at), prec), t);
                            },
                            constants);
        recorder.record(at, x, fe.rhs > 0 ? fe.lhs / fe.rhs : INFINITY, std::move(d),
                        std::to_string(running));
      }
    }
    if (running != summatory_exact(kind, hi, options.segment_size).value)
      throw Error("streamed running sum disagrees with the exact identity at " +
                  std::to_string(hi));
    return report;
  };

  auto parts = run_jobs(count, options.workers, job);
  VerificationReport out = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i)
    out = merge_reports(out, parts[i], options.max_violations);
  out.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return out;
}

}  // namespace

std::string to_string(Side side) { return side == Side::AT ? "at" : "left_limit"; }

VerificationReport merge_reports(const VerificationReport& a, const VerificationReport& b,
                                 std::size_t cap) {
  if (b.from != a.to + 1) throw DomainError("merge_reports needs adjacent ranges");
  VerificationReport out = a;
  out.to = b.to;
  out.checked += b.checked;
  out.violations_dropped += b.violations_dropped;
  for (const auto& v : b.violations) {
    if (out.violations.size() < cap)
      out.violations.push_back(v);
    else
      ++out.violations_dropped;
  }
  if (b.max_ratio > a.max_ratio) {
    out.max_ratio = b.max_ratio;
    out.max_ratio_at = b.max_ratio_at;
  }
  if (b.last_violation) out.last_violation = b.last_violation;
  out.precision_escalations += b.precision_escalations;
  out.indeterminate += b.indeterminate;
  out.wall_time += b.wall_time;
  return out;
}

ConstantsCache::ConstantsCache(int base_precision) : base_(base_precision) {
  if (base_precision < 64) throw PrecisionError("precision must be at least 64 bits");
}

const ConstantsTable& ConstantsCache::at(int precision) {
  std::lock_guard lock(mutex_);
  auto& slot = tables_[precision];
  if (!slot) slot = std::make_unique<ConstantsTable>(build_constants_table(precision));
  return *slot;
}

VerificationReport verify_envelope(const TheoremSpec& spec, std::int64_t from, std::int64_t to,
                                   ConstantsCache& constants, const ScanOptions& options) {
  const EnvelopeRule rule(spec);
  return scan_integer_sums(spec.name, spec.summatory_kind, rule, from, to, constants, options);
}

VerificationReport verify_fine_grid(const TheoremSpec& spec, std::int64_t lo, std::int64_t hi,
                                    std::int64_t steps_per_unit, ConstantsCache& constants,
                                    const ScanOptions& options) {
  if (lo < 1 || hi < lo || steps_per_unit < 1) throw DomainError("bad fine-grid range");
  const auto started = std::chrono::steady_clock::now();
  const EnvelopeRule rule(spec);
  VerificationReport report = empty_report(spec.name + "_fine_grid", lo, hi);
  Recorder recorder(report, options.max_violations);
  const std::int64_t last = (hi - lo) * steps_per_unit;
  std::int64_t current_n = 0;
  std::int64_t sum = 0;
  for (std::int64_t i = 0; i <= last; ++i) {
    const std::int64_t num = lo * steps_per_unit + i;
    const std::int64_t n = num / steps_per_unit;
    if (n != current_n) {
      sum = summatory_exact(spec.summatory_kind, n, options.segment_size).value;
      current_n = n;
    }
    const double x = static_cast<double>(num) / static_cast<double>(steps_per_unit);
    const FastEval fe = rule.fast(sum, x);
    Decision d = decide_exact(
        [&](const ConstantsTable& t, int prec) {
          return rule.exact(sum, Enclosure::rational(num, steps_per_unit, prec), t);
        },
        constants);
    recorder.record({n, Side::AT}, x, fe.lhs / fe.rhs, std::move(d), std::to_string(sum));
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

ThresholdResult find_threshold(const TheoremSpec& spec, std::int64_t scan_limit,
                               ConstantsCache& constants, const ScanOptions& options) {
  if (scan_limit < spec.threshold + 1)
    throw DomainError("scan limit must exceed the claimed threshold");
  ScanOptions opts = options;
  const VerificationReport report = verify_envelope(spec, 2, scan_limit, constants, opts);

  ThresholdResult out;
  out.spec_name = spec.name;
  out.scan_limit = scan_limit;
  out.violations_found = report.violation_count();
  out.threshold = 2;
  if (!report.last_violation) return out;

  const std::int64_t n = report.last_violation->n;
  out.last_violation = n;
  out.threshold = n + 1;

  // The step value on [n, n+1) is sum(n); bisect on the continuous side.
  const EnvelopeRule rule(spec);
  const std::int64_t sum = summatory_exact(spec.summatory_kind, n, opts.segment_size).value;
  auto slack = [&](double x) {
    const FastEval fe = rule.fast(sum, x);
    return fe.rhs - fe.lhs;
  };
  double a = static_cast<double>(n);
  double b = static_cast<double>(n + 1);
  if (slack(a) < 0 && slack(b) >= 0) {
    while (b - a > 1e-7) {
      const double m = 0.5 * (a + b);
      (slack(m) < 0 ? a : b) = m;
    }
    out.crossing = b;
  }
  return out;
}

VerificationReport verify_s1_constant(std::int64_t to, ConstantsCache& constants,
                                      const ScanOptions& options) {
  if (to < 2) throw DomainError("S1 check needs to >= 2");
  const auto started = std::chrono::steady_clock::now();
  const ConstantsTable& base = constants.at(constants.base_precision());
  const double g = base.gamma.mid_double();
  const double g1 = base.gamma1.mid_double();
  const double c = base.c.to_double();
  constexpr double kUnit = 0x1p-53;

  VerificationReport report = empty_report("s1_constant", 2, to);
  Recorder recorder(report, options.max_violations);

  double sum = 0.0;
  double err = 0.0;  // bound on |sum - S1(n)| from rounding of the running sum
  std::int64_t n = 1;
  for (std::int64_t lo = 1; lo <= to;) {
    const std::int64_t hi =
        std::min<std::int64_t>(to + 1, lo + static_cast<std::int64_t>(options.segment_size));
    const auto d = tabulate(FunctionKind::D, lo, hi, options.segment_size);
    for (n = lo; n < hi; ++n) {
      const double term = static_cast<double>(d[n]) / static_cast<double>(n);
      sum += term;
      err += (std::abs(term) + std::abs(sum)) * kUnit;
      if (n < 2) continue;
      for (Side side : {Side::AT, Side::LEFT_LIMIT}) {
        const CheckPoint at{n, side};
        const double x = point_x(at);
        const double L = std::log(x);
        const double main = 0.5 * L * L + 2.0 * g * L + g * g - 2.0 * g1;
        const double rhs = c / std::sqrt(x);
        const FastEval fe{std::abs(sum - main), rhs, std::abs(sum) + std::abs(main) + rhs};
        const std::int64_t upto = n;
        Decision dec = decide(
            fe, err,
            [&](const ConstantsTable& t, int prec) {
              const Enclosure xe(point_x_int(at), prec);
              ApproxResult approx = S1_approx(xe, t);
              return std::pair{abs(S1_exact(upto, prec) - approx.main), std::move(approx.radius)};
            },
            constants);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", sum);
        recorder.record(at, x, fe.lhs / fe.rhs, std::move(dec), buf);
      }
    }
    lo = hi;
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

VerificationReport verify_delta_alpha(std::int64_t from, std::int64_t to, ConstantsCache& constants,
                                      const ScanOptions& options) {
  const ConstantsTable& base = constants.at(constants.base_precision());
  if (from < base.x0) throw DomainError("the Delta bound is stated for x >= 5560");
  const DeltaRule rule(base);
  return scan_integer_sums("delta_alpha", FunctionKind::D, rule, from, to, constants, options);
}

VerificationReport verify_s2_expansion(const std::vector<std::int64_t>& points,
                                       ConstantsCache& constants, const ScanOptions& options) {
  std::vector<std::int64_t> xs = points;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  const ConstantsTable& base = constants.at(constants.base_precision());
  if (xs.empty()) return empty_report("s2_expansion", base.x0, base.x0);
  if (xs.front() < base.x0) throw DomainError("S2 radius is stated for x >= 5560");
  const auto started = std::chrono::steady_clock::now();

  const double g = base.gamma.mid_double();
  const double g1 = base.gamma1.mid_double();
  const double g2 = base.gamma2.mid_double();
  const double coef = base.alpha.to_double() * (3.0 + 2.0 / std::log(static_cast<double>(base.x0)));
  constexpr double kUnit = 0x1p-53;

  VerificationReport report = empty_report("s2_expansion", xs.front(), xs.back());
  Recorder recorder(report, options.max_violations);
  double sum = 0.0;
  double err = 0.0;
  std::size_t next = 0;
  const std::int64_t limit = xs.back();
  for (std::int64_t lo = 1; lo <= limit && next < xs.size();) {
    const std::int64_t hi =
        std::min<std::int64_t>(limit + 1, lo + static_cast<std::int64_t>(options.segment_size));
    const auto d = tabulate(FunctionKind::D, lo, hi, options.segment_size);
    for (std::int64_t n = lo; n < hi; ++n) {
      const auto nd = static_cast<double>(n);
      const double term = static_cast<double>(d[n]) * std::log(nd) / nd;
      sum += term;
      // log (assumed within 1 ulp), multiply, divide, then the addition.
      err += 4.0 * std::abs(term) * kUnit + std::abs(sum) * kUnit;
      if (next < xs.size() && xs[next] == n) {
        const double L = std::log(nd);
        const double main = L * L * L / 3.0 + g * L * L + 2.0 * g * g1 - g2;
        const double rhs = coef * L / std::sqrt(nd);
        const FastEval fe{std::abs(sum - main), rhs, std::abs(sum) + std::abs(main) + rhs};
        Decision dec = decide(
            fe, err,
            [&](const ConstantsTable& t, int prec) {
              const Enclosure xe(n, prec);
              ApproxResult approx = S2_approx(xe, t);
              return std::pair{abs(S2_exact(n, prec) - approx.main), std::move(approx.radius)};
            },
            constants);
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g", sum);
        recorder.record({n, Side::AT}, nd, fe.lhs / fe.rhs, std::move(dec), buf);
        ++next;
      }
    }
    lo = hi;
  }
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

VerificationReport convolution_identity_check(std::int64_t limit) {
  if (limit < 1 || limit > 100000) throw DomainError("convolution check needs 1 <= limit <= 1e5");
  const auto started = std::chrono::steady_clock::now();
  const auto N = static_cast<std::size_t>(limit);

  // d by counting divisor pairs, h from mu by trial division.
  std::vector<std::int64_t> d(N + 1, 0), h(N + 1, 0), d4(N + 1, 0), dsq(N + 1, 0);
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t m = a; m <= N; m += a) ++d[m];
  for (std::int64_t m = 1; m * m <= limit; ++m) {
    std::int64_t mu = 1;
    for (std::int64_t r = m; r > 1;) {
      const std::int64_t p = trial_spf(r);
      r /= p;
      if (r % p == 0) {
        mu = 0;
        break;
      }
      mu = -mu;
    }
    h[static_cast<std::size_t>(m * m)] = mu;
  }
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t b = 1; a * b <= N; ++b) d4[a * b] += d[a] * d[b];
  for (std::size_t a = 1; a <= N; ++a)
    for (std::size_t b = 1; a * b <= N; ++b) dsq[a * b] += d4[a] * h[b];

  const auto t4 = tabulate(FunctionKind::D4, 1, limit + 1);
  const auto tsq = tabulate(FunctionKind::DSQ, 1, limit + 1);
  VerificationReport report = empty_report("convolution_identities", 1, limit);
  for (std::int64_t n = 1; n <= limit; ++n) {
    const auto i = static_cast<std::size_t>(n);
    for (auto [brute, tab] : {std::pair{d4[i], t4[n]}, std::pair{dsq[i], tsq[n]}}) {
      ++report.checked;
      if (brute == tab) continue;
      report.last_violation = CheckPoint{n, Side::AT};
      if (report.violations.size() < 100)
        report.violations.push_back({{n, Side::AT}, static_cast<double>(n), std::to_string(brute),
                                     Enclosure(tab, 64)});
      else
        ++report.violations_dropped;
    }
  }
  report.max_ratio = report.violations.empty() ? 0.0 : INFINITY;
  report.wall_time =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::vector<ComparisonRow> compare_prior_bounds(const std::vector<double>& xs,
                                                const ConstantsTable& table) {
  const int prec = table.precision;
  const TheoremSpec d4 = theorem_spec(TheoremKind::D4_FULL, table);
  const TheoremSpec dsq = theorem_spec(TheoremKind::DSQ_FULL, table);
  std::vector<ComparisonRow> rows;
  for (double xv : xs) {
    if (!(xv >= 2.0)) throw DomainError("comparison points must be >= 2");
    const Enclosure x = Enclosure::from_double(xv, prec);
    ComparisonRow row{.x = xv,
                      .exact_d4 = std::nullopt,
                      .new_d4 = main_term(d4, x) + envelope(d4, x),
                      .hall = prior_bound(PriorBound::HALL, x, 4, table),
                      .lounge = prior_bound(PriorBound::LOUNGE, x, 4, table),
                      .games = std::nullopt,
                      .sharper_than_hall_and_lounge = false,
                      .exact_dsq = std::nullopt,
                      .new_dsq = main_term(dsq, x) + envelope(dsq, x),
                      .kitchen = prior_bound(PriorBound::KITCHEN, x, 4, table),
                      .asymptotic_dsq = x * pow(log(x), 3) / pow(table.pi, 2),
                      .kitchen_over_asymptotic = Enclosure(prec)};
    if (xv >= 6.0) row.games = prior_bound(PriorBound::GAMES, x, 4, table);
    row.sharper_than_hall_and_lounge =
        row.new_d4.certainly_lt(row.hall) && row.new_d4.certainly_lt(row.lounge);
    // The 2 x log^3 x form of the d^2 bound against x log^3 x / pi^2.
    row.kitchen_over_asymptotic = Enclosure(2, prec) * x * pow(log(x), 3) / row.asymptotic_dsq;
    if (xv == std::floor(xv) && xv <= 1e8) {
      const auto xi = static_cast<std::int64_t>(xv);
      row.exact_d4 = summatory_d4_exact(xi).value;
      row.exact_dsq = summatory_dsq_exact(xi).value;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace divisum
