#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "divisum/arithmetic_table.hpp"
#include "divisum/constants.hpp"
#include "divisum/formulas.hpp"

namespace divisum {

/// Where a check point sits relative to the integer n: x = n exactly, or
/// x -> (n+1)^- where the step function still has its value at n.
enum class Side { AT, LEFT_LIMIT };

std::string to_string(Side side);

struct CheckPoint {
  std::int64_t n = 0;
  Side side = Side::AT;

  bool operator==(const CheckPoint&) const = default;
  auto operator<=>(const CheckPoint& o) const {
    if (auto c = n <=> o.n; c != 0) return c;
    return static_cast<int>(side) <=> static_cast<int>(o.side);
  }
};

struct Violation {
  CheckPoint at;
  double x;             // abscissa; n + 1 for a left limit
  std::string lhs;      // exact integer, or a decimal for real-valued sums
  Enclosure rhs_bound;  // the bound the lhs had to respect
};

struct VerificationReport {
  std::string spec_name;
  std::int64_t from = 0;
  std::int64_t to = 0;
  std::int64_t checked = 0;
  std::vector<Violation> violations;  // first `cap` in index order
  std::int64_t violations_dropped = 0;
  double max_ratio = 0.0;
  CheckPoint max_ratio_at;
  std::optional<CheckPoint> last_violation;
  std::int64_t precision_escalations = 0;
  std::int64_t indeterminate = 0;
  double wall_time = 0.0;

  std::int64_t violation_count() const {
    return static_cast<std::int64_t>(violations.size()) + violations_dropped;
  }
  bool passed() const { return violation_count() == 0 && indeterminate == 0; }
};

/// Combines reports of adjacent ranges (b.from == a.to + 1). Associative;
/// keeps at most `cap` violations in index order.
VerificationReport merge_reports(const VerificationReport& a, const VerificationReport& b,
                                 std::size_t cap);

struct ScanOptions {
  int precision = kDefaultPrecision;
  std::size_t segment_size = kDefaultSegmentSize;
  unsigned workers = 1;
  std::size_t max_violations = 100;
};

/// Constants tables at the working precision and its doublings, built on
/// first use and shared by every worker.
class ConstantsCache {
 public:
  explicit ConstantsCache(int base_precision = kDefaultPrecision);
  const ConstantsTable& at(int precision);
  int base_precision() const { return base_; }

 private:
  int base_;
  std::mutex mutex_;
  std::map<int, std::unique_ptr<ConstantsTable>> tables_;
};

/// Checks the spec at x = n and x -> (n+1)^- for every integer n in
/// [from, to]. Running sums are streamed one segment at a time; each segment
/// starts from the identity-based exact sum at lo - 1 and is cross-checked
/// against it at hi - 1.
VerificationReport verify_envelope(const TheoremSpec& spec, std::int64_t from, std::int64_t to,
                                   ConstantsCache& constants, const ScanOptions& options = {});

/// Checks the spec on x = lo + i*step_num/step_den for lo <= x <= hi, with
/// every point evaluated in enclosure arithmetic. Covers the range below 3
/// where the main term and envelope are not both monotone.
VerificationReport verify_fine_grid(const TheoremSpec& spec, std::int64_t lo, std::int64_t hi,
                                    std::int64_t steps_per_unit, ConstantsCache& constants,
                                    const ScanOptions& options = {});

struct ThresholdResult {
  std::string spec_name;
  std::int64_t scan_limit = 0;
  std::int64_t threshold = 0;
  std::optional<std::int64_t> last_violation;
  /// Real abscissa in [last_violation, last_violation + 1] where the bound
  /// starts to hold, located by bisection to 1e-6.
  std::optional<double> crossing;
  std::int64_t violations_found = 0;
};

ThresholdResult find_threshold(const TheoremSpec& spec, std::int64_t scan_limit,
                               ConstantsCache& constants, const ScanOptions& options = {});

/// |S1(x) - (1/2 log^2 x + 2 gamma log x + gamma^2 - 2 gamma1)| <= c x^{-1/2}
/// on both one-sided limits of every integer in [2, to].
VerificationReport verify_s1_constant(std::int64_t to, ConstantsCache& constants,
                                      const ScanOptions& options = {});

/// |Delta(x)| <= alpha x^{1/2} on both one-sided limits of every integer in [from, to].
VerificationReport verify_delta_alpha(std::int64_t from, std::int64_t to, ConstantsCache& constants,
                                      const ScanOptions& options = {});

/// |S2(x) - main| <= alpha (3 + 2/log x0) x^{-1/2} log x at each listed integer x >= x0.
VerificationReport verify_s2_expansion(const std::vector<std::int64_t>& points,
                                       ConstantsCache& constants, const ScanOptions& options = {});

/// d4 = d * d and d^2 = d4 * h against the sieve for every n <= limit, with
/// both sides built by brute-force divisor-pair enumeration.
VerificationReport convolution_identity_check(std::int64_t limit);

struct ComparisonRow {
  double x = 0;
  std::optional<std::int64_t> exact_d4;  // present when x is an integer within reach
  Enclosure new_d4;                      // main_term_d4 + envelope, upper end used
  Enclosure hall;
  Enclosure lounge;
  std::optional<Enclosure> games;  // x >= 6 only
  bool sharper_than_hall_and_lounge = false;
  std::optional<std::int64_t> exact_dsq;
  Enclosure new_dsq;
  Enclosure kitchen;
  Enclosure asymptotic_dsq;    // x log^3 x / pi^2
  Enclosure kitchen_over_asymptotic;
};

std::vector<ComparisonRow> compare_prior_bounds(const std::vector<double>& xs,
                                                const ConstantsTable& table);

}  // namespace divisum
