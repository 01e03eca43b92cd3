#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "divisum/arithmetic_table.hpp"
#include "divisum/constants.hpp"
#include "divisum/enclosure.hpp"

namespace divisum {

enum class TheoremKind { D4_FULL, D4_CLEAN, DSQ_FULL, DSQ_CLEAN };

/// coeff * x^x_power * (log x)^log_power
struct EnvelopeTerm {
  Rational coeff;
  Rational x_power;
  int log_power;
};

/// One verifiable claim: |sum_{n <= x} f(n) - main(x)| <= envelope(x) for
/// FULL kinds, sum_{n <= x} f(n) <= envelope(x) for CLEAN kinds, claimed
/// from `threshold` on.
struct TheoremSpec {
  std::string name;
  TheoremKind kind;
  FunctionKind summatory_kind;
  /// Coefficients of x log^3 x, x log^2 x, x log x, x (empty for CLEAN kinds).
  std::vector<Enclosure> main_term;
  std::vector<EnvelopeTerm> envelope;
  std::int64_t threshold;

  bool is_clean() const { return kind == TheoremKind::D4_CLEAN || kind == TheoremKind::DSQ_CLEAN; }
};

/// Builds the spec for a theorem kind. CLEAN kinds take the constant K
/// (D4_CLEAN defaults to 1/3; DSQ_CLEAN must name one of the tabulated K).
TheoremSpec theorem_spec(TheoremKind kind, const ConstantsTable& table,
                         std::optional<Rational> K = std::nullopt);

/// Parses "d4-full", "d4-clean", "dsq-full", "dsq-clean" (also "thm1", "thm3").
TheoremKind parse_theorem_kind(const std::string& name);

Enclosure main_term_d4(const Enclosure& x, const ConstantsTable& table);
Enclosure main_term_dsq(const Enclosure& x, const ConstantsTable& table);
/// The spec's main-term polynomial; zero for CLEAN kinds.
Enclosure main_term(const TheoremSpec& spec, const Enclosure& x);
Enclosure envelope(const TheoremSpec& spec, const Enclosure& x);

/// Delta(x) = sum_{n <= x} d(n) - x (log x + 2 gamma - 1) at an integer x.
Enclosure delta_of_x(std::int64_t x, const ConstantsTable& table);
/// The same with an explicit step value: running_sum - x (log x + 2 gamma - 1).
Enclosure delta_at(std::int64_t running_sum, const Enclosure& x, const ConstantsTable& table);

/// Finite sums over n <= x of d(n)/n, d(n) log(n)/n and d(n)/sqrt(n).
Enclosure S1_exact(std::int64_t x, int precision = kDefaultPrecision);
Enclosure S2_exact(std::int64_t x, int precision = kDefaultPrecision);
Enclosure S3_exact(std::int64_t x, int precision = kDefaultPrecision);

/// Main term and error radius of an asymptotic expansion. `certified` is
/// false outside the range where the radius is claimed.
struct ApproxResult {
  Enclosure main;
  Enclosure radius;
  bool certified;
};

ApproxResult S1_approx(const Enclosure& x, const ConstantsTable& table);
ApproxResult S2_approx(const Enclosure& x, const ConstantsTable& table);
ApproxResult S3_approx(const Enclosure& x, const ConstantsTable& table);

enum class PriorBound { HALL, LOUNGE, GAMES, KITCHEN };

PriorBound parse_prior_bound(const std::string& name);
std::string to_string(PriorBound name);

/// Earlier upper bounds for sum d_k (HALL, LOUNGE, GAMES) and sum d^2 (KITCHEN,
/// the 2 x log^3 x form). Throws DomainError outside each stated range.
Enclosure prior_bound(PriorBound name, const Enclosure& x, int k, const ConstantsTable& table);

}  // namespace divisum
