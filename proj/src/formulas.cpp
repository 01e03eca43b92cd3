#include "divisum/formulas.hpp"

#include <algorithm>

#include "divisum/errors.hpp"
#include "divisum/summatory.hpp"

namespace divisum {

namespace {

void require_at_least_one(const Enclosure& x) {
  if (x.certainly_lt(Enclosure(1, x.precision())) || !x.certainly_positive())
    throw DomainError("formula evaluated below x = 1");
}

// x (c0 L^3 + c1 L^2 + c2 L + c3) by Horner.
Enclosure cubic_log_main_term(const std::vector<Enclosure>& coef, const Enclosure& x) {
  const Enclosure L = log(x);
  Enclosure acc(x.precision());
  for (const auto& c : coef) acc = acc * L + c;
  return x * acc;
}

template <typename Term>
Enclosure sum_d_terms(std::int64_t x, int precision, Term&& term) {
  if (x < 1) throw DomainError("finite sums need x >= 1");
  Enclosure acc(precision);
  for (std::int64_t lo = 1; lo <= x;) {
    const std::int64_t hi = std::min<std::int64_t>(x + 1, lo + static_cast<std::int64_t>(kDefaultSegmentSize));
    const auto d = tabulate(FunctionKind::D, lo, hi);
    for (std::int64_t n = lo; n < hi; ++n) acc += term(n, d[n]);
    lo = hi;
  }
  return acc;
}

}  // namespace

TheoremKind parse_theorem_kind(const std::string& name) {
  if (name == "d4-full" || name == "thm1") return TheoremKind::D4_FULL;
  if (name == "d4-clean") return TheoremKind::D4_CLEAN;
  if (name == "dsq-full" || name == "thm3") return TheoremKind::DSQ_FULL;
  if (name == "dsq-clean") return TheoremKind::DSQ_CLEAN;
  throw DomainError("unknown theorem '" + name + "'");
}

TheoremSpec theorem_spec(TheoremKind kind, const ConstantsTable& table, std::optional<Rational> K) {
  TheoremSpec spec{.name = {},
                   .kind = kind,
                   .summatory_kind = FunctionKind::D4,
                   .main_term = {},
                   .envelope = {},
                   .threshold = 2};
  switch (kind) {
    case TheoremKind::D4_FULL:
      spec.name = "d4_full";
      spec.main_term = {table.C1, table.C2, table.C3, table.C4};
      spec.envelope = {{table.env1_coeff, {3, 4}, 1}};
      break;
    case TheoremKind::DSQ_FULL:
      spec.name = "dsq_full";
      spec.summatory_kind = FunctionKind::DSQ;
      spec.main_term = {table.D1, table.D2, table.D3, table.D4};
      spec.envelope = {{table.env2_coeff_a, {3, 4}, 1}, {table.env2_coeff_b, {1, 2}, 0}};
      break;
    case TheoremKind::D4_CLEAN: {
      const auto [k, threshold] = table.d4_clean;
      if (K && !(*K == k)) throw DomainError("d4-clean is stated for K = 1/3 only");
      spec.name = "d4_clean";
      spec.envelope = {{k, {1, 1}, 3}};
      spec.threshold = threshold;
      break;
    }
    case TheoremKind::DSQ_CLEAN: {
      if (!K) throw DomainError("dsq-clean needs K (1/4 or 1)");
      auto it = std::find_if(table.K_thresholds.begin(), table.K_thresholds.end(),
                             [&](const auto& entry) { return entry.first == *K; });
      if (it == table.K_thresholds.end())
        throw DomainError("dsq-clean has no stated threshold for K = " + K->to_string());
      spec.name = "dsq_clean_K=" + K->to_string();
      spec.summatory_kind = FunctionKind::DSQ;
      spec.envelope = {{*K, {1, 1}, 3}};
      spec.threshold = it->second;
      break;
    }
  }
  return spec;
}

Enclosure main_term_d4(const Enclosure& x, const ConstantsTable& table) {
  require_at_least_one(x);
  return cubic_log_main_term({table.C1, table.C2, table.C3, table.C4}, x);
}

Enclosure main_term_dsq(const Enclosure& x, const ConstantsTable& table) {
  require_at_least_one(x);
  return cubic_log_main_term({table.D1, table.D2, table.D3, table.D4}, x);
}

Enclosure main_term(const TheoremSpec& spec, const Enclosure& x) {
  require_at_least_one(x);
  if (spec.main_term.empty()) return Enclosure(x.precision());
  return cubic_log_main_term(spec.main_term, x);
}

Enclosure envelope(const TheoremSpec& spec, const Enclosure& x) {
  require_at_least_one(x);
  const int prec = x.precision();
  const Enclosure L = log(x);
  Enclosure acc(prec);
  for (const auto& term : spec.envelope) {
    Enclosure v = term.coeff.enclose(prec) * pow(x, term.x_power.num, term.x_power.den);
    if (term.log_power > 0) v *= pow(L, term.log_power);
    acc += v;
  }
  return acc;
}

Enclosure delta_at(std::int64_t running_sum, const Enclosure& x, const ConstantsTable& table) {
  require_at_least_one(x);
  const int prec = std::max(x.precision(), table.precision);
  const Enclosure two(2, prec);
  const Enclosure one(1, prec);
  return Enclosure(running_sum, prec) - x * (log(x) + two * table.gamma - one);
}

Enclosure delta_of_x(std::int64_t x, const ConstantsTable& table) {
  return delta_at(summatory_d_exact(x).value, Enclosure(x, table.precision), table);
}

Enclosure S1_exact(std::int64_t x, int precision) {
  return sum_d_terms(x, precision, [precision](std::int64_t n, std::int64_t d) {
    return Enclosure::rational(d, n, precision);
  });
}

Enclosure S2_exact(std::int64_t x, int precision) {
  return sum_d_terms(x, precision, [precision](std::int64_t n, std::int64_t d) {
    if (n == 1) return Enclosure(precision);
    const Enclosure ne(n, precision);
    return Enclosure(d, precision) * log(ne) / ne;
  });
}

Enclosure S3_exact(std::int64_t x, int precision) {
  return sum_d_terms(x, precision, [precision](std::int64_t n, std::int64_t d) {
    return Enclosure(d, precision) / sqrt(Enclosure(n, precision));
  });
}

ApproxResult S1_approx(const Enclosure& x, const ConstantsTable& table) {
  require_at_least_one(x);
  const int prec = std::max(x.precision(), table.precision);
  const Enclosure L = log(x);
  const Enclosure& g = table.gamma;
  Enclosure main = Enclosure::rational(1, 2, prec) * pow(L, 2) + Enclosure(2, prec) * g * L +
                   pow(g, 2) - Enclosure(2, prec) * table.gamma1;
  Enclosure radius = table.c.enclose(prec) / sqrt(x);
  return {std::move(main), std::move(radius), Enclosure(2, prec).certainly_le(x)};
}

ApproxResult S2_approx(const Enclosure& x, const ConstantsTable& table) {
  require_at_least_one(x);
  const int prec = std::max(x.precision(), table.precision);
  const Enclosure L = log(x);
  const Enclosure& g = table.gamma;
  Enclosure main = pow(L, 3) / Enclosure(3, prec) + g * pow(L, 2) +
                   Enclosure(2, prec) * g * table.gamma1 - table.gamma2;
  const Enclosure alpha = table.alpha.enclose(prec);
  const Enclosure x0(table.x0, prec);
  Enclosure radius = alpha * (Enclosure(3, prec) + Enclosure(2, prec) / log(x0)) * L / sqrt(x);
  return {std::move(main), std::move(radius), x0.certainly_le(x)};
}

ApproxResult S3_approx(const Enclosure& x, const ConstantsTable& table) {
  require_at_least_one(x);
  const int prec = std::max(x.precision(), table.precision);
  const Enclosure L = log(x);
  const Enclosure root = sqrt(x);
  Enclosure main = Enclosure(2, prec) * root * L +
                   Enclosure(4, prec) * (table.gamma - Enclosure(1, prec)) * root;
  Enclosure radius = table.beta * L;
  return {std::move(main), std::move(radius), Enclosure(table.x0, prec).certainly_le(x)};
}

PriorBound parse_prior_bound(const std::string& name) {
  if (name == "hall") return PriorBound::HALL;
  if (name == "lounge") return PriorBound::LOUNGE;
  if (name == "games") return PriorBound::GAMES;
  if (name == "kitchen") return PriorBound::KITCHEN;
  throw DomainError("unknown prior bound '" + name + "'");
}

std::string to_string(PriorBound name) {
  switch (name) {
    case PriorBound::HALL: return "hall";
    case PriorBound::LOUNGE: return "lounge";
    case PriorBound::GAMES: return "games";
    case PriorBound::KITCHEN: return "kitchen";
  }
  return "?";
}

Enclosure prior_bound(PriorBound name, const Enclosure& x, int k, const ConstantsTable& table) {
  require_at_least_one(x);
  const int prec = std::max(x.precision(), table.precision);
  const Enclosure L = log(x);
  if (name != PriorBound::KITCHEN && k < 2) throw DomainError("prior bounds need k >= 2");
  switch (name) {
    case PriorBound::HALL:
      return x * pow(L + table.gamma + Enclosure(1, prec) / x, k - 1);
    case PriorBound::LOUNGE: {
      std::int64_t fact = 1;
      for (int i = 2; i < k; ++i) fact *= i;
      return x / Enclosure(fact, prec) * pow(L + Enclosure(k - 1, prec), k - 1);
    }
    case PriorBound::GAMES:
      if (x.certainly_lt(Enclosure(6, prec)) || !Enclosure(6, prec).certainly_le(x))
        throw DomainError("the 2 x (log x)^(k-1) bound is stated for x >= 6");
      return Enclosure(2, prec) * x * pow(L, k - 1);
    case PriorBound::KITCHEN:
      return x * pow(L + Enclosure(1, prec), 3);
  }
  throw DomainError("unknown prior bound");
}

}  // namespace divisum
