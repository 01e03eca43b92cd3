#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "divisum/enclosure.hpp"

namespace divisum {

/// Exact rational parameter (alpha = 397/1000 and friends).
struct Rational {
  std::int64_t num;
  std::int64_t den;

  Enclosure enclose(int precision) const { return Enclosure::rational(num, den, precision); }
  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  std::string to_string() const;
  bool operator==(const Rational&) const = default;
};

/// Stieltjes constant gamma_k, k in {0, 1, 2} (gamma_0 is Euler's constant).
Enclosure stieltjes(int k, int precision = kDefaultPrecision);

/// zeta^{(order)}(2) = (-1)^order sum_n (log n)^order / n^2, order in 0..3.
Enclosure zeta_derivative_at_2(int order, int precision = kDefaultPrecision);

/// zeta(num/den) for a rational argument > 1.
Enclosure zeta_value(std::int64_t num, std::int64_t den, int precision = kDefaultPrecision);

/// Every constant used by the main terms and error envelopes.
struct ConstantsTable {
  int precision = kDefaultPrecision;

  Enclosure gamma, gamma1, gamma2;
  Enclosure zeta_d1_at2, zeta_d2_at2, zeta_d3_at2;
  Enclosure zeta_3half, zeta_3;
  Enclosure pi;

  Enclosure C1, C2, C3, C4;
  Enclosure D1, D2, D3, D4;
  Enclosure H1, H1p, H1pp, H1ppp;
  Enclosure Hstar_34;

  Rational alpha{397, 1000};
  std::int64_t x0 = 5560;
  Rational c{1001, 1000};
  Enclosure F1;
  Enclosure beta;

  Rational env1_coeff{448, 100};
  Rational env2_coeff_a{973, 100};
  Rational env2_coeff_b{73, 100};
  std::vector<std::pair<Rational, std::int64_t>> K_thresholds{{{1, 4}, 433}, {{1, 1}, 7}};
  std::pair<Rational, std::int64_t> d4_clean{{1, 3}, 193};
};

/// Builds the table at `precision` bits; throws PrecisionError if a series
/// cannot reach its radius target.
ConstantsTable build_constants_table(int precision = kDefaultPrecision);

/// One printable line of the table.
struct ConstantEntry {
  std::string name;
  Enclosure value;
  std::string formula;
  bool exact;
};

std::vector<ConstantEntry> constant_entries(const ConstantsTable& table);

}  // namespace divisum
