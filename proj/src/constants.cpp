#include "divisum/constants.hpp"

#include <gmpxx.h>

#include <cmath>
#include <mutex>
#include <string>

#include "divisum/errors.hpp"

namespace divisum {

namespace {

constexpr int kGuardBits = 64;

Enclosure enclose_q(const mpq_class& q, int precision) {
  // Bernoulli numerators and denominators stay far below 2^63 for the orders used.
  if (!q.get_num().fits_slong_p() || !q.get_den().fits_slong_p()) {
    Enclosure num = Enclosure::decimal(q.get_num().get_str(), precision);
    Enclosure den = Enclosure::decimal(q.get_den().get_str(), precision);
    return num / den;
  }
  return Enclosure::rational(q.get_num().get_si(), q.get_den().get_si(), precision);
}

// B_0 .. B_max from sum_{k=0}^{m} binom(m+1, k) B_k = 0.
const std::vector<mpq_class>& bernoulli_numbers(int max_index) {
  static std::mutex mutex;
  static std::vector<mpq_class> cache{mpq_class(1)};
  std::lock_guard lock(mutex);
  while (static_cast<int>(cache.size()) <= max_index) {
    const int m = static_cast<int>(cache.size());
    mpq_class acc(0);
    mpz_class binom(1);  // binom(m+1, k)
    for (int k = 0; k < m; ++k) {
      acc += binom * cache[k];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class b = -acc / mpq_class(m + 1);
    b.canonicalize();
    cache.push_back(b);
  }
  return cache;
}

mpq_class factorial_q(int n) {
  mpz_class f(1);
  for (int i = 2; i <= n; ++i) f *= i;
  return mpq_class(f);
}

// sum_{n >= 1} (log n)^k / n^s for s > 1, or for s = 1 the Stieltjes limit
//   lim_{M -> inf} sum_{n <= M} (log n)^k / n - (log M)^{k+1} / (k+1).
//
// The head n < N is summed directly. The tail n >= N uses Euler-Maclaurin
// with `terms` Bernoulli corrections,
//   sum_{n >= N} f(n) = int_N^inf f + f(N)/2 - sum_{j<=terms} B_2j/(2j)! f^{(2j-1)}(N) + R,
// and the remainder is bounded by sup|periodic B_2p|/(2p)! * int_N^inf |f^{(2p)}|.
// The periodic Bernoulli function of even order peaks at |B_2p|. Writing
// f^{(m)}(x) = x^{-s-m} P_m(log x) with P_0 = L^k and
// P_{m+1} = -(s+m) P_m + P_m', the integral of |f^{(2p)}| is bounded
// termwise by sum_j |coef_j| int_N^inf x^{-s-2p} (log x)^j dx, which has the
// closed form N^{-t} sum_{i<=j} j!/(j-i)! (log N)^{j-i} / t^{i+1}, t = s+2p-1.
// No sign or monotonicity assumption on f^{(2p)} is needed.
struct SeriesResult {
  Enclosure value;
  Enclosure remainder;
};

// int_N^inf x^{-t-1} (log x)^j dx
Enclosure log_power_tail_integral(int j, const Enclosure& logN, const Enclosure& N_pow_minus_t,
                                  const Enclosure& t) {
  const int prec = logN.precision();
  Enclosure sum(prec);
  Enclosure falling(1, prec);  // j!/(j-i)!
  Enclosure t_pow = t;         // t^{i+1}
  for (int i = 0; i <= j; ++i) {
    sum += falling * pow(logN, j - i) / t_pow;
    falling *= Enclosure(j - i, prec);
    t_pow *= t;
  }
  return N_pow_minus_t * sum;
}

SeriesResult log_dirichlet_series(int k, std::int64_t s_num, std::int64_t s_den, std::int64_t N,
                                  int terms, int prec) {
  const Enclosure s = Enclosure::rational(s_num, s_den, prec);
  const Enclosure one(1, prec);
  const bool divergent = s_num == s_den;

  Enclosure head(prec);
  for (std::int64_t n = 2; n < N; ++n) {
    const Enclosure ne(n, prec);
    head += pow(log(ne), k) * pow(ne, -s_num, s_den);
  }
  if (k == 0) head += one;

  const Enclosure Ne(N, prec);
  const Enclosure L = log(Ne);
  Enclosure value = head;
  if (divergent) {
    value -= pow(L, k + 1) / Enclosure(k + 1, prec);
  } else {
    const Enclosure t = s - one;
    value += log_power_tail_integral(k, L, pow(Ne, -(s_num - s_den), s_den), t);
  }

  // Coefficients of P_m in powers of L.
  std::vector<Enclosure> coef(static_cast<std::size_t>(k + 1), Enclosure(prec));
  coef[static_cast<std::size_t>(k)] = one;
  auto eval_derivative = [&](int m) {
    Enclosure p(prec);
    for (int j = k; j >= 0; --j) p = p * L + coef[static_cast<std::size_t>(j)];
    return p * pow(Ne, -(s_num + m * s_den), s_den);
  };
  auto advance = [&](int m) {
    const Enclosure factor = s + Enclosure(m, prec);
    for (int j = 0; j <= k; ++j) {
      Enclosure next = -(factor * coef[static_cast<std::size_t>(j)]);
      if (j < k) next += Enclosure(j + 1, prec) * coef[static_cast<std::size_t>(j + 1)];
      coef[static_cast<std::size_t>(j)] = next;
    }
  };

  value += eval_derivative(0) / Enclosure(2, prec);
  const auto& bern = bernoulli_numbers(2 * terms);
  int order = 0;
  for (int j = 1; j <= terms; ++j) {
    while (order < 2 * j - 1) advance(order++);
    const Enclosure b = enclose_q(bern[2 * j] / factorial_q(2 * j), prec);
    value -= b * eval_derivative(2 * j - 1);
  }
  while (order < 2 * terms) advance(order++);

  const Enclosure t = s + Enclosure(2 * terms - 1, prec);
  const Enclosure N_pow = pow(Ne, -(s_num + (2 * terms - 1) * s_den), s_den);
  Enclosure integral(prec);
  for (int j = 0; j <= k; ++j)
    integral += abs(coef[static_cast<std::size_t>(j)]) * log_power_tail_integral(j, L, N_pow, t);
  mpq_class bq = bern[2 * terms] / factorial_q(2 * terms);
  bq = abs(bq);
  Enclosure remainder = enclose_q(bq, prec) * integral;
  return {value.widened(remainder), remainder};
}

Enclosure adaptive_series(int k, std::int64_t s_num, std::int64_t s_den, int precision) {
  if (precision < 64) throw PrecisionError("precision must be at least 64 bits");
  const int prec = precision + kGuardBits;
  Enclosure target(1, prec);
  target = target / pow(Enclosure(2, prec), precision - 32);

  for (std::int64_t N = 32; N <= (std::int64_t{1} << 14); N *= 2) {
    // Smallest correction order whose size estimate (2p)!/(2 pi N)^{2p}
    // clears the target with margin; the rigorous bound decides.
    const double log_target = -(precision - 32) * std::log(2.0) - 20.0;
    int terms = 0;
    double log_term = 0.0;
    for (int p = 1; p < 4 * precision; ++p) {
      log_term += std::log((2.0 * p - 1) * (2.0 * p)) - 2.0 * std::log(2.0 * M_PI * N);
      if (log_term < log_target) {
        terms = p;
        break;
      }
      if (log_term > 0) break;
    }
    if (terms == 0) continue;
    SeriesResult r = log_dirichlet_series(k, s_num, s_den, N, terms, prec);
    if (r.remainder.certainly_le(target)) return r.value.rounded(precision);
  }
  throw PrecisionError("series radius target not reached for precision " +
                       std::to_string(precision));
}

}  // namespace

std::string Rational::to_string() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Enclosure stieltjes(int k, int precision) {
  if (k < 0 || k > 2) throw DomainError("Stieltjes index must be 0, 1 or 2");
  return adaptive_series(k, 1, 1, precision);
}

Enclosure zeta_derivative_at_2(int order, int precision) {
  if (order < 0 || order > 3) throw DomainError("zeta derivative order must be 0..3");
  Enclosure v = adaptive_series(order, 2, 1, precision);
  return order % 2 == 0 ? v : -v;
}

Enclosure zeta_value(std::int64_t num, std::int64_t den, int precision) {
  if (den <= 0 || num <= den) throw DomainError("zeta_value needs a rational s > 1");
  return adaptive_series(0, num, den, precision);
}

ConstantsTable build_constants_table(int precision) {
  if (precision < 64) throw PrecisionError("precision must be at least 64 bits");
  const int prec = precision;
  auto q = [prec](std::int64_t n, std::int64_t d = 1) { return Enclosure::rational(n, d, prec); };

  ConstantsTable t;
  t.precision = prec;
  t.gamma = stieltjes(0, prec);
  t.gamma1 = stieltjes(1, prec);
  t.gamma2 = stieltjes(2, prec);
  t.zeta_d1_at2 = zeta_derivative_at_2(1, prec);
  t.zeta_d2_at2 = zeta_derivative_at_2(2, prec);
  t.zeta_d3_at2 = zeta_derivative_at_2(3, prec);
  t.zeta_3half = zeta_value(3, 2, prec);
  t.zeta_3 = zeta_value(3, 1, prec);
  t.pi = Enclosure::pi(prec);
  const Enclosure& g = t.gamma;
  const Enclosure& g1 = t.gamma1;
  const Enclosure& g2 = t.gamma2;

  t.C1 = q(1, 6);
  t.C2 = q(2) * g - q(1, 2);
  t.C3 = q(6) * pow(g, 2) - q(4) * g - q(4) * g1 + q(1);
  t.C4 = q(4) * pow(g, 3) - q(6) * pow(g, 2) + q(4) * g - q(12) * g * g1 + q(4) * g1 +
         q(2) * g2 - q(1);

  const Enclosure pi2 = pow(t.pi, 2);
  const Enclosure pi4 = pow(t.pi, 4);
  const Enclosure pi6 = pow(t.pi, 6);
  const Enclosure pi8 = pow(t.pi, 8);
  const Enclosure& z1 = t.zeta_d1_at2;
  const Enclosure& z2 = t.zeta_d2_at2;
  const Enclosure& z3 = t.zeta_d3_at2;
  t.H1 = q(6) / pi2;
  t.H1p = -(q(72) * z1) / pi4;
  t.H1pp = q(1728) * pow(z1, 2) / pi6 - q(144) * z2 / pi4;
  t.H1ppp = -(q(62208) * pow(z1, 3)) / pi8 + q(10368) * z1 * z2 / pi6 - q(288) * z3 / pi4;

  t.D1 = t.C1 * t.H1;
  t.D2 = t.C2 * t.H1 + q(3) * t.C1 * t.H1p;
  t.D3 = t.C3 * t.H1 + q(2) * t.C2 * t.H1p + q(3) * t.C1 * t.H1pp;
  t.D4 = t.C4 * t.H1 + t.C3 * t.H1p + t.C2 * t.H1pp + t.C1 * t.H1ppp;

  t.Hstar_34 = t.zeta_3half / t.zeta_3;

  const Enclosure alpha = t.alpha.enclose(prec);
  const Enclosure log_x0 = log(Enclosure(t.x0, prec));
  t.F1 = q(2) * t.c.enclose(prec) + q(6) * alpha + q(2) * alpha / log_x0;
  t.beta = alpha / q(2) + (q(3) - q(2) * g + alpha) / log_x0;
  return t;
}

std::vector<ConstantEntry> constant_entries(const ConstantsTable& t) {
  const int prec = t.precision;
  auto r = [prec](const Rational& v) { return v.enclose(prec); };
  return {
      {"gamma", t.gamma, "Euler's constant, Euler-Maclaurin", false},
      {"gamma1", t.gamma1, "Stieltjes constant gamma_1", false},
      {"gamma2", t.gamma2, "Stieltjes constant gamma_2", false},
      {"zeta'(2)", t.zeta_d1_at2, "-sum log(n)/n^2", false},
      {"zeta''(2)", t.zeta_d2_at2, "sum log(n)^2/n^2", false},
      {"zeta'''(2)", t.zeta_d3_at2, "-sum log(n)^3/n^2", false},
      {"zeta(3/2)", t.zeta_3half, "sum n^(-3/2)", false},
      {"zeta(3)", t.zeta_3, "sum n^(-3)", false},
      {"C1", t.C1, "1/6", true},
      {"C2", t.C2, "2 gamma - 1/2", false},
      {"C3", t.C3, "6 gamma^2 - 4 gamma - 4 gamma1 + 1", false},
      {"C4", t.C4, "4 gamma^3 - 6 gamma^2 + 4 gamma - 12 gamma gamma1 + 4 gamma1 + 2 gamma2 - 1",
       false},
      {"H(1)", t.H1, "6/pi^2", false},
      {"H'(1)", t.H1p, "-72 zeta'(2)/pi^4", false},
      {"H''(1)", t.H1pp, "1728 zeta'(2)^2/pi^6 - 144 zeta''(2)/pi^4", false},
      {"H'''(1)", t.H1ppp,
       "-62208 zeta'(2)^3/pi^8 + 10368 zeta'(2) zeta''(2)/pi^6 - 288 zeta'''(2)/pi^4", false},
      {"D1", t.D1, "C1 H(1) = 1/pi^2", false},
      {"D2", t.D2, "C2 H(1) + 3 C1 H'(1)", false},
      {"D3", t.D3, "C3 H(1) + 2 C2 H'(1) + 3 C1 H''(1)", false},
      {"D4", t.D4, "C4 H(1) + C3 H'(1) + C2 H''(1) + C1 H'''(1)", false},
      {"H*(3/4)", t.Hstar_34, "zeta(3/2)/zeta(3)", false},
      {"alpha", r(t.alpha), "397/1000", true},
      {"x0", Enclosure(t.x0, prec), "5560", true},
      {"c", r(t.c), "1001/1000", true},
      {"F1", t.F1, "2c + 6 alpha + 2 alpha/log x0", false},
      {"beta", t.beta, "alpha/2 + (3 - 2 gamma + alpha)/log x0", false},
      {"F1*H*(3/4)", t.F1 * t.Hstar_34, "envelope coefficient, x^(3/4) log x", false},
      {"1-C4", Enclosure(1, prec) - t.C4, "envelope coefficient, x^(1/2)", false},
      {"env1", r(t.env1_coeff), "448/100", true},
      {"env2_a", r(t.env2_coeff_a), "973/100", true},
      {"env2_b", r(t.env2_coeff_b), "73/100", true},
  };
}

}  // namespace divisum
