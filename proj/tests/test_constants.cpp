#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "divisum/constants.hpp"
#include "divisum/errors.hpp"

using namespace divisum;

namespace {

// Test-only Euler-Maclaurin in long double: head to N, integral, f(N)/2 and a
// single Bernoulli correction. Independent of the library's adaptive series.
long double oracle_log_series(int k, long double s, int N) {
  long double head = 0;
  for (int n = 1; n < N; ++n) head += std::pow(std::log((long double)n), k) / std::pow((long double)n, s);
  const long double L = std::log((long double)N);
  const long double fN = std::pow(L, k) / std::pow((long double)N, s);
  // f'(N) = N^{-s-1} (k L^{k-1} - s L^k)
  const long double dfN =
      (k > 0 ? k * std::pow(L, k - 1) : 0.0L) / std::pow((long double)N, s + 1) - s * fN / N;
  long double tail;
  if (s == 1.0L) {
    tail = -std::pow(L, k + 1) / (k + 1);
  } else {
    const long double t = s - 1;
    long double acc = 0, fall = 1;
    for (int i = 0; i <= k; ++i) {
      acc += fall * std::pow(L, k - i) / std::pow(t, i + 1);
      fall *= (k - i);
    }
    tail = acc * std::pow((long double)N, -t);
  }
  return head + tail + fN / 2 - dfN / 12;
}

// |x - ref| <= tol with ref a decimal string.
bool near(const Enclosure& x, const std::string& ref, const std::string& tol) {
  const int prec = x.precision();
  const Enclosure diff = abs(x - Enclosure::decimal(ref, prec));
  return diff.certainly_le(Enclosure::decimal(tol, prec));
}

// Leading digits by truncation: floor(x * 1000) == expected for every point.
bool truncates_to(const Enclosure& x, std::int64_t thousandths) {
  std::int64_t f = 0;
  return (x * Enclosure(1000, x.precision())).floor_if_determined(f) && f == thousandths;
}

}  // namespace

TEST_CASE("Stieltjes constants") {
  const Enclosure g0 = stieltjes(0);
  const Enclosure g1 = stieltjes(1);
  const Enclosure g2 = stieltjes(2);
  CHECK(near(g0, "0.577215664901532860606512090082402431042", "1e-38"));
  CHECK(near(g1, "-0.0728158454836767248605863758749013191", "1e-36"));
  CHECK(near(g2, "-0.00969036319287231848453038603521252935", "1e-36"));
  for (int k = 0; k <= 2; ++k) {
    const Enclosure v = stieltjes(k);
    CHECK(v.rad_double() < 1e-25);
    CHECK(std::abs(v.mid_double() - static_cast<double>(oracle_log_series(k, 1.0L, 20000))) < 1e-13);
  }
  CHECK_THROWS_AS(stieltjes(3), DomainError);
  CHECK_THROWS_AS(stieltjes(0, 32), PrecisionError);
}

TEST_CASE("zeta values and derivatives at 2") {
  const Enclosure pi2_6 = pow(Enclosure::pi(kDefaultPrecision), 2) / Enclosure(6, kDefaultPrecision);
  CHECK(abs(zeta_derivative_at_2(0) - pi2_6).certainly_le(Enclosure::decimal("1e-60", kDefaultPrecision)));
  CHECK(near(zeta_derivative_at_2(0), "1.64493406684822643647241516664602518923", "1e-36"));
  CHECK(near(zeta_derivative_at_2(1), "-0.93754825431584375370257409456786497790", "1e-36"));
  CHECK(near(zeta_derivative_at_2(2), "1.98928023429890102342085868742151638", "1e-33"));
  CHECK(near(zeta_derivative_at_2(3), "-6.0001458028430448654", "1e-18"));
  CHECK(near(zeta_value(3, 2), "2.61237534868548834334856756792407163057", "1e-36"));
  CHECK(near(zeta_value(3, 1), "1.20205690315959428539973816151144999076", "1e-36"));
  CHECK(near(zeta_value(3, 2) / zeta_value(3, 1), "2.17325431251955413823708984", "1e-25"));
  for (int order = 0; order <= 3; ++order) {
    const long double o = oracle_log_series(order, 2.0L, 20000);
    const double signed_o = static_cast<double>(order % 2 ? -o : o);
    CHECK(std::abs(zeta_derivative_at_2(order).mid_double() - signed_o) < 1e-13);
  }
  CHECK(std::abs(zeta_value(3, 2).mid_double() - (double)oracle_log_series(0, 1.5L, 20000)) < 1e-13);
  CHECK_THROWS_AS(zeta_value(1, 1), DomainError);
  CHECK_THROWS_AS(zeta_derivative_at_2(4), DomainError);
}

TEST_CASE("constants table") {
  const ConstantsTable t = build_constants_table();
  const int prec = t.precision;
  const Enclosure pi2 = pow(t.pi, 2);

  CHECK(t.C1.contains(Enclosure::rational(1, 6, prec)));
  CHECK(truncates_to(t.C2, 654));
  CHECK(truncates_to(t.C3, 981));
  CHECK(truncates_to(t.C4, 272));
  CHECK(t.D1.contains(Enclosure(1, prec) / pi2));
  CHECK(t.H1.contains(Enclosure(6, prec) / pi2));
  // Reference digits for the d(n)^2 constants.
  CHECK(near(t.D2, "0.744341276391456640439006", "1e-22"));
  CHECK(near(t.D3, "0.823265208269485020156816", "1e-22"));
  CHECK(near(t.D4, "0.460323372258721430393762", "1e-22"));

  SUBCASE("expanded D2 matches the assembled one") {
    // D2 = (12 gamma - 3)/pi^2 - 36 zeta'(2)/pi^4
    const Enclosure expanded = (Enclosure(12, prec) * t.gamma - Enclosure(3, prec)) / pi2 -
                               Enclosure(36, prec) * t.zeta_d1_at2 / pow(t.pi, 4);
    CHECK(abs(expanded - t.D2).certainly_le(Enclosure::decimal("1e-60", prec)));
  }
  SUBCASE("envelope coefficients dominate") {
    CHECK(t.F1.certainly_le(t.env1_coeff.enclose(prec)));
    CHECK((t.F1 * t.Hstar_34).certainly_le(t.env2_coeff_a.enclose(prec)));
    CHECK((Enclosure(1, prec) - t.C4).certainly_le(t.env2_coeff_b.enclose(prec)));
  }
  SUBCASE("beta") {
    const Enclosure expected = Enclosure::rational(397, 2000, prec) +
                               (Enclosure(3, prec) - Enclosure(2, prec) * t.gamma +
                                Enclosure::rational(397, 1000, prec)) /
                                   log(Enclosure(5560, prec));
    CHECK(abs(expected - t.beta).certainly_le(Enclosure::decimal("1e-60", prec)));
    CHECK(near(t.beta, "0.458557609782531447380994731", "1e-25"));
  }
  SUBCASE("radii") {
    for (const auto& e : constant_entries(t)) CHECK_MESSAGE(e.value.rad_double() <= 1e-25, e.name);
  }
  SUBCASE("fixed parameters") {
    CHECK(t.alpha == Rational{397, 1000});
    CHECK(t.x0 == 5560);
    CHECK(t.c == Rational{1001, 1000});
    CHECK(t.K_thresholds.size() == 2);
    CHECK(t.d4_clean.second == 193);
  }
}

TEST_CASE("doubling the precision nests every constant") {
  const ConstantsTable lo = build_constants_table(256);
  const ConstantsTable hi = build_constants_table(512);
  const auto a = constant_entries(lo);
  const auto b = constant_entries(hi);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK_MESSAGE(a[i].value.contains(b[i].value), a[i].name);
    CHECK(b[i].value.rad_double() <= a[i].value.rad_double());
  }
}
