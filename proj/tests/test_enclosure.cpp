#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <gmpxx.h>

#include <random>

#include "divisum/enclosure.hpp"
#include "divisum/errors.hpp"

using namespace divisum;

namespace {

// Does the enclosure contain the exact rational q?
bool holds(const Enclosure& e, const mpq_class& q) {
  return mpfr_cmp_q(e.lower_ptr(), q.get_mpq_t()) <= 0 && mpfr_cmp_q(e.upper_ptr(), q.get_mpq_t()) >= 0;
}

}  // namespace

TEST_CASE("rational arithmetic encloses the exact result") {
  std::mt19937_64 rng(11);
  std::uniform_int_distribution<std::int64_t> num(-1'000'000'007, 1'000'000'007);
  std::uniform_int_distribution<std::int64_t> den(1, 999'983);
  for (int prec : {64, 113, 256}) {
    for (int i = 0; i < 500; ++i) {
      const std::int64_t an = num(rng), ad = den(rng), bn = num(rng), bd = den(rng);
      const Enclosure a = Enclosure::rational(an, ad, prec);
      const Enclosure b = Enclosure::rational(bn, bd, prec);
      const mpq_class qa(static_cast<long>(an), static_cast<unsigned long>(ad));
      const mpq_class qb(static_cast<long>(bn), static_cast<unsigned long>(bd));
      mpq_class ca = qa, cb = qb;
      ca.canonicalize();
      cb.canonicalize();
      REQUIRE(holds(a, ca));
      REQUIRE(holds(a + b, ca + cb));
      REQUIRE(holds(a - b, ca - cb));
      REQUIRE(holds(a * b, ca * cb));
      if (bn != 0) REQUIRE(holds(a / b, ca / cb));
      REQUIRE(holds(pow(a, 3), ca * ca * ca));
      REQUIRE(holds(pow(a, 2), ca * ca));
      REQUIRE(holds(abs(a), abs(ca)));
    }
  }
}

TEST_CASE("transcendental functions nest across precisions") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.01, 50.0);
  for (int i = 0; i < 200; ++i) {
    const double v = u(rng);
    const Enclosure lo = Enclosure::from_double(v, 80);
    const Enclosure hi = Enclosure::from_double(v, 400);
    REQUIRE(log(lo).contains(log(hi)));
    REQUIRE(exp(lo).contains(exp(hi)));
    REQUIRE(sqrt(lo).contains(sqrt(hi)));
    REQUIRE(pow(lo, 3, 4).contains(pow(hi, 3, 4)));
    REQUIRE(pow(lo, -1, 2).contains(pow(hi, -1, 2)));
    REQUIRE(pow(lo, 1, 3).contains(pow(hi, 1, 3)));
  }
}

TEST_CASE("identities") {
  const int prec = 256;
  const Enclosure pi = Enclosure::pi(prec);
  CHECK(pi.lower() <= 3.141592653589793);
  CHECK(pi.upper() >= 3.141592653589793);
  CHECK(pi.rad_double() < 1e-70);
  // exp(log 7) contains 7, sqrt(2)^2 contains 2
  CHECK(exp(log(Enclosure(7, prec))).contains(7));
  CHECK(pow(sqrt(Enclosure(2, prec)), 2).contains(2));
  CHECK(pow(Enclosure(16, prec), 3, 4).contains(8));
  CHECK(pow(Enclosure(16, prec), 3, 4).is_point());
  CHECK(log(Enclosure::euler_e(prec)).contains(1));
  CHECK(Enclosure::decimal("0.397", prec).contains(Enclosure::rational(397, 1000, prec)) ==
        Enclosure::rational(397, 1000, prec).contains(Enclosure::decimal("0.397", prec)));
}

TEST_CASE("comparisons and floor") {
  const int prec = 128;
  const Enclosure third = Enclosure::rational(1, 3, prec);
  CHECK(third.certainly_lt(Enclosure::rational(1, 2, prec)));
  CHECK_FALSE(third.certainly_lt(third));
  CHECK(third.certainly_positive());
  CHECK((-third).certainly_negative());
  std::int64_t f = 0;
  CHECK(Enclosure::rational(17, 3, prec).floor_if_determined(f));
  CHECK(f == 5);
  CHECK(Enclosure::rational(-1, 3, prec).floor_if_determined(f));
  CHECK(f == -1);
  const Enclosure around_two = Enclosure(2, prec).widened(Enclosure::rational(1, 1000, prec));
  CHECK_FALSE(around_two.floor_if_determined(f));
  CHECK(Enclosure::hull(Enclosure(1, prec), Enclosure(3, prec)).contains(2));
}

TEST_CASE("domain errors") {
  const int prec = 64;
  CHECK_THROWS_AS(log(Enclosure(0, prec)), DomainError);
  CHECK_THROWS_AS(Enclosure(1, prec) / Enclosure(0, prec), DomainError);
  CHECK_THROWS_AS(sqrt(Enclosure(-1, prec)), DomainError);
  CHECK_THROWS_AS(Enclosure::decimal("abc", prec), DomainError);
  CHECK_THROWS_AS(Enclosure::rational(1, 0, prec), DomainError);
}

TEST_CASE("value semantics") {
  Enclosure a = Enclosure::rational(2, 7, 200);
  Enclosure b = a;
  b += Enclosure(1, 200);
  CHECK(a.contains(Enclosure::rational(2, 7, 200)));
  CHECK(b.contains(Enclosure::rational(9, 7, 200)));
  Enclosure c = std::move(b);
  CHECK(c.precision() == 200);
  b = a;
  CHECK(b.contains(a));
  CHECK(a.rounded(64).contains(a));
  CHECK(a.mid_string(5) == "0.28571");
}
