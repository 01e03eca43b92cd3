#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "divisum/errors.hpp"
#include "divisum/formulas.hpp"
#include "divisum/summatory.hpp"

using namespace divisum;

namespace {

const ConstantsTable& table() {
  static const ConstantsTable t = build_constants_table();
  return t;
}

Enclosure X(std::int64_t v) { return Enclosure(v, kDefaultPrecision); }

}  // namespace

TEST_CASE("main terms against reference values") {
  CHECK(main_term_d4(X(10), table()).mid_double() == doctest::Approx(80.37099455571478).epsilon(1e-14));
  CHECK(main_term_dsq(X(10), table()).mid_double() == doctest::Approx(75.39319435069023).epsilon(1e-14));
  // At x = 1 every term carrying log x vanishes.
  CHECK(main_term_d4(X(1), table()).contains(table().C4));
  CHECK(main_term_dsq(X(1), table()).contains(table().D4));
}

TEST_CASE("theorem specs") {
  const TheoremSpec full = theorem_spec(TheoremKind::D4_FULL, table());
  CHECK(full.name == "d4_full");
  CHECK(full.summatory_kind == FunctionKind::D4);
  CHECK(full.main_term.size() == 4);
  CHECK(full.threshold == 2);
  CHECK_FALSE(full.is_clean());
  CHECK(main_term(full, X(10)).contains(main_term_d4(X(10), table())));

  const TheoremSpec dsq = theorem_spec(TheoremKind::DSQ_FULL, table());
  CHECK(dsq.summatory_kind == FunctionKind::DSQ);
  CHECK(envelope(dsq, X(4)).mid_double() == doctest::Approx(39.61164694379586).epsilon(1e-13));

  const TheoremSpec clean = theorem_spec(TheoremKind::D4_CLEAN, table());
  CHECK(clean.is_clean());
  CHECK(clean.threshold == 193);
  CHECK(main_term(clean, X(10)).contains(X(0)));
  CHECK(envelope(clean, X(193)).mid_double() == doctest::Approx(9376.903934176771).epsilon(1e-13));

  const TheoremSpec k4 = theorem_spec(TheoremKind::DSQ_CLEAN, table(), Rational{1, 4});
  CHECK(k4.threshold == 433);
  CHECK(k4.name == "dsq_clean_K=1/4");
  CHECK(theorem_spec(TheoremKind::DSQ_CLEAN, table(), Rational{1, 1}).threshold == 7);
  CHECK_THROWS_AS(theorem_spec(TheoremKind::DSQ_CLEAN, table()), DomainError);
  CHECK_THROWS_AS(theorem_spec(TheoremKind::DSQ_CLEAN, table(), Rational{1, 2}), DomainError);

  CHECK(parse_theorem_kind("thm1") == TheoremKind::D4_FULL);
  CHECK(parse_theorem_kind("thm3") == TheoremKind::DSQ_FULL);
  CHECK(parse_theorem_kind("d4-clean") == TheoremKind::D4_CLEAN);
  CHECK(parse_theorem_kind("dsq-clean") == TheoremKind::DSQ_CLEAN);
  CHECK_THROWS(parse_theorem_kind("nope"));
}

TEST_CASE("envelope dominates the error at small x") {
  for (auto kind : {TheoremKind::D4_FULL, TheoremKind::DSQ_FULL}) {
    const TheoremSpec spec = theorem_spec(kind, table());
    std::int64_t running = 0;
    for (std::int64_t n = 2; n <= 2000; ++n) {
      running = summatory_exact(spec.summatory_kind, n).value;
      const Enclosure err = abs(X(running) - main_term(spec, X(n)));
      CHECK(err.certainly_le(envelope(spec, X(n))));
    }
  }
}

TEST_CASE("Delta") {
  CHECK(delta_of_x(10, table()).mid_double() == doctest::Approx(2.429835772028886).epsilon(1e-14));
  CHECK(delta_of_x(1, table()).mid_double() == doctest::Approx(0.8455686701969343).epsilon(1e-14));
  CHECK(delta_at(27, X(10), table()).contains(delta_of_x(10, table())));
}

TEST_CASE("finite log sums") {
  CHECK(S1_exact(10).mid_double() == doctest::Approx(6.002380952380952).epsilon(1e-15));
  CHECK(S1_exact(1).contains(X(1)));
  CHECK(S3_exact(4).mid_double() == doctest::Approx(5.068914100752347).epsilon(1e-15));
  CHECK(S2_exact(10).mid_double() == doctest::Approx(7.552694950422074).epsilon(1e-15));
  CHECK(S2_exact(1).contains(X(0)));
  // brute-force comparison
  double s1 = 0, s2 = 0, s3 = 0;
  for (int n = 1; n <= 500; ++n) {
    int d = 0;
    for (int a = 1; a <= n; ++a) d += n % a == 0;
    s1 += double(d) / n;
    s2 += d * std::log(double(n)) / n;
    s3 += d / std::sqrt(double(n));
  }
  CHECK(S1_exact(500).mid_double() == doctest::Approx(s1).epsilon(1e-12));
  CHECK(S2_exact(500).mid_double() == doctest::Approx(s2).epsilon(1e-12));
  CHECK(S3_exact(500).mid_double() == doctest::Approx(s3).epsilon(1e-12));
}

TEST_CASE("asymptotic expansions") {
  const ApproxResult s1 = S1_approx(X(10), table());
  CHECK(s1.certified);
  CHECK((S1_exact(10) - s1.main).mid_double() == doctest::Approx(0.21444591147684935).epsilon(1e-12));
  CHECK(s1.radius.mid_double() == doctest::Approx(0.3165439937828547).epsilon(1e-13));
  CHECK(S1_approx(X(1000000), table()).main.mid_double() ==
        doctest::Approx(111.86203382872523).epsilon(1e-14));
  CHECK_FALSE(S1_approx(X(1), table()).certified);

  const ApproxResult s3 = S3_approx(X(5560), table());
  CHECK(s3.certified);
  CHECK(s3.radius.mid_double() == doctest::Approx(3.954304317564993).epsilon(1e-13));
  CHECK(s3.main.mid_double() == doctest::Approx(1159.9073742025406).epsilon(1e-13));
  CHECK(abs(S3_exact(5560) - s3.main).certainly_le(s3.radius));
  CHECK_FALSE(S3_approx(X(5559), table()).certified);

  const ApproxResult s2 = S2_approx(X(5560), table());
  CHECK(s2.certified);
  CHECK(abs(S2_exact(5560) - s2.main).certainly_le(s2.radius));
  CHECK_FALSE(S2_approx(X(100), table()).certified);
}

TEST_CASE("prior bounds") {
  CHECK(prior_bound(PriorBound::GAMES, X(6), 4, table()).mid_double() ==
        doctest::Approx(69.02721810705993).epsilon(1e-13));
  CHECK_THROWS_AS(prior_bound(PriorBound::GAMES, X(5), 4, table()), DomainError);
  // x (log x + 1)^3
  const double l = std::log(100.0) + 1;
  CHECK(prior_bound(PriorBound::KITCHEN, X(100), 2, table()).mid_double() ==
        doctest::Approx(100 * l * l * l).epsilon(1e-14));
  for (auto b : {PriorBound::HALL, PriorBound::LOUNGE, PriorBound::GAMES, PriorBound::KITCHEN})
    CHECK(parse_prior_bound(to_string(b)) == b);
  CHECK_THROWS(parse_prior_bound("attic"));
  // Every earlier d4 bound must itself hold.
  for (std::int64_t x : {6, 100, 1000, 100000}) {
    const Enclosure exact = X(summatory_d4_exact(x).value);
    CHECK(exact.certainly_le(prior_bound(PriorBound::HALL, X(x), 4, table())));
    CHECK(exact.certainly_le(prior_bound(PriorBound::LOUNGE, X(x), 4, table())));
    CHECK(exact.certainly_le(prior_bound(PriorBound::GAMES, X(x), 4, table())));
    CHECK(X(summatory_dsq_exact(x).value).certainly_le(prior_bound(PriorBound::KITCHEN, X(x), 2, table())));
  }
}
