#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sstream>

#include "divisum/class_bounds.hpp"
#include "divisum/errors.hpp"
#include "divisum/summatory.hpp"

using namespace divisum;

TEST_CASE("Minkowski bound") {
  CHECK(minkowski_bound({4, 0, 2, 125}).mid_double() == doctest::Approx(1.6992079063875525).epsilon(1e-14));
  CHECK(minkowski_bound({4, 4, 0, 725}).mid_double() == doctest::Approx(2.5242960033442988).epsilon(1e-14));
  // quadratic: (1/2) sqrt(5) for Q(sqrt 5)
  CHECK(minkowski_bound({2, 2, 0, 5}).mid_double() == doctest::Approx(1.118033988749895).epsilon(1e-14));
  CHECK_THROWS_AS(minkowski_bound({4, 1, 1, 125}), SignatureError);
  CHECK_THROWS_AS(minkowski_bound({5, 5, 0, 125}), SignatureError);
  CHECK_THROWS_AS(minkowski_bound({4, 4, 0, 0}), DomainError);
}

TEST_CASE("class number bounds") {
  const auto small = class_bound({4, 0, 2, 125});
  CHECK(small.bound_exact == 1);
  CHECK_FALSE(small.bound_formula.has_value());

  const auto two = class_bound({4, 4, 0, 725});
  CHECK(two.bound_exact == 5);

  // totally real, |d| = 10^8: b = (3/32) 10^4 = 937.5
  const auto big = class_bound({4, 4, 0, 100000000});
  CHECK(big.b.mid_double() == doctest::Approx(937.5));
  CHECK(big.bound_exact == summatory_d4_exact(937).value);
  REQUIRE(big.bound_formula.has_value());
  CHECK(Enclosure(big.bound_exact, kDefaultPrecision).certainly_le(*big.bound_formula));
  CHECK_FALSE(big.method_note.empty());

  CHECK_THROWS_AS(class_bound({3, 1, 1, 23}), SignatureError);
}

TEST_CASE("formula and exact pieces") {
  const int p = kDefaultPrecision;
  CHECK(class_bound_formula(Enclosure(193, p)).mid_double() == doctest::Approx(9376.903934176771).epsilon(1e-13));
  CHECK(class_bound_formula(Enclosure(10000, p)).mid_double() ==
        doctest::Approx(2604388.5981356495).epsilon(1e-13));
  CHECK_THROWS_AS(class_bound_formula(Enclosure(192, p)), DomainError);
  CHECK(class_bound_exact(Enclosure::rational(21, 2, p)) == summatory_d4_exact(10).value);
  // An enclosure straddling an integer cannot be floored.
  CHECK_THROWS_AS(class_bound_exact(Enclosure(7, p).widened(Enclosure::decimal("1e-30", p))),
                  IndeterminateError);
}

TEST_CASE("batch input") {
  std::istringstream in(
      "label,n_K,r1,r2,abs_disc\n"
      "cyclotomic5,4,0,2,125\n"
      "totally_real,4,4,0,725\n"
      "broken,4,1,1,125\n"
      "garbage,4,x,2,9\n"
      "\"quoted, label\",4,4,0,100000000\n");
  const auto rows = batch_class_bounds(in);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].result->bound_exact == 1);
  CHECK(rows[1].result->bound_exact == 5);
  CHECK_FALSE(rows[2].result.has_value());
  CHECK_FALSE(rows[2].error.empty());
  CHECK_FALSE(rows[3].result.has_value());
  CHECK(rows[4].label == "quoted, label");
  CHECK(rows[4].result.has_value());

  std::ostringstream out;
  write_batch_csv(out, rows);
  const std::string csv = out.str();
  CHECK(csv.rfind("label,n_K,r1,r2,abs_disc,b_mid,b_rad,bound_exact,bound_formula,error\n", 0) == 0);
  CHECK(csv.find("\"quoted, label\"") != std::string::npos);

  std::istringstream no_header("cyclotomic5,4,0,2,125\n");
  CHECK_THROWS_AS(batch_class_bounds(no_header), DomainError);
}
