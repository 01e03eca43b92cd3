#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>
#include <sstream>

#include "divisum/arithmetic_table.hpp"
#include "divisum/errors.hpp"
#include "divisum/int_math.hpp"

using namespace divisum;

namespace {

// Ordered k-factorizations by direct enumeration.
std::int64_t brute_dk(std::int64_t n, int k) {
  if (k == 1) return 1;
  std::int64_t total = 0;
  for (std::int64_t a = 1; a <= n; ++a)
    if (n % a == 0) total += brute_dk(n / a, k - 1);
  return total;
}

std::int64_t brute_mu(std::int64_t m) {
  std::int64_t mu = 1;
  for (std::int64_t p = 2; p * p <= m; ++p) {
    if (m % p) continue;
    m /= p;
    if (m % p == 0) return 0;
    mu = -mu;
  }
  return m > 1 ? -mu : mu;
}

}  // namespace

TEST_CASE("isqrt is exact around perfect squares") {
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(1) == 1);
  CHECK(isqrt(24) == 4);
  CHECK(isqrt(25) == 5);
  const std::int64_t big = 3037000499;  // floor(sqrt(2^63 - 1))
  CHECK(isqrt(big * big) == big);
  CHECK(isqrt(big * big - 1) == big - 1);
  CHECK(isqrt(INT64_MAX) == big);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const auto n = static_cast<std::int64_t>(rng() >> 2);
    const std::int64_t r = isqrt(n);
    CHECK(static_cast<__int128>(r) * r <= n);
    CHECK(static_cast<__int128>(r + 1) * (r + 1) > n);
  }
}

TEST_CASE("checked arithmetic reports overflow") {
  CHECK(checked_add(INT64_MAX - 1, 1) == INT64_MAX);
  CHECK_THROWS_AS(checked_add(INT64_MAX, 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(INT64_MAX / 2 + 1, 2), OverflowError);
}

TEST_CASE("sieve_spf") {
  const auto t = sieve_spf(2, 11);
  CHECK(std::vector<std::int64_t>(t.values().begin(), t.values().end()) ==
        std::vector<std::int64_t>{2, 3, 2, 5, 2, 7, 2, 3, 2});
  CHECK(sieve_spf(1, 50).at(1) == 1);
  CHECK(sieve_spf(1, 50).at(49) == 7);
  CHECK(sieve_spf(9990, 10000).at(9991) == 97);
  CHECK(trial_spf(9991) == 97);

  SUBCASE("matches trial division on an offset segment") {
    const auto seg = sieve_spf(1'000'000, 1'010'000);
    for (std::int64_t n = seg.lo(); n < seg.hi(); ++n) REQUIRE(seg[n] == trial_spf(n));
  }
  SUBCASE("capacity") {
    CHECK_THROWS_AS(sieve_spf(1, 2000, 1024), CapacityError);
    CHECK_THROWS_AS(sieve_spf(5, 5), DomainError);
  }
}

TEST_CASE("tabulate examples") {
  const auto d4 = tabulate(FunctionKind::D4, 1, 11);
  CHECK(std::vector<std::int64_t>(d4.values().begin(), d4.values().end()) ==
        std::vector<std::int64_t>{1, 4, 4, 10, 4, 16, 4, 20, 10, 16});

  const auto h = tabulate(FunctionKind::H, 1, 17);
  for (std::int64_t n = 1; n < 17; ++n) {
    const std::int64_t expected = n == 1 ? 1 : (n == 4 || n == 9) ? -1 : 0;
    CHECK(h[n] == expected);
  }
  const auto dsq = tabulate(FunctionKind::DSQ, 1, 5);
  CHECK(std::vector<std::int64_t>(dsq.values().begin(), dsq.values().end()) ==
        std::vector<std::int64_t>{1, 4, 4, 9});
}

TEST_CASE("tabulated d4 agrees with brute-force ordered factorizations") {
  const auto d4 = tabulate(FunctionKind::D4, 1, 301);
  const auto d = tabulate(FunctionKind::D, 1, 301);
  for (std::int64_t n = 1; n <= 300; ++n) {
    REQUIRE(d4[n] == brute_dk(n, 4));
    REQUIRE(d[n] == brute_dk(n, 2));
  }
}

TEST_CASE("table invariants on a segment") {
  const std::int64_t lo = 123'456;
  const std::int64_t hi = lo + 20'000;
  const auto d = tabulate(FunctionKind::D, lo, hi);
  const auto d4 = tabulate(FunctionKind::D4, lo, hi);
  const auto dsq = tabulate(FunctionKind::DSQ, lo, hi);
  const auto h = tabulate(FunctionKind::H, lo, hi);
  const auto spf = sieve_spf(lo, hi);
  for (std::int64_t n = lo; n < hi; ++n) {
    REQUIRE(d[n] >= 1);
    REQUIRE(d4[n] >= 1);
    REQUIRE(dsq[n] == d[n] * d[n]);
    const std::int64_t r = isqrt(n);
    if (r * r == n)
      REQUIRE(h[n] == brute_mu(r));
    else
      REQUIRE(h[n] == 0);
    if (spf[n] == n) {
      REQUIRE(d4[n] == 4);
      REQUIRE(d[n] == 2);
    }
  }
  // p and p^2 for a prime inside the range of a second segment.
  const auto sq = tabulate(FunctionKind::D4, 1009 * 1009, 1009 * 1009 + 1);
  CHECK(sq.at(1009 * 1009) == 10);
}

TEST_CASE("mobius segment") {
  const auto mu = tabulate_mobius(1, 200);
  for (std::int64_t m = 1; m < 200; ++m) REQUIRE(mu[static_cast<std::size_t>(m - 1)] == brute_mu(m));
}

TEST_CASE("binary table format") {
  const auto t = tabulate(FunctionKind::H, 7, 40);
  std::stringstream buf;
  write_table(buf, t);
  const std::string bytes = buf.str();
  REQUIRE(bytes.size() == 8 * (3 + 33));
  // little-endian lo = 7, then hi = 40, then the H tag 3
  CHECK(static_cast<unsigned char>(bytes[0]) == 7);
  CHECK(static_cast<unsigned char>(bytes[8]) == 40);
  CHECK(static_cast<unsigned char>(bytes[16]) == 3);
  // h(9) = -1 is stored as all-ones
  CHECK(static_cast<unsigned char>(bytes[24 + 8 * 2]) == 0xff);
  CHECK(read_table(buf) == t);

  std::stringstream truncated(bytes.substr(0, 30));
  CHECK_THROWS(read_table(truncated));
}
