#include "divisum/int_math.hpp"

#include <string>

#include "divisum/errors.hpp"

namespace divisum {

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw DomainError("isqrt of negative value " + std::to_string(n));
  if (n < 2) return n;
  // Newton from an overestimate decreases monotonically to floor(sqrt(n)).
  auto x = static_cast<unsigned __int128>(n);
  unsigned __int128 r = x;
  unsigned __int128 y = (r + 1) / 2;
  while (y < r) {
    r = y;
    y = (r + x / r) / 2;
  }
  while (r * r > x) --r;
  while ((r + 1) * (r + 1) <= x) ++r;
  return static_cast<std::int64_t>(r);
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("64-bit overflow in addition");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError("64-bit overflow in subtraction");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("64-bit overflow in multiplication");
  return out;
}

std::int64_t trial_spf(std::int64_t n) {
  if (n < 1) throw DomainError("trial_spf requires n >= 1");
  if (n == 1) return 1;
  for (std::int64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) return p;
  return n;
}

}  // namespace divisum
