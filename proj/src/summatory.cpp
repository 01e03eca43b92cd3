#include "divisum/summatory.hpp"

#include <algorithm>
#include <string>

#include "divisum/errors.hpp"
#include "divisum/int_math.hpp"

namespace divisum {

namespace {

void require_positive(std::int64_t x) {
  if (x < 1) throw DomainError("summatory functions need x >= 1, got " + std::to_string(x));
}

std::int64_t to_i64(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw OverflowError("summatory value exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

void require_summatory_kind(FunctionKind kind) {
  if (kind != FunctionKind::D && kind != FunctionKind::D4 && kind != FunctionKind::DSQ)
    throw DomainError("summatory kind must be d, d4 or dsq, got " + std::string(to_string(kind)));
}

}  // namespace

SummatoryPoint summatory_d_exact(std::int64_t x) {
  require_positive(x);
  const std::int64_t r = isqrt(x);
  __int128 acc = 0;
  for (std::int64_t a = 1; a <= r; ++a) acc += x / a;
  acc = 2 * acc - static_cast<__int128>(r) * r;
  return {x, to_i64(acc), FunctionKind::D};
}

SummatoryPoint summatory_d4_exact(std::int64_t x, std::size_t segment_size) {
  require_positive(x);
  const std::int64_t r = isqrt(x);
  __int128 cross = 0;
  __int128 small = 0;  // D(a) for the current a, ends as D(sqrt x)
  for (std::int64_t lo = 1; lo <= r;) {
    const std::int64_t hi = std::min<std::int64_t>(r + 1, lo + static_cast<std::int64_t>(segment_size));
    const auto d = tabulate(FunctionKind::D, lo, hi, segment_size);
    for (std::int64_t a = lo; a < hi; ++a) {
      small += d[a];
      cross += static_cast<__int128>(d[a]) * summatory_d_exact(x / a).value;
    }
    lo = hi;
  }
  return {x, to_i64(2 * cross - small * small), FunctionKind::D4};
}

SummatoryPoint summatory_dsq_exact(std::int64_t x, std::size_t segment_size) {
  require_positive(x);
  const std::int64_t r = isqrt(x);
  __int128 acc = 0;
  for (std::int64_t lo = 1; lo <= r;) {
    const std::int64_t hi = std::min<std::int64_t>(r + 1, lo + static_cast<std::int64_t>(segment_size));
    const auto mu = tabulate_mobius(lo, hi, segment_size);
    for (std::int64_t m = lo; m < hi; ++m) {
      const std::int64_t sign = mu[static_cast<std::size_t>(m - lo)];
      if (sign != 0) acc += sign * summatory_d4_exact(x / (m * m), segment_size).value;
    }
    lo = hi;
  }
  return {x, to_i64(acc), FunctionKind::DSQ};
}

SummatoryPoint summatory_exact(FunctionKind kind, std::int64_t x, std::size_t segment_size) {
  require_summatory_kind(kind);
  switch (kind) {
    case FunctionKind::D: return summatory_d_exact(x);
    case FunctionKind::D4: return summatory_d4_exact(x, segment_size);
    default: return summatory_dsq_exact(x, segment_size);
  }
}

void stream_summatory(FunctionKind kind, std::int64_t limit, const SummatoryVisitor& visitor,
                      std::size_t segment_size) {
  require_summatory_kind(kind);
  require_positive(limit);
  std::int64_t running = 0;
  for (std::int64_t lo = 1; lo <= limit;) {
    const std::int64_t hi =
        std::min<std::int64_t>(limit + 1, lo + static_cast<std::int64_t>(segment_size));
    const auto table = tabulate(kind, lo, hi, segment_size);
    for (std::int64_t n = lo; n < hi; ++n) {
      running = checked_add(running, table[n]);
      visitor(n, running);
    }
    lo = hi;
  }
}

}  // namespace divisum
