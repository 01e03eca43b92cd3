#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>

#include "divisum/arithmetic_table.hpp"

namespace divisum {

/// An exact partial sum sum_{n <= x} f(n) for f in {d, d4, dsq}.
struct SummatoryPoint {
  std::int64_t x;
  std::int64_t value;
  FunctionKind kind;

  bool operator==(const SummatoryPoint&) const = default;
};

/// sum_{n <= x} d(n) = 2 sum_{a <= sqrt x} floor(x/a) - floor(sqrt x)^2, O(sqrt x).
SummatoryPoint summatory_d_exact(std::int64_t x);

/// sum_{n <= x} d4(n) through d4 = d * d and the hyperbola split at sqrt x:
///   2 sum_{a <= sqrt x} d(a) D(x/a) - D(sqrt x)^2,  D = summatory d.
/// O(x^{3/4}) work.
SummatoryPoint summatory_d4_exact(std::int64_t x, std::size_t segment_size = kDefaultSegmentSize);

/// sum_{n <= x} d(n)^2 = sum_{m^2 <= x} mu(m) * sum_{b <= x/m^2} d4(b).
SummatoryPoint summatory_dsq_exact(std::int64_t x, std::size_t segment_size = kDefaultSegmentSize);

/// Dispatches on kind (D, D4 or DSQ).
SummatoryPoint summatory_exact(FunctionKind kind, std::int64_t x,
                               std::size_t segment_size = kDefaultSegmentSize);

using SummatoryVisitor = std::function<void(std::int64_t n, std::int64_t running_sum)>;

/// Calls visitor(n, sum_{m <= n} f(m)) for n = 1..limit in order, holding one
/// segment in memory at a time.
void stream_summatory(FunctionKind kind, std::int64_t limit, const SummatoryVisitor& visitor,
                      std::size_t segment_size = kDefaultSegmentSize);

}  // namespace divisum
