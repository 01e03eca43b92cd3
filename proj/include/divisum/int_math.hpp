#pragma once

#include <cstdint>

namespace divisum {

/// Exact floor(sqrt(n)) by integer Newton iteration.
std::int64_t isqrt(std::int64_t n);

/// Checked arithmetic; throws OverflowError on signed 64-bit overflow.
std::int64_t checked_add(std::int64_t a, std::int64_t b);
std::int64_t checked_sub(std::int64_t a, std::int64_t b);
std::int64_t checked_mul(std::int64_t a, std::int64_t b);

/// Smallest prime factor by trial division. Slow; used for validation only.
std::int64_t trial_spf(std::int64_t n);

}  // namespace divisum
