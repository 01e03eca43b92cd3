#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

namespace divisum {

/// Arithmetic functions that can be tabulated over a segment.
///   D    number of divisors d(n)
///   D4   Piltz divisor function d_4(n), d_4(p^e) = binomial(e+3, 3)
///   DSQ  d(n)^2
///   H    coefficients of 1/zeta(2s): h(m^2) = mu(m), zero off squares
///   SPF  smallest prime factor (1 for n = 1)
enum class FunctionKind : std::int64_t { D = 0, D4 = 1, DSQ = 2, H = 3, SPF = 4 };

std::string_view to_string(FunctionKind kind);
FunctionKind parse_function_kind(std::string_view name);

inline constexpr std::size_t kDefaultSegmentSize = std::size_t{1} << 22;

/// Values of one arithmetic function on the half-open segment [lo, hi).
class ArithmeticTable {
 public:
  ArithmeticTable(FunctionKind kind, std::int64_t lo, std::int64_t hi,
                  std::vector<std::int64_t> values);

  FunctionKind kind() const { return kind_; }
  std::int64_t lo() const { return lo_; }
  std::int64_t hi() const { return hi_; }
  std::size_t size() const { return values_.size(); }

  /// Value at n; n must lie in [lo, hi).
  std::int64_t at(std::int64_t n) const;
  std::int64_t operator[](std::int64_t n) const { return values_[static_cast<std::size_t>(n - lo_)]; }
  std::span<const std::int64_t> values() const { return values_; }

  bool operator==(const ArithmeticTable&) const = default;

 private:
  FunctionKind kind_;
  std::int64_t lo_;
  std::int64_t hi_;
  std::vector<std::int64_t> values_;
};

/// Primes p <= limit by the sieve of Eratosthenes.
std::vector<std::int64_t> primes_up_to(std::int64_t limit);

/// Smallest prime factor of every n in [lo, hi).
/// Throws CapacityError when hi - lo exceeds max_segment.
ArithmeticTable sieve_spf(std::int64_t lo, std::int64_t hi,
                          std::size_t max_segment = kDefaultSegmentSize);

/// Tabulates `kind` on [lo, hi) with a segmented sieve that strips every
/// prime p <= sqrt(hi) from each n and rebuilds the value multiplicatively.
ArithmeticTable tabulate(FunctionKind kind, std::int64_t lo, std::int64_t hi,
                         std::size_t max_segment = kDefaultSegmentSize);

/// Moebius function on [lo, hi). Used by the d(n)^2 identity.
std::vector<std::int64_t> tabulate_mobius(std::int64_t lo, std::int64_t hi,
                                          std::size_t max_segment = kDefaultSegmentSize);

// Flat binary cache format, all fields little-endian signed 64-bit:
//   lo, hi, kind tag (FunctionKind value), then hi - lo values.
void write_table(std::ostream& out, const ArithmeticTable& table);
ArithmeticTable read_table(std::istream& in);

}  // namespace divisum
