#pragma once

// <cstdint> must precede mpfr.h for the intmax_t entry points.
#include <cstdint>
#include <string>

#include <mpfr.h>

namespace divisum {

inline constexpr int kDefaultPrecision = 256;
inline constexpr int kMaxPrecision = 1024;

/// A real number known to lie in the closed interval [lower, upper].
///
/// Endpoints are MPFR floats at a common working precision; every operation
/// rounds the lower endpoint down and the upper endpoint up, so the exact
/// result of the operation on any pair of represented reals stays inside.
/// The midpoint/radius view (mid(), rad()) is derived from the endpoints,
/// with the radius rounded up.
class Enclosure {
 public:
  explicit Enclosure(int precision = kDefaultPrecision);
  Enclosure(std::int64_t value, int precision);
  Enclosure(const Enclosure& other);
  Enclosure(Enclosure&& other) noexcept;
  Enclosure& operator=(const Enclosure& other);
  Enclosure& operator=(Enclosure&& other) noexcept;
  ~Enclosure();

  /// Tightest enclosure of num/den at the given precision.
  static Enclosure rational(std::int64_t num, std::int64_t den, int precision);
  /// Tightest enclosure of a decimal literal such as "0.397".
  static Enclosure decimal(const std::string& text, int precision);
  /// Enclosure of a double taken as exact.
  static Enclosure from_double(double value, int precision);
  /// [lo, hi] from two enclosures' outer endpoints.
  static Enclosure hull(const Enclosure& a, const Enclosure& b);
  static Enclosure pi(int precision);
  static Enclosure euler_e(int precision);

  int precision() const { return precision_; }
  /// Same interval re-rounded outward to another precision.
  Enclosure rounded(int precision) const;

  double lower() const;  // rounded down
  double upper() const;  // rounded up
  double mid_double() const;
  double rad_double() const;  // rounded up
  /// Midpoint and radius as decimal strings with `digits` significant digits.
  std::string mid_string(int digits = 30) const;
  std::string rad_string(int digits = 3) const;

  bool contains(const Enclosure& other) const;
  bool contains(std::int64_t value) const;
  bool certainly_lt(const Enclosure& other) const;
  bool certainly_le(const Enclosure& other) const;
  bool certainly_positive() const;
  bool certainly_negative() const;
  bool is_point() const;

  /// The common floor of every point, or false when the interval straddles
  /// an integer.
  bool floor_if_determined(std::int64_t& out) const;

  /// Widen symmetrically by a nonnegative enclosure's upper endpoint.
  Enclosure widened(const Enclosure& radius) const;

  Enclosure operator-() const;
  friend Enclosure operator+(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator-(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator*(const Enclosure& a, const Enclosure& b);
  friend Enclosure operator/(const Enclosure& a, const Enclosure& b);
  Enclosure& operator+=(const Enclosure& b) { return *this = *this + b; }
  Enclosure& operator-=(const Enclosure& b) { return *this = *this - b; }
  Enclosure& operator*=(const Enclosure& b) { return *this = *this * b; }
  Enclosure& operator/=(const Enclosure& b) { return *this = *this / b; }

  friend Enclosure abs(const Enclosure& a);
  friend Enclosure log(const Enclosure& a);
  friend Enclosure exp(const Enclosure& a);
  friend Enclosure sqrt(const Enclosure& a);
  friend Enclosure pow(const Enclosure& base, int exponent);
  /// base^(num/den) for base > 0.
  friend Enclosure pow(const Enclosure& base, std::int64_t num, std::int64_t den);

  const __mpfr_struct* lower_ptr() const { return lo_; }
  const __mpfr_struct* upper_ptr() const { return hi_; }

 private:
  void set_precision_raw(int precision);

  int precision_;
  mpfr_t lo_;
  mpfr_t hi_;
};

Enclosure operator+(const Enclosure& a, std::int64_t b);
Enclosure operator*(std::int64_t a, const Enclosure& b);

}  // namespace divisum
