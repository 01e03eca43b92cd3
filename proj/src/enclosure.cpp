#include "divisum/enclosure.hpp"

#include <gmp.h>

#include <algorithm>
#include <cstdio>
#include <utility>

#include "divisum/errors.hpp"

namespace divisum {

namespace {

// RAII scratch variable.
struct Scratch {
  explicit Scratch(int precision) { mpfr_init2(v, precision); }
  ~Scratch() { mpfr_clear(v); }
  Scratch(const Scratch&) = delete;
  Scratch& operator=(const Scratch&) = delete;
  mpfr_t v;
};

std::string format_mpfr(const char* fmt, int digits, mpfr_srcptr value) {
  char* buf = nullptr;
  if (mpfr_asprintf(&buf, fmt, digits, value) < 0) throw Error("mpfr_asprintf failed");
  std::string out(buf);
  mpfr_free_str(buf);
  return out;
}

}  // namespace

Enclosure::Enclosure(int precision) : precision_(precision) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

Enclosure::Enclosure(std::int64_t value, int precision) : Enclosure(precision) {
  mpfr_set_sj(lo_, value, MPFR_RNDD);
  mpfr_set_sj(hi_, value, MPFR_RNDU);
}

Enclosure::Enclosure(const Enclosure& other) : precision_(other.precision_) {
  mpfr_init2(lo_, precision_);
  mpfr_init2(hi_, precision_);
  mpfr_set(lo_, other.lo_, MPFR_RNDD);
  mpfr_set(hi_, other.hi_, MPFR_RNDU);
}

Enclosure::Enclosure(Enclosure&& other) noexcept : precision_(other.precision_) {
  mpfr_init2(lo_, MPFR_PREC_MIN);
  mpfr_init2(hi_, MPFR_PREC_MIN);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
}

Enclosure& Enclosure::operator=(const Enclosure& other) {
  if (this != &other) {
    set_precision_raw(other.precision_);
    mpfr_set(lo_, other.lo_, MPFR_RNDD);
    mpfr_set(hi_, other.hi_, MPFR_RNDU);
  }
  return *this;
}

Enclosure& Enclosure::operator=(Enclosure&& other) noexcept {
  std::swap(precision_, other.precision_);
  mpfr_swap(lo_, other.lo_);
  mpfr_swap(hi_, other.hi_);
  return *this;
}

Enclosure::~Enclosure() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

void Enclosure::set_precision_raw(int precision) {
  precision_ = precision;
  mpfr_set_prec(lo_, precision);
  mpfr_set_prec(hi_, precision);
}

Enclosure Enclosure::rational(std::int64_t num, std::int64_t den, int precision) {
  if (den == 0) throw DomainError("zero denominator");
  mpq_t q;
  mpq_init(q);
  // GMP takes long; int64_t is long on the supported LP64 targets.
  mpq_set_si(q, static_cast<long>(num), 1);
  mpz_set_si(mpq_denref(q), static_cast<long>(den));
  mpq_canonicalize(q);
  Enclosure out(precision);
  mpfr_set_q(out.lo_, q, MPFR_RNDD);
  mpfr_set_q(out.hi_, q, MPFR_RNDU);
  mpq_clear(q);
  return out;
}

Enclosure Enclosure::decimal(const std::string& text, int precision) {
  Enclosure out(precision);
  if (mpfr_set_str(out.lo_, text.c_str(), 10, MPFR_RNDD) != 0 ||
      mpfr_set_str(out.hi_, text.c_str(), 10, MPFR_RNDU) != 0)
    throw DomainError("not a decimal number: '" + text + "'");
  return out;
}

Enclosure Enclosure::from_double(double value, int precision) {
  Enclosure out(precision);
  mpfr_set_d(out.lo_, value, MPFR_RNDD);
  mpfr_set_d(out.hi_, value, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::hull(const Enclosure& a, const Enclosure& b) {
  Enclosure out(std::max(a.precision_, b.precision_));
  mpfr_min(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_max(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::pi(int precision) {
  Enclosure out(precision);
  mpfr_const_pi(out.lo_, MPFR_RNDD);
  mpfr_const_pi(out.hi_, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::euler_e(int precision) { return exp(Enclosure(1, precision)); }

Enclosure Enclosure::rounded(int precision) const {
  Enclosure out(precision);
  mpfr_set(out.lo_, lo_, MPFR_RNDD);
  mpfr_set(out.hi_, hi_, MPFR_RNDU);
  return out;
}

double Enclosure::lower() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double Enclosure::upper() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double Enclosure::mid_double() const {
  Scratch m(precision_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return mpfr_get_d(m.v, MPFR_RNDN);
}

double Enclosure::rad_double() const {
  Scratch r(precision_);
  mpfr_sub(r.v, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(r.v, r.v, 1, MPFR_RNDU);
  return mpfr_get_d(r.v, MPFR_RNDU);
}

std::string Enclosure::mid_string(int digits) const {
  Scratch m(precision_ + 1);
  mpfr_add(m.v, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m.v, m.v, 1, MPFR_RNDN);
  return format_mpfr("%.*Rg", digits, m.v);
}

std::string Enclosure::rad_string(int digits) const {
  Scratch r(precision_);
  mpfr_sub(r.v, hi_, lo_, MPFR_RNDU);
  mpfr_div_2ui(r.v, r.v, 1, MPFR_RNDU);
  return format_mpfr("%.*RUe", digits - 1, r.v);
}

bool Enclosure::contains(const Enclosure& other) const {
  return mpfr_lessequal_p(lo_, other.lo_) && mpfr_lessequal_p(other.hi_, hi_);
}

bool Enclosure::contains(std::int64_t value) const {
  return mpfr_cmp_si(lo_, value) <= 0 && mpfr_cmp_si(hi_, value) >= 0;
}

bool Enclosure::certainly_lt(const Enclosure& other) const { return mpfr_less_p(hi_, other.lo_); }
bool Enclosure::certainly_le(const Enclosure& other) const {
  return mpfr_lessequal_p(hi_, other.lo_);
}
bool Enclosure::certainly_positive() const { return mpfr_sgn(lo_) > 0; }
bool Enclosure::certainly_negative() const { return mpfr_sgn(hi_) < 0; }
bool Enclosure::is_point() const { return mpfr_equal_p(lo_, hi_); }

bool Enclosure::floor_if_determined(std::int64_t& out) const {
  Scratch a(precision_);
  Scratch b(precision_);
  mpfr_floor(a.v, lo_);
  mpfr_floor(b.v, hi_);
  if (!mpfr_equal_p(a.v, b.v)) return false;
  out = mpfr_get_sj(a.v, MPFR_RNDZ);
  return true;
}

Enclosure Enclosure::widened(const Enclosure& radius) const {
  if (radius.certainly_negative()) throw DomainError("negative radius");
  Enclosure out(std::max(precision_, radius.precision_));
  mpfr_sub(out.lo_, lo_, radius.hi_, MPFR_RNDD);
  mpfr_add(out.hi_, hi_, radius.hi_, MPFR_RNDU);
  return out;
}

Enclosure Enclosure::operator-() const {
  Enclosure out(precision_);
  mpfr_neg(out.lo_, hi_, MPFR_RNDD);
  mpfr_neg(out.hi_, lo_, MPFR_RNDU);
  return out;
}

Enclosure operator+(const Enclosure& a, const Enclosure& b) {
  Enclosure out(std::max(a.precision_, b.precision_));
  mpfr_add(out.lo_, a.lo_, b.lo_, MPFR_RNDD);
  mpfr_add(out.hi_, a.hi_, b.hi_, MPFR_RNDU);
  return out;
}

Enclosure operator-(const Enclosure& a, const Enclosure& b) {
  Enclosure out(std::max(a.precision_, b.precision_));
  mpfr_sub(out.lo_, a.lo_, b.hi_, MPFR_RNDD);
  mpfr_sub(out.hi_, a.hi_, b.lo_, MPFR_RNDU);
  return out;
}

Enclosure operator*(const Enclosure& a, const Enclosure& b) {
  const int prec = std::max(a.precision_, b.precision_);
  Enclosure out(prec);
  Scratch t(prec);
  mpfr_srcptr xs[2] = {a.lo_, a.hi_};
  mpfr_srcptr ys[2] = {b.lo_, b.hi_};
  bool first = true;
  for (auto x : xs) {
    for (auto y : ys) {
      mpfr_mul(t.v, x, y, MPFR_RNDD);
      if (first || mpfr_less_p(t.v, out.lo_)) mpfr_set(out.lo_, t.v, MPFR_RNDD);
      mpfr_mul(t.v, x, y, MPFR_RNDU);
      if (first || mpfr_greater_p(t.v, out.hi_)) mpfr_set(out.hi_, t.v, MPFR_RNDU);
      first = false;
    }
  }
  return out;
}

Enclosure operator/(const Enclosure& a, const Enclosure& b) {
  if (!b.certainly_positive() && !b.certainly_negative())
    throw DomainError("division by an enclosure containing zero");
  const int prec = std::max(a.precision_, b.precision_);
  Enclosure inv(prec);
  mpfr_ui_div(inv.lo_, 1, b.hi_, MPFR_RNDD);
  mpfr_ui_div(inv.hi_, 1, b.lo_, MPFR_RNDU);
  return a * inv;
}

Enclosure operator+(const Enclosure& a, std::int64_t b) { return a + Enclosure(b, a.precision()); }
Enclosure operator*(std::int64_t a, const Enclosure& b) { return Enclosure(a, b.precision()) * b; }

Enclosure abs(const Enclosure& a) {
  if (mpfr_sgn(a.lo_) >= 0) return a;
  if (mpfr_sgn(a.hi_) <= 0) return -a;
  Enclosure out(a.precision_);
  mpfr_set_zero(out.lo_, 1);
  mpfr_neg(out.hi_, a.lo_, MPFR_RNDU);
  mpfr_max(out.hi_, out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Enclosure log(const Enclosure& a) {
  if (!a.certainly_positive()) throw DomainError("log of a non-positive enclosure");
  Enclosure out(a.precision_);
  mpfr_log(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_log(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Enclosure exp(const Enclosure& a) {
  Enclosure out(a.precision_);
  mpfr_exp(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_exp(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Enclosure sqrt(const Enclosure& a) {
  if (mpfr_sgn(a.lo_) < 0) throw DomainError("sqrt of a negative enclosure");
  Enclosure out(a.precision_);
  mpfr_sqrt(out.lo_, a.lo_, MPFR_RNDD);
  mpfr_sqrt(out.hi_, a.hi_, MPFR_RNDU);
  return out;
}

Enclosure pow(const Enclosure& base, int exponent) {
  if (exponent < 0) return Enclosure(1, base.precision_) / pow(base, -exponent);
  if (exponent == 0) return Enclosure(1, base.precision_);
  Enclosure out(base.precision_);
  if (exponent % 2 == 1 || mpfr_sgn(base.lo_) >= 0) {
    mpfr_pow_ui(out.lo_, base.lo_, static_cast<unsigned long>(exponent), MPFR_RNDD);
    mpfr_pow_ui(out.hi_, base.hi_, static_cast<unsigned long>(exponent), MPFR_RNDU);
    return out;
  }
  if (mpfr_sgn(base.hi_) <= 0) return pow(-base, exponent);
  return pow(abs(base), exponent);
}

Enclosure pow(const Enclosure& base, std::int64_t num, std::int64_t den) {
  if (den <= 0) throw DomainError("pow needs a positive denominator");
  if (!base.certainly_positive()) {
    if (num > 0 && mpfr_sgn(base.lo_) >= 0 && mpfr_zero_p(base.hi_)) return Enclosure(base.precision_);
    throw DomainError("fractional power of a non-positive enclosure");
  }
  const int prec = base.precision_;
  const Enclosure q = Enclosure::rational(num, den, prec);
  if (!q.is_point()) return exp(q * log(base));
  Enclosure out(prec);
  // x^q is increasing in x for q > 0 and decreasing for q < 0.
  mpfr_srcptr small = num >= 0 ? base.lo_ : base.hi_;
  mpfr_srcptr large = num >= 0 ? base.hi_ : base.lo_;
  mpfr_pow(out.lo_, small, q.lo_, MPFR_RNDD);
  mpfr_pow(out.hi_, large, q.lo_, MPFR_RNDU);
  return out;
}

}  // namespace divisum
