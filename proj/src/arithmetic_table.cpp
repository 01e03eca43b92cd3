#include "divisum/arithmetic_table.hpp"

#include <array>
#include <istream>
#include <ostream>
#include <string>

#include "divisum/errors.hpp"
#include "divisum/int_math.hpp"

namespace divisum {

namespace {

void check_segment(std::int64_t lo, std::int64_t hi, std::size_t max_segment) {
  if (lo < 1 || hi <= lo)
    throw DomainError("segment requires 1 <= lo < hi, got [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + ")");
  if (static_cast<std::uint64_t>(hi - lo) > max_segment)
    throw CapacityError("segment of " + std::to_string(hi - lo) + " elements exceeds capacity " +
                        std::to_string(max_segment));
}

// Value of the multiplicative function at p^e. For SPF the caller handles it.
std::int64_t prime_power_value(FunctionKind kind, int e) {
  switch (kind) {
    case FunctionKind::D:
      return e + 1;
    case FunctionKind::D4:
      return static_cast<std::int64_t>(e + 3) * (e + 2) * (e + 1) / 6;
    case FunctionKind::DSQ:
      return static_cast<std::int64_t>(e + 1) * (e + 1);
    case FunctionKind::H:
      return e == 0 ? 1 : (e == 2 ? -1 : 0);
    case FunctionKind::SPF:
      break;
  }
  return 0;
}

// Strips every base prime from each n in [lo, hi). `on_power(i, p, e)` is
// invoked for each prime power p^e || n; `on_rest(i, r)` for the cofactor
// r > 1 left over, which is then a prime larger than sqrt(hi).
template <typename OnPower, typename OnRest>
void factor_segment(std::int64_t lo, std::int64_t hi, OnPower&& on_power, OnRest&& on_rest) {
  const auto n = static_cast<std::size_t>(hi - lo);
  std::vector<std::int64_t> rest(n);
  for (std::size_t i = 0; i < n; ++i) rest[i] = lo + static_cast<std::int64_t>(i);

  for (std::int64_t p : primes_up_to(isqrt(hi - 1))) {
    std::int64_t start = ((lo + p - 1) / p) * p;
    for (std::int64_t m = start; m < hi; m += p) {
      auto i = static_cast<std::size_t>(m - lo);
      int e = 0;
      do {
        rest[i] /= p;
        ++e;
      } while (rest[i] % p == 0);
      on_power(i, p, e);
    }
  }
  for (std::size_t i = 0; i < n; ++i)
    if (rest[i] > 1) on_rest(i, rest[i]);
}

void put_i64(std::ostream& out, std::int64_t v) {
  std::array<char, 8> buf{};
  auto u = static_cast<std::uint64_t>(v);
  for (int b = 0; b < 8; ++b) buf[b] = static_cast<char>((u >> (8 * b)) & 0xff);
  out.write(buf.data(), buf.size());
}

std::int64_t get_i64(std::istream& in) {
  std::array<unsigned char, 8> buf{};
  in.read(reinterpret_cast<char*>(buf.data()), buf.size());
  if (!in) throw Error("truncated table stream");
  std::uint64_t u = 0;
  for (int b = 7; b >= 0; --b) u = (u << 8) | buf[b];
  return static_cast<std::int64_t>(u);
}

}  // namespace

std::string_view to_string(FunctionKind kind) {
  switch (kind) {
    case FunctionKind::D: return "d";
    case FunctionKind::D4: return "d4";
    case FunctionKind::DSQ: return "dsq";
    case FunctionKind::H: return "h";
    case FunctionKind::SPF: return "spf";
  }
  return "?";
}

FunctionKind parse_function_kind(std::string_view name) {
  for (auto k : {FunctionKind::D, FunctionKind::D4, FunctionKind::DSQ, FunctionKind::H,
                 FunctionKind::SPF})
    if (to_string(k) == name) return k;
  throw DomainError("unknown function kind '" + std::string(name) + "'");
}

ArithmeticTable::ArithmeticTable(FunctionKind kind, std::int64_t lo, std::int64_t hi,
                                 std::vector<std::int64_t> values)
    : kind_(kind), lo_(lo), hi_(hi), values_(std::move(values)) {
  if (lo < 1 || hi <= lo || values_.size() != static_cast<std::size_t>(hi - lo))
    throw DomainError("inconsistent table bounds");
}

std::int64_t ArithmeticTable::at(std::int64_t n) const {
  if (n < lo_ || n >= hi_)
    throw DomainError(std::to_string(n) + " outside table [" + std::to_string(lo_) + ", " +
                      std::to_string(hi_) + ")");
  return values_[static_cast<std::size_t>(n - lo_)];
}

std::vector<std::int64_t> primes_up_to(std::int64_t limit) {
  std::vector<std::int64_t> primes;
  if (limit < 2) return primes;
  std::vector<bool> composite(static_cast<std::size_t>(limit) + 1, false);
  for (std::int64_t p = 2; p <= limit; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    primes.push_back(p);
    for (std::int64_t m = p * p; m <= limit; m += p) composite[static_cast<std::size_t>(m)] = true;
  }
  return primes;
}

ArithmeticTable sieve_spf(std::int64_t lo, std::int64_t hi, std::size_t max_segment) {
  check_segment(lo, hi, max_segment);
  std::vector<std::int64_t> spf(static_cast<std::size_t>(hi - lo), 0);
  // Base primes arrive in increasing order, so the first one to land wins.
  factor_segment(
      lo, hi,
      [&](std::size_t i, std::int64_t p, int) {
        if (spf[i] == 0) spf[i] = p;
      },
      [](std::size_t, std::int64_t) {});
  for (std::size_t i = 0; i < spf.size(); ++i)
    if (spf[i] == 0) spf[i] = lo + static_cast<std::int64_t>(i);
  return {FunctionKind::SPF, lo, hi, std::move(spf)};
}

ArithmeticTable tabulate(FunctionKind kind, std::int64_t lo, std::int64_t hi,
                         std::size_t max_segment) {
  if (kind == FunctionKind::SPF) return sieve_spf(lo, hi, max_segment);
  check_segment(lo, hi, max_segment);
  std::vector<std::int64_t> values(static_cast<std::size_t>(hi - lo), 1);
  const std::int64_t prime_value = prime_power_value(kind, 1);
  factor_segment(
      lo, hi, [&](std::size_t i, std::int64_t, int e) { values[i] *= prime_power_value(kind, e); },
      [&](std::size_t i, std::int64_t) { values[i] *= prime_value; });
  return {kind, lo, hi, std::move(values)};
}

std::vector<std::int64_t> tabulate_mobius(std::int64_t lo, std::int64_t hi,
                                          std::size_t max_segment) {
  check_segment(lo, hi, max_segment);
  std::vector<std::int64_t> mu(static_cast<std::size_t>(hi - lo), 1);
  factor_segment(
      lo, hi, [&](std::size_t i, std::int64_t, int e) { mu[i] = e == 1 ? -mu[i] : 0; },
      [&](std::size_t i, std::int64_t) { mu[i] = -mu[i]; });
  return mu;
}

void write_table(std::ostream& out, const ArithmeticTable& table) {
  put_i64(out, table.lo());
  put_i64(out, table.hi());
  put_i64(out, static_cast<std::int64_t>(table.kind()));
  for (std::int64_t v : table.values()) put_i64(out, v);
  if (!out) throw Error("failed to write table");
}

ArithmeticTable read_table(std::istream& in) {
  std::int64_t lo = get_i64(in);
  std::int64_t hi = get_i64(in);
  std::int64_t tag = get_i64(in);
  if (tag < 0 || tag > static_cast<std::int64_t>(FunctionKind::SPF))
    throw Error("unknown kind tag " + std::to_string(tag));
  if (lo < 1 || hi <= lo) throw Error("corrupt table header");
  std::vector<std::int64_t> values(static_cast<std::size_t>(hi - lo));
  for (auto& v : values) v = get_i64(in);
  return {static_cast<FunctionKind>(tag), lo, hi, std::move(values)};
}

}  // namespace divisum
