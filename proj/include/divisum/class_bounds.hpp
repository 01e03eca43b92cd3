#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "divisum/enclosure.hpp"

namespace divisum {

struct NumberFieldInput {
  int n_K = 4;
  int r1 = 0;
  int r2 = 0;
  std::int64_t abs_disc = 1;
};

struct ClassBoundResult {
  Enclosure b;
  std::int64_t bound_exact = 0;            // sum_{m <= b} d4(m)
  std::optional<Enclosure> bound_formula;  // (1/3) b log^3 b, only for b >= 193
  std::string method_note;
};

/// Minkowski bound (n!/n^n) (4/pi)^r2 sqrt|d_K|. Accepts n_K in {2, 3, 4};
/// throws SignatureError when r1 + 2 r2 != n_K.
Enclosure minkowski_bound(const NumberFieldInput& input, int precision = kDefaultPrecision);
/// The same with the discriminant given as an enclosure.
Enclosure minkowski_bound(int n_K, int r1, int r2, const Enclosure& abs_disc);

/// h_K <= sum_{m <= b} d4(m). Throws IndeterminateError if floor(b) is not
/// determined by the enclosure.
std::int64_t class_bound_exact(const Enclosure& b);

/// (1/3) b (log b)^3; DomainError unless b >= 193 for certain.
Enclosure class_bound_formula(const Enclosure& b);

/// Full quartic computation, raising precision (x2 up to 1024 bits) when
/// floor(b) is undetermined.
ClassBoundResult class_bound(const NumberFieldInput& input, int precision = kDefaultPrecision);

struct BatchRow {
  std::string label;
  NumberFieldInput input;
  std::optional<ClassBoundResult> result;
  std::string error;  // empty on success
  std::vector<std::string> fields;  // the row as read, echoed for failed rows
};

/// Reads `label,n_K,r1,r2,abs_disc` rows (header required) and computes each
/// row independently; bad rows carry an error instead of aborting the batch.
std::vector<BatchRow> batch_class_bounds(std::istream& in, int precision = kDefaultPrecision);

/// Writes the input columns plus b_mid,b_rad,bound_exact,bound_formula,error.
void write_batch_csv(std::ostream& out, const std::vector<BatchRow>& rows);

}  // namespace divisum
