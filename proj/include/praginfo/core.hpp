#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace praginfo {

/// Absolute tolerance for "sums to one" checks on construction.
inline constexpr double kNormTol = 1e-9;
/// Tolerance for "this posterior is a unit vector" / elementwise equality checks.
inline constexpr double kUnitTol = 1e-9;

/// Base class for all library errors.
class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: JSON parse failures, schema violations, bad shapes.
class schema_error : public error {
 public:
  using error::error;
};

/// Valid syntax but mathematically inadmissible values (zero prior entry,
/// probability out of range, w > T, ...).
class domain_error : public error {
 public:
  using error::error;
};

/// A message source whose long-run behaviour cannot reproduce the ensemble
/// it is paired with (stationary distribution != message probabilities).
class mismatch_error : public error {
 public:
  using error::error;
};

/// Kahan compensated summation. All divergence/entropy sums in the library
/// go through this so that the 1e-12 identity checks stay achievable.
struct kahan_sum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  double value() const { return sum; }
};

/// Dense row-major matrix of doubles. Just enough for joint priors,
/// joint message probabilities and transition matrices.
class Grid {
 public:
  Grid() = default;
  Grid(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw domain_error("Grid: zero dimension");
  }
  Grid(std::size_t rows, std::size_t cols, std::vector<double> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (rows == 0 || cols == 0) throw domain_error("Grid: zero dimension");
    if (data_.size() != rows * cols) throw domain_error("Grid: size mismatch");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  const std::vector<double>& data() const { return data_; }

  double sum() const {
    kahan_sum s;
    for (double v : data_) s.add(v);
    return s.value();
  }

  /// Divides every entry by the total. Caller checks the total is sane.
  void scale(double factor) {
    for (double& v : data_) v *= factor;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Formats a value with up to 12 significant digits, the output precision
/// used everywhere (reports and CSV files are byte-stable given equal input).
inline std::string format_quantity(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

/// FNV-1a 64-bit digest; used to echo input-file identities in reports.
inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace praginfo
