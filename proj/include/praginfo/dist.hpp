#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "praginfo/core.hpp"

namespace praginfo {

/// Finite discrete probability distribution over an outcome space of size N.
///
/// Entries are validated (finite, non-negative) and the vector must sum to 1
/// within 1e-9 absolute; within that band it is renormalized exactly, so
/// file-loaded probabilities with decimal round-off construct cleanly.
/// Immutable after construction.
class Dist {
 public:
  explicit Dist(std::vector<double> probs) : p_(std::move(probs)) {
    if (p_.empty()) throw domain_error("Dist: empty probability vector");
    kahan_sum s;
    for (std::size_t i = 0; i < p_.size(); ++i) {
      if (!std::isfinite(p_[i]))
        throw domain_error("Dist: non-finite entry at index " + std::to_string(i));
      if (p_[i] < 0.0)
        throw domain_error("Dist: negative entry at index " + std::to_string(i));
      s.add(p_[i]);
    }
    const double total = s.value();
    if (std::fabs(total - 1.0) > kNormTol)
      throw domain_error("Dist: entries sum to " + format_quantity(total) +
                         ", outside 1 +/- 1e-9");
    if (total != 1.0)
      for (double& v : p_) v /= total;
  }

  Dist(std::initializer_list<double> probs) : Dist(std::vector<double>(probs)) {}

  /// Unit vector u_k: certainty in outcome k.
  static Dist unit(std::size_t n, std::size_t k) {
    if (k >= n) throw domain_error("Dist::unit: index out of range");
    std::vector<double> v(n, 0.0);
    v[k] = 1.0;
    return Dist(std::move(v));
  }

  static Dist uniform(std::size_t n) {
    if (n == 0) throw domain_error("Dist::uniform: empty");
    return Dist(std::vector<double>(n, 1.0 / static_cast<double>(n)));
  }

  std::size_t size() const { return p_.size(); }
  double operator[](std::size_t i) const { return p_[i]; }
  const std::vector<double>& probs() const { return p_; }

  auto begin() const { return p_.begin(); }
  auto end() const { return p_.end(); }

  bool approx_equal(const Dist& other, double tol = kUnitTol) const {
    if (size() != other.size()) return false;
    for (std::size_t i = 0; i < size(); ++i)
      if (std::fabs(p_[i] - other.p_[i]) > tol) return false;
    return true;
  }

  /// True when some entry is within tol of 1 (the rest are then within tol of 0).
  bool is_unit_vector(double tol = kUnitTol) const {
    for (double v : p_)
      if (std::fabs(v - 1.0) <= tol) return true;
    return false;
  }

 private:
  std::vector<double> p_;
};

/// A Dist whose entries are all strictly positive. Divergences against a
/// Prior are always finite, so D(p||q) never needs a log(0) escape hatch.
class Prior : public Dist {
 public:
  explicit Prior(std::vector<double> probs) : Dist(std::move(probs)) { check_positive(); }
  Prior(std::initializer_list<double> probs) : Dist(probs) { check_positive(); }
  explicit Prior(Dist d) : Dist(std::move(d)) { check_positive(); }

  static Prior uniform(std::size_t n) { return Prior(Dist::uniform(n)); }

 private:
  void check_positive() const {
    for (std::size_t i = 0; i < size(); ++i)
      if ((*this)[i] <= 0.0)
        throw domain_error("Prior: entry at index " + std::to_string(i) +
                           " is zero; priors must be strictly positive");
  }
};

/// Kullback-Leibler divergence D(p||q) in bits. Terms with p_i = 0
/// contribute exactly 0; log(0) is never evaluated.
inline double kl_divergence(const Dist& p, const Prior& q) {
  if (p.size() != q.size())
    throw domain_error("kl_divergence: dimension mismatch (" +
                       std::to_string(p.size()) + " vs " + std::to_string(q.size()) + ")");
  kahan_sum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    s.add(p[i] * std::log2(p[i] / q[i]));
  }
  return s.value();
}

/// Shannon entropy H(p) = -sum p_i log2 p_i, in bits, with 0 log 0 = 0.
inline double shannon_entropy(const Dist& p) {
  kahan_sum s;
  for (double v : p) {
    if (v == 0.0) continue;
    s.add(-v * std::log2(v));
  }
  return s.value();
}

/// lambda * a + (1 - lambda) * b.
inline Dist convex_mix(const Dist& a, const Dist& b, double lambda) {
  if (a.size() != b.size()) throw domain_error("convex_mix: dimension mismatch");
  if (!(lambda >= 0.0 && lambda <= 1.0))
    throw domain_error("convex_mix: lambda must lie in [0,1]");
  std::vector<double> v(a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    v[i] = lambda * a[i] + (1.0 - lambda) * b[i];
  return Dist(std::move(v));
}

}  // namespace praginfo
