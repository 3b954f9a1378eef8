#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <queue>
#include <utility>
#include <vector>

#include "praginfo/dist.hpp"

namespace praginfo {

/// Per-outcome binary code lengths in bits. Ideal lengths are real-valued
/// (-log2 p); prefix-code lengths are positive integers stored as doubles.
/// Outcomes the code does not cover (zero probability under the code's
/// distribution) carry the `unencoded` sentinel and must be skipped in any
/// expectation whose weight there is zero anyway.
struct CodeLengths {
  std::vector<double> bits;

  static constexpr double unencoded = std::numeric_limits<double>::infinity();

  std::size_t size() const { return bits.size(); }
  bool encoded(std::size_t i) const { return std::isfinite(bits[i]); }
};

/// Kraft sum over encoded outcomes: sum 2^-l_i. <= 1 for any prefix code.
inline double kraft_sum(const CodeLengths& cl) {
  kahan_sum s;
  for (double l : cl.bits)
    if (std::isfinite(l)) s.add(std::exp2(-l));
  return s.value();
}

/// Expected code length under p, skipping zero-probability outcomes.
/// Every positive-probability outcome must be encoded.
inline double expected_length(const Dist& p, const CodeLengths& cl) {
  if (p.size() != cl.size()) throw domain_error("expected_length: dimension mismatch");
  kahan_sum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    if (!cl.encoded(i))
      throw domain_error("expected_length: outcome " + std::to_string(i) +
                         " has positive probability but no code");
    s.add(p[i] * cl.bits[i]);
  }
  return s.value();
}

/// Idealized shortest-code lengths -log2 p_i; zero-probability outcomes
/// are unencoded.
inline CodeLengths ideal_code_lengths(const Dist& p) {
  CodeLengths cl;
  cl.bits.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    cl.bits[i] = p[i] > 0.0 ? -std::log2(p[i]) : CodeLengths::unencoded;
  return cl;
}

/// Integer prefix-code lengths ceil(-log2 p_i). Satisfies the Kraft
/// inequality by construction and E_p[L] < H(p) + 1 under any p whose
/// support the code covers.
inline CodeLengths shannon_code_lengths(const Dist& p) {
  CodeLengths cl;
  cl.bits.resize(p.size());
  for (std::size_t i = 0; i < p.size(); ++i)
    cl.bits[i] = p[i] > 0.0 ? std::ceil(-std::log2(p[i])) : CodeLengths::unencoded;
  return cl;
}

/// Optimal binary prefix-code lengths (Huffman). Requires at least two
/// strictly positive entries; zero-probability outcomes are unencoded.
/// Equal-weight merges pop the lowest node id first (original outcome
/// indices, then merge-creation order), so results are deterministic.
inline CodeLengths huffman_code_lengths(const Dist& p) {
  const std::size_t n = p.size();
  std::size_t positive = 0;
  for (double v : p)
    if (v > 0.0) ++positive;
  if (positive < 2)
    throw domain_error("huffman_code_lengths: degenerate distribution; "
                       "need at least 2 strictly positive entries");

  using Node = std::pair<double, std::size_t>;  // (weight, id)
  std::priority_queue<Node, std::vector<Node>, std::greater<>> heap;
  for (std::size_t i = 0; i < n; ++i)
    if (p[i] > 0.0) heap.emplace(p[i], i);

  std::vector<std::size_t> parent(n, 0);
  std::vector<bool> has_parent(n, false);
  std::size_t next_id = n;
  while (heap.size() > 1) {
    const Node a = heap.top(); heap.pop();
    const Node b = heap.top(); heap.pop();
    const std::size_t merged = next_id++;
    parent.resize(next_id, 0);
    has_parent.resize(next_id, false);
    parent[a.second] = merged; has_parent[a.second] = true;
    parent[b.second] = merged; has_parent[b.second] = true;
    heap.emplace(a.first + b.first, merged);
  }

  CodeLengths cl;
  cl.bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (p[i] == 0.0) {
      cl.bits[i] = CodeLengths::unencoded;
      continue;
    }
    std::size_t depth = 0;
    for (std::size_t j = i; has_parent[j]; j = parent[j]) ++depth;
    cl.bits[i] = static_cast<double>(depth);
  }
  return cl;
}

enum class GapMode { Ideal, Integer };

/// Expected excess code length E_p[L_q - L_p] in bits: the cost of encoding
/// outcomes drawn from p_m with a code built for q instead.
///
/// Ideal mode uses -log2 lengths on both sides and equals D(p||q) exactly.
/// Integer mode uses real prefix codes: ceil(-log2 q_i) for the mismatched
/// code (the construction whose expectation under p is pinned to
/// [H+D, H+D+1)) and Huffman for the matched code; the result lies strictly
/// inside (D - 1, D + 1).
inline double expected_codelength_gap(const Dist& p, const Prior& q, GapMode mode) {
  if (p.size() != q.size())
    throw domain_error("expected_codelength_gap: dimension mismatch");
  const CodeLengths lq =
      mode == GapMode::Ideal ? ideal_code_lengths(q) : shannon_code_lengths(q);
  const CodeLengths lp =
      mode == GapMode::Ideal ? ideal_code_lengths(p) : huffman_code_lengths(p);
  kahan_sum s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0.0) continue;
    s.add(p[i] * (lq.bits[i] - lp.bits[i]));
  }
  return s.value();
}

}  // namespace praginfo
