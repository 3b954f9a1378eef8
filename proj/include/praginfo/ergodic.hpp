#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "praginfo/ensemble.hpp"
#include "praginfo/rng.hpp"

namespace praginfo {

/// Stationary distribution of an irreducible row-stochastic matrix by damped
/// power iteration: v <- (v P + v) / 2 until successive iterates agree to
/// 1e-12 in max norm. The damping keeps periodic chains convergent without
/// changing the fixed point.
inline Dist stationary_distribution(const Grid& transition) {
  if (transition.rows() != transition.cols())
    throw domain_error("stationary_distribution: matrix must be square");
  const std::size_t n = transition.rows();
  for (std::size_t r = 0; r < n; ++r) {
    kahan_sum s;
    for (std::size_t c = 0; c < n; ++c) {
      if (transition.at(r, c) < 0.0)
        throw domain_error("stationary_distribution: negative transition probability");
      s.add(transition.at(r, c));
    }
    if (std::fabs(s.value() - 1.0) > kNormTol)
      throw domain_error("stationary_distribution: row " + std::to_string(r) +
                         " sums to " + format_quantity(s.value()));
  }

  std::vector<double> v(n, 1.0 / static_cast<double>(n)), next(n);
  constexpr std::size_t kMaxIters = 1000000;
  for (std::size_t iter = 0; iter < kMaxIters; ++iter) {
    for (std::size_t c = 0; c < n; ++c) {
      kahan_sum s;
      for (std::size_t r = 0; r < n; ++r) s.add(v[r] * transition.at(r, c));
      next[c] = 0.5 * s.value() + 0.5 * v[c];
    }
    double delta = 0.0;
    for (std::size_t c = 0; c < n; ++c) delta = std::max(delta, std::fabs(next[c] - v[c]));
    v.swap(next);
    if (delta < 1e-12) return Dist(std::move(v));
  }
  throw domain_error("stationary_distribution: no convergence after 1e6 iterations");
}

/// Generator of message indices for ergodic sampling: IID draws from a fixed
/// distribution, or steps of an irreducible Markov chain.
class MessageSource {
 public:
  enum class Kind { IID, Markov };

  static MessageSource iid(Dist sampling, std::uint64_t seed) {
    return MessageSource(Kind::IID, std::move(sampling), Grid(1, 1, 1.0), 0, seed);
  }

  static MessageSource markov(Grid transition, std::size_t initial_state, std::uint64_t seed) {
    if (transition.rows() != transition.cols())
      throw domain_error("MessageSource: transition matrix must be square");
    if (initial_state >= transition.rows())
      throw domain_error("MessageSource: initial state out of range");
    for (std::size_t r = 0; r < transition.rows(); ++r) {
      std::vector<double> row(transition.cols());
      for (std::size_t c = 0; c < transition.cols(); ++c) row[c] = transition.at(r, c);
      Dist check(std::move(row));  // validates each row
      (void)check;
    }
    check_irreducible(transition);
    return MessageSource(Kind::Markov, Dist::uniform(transition.rows()), std::move(transition),
                         initial_state, seed);
  }

  Kind kind() const { return kind_; }
  std::uint64_t seed() const { return seed_; }
  std::size_t message_count() const {
    return kind_ == Kind::IID ? iid_dist_.size() : transition_.rows();
  }
  const Grid& transition() const { return transition_; }
  const Dist& sampling_dist() const { return iid_dist_; }
  std::size_t initial_state() const { return initial_state_; }

  /// The long-run message frequencies this source produces.
  Dist stationary() const {
    return kind_ == Kind::IID ? iid_dist_ : stationary_distribution(transition_);
  }

 private:
  MessageSource(Kind kind, Dist iid_dist, Grid transition, std::size_t initial_state,
                std::uint64_t seed)
      : kind_(kind),
        iid_dist_(std::move(iid_dist)),
        transition_(std::move(transition)),
        initial_state_(initial_state),
        seed_(seed) {}

  // every message must be reachable from every other along positive edges
  static void check_irreducible(const Grid& t) {
    const std::size_t n = t.rows();
    std::vector<bool> reach(n * n, false);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) reach[r * n + c] = t.at(r, c) > 0.0;
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t r = 0; r < n; ++r)
        if (reach[r * n + k])
          for (std::size_t c = 0; c < n; ++c)
            if (reach[k * n + c]) reach[r * n + c] = true;
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c)
        if (!reach[r * n + c])
          throw domain_error("MessageSource: chain is not irreducible (state " +
                             std::to_string(c) + " unreachable from " + std::to_string(r) + ")");
  }

  Kind kind_;
  Dist iid_dist_;
  Grid transition_;
  std::size_t initial_state_;
  std::uint64_t seed_;
};

/// Running ergodic averages Phi_N for N = 1..n of the per-message
/// divergences along one sampled message sequence.
struct Trajectory {
  std::vector<double> running_avg;
  std::uint64_t seed;

  std::size_t n() const { return running_avg.size(); }
  double final_avg() const { return running_avg.back(); }
};

namespace detail {

inline std::size_t categorical_draw(rng_t& rng, const std::vector<double>& probs) {
  const double u = unit_double(rng);
  double acc = 0.0;
  for (std::size_t i = 0; i < probs.size(); ++i) {
    acc += probs[i];
    if (u < acc) return i;
  }
  return probs.size() - 1;  // guard against accumulated round-off
}

}  // namespace detail

/// Samples n messages from the source and accumulates the running average
/// of D(p_m || q). Deterministic given the source's seed. The source's
/// long-run frequencies must match the ensemble's message probabilities
/// within 1e-9, otherwise the averages would converge to the wrong limit.
inline Trajectory sample_trajectory(const MessageEnsemble& e, const MessageSource& src,
                                    std::size_t n) {
  if (n == 0) throw domain_error("sample_trajectory: need n >= 1");
  if (src.message_count() != e.message_count())
    throw mismatch_error("sample_trajectory: source has " +
                         std::to_string(src.message_count()) + " messages, ensemble has " +
                         std::to_string(e.message_count()));
  const Dist stationary = src.stationary();
  for (std::size_t m = 0; m < e.message_count(); ++m)
    if (std::fabs(stationary[m] - e.message_probs()[m]) > kNormTol) {
      std::string msg = "sample_trajectory: source stationary distribution [";
      for (std::size_t k = 0; k < stationary.size(); ++k)
        msg += (k ? ", " : "") + format_quantity(stationary[k]);
      msg += "] does not match ensemble message probabilities [";
      for (std::size_t k = 0; k < e.message_probs().size(); ++k)
        msg += (k ? ", " : "") + format_quantity(e.message_probs()[k]);
      msg += "]";
      throw mismatch_error(msg);
    }

  std::vector<double> divergence(e.message_count());
  for (std::size_t m = 0; m < e.message_count(); ++m)
    divergence[m] = kl_divergence(e.posterior(m), e.prior());

  rng_t rng(src.seed());
  Trajectory traj;
  traj.seed = src.seed();
  traj.running_avg.resize(n);

  kahan_sum total;
  if (src.kind() == MessageSource::Kind::IID) {
    const std::vector<double>& probs = src.sampling_dist().probs();
    for (std::size_t k = 0; k < n; ++k) {
      total.add(divergence[detail::categorical_draw(rng, probs)]);
      traj.running_avg[k] = total.value() / static_cast<double>(k + 1);
    }
  } else {
    std::size_t state = src.initial_state();
    std::vector<double> row(src.message_count());
    for (std::size_t k = 0; k < n; ++k) {
      for (std::size_t c = 0; c < row.size(); ++c) row[c] = src.transition().at(state, c);
      state = detail::categorical_draw(rng, row);
      total.add(divergence[state]);
      traj.running_avg[k] = total.value() / static_cast<double>(k + 1);
    }
  }
  return traj;
}

}  // namespace praginfo
