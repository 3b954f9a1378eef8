#pragma once

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "praginfo/ensemble.hpp"
#include "praginfo/rng.hpp"

namespace praginfo {

/// Laplace's rule of succession: (w+1)/(T+2) after w wins in T trials.
/// Always strictly inside (0,1).
inline double laplace_estimate(std::int64_t wins, std::int64_t trials) {
  if (wins < 0 || trials < 0 || wins > trials)
    throw domain_error("laplace_estimate: need 0 <= wins <= trials, got w=" +
                       std::to_string(wins) + " T=" + std::to_string(trials));
  return static_cast<double>(wins + 1) / static_cast<double>(trials + 2);
}

/// One-armed-bandit state: w wins in T trials against an unknown payout
/// probability pi. The decision maker's beliefs live on
/// Omega = {PAYOUT, NOPAYOUT}.
struct BanditState {
  std::int64_t wins;
  std::int64_t trials;
  double true_payout;

  BanditState(std::int64_t w, std::int64_t t, double pi)
      : wins(w), trials(t), true_payout(pi) {
    if (w < 0 || t < 0 || w > t)
      throw domain_error("BanditState: need 0 <= wins <= trials");
    if (!(pi > 0.0 && pi < 1.0))
      throw domain_error("BanditState: payout probability must lie in (0,1)");
  }
};

/// One row of the trial sweep: prior estimate, the divergence of each
/// possible next-trial message, and their pi-weighted mean phi.
struct SweepRow {
  std::int64_t t;
  double w;  // real-valued in the continuous sweep mode, integral otherwise
  double q1;
  double d_win;
  double d_loss;
  double phi;
};

namespace detail {

/// Core evaluation with real-valued w (the sweep's w = pi*T mode uses
/// non-integer win counts).
inline SweepRow bandit_row(double w, double t, double pi) {
  const double q1 = (w + 1.0) / (t + 2.0);
  const Prior q{q1, 1.0 - q1};
  const Dist post_win{(w + 2.0) / (t + 3.0), (t - w + 1.0) / (t + 3.0)};
  const Dist post_loss{(w + 1.0) / (t + 3.0), (t - w + 2.0) / (t + 3.0)};
  const double d_win = kl_divergence(post_win, q);
  const double d_loss = kl_divergence(post_loss, q);
  return SweepRow{static_cast<std::int64_t>(t), w, q1, d_win, d_loss,
                  pi * d_win + (1.0 - pi) * d_loss};
}

}  // namespace detail

/// The ensemble of possible next-trial messages. Prior is the Laplace
/// estimate after (w, T); the PAYOUT posterior is the estimate after one
/// more win, the NOPAYOUT posterior after one more loss. Message
/// probabilities use the true payout pi (pass the estimate instead to see
/// the subjective variant).
inline MessageEnsemble trial_ensemble(std::int64_t wins, std::int64_t trials, double pi) {
  const BanditState st(wins, trials, pi);
  const double w = static_cast<double>(st.wins);
  const double t = static_cast<double>(st.trials);
  Prior prior{(w + 1.0) / (t + 2.0), (t - w + 1.0) / (t + 2.0)};
  Dist phi{pi, 1.0 - pi};
  std::vector<Dist> posts{Dist{(w + 2.0) / (t + 3.0), (t - w + 1.0) / (t + 3.0)},
                          Dist{(w + 1.0) / (t + 3.0), (t - w + 2.0) / (t + 3.0)}};
  return MessageEnsemble(std::move(prior), std::move(phi), std::move(posts),
                         {"PAYOUT", "NOPAYOUT"});
}

/// Pragmatic information of the T+1st trial:
/// phi = pi * D(pi_1||q) + (1-pi) * D(pi_0||q).
inline SweepRow trial_pragmatic_info(std::int64_t wins, std::int64_t trials, double pi) {
  const BanditState st(wins, trials, pi);
  return detail::bandit_row(static_cast<double>(st.wins), static_cast<double>(st.trials), pi);
}

enum class SweepMode {
  Continuous,  // w = pi * T, real-valued (the figure's convention)
  Integer      // w = round(pi * T), ties to even
};

/// Rows for T = 0..t_max along the most likely win count w = pi*T.
/// phi decreases strictly in T and tends to zero.
inline std::vector<SweepRow> sweep(double pi, std::int64_t t_max,
                                   SweepMode mode = SweepMode::Continuous) {
  if (!(pi > 0.0 && pi < 1.0))
    throw domain_error("sweep: payout probability must lie in (0,1)");
  if (t_max < 0) throw domain_error("sweep: t_max must be >= 0");
  std::vector<SweepRow> rows;
  rows.reserve(static_cast<std::size_t>(t_max) + 1);
  for (std::int64_t t = 0; t <= t_max; ++t) {
    const double td = static_cast<double>(t);
    const double w = mode == SweepMode::Continuous ? pi * td : std::nearbyint(pi * td);
    SweepRow row = detail::bandit_row(w, td, pi);
    row.t = t;
    rows.push_back(row);
  }
  return rows;
}

/// Laplace estimate over only the most recent k outcomes (bounded memory).
inline double windowed_laplace(std::span<const int> history, std::int64_t k) {
  if (k < 1) throw domain_error("windowed_laplace: window must be >= 1");
  const std::size_t len = history.size();
  const std::size_t window =
      std::min<std::size_t>(static_cast<std::size_t>(k), len);
  std::int64_t wins = 0;
  for (std::size_t idx = len - window; idx < len; ++idx) {
    if (history[idx] != 0 && history[idx] != 1)
      throw domain_error("windowed_laplace: outcomes must be 0 or 1");
    wins += history[idx];
  }
  return laplace_estimate(wins, static_cast<std::int64_t>(window));
}

/// Sampled trial outcomes 1_t ~ Bernoulli(pi), reproducible by seed.
/// Exact closed forms drive the sweep; this exists for simulation demos.
inline std::vector<int> bernoulli_outcomes(double pi, std::size_t n, std::uint64_t seed) {
  if (!(pi > 0.0 && pi < 1.0))
    throw domain_error("bernoulli_outcomes: payout probability must lie in (0,1)");
  rng_t eng(seed);
  std::vector<int> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = unit_double(eng) < pi ? 1 : 0;
  return out;
}

}  // namespace praginfo
