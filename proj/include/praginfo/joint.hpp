#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "praginfo/ensemble.hpp"

namespace praginfo {

/// Two decision makers receiving paired messages (m, m'): joint prior
/// q_{i,i'} over Omega x Omega', joint message probabilities phi_{m,m'},
/// and one joint posterior p_{i,i'|m,m'} per message pair. Conditional
/// quantities (q'_{i'|i}, p'_{i'|i,m,m'}) are derived, never stored.
class JointEnsemble {
 public:
  JointEnsemble(Grid joint_prior, Grid joint_message_probs, std::vector<Grid> joint_posteriors)
      : prior_(std::move(joint_prior)),
        phi_(std::move(joint_message_probs)),
        posteriors_(std::move(joint_posteriors)) {
    normalize_checked(prior_, "joint_prior");
    for (double v : prior_.data())
      if (v <= 0.0) throw domain_error("JointEnsemble: joint_prior must be strictly positive");
    normalize_checked(phi_, "joint_message_probs");
    for (double v : phi_.data())
      if (v < 0.0) throw domain_error("JointEnsemble: negative message probability");
    if (posteriors_.size() != phi_.rows() * phi_.cols())
      throw domain_error("JointEnsemble: expected " +
                         std::to_string(phi_.rows() * phi_.cols()) + " joint posteriors, got " +
                         std::to_string(posteriors_.size()));
    for (Grid& post : posteriors_) {
      if (post.rows() != prior_.rows() || post.cols() != prior_.cols())
        throw domain_error("JointEnsemble: posterior shape != prior shape");
      for (double v : post.data())
        if (v < 0.0) throw domain_error("JointEnsemble: negative posterior entry");
      normalize_checked(post, "joint posterior");
    }
  }

  std::size_t n() const { return prior_.rows(); }
  std::size_t n_prime() const { return prior_.cols(); }
  std::size_t m() const { return phi_.rows(); }
  std::size_t m_prime() const { return phi_.cols(); }

  const Grid& prior() const { return prior_; }
  const Grid& message_probs() const { return phi_; }
  const Grid& posterior(std::size_t m_idx, std::size_t mp_idx) const {
    return posteriors_[m_idx * phi_.cols() + mp_idx];
  }

 private:
  static void normalize_checked(Grid& g, const char* what) {
    const double total = g.sum();
    if (std::fabs(total - 1.0) > kNormTol)
      throw domain_error(std::string("JointEnsemble: ") + what + " sums to " +
                         format_quantity(total));
    if (total != 1.0) g.scale(1.0 / total);
  }

  Grid prior_;
  Grid phi_;
  std::vector<Grid> posteriors_;
};

/// Joint pragmatic information:
/// sum over (i,i',m,m') of phi_{m,m'} p_{i,i'|m,m'} log2(p_{i,i'|m,m'}/q_{i,i'}).
inline double joint_pragmatic_info(const JointEnsemble& j) {
  kahan_sum s;
  for (std::size_t mi = 0; mi < j.m(); ++mi)
    for (std::size_t mp = 0; mp < j.m_prime(); ++mp) {
      const double phi = j.message_probs().at(mi, mp);
      if (phi == 0.0) continue;
      const Grid& post = j.posterior(mi, mp);
      for (std::size_t i = 0; i < j.n(); ++i)
        for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
          const double p = post.at(i, ip);
          if (p == 0.0) continue;
          s.add(phi * p * std::log2(p / j.prior().at(i, ip)));
        }
    }
  return s.value();
}

/// Conditional pragmatic information of the second decision maker given the
/// first's message and outcome:
/// sum p_{i,i',m,m'} log2(p'_{i'|i,m,m'} / q'_{i'|i}),
/// where p'_{i'|i,m,m'} = p_{i,i'|m,m'} / sum_{i'} p_{i,i'|m,m'} and
/// q'_{i'|i} = q_{i,i'} / sum_{i'} q_{i,i'}. Conditioning events with zero
/// posterior mass contribute zero.
inline double conditional_pragmatic_info(const JointEnsemble& j) {
  std::vector<double> prior_row_sum(j.n(), 0.0);
  for (std::size_t i = 0; i < j.n(); ++i) {
    kahan_sum rs;
    for (std::size_t ip = 0; ip < j.n_prime(); ++ip) rs.add(j.prior().at(i, ip));
    prior_row_sum[i] = rs.value();
  }
  kahan_sum s;
  for (std::size_t mi = 0; mi < j.m(); ++mi)
    for (std::size_t mp = 0; mp < j.m_prime(); ++mp) {
      const double phi = j.message_probs().at(mi, mp);
      if (phi == 0.0) continue;
      const Grid& post = j.posterior(mi, mp);
      for (std::size_t i = 0; i < j.n(); ++i) {
        kahan_sum rs;
        for (std::size_t ip = 0; ip < j.n_prime(); ++ip) rs.add(post.at(i, ip));
        const double post_row = rs.value();
        if (post_row == 0.0) continue;
        const double q_cond_denom = prior_row_sum[i];
        for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
          const double p = post.at(i, ip);
          if (p == 0.0) continue;
          const double p_cond = p / post_row;
          const double q_cond = j.prior().at(i, ip) / q_cond_denom;
          s.add(phi * p * std::log2(p_cond / q_cond));
        }
      }
    }
  return s.value();
}

/// The first decision maker's own ensemble, obtained by summing posteriors
/// over (i', m') and message probabilities over m'. Messages with zero
/// probability keep the prior as a placeholder posterior.
inline MessageEnsemble marginal_delta(const JointEnsemble& j) {
  std::vector<double> q(j.n(), 0.0);
  for (std::size_t i = 0; i < j.n(); ++i) {
    kahan_sum s;
    for (std::size_t ip = 0; ip < j.n_prime(); ++ip) s.add(j.prior().at(i, ip));
    q[i] = s.value();
  }
  std::vector<double> phi_m(j.m(), 0.0);
  for (std::size_t mi = 0; mi < j.m(); ++mi) {
    kahan_sum s;
    for (std::size_t mp = 0; mp < j.m_prime(); ++mp) s.add(j.message_probs().at(mi, mp));
    phi_m[mi] = s.value();
  }
  std::vector<Dist> posts;
  posts.reserve(j.m());
  Prior prior(std::move(q));
  for (std::size_t mi = 0; mi < j.m(); ++mi) {
    if (phi_m[mi] == 0.0) {
      posts.push_back(prior);
      continue;
    }
    std::vector<double> row(j.n(), 0.0);
    for (std::size_t i = 0; i < j.n(); ++i) {
      kahan_sum s;
      for (std::size_t mp = 0; mp < j.m_prime(); ++mp) {
        const double w = j.message_probs().at(mi, mp);
        if (w == 0.0) continue;
        for (std::size_t ip = 0; ip < j.n_prime(); ++ip)
          s.add(w * j.posterior(mi, mp).at(i, ip));
      }
      row[i] = s.value() / phi_m[mi];
    }
    posts.emplace_back(std::move(row));
  }
  return MessageEnsemble(std::move(prior), Dist(std::move(phi_m)), std::move(posts));
}

/// Mirror image of marginal_delta for the second decision maker.
inline MessageEnsemble marginal_delta_prime(const JointEnsemble& j) {
  std::vector<double> q(j.n_prime(), 0.0);
  for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
    kahan_sum s;
    for (std::size_t i = 0; i < j.n(); ++i) s.add(j.prior().at(i, ip));
    q[ip] = s.value();
  }
  std::vector<double> phi_mp(j.m_prime(), 0.0);
  for (std::size_t mp = 0; mp < j.m_prime(); ++mp) {
    kahan_sum s;
    for (std::size_t mi = 0; mi < j.m(); ++mi) s.add(j.message_probs().at(mi, mp));
    phi_mp[mp] = s.value();
  }
  std::vector<Dist> posts;
  posts.reserve(j.m_prime());
  Prior prior(std::move(q));
  for (std::size_t mp = 0; mp < j.m_prime(); ++mp) {
    if (phi_mp[mp] == 0.0) {
      posts.push_back(prior);
      continue;
    }
    std::vector<double> row(j.n_prime(), 0.0);
    for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
      kahan_sum s;
      for (std::size_t mi = 0; mi < j.m(); ++mi) {
        const double w = j.message_probs().at(mi, mp);
        if (w == 0.0) continue;
        for (std::size_t i = 0; i < j.n(); ++i)
          s.add(w * j.posterior(mi, mp).at(i, ip));
      }
      row[ip] = s.value() / phi_mp[mp];
    }
    posts.emplace_back(std::move(row));
  }
  return MessageEnsemble(std::move(prior), Dist(std::move(phi_mp)), std::move(posts));
}

/// Phi_joint - Phi_Delta - Phi_cond. Zero (within 1e-10) whenever the first
/// decision maker's posterior depends only on its own message.
inline double chain_rule_residual(const JointEnsemble& j) {
  return joint_pragmatic_info(j) - ensemble_pragmatic_info(marginal_delta(j)) -
         conditional_pragmatic_info(j);
}

/// Eq-by-eq status of pragmatic independence.
///
/// `sufficient_condition`: prior factorizes (q'_{i'|i} = q'_{i'}) and the
/// four-way distribution p_{i,i',m,m'} is a product of its (i,m) and (i',m')
/// marginals, each entry within 1e-9.
/// `additive`: Phi_joint = Phi_Delta + Phi_Delta' within 1e-10.
/// The first implies the second; the converse fails (a message ignored by
/// one decision maker is pragmatically independent of anything).
struct IndependenceReport {
  bool sufficient_condition;
  bool additive;
  double additivity_gap;  // Phi_joint - Phi_Delta - Phi_Delta'

  enum class Classification { Both, SufficientOnly, AdditiveOnly, Neither };

  Classification classify() const {
    if (sufficient_condition && additive) return Classification::Both;
    if (sufficient_condition) return Classification::SufficientOnly;
    if (additive) return Classification::AdditiveOnly;
    return Classification::Neither;
  }
};

inline const char* to_string(IndependenceReport::Classification c) {
  switch (c) {
    case IndependenceReport::Classification::Both: return "both";
    case IndependenceReport::Classification::SufficientOnly: return "holds_by_sufficient_condition";
    case IndependenceReport::Classification::AdditiveOnly: return "additive";
    default: return "neither";
  }
}

inline IndependenceReport check_pragmatic_independence(const JointEnsemble& j) {
  constexpr double entry_tol = 1e-9;

  bool factored = true;
  // prior independence: q_{i,i'} / q_{i.} == q_{.i'}
  std::vector<double> q_row(j.n(), 0.0), q_col(j.n_prime(), 0.0);
  for (std::size_t i = 0; i < j.n(); ++i)
    for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
      q_row[i] += j.prior().at(i, ip);
      q_col[ip] += j.prior().at(i, ip);
    }
  for (std::size_t i = 0; i < j.n() && factored; ++i)
    for (std::size_t ip = 0; ip < j.n_prime(); ++ip)
      if (std::fabs(j.prior().at(i, ip) / q_row[i] - q_col[ip]) > entry_tol) {
        factored = false;
        break;
      }

  if (factored) {
    // four-way product check: p_{i,i',m,m'} == p_{i,m} p'_{i',m'}
    std::vector<double> pim(j.n() * j.m(), 0.0), pipmp(j.n_prime() * j.m_prime(), 0.0);
    for (std::size_t mi = 0; mi < j.m(); ++mi)
      for (std::size_t mp = 0; mp < j.m_prime(); ++mp) {
        const double phi = j.message_probs().at(mi, mp);
        if (phi == 0.0) continue;
        for (std::size_t i = 0; i < j.n(); ++i)
          for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
            const double p4 = phi * j.posterior(mi, mp).at(i, ip);
            pim[i * j.m() + mi] += p4;
            pipmp[ip * j.m_prime() + mp] += p4;
          }
      }
    for (std::size_t mi = 0; mi < j.m() && factored; ++mi)
      for (std::size_t mp = 0; mp < j.m_prime() && factored; ++mp) {
        const double phi = j.message_probs().at(mi, mp);
        for (std::size_t i = 0; i < j.n() && factored; ++i)
          for (std::size_t ip = 0; ip < j.n_prime(); ++ip) {
            const double p4 = phi * j.posterior(mi, mp).at(i, ip);
            if (std::fabs(p4 - pim[i * j.m() + mi] * pipmp[ip * j.m_prime() + mp]) > entry_tol) {
              factored = false;
              break;
            }
          }
      }
  }

  const double gap = joint_pragmatic_info(j) -
                     ensemble_pragmatic_info(marginal_delta(j)) -
                     ensemble_pragmatic_info(marginal_delta_prime(j));
  return IndependenceReport{factored, std::fabs(gap) <= 1e-10, gap};
}

}  // namespace praginfo
