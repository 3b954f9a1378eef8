#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "praginfo/joint.hpp"
#include "praginfo/rng.hpp"

namespace praginfo {

/// Dirichlet(1,...,1)-style draw, rejection-free: normalize unit-exponential
/// variates. Entries are strictly positive, so the result also constructs a
/// valid Prior.
inline Dist random_dist(rng_t& rng, std::size_t n) {
  std::vector<double> v(n);
  kahan_sum total;
  for (std::size_t i = 0; i < n; ++i) {
    v[i] = -std::log(unit_double_open(rng));
    total.add(v[i]);
  }
  for (double& x : v) x /= total.value();
  return Dist(std::move(v));
}

inline Prior random_prior(rng_t& rng, std::size_t n) { return Prior(random_dist(rng, n)); }

inline MessageEnsemble random_ensemble(rng_t& rng, std::size_t n_outcomes,
                                       std::size_t n_messages) {
  Prior prior = random_prior(rng, n_outcomes);
  Dist phi = random_dist(rng, n_messages);
  std::vector<Dist> posts;
  posts.reserve(n_messages);
  for (std::size_t m = 0; m < n_messages; ++m) posts.push_back(random_dist(rng, n_outcomes));
  return MessageEnsemble(std::move(prior), std::move(phi), std::move(posts));
}

/// Random two-decision-maker instance in the framework's own parameters:
/// q_i, q'_{i'|i}, phi_{m,m'}, p_{i|m} and p'_{i'|i,m,m'} are sampled and the
/// stored joint prior/posteriors are assembled as their products. The first
/// decision maker's update depends only on its own message, which is the
/// hypothesis under which the chain rule holds.
inline JointEnsemble random_joint(rng_t& rng, std::size_t n, std::size_t n_prime,
                                  std::size_t m, std::size_t m_prime) {
  const Prior q_delta = random_prior(rng, n);
  std::vector<Dist> q_cond;
  q_cond.reserve(n);
  for (std::size_t i = 0; i < n; ++i) q_cond.push_back(random_dist(rng, n_prime));

  Grid joint_prior(n, n_prime);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t ip = 0; ip < n_prime; ++ip)
      joint_prior.at(i, ip) = q_delta[i] * q_cond[i][ip];

  const Dist phi_flat = random_dist(rng, m * m_prime);
  Grid phi(m, m_prime, phi_flat.probs());

  std::vector<Dist> post_delta;
  post_delta.reserve(m);
  for (std::size_t mi = 0; mi < m; ++mi) post_delta.push_back(random_dist(rng, n));

  std::vector<Grid> posts;
  posts.reserve(m * m_prime);
  for (std::size_t mi = 0; mi < m; ++mi)
    for (std::size_t mp = 0; mp < m_prime; ++mp) {
      Grid g(n, n_prime);
      for (std::size_t i = 0; i < n; ++i) {
        const Dist cond = random_dist(rng, n_prime);
        for (std::size_t ip = 0; ip < n_prime; ++ip)
          g.at(i, ip) = post_delta[mi][i] * cond[ip];
      }
      posts.push_back(std::move(g));
    }
  return JointEnsemble(std::move(joint_prior), std::move(phi), std::move(posts));
}

/// Combines two independent ensembles into one JointEnsemble: priors,
/// message probabilities and posteriors all factorize, so the sufficient
/// condition for pragmatic independence holds by construction.
inline JointEnsemble product_joint(const MessageEnsemble& a, const MessageEnsemble& b) {
  Grid prior(a.outcome_count(), b.outcome_count());
  for (std::size_t i = 0; i < a.outcome_count(); ++i)
    for (std::size_t ip = 0; ip < b.outcome_count(); ++ip)
      prior.at(i, ip) = a.prior()[i] * b.prior()[ip];
  Grid phi(a.message_count(), b.message_count());
  for (std::size_t mi = 0; mi < a.message_count(); ++mi)
    for (std::size_t mp = 0; mp < b.message_count(); ++mp)
      phi.at(mi, mp) = a.message_probs()[mi] * b.message_probs()[mp];
  std::vector<Grid> posts;
  posts.reserve(a.message_count() * b.message_count());
  for (std::size_t mi = 0; mi < a.message_count(); ++mi)
    for (std::size_t mp = 0; mp < b.message_count(); ++mp) {
      Grid g(a.outcome_count(), b.outcome_count());
      for (std::size_t i = 0; i < a.outcome_count(); ++i)
        for (std::size_t ip = 0; ip < b.outcome_count(); ++ip)
          g.at(i, ip) = a.posterior(mi)[i] * b.posterior(mp)[ip];
      posts.push_back(std::move(g));
    }
  return JointEnsemble(std::move(prior), std::move(phi), std::move(posts));
}

inline JointEnsemble random_product_joint(rng_t& rng, std::size_t n, std::size_t n_prime,
                                          std::size_t m, std::size_t m_prime) {
  const MessageEnsemble a = random_ensemble(rng, n, m);
  const MessageEnsemble b = random_ensemble(rng, n_prime, m_prime);
  return product_joint(a, b);
}

}  // namespace praginfo
