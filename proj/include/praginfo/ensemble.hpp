#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "praginfo/dist.hpp"

namespace praginfo {

/// A finite set of possible messages: sampling probabilities phi_m plus the
/// posterior belief each message produces. The prior is shared by all
/// messages (the decision maker starts from the same beliefs every time).
class MessageEnsemble {
 public:
  MessageEnsemble(Prior prior, Dist message_probs, std::vector<Dist> posteriors,
                  std::vector<std::string> labels = {})
      : prior_(std::move(prior)),
        message_probs_(std::move(message_probs)),
        posteriors_(std::move(posteriors)),
        labels_(std::move(labels)) {
    if (posteriors_.size() != message_probs_.size())
      throw domain_error("MessageEnsemble: " + std::to_string(posteriors_.size()) +
                         " posteriors for " + std::to_string(message_probs_.size()) +
                         " message probabilities");
    for (const Dist& post : posteriors_)
      if (post.size() != prior_.size())
        throw domain_error("MessageEnsemble: posterior dimension != prior dimension");
    if (!labels_.empty() && labels_.size() != posteriors_.size())
      throw domain_error("MessageEnsemble: label count != message count");
    // joint p_{i,m} = phi_m p_{i|m} sums to 1 because both factors do;
    // checked anyway since the invariant guards hand-built inputs.
    kahan_sum s;
    for (std::size_t m = 0; m < posteriors_.size(); ++m)
      for (std::size_t i = 0; i < prior_.size(); ++i)
        s.add(message_probs_[m] * posteriors_[m][i]);
    if (std::fabs(s.value() - 1.0) > kNormTol)
      throw domain_error("MessageEnsemble: joint p_{i,m} sums to " +
                         format_quantity(s.value()));
  }

  const Prior& prior() const { return prior_; }
  const Dist& message_probs() const { return message_probs_; }
  const Dist& posterior(std::size_t m) const { return posteriors_[m]; }
  const std::vector<Dist>& posteriors() const { return posteriors_; }

  std::size_t message_count() const { return posteriors_.size(); }
  std::size_t outcome_count() const { return prior_.size(); }

  bool has_labels() const { return !labels_.empty(); }
  const std::string& label(std::size_t m) const { return labels_[m]; }
  const std::vector<std::string>& labels() const { return labels_; }

 private:
  Prior prior_;
  Dist message_probs_;
  std::vector<Dist> posteriors_;
  std::vector<std::string> labels_;
};

/// Pragmatic information of a single message: D(p_m || q) in bits.
inline double pragmatic_info_single(const Dist& posterior, const Prior& prior) {
  return kl_divergence(posterior, prior);
}

/// Ensemble pragmatic information Phi = sum_{i,m} phi_m p_{i|m} log2(p_{i|m}/q_i).
inline double ensemble_pragmatic_info(const MessageEnsemble& e) {
  kahan_sum s;
  for (std::size_t m = 0; m < e.message_count(); ++m) {
    const double phi = e.message_probs()[m];
    if (phi == 0.0) continue;
    const Dist& post = e.posterior(m);
    for (std::size_t i = 0; i < e.outcome_count(); ++i) {
      if (post[i] == 0.0) continue;
      s.add(phi * post[i] * std::log2(post[i] / e.prior()[i]));
    }
  }
  return s.value();
}

/// Marginal posterior p-bar_i = sum_m phi_m p_{i|m}: the message-averaged
/// belief about the outcome.
inline Dist marginal_posterior(const MessageEnsemble& e) {
  std::vector<double> v(e.outcome_count(), 0.0);
  for (std::size_t i = 0; i < e.outcome_count(); ++i) {
    kahan_sum s;
    for (std::size_t m = 0; m < e.message_count(); ++m)
      s.add(e.message_probs()[m] * e.posterior(m)[i]);
    v[i] = s.value();
  }
  return Dist(std::move(v));
}

/// Mutual information I(M;Omega) = sum_{i,m} p_{i,m} log2(p_{i|m}/p-bar_i).
inline double mutual_information(const MessageEnsemble& e) {
  const Dist pbar = marginal_posterior(e);
  kahan_sum s;
  for (std::size_t m = 0; m < e.message_count(); ++m) {
    const double phi = e.message_probs()[m];
    if (phi == 0.0) continue;
    const Dist& post = e.posterior(m);
    for (std::size_t i = 0; i < e.outcome_count(); ++i) {
      if (post[i] == 0.0) continue;
      s.add(phi * post[i] * std::log2(post[i] / pbar[i]));
    }
  }
  return s.value();
}

/// Split of Phi into the mutual information I(M;Omega) and the prior-update
/// divergence D(p-bar||q). phi = mutual_info + prior_update within 1e-10;
/// residual() surfaces the identity check.
struct DecompositionReport {
  double phi;
  double mutual_info;
  double prior_update;
  Dist marginal;

  double residual() const { return phi - mutual_info - prior_update; }
};

inline DecompositionReport decompose(const MessageEnsemble& e) {
  Dist pbar = marginal_posterior(e);
  const double d = kl_divergence(pbar, e.prior());
  return DecompositionReport{ensemble_pragmatic_info(e), mutual_information(e), d,
                             std::move(pbar)};
}

/// Message m is pragmatically definitive when its posterior is a unit vector.
inline std::vector<bool> definitive_messages(const MessageEnsemble& e) {
  std::vector<bool> flags(e.message_count());
  for (std::size_t m = 0; m < e.message_count(); ++m)
    flags[m] = e.posterior(m).is_unit_vector();
  return flags;
}

/// The whole ensemble is definitive when every message is.
inline bool is_pragmatically_definitive(const MessageEnsemble& e) {
  for (std::size_t m = 0; m < e.message_count(); ++m)
    if (!e.posterior(m).is_unit_vector()) return false;
  return true;
}

/// max_i(-log2 q_i): the largest pragmatic information any message (or
/// ensemble) over this prior can carry, attained by a definitive message
/// aimed at the least likely outcome.
inline double definitive_upper_bound(const Prior& q) {
  double best = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    best = std::max(best, -std::log2(q[i]));
  return best;
}

enum class UsefulnessLabel { Irrelevant, Disinformative, Useful };

/// Per-class pragmatic information for a caller-supplied partition of the
/// messages. The three components are non-negative and sum to the total.
struct PartitionReport {
  double irrelevant;
  double disinformative;
  double useful;

  double total() const {
    kahan_sum s;
    s.add(irrelevant);
    s.add(disinformative);
    s.add(useful);
    return s.value();
  }
};

inline PartitionReport partition_pragmatic_info(const MessageEnsemble& e,
                                                std::span<const UsefulnessLabel> labels) {
  if (labels.size() != e.message_count())
    throw domain_error("partition_pragmatic_info: " + std::to_string(labels.size()) +
                       " labels for " + std::to_string(e.message_count()) + " messages");
  kahan_sum parts[3];
  for (std::size_t m = 0; m < e.message_count(); ++m) {
    const double phi = e.message_probs()[m];
    if (phi == 0.0) continue;
    const Dist& post = e.posterior(m);
    kahan_sum& bucket = parts[static_cast<int>(labels[m])];
    for (std::size_t i = 0; i < e.outcome_count(); ++i) {
      if (post[i] == 0.0) continue;
      bucket.add(phi * post[i] * std::log2(post[i] / e.prior()[i]));
    }
  }
  return PartitionReport{parts[static_cast<int>(UsefulnessLabel::Irrelevant)].value(),
                         parts[static_cast<int>(UsefulnessLabel::Disinformative)].value(),
                         parts[static_cast<int>(UsefulnessLabel::Useful)].value()};
}

}  // namespace praginfo
