#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "praginfo/bandit.hpp"
#include "praginfo/codes.hpp"
#include "praginfo/ergodic.hpp"
#include "praginfo/io.hpp"
#include "praginfo/random.hpp"

namespace praginfo {

/// Outcome of one theorem check: how many instances ran, how many violated
/// the property, and (for the first violation) a serialized reproduction.
struct CheckResult {
  std::string name;
  long trials = 0;
  long failures = 0;
  std::string detail;
  std::string counterexample;

  bool passed() const { return failures == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 7;
  long trials = 100;
  std::size_t max_dim = 0;  // 0 = each check's own cap; otherwise clamps it
};

struct Check {
  std::string name;
  std::function<CheckResult(const VerifyOptions&)> run;
};

namespace verify_detail {

/// Each check draws from its own stream so the registry can grow without
/// perturbing existing checks' instances.
inline rng_t check_rng(const VerifyOptions& opt, const std::string& name) {
  return rng_t(opt.seed ^ fnv1a64(name));
}

inline std::size_t cap_dim(const VerifyOptions& opt, std::size_t default_cap) {
  if (opt.max_dim == 0) return default_cap;
  return std::max<std::size_t>(2, std::min(default_cap, opt.max_dim));
}

inline std::size_t draw_dim(rng_t& rng, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
}

/// (p, q) pairs serialize as a single-message ensemble: prior q, one message
/// with probability 1 and posterior p.
inline std::string pair_counterexample(const Dist& p, const Prior& q) {
  MessageEnsemble e(q, Dist{1.0}, {p});
  return ensemble_to_json(e).dump();
}

/// Exact optimal expected prefix-code length by exhaustive search over
/// Kraft-feasible integer length vectors (positive-probability outcomes
/// only). Independent of the Huffman construction it cross-checks.
inline double brute_force_optimal_expected_length(const Dist& p) {
  std::vector<double> probs;
  for (double v : p)
    if (v > 0.0) probs.push_back(v);
  const std::size_t n = probs.size();
  if (n < 2) throw domain_error("brute_force_optimal_expected_length: need >= 2 outcomes");
  const int max_len = static_cast<int>(n) - 1;
  const long units = 1L << max_len;  // Kraft budget in units of 2^-max_len

  double best = std::numeric_limits<double>::infinity();
  std::vector<int> lengths(n, 0);
  auto recurse = [&](auto&& self, std::size_t idx, long used, double cost) -> void {
    if (cost >= best) return;
    if (idx == n) {
      if (used <= units) best = cost;
      return;
    }
    for (int l = 1; l <= max_len; ++l) {
      const long w = units >> l;
      if (used + w > units) continue;  // prune: Kraft already violated
      lengths[idx] = l;
      self(self, idx + 1, used + w, cost + probs[idx] * l);
    }
  };
  recurse(recurse, 0, 0, 0.0);
  return best;
}

/// The trial-information closed form expanded exactly as four log terms;
/// used only to cross-check the divergence-composed route.
inline double bandit_phi_expanded(double w, double t, double pi) {
  const double a = (w + 2.0) / (t + 3.0) *
                   std::log2((w + 2.0) * (t + 2.0) / ((t + 3.0) * (w + 1.0)));
  const double b = (t - w + 1.0) / (t + 3.0) * std::log2((t + 2.0) / (t + 3.0));
  const double c = (w + 1.0) / (t + 3.0) * std::log2((t + 2.0) / (t + 3.0));
  const double d = (t - w + 2.0) / (t + 3.0) *
                   std::log2((t - w + 2.0) * (t + 2.0) / ((t + 3.0) * (t - w + 1.0)));
  return pi * (a + b) + (1.0 - pi) * (c + d);
}

/// The two-decision-maker Boolean fixture: omega = M, omega' = M and M',
/// M ~ Bernoulli(1/2), M' ~ Bernoulli(1/4), uniform independent priors.
inline JointEnsemble boolean_joint_fixture() {
  Grid prior(2, 2, std::vector<double>{0.25, 0.25, 0.25, 0.25});
  Grid phi(2, 2, std::vector<double>{3.0 / 8.0, 1.0 / 8.0, 3.0 / 8.0, 1.0 / 8.0});
  auto point = [](std::size_t i, std::size_t ip) {
    Grid g(2, 2, 0.0);
    g.at(i, ip) = 1.0;
    return g;
  };
  // key order (m, m'): (0,0) (0,1) (1,0) (1,1); outcome (i, i') = (m, m AND m')
  std::vector<Grid> posts{point(0, 0), point(0, 0), point(1, 0), point(1, 1)};
  return JointEnsemble(std::move(prior), std::move(phi), std::move(posts));
}

/// The second decision maker's marginal ensemble from the Boolean fixture:
/// phi' = (3/4, 1/4), posteriors (1,0) and (1/2,1/2), uniform prior.
inline MessageEnsemble boolean_delta_prime_fixture() {
  return MessageEnsemble(Prior{0.5, 0.5}, Dist{0.75, 0.25},
                         {Dist{1.0, 0.0}, Dist{0.5, 0.5}}, {"mprime0", "mprime1"});
}

template <typename Fn>
CheckResult run_randomized(const std::string& name, const VerifyOptions& opt, Fn&& one_trial) {
  CheckResult res;
  res.name = name;
  rng_t rng = check_rng(opt, name);
  for (long t = 0; t < opt.trials; ++t) {
    ++res.trials;
    std::string cx, why;
    if (!one_trial(rng, cx, why)) {
      ++res.failures;
      if (res.counterexample.empty()) {
        res.counterexample = cx;
        res.detail = why;
      }
    }
  }
  return res;
}

template <typename Fn>
CheckResult run_fixed(const std::string& name, Fn&& all) {
  CheckResult res;
  res.name = name;
  res.trials = 1;
  std::string why;
  if (!all(why)) {
    res.failures = 1;
    res.detail = why;
  }
  return res;
}

}  // namespace verify_detail

/// The full theorem suite. Every invariant the library promises is here as
/// a named check over randomized instances (plus the fixed worked examples),
/// so `verify` exercises the same properties the unit tests freeze.
inline std::vector<Check> default_checks() {
  namespace vd = verify_detail;
  std::vector<Check> checks;

  // ---- divergence core -------------------------------------------------

  checks.push_back({"kl_non_negativity", [](const VerifyOptions& opt) {
    return vd::run_randomized("kl_non_negativity", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 8));
          const Dist p = random_dist(rng, n);
          const Prior q = random_prior(rng, n);
          const double d = kl_divergence(p, q);
          if (!(d >= 0.0)) {
            cx = vd::pair_counterexample(p, q);
            why = "D(p||q) = " + format_quantity(d) + " < 0";
            return false;
          }
          // equality holds exactly when the distributions coincide
          const double d_self = kl_divergence(static_cast<const Dist&>(q), q);
          if (!(std::fabs(d_self) < 1e-12)) {
            cx = vd::pair_counterexample(q, q);
            why = "D(q||q) = " + format_quantity(d_self);
            return false;
          }
          if (d < 1e-12 && !p.approx_equal(q)) {
            cx = vd::pair_counterexample(p, q);
            why = "D < 1e-12 but p != q";
            return false;
          }
          if (p.approx_equal(q, 1e-15) && d >= 1e-12) {
            cx = vd::pair_counterexample(p, q);
            why = "p == q but D >= 1e-12";
            return false;
          }
          return true;
        });
  }});

  checks.push_back({"kl_convexity", [](const VerifyOptions& opt) {
    return vd::run_randomized("kl_convexity", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 8));
          const Dist p1 = random_dist(rng, n), p2 = random_dist(rng, n);
          const Prior q1 = random_prior(rng, n), q2 = random_prior(rng, n);
          const double lambda = unit_double(rng);
          const double lhs =
              kl_divergence(convex_mix(p1, p2, lambda), Prior(convex_mix(q1, q2, lambda)));
          const double rhs =
              lambda * kl_divergence(p1, q1) + (1.0 - lambda) * kl_divergence(p2, q2);
          if (lhs <= rhs + 1e-10) return true;
          cx = json{{"p", p1.probs()}, {"p2", p2.probs()}, {"q", q1.probs()},
                    {"q2", q2.probs()}, {"lambda", lambda}}.dump();
          why = "interpolated divergence " + format_quantity(lhs) + " exceeds bound " +
                format_quantity(rhs);
          return false;
        });
  }});

  checks.push_back({"wrong_code_ideal_identity", [](const VerifyOptions& opt) {
    return vd::run_randomized("wrong_code_ideal_identity", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 16));
          const Dist p = random_dist(rng, n);
          const Prior q = random_prior(rng, n);
          const double gap = expected_codelength_gap(p, q, GapMode::Ideal);
          const double d = kl_divergence(p, q);
          if (std::fabs(gap - d) < 1e-12) return true;
          cx = vd::pair_counterexample(p, q);
          why = "ideal gap " + format_quantity(gap) + " != D " + format_quantity(d);
          return false;
        });
  }});

  checks.push_back({"wrong_code_integer_band", [](const VerifyOptions& opt) {
    return vd::run_randomized("wrong_code_integer_band", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 16));
          const Dist p = random_dist(rng, n);
          const Prior q = random_prior(rng, n);
          const double gap = expected_codelength_gap(p, q, GapMode::Integer);
          const double d = kl_divergence(p, q);
          if (d - 1.0 < gap && gap < d + 1.0) return true;
          cx = vd::pair_counterexample(p, q);
          why = "integer gap " + format_quantity(gap) + " outside (" +
                format_quantity(d - 1.0) + ", " + format_quantity(d + 1.0) + ")";
          return false;
        });
  }});

  checks.push_back({"huffman_optimality", [](const VerifyOptions& opt) {
    return vd::run_randomized("huffman_optimality", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 6));
          const Dist p = random_dist(rng, n);
          const CodeLengths cl = huffman_code_lengths(p);
          if (kraft_sum(cl) > 1.0 + 1e-12) {
            cx = vd::pair_counterexample(p, Prior(Dist::uniform(n)));
            why = "Kraft sum " + format_quantity(kraft_sum(cl));
            return false;
          }
          const double expected = expected_length(p, cl);
          const double optimal = vd::brute_force_optimal_expected_length(p);
          const double h = shannon_entropy(p);
          if (std::fabs(expected - optimal) > 1e-12) {
            cx = vd::pair_counterexample(p, Prior(Dist::uniform(n)));
            why = "Huffman E[L] " + format_quantity(expected) + " != brute-force optimum " +
                  format_quantity(optimal);
            return false;
          }
          if (!(h <= expected + 1e-12 && expected < h + 1.0)) {
            cx = vd::pair_counterexample(p, Prior(Dist::uniform(n)));
            why = "E[L] " + format_quantity(expected) + " outside [H, H+1)";
            return false;
          }
          return true;
        });
  }});

  checks.push_back({"entropy_bounds", [](const VerifyOptions& opt) {
    return vd::run_randomized("entropy_bounds", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 8));
          const Dist p = random_dist(rng, n);
          const double h = shannon_entropy(p);
          const double hmax = std::log2(static_cast<double>(n));
          if (!(h >= 0.0 && h <= hmax + 1e-12)) {
            cx = vd::pair_counterexample(p, Prior(Dist::uniform(n)));
            why = "H = " + format_quantity(h) + " outside [0, log2 N]";
            return false;
          }
          if (std::fabs(shannon_entropy(Dist::unit(n, 0))) > 0.0 ||
              std::fabs(shannon_entropy(Dist::uniform(n)) - hmax) > 1e-12) {
            why = "equality cases violated at N=" + std::to_string(n);
            return false;
          }
          return true;
        });
  }});

  // ---- ensemble / joint theorems ---------------------------------------

  checks.push_back({"ensemble_phi_non_negativity", [](const VerifyOptions& opt) {
    return vd::run_randomized("ensemble_phi_non_negativity", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 6));
          const std::size_t m = vd::draw_dim(rng, 1, vd::cap_dim(opt, 6));
          const MessageEnsemble e = random_ensemble(rng, n, m);
          const double phi = ensemble_pragmatic_info(e);
          if (!(phi >= 0.0)) {
            cx = ensemble_to_json(e).dump();
            why = "Phi = " + format_quantity(phi) + " < 0";
            return false;
          }
          if (phi < 1e-12) {
            for (std::size_t k = 0; k < e.message_count(); ++k)
              if (!e.posterior(k).approx_equal(e.prior())) {
                cx = ensemble_to_json(e).dump();
                why = "Phi < 1e-12 with a posterior differing from the prior";
                return false;
              }
          }
          // all-ignored ensemble must score exactly zero
          std::vector<Dist> posts(m, e.prior());
          const MessageEnsemble ignored(e.prior(), e.message_probs(), std::move(posts));
          if (!(ensemble_pragmatic_info(ignored) < 1e-12)) {
            cx = ensemble_to_json(ignored).dump();
            why = "posteriors == prior but Phi >= 1e-12";
            return false;
          }
          return true;
        });
  }});

  checks.push_back({"chain_rule", [](const VerifyOptions& opt) {
    return vd::run_randomized("chain_rule", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t cap = vd::cap_dim(opt, 4);
          const JointEnsemble j =
              random_joint(rng, vd::draw_dim(rng, 2, cap), vd::draw_dim(rng, 2, cap),
                           vd::draw_dim(rng, 2, cap), vd::draw_dim(rng, 2, cap));
          const double residual = chain_rule_residual(j);
          if (std::fabs(residual) < 1e-10) return true;
          cx = joint_to_json(j).dump();
          why = "chain-rule residual " + format_quantity(residual);
          return false;
        });
  }});

  checks.push_back({"upper_bound", [](const VerifyOptions& opt) {
    return vd::run_randomized("upper_bound", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 8));
          const Prior q = random_prior(rng, n);
          const double bound = definitive_upper_bound(q);
          const Dist p = random_dist(rng, n);
          if (kl_divergence(p, q) > bound + 1e-12) {
            cx = vd::pair_counterexample(p, q);
            why = "single-message divergence exceeds max(-log2 q_i)";
            return false;
          }
          const std::size_t m = vd::draw_dim(rng, 1, vd::cap_dim(opt, 6));
          std::vector<Dist> posts;
          for (std::size_t k = 0; k < m; ++k) posts.push_back(random_dist(rng, n));
          const MessageEnsemble e(q, random_dist(rng, m), std::move(posts));
          if (ensemble_pragmatic_info(e) > bound + 1e-12) {
            cx = ensemble_to_json(e).dump();
            why = "ensemble Phi exceeds max(-log2 q_i)";
            return false;
          }
          // a definitive message at the least likely outcome attains it
          std::size_t argmin = 0;
          for (std::size_t i = 1; i < n; ++i)
            if (q[i] < q[argmin]) argmin = i;
          const MessageEnsemble definitive(q, Dist{1.0}, {Dist::unit(n, argmin)});
          if (std::fabs(ensemble_pragmatic_info(definitive) - bound) > 1e-12) {
            cx = ensemble_to_json(definitive).dump();
            why = "definitive ensemble misses the bound";
            return false;
          }
          return true;
        });
  }});

  checks.push_back({"decomposition", [](const VerifyOptions& opt) {
    return vd::run_randomized("decomposition", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 6));
          const std::size_t m = vd::draw_dim(rng, 1, vd::cap_dim(opt, 6));
          const MessageEnsemble e = random_ensemble(rng, n, m);
          const DecompositionReport rep = decompose(e);
          if (std::fabs(rep.residual()) > 1e-10) {
            cx = ensemble_to_json(e).dump();
            why = "Phi - I - D(pbar||q) = " + format_quantity(rep.residual());
            return false;
          }
          if (rep.phi < rep.mutual_info - 1e-12) {
            cx = ensemble_to_json(e).dump();
            why = "Phi < I";
            return false;
          }
          if (!(rep.mutual_info >= -1e-15 && rep.prior_update >= -1e-15)) {
            cx = ensemble_to_json(e).dump();
            why = "negative component";
            return false;
          }
          // balanced two-message ensemble with pbar == q: Phi reduces to I
          const Prior& q = e.prior();
          std::size_t a = 0, b = 1;
          const double eps = 0.5 * std::min(q[a], q[b]);
          std::vector<double> up = q.probs(), down = q.probs();
          up[a] += eps; up[b] -= eps;
          down[a] -= eps; down[b] += eps;
          const MessageEnsemble balanced(q, Dist{0.5, 0.5},
                                         {Dist(std::move(up)), Dist(std::move(down))});
          const DecompositionReport brep = decompose(balanced);
          if (std::fabs(brep.phi - brep.mutual_info) > 1e-10) {
            cx = ensemble_to_json(balanced).dump();
            why = "pbar == q but |Phi - I| = " +
                  format_quantity(std::fabs(brep.phi - brep.mutual_info));
            return false;
          }
          return true;
        });
  }});

  checks.push_back({"definitive_formula", [](const VerifyOptions& opt) {
    return vd::run_randomized("definitive_formula", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 6));
          const std::size_t m = vd::draw_dim(rng, 1, vd::cap_dim(opt, 6));
          const Prior q = random_prior(rng, n);
          const Dist phi_m = random_dist(rng, m);
          std::vector<Dist> posts;
          std::vector<std::size_t> targets;
          for (std::size_t k = 0; k < m; ++k) {
            targets.push_back(rng() % n);
            posts.push_back(Dist::unit(n, targets.back()));
          }
          const MessageEnsemble e(q, phi_m, std::move(posts));
          if (!is_pragmatically_definitive(e)) {
            cx = ensemble_to_json(e).dump();
            why = "unit-vector posteriors not flagged definitive";
            return false;
          }
          kahan_sum expect;
          for (std::size_t k = 0; k < m; ++k)
            expect.add(-phi_m[k] * std::log2(q[targets[k]]));
          const double phi = ensemble_pragmatic_info(e);
          if (std::fabs(phi - expect.value()) < 1e-12) return true;
          cx = ensemble_to_json(e).dump();
          why = "definitive Phi " + format_quantity(phi) + " != -sum phi_m log2 q_k(m) " +
                format_quantity(expect.value());
          return false;
        });
  }});

  checks.push_back({"boolean_example_values", [](const VerifyOptions&) {
    return vd::run_fixed("boolean_example_values", [](std::string& why) {
      const JointEnsemble j = vd::boolean_joint_fixture();
      const double joint = joint_pragmatic_info(j);
      const double delta = ensemble_pragmatic_info(marginal_delta(j));
      const double cond = conditional_pragmatic_info(j);
      const double prime = ensemble_pragmatic_info(marginal_delta_prime(j));
      if (std::fabs(joint - 2.0) > 1e-12) { why = "Phi_joint = " + format_quantity(joint); return false; }
      if (std::fabs(delta - 1.0) > 1e-12) { why = "Phi_Delta = " + format_quantity(delta); return false; }
      if (std::fabs(cond - 1.0) > 1e-12) { why = "Phi_cond = " + format_quantity(cond); return false; }
      if (std::fabs(prime - 0.75) > 1e-12) { why = "Phi_Delta' = " + format_quantity(prime); return false; }
      return true;
    });
  }});

  checks.push_back({"conditioning_can_increase", [](const VerifyOptions&) {
    return vd::run_fixed("conditioning_can_increase", [](std::string& why) {
      const JointEnsemble j = vd::boolean_joint_fixture();
      const double prime = ensemble_pragmatic_info(marginal_delta_prime(j));
      const double cond = conditional_pragmatic_info(j);
      if (prime < cond) return true;
      why = "Phi_Delta' " + format_quantity(prime) + " not below Phi_cond " +
            format_quantity(cond);
      return false;
    });
  }});

  checks.push_back({"sufficient_condition_soundness", [](const VerifyOptions& opt) {
    return vd::run_randomized("sufficient_condition_soundness", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t cap = vd::cap_dim(opt, 4);
          const JointEnsemble prod =
              random_product_joint(rng, vd::draw_dim(rng, 2, cap), vd::draw_dim(rng, 2, cap),
                                   vd::draw_dim(rng, 2, cap), vd::draw_dim(rng, 2, cap));
          const IndependenceReport pr = check_pragmatic_independence(prod);
          if (!pr.sufficient_condition || !pr.additive) {
            cx = joint_to_json(prod).dump();
            why = std::string("product ensemble classified ") + to_string(pr.classify());
            return false;
          }
          const JointEnsemble j =
              random_joint(rng, vd::draw_dim(rng, 2, cap), vd::draw_dim(rng, 2, cap),
                           vd::draw_dim(rng, 2, cap), vd::draw_dim(rng, 2, cap));
          const IndependenceReport jr = check_pragmatic_independence(j);
          if (jr.sufficient_condition && !jr.additive) {
            cx = joint_to_json(j).dump();
            why = "sufficient condition held but additivity failed, gap " +
                  format_quantity(jr.additivity_gap);
            return false;
          }
          return true;
        });
  }});

  checks.push_back({"additive_without_sufficient", [](const VerifyOptions& opt) {
    return vd::run_randomized("additive_without_sufficient", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          // second decision maker ignores every message: additivity must hold
          // even though the four-way product factorization fails
          const std::size_t cap = vd::cap_dim(opt, 4);
          const std::size_t n = vd::draw_dim(rng, 2, cap), np = vd::draw_dim(rng, 2, cap);
          const std::size_t m = vd::draw_dim(rng, 2, cap), mp = vd::draw_dim(rng, 2, cap);
          const Prior q = random_prior(rng, n);
          const Prior qp = random_prior(rng, np);
          Grid prior(n, np);
          for (std::size_t i = 0; i < n; ++i)
            for (std::size_t ip = 0; ip < np; ++ip) prior.at(i, ip) = q[i] * qp[ip];
          const Dist phi_flat = random_dist(rng, m * mp);  // coupled on purpose
          Grid phi(m, mp, phi_flat.probs());
          std::vector<Dist> post_delta;
          for (std::size_t k = 0; k < m; ++k) post_delta.push_back(random_dist(rng, n));
          std::vector<Grid> posts;
          for (std::size_t mi = 0; mi < m; ++mi)
            for (std::size_t mpi = 0; mpi < mp; ++mpi) {
              Grid g(n, np);
              for (std::size_t i = 0; i < n; ++i)
                for (std::size_t ip = 0; ip < np; ++ip)
                  g.at(i, ip) = post_delta[mi][i] * qp[ip];
              posts.push_back(std::move(g));
            }
          const JointEnsemble j(std::move(prior), std::move(phi), std::move(posts));
          const IndependenceReport rep = check_pragmatic_independence(j);
          if (rep.additive) return true;
          cx = joint_to_json(j).dump();
          why = "ignored-messages ensemble not additive, gap " +
                format_quantity(rep.additivity_gap);
          return false;
        });
  }});

  checks.push_back({"partition_identity", [](const VerifyOptions& opt) {
    return vd::run_randomized("partition_identity", opt,
        [&](rng_t& rng, std::string& cx, std::string& why) {
          const std::size_t n = vd::draw_dim(rng, 2, vd::cap_dim(opt, 6));
          const std::size_t m = vd::draw_dim(rng, 1, vd::cap_dim(opt, 8));
          const MessageEnsemble e = random_ensemble(rng, n, m);
          std::vector<UsefulnessLabel> labels;
          for (std::size_t k = 0; k < m; ++k)
            labels.push_back(static_cast<UsefulnessLabel>(rng() % 3));
          const PartitionReport rep = partition_pragmatic_info(e, labels);
          const double total = ensemble_pragmatic_info(e);
          if (std::fabs(rep.total() - total) > 1e-12) {
            cx = ensemble_to_json(e).dump();
            why = "components sum to " + format_quantity(rep.total()) + ", Phi = " +
                  format_quantity(total);
            return false;
          }
          for (double part : {rep.irrelevant, rep.disinformative, rep.useful})
            if (part < -1e-12 || part > total + 1e-12) {
              cx = ensemble_to_json(e).dump();
              why = "component " + format_quantity(part) + " outside [0, Phi]";
              return false;
            }
          return true;
        });
  }});

  // ---- bandit ------------------------------------------------------------

  checks.push_back({"bandit_phi_positive", [](const VerifyOptions&) {
    return vd::run_fixed("bandit_phi_positive", [](std::string& why) {
      for (double pi : {0.1, 0.25, 0.5})
        for (SweepMode mode : {SweepMode::Continuous, SweepMode::Integer})
          for (const SweepRow& row : sweep(pi, 10000, mode))
            if (!(row.phi > 0.0)) {
              why = "phi(T=" + std::to_string(row.t) + ", pi=" + format_quantity(pi) +
                    ") = " + format_quantity(row.phi);
              return false;
            }
      return true;
    });
  }});

  checks.push_back({"bandit_closed_form_agreement", [](const VerifyOptions&) {
    return vd::run_fixed("bandit_closed_form_agreement", [](std::string& why) {
      for (std::int64_t t : {0, 1, 2, 3, 5, 10, 50, 100, 1000})
        for (std::int64_t w = 0; w <= t; w += std::max<std::int64_t>(1, t / 7))
          for (double pi : {0.1, 0.5, 0.9}) {
            const double via_kl = trial_pragmatic_info(w, t, pi).phi;
            const double expanded = vd::bandit_phi_expanded(
                static_cast<double>(w), static_cast<double>(t), pi);
            if (std::fabs(via_kl - expanded) > 1e-12) {
              why = "w=" + std::to_string(w) + " T=" + std::to_string(t) +
                    " pi=" + format_quantity(pi) + ": " + format_quantity(via_kl) +
                    " vs " + format_quantity(expanded);
              return false;
            }
          }
      return true;
    });
  }});

  checks.push_back({"bandit_monotone_decay", [](const VerifyOptions&) {
    return vd::run_fixed("bandit_monotone_decay", [](std::string& why) {
      for (double pi : {0.1, 0.25, 0.5})
        for (SweepMode mode : {SweepMode::Continuous, SweepMode::Integer}) {
          const std::vector<SweepRow> rows = sweep(pi, 1000, mode);
          for (std::size_t k = 1; k < rows.size(); ++k)
            if (!(rows[k].phi < rows[k - 1].phi)) {
              why = "phi not strictly decreasing at T=" + std::to_string(rows[k].t) +
                    " pi=" + format_quantity(pi);
              return false;
            }
        }
      return true;
    });
  }});

  checks.push_back({"bandit_label_symmetry", [](const VerifyOptions&) {
    return vd::run_fixed("bandit_label_symmetry", [](std::string& why) {
      for (std::int64_t t : {0, 1, 2, 5, 17, 100})
        for (std::int64_t w = 0; w <= t; ++w)
          for (double pi : {0.2, 0.5, 0.7}) {
            const double a = trial_pragmatic_info(w, t, pi).phi;
            const double b = trial_pragmatic_info(t - w, t, 1.0 - pi).phi;
            if (std::fabs(a - b) > 1e-12) {
              why = "phi(w,T,pi) != phi(T-w,T,1-pi) at w=" + std::to_string(w) +
                    " T=" + std::to_string(t);
              return false;
            }
          }
      return true;
    });
  }});

  checks.push_back({"bandit_cross_module", [](const VerifyOptions&) {
    return vd::run_fixed("bandit_cross_module", [](std::string& why) {
      for (std::int64_t t : {0, 1, 2, 5, 20, 100})
        for (std::int64_t w = 0; w <= t; w += std::max<std::int64_t>(1, t / 5))
          for (double pi : {0.1, 0.5, 0.9}) {
            const double direct = trial_pragmatic_info(w, t, pi).phi;
            const double via_ensemble = ensemble_pragmatic_info(trial_ensemble(w, t, pi));
            if (std::fabs(direct - via_ensemble) > 1e-12) {
              why = "trial ensemble disagrees with closed form at w=" + std::to_string(w) +
                    " T=" + std::to_string(t);
              return false;
            }
          }
      return true;
    });
  }});

  // ---- ergodic averages ---------------------------------------------------

  checks.push_back({"trajectory_reproducibility", [](const VerifyOptions& opt) {
    return vd::run_fixed("trajectory_reproducibility", [&](std::string& why) {
      rng_t rng = vd::check_rng(opt, "trajectory_reproducibility");
      const MessageEnsemble e = random_ensemble(rng, 3, 4);
      const MessageSource src = MessageSource::iid(e.message_probs(), opt.seed);
      const Trajectory a = sample_trajectory(e, src, 2000);
      const Trajectory b = sample_trajectory(e, src, 2000);
      for (std::size_t k = 0; k < a.n(); ++k)
        if (a.running_avg[k] != b.running_avg[k]) {
          why = "same seed diverged at N=" + std::to_string(k + 1);
          return false;
        }
      return true;
    });
  }});

  checks.push_back({"trajectory_bound", [](const VerifyOptions& opt) {
    return vd::run_fixed("trajectory_bound", [&](std::string& why) {
      rng_t rng = vd::check_rng(opt, "trajectory_bound");
      const MessageEnsemble e = random_ensemble(rng, 4, 5);
      double max_d = 0.0;
      for (std::size_t m = 0; m < e.message_count(); ++m)
        max_d = std::max(max_d, kl_divergence(e.posterior(m), e.prior()));
      const double bound = definitive_upper_bound(e.prior());
      const Trajectory traj =
          sample_trajectory(e, MessageSource::iid(e.message_probs(), opt.seed ^ 0x9e37), 5000);
      for (double avg : traj.running_avg)
        if (!(avg >= 0.0 && avg <= max_d + 1e-12 && avg <= bound + 1e-12)) {
          why = "running average " + format_quantity(avg) + " escapes [0, max_m D, bound]";
          return false;
        }
      return true;
    });
  }});

  checks.push_back({"ergodic_convergence", [](const VerifyOptions& opt) {
    return vd::run_fixed("ergodic_convergence", [&](std::string& why) {
      rng_t rng = vd::check_rng(opt, "ergodic_convergence");
      const MessageEnsemble e = random_ensemble(rng, 4, 5);
      const double target = ensemble_pragmatic_info(e);
      kahan_sum var;
      for (std::size_t m = 0; m < e.message_count(); ++m) {
        const double d = kl_divergence(e.posterior(m), e.prior());
        var.add(e.message_probs()[m] * (d - target) * (d - target));
      }
      const std::size_t n = 100000;
      const double band = 3.0 * std::sqrt(var.value()) / std::sqrt(static_cast<double>(n));
      int hits = 0;
      for (std::uint64_t s = 0; s < 20; ++s) {
        const Trajectory traj =
            sample_trajectory(e, MessageSource::iid(e.message_probs(), opt.seed + s), n);
        if (std::fabs(traj.final_avg() - target) < band) ++hits;
      }
      if (hits >= 19) return true;
      why = "only " + std::to_string(hits) + "/20 seeds inside the 3-sigma band";
      return false;
    });
  }});

  checks.push_back({"markov_iid_same_limit", [](const VerifyOptions& opt) {
    return vd::run_fixed("markov_iid_same_limit", [&](std::string& why) {
      // two-state chain with stationary (3/4, 1/4), mixing eigenvalue 1/2
      const MessageEnsemble e = vd::boolean_delta_prime_fixture();
      Grid transition(2, 2, std::vector<double>{7.0 / 8.0, 1.0 / 8.0, 3.0 / 8.0, 5.0 / 8.0});
      const std::size_t n = 100000;
      int hits = 0;
      for (std::uint64_t s = 0; s < 20; ++s) {
        const Trajectory traj =
            sample_trajectory(e, MessageSource::markov(transition, 0, opt.seed + s), n);
        if (std::fabs(traj.final_avg() - 0.75) < 0.01) ++hits;
      }
      if (hits >= 19) return true;
      why = "only " + std::to_string(hits) + "/20 Markov seeds within 0.01 of 3/4";
      return false;
    });
  }});

  return checks;
}

inline std::vector<CheckResult> run_checks(const std::vector<Check>& checks,
                                           const VerifyOptions& opt) {
  std::vector<CheckResult> results;
  results.reserve(checks.size());
  for (const Check& c : checks) results.push_back(c.run(opt));
  return results;
}

}  // namespace praginfo
