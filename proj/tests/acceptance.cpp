// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances are pinned in code next to each check.

#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "praginfo/praginfo.hpp"

namespace fs = std::filesystem;
using namespace praginfo;

namespace {

int g_failures = 0;

void criterion(int num, const std::string& description, double runtime_limit_s,
               const std::function<bool(std::string&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::string why;
  bool ok = false;
  try {
    ok = body(why);
  } catch (const std::exception& e) {
    why = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (ok && runtime_limit_s > 0.0 && elapsed > runtime_limit_s) {
    ok = false;
    why = "runtime " + format_quantity(elapsed) + " s exceeds " +
          format_quantity(runtime_limit_s) + " s";
  }
  if (!ok) ++g_failures;
  std::printf("%s  criterion %2d  %-58s  (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", num,
              description.c_str(), elapsed, why.empty() ? "" : "  -- ", why.c_str());
  std::fflush(stdout);
}

std::string fixture(const std::string& name) {
  return (fs::path(PRAGINFO_FIXTURE_DIR) / name).string();
}

struct CsvSweep {
  std::vector<double> phi;  // indexed by T
};

CsvSweep run_bandit_cli(double pi, const fs::path& out_csv) {
  const std::string cmd = std::string(PRAGINFO_CLI_PATH) + " --out " + out_csv.string() +
                          " bandit --pi " + format_quantity(pi) +
                          " --t-max 200 > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  if (!WIFEXITED(status) || WEXITSTATUS(status) != 0)
    throw std::runtime_error("bandit CLI failed for pi=" + format_quantity(pi));
  std::ifstream in(out_csv);
  std::string line;
  std::getline(in, line);  // header
  if (line != "T,w,q1,d_win,d_loss,phi_bits")
    throw std::runtime_error("unexpected CSV header: " + line);
  CsvSweep sweep;
  while (std::getline(in, line)) {
    const auto last_comma = line.rfind(',');
    sweep.phi.push_back(std::stod(line.substr(last_comma + 1)));
  }
  return sweep;
}

}  // namespace

int main() {
  const JointEnsemble boolean_joint = load_joint(fixture("boolean_joint.json"));
  const MessageEnsemble boolean_prime = load_ensemble(fixture("boolean_delta_prime.json"));

  criterion(1, "Boolean worked example: 2 / 1 / 1 / 0.75 bits within 1e-12", 1.0,
            [&](std::string& why) {
    const double joint = joint_pragmatic_info(boolean_joint);
    const double delta = ensemble_pragmatic_info(marginal_delta(boolean_joint));
    const double cond = conditional_pragmatic_info(boolean_joint);
    const double prime = ensemble_pragmatic_info(marginal_delta_prime(boolean_joint));
    const double prime_file = ensemble_pragmatic_info(boolean_prime);
    if (std::fabs(joint - 2.0) > 1e-12) { why = "Phi_joint = " + format_quantity(joint); return false; }
    if (std::fabs(delta - 1.0) > 1e-12) { why = "Phi_Delta = " + format_quantity(delta); return false; }
    if (std::fabs(cond - 1.0) > 1e-12) { why = "Phi_cond = " + format_quantity(cond); return false; }
    if (std::fabs(prime - 0.75) > 1e-12) { why = "Phi_Delta' = " + format_quantity(prime); return false; }
    if (std::fabs(prime_file - 0.75) > 1e-12) { why = "fixture Phi_Delta' = " + format_quantity(prime_file); return false; }
    return true;
  });

  criterion(2, "conditioning-increase regression: Phi_Delta' < Phi_cond", 1.0,
            [&](std::string& why) {
    const double prime = ensemble_pragmatic_info(marginal_delta_prime(boolean_joint));
    const double cond = conditional_pragmatic_info(boolean_joint);
    if (prime < cond) return true;
    why = format_quantity(prime) + " !< " + format_quantity(cond);
    return false;
  });

  criterion(3, "bandit sweep: decreasing, ordered by |pi - 1/2|, < 0.005 at T=200", 1.0,
            [&](std::string& why) {
    const fs::path dir = fs::temp_directory_path() / "praginfo_acceptance";
    fs::create_directories(dir);
    const CsvSweep mid = run_bandit_cli(0.5, dir / "sweep_50.csv");
    const CsvSweep quarter = run_bandit_cli(0.25, dir / "sweep_25.csv");
    const CsvSweep edge = run_bandit_cli(0.1, dir / "sweep_10.csv");
    for (const CsvSweep* s : {&mid, &quarter, &edge}) {
      if (s->phi.size() != 201) { why = "expected 201 rows"; return false; }
      for (std::size_t t = 1; t < s->phi.size(); ++t)
        if (!(s->phi[t] < s->phi[t - 1])) {
          why = "phi not strictly decreasing at T=" + std::to_string(t);
          return false;
        }
      if (!(s->phi[200] < 0.005)) {
        why = "phi(200) = " + format_quantity(s->phi[200]);
        return false;
      }
    }
    for (std::size_t t = 0; t <= 200; ++t) {
      // the T=0 rows are analytically equal across pi; strict order after that
      if (!(mid.phi[t] >= quarter.phi[t] - 1e-12 && quarter.phi[t] >= edge.phi[t] - 1e-12)) {
        why = "ordering violated at T=" + std::to_string(t);
        return false;
      }
      if (t >= 1 && !(mid.phi[t] > quarter.phi[t] && quarter.phi[t] > edge.phi[t])) {
        why = "strict ordering violated at T=" + std::to_string(t);
        return false;
      }
    }
    return true;
  });

  criterion(4, "chain rule on 1000 random joint ensembles (dims <= 4, 1e-10)", 10.0,
            [&](std::string& why) {
    rng_t rng(0xC0FFEE);
    for (int trial = 0; trial < 1000; ++trial) {
      const JointEnsemble j = random_joint(rng, 2 + rng() % 3, 2 + rng() % 3, 2 + rng() % 3,
                                           2 + rng() % 3);
      const double residual = chain_rule_residual(j);
      if (std::fabs(residual) >= 1e-10) {
        why = "trial " + std::to_string(trial) + " residual " + format_quantity(residual);
        return false;
      }
    }
    return true;
  });

  criterion(5, "wrong code: ideal == KL (1e-12); integer in (KL-1, KL+1); Huffman optimal", 30.0,
            [&](std::string& why) {
    rng_t rng(0xBADC0DE);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + rng() % 15;  // N in [2, 16]
      const Dist p = random_dist(rng, n);
      const Prior q = random_prior(rng, n);
      const double d = kl_divergence(p, q);
      const double ideal = expected_codelength_gap(p, q, GapMode::Ideal);
      if (std::fabs(ideal - d) >= 1e-12) {
        why = "ideal gap off by " + format_quantity(ideal - d);
        return false;
      }
      const double integer = expected_codelength_gap(p, q, GapMode::Integer);
      if (!(d - 1.0 < integer && integer < d + 1.0)) {
        why = "integer gap " + format_quantity(integer) + " outside (D-1, D+1), D=" +
              format_quantity(d);
        return false;
      }
      if (n <= 6) {
        const double expected = expected_length(p, huffman_code_lengths(p));
        const double optimal = verify_detail::brute_force_optimal_expected_length(p);
        if (std::fabs(expected - optimal) > 1e-12) {
          why = "Huffman " + format_quantity(expected) + " vs optimum " +
                format_quantity(optimal);
          return false;
        }
      }
    }
    return true;
  });

  criterion(6, "decomposition Phi = I + D(pbar||q) (1e-10), Phi >= I, equality at pbar=q", 10.0,
            [&](std::string& why) {
    rng_t rng(0xDECADE);
    for (int trial = 0; trial < 1000; ++trial) {
      const MessageEnsemble e = random_ensemble(rng, 2 + rng() % 5, 1 + rng() % 5);
      const DecompositionReport rep = decompose(e);
      if (std::fabs(rep.residual()) >= 1e-10) {
        why = "residual " + format_quantity(rep.residual());
        return false;
      }
      if (rep.phi < rep.mutual_info - 1e-12) {
        why = "Phi < I at trial " + std::to_string(trial);
        return false;
      }
      // constructed equality case: opposite perturbations average back to q
      const Prior& q = e.prior();
      const double eps = 0.5 * std::min(q[0], q[1]);
      std::vector<double> up = q.probs(), down = q.probs();
      up[0] += eps; up[1] -= eps;
      down[0] -= eps; down[1] += eps;
      const MessageEnsemble balanced(q, Dist{0.5, 0.5},
                                     {Dist(std::move(up)), Dist(std::move(down))});
      const DecompositionReport brep = decompose(balanced);
      if (std::fabs(brep.phi - brep.mutual_info) >= 1e-10) {
        why = "pbar=q case |Phi - I| = " +
              format_quantity(std::fabs(brep.phi - brep.mutual_info));
        return false;
      }
    }
    return true;
  });

  criterion(7, "upper bound max_i(-log2 q_i) holds; definitive ensemble attains it", 10.0,
            [&](std::string& why) {
    rng_t rng(0xB0BA);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + rng() % 7;
      const Prior q = random_prior(rng, n);
      const double bound = definitive_upper_bound(q);
      const std::size_t m = 1 + rng() % 5;
      std::vector<Dist> posts;
      for (std::size_t k = 0; k < m; ++k) posts.push_back(random_dist(rng, n));
      const MessageEnsemble e(q, random_dist(rng, m), std::move(posts));
      if (ensemble_pragmatic_info(e) > bound + 1e-12) {
        why = "ensemble Phi over the bound";
        return false;
      }
      std::size_t argmin = 0;
      for (std::size_t i = 1; i < n; ++i)
        if (q[i] < q[argmin]) argmin = i;
      const MessageEnsemble definitive(q, Dist{1.0}, {Dist::unit(n, argmin)});
      if (std::fabs(ensemble_pragmatic_info(definitive) - bound) > 1e-12) {
        why = "definitive ensemble misses the bound";
        return false;
      }
    }
    return true;
  });

  criterion(8, "non-negativity always; convexity on 1000 interpolation 4-tuples (1e-10)", 10.0,
            [&](std::string& why) {
    rng_t rng(0xFEED);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t n = 2 + rng() % 7;
      const Dist p1 = random_dist(rng, n), p2 = random_dist(rng, n);
      const Prior q1 = random_prior(rng, n), q2 = random_prior(rng, n);
      if (kl_divergence(p1, q1) < 0.0 || kl_divergence(p2, q2) < 0.0) {
        why = "negative divergence";
        return false;
      }
      const double lambda = unit_double(rng);
      const double lhs =
          kl_divergence(convex_mix(p1, p2, lambda), Prior(convex_mix(q1, q2, lambda)));
      const double rhs =
          lambda * kl_divergence(p1, q1) + (1.0 - lambda) * kl_divergence(p2, q2);
      if (!(lhs <= rhs + 1e-10)) {
        why = "convexity violated: " + format_quantity(lhs) + " > " + format_quantity(rhs);
        return false;
      }
    }
    return true;
  });

  criterion(9, "additivity for product ensembles; Boolean fixture off by exactly 1/4 bit", 10.0,
            [&](std::string& why) {
    rng_t rng(0xADD);
    for (int trial = 0; trial < 200; ++trial) {
      const JointEnsemble j = random_product_joint(rng, 2 + rng() % 3, 2 + rng() % 3,
                                                   1 + rng() % 3, 1 + rng() % 3);
      const IndependenceReport rep = check_pragmatic_independence(j);
      if (!rep.additive || std::fabs(rep.additivity_gap) >= 1e-10) {
        why = "product ensemble gap " + format_quantity(rep.additivity_gap);
        return false;
      }
    }
    const IndependenceReport rep = check_pragmatic_independence(boolean_joint);
    if (std::fabs(rep.additivity_gap - 0.25) > 1e-12) {
      why = "Boolean additivity gap = " + format_quantity(rep.additivity_gap);
      return false;
    }
    if (rep.additive) {
      why = "Boolean fixture wrongly flagged additive";
      return false;
    }
    return true;
  });

  criterion(10, "ergodic convergence: IID and Markov within 0.01 of 3/4 (19/20 seeds)", 30.0,
            [&](std::string& why) {
    int iid_hits = 0, markov_hits = 0;
    const Grid chain(2, 2, std::vector<double>{0.875, 0.125, 0.375, 0.625});
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const Trajectory iid = sample_trajectory(
          boolean_prime, MessageSource::iid(boolean_prime.message_probs(), seed), 100000);
      if (std::fabs(iid.final_avg() - 0.75) < 0.01) ++iid_hits;
      const Trajectory markov = sample_trajectory(
          boolean_prime, MessageSource::markov(chain, 0, seed), 100000);
      if (std::fabs(markov.final_avg() - 0.75) < 0.01) ++markov_hits;
    }
    if (iid_hits < 19) { why = "IID " + std::to_string(iid_hits) + "/20"; return false; }
    if (markov_hits < 19) { why = "Markov " + std::to_string(markov_hits) + "/20"; return false; }
    return true;
  });

  criterion(11, "usefulness partition sums to the total on 1000 random labelings (1e-12)", 10.0,
            [&](std::string& why) {
    rng_t rng(0x5E7);
    for (int trial = 0; trial < 1000; ++trial) {
      const std::size_t m = 1 + rng() % 7;
      const MessageEnsemble e = random_ensemble(rng, 2 + rng() % 5, m);
      std::vector<UsefulnessLabel> labels;
      for (std::size_t k = 0; k < m; ++k)
        labels.push_back(static_cast<UsefulnessLabel>(rng() % 3));
      const PartitionReport rep = partition_pragmatic_info(e, labels);
      const double total = ensemble_pragmatic_info(e);
      if (std::fabs(rep.total() - total) >= 1e-12) {
        why = "partition sum off by " + format_quantity(rep.total() - total);
        return false;
      }
    }
    return true;
  });

  if (g_failures == 0) {
    std::printf("all 11 acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criteria FAILED\n", g_failures);
  return 1;
}
