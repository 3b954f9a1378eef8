// praginfo: belief-update information calculus over JSON-described ensembles.
//
// Exit codes: 0 success, 1 property violation, 2 parse/schema error,
// 3 domain violation (e.g. zero prior entry), 4 source/ensemble mismatch.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "praginfo/praginfo.hpp"

namespace {

using namespace praginfo;

struct InputFile {
  std::string path;
  std::string text;
  std::uint64_t digest;
};

InputFile load_input(const std::string& path) {
  InputFile f;
  f.path = path;
  f.text = read_file(path);
  f.digest = fnv1a64(f.text);
  return f;
}

std::string hex_digest(std::uint64_t d) {
  char buf[20];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(d));
  return buf;
}

/// Stream selection for --out. Reports and CSV go to the chosen stream;
/// when CSV occupies stdout the human summary moves to stderr.
struct OutStream {
  std::ostream* stream = &std::cout;
  std::ofstream file;
  bool is_file = false;

  void open(const std::string& path) {
    if (path.empty()) return;
    file.open(path, std::ios::binary);
    if (!file) throw schema_error("cannot open output file: " + path);
    stream = &file;
    is_file = true;
  }
  std::ostream& summary() { return is_file ? std::cout : std::cerr; }
};

struct CheckLine {
  std::string name;
  double residual;
  double tolerance;
  bool pass() const { return std::fabs(residual) <= tolerance; }
};

void print_check(std::ostream& out, const CheckLine& c) {
  out << "check " << c.name << ": |residual| = " << format_quantity(std::fabs(c.residual))
      << " tol = " << format_quantity(c.tolerance) << (c.pass() ? "  PASS" : "  FAIL") << '\n';
}

int cmd_kl(const std::string& p_path, const std::string& q_path, OutStream& out,
           const std::string& format) {
  const InputFile pf = load_input(p_path);
  const InputFile qf = load_input(q_path);
  const Dist p = dist_from_json(parse_json_text(pf.text, pf.path), pf.path);
  const Prior q(dist_from_json(parse_json_text(qf.text, qf.path), qf.path));
  const double d = kl_divergence(p, q);
  if (format == "json") {
    json rep;
    rep["command"] = "kl";
    rep["inputs"] = {{pf.path, hex_digest(pf.digest)}, {qf.path, hex_digest(qf.digest)}};
    rep["D_bits"] = d;
    *out.stream << rep.dump(2) << '\n';
  } else {
    *out.stream << format_quantity(d) << '\n';
  }
  return 0;
}

int cmd_ensemble(const std::string& path, OutStream& out, const std::string& format) {
  const InputFile f = load_input(path);
  const MessageEnsemble e = ensemble_from_json(parse_json_text(f.text, f.path), f.path);
  const DecompositionReport rep = decompose(e);
  const double bound = definitive_upper_bound(e.prior());
  const std::vector<bool> defin = definitive_messages(e);
  const bool all_definitive = is_pragmatically_definitive(e);
  const CheckLine decomp{"decomposition Phi = I + D(pbar||q)", rep.residual(), 1e-10};

  if (format == "json") {
    json j;
    j["command"] = "ensemble";
    j["inputs"] = {{f.path, hex_digest(f.digest)}};
    j["Phi_bits"] = rep.phi;
    j["I_bits"] = rep.mutual_info;
    j["D_prior_update_bits"] = rep.prior_update;
    j["marginal_posterior"] = rep.marginal.probs();
    j["bound_bits"] = bound;
    j["definitive_messages"] = defin;
    j["ensemble_definitive"] = all_definitive;
    j["checks"] = json::array(
        {{{"name", decomp.name}, {"residual", decomp.residual}, {"tol", decomp.tolerance},
          {"pass", decomp.pass()}}});
    *out.stream << j.dump(2) << '\n';
  } else {
    std::ostream& o = *out.stream;
    o << "command: ensemble " << f.path << '\n';
    o << "input: " << f.path << " fnv1a64=" << hex_digest(f.digest) << '\n';
    o << "Phi            = " << format_quantity(rep.phi)
      << "  (ensemble pragmatic information, bits)\n";
    o << "I              = " << format_quantity(rep.mutual_info)
      << "  (mutual information of messages and outcomes, bits)\n";
    o << "D_prior_update = " << format_quantity(rep.prior_update)
      << "  (divergence of marginal posterior from prior, bits)\n";
    o << "bound          = " << format_quantity(bound) << "  (max_i -log2 q_i, bits)\n";
    o << "definitive     = " << (all_definitive ? "yes" : "no") << "  (per message:";
    for (std::size_t m = 0; m < defin.size(); ++m) o << ' ' << (defin[m] ? "yes" : "no");
    o << ")\n";
    print_check(o, decomp);
  }
  return decomp.pass() ? 0 : 1;
}

int cmd_joint(const std::string& path, OutStream& out, const std::string& format) {
  const InputFile f = load_input(path);
  const JointEnsemble j = joint_from_json(parse_json_text(f.text, f.path), f.path);
  const double phi_joint = joint_pragmatic_info(j);
  const double phi_delta = ensemble_pragmatic_info(marginal_delta(j));
  const double phi_cond = conditional_pragmatic_info(j);
  const double phi_prime = ensemble_pragmatic_info(marginal_delta_prime(j));
  const double residual = phi_joint - phi_delta - phi_cond;
  const IndependenceReport ind = check_pragmatic_independence(j);
  const CheckLine chain{"chain rule Phi_joint = Phi_Delta + Phi_cond", residual, 1e-10};

  if (format == "json") {
    json rep;
    rep["command"] = "joint";
    rep["inputs"] = {{f.path, hex_digest(f.digest)}};
    rep["Phi_joint_bits"] = phi_joint;
    rep["Phi_Delta_bits"] = phi_delta;
    rep["Phi_cond_bits"] = phi_cond;
    rep["Phi_DeltaPrime_bits"] = phi_prime;
    rep["chain_residual"] = residual;
    rep["independence"] = {{"sufficient_condition", ind.sufficient_condition},
                           {"additive", ind.additive},
                           {"classification", to_string(ind.classify())},
                           {"additivity_gap_bits", ind.additivity_gap}};
    rep["checks"] = json::array(
        {{{"name", chain.name}, {"residual", chain.residual}, {"tol", chain.tolerance},
          {"pass", chain.pass()}}});
    *out.stream << rep.dump(2) << '\n';
  } else {
    std::ostream& o = *out.stream;
    o << "command: joint " << f.path << '\n';
    o << "input: " << f.path << " fnv1a64=" << hex_digest(f.digest) << '\n';
    o << "Phi_joint       = " << format_quantity(phi_joint) << "  (bits)\n";
    o << "Phi_Delta       = " << format_quantity(phi_delta) << "  (bits)\n";
    o << "Phi_cond        = " << format_quantity(phi_cond) << "  (bits)\n";
    o << "Phi_Delta_prime = " << format_quantity(phi_prime) << "  (bits)\n";
    print_check(o, chain);
    o << "independence: sufficient_condition=" << (ind.sufficient_condition ? "yes" : "no")
      << " additive=" << (ind.additive ? "yes" : "no") << " classification="
      << to_string(ind.classify()) << '\n';
    o << "additivity_gap  = " << format_quantity(ind.additivity_gap) << "  (bits)\n";
  }
  return chain.pass() ? 0 : 1;
}

int cmd_bandit(double pi, std::int64_t t_max, const std::string& mode_name, OutStream& out,
               const std::string& format) {
  const SweepMode mode = mode_name == "integer" ? SweepMode::Integer : SweepMode::Continuous;
  const std::vector<SweepRow> rows = sweep(pi, t_max, mode);
  if (format == "json") {
    json arr = json::array();
    for (const SweepRow& r : rows)
      arr.push_back({{"T", r.t}, {"w", r.w}, {"q1", r.q1}, {"d_win", r.d_win},
                     {"d_loss", r.d_loss}, {"phi_bits", r.phi}});
    *out.stream << arr.dump(2) << '\n';
  } else {
    write_sweep_csv(*out.stream, rows);
  }
  bool monotone = true;
  for (std::size_t k = 1; k < rows.size(); ++k)
    if (!(rows[k].phi < rows[k - 1].phi)) monotone = false;
  std::ostream& s = out.summary();
  s << "phi(T=0)    = " << format_quantity(rows.front().phi) << " bits\n";
  s << "phi(T=" << t_max << ") = " << format_quantity(rows.back().phi) << " bits\n";
  s << "monotone_decreasing: " << (monotone ? "yes" : "no") << '\n';
  return monotone ? 0 : 1;
}

int cmd_simulate(const std::string& path, const std::string& source_kind, std::size_t n,
                 std::uint64_t seed, const std::string& transition_path,
                 std::size_t initial_state, OutStream& out, const std::string& format) {
  const InputFile f = load_input(path);
  const MessageEnsemble e = ensemble_from_json(parse_json_text(f.text, f.path), f.path);

  MessageSource src = [&] {
    if (source_kind == "markov") {
      if (transition_path.empty())
        throw schema_error("simulate: --source markov requires --transition <file>");
      return MessageSource::markov(load_transition(transition_path), initial_state, seed);
    }
    return MessageSource::iid(e.message_probs(), seed);
  }();

  const Trajectory traj = sample_trajectory(e, src, n);
  const double target = ensemble_pragmatic_info(e);
  const double gap = std::fabs(traj.final_avg() - target);

  if (format == "json") {
    json rep;
    rep["command"] = "simulate";
    rep["inputs"] = {{f.path, hex_digest(f.digest)}};
    rep["seed"] = seed;
    rep["source"] = source_kind;
    rep["generator"] = kGeneratorName;
    rep["n"] = n;
    rep["phi_final_bits"] = traj.final_avg();
    rep["phi_target_bits"] = target;
    rep["abs_gap_bits"] = gap;
    *out.stream << rep.dump(2) << '\n';
  } else {
    write_trajectory_csv(*out.stream, traj, source_kind);
  }
  std::ostream& s = out.summary();
  s << "phi_final  = " << format_quantity(traj.final_avg()) << " bits (N=" << n << ")\n";
  s << "phi_target = " << format_quantity(target) << " bits\n";
  s << "abs_gap    = " << format_quantity(gap) << " bits\n";
  return 0;
}

int cmd_verify(long trials, std::uint64_t seed, std::size_t max_dim, bool inject_failure,
               OutStream& out, const std::string& format) {
  VerifyOptions opt;
  opt.trials = trials;
  opt.seed = seed;
  opt.max_dim = max_dim;

  std::vector<Check> checks = default_checks();
  if (inject_failure) {
    checks.push_back({"injected_violation", [](const VerifyOptions&) {
      CheckResult r;
      r.name = "injected_violation";
      r.trials = 1;
      r.failures = 1;
      r.detail = "harness self-test: deliberately flipped sign";
      r.counterexample =
          ensemble_to_json(verify_detail::boolean_delta_prime_fixture()).dump();
      return r;
    }});
  }

  const std::vector<CheckResult> results = run_checks(checks, opt);
  long failed = 0;
  for (const CheckResult& r : results)
    if (!r.passed()) ++failed;

  if (format == "json") {
    json arr = json::array();
    for (const CheckResult& r : results) {
      json item = {{"name", r.name}, {"trials", r.trials}, {"failures", r.failures},
                   {"pass", r.passed()}};
      if (!r.detail.empty()) item["detail"] = r.detail;
      if (!r.counterexample.empty()) item["counterexample"] = json::parse(r.counterexample);
      arr.push_back(std::move(item));
    }
    *out.stream << json{{"command", "verify"}, {"seed", seed}, {"trials", trials},
                        {"checks", std::move(arr)}, {"all_pass", failed == 0}}
                        .dump(2)
                << '\n';
  } else {
    std::ostream& o = *out.stream;
    o << "command: verify --trials " << trials << " --seed " << seed << '\n';
    for (const CheckResult& r : results) {
      char line[128];
      std::snprintf(line, sizeof(line), "%-34s trials=%-6ld failures=%-4ld %s", r.name.c_str(),
                    r.trials, r.failures, r.passed() ? "PASS" : "FAIL");
      o << line << '\n';
      if (!r.passed()) {
        if (!r.detail.empty()) o << "  detail: " << r.detail << '\n';
        if (!r.counterexample.empty()) o << "  counterexample: " << r.counterexample << '\n';
      }
    }
    o << (failed == 0 ? "all checks passed" : "CHECK FAILURES: " + std::to_string(failed))
      << " (" << (results.size() - static_cast<std::size_t>(failed)) << '/' << results.size()
      << ")\n";
  }
  return failed == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pragmatic-information calculus: divergence-based accounting of how much "
               "messages change a decision maker's beliefs"};
  app.require_subcommand(1);
  // let --out / --format appear after the subcommand too
  app.fallthrough();

  std::string out_path;
  std::string format = "csv";
  app.add_option("--out", out_path, "write primary output to a file (default: stdout)");
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"csv", "json"}));

  auto* kl = app.add_subcommand("kl", "divergence D(p||q) in bits between two distribution files");
  std::string kl_p, kl_q;
  kl->add_option("p", kl_p, "posterior distribution JSON file")->required();
  kl->add_option("q", kl_q, "prior distribution JSON file (strictly positive)")->required();

  auto* ens = app.add_subcommand("ensemble", "evaluate a message ensemble file");
  std::string ens_path;
  ens->add_option("file", ens_path, "ensemble JSON file")->required();

  auto* jnt = app.add_subcommand("joint", "evaluate a two-decision-maker joint ensemble file");
  std::string jnt_path;
  jnt->add_option("file", jnt_path, "joint ensemble JSON file")->required();

  auto* bnd = app.add_subcommand("bandit", "per-trial information sweep for the one-armed bandit");
  double bnd_pi = 0.5;
  std::int64_t bnd_tmax = 100;
  std::string bnd_mode = "continuous";
  bnd->add_option("--pi", bnd_pi, "true payout probability in (0,1)")->required();
  bnd->add_option("--t-max", bnd_tmax, "largest trial count T")->required();
  bnd->add_option("--mode", bnd_mode, "win-count convention along the sweep")
      ->check(CLI::IsMember({"continuous", "integer"}));

  auto* sim = app.add_subcommand("simulate", "Monte Carlo running average of per-message divergence");
  std::string sim_path, sim_source = "iid", sim_transition;
  std::size_t sim_n = 100000, sim_initial = 0;
  std::uint64_t sim_seed = 42;
  sim->add_option("file", sim_path, "ensemble JSON file")->required();
  sim->add_option("--source", sim_source, "message source kind")
      ->check(CLI::IsMember({"iid", "markov"}));
  sim->add_option("--n", sim_n, "number of sampled messages");
  sim->add_option("--seed", sim_seed, "generator seed");
  sim->add_option("--transition", sim_transition, "row-stochastic transition matrix JSON file");
  sim->add_option("--initial-state", sim_initial, "Markov start state");

  auto* ver = app.add_subcommand("verify", "run the randomized theorem suite");
  long ver_trials = 100;
  std::uint64_t ver_seed = 7;
  std::size_t ver_maxdim = 0;
  bool ver_inject = false;
  ver->add_option("--trials", ver_trials, "random instances per check")
      ->check(CLI::PositiveNumber);
  ver->add_option("--seed", ver_seed, "suite seed");
  ver->add_option("--max-dim", ver_maxdim, "cap all instance dimensions (0 = per-check caps)");
  ver->add_flag("--inject-failure", ver_inject,
                "append a deliberately failing check (harness self-test)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    OutStream out;
    out.open(out_path);
    if (kl->parsed()) return cmd_kl(kl_p, kl_q, out, format);
    if (ens->parsed()) return cmd_ensemble(ens_path, out, format);
    if (jnt->parsed()) return cmd_joint(jnt_path, out, format);
    if (bnd->parsed()) {
      if (!(bnd_pi > 0.0 && bnd_pi < 1.0) || bnd_tmax < 0) {
        std::cerr << "bandit: --pi must lie in (0,1) and --t-max must be >= 0\n";
        return 2;
      }
      return cmd_bandit(bnd_pi, bnd_tmax, bnd_mode, out, format);
    }
    if (sim->parsed())
      return cmd_simulate(sim_path, sim_source, sim_n, sim_seed, sim_transition, sim_initial,
                          out, format);
    if (ver->parsed()) return cmd_verify(ver_trials, ver_seed, ver_maxdim, ver_inject, out, format);
  } catch (const praginfo::schema_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const praginfo::mismatch_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 4;
  } catch (const praginfo::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
