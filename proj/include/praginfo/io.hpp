#pragma once

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "praginfo/bandit.hpp"
#include "praginfo/ergodic.hpp"
#include "praginfo/joint.hpp"

namespace praginfo {

using nlohmann::json;

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw schema_error("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Parses JSON text, rethrowing parse failures as schema_error with a
/// line:column location instead of nlohmann's byte offset.
inline json parse_json_text(const std::string& text, const std::string& source_name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    const std::size_t stop = e.byte > 0 && e.byte <= text.size() ? e.byte - 1 : text.size();
    for (std::size_t i = 0; i < stop; ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw schema_error(source_name + ":" + std::to_string(line) + ":" + std::to_string(col) +
                       ": JSON parse error: " + e.what());
  }
}

inline json load_json(const std::string& path) { return parse_json_text(read_file(path), path); }

namespace detail {

inline std::vector<double> number_array(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw schema_error(what + ": expected a non-empty array of numbers");
  std::vector<double> v;
  v.reserve(j.size());
  for (const auto& x : j) {
    if (!x.is_number()) throw schema_error(what + ": expected a number, got " + x.dump());
    v.push_back(x.get<double>());
  }
  return v;
}

inline Grid number_matrix(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty())
    throw schema_error(what + ": expected a non-empty array of rows");
  std::vector<std::vector<double>> rows;
  rows.reserve(j.size());
  for (const auto& r : j) rows.push_back(number_array(r, what + " row"));
  const std::size_t cols = rows.front().size();
  Grid g(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw schema_error(what + ": ragged rows");
    for (std::size_t c = 0; c < cols; ++c) g.at(r, c) = rows[r][c];
  }
  return g;
}

inline json matrix_to_json(const Grid& g) {
  json rows = json::array();
  for (std::size_t r = 0; r < g.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < g.cols(); ++c) row.push_back(g.at(r, c));
    rows.push_back(std::move(row));
  }
  return rows;
}

template <typename Build>
auto build_checked(const std::string& what, Build&& build) {
  try {
    return build();
  } catch (const domain_error& e) {
    throw schema_error(what + ": " + e.what());
  }
}

}  // namespace detail

/// Distribution file: a JSON array of probabilities, e.g. [0.5, 0.25, 0.25].
inline Dist dist_from_json(const json& j, const std::string& what = "distribution") {
  auto v = detail::number_array(j, what);
  return detail::build_checked(what, [&] { return Dist(std::move(v)); });
}

inline Dist load_dist(const std::string& path) { return dist_from_json(load_json(path), path); }

/// Ensemble schema:
/// {"prior": [...], "messages": [{"label": "...", "prob": x, "posterior": [...]}]}
inline MessageEnsemble ensemble_from_json(const json& j, const std::string& what = "ensemble") {
  if (!j.is_object() || !j.contains("prior") || !j.contains("messages"))
    throw schema_error(what + ": expected object with \"prior\" and \"messages\"");
  auto prior_v = detail::number_array(j["prior"], what + ".prior");
  if (!j["messages"].is_array() || j["messages"].empty())
    throw schema_error(what + ".messages: expected a non-empty array");

  std::vector<double> probs;
  std::vector<Dist> posteriors;
  std::vector<std::string> labels;
  bool any_label = false;
  std::size_t k = 0;
  for (const auto& msg : j["messages"]) {
    const std::string ctx = what + ".messages[" + std::to_string(k) + "]";
    if (!msg.is_object() || !msg.contains("prob") || !msg.contains("posterior"))
      throw schema_error(ctx + ": expected object with \"prob\" and \"posterior\"");
    if (!msg["prob"].is_number()) throw schema_error(ctx + ".prob: expected a number");
    probs.push_back(msg["prob"].get<double>());
    auto post_v = detail::number_array(msg["posterior"], ctx + ".posterior");
    posteriors.push_back(
        detail::build_checked(ctx + ".posterior", [&] { return Dist(std::move(post_v)); }));
    if (msg.contains("label")) {
      if (!msg["label"].is_string()) throw schema_error(ctx + ".label: expected a string");
      labels.push_back(msg["label"].get<std::string>());
      any_label = true;
    } else {
      labels.push_back("m" + std::to_string(k));
    }
    ++k;
  }
  if (!any_label) labels.clear();
  return detail::build_checked(what, [&] {
    return MessageEnsemble(Prior(std::move(prior_v)), Dist(std::move(probs)),
                           std::move(posteriors), std::move(labels));
  });
}

inline MessageEnsemble load_ensemble(const std::string& path) {
  return ensemble_from_json(load_json(path), path);
}

inline json ensemble_to_json(const MessageEnsemble& e) {
  json out;
  out["prior"] = e.prior().probs();
  json msgs = json::array();
  for (std::size_t m = 0; m < e.message_count(); ++m) {
    json msg;
    msg["label"] = e.has_labels() ? e.label(m) : "m" + std::to_string(m);
    msg["prob"] = e.message_probs()[m];
    msg["posterior"] = e.posterior(m).probs();
    msgs.push_back(std::move(msg));
  }
  out["messages"] = std::move(msgs);
  return out;
}

/// Joint-ensemble schema:
/// {"joint_prior": [[...]], "message_probs": [[...]],
///  "posteriors": {"<m>,<m'>": [[...]], ...}}   (row-major matrices)
inline JointEnsemble joint_from_json(const json& j, const std::string& what = "joint ensemble") {
  if (!j.is_object() || !j.contains("joint_prior") || !j.contains("message_probs") ||
      !j.contains("posteriors"))
    throw schema_error(what +
                       ": expected object with \"joint_prior\", \"message_probs\", \"posteriors\"");
  Grid prior = detail::number_matrix(j["joint_prior"], what + ".joint_prior");
  Grid phi = detail::number_matrix(j["message_probs"], what + ".message_probs");
  if (!j["posteriors"].is_object())
    throw schema_error(what + ".posteriors: expected an object keyed \"<m>,<m'>\"");

  std::vector<Grid> posts(phi.rows() * phi.cols(), Grid(1, 1, 1.0));
  std::vector<bool> seen(phi.rows() * phi.cols(), false);
  for (const auto& [key, value] : j["posteriors"].items()) {
    const auto comma = key.find(',');
    if (comma == std::string::npos)
      throw schema_error(what + ".posteriors: bad key \"" + key + "\", expected \"<m>,<m'>\"");
    std::size_t mi = 0, mp = 0;
    try {
      mi = std::stoul(key.substr(0, comma));
      mp = std::stoul(key.substr(comma + 1));
    } catch (const std::exception&) {
      throw schema_error(what + ".posteriors: bad key \"" + key + "\"");
    }
    if (mi >= phi.rows() || mp >= phi.cols())
      throw schema_error(what + ".posteriors: key \"" + key + "\" outside the message grid");
    posts[mi * phi.cols() + mp] = detail::number_matrix(value, what + ".posteriors[" + key + "]");
    seen[mi * phi.cols() + mp] = true;
  }
  for (std::size_t idx = 0; idx < seen.size(); ++idx)
    if (!seen[idx])
      throw schema_error(what + ".posteriors: missing key \"" +
                         std::to_string(idx / phi.cols()) + "," +
                         std::to_string(idx % phi.cols()) + "\"");
  return detail::build_checked(
      what, [&] { return JointEnsemble(std::move(prior), std::move(phi), std::move(posts)); });
}

inline JointEnsemble load_joint(const std::string& path) {
  return joint_from_json(load_json(path), path);
}

inline json joint_to_json(const JointEnsemble& je) {
  json out;
  out["joint_prior"] = detail::matrix_to_json(je.prior());
  out["message_probs"] = detail::matrix_to_json(je.message_probs());
  json posts;
  for (std::size_t mi = 0; mi < je.m(); ++mi)
    for (std::size_t mp = 0; mp < je.m_prime(); ++mp)
      posts[std::to_string(mi) + "," + std::to_string(mp)] =
          detail::matrix_to_json(je.posterior(mi, mp));
  out["posteriors"] = std::move(posts);
  return out;
}

/// Transition-matrix file: a JSON array of row-stochastic rows.
inline Grid load_transition(const std::string& path) {
  return detail::number_matrix(load_json(path), path);
}

/// Sweep CSV: one row per T, 12 significant digits, LF line endings.
inline void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "T,w,q1,d_win,d_loss,phi_bits\n";
  for (const SweepRow& r : rows)
    out << r.t << ',' << format_quantity(r.w) << ',' << format_quantity(r.q1) << ','
        << format_quantity(r.d_win) << ',' << format_quantity(r.d_loss) << ','
        << format_quantity(r.phi) << '\n';
}

/// Trajectory CSV, subsampled on a 1-2-5 grid so long runs stay small.
/// The leading comment line records how to reproduce the run.
inline void write_trajectory_csv(std::ostream& out, const Trajectory& traj,
                                 const std::string& source_kind) {
  out << "# seed=" << traj.seed << " source=" << source_kind << " generator=" << kGeneratorName
      << '\n';
  out << "N,phi_running_bits\n";
  std::size_t step = 1;
  auto emit = [&](std::size_t n1) {
    out << n1 << ',' << format_quantity(traj.running_avg[n1 - 1]) << '\n';
  };
  std::size_t last = 0;
  while (step <= traj.n()) {
    for (std::size_t mult : {1, 2, 5}) {
      const std::size_t n1 = step * mult;
      if (n1 > traj.n()) break;
      emit(n1);
      last = n1;
    }
    step *= 10;
  }
  if (last != traj.n()) emit(traj.n());
}

}  // namespace praginfo
