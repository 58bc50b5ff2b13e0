// Copyright 2026 The l1stab authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Command-line front end: certify / solve / polytope / bound / phase / run.
// Exit codes: 0 success, 1 numerical failure, 2 usage error.

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <sstream>

#include "l1stab/certify.hpp"
#include "l1stab/ensemble.hpp"
#include "l1stab/hoffman.hpp"
#include "l1stab/matrix_io.hpp"
#include "l1stab/solvers.hpp"

using namespace l1stab;
using json = nlohmann::json;

namespace {

json vec_to_json(const Vector& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v(i));
  return a;
}

void write_text(const std::string& path, const std::string& body) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << body;
}

std::string out_path(const std::string& out_dir, const std::string& name) {
  if (out_dir.empty()) return name;
  return out_dir + "/" + name;
}

hoffman::Theorem parse_theorem(const std::string& s) {
  if (s == "3.2") return hoffman::Theorem::T32;
  if (s == "4.2") return hoffman::Theorem::T42;
  if (s == "4.4") return hoffman::Theorem::T44;
  if (s == "5.6") return hoffman::Theorem::T56;
  throw CLI::ValidationError("--theorem", "must be one of 3.2|4.2|4.4|5.6");
}

int cmd_certify(const std::string& matrix, int k,
                const std::string& properties, const std::string& out) {
  const auto A = linops::DesignMatrix::build(read_matrix_file(matrix));
  std::set<std::string> want;
  {
    std::stringstream ss(properties);
    std::string tok;
    while (std::getline(ss, tok, ',')) want.insert(tok);
  }
  json rep = json::object();
  if (want.count("weak-rsp")) {
    const auto r = certify::certify_weak_rsp(A, k);
    rep["weak-rsp"] = {{"holds", r.holds}};
    if (!r.holds) {
      rep["weak-rsp"]["witness"] = {{"S1", r.witness.S1},
                                    {"S2", r.witness.S2}};
    }
  }
  if (want.count("rsp")) {
    const auto r = certify::certify_rsp(A, k);
    rep["rsp"] = {{"holds", r.holds}, {"margin", r.min_margin}};
    if (!r.holds) {
      rep["rsp"]["witness"] = {{"S1", r.witness.S1}, {"S2", r.witness.S2}};
    }
  }
  if (want.count("nsp")) {
    const auto r = certify::certify_nsp(A, k);
    rep["nsp"] = {{"holds", r.holds}};
    if (r.rho_infinite) {
      rep["nsp"]["constant"] = "inf";
    } else {
      rep["nsp"]["constant"] = r.rho;
    }
    if (!r.holds) {
      rep["nsp"]["witness"] = {{"S", r.S}, {"v", vec_to_json(r.v)}};
    }
  }
  if (want.count("rip")) {
    rep["rip"] = {{"constant", certify::rip_delta(A.A, 2 * k)}};
  }
  if (want.count("mu1")) {
    rep["mu1"] = {{"constant", certify::accumulative_coherence(A.A, k)},
                  {"constant_k_minus_1",
                   certify::accumulative_coherence(A.A, k - 1)}};
  }
  const std::string body = rep.dump(2) + "\n";
  if (out.empty()) {
    std::cout << body;
  } else {
    write_text(out, body);
  }
  return 0;
}

int cmd_solve(const std::string& matrix, const std::string& yfile,
              const std::string& norm, double eps, const std::string& out) {
  const auto A = linops::DesignMatrix::build(read_matrix_file(matrix));
  const Vector y = read_vector_file(yfile);
  solvers::RecoverySolution sol;
  if (norm == "eq") {
    sol = solvers::bp_solve(A, y);
  } else if (norm == "inf") {
    sol = solvers::linf_solve(A, y, eps);
  } else if (norm == "one") {
    sol = solvers::l1con_solve(A, y, eps);
  } else if (norm == "two") {
    sol = solvers::l2con_solve(A, y, eps);
  } else {
    throw CLI::ValidationError("--norm", "must be one of eq|inf|one|two");
  }
  json rep = {{"x_star", vec_to_json(sol.x)},
              {"value", sol.value},
              {"kkt_residual_linf", sol.kkt_residual_linf}};
  if (sol.relaxation) {
    json ladder = json::array();
    for (const auto& [J, v] : sol.relaxation->ladder) {
      ladder.push_back({{"J", J}, {"value", v}});
    }
    rep["ladder"] = ladder;
    rep["lower"] = sol.relaxation->lower;
    rep["upper"] = sol.relaxation->upper;
    rep["schedule_exhausted"] = sol.relaxation->schedule_exhausted;
  }
  const std::string body = rep.dump(2) + "\n";
  if (out.empty()) {
    std::cout << body;
  } else {
    write_text(out, body);
  }
  return 0;
}

int cmd_polytope(int dim, int K, bool augment, const std::string& sweep,
                 std::uint64_t seed, const std::string& out,
                 const std::string& csv) {
  if (!sweep.empty()) {
    std::stringstream ss(sweep);
    std::string tok;
    std::ostringstream rows;
    rows << "K,delta\n";
    while (std::getline(ss, tok, ',')) {
      const int k = std::stoi(tok);
      const auto P = geom::dudley_polytope(dim, k, seed);
      rows << k << "," << geom::hausdorff_to_ball(P).value << "\n";
    }
    if (csv.empty()) {
      std::cout << rows.str();
    } else {
      write_text(csv, rows.str());
    }
    return 0;
  }
  auto P = geom::dudley_polytope(dim, K, seed);
  if (augment) P = geom::augment_with_axes(P);
  std::ostringstream body;
  for (int j = 0; j < P.num_normals(); ++j) {
    for (int i = 0; i < dim; ++i) {
      body << (i ? " " : "") << P.normals(i, j);
    }
    body << "\n";
  }
  if (out.empty()) {
    std::cout << body.str();
  } else {
    write_text(out, body.str());
  }
  return 0;
}

std::string bound_csv(const std::vector<hoffman::StabilityReport>& reports) {
  std::ostringstream rows;
  rows << "trial,sigma_k,epsilon,distance,bound_factor,empirical_gamma,"
          "feasible\n";
  for (const auto& r : reports) {
    rows << r.trial << "," << r.sigma_k << "," << r.epsilon << ","
         << r.measured_distance << "," << r.bound_factor << ","
         << r.empirical_gamma << "," << (r.feasible ? 1 : 0) << "\n";
  }
  return rows.str();
}

int cmd_bound(const std::string& matrix, const std::string& theorem, int k,
              int trials, std::uint64_t seed, double perturbation, double eps,
              const std::string& csv) {
  const auto A = linops::DesignMatrix::build(read_matrix_file(matrix));
  hoffman::StabilityConfig cfg;
  cfg.trials = trials;
  cfg.seed = seed;
  cfg.perturbation = perturbation;
  cfg.epsilon = eps;
  const auto reports =
      hoffman::stability_experiment(parse_theorem(theorem), A, k, cfg);
  const std::string body = bound_csv(reports);
  if (csv.empty()) {
    std::cout << body;
  } else {
    write_text(csv, body);
  }
  return 0;
}

int cmd_phase(int n, int k, const std::string& m_range, int per_point,
              std::uint64_t seed, const std::string& csv,
              const std::string& json_out) {
  std::vector<int> ms;
  std::stringstream ss(m_range);
  std::string tok;
  while (std::getline(ss, tok, ',')) ms.push_back(std::stoi(tok));
  const auto curve = ensemble::phase_experiment(n, k, ms, per_point, seed);
  std::ostringstream rows;
  rows << "m,per_point,holds,frequency,wilson_lo,wilson_hi\n";
  json jcurve = json::array();
  for (const auto& p : curve) {
    rows << p.m << "," << p.per_point << "," << p.holds << "," << p.frequency
         << "," << p.wilson_lo << "," << p.wilson_hi << "\n";
    jcurve.push_back({{"m", p.m},
                      {"per_point", p.per_point},
                      {"holds", p.holds},
                      {"frequency", p.frequency},
                      {"wilson_lo", p.wilson_lo},
                      {"wilson_hi", p.wilson_hi}});
  }
  if (csv.empty() && json_out.empty()) {
    std::cout << rows.str();
  }
  if (!csv.empty()) write_text(csv, rows.str());
  if (!json_out.empty()) write_text(json_out, jcurve.dump(2) + "\n");
  return 0;
}

// Flat key=value config for the `run` orchestration.
std::map<std::string, std::string> parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config: " + path);
  std::map<std::string, std::string> cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw IoError("config line " + std::to_string(lineno) +
                    ": expected key=value");
    }
    auto trim = [](std::string s) {
      const auto a = s.find_first_not_of(" \t\r");
      const auto b = s.find_last_not_of(" \t\r");
      return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
    };
    cfg[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

int cmd_run(const std::string& config, const std::string& out_dir) {
  const auto cfg = parse_config(config);
  if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
  auto need = [&](const std::string& key) {
    const auto it = cfg.find(key);
    if (it == cfg.end()) throw IoError("config: missing key '" + key + "'");
    return it->second;
  };
  auto get = [&](const std::string& key, const std::string& dflt) {
    const auto it = cfg.find(key);
    return it == cfg.end() ? dflt : it->second;
  };
  const auto A = linops::DesignMatrix::build(read_matrix_file(need("matrix")));
  const int k = std::stoi(get("k", "1"));
  const std::uint64_t seed = std::stoull(get("seed", "1"));
  const std::string theorem = get("theorem", "3.2");
  const int trials = std::stoi(get("trials", "10"));

  json result;
  const auto rep = certify::report(A, k);
  result["certify"] = {{"k", k},
                       {"weak_rsp", rep.weak_rsp.holds},
                       {"rsp", rep.rsp.holds},
                       {"nsp", rep.nsp.holds},
                       {"mu1_k", rep.mu1_k},
                       {"mu1_k_minus_1", rep.mu1_k_minus_1}};
  if (rep.rip_delta_2k) result["certify"]["rip_delta_2k"] = *rep.rip_delta_2k;
  if (rep.stable_nsp_rho_infinite) {
    result["certify"]["stable_nsp_rho"] = "inf";
  } else {
    result["certify"]["stable_nsp_rho"] = rep.stable_nsp_rho;
  }

  hoffman::StabilityConfig scfg;
  scfg.trials = trials;
  scfg.seed = seed;
  scfg.perturbation = std::stod(get("perturbation", "0"));
  scfg.epsilon = std::stod(get("epsilon", "0.1"));
  const auto reports =
      hoffman::stability_experiment(parse_theorem(theorem), A, k, scfg);
  json jtrials = json::array();
  for (const auto& r : reports) {
    jtrials.push_back({{"trial", r.trial},
                       {"sigma_k", r.sigma_k},
                       {"epsilon", r.epsilon},
                       {"distance", r.measured_distance},
                       {"bound_factor", r.bound_factor},
                       {"empirical_gamma", r.empirical_gamma},
                       {"feasible", r.feasible}});
  }
  result["trials"] = jtrials;

  write_text(out_path(out_dir, "result.json"), result.dump(2) + "\n");
  write_text(out_path(out_dir, "trials.csv"), bound_csv(reports));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"l1-minimization stability toolkit"};
  app.require_subcommand(1);

  std::string matrix, yfile, out, csv, json_out, properties, norm = "eq";
  std::string theorem = "3.2", sweep, m_range, config, out_dir;
  int k = 1, dim = 2, K = 8, trials = 10, per_point = 10, n = 6;
  double eps = 0.0, perturbation = 0.0;
  std::uint64_t seed = 1;
  bool augment = false;

  auto* c = app.add_subcommand("certify", "certify matrix properties");
  c->add_option("--matrix", matrix)->required();
  c->add_option("--k", k)->required();
  c->add_option("--properties", properties)
      ->default_val("weak-rsp,rsp,nsp,rip,mu1");
  c->add_option("--out", out);

  auto* s = app.add_subcommand("solve", "solve an l1-minimization problem");
  s->add_option("--matrix", matrix)->required();
  s->add_option("--y", yfile)->required();
  s->add_option("--norm", norm)->required();
  s->add_option("--eps", eps);
  s->add_option("--out", out);

  auto* p = app.add_subcommand("polytope", "generate ball approximations");
  p->add_option("--dim", dim)->required();
  p->add_option("--k", K);
  p->add_flag("--augment", augment);
  p->add_option("--sweep", sweep);
  p->add_option("--seed", seed);
  p->add_option("--out", out);
  p->add_option("--csv", csv);

  auto* b = app.add_subcommand("bound", "stability-bound experiments");
  b->add_option("--theorem", theorem)->required();
  b->add_option("--matrix", matrix)->required();
  b->add_option("--k", k)->required();
  b->add_option("--trials", trials);
  b->add_option("--seed", seed);
  b->add_option("--perturbation", perturbation);
  b->add_option("--eps", eps);
  b->add_option("--csv", csv);

  auto* ph = app.add_subcommand("phase", "weak-RSP phase experiment");
  ph->add_option("--n", n)->required();
  ph->add_option("--k", k)->required();
  ph->add_option("--m-range", m_range)->required();
  ph->add_option("--per-point", per_point);
  ph->add_option("--seed", seed);
  ph->add_option("--csv", csv);
  ph->add_option("--json", json_out);

  auto* r = app.add_subcommand("run", "orchestrated experiment from a config");
  r->add_option("--config", config)->required();
  r->add_option("--out-dir", out_dir)->default_val(".");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(c)) return cmd_certify(matrix, k, properties, out);
    if (app.got_subcommand(s)) return cmd_solve(matrix, yfile, norm, eps, out);
    if (app.got_subcommand(p)) {
      return cmd_polytope(dim, K, augment, sweep, seed, out, csv);
    }
    if (app.got_subcommand(b)) {
      return cmd_bound(matrix, theorem, k, trials, seed, perturbation, eps,
                       csv);
    }
    if (app.got_subcommand(ph)) {
      return cmd_phase(n, k, m_range, per_point, seed, csv, json_out);
    }
    if (app.got_subcommand(r)) return cmd_run(config, out_dir);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
