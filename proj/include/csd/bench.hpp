// Copyright 2026 the csd authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CSD_BENCH_HPP
#define CSD_BENCH_HPP

#include <chrono>
#include <sstream>

#include <json.hpp>

#include "csd/compiler.hpp"
#include "csd/experiments.hpp"

namespace csd {

inline nlohmann::json report_to_json(const ExperimentReport &rep) {
  nlohmann::json j;
  j["code"] = rep.code_id;
  j["kind"] = rep.kind;
  j["rounds"] = rep.rounds;
  j["logical_qubits"] = rep.logical_qubits;
  j["seed"] = rep.seed;
  j["runtime_seconds"] = rep.runtime_seconds;
  j["points"] = nlohmann::json::array();
  for (const auto &pt : rep.points) {
    nlohmann::json p;
    p["p"] = pt.p;
    p["shots"] = pt.shots;
    p["accepted"] = pt.accepted;
    p["failures"] = pt.failures;
    p["acceptance"] = pt.acceptance;
    p["p_l"] = pt.p_l;
    p["eps_l"] = pt.eps;
    p["eps_l_std"] = pt.eps_std;
    p["p_l_ucb95"] = pt.p_l_ucb95;
    j["points"].push_back(p);
  }
  return j;
}

inline std::string report_to_csv(const ExperimentReport &rep) {
  std::ostringstream out;
  out << "code,kind,rounds,p,shots,accepted,failures,acceptance,p_l,eps_l,eps_l_std\n";
  char buf[256];
  for (const auto &pt : rep.points) {
    std::snprintf(buf, sizeof(buf), "%s,%s,%zu,%.8g,%zu,%zu,%zu,%.8g,%.8g,%.8g,%.8g\n",
                  rep.code_id.c_str(), rep.kind.c_str(), rep.rounds, pt.p, pt.shots,
                  pt.accepted, pt.failures, pt.acceptance, pt.p_l, pt.eps, pt.eps_std);
    out << buf;
  }
  return out.str();
}

inline ExperimentReport run_prep_sweep(const std::string &seed_name,
                                       const std::vector<double> &p_grid, size_t shots,
                                       const PrepPolicy &policy, uint64_t seed,
                                       size_t threads = 1) {
  auto t0 = std::chrono::steady_clock::now();
  CsdCode csd = build_csd(seed_name);
  ExperimentReport rep;
  rep.code_id = seed_name;
  rep.kind = "prep";
  rep.rounds = 1;
  rep.logical_qubits = csd.css.k();
  rep.seed = seed;
  for (double p : p_grid) {
    rep.points.push_back(prep_experiment(csd, policy, NoiseModel{p}, shots, seed, 4, threads));
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.runtime_seconds = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
  return rep;
}

inline ExperimentReport run_memory_sweep(const std::string &seed_name,
                                         const std::vector<double> &p_grid, size_t shots,
                                         size_t rounds, uint64_t seed, size_t threads = 1,
                                         size_t tune_shots = 100000) {
  auto t0 = std::chrono::steady_clock::now();
  CsdCode csd = build_csd(seed_name);
  ExperimentReport rep;
  rep.code_id = seed_name;
  rep.kind = "memory";
  rep.rounds = rounds;
  rep.logical_qubits = csd.css.k();
  rep.seed = seed;
  for (double p : p_grid) {
    // p' tuned per point against the preparation benchmark, per the noise
    // abstraction; zero-failure preparation runs tune against the 95% bound.
    ExperimentPoint prep =
        prep_experiment(csd, PrepPolicy{}, NoiseModel{p}, tune_shots, seed + 1, 4, threads);
    double target = prep.failures > 0 ? prep.eps : eps_l(prep.p_l_ucb95, csd.css.k());
    double p_prime = tune_p_prime(csd, target, tune_shots, seed + 2, threads);
    rep.points.push_back(memory_experiment(csd, rounds, NoiseModel{p},
                                           PrepNoiseProxy{p_prime, p}, shots, seed, 4,
                                           threads));
  }
  auto t1 = std::chrono::steady_clock::now();
  rep.runtime_seconds = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count() / 1000.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Table reproduction: construction parameters, distances, gate groups, and
// compilation histograms checked against the published values.
// ---------------------------------------------------------------------------

struct ReproLine {
  std::string name;
  std::string expected;
  std::string actual;
  bool pass = false;
};

struct ReproReport {
  std::vector<ReproLine> lines;

  void add(const std::string &name, const std::string &expected, const std::string &actual) {
    lines.push_back({name, expected, actual, expected == actual});
  }
  bool all_pass() const {
    for (const auto &l : lines) {
      if (!l.pass) {
        return false;
      }
    }
    return true;
  }
  std::string str() const {
    std::ostringstream out;
    for (const auto &l : lines) {
      out << (l.pass ? "PASS " : "FAIL ") << l.name << ": expected " << l.expected
          << ", got " << l.actual << "\n";
    }
    return out.str();
  }
};

/// Reruns constructions, distance estimates, gate-group closures, and the
/// compilation histogram, diffing against the published table values. Two
/// table entries are known to disagree with first-principles recomputation
/// from the printed seed matrices and are listed with their published
/// expectations (see the project README).
inline ReproReport reproduce_tables(uint64_t seed = 7, size_t threads = 1) {
  ReproReport rep;
  struct Row {
    const char *name;
    size_t n, k, qmax, d_csd, d_double;
  };
  const std::vector<Row> rows = {
      {"c422", 16, 4, 8, 4, 2},
      {"c513", 20, 2, 8, 6, 3},
      {"c833", 32, 6, 16, 6, 3},
      {"c1244", 48, 8, 16, 8, 4},
  };
  for (const auto &row : rows) {
    SymplecticDouble d = symplectic_double(seed_library(row.name));
    CsdCode csd = concatenate_c4(d.code, d.tau);
    rep.add(std::string(row.name) + " n", std::to_string(row.n), std::to_string(csd.css.n));
    rep.add(std::string(row.name) + " k", std::to_string(row.k), std::to_string(csd.css.k()));
    rep.add(std::string(row.name) + " q_max", std::to_string(row.qmax),
            std::to_string(csd.css.q_max()));
    DistanceResult dc = estimate_distance(csd.css, 1000, seed, threads);
    rep.add(std::string(row.name) + " d(CSD)", std::to_string(row.d_csd),
            std::to_string(dc.d_est));
    DistanceResult dd = estimate_distance(d.code, 1000, seed, threads);
    rep.add(std::string(row.name) + " d(double)", std::to_string(row.d_double),
            std::to_string(dd.d_est));
  }

  // Gate groups for the two seeds with tractable automorphism search.
  {
    StabilizerCode seed422 = seed_library("c422");
    SymplecticDouble d = symplectic_double(seed422);
    auto gens = g_tau_generators(seed422, d.code, d.tau);
    rep.add("c422 |G_tau|", "216", big_count_str(group_order(gens, 100000, seed)));
    auto with_s = gens;
    with_s.push_back(injected_s_action(4, 2));
    rep.add("c422 +targeted S", "47377612800",
            big_count_str(group_order(with_s, 100000, seed)));
    auto with_gs = gens;
    with_gs.push_back(global_s_action(4));
    rep.add("c422 +global S", "1625702400",
            big_count_str(group_order(with_gs, 600000, seed)));
  }
  {
    StabilizerCode seed513 = seed_library("c513");
    SymplecticDouble d = symplectic_double(seed513);
    auto gens = g_tau_generators(seed513, d.code, d.tau);
    rep.add("c513 |G_tau|", "18", big_count_str(group_order(gens, 100000, seed)));
    auto with_s = gens;
    with_s.push_back(injected_s_action(2, 0));
    rep.add("c513 +targeted S", "720", big_count_str(group_order(with_s, 100000, seed)));

    GeneratorSet gset;
    gset.free_generators = gens;
    gset.injected.push_back({"S_0", injected_s_action(2, 0)});
    CosetSearch search(gset);
    auto hist = search.injection_histogram();
    rep.add("c513 injection max", "4", std::to_string(hist.rbegin()->first));
    uint64_t total = 0, le2 = 0;
    for (auto &[k2, v] : hist) {
      total += v;
      if (k2 <= 2) {
        le2 += v;
      }
    }
    rep.add("c513 injection majority<=2", "1", le2 * 2 > total ? "1" : "0");
  }
  return rep;
}

}  // namespace csd

#endif
