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

#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "csd/csd.hpp"

namespace {

csd::CsdCode load_code(const std::string &spec) {
  // Either a seed name or a JSON file produced by `csd build`.
  for (const auto &name : csd::seed_names()) {
    if (spec == name) {
      return csd::build_csd(spec);
    }
  }
  return csd::csd_from_json(nlohmann::json::parse(csd::read_file(spec)));
}

void emit(const std::string &out_path, const std::string &content) {
  if (out_path.empty() || out_path == "-") {
    std::cout << content;
  } else {
    csd::write_file(out_path, content);
  }
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Concatenated symplectic double codes: construction, gates, and benchmarks"};
  app.require_subcommand(1);
  app.fallthrough();

  uint64_t seed = 7;
  size_t threads = csd::default_thread_count();
  std::string out_path;
  app.add_option("--seed", seed, "PRNG seed")->capture_default_str();
  app.add_option("--threads", threads, "worker threads (CSD_THREADS honored)")
      ->capture_default_str();
  app.add_option("--out", out_path, "output file (default stdout)");

  // --- build ---
  auto *build = app.add_subcommand("build", "construct a CSD code from a seed");
  std::string build_seed = "c422";
  std::string build_stage = "csd";
  build->add_option("--seed-code", build_seed, "seed name (c422, c513, c833, c1244)")
      ->capture_default_str();
  build->add_option("--stage", build_stage, "seed | double | csd")->capture_default_str();

  // --- distance ---
  auto *dist = app.add_subcommand("distance", "random information-set distance estimate");
  std::string dist_code;
  size_t dist_trials = 1000;
  dist->add_option("--code", dist_code, "seed name or code JSON file")->required();
  dist->add_option("--trials", dist_trials, "information sets")->capture_default_str();

  // --- gates ---
  auto *gates = app.add_subcommand("gates", "SWAP-transversal gate records");
  std::string gates_code;
  bool gates_list = false;
  gates->add_option("--code", gates_code, "seed name")->required();
  gates->add_flag("--list", gates_list, "emit full gate records as JSON");

  // --- compile ---
  auto *compile = app.add_subcommand("compile", "factorize a logical Clifford target");
  std::string compile_code, compile_target, compile_injections = "s";
  compile->add_option("--code", compile_code, "seed name")->required();
  compile->add_option("--target", compile_target,
                      "JSON file with a 2K x 2K symplectic bit matrix (rows of 0/1)")
      ->required();
  compile->add_option("--injections", compile_injections, "s | s,sx")->capture_default_str();

  // --- prep ---
  auto *prep = app.add_subcommand("prep", "state-preparation benchmark sweep");
  std::string prep_code = "c422";
  std::vector<double> prep_grid{3e-4, 1e-3, 2e-3, 3e-3};
  size_t prep_shots = 100000;
  size_t prep_allow = 0;
  std::string prep_format = "csv";
  prep->add_option("--code", prep_code)->capture_default_str();
  prep->add_option("--p", prep_grid, "physical error rates")->capture_default_str();
  prep->add_option("--shots", prep_shots)->capture_default_str();
  prep->add_option("--allow-m", prep_allow, "detector budget before rejection")
      ->capture_default_str();
  prep->add_option("--format", prep_format, "csv | json")->capture_default_str();

  // --- memory ---
  auto *mem = app.add_subcommand("memory", "Steane-QEC memory benchmark sweep");
  std::string mem_code = "c422";
  std::vector<double> mem_grid{3e-4, 1e-3, 2e-3, 3e-3};
  size_t mem_shots = 100000;
  size_t mem_rounds = 0;
  std::string mem_format = "csv";
  mem->add_option("--code", mem_code)->capture_default_str();
  mem->add_option("--p", mem_grid)->capture_default_str();
  mem->add_option("--shots", mem_shots)->capture_default_str();
  mem->add_option("--rounds", mem_rounds, "QEC rounds (default: code distance)")
      ->capture_default_str();
  mem->add_option("--format", mem_format, "csv | json")->capture_default_str();

  // --- decode ---
  auto *dec = app.add_subcommand("decode", "BP+OSD decode sampled shots");
  std::string dec_dem, dec_shots_file;
  size_t dec_osd = 4;
  size_t dec_sample_shots = 0;
  dec->add_option("--dem", dec_dem, "detector error model file")->required();
  dec->add_option("--shots", dec_shots_file, "CSV shot file (det bits then obs bits)");
  dec->add_option("--sample-shots", dec_sample_shots,
                  "sample this many shots from the DEM instead of reading a file");
  dec->add_option("--osd-order", dec_osd)->capture_default_str();

  // --- reproduce ---
  auto *repro = app.add_subcommand("reproduce", "re-derive published table values");

  for (auto *sc : app.get_subcommands({})) {
    sc->fallthrough();
  }
  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      if (build_stage == "seed") {
        emit(out_path, csd::code_to_text(csd::seed_library(build_seed)));
      } else if (build_stage == "double") {
        auto d = csd::symplectic_double(csd::seed_library(build_seed));
        emit(out_path, csd::css_to_json(d.code).dump(2) + "\n");
      } else {
        emit(out_path, csd::csd_to_json(csd::build_csd(build_seed)).dump(2) + "\n");
      }
      return 0;
    }

    if (*dist) {
      csd::CsdCode code = load_code(dist_code);
      csd::DistanceResult r = csd::estimate_distance(code.css, dist_trials, seed, threads);
      nlohmann::json j;
      j["d_est"] = r.d_est;
      j["witness"] = r.witness.str();
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*gates) {
      csd::StabilizerCode seed_code = csd::seed_library(gates_code);
      auto d = csd::symplectic_double(seed_code);
      csd::CsdCode code = csd::concatenate_c4(d.code, d.tau);
      nlohmann::json j = nlohmann::json::array();
      auto add_record = [&](const csd::GateRecord &rec) {
        nlohmann::json g;
        g["label"] = rec.label;
        g["transversality"] = rec.transversality;
        g["circuit"] = rec.circuit.str();
        g["action"] = rec.action.str();
        j.push_back(g);
      };
      size_t idx = 0;
      for (const auto &aut : csd::find_swap_transversal_gates(seed_code)) {
        csd::CliffordCircuit lifted = csd::lift_to_csd(aut.circuit, code);
        csd::GateRecord rec{"aut" + std::to_string(idx++), lifted,
                            csd::logical_action(lifted, code.css), "swap-transversal"};
        add_record(rec);
        if (!gates_list && idx >= 4) {
          break;
        }
      }
      add_record(csd::h_tau(code));
      add_record(csd::s_tau(code));
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*compile) {
      csd::StabilizerCode seed_code = csd::seed_library(compile_code);
      auto d = csd::symplectic_double(seed_code);
      csd::CsdCode code = csd::concatenate_c4(d.code, d.tau);
      size_t K = code.css.k();

      auto rows = nlohmann::json::parse(csd::read_file(compile_target))
                      .get<std::vector<std::string>>();
      csd::SymplecticMatrix target(2 * K);
      for (size_t r = 0; r < rows.size(); r++) {
        for (size_t c2 = 0; c2 < rows[r].size(); c2++) {
          target.set(r, c2, rows[r][c2] == '1');
        }
      }

      csd::GeneratorSet gens;
      gens.free_generators = csd::g_tau_generators(seed_code, d.code, d.tau);
      gens.injected.push_back({"S_0", csd::injected_s_action(K, 0)});
      if (compile_injections.find("sx") != std::string::npos) {
        gens.injected.push_back({"SX_0", csd::injected_sqrtx_action(K, 0)});
      }
      csd::CosetSearch search(gens);
      csd::Factorization fact = search.factorize(target);
      nlohmann::json j;
      j["injection_count"] = fact.injection_count;
      j["word"] = nlohmann::json::array();
      for (size_t i = 0; i < fact.factors.size(); i++) {
        nlohmann::json step;
        step["kind"] = fact.injection_labels[i] >= 0 ? "injection" : "free";
        if (fact.injection_labels[i] >= 0) {
          step["label"] = gens.injected[fact.injection_labels[i]].first;
        }
        step["matrix"] = fact.factors[i].str();
        j["word"].push_back(step);
      }
      emit(out_path, j.dump(2) + "\n");
      return 0;
    }

    if (*prep) {
      csd::PrepPolicy policy;
      policy.allow_m = prep_allow;
      csd::ExperimentReport rep =
          csd::run_prep_sweep(prep_code, prep_grid, prep_shots, policy, seed, threads);
      emit(out_path, prep_format == "json" ? csd::report_to_json(rep).dump(2) + "\n"
                                           : csd::report_to_csv(rep));
      return 0;
    }

    if (*mem) {
      csd::CsdCode code = csd::build_csd(mem_code);
      size_t rounds = mem_rounds;
      if (rounds == 0) {
        rounds = csd::estimate_distance(code.css, 300, seed, threads).d_est;
      }
      csd::ExperimentReport rep =
          csd::run_memory_sweep(mem_code, mem_grid, mem_shots, rounds, seed, threads);
      emit(out_path, mem_format == "json" ? csd::report_to_json(rep).dump(2) + "\n"
                                          : csd::report_to_csv(rep));
      return 0;
    }

    if (*dec) {
      csd::DetectorErrorModel dem = csd::dem_from_text(csd::read_file(dec_dem));
      csd::DecodingProblem prob = csd::DecodingProblem::from_dem(dem);
      csd::SampleBlock block =
          dec_sample_shots > 0
              ? csd::sample(dem, dec_sample_shots, seed)
              : csd::SampleBlock(0, dem.num_detectors, dem.num_observables);
      if (dec_sample_shots == 0 && !dec_shots_file.empty()) {
        // CSV rows of 0/1: detector bits then observable bits.
        std::istringstream in(csd::read_file(dec_shots_file));
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line)) {
          if (!line.empty()) {
            lines.push_back(line);
          }
        }
        csd::SampleBlock parsed(lines.size(), dem.num_detectors, dem.num_observables);
        for (size_t s = 0; s < lines.size(); s++) {
          size_t bit = 0;
          for (char ch : lines[s]) {
            if (ch != '0' && ch != '1') {
              continue;
            }
            if (ch == '1') {
              if (bit < dem.num_detectors) {
                parsed.flip_detector(s, bit);
              } else {
                parsed.flip_observable(s, bit - dem.num_detectors);
              }
            }
            bit++;
          }
        }
        block = std::move(parsed);
      }
      csd::BatchDecodeResult res = csd::decode_block(prob, block, {}, 0, dec_osd, threads);
      std::ostringstream summary;
      summary << "shots,failures,p_l\n"
              << block.shots() << ',' << res.failures << ','
              << (block.shots() ? double(res.failures) / block.shots() : 0) << "\n";
      emit(out_path, summary.str());
      return 0;
    }

    if (*repro) {
      csd::ReproReport rep = csd::reproduce_tables(seed, threads);
      emit(out_path, rep.str());
      return rep.all_pass() ? 0 : 1;
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
