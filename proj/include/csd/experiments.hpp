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

#ifndef CSD_EXPERIMENTS_HPP
#define CSD_EXPERIMENTS_HPP

#include <cmath>
#include <string>
#include <vector>

#include "csd/builders.hpp"
#include "csd/decoder.hpp"
#include "csd/dem.hpp"
#include "csd/distance.hpp"
#include "csd/noise.hpp"
#include "csd/parallel.hpp"

namespace csd {

/// Logical error rate per logical qubit (and per round when rounds > 1):
/// eps_L = 1 - (1 - p_L)^(1 / (K * rounds)).
inline double eps_l(double p_l, size_t logical_qubits, size_t rounds = 1) {
  return 1.0 - std::pow(1.0 - p_l, 1.0 / double(logical_qubits * rounds));
}

/// Binomial standard deviation of p_L pushed through the eps_L transform by
/// the delta method.
inline double eps_l_stddev(double p_l, size_t shots, size_t logical_qubits,
                           size_t rounds = 1) {
  if (shots == 0) {
    return 0;
  }
  double sigma_pl = std::sqrt(std::max(p_l * (1 - p_l), 1e-300) / double(shots));
  double kd = double(logical_qubits * rounds);
  double deriv = std::pow(std::max(1.0 - p_l, 1e-300), 1.0 / kd - 1.0) / kd;
  return sigma_pl * deriv;
}

/// 95% upper confidence bound on a binomial rate (Wilson score).
inline double wilson_upper(size_t failures, size_t shots) {
  if (shots == 0) {
    return 1.0;
  }
  double z = 1.96;
  double n = double(shots);
  double p = double(failures) / n;
  double denom = 1 + z * z / n;
  double center = p + z * z / (2 * n);
  double rad = z * std::sqrt(p * (1 - p) / n + z * z / (4 * n * n));
  return std::min(1.0, (center + rad) / denom);
}

struct ExperimentPoint {
  double p = 0;
  size_t shots = 0;
  size_t accepted = 0;
  size_t failures = 0;
  double acceptance = 1.0;
  double p_l = 0;
  double eps = 0;
  double eps_std = 0;
  double p_l_ucb95 = 0;
};

struct ExperimentReport {
  std::string code_id;
  std::string kind;  // "prep" or "memory"
  size_t rounds = 1;
  size_t logical_qubits = 0;
  uint64_t seed = 0;
  double runtime_seconds = 0;
  std::vector<ExperimentPoint> points;
};

/// Decodes a sampled block shot by shot, in index order, parallel over
/// batches with a deterministic reduction.
struct BatchDecodeResult {
  size_t accepted = 0;
  size_t failures = 0;
};

inline BatchDecodeResult decode_block(const DecodingProblem &prob, const SampleBlock &block,
                                      const std::vector<uint32_t> &postselect,
                                      size_t allow_m, size_t osd_order, size_t threads) {
  size_t shots = block.shots();
  size_t batch = 256;
  size_t batches = (shots + batch - 1) / batch;
  std::vector<BatchDecodeResult> partial(batches);
  parallel_for(batches, threads, [&](size_t bi) {
    BatchDecodeResult local;
    size_t begin = bi * batch;
    size_t end = std::min(shots, begin + batch);
    std::vector<uint8_t> syndrome(prob.num_detectors);
    for (size_t s = begin; s < end; s++) {
      size_t fired = 0;
      for (uint32_t d : postselect) {
        fired += block.detector(s, d);
      }
      if (fired > allow_m) {
        continue;
      }
      local.accepted++;
      bool any = false;
      for (size_t d = 0; d < prob.num_detectors; d++) {
        syndrome[d] = block.detector(s, d);
        any |= syndrome[d] != 0;
      }
      bool failed = false;
      if (!any) {
        // Trivial syndrome: predict no flips.
        for (size_t o = 0; o < prob.num_observables; o++) {
          if (block.observable(s, o)) {
            failed = true;
          }
        }
      } else {
        DecodeOutcome out;
        try {
          out = decode(prob, syndrome, osd_order);
        } catch (const std::domain_error &) {
          // Inconsistent syndrome: count as failure.
          local.failures++;
          continue;
        }
        for (size_t o = 0; o < prob.num_observables; o++) {
          if (out.observable_flips[o] != (block.observable(s, o) ? 1 : 0)) {
            failed = true;
          }
        }
      }
      if (failed) {
        local.failures++;
      }
    }
    partial[bi] = local;
  });
  BatchDecodeResult total;
  for (const auto &p : partial) {
    total.accepted += p.accepted;
    total.failures += p.failures;
  }
  return total;
}

/// Noisy state-preparation benchmark: acceptance rate under the policy's
/// detector budget, then BP+OSD decoding of accepted shots over the whole
/// circuit including the destructive readout.
inline ExperimentPoint prep_experiment(const CsdCode &csd, const PrepPolicy &policy,
                                       const NoiseModel &model, size_t shots, uint64_t seed,
                                       size_t osd_order = 4, size_t threads = 1) {
  PrepCircuit prep = build_state_prep(csd, policy);
  Circuit noisy = annotate(prep.circuit, model);
  DetectorErrorModel dem = extract_dem(noisy, threads);
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  SampleBlock block = sample(dem, shots, seed);

  BatchDecodeResult res =
      decode_block(prob, block, prep.prep_detectors, policy.allow_m, osd_order, threads);

  ExperimentPoint pt;
  pt.p = model.p;
  pt.shots = shots;
  pt.accepted = res.accepted;
  pt.failures = res.failures;
  pt.acceptance = shots ? double(res.accepted) / double(shots) : 0;
  pt.p_l = res.accepted ? double(res.failures) / double(res.accepted) : 0;
  pt.eps = eps_l(pt.p_l, csd.css.k());
  pt.eps_std = eps_l_stddev(pt.p_l, res.accepted, csd.css.k());
  pt.p_l_ucb95 = wilson_upper(res.failures, res.accepted);
  return pt;
}

/// Steane-QEC memory benchmark per the noise abstraction: noiseless data
/// prep, d rounds of noisy extraction with proxy-noise ancilla blocks,
/// noiseless destructive readout, BP+OSD over the full syndrome volume.
inline ExperimentPoint memory_experiment(const CsdCode &csd, size_t rounds,
                                         const NoiseModel &model, const PrepNoiseProxy &proxy,
                                         size_t shots, uint64_t seed, size_t osd_order = 4,
                                         size_t threads = 1) {
  MemoryCircuit mem = build_memory_circuit(csd, rounds, proxy);
  Circuit noisy = annotate(mem.circuit, model);
  DetectorErrorModel dem = extract_dem(noisy, threads);
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  SampleBlock block = sample(dem, shots, seed);

  BatchDecodeResult res = decode_block(prob, block, {}, 0, osd_order, threads);

  ExperimentPoint pt;
  pt.p = model.p;
  pt.shots = shots;
  pt.accepted = res.accepted;
  pt.failures = res.failures;
  pt.acceptance = 1.0;
  pt.p_l = shots ? double(res.failures) / double(shots) : 0;
  pt.eps = eps_l(pt.p_l, csd.css.k(), rounds);
  pt.eps_std = eps_l_stddev(pt.p_l, shots, csd.css.k(), rounds);
  pt.p_l_ucb95 = wilson_upper(res.failures, shots);
  return pt;
}

/// Logical error rate of "noiseless codestate + depol(p') + noiseless
/// readout" on its own; used to tune p' against the full preparation
/// benchmark.
inline double proxy_state_eps(const CsdCode &csd, double p_prime, size_t shots,
                              uint64_t seed, size_t threads = 1) {
  size_t n = csd.css.n;
  Circuit c(n);
  detail::ideal_codestate(&c, csd, Basis::Z, 0);
  for (uint32_t q = 0; q < n; q++) {
    c.depolarize1(q, p_prime);
  }
  std::vector<uint32_t> recs(n);
  for (uint32_t q = 0; q < n; q++) {
    recs[q] = c.measure(q, Basis::Z, 0, true);
  }
  for (uint32_t b = 0; b < csd.n_blocks; b++) {
    c.detector({recs[4 * b], recs[4 * b + 1], recs[4 * b + 2], recs[4 * b + 3]});
  }
  for (size_t j = 0; j < csd.n_concat; j++) {
    BitVector row = csd.concat_z_row(j);
    std::vector<uint32_t> sel;
    for (uint32_t q = 0; q < n; q++) {
      if (row.get(q)) {
        sel.push_back(recs[q]);
      }
    }
    c.detector(sel);
  }
  for (size_t l = 0; l < csd.css.logical_z.size(); l++) {
    std::vector<uint32_t> sel;
    for (uint32_t q = 0; q < n; q++) {
      if (csd.css.logical_z[l].zbit(q)) {
        sel.push_back(recs[q]);
      }
    }
    c.observable(uint32_t(l), sel);
  }
  DetectorErrorModel dem = extract_dem(c, threads);
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  SampleBlock block = sample(dem, shots, seed);
  BatchDecodeResult res = decode_block(prob, block, {}, 0, 6, threads);
  double p_l = shots ? double(res.failures) / double(shots) : 0;
  return eps_l(p_l, csd.css.k());
}

/// Bisects p' so the proxy codestate's decoded eps_L matches the target
/// (the full preparation benchmark's eps_L at the tuning point).
inline double tune_p_prime(const CsdCode &csd, double target_eps, size_t shots,
                           uint64_t seed, size_t threads = 1, double tolerance = 0.2) {
  if (target_eps <= 0) {
    return 0;
  }
  double lo = 1e-6, hi = 0.2;
  double best = std::sqrt(lo * hi);
  for (int iter = 0; iter < 18; iter++) {
    double mid = std::sqrt(lo * hi);
    best = mid;
    double got = proxy_state_eps(csd, mid, shots, seed + iter, threads);
    if (got > target_eps) {
      hi = mid;
    } else {
      lo = mid;
    }
    if (got > 0 && std::fabs(got - target_eps) <= tolerance * target_eps) {
      break;
    }
  }
  return best;
}

}  // namespace csd

#endif
