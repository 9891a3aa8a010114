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

#ifndef CSD_DECODER_HPP
#define CSD_DECODER_HPP

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "csd/bits.hpp"
#include "csd/dem.hpp"

namespace csd {

/// Syndrome decoding problem: sparse check matrix (detectors x mechanisms),
/// per-mechanism priors, and the observable matrix.
struct DecodingProblem {
  size_t num_detectors = 0;
  size_t num_observables = 0;
  std::vector<double> prior;                      // per mechanism, in (0, 0.5]
  std::vector<std::vector<uint32_t>> mech_dets;   // mechanism -> detector ids
  std::vector<std::vector<uint32_t>> det_mechs;   // detector -> mechanism ids
  std::vector<std::vector<uint32_t>> mech_obs;    // mechanism -> observable ids

  size_t num_mechanisms() const { return prior.size(); }

  static DecodingProblem from_dem(const DetectorErrorModel &dem) {
    DecodingProblem p;
    p.num_detectors = dem.num_detectors;
    p.num_observables = dem.num_observables;
    p.det_mechs.resize(dem.num_detectors);
    for (size_t m = 0; m < dem.mechanisms.size(); m++) {
      const Mechanism &mech = dem.mechanisms[m];
      p.prior.push_back(std::min(mech.p, 0.5));
      p.mech_dets.push_back(mech.detectors);
      p.mech_obs.push_back(mech.observables);
      for (uint32_t d : mech.detectors) {
        p.det_mechs[d].push_back(uint32_t(m));
      }
    }
    return p;
  }

  /// Observable flips implied by a mechanism set.
  std::vector<uint8_t> observable_flips(const std::vector<uint8_t> &estimate) const {
    std::vector<uint8_t> out(num_observables, 0);
    for (size_t m = 0; m < estimate.size(); m++) {
      if (estimate[m]) {
        for (uint32_t o : mech_obs[m]) {
          out[o] ^= 1;
        }
      }
    }
    return out;
  }

  /// Detector syndrome implied by a mechanism set.
  std::vector<uint8_t> syndrome_of(const std::vector<uint8_t> &estimate) const {
    std::vector<uint8_t> out(num_detectors, 0);
    for (size_t m = 0; m < estimate.size(); m++) {
      if (estimate[m]) {
        for (uint32_t d : mech_dets[m]) {
          out[d] ^= 1;
        }
      }
    }
    return out;
  }

  /// Log-likelihood weight of an estimate: sum of log((1-p)/p) over set bits.
  double weight_of(const std::vector<uint8_t> &estimate) const {
    double w = 0;
    for (size_t m = 0; m < estimate.size(); m++) {
      if (estimate[m]) {
        w += std::log((1 - prior[m]) / prior[m]);
      }
    }
    return w;
  }
};

struct BpResult {
  std::vector<double> posterior_llr;  // positive favors "no error"
  std::vector<uint8_t> hard;
  bool converged = false;
};

/// Min-sum belief propagation with a serial (check-by-check) schedule and a
/// 0.625 normalization factor; converged when the hard estimate reproduces
/// the syndrome.
inline BpResult bp(const DecodingProblem &prob, const std::vector<uint8_t> &syndrome,
                   size_t max_iters = 30) {
  if (syndrome.size() != prob.num_detectors) {
    throw std::invalid_argument("syndrome length mismatch");
  }
  const double alpha = 0.625;
  size_t n = prob.num_mechanisms();

  BpResult res;
  res.posterior_llr.assign(n, 0.0);
  res.hard.assign(n, 0);

  std::vector<double> prior_llr(n);
  for (size_t m = 0; m < n; m++) {
    prior_llr[m] = std::log((1 - prob.prior[m]) / prob.prior[m]);
  }
  // Messages check -> mechanism, stored per (detector, slot).
  std::vector<std::vector<double>> msg(prob.num_detectors);
  for (size_t d = 0; d < prob.num_detectors; d++) {
    msg[d].assign(prob.det_mechs[d].size(), 0.0);
  }
  std::vector<double> marginal = prior_llr;

  auto hard_matches = [&]() {
    for (size_t m = 0; m < n; m++) {
      res.hard[m] = marginal[m] < 0;
    }
    return prob.syndrome_of(res.hard) == syndrome;
  };

  if (hard_matches()) {
    res.posterior_llr = marginal;
    res.converged = true;
    return res;
  }

  for (size_t iter = 0; iter < max_iters; iter++) {
    for (size_t d = 0; d < prob.num_detectors; d++) {
      const auto &mechs = prob.det_mechs[d];
      if (mechs.empty()) {
        continue;
      }
      // Incoming extrinsic values.
      double min1 = 1e300, min2 = 1e300;
      size_t argmin = 0;
      int sign = syndrome[d] ? -1 : 1;
      std::vector<double> in(mechs.size());
      for (size_t s = 0; s < mechs.size(); s++) {
        double v = marginal[mechs[s]] - msg[d][s];
        in[s] = v;
        double av = std::fabs(v);
        if (av < min1) {
          min2 = min1;
          min1 = av;
          argmin = s;
        } else if (av < min2) {
          min2 = av;
        }
        if (v < 0) {
          sign = -sign;
        }
      }
      for (size_t s = 0; s < mechs.size(); s++) {
        double mag = s == argmin ? min2 : min1;
        int s_sign = sign;
        if (in[s] < 0) {
          s_sign = -s_sign;
        }
        double nm = alpha * s_sign * mag;
        marginal[mechs[s]] += nm - msg[d][s];
        msg[d][s] = nm;
      }
    }
    if (hard_matches()) {
      res.posterior_llr = marginal;
      res.converged = true;
      return res;
    }
  }
  res.posterior_llr = marginal;
  res.converged = false;
  return res;
}

/// Ordered-statistics post-processing: columns sorted by error likelihood,
/// an information set solved exactly, then an order-lambda exhaustive sweep
/// over the least reliable columns. The result always satisfies H e = s.
/// lambda = SIZE_MAX enumerates the whole non-pivot space (exact maximum
/// likelihood on small problems).
inline std::vector<uint8_t> osd(const DecodingProblem &prob,
                                const std::vector<uint8_t> &syndrome,
                                const std::vector<double> &posterior_llr,
                                size_t lambda = 0) {
  size_t n = prob.num_mechanisms();
  size_t rows = prob.num_detectors;

  // Reliability order: most-likely-error first (small LLR first); ties by
  // column index.
  std::vector<uint32_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](uint32_t a, uint32_t b) {
    return posterior_llr[a] < posterior_llr[b];
  });

  // Gaussian elimination over the permuted columns on (H | s).
  BitMatrix aug(rows, n + 1);
  for (uint32_t m = 0; m < n; m++) {
    for (uint32_t d : prob.mech_dets[order[m]]) {
      aug.set(d, m, true);
    }
  }
  for (size_t d = 0; d < rows; d++) {
    aug.set(d, n, syndrome[d]);
  }
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t col = 0; col < n && r < rows; col++) {
    size_t piv = r;
    while (piv < rows && !aug.get(piv, col)) {
      piv++;
    }
    if (piv == rows) {
      continue;
    }
    aug.swap_rows(r, piv);
    for (size_t i = 0; i < rows; i++) {
      if (i != r && aug.get(i, col)) {
        aug.row_xor(i, r);
      }
    }
    pivot_col.push_back(col);
    r++;
  }
  for (size_t i = r; i < rows; i++) {
    if (aug.get(i, n)) {
      throw std::domain_error("syndrome outside the column space");
    }
  }

  std::vector<size_t> non_pivots;
  {
    std::vector<bool> is_piv(n, false);
    for (size_t c : pivot_col) {
      is_piv[c] = true;
    }
    for (size_t c = 0; c < n; c++) {
      if (!is_piv[c]) {
        non_pivots.push_back(c);
      }
    }
  }
  size_t sweep = std::min(lambda, non_pivots.size());
  // Order-lambda sweep columns: the most error-likely non-pivot columns.
  // (Columns are already in reliability order, so the first ones qualify.)
  std::vector<uint8_t> best;
  double best_weight = 0;
  std::vector<uint8_t> cand(n, 0);

  uint64_t patterns = sweep >= 63 ? ~uint64_t{0} : (uint64_t{1} << sweep);
  if (sweep >= 63) {
    throw std::invalid_argument("osd sweep too large");
  }
  for (uint64_t pat = 0; pat < patterns; pat++) {
    std::fill(cand.begin(), cand.end(), 0);
    // Set the sweep pattern on non-pivot columns.
    for (size_t b = 0; b < sweep; b++) {
      if ((pat >> b) & 1) {
        cand[non_pivots[b]] = 1;
      }
    }
    // Solve pivots: e_piv = s' + H'_T t (read from the eliminated matrix).
    for (size_t pr = 0; pr < pivot_col.size(); pr++) {
      uint8_t bit = aug.get(pr, n);
      for (size_t b = 0; b < sweep; b++) {
        if (cand[non_pivots[b]] && aug.get(pr, non_pivots[b])) {
          bit ^= 1;
        }
      }
      cand[pivot_col[pr]] = bit;
    }
    double w = 0;
    for (size_t m = 0; m < n; m++) {
      if (cand[m]) {
        w += std::log((1 - prob.prior[order[m]]) / prob.prior[order[m]]);
      }
    }
    if (best.empty() || w < best_weight) {
      best = cand;
      best_weight = w;
    }
  }

  // Un-permute.
  std::vector<uint8_t> out(n, 0);
  for (size_t m = 0; m < n; m++) {
    out[order[m]] = best[m];
  }
  return out;
}

struct DecodeOutcome {
  std::vector<uint8_t> estimate;        // per-mechanism indicator
  std::vector<uint8_t> observable_flips;
  bool converged = false;
  bool postselected = false;
};

/// Full BP+OSD pass: the BP hard estimate when it reproduces the syndrome,
/// otherwise OSD on the BP posteriors.
inline DecodeOutcome decode(const DecodingProblem &prob, const std::vector<uint8_t> &syndrome,
                            size_t osd_order = 4, size_t bp_iters = 30) {
  DecodeOutcome out;
  BpResult b = bp(prob, syndrome, bp_iters);
  out.converged = b.converged;
  if (b.converged) {
    out.estimate = b.hard;
  } else {
    out.estimate = osd(prob, syndrome, b.posterior_llr, osd_order);
  }
  out.observable_flips = prob.observable_flips(out.estimate);
  return out;
}

/// Concatenation-aware prior update: boosts mechanisms touching blocks whose
/// C4 syndrome fired, clamped into (0, 0.5].
inline std::vector<double> prior_update(const DecodingProblem &prob,
                                        const std::vector<uint8_t> &block_triggered,
                                        const std::vector<std::vector<uint32_t>> &mech_blocks,
                                        double boost = 8.0) {
  std::vector<double> out = prob.prior;
  for (size_t m = 0; m < prob.num_mechanisms(); m++) {
    bool touches = false;
    for (uint32_t b : mech_blocks[m]) {
      if (b < block_triggered.size() && block_triggered[b]) {
        touches = true;
        break;
      }
    }
    if (touches) {
      out[m] = std::min(0.5, out[m] * boost);
    }
  }
  return out;
}

/// Heavy-error postselection: discard when at least floor((d-1)/2) + 1 blocks
/// report a fired C4 syndrome.
inline bool heavy_postselect(const std::vector<uint8_t> &block_triggered, size_t d) {
  size_t fired = 0;
  for (uint8_t b : block_triggered) {
    fired += b;
  }
  return fired >= (d - 1) / 2 + 1;
}

}  // namespace csd

#endif
