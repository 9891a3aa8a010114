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

#ifndef CSD_DISTANCE_HPP
#define CSD_DISTANCE_HPP

#include <cstdint>
#include <mutex>
#include <vector>

#include "csd/parallel.hpp"
#include "csd/rng.hpp"
#include "csd/stabilizer_code.hpp"

namespace csd {

struct DistanceResult {
  size_t d_est = 0;
  PauliOperator witness;
};

namespace detail {

/// Information-set probing for one CSS sector: minimum weight vector in
/// ker(h_other) that lies outside rowspace(h_same).
inline void probe_sector(const BitMatrix &h_same, const BitMatrix &h_other, size_t n,
                         size_t trials, uint64_t seed, uint64_t sector_stream,
                         size_t *best_weight, BitVector *best_vec, size_t threads) {
  BitMatrix gen = kernel(h_other);
  if (gen.rows() == 0) {
    return;
  }
  RowSpace stab(n);
  for (size_t r = 0; r < h_same.rows(); r++) {
    stab.insert(h_same.row(r));
  }

  std::mutex best_mutex;
  size_t batch = 16;
  size_t batches = (trials + batch - 1) / batch;
  parallel_for(batches, threads, [&](size_t b) {
    Rng rng(seed, sector_stream * 1000003 + b);
    size_t local_best = ~size_t{0};
    BitVector local_vec;
    std::vector<uint32_t> perm(n);
    size_t todo = std::min(batch, trials - b * batch);
    for (size_t t = 0; t < todo; t++) {
      for (size_t i = 0; i < n; i++) {
        perm[i] = uint32_t(i);
      }
      // Trial 0 of batch 0 probes the unpermuted basis.
      if (b + t > 0) {
        rng.shuffle(perm.data(), n);
      }
      BitMatrix g(gen.rows(), n);
      for (size_t r = 0; r < gen.rows(); r++) {
        for (size_t c = 0; c < n; c++) {
          if (gen.get(r, c)) {
            g.set(r, perm[c], true);
          }
        }
      }
      RrefResult rr = rref(g);
      for (size_t r = 0; r < rr.rank; r++) {
        BitVector permuted = rr.r.row(r);
        size_t w = permuted.weight();
        if (w >= local_best) {
          continue;
        }
        BitVector v(n);
        for (size_t c = 0; c < n; c++) {
          if (permuted.get(perm[c])) {
            v.set(c, true);
          }
        }
        if (!stab.contains(v)) {
          local_best = w;
          local_vec = v;
        }
      }
    }
    std::lock_guard<std::mutex> lock(best_mutex);
    if (local_best < *best_weight) {
      *best_weight = local_best;
      *best_vec = local_vec;
    }
  });
}

}  // namespace detail

/// Random information-set upper bound on the minimum distance. For the codes
/// tabulated here 1000 trials recover the true distance.
inline DistanceResult estimate_distance(const CssCode &code, size_t trials, uint64_t seed,
                                        size_t threads = 1) {
  if (trials < 1) {
    throw std::invalid_argument("trials must be >= 1");
  }
  size_t best_x = ~size_t{0};
  size_t best_z = ~size_t{0};
  BitVector vec_x, vec_z;
  detail::probe_sector(code.hx, code.hz, code.n, trials, seed, 1, &best_x, &vec_x, threads);
  detail::probe_sector(code.hz, code.hx, code.n, trials, seed, 2, &best_z, &vec_z, threads);

  DistanceResult out;
  if (best_x <= best_z) {
    out.d_est = best_x;
    out.witness = PauliOperator(vec_x, BitVector(code.n));
  } else {
    out.d_est = best_z;
    out.witness = PauliOperator(BitVector(code.n), vec_z);
  }
  return out;
}

}  // namespace csd

#endif
