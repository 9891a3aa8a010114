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

#ifndef CSD_DEM_HPP
#define CSD_DEM_HPP

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "csd/frame.hpp"
#include "csd/parallel.hpp"
#include "csd/rng.hpp"

namespace csd {

struct Mechanism {
  double p = 0.0;
  std::vector<uint32_t> detectors;
  std::vector<uint32_t> observables;
};

/// Independent fault mechanisms with their symptom sets.
struct DetectorErrorModel {
  size_t num_detectors = 0;
  size_t num_observables = 0;
  std::vector<Mechanism> mechanisms;

  double total_error_mass() const {
    double m = 0;
    for (const auto &mech : mechanisms) {
      m += mech.p;
    }
    return m;
  }
};

/// Splits every channel into elementary Pauli faults, propagates each one,
/// and merges mechanisms with identical symptom sets
/// (p = p1(1-p2) + p2(1-p1)). Faults with empty symptoms are dropped.
inline DetectorErrorModel extract_dem(const Circuit &c, size_t threads = 1) {
  DetectorErrorModel dem;
  dem.num_detectors = c.num_detectors;
  dem.num_observables = c.num_observables;

  std::vector<ElementaryFault> faults = enumerate_faults(c);
  std::vector<std::pair<std::vector<uint32_t>, double>> outcomes(faults.size());
  parallel_for(faults.size(), threads, [&](size_t i) {
    FrameOutcome fo = propagate_fault(c, faults[i]);
    // Key: detector ids then observable ids offset past detectors.
    std::vector<uint32_t> key = fo.flipped_detectors;
    std::sort(key.begin(), key.end());
    std::vector<uint32_t> obs = fo.flipped_observables;
    std::sort(obs.begin(), obs.end());
    for (uint32_t o : obs) {
      key.push_back(uint32_t(c.num_detectors) + o);
    }
    outcomes[i] = {std::move(key), faults[i].probability};
  });

  std::map<std::vector<uint32_t>, double> merged;
  for (auto &[key, p] : outcomes) {
    if (key.empty()) {
      continue;
    }
    auto [it, fresh] = merged.emplace(key, 0.0);
    it->second = it->second * (1 - p) + p * (1 - it->second);
  }
  for (auto &[key, p] : merged) {
    Mechanism mech;
    mech.p = p;
    for (uint32_t v : key) {
      if (v < c.num_detectors) {
        mech.detectors.push_back(v);
      } else {
        mech.observables.push_back(v - uint32_t(c.num_detectors));
      }
    }
    dem.mechanisms.push_back(std::move(mech));
  }
  return dem;
}

// ---------------------------------------------------------------------------
// Text format: one mechanism per line, `error(p) D3 D17 L0`.
// ---------------------------------------------------------------------------

inline std::string dem_to_text(const DetectorErrorModel &dem) {
  std::ostringstream out;
  out << "dem detectors " << dem.num_detectors << " observables " << dem.num_observables
      << "\n";
  char buf[40];
  for (const auto &m : dem.mechanisms) {
    std::snprintf(buf, sizeof(buf), "%.17g", m.p);
    out << "error(" << buf << ")";
    for (uint32_t d : m.detectors) {
      out << " D" << d;
    }
    for (uint32_t o : m.observables) {
      out << " L" << o;
    }
    out << "\n";
  }
  return out.str();
}

inline DetectorErrorModel dem_from_text(const std::string &text) {
  DetectorErrorModel dem;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') {
      continue;
    }
    std::istringstream ls(line);
    std::string tok;
    ls >> tok;
    if (tok == "dem") {
      std::string kw;
      ls >> kw >> dem.num_detectors >> kw >> dem.num_observables;
      continue;
    }
    if (tok.rfind("error(", 0) != 0) {
      throw std::invalid_argument("bad dem line: " + line);
    }
    Mechanism m;
    m.p = std::stod(tok.substr(6, tok.size() - 7));
    while (ls >> tok) {
      if (tok[0] == 'D') {
        m.detectors.push_back(uint32_t(std::stoul(tok.substr(1))));
      } else if (tok[0] == 'L') {
        m.observables.push_back(uint32_t(std::stoul(tok.substr(1))));
      }
    }
    dem.mechanisms.push_back(std::move(m));
  }
  return dem;
}

/// Bit-packed sample block: per shot, detector bits then observable bits.
class SampleBlock {
 public:
  SampleBlock(size_t shots, size_t num_detectors, size_t num_observables)
      : shots_(shots),
        num_detectors_(num_detectors),
        num_observables_(num_observables),
        words_per_shot_((num_detectors + num_observables + 63) / 64),
        bits_(shots * words_per_shot_, 0) {}

  size_t shots() const { return shots_; }
  size_t num_detectors() const { return num_detectors_; }
  size_t num_observables() const { return num_observables_; }

  bool detector(size_t shot, size_t d) const { return get(shot, d); }
  bool observable(size_t shot, size_t o) const { return get(shot, num_detectors_ + o); }
  void flip_detector(size_t shot, size_t d) { flip(shot, d); }
  void flip_observable(size_t shot, size_t o) { flip(shot, num_detectors_ + o); }

  const uint64_t *shot_words(size_t shot) const { return &bits_[shot * words_per_shot_]; }

  /// Detector ids set in one shot.
  std::vector<uint32_t> detector_list(size_t shot) const {
    std::vector<uint32_t> out;
    for (size_t d = 0; d < num_detectors_; d++) {
      if (detector(shot, d)) {
        out.push_back(uint32_t(d));
      }
    }
    return out;
  }

 private:
  bool get(size_t shot, size_t bit) const {
    return (bits_[shot * words_per_shot_ + (bit >> 6)] >> (bit & 63)) & 1;
  }
  void flip(size_t shot, size_t bit) {
    bits_[shot * words_per_shot_ + (bit >> 6)] ^= uint64_t{1} << (bit & 63);
  }

  size_t shots_, num_detectors_, num_observables_, words_per_shot_;
  std::vector<uint64_t> bits_;
};

/// Monte Carlo sampling of a DEM: each mechanism fires independently with its
/// probability; symptoms accumulate by XOR. Geometric skipping makes the cost
/// proportional to the number of fired mechanisms.
inline SampleBlock sample(const DetectorErrorModel &dem, size_t shots, uint64_t seed) {
  SampleBlock block(shots, dem.num_detectors, dem.num_observables);
  for (size_t m = 0; m < dem.mechanisms.size(); m++) {
    const Mechanism &mech = dem.mechanisms[m];
    Rng rng(seed, m);
    uint64_t shot = rng.geometric_skip(mech.p);
    while (shot < shots) {
      for (uint32_t d : mech.detectors) {
        block.flip_detector(shot, d);
      }
      for (uint32_t o : mech.observables) {
        block.flip_observable(shot, o);
      }
      shot += 1 + rng.geometric_skip(mech.p);
    }
  }
  return block;
}

}  // namespace csd

#endif
