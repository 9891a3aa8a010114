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

#include "csd/decoder.hpp"

#include <gtest/gtest.h>

#include "csd/rng.hpp"

namespace csd {
namespace {

DecodingProblem repetition_problem(size_t bits, double p) {
  // Repetition-code-like DEM: mechanism i flips detectors i-1 and i.
  DetectorErrorModel dem;
  dem.num_detectors = bits - 1;
  dem.num_observables = 1;
  for (size_t i = 0; i < bits; i++) {
    Mechanism m;
    m.p = p;
    if (i > 0) {
      m.detectors.push_back(uint32_t(i - 1));
    }
    if (i < bits - 1) {
      m.detectors.push_back(uint32_t(i));
    }
    if (i == 0) {
      m.observables.push_back(0);
    }
    dem.mechanisms.push_back(m);
  }
  return DecodingProblem::from_dem(dem);
}

TEST(Bp, ZeroSyndromeConvergesToZero) {
  DecodingProblem prob = repetition_problem(8, 0.05);
  std::vector<uint8_t> syndrome(prob.num_detectors, 0);
  BpResult r = bp(prob, syndrome);
  EXPECT_TRUE(r.converged);
  for (uint8_t b : r.hard) {
    EXPECT_EQ(b, 0);
  }
}

TEST(Bp, UniqueSymptomMechanismRecovered) {
  DetectorErrorModel dem;
  dem.num_detectors = 3;
  dem.mechanisms.push_back({0.01, {0}, {}});
  dem.mechanisms.push_back({0.01, {1}, {}});
  dem.mechanisms.push_back({0.01, {0, 1, 2}, {}});
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  BpResult r = bp(prob, {0, 1, 0});
  EXPECT_TRUE(r.converged);
  EXPECT_EQ(r.hard, (std::vector<uint8_t>{0, 1, 0}));
}

TEST(Bp, TwoFlipsMatchBruteForceMinimum) {
  DecodingProblem prob = repetition_problem(12, 0.02);
  // Errors at positions 3 and 7 -> syndrome flips at {2,3} and {6,7}.
  std::vector<uint8_t> truth(12, 0);
  truth[3] = truth[7] = 1;
  std::vector<uint8_t> syndrome = prob.syndrome_of(truth);
  BpResult r = bp(prob, syndrome);
  std::vector<uint8_t> est = r.converged ? r.hard : osd(prob, syndrome, r.posterior_llr, 8);
  // Brute force minimum-weight solution.
  std::vector<uint8_t> best;
  for (uint32_t mask = 0; mask < (1u << 12); mask++) {
    std::vector<uint8_t> cand(12);
    for (int i = 0; i < 12; i++) {
      cand[i] = (mask >> i) & 1;
    }
    if (prob.syndrome_of(cand) != syndrome) {
      continue;
    }
    if (best.empty() || prob.weight_of(cand) < prob.weight_of(best)) {
      best = cand;
    }
  }
  EXPECT_EQ(prob.weight_of(est), prob.weight_of(best));
}

TEST(Osd, OrderZeroSolvesFromMostReliableSet) {
  DetectorErrorModel dem;
  dem.num_detectors = 2;
  dem.mechanisms.push_back({0.2, {0}, {}});
  dem.mechanisms.push_back({0.01, {0, 1}, {}});
  dem.mechanisms.push_back({0.2, {1}, {}});
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  std::vector<uint8_t> syndrome{1, 1};
  BpResult r = bp(prob, syndrome);
  std::vector<uint8_t> est = osd(prob, syndrome, r.posterior_llr, 0);
  EXPECT_EQ(prob.syndrome_of(est), syndrome);
  // The two independent p=0.2 mechanisms beat the p=0.01 joint one.
  EXPECT_EQ(est, (std::vector<uint8_t>{1, 0, 1}));
}

TEST(Osd, HigherOrderNeverWorse) {
  Rng rng(404, 0);
  for (int trial = 0; trial < 30; trial++) {
    DetectorErrorModel dem;
    dem.num_detectors = 8;
    for (int m = 0; m < 16; m++) {
      Mechanism mech;
      mech.p = 0.01 + 0.3 * rng.uniform();
      size_t deg = 1 + rng.below(3);
      std::set<uint32_t> dets;
      while (dets.size() < deg) {
        dets.insert(uint32_t(rng.below(8)));
      }
      mech.detectors.assign(dets.begin(), dets.end());
      dem.mechanisms.push_back(mech);
    }
    DecodingProblem prob = DecodingProblem::from_dem(dem);
    std::vector<uint8_t> truth(16, 0);
    for (int i = 0; i < 3; i++) {
      truth[rng.below(16)] = 1;
    }
    std::vector<uint8_t> syndrome = prob.syndrome_of(truth);
    BpResult r = bp(prob, syndrome);
    auto e0 = osd(prob, syndrome, r.posterior_llr, 0);
    auto e10 = osd(prob, syndrome, r.posterior_llr, 10);
    EXPECT_EQ(prob.syndrome_of(e0), syndrome);
    EXPECT_EQ(prob.syndrome_of(e10), syndrome);
    EXPECT_LE(prob.weight_of(e10), prob.weight_of(e0) + 1e-9);
  }
}

TEST(Osd, FullSweepEqualsExhaustiveMaximumLikelihood) {
  Rng rng(777, 1);
  for (int trial = 0; trial < 25; trial++) {
    DetectorErrorModel dem;
    dem.num_detectors = 7;
    size_t mechs = 14;
    for (size_t m = 0; m < mechs; m++) {
      Mechanism mech;
      mech.p = 0.02 + 0.4 * rng.uniform();
      size_t deg = 1 + rng.below(3);
      std::set<uint32_t> dets;
      while (dets.size() < deg) {
        dets.insert(uint32_t(rng.below(7)));
      }
      mech.detectors.assign(dets.begin(), dets.end());
      dem.mechanisms.push_back(mech);
    }
    DecodingProblem prob = DecodingProblem::from_dem(dem);
    std::vector<uint8_t> truth(mechs, 0);
    truth[rng.below(mechs)] = 1;
    truth[rng.below(mechs)] = 1;
    std::vector<uint8_t> syndrome = prob.syndrome_of(truth);
    BpResult r = bp(prob, syndrome);
    std::vector<uint8_t> est = osd(prob, syndrome, r.posterior_llr, 60);
    double best = 1e18;
    for (uint32_t mask = 0; mask < (1u << mechs); mask++) {
      std::vector<uint8_t> cand(mechs);
      for (size_t i = 0; i < mechs; i++) {
        cand[i] = (mask >> i) & 1;
      }
      if (prob.syndrome_of(cand) != syndrome) {
        continue;
      }
      best = std::min(best, prob.weight_of(cand));
    }
    EXPECT_NEAR(prob.weight_of(est), best, 1e-9);
  }
}

TEST(Osd, InconsistentSyndromeThrows) {
  DetectorErrorModel dem;
  dem.num_detectors = 2;
  dem.mechanisms.push_back({0.1, {0}, {}});
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  BpResult r = bp(prob, {0, 1});
  EXPECT_THROW(osd(prob, {0, 1}, r.posterior_llr, 0), std::domain_error);
}

TEST(PriorUpdate, OnlyTouchedBlocksBoosted) {
  DetectorErrorModel dem;
  dem.num_detectors = 2;
  dem.mechanisms.push_back({0.01, {0}, {}});
  dem.mechanisms.push_back({0.01, {1}, {}});
  DecodingProblem prob = DecodingProblem::from_dem(dem);
  std::vector<std::vector<uint32_t>> mech_blocks{{0}, {1}};
  std::vector<uint8_t> triggered{1, 0};
  auto updated = prior_update(prob, triggered, mech_blocks, 10.0);
  EXPECT_NEAR(updated[0], 0.1, 1e-12);
  EXPECT_NEAR(updated[1], 0.01, 1e-12);

  std::vector<uint8_t> none{0, 0};
  auto same = prior_update(prob, none, mech_blocks, 10.0);
  EXPECT_EQ(same, prob.prior);
}

TEST(HeavyPostselect, ThresholdFormula) {
  // d=4: floor(3/2)+1 = 2 triggered blocks discard.
  EXPECT_TRUE(heavy_postselect({1, 1, 0, 0}, 4));
  EXPECT_FALSE(heavy_postselect({1, 0, 0, 0}, 4));
  EXPECT_FALSE(heavy_postselect({0, 0, 0, 0}, 4));
  // d=6: threshold 3.
  EXPECT_FALSE(heavy_postselect({1, 1, 0, 0, 0}, 6));
  EXPECT_TRUE(heavy_postselect({1, 1, 1, 0, 0}, 6));
}

TEST(Decode, DeterministicGivenInputs) {
  DecodingProblem prob = repetition_problem(10, 0.03);
  std::vector<uint8_t> truth(10, 0);
  truth[2] = truth[5] = 1;
  std::vector<uint8_t> syndrome = prob.syndrome_of(truth);
  DecodeOutcome a = decode(prob, syndrome, 4);
  DecodeOutcome b = decode(prob, syndrome, 4);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(prob.syndrome_of(a.estimate), syndrome);
}

}  // namespace
}  // namespace csd
