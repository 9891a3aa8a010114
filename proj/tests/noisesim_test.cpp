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

#include <gtest/gtest.h>

#include "csd/builders.hpp"
#include "csd/dem.hpp"
#include "csd/noise.hpp"
#include "csd/tableau_sim.hpp"

namespace csd {
namespace {

TEST(Tableau, MeasureC4StabilizersOnEncodedState) {
  // Reset |0000>, project XXXX with a forced +1 outcome: both C4 generators
  // then read +1 deterministically.
  Tableau tab(4);
  Rng rng(1, 1);
  PauliOperator xxxx = PauliOperator::from_string("XXXX");
  PauliOperator zzzz = PauliOperator::from_string("ZZZZ");
  auto [o1, r1] = tab.measure_pauli(xxxx, &rng, 0);
  EXPECT_TRUE(r1);
  EXPECT_EQ(o1, 0);
  auto [o2, r2] = tab.measure_pauli(xxxx, &rng);
  EXPECT_FALSE(r2);
  EXPECT_EQ(o2, 0);
  auto [o3, r3] = tab.measure_pauli(zzzz, &rng);
  EXPECT_FALSE(r3);
  EXPECT_EQ(o3, 0);
}

TEST(Tableau, InjectedXFlipsZCheck) {
  Tableau tab(2);
  Rng rng(2, 2);
  tab.apply_pauli(PauliOperator::from_string("XI"));
  auto [o, random] = tab.measure(0, Basis::Z, &rng);
  EXPECT_FALSE(random);
  EXPECT_EQ(o, 1);
}

TEST(Tableau, RejectsNonHermitianMeasurement) {
  Tableau tab(2);
  Rng rng(3, 3);
  PauliOperator xz = PauliOperator::from_string("X");
  xz *= PauliOperator::from_string("Z");  // i-power 2? XZ is -iY: non-Hermitian rep
  ASSERT_FALSE(xz.is_hermitian());
  EXPECT_THROW(tab.measure_pauli(xz, &rng), std::invalid_argument);
}

TEST(Annotate, ZeroNoiseLeavesCircuitAlone) {
  Circuit c(2);
  c.gate(Gate::CX, 0, 1);
  c.tick();
  Circuit out = annotate(c, NoiseModel{0});
  EXPECT_EQ(out.instructions.size(), c.instructions.size());
}

TEST(Annotate, RuleApplication) {
  // Single CX plus a tick on 4 qubits: one 2q depol and two idle channels.
  Circuit c(4);
  for (uint32_t q = 0; q < 4; q++) {
    c.reset(q, Basis::Z);
  }
  c.tick();
  c.gate(Gate::CX, 0, 1);
  c.tick();
  for (uint32_t q = 0; q < 4; q++) {
    c.measure(q, Basis::Z);
  }
  Circuit out = annotate(c, NoiseModel{1e-3});
  size_t depol2 = 0, depol1 = 0, flips = 0;
  for (const auto &ins : out.instructions) {
    if (ins.kind == Instruction::Kind::Depol2) {
      depol2++;
      EXPECT_DOUBLE_EQ(ins.p, 1e-3);
    }
    if (ins.kind == Instruction::Kind::Depol1) {
      depol1++;
      EXPECT_DOUBLE_EQ(ins.p, 1e-4);
    }
    if (ins.kind == Instruction::Kind::Measure) {
      EXPECT_DOUBLE_EQ(ins.p, 1e-3);
      flips++;
    }
  }
  EXPECT_EQ(depol2, 1u);
  EXPECT_EQ(depol1, 2u);  // qubits 2,3 idle during the CX segment
  EXPECT_EQ(flips, 4u);
}

TEST(Annotate, NoNoiseMeasurementKeepsExplicitFlip) {
  Circuit c(1);
  c.reset(0, Basis::Z, true);
  c.measure(0, Basis::Z, 0.25, true);
  Circuit out = annotate(c, NoiseModel{1e-3});
  for (const auto &ins : out.instructions) {
    if (ins.kind == Instruction::Kind::Measure) {
      EXPECT_DOUBLE_EQ(ins.p, 0.25);
    }
  }
}

TEST(ExtractDem, NoiselessCircuitGivesEmptyDem) {
  Circuit c(2);
  c.reset(0, Basis::Z);
  uint32_t r = c.measure(0, Basis::Z);
  c.detector({r});
  DetectorErrorModel dem = extract_dem(c);
  EXPECT_TRUE(dem.mechanisms.empty());
}

TEST(ExtractDem, MeasurementFlipHitsAdjacentDetectors) {
  // Twice-measured check: a flip on the middle measurement hits exactly the
  // two detectors comparing it with its neighbors.
  Circuit c(1);
  c.reset(0, Basis::Z);
  uint32_t r1 = c.measure(0, Basis::Z, 0.01);
  uint32_t r2 = c.measure(0, Basis::Z, 0.01);
  uint32_t r3 = c.measure(0, Basis::Z, 0.01);
  c.detector({r1, r2});
  c.detector({r2, r3});
  DetectorErrorModel dem = extract_dem(c);
  ASSERT_EQ(dem.mechanisms.size(), 3u);
  bool found_double = false;
  for (const auto &m : dem.mechanisms) {
    if (m.detectors.size() == 2) {
      found_double = true;
      EXPECT_EQ(m.detectors[0], 0u);
      EXPECT_EQ(m.detectors[1], 1u);
    }
  }
  EXPECT_TRUE(found_double);
}

TEST(ExtractDem, MergesIdenticalSymptoms) {
  // Two depolarizing sites whose X components produce the same symptom.
  Circuit c(1);
  c.reset(0, Basis::Z);
  c.depolarize1(0, 0.3);
  c.depolarize1(0, 0.3);
  uint32_t r = c.measure(0, Basis::Z);
  c.detector({r});
  DetectorErrorModel dem = extract_dem(c);
  ASSERT_EQ(dem.mechanisms.size(), 1u);
  // Four merged p=0.1 components (X and Y of both sites):
  // 1 - 2P = (1 - 0.2)^4.
  double p = (1 - std::pow(0.8, 4)) / 2;
  EXPECT_NEAR(dem.mechanisms[0].p, p, 1e-12);
}

TEST(Sample, ZeroProbabilityGivesZeroSamples) {
  DetectorErrorModel dem;
  dem.num_detectors = 2;
  dem.mechanisms.push_back({0.0, {0}, {}});
  SampleBlock b = sample(dem, 1000, 3);
  for (size_t s = 0; s < 1000; s++) {
    EXPECT_FALSE(b.detector(s, 0));
    EXPECT_FALSE(b.detector(s, 1));
  }
}

TEST(Sample, HalfProbabilityMarginal) {
  DetectorErrorModel dem;
  dem.num_detectors = 1;
  dem.mechanisms.push_back({0.5, {0}, {}});
  size_t shots = 100000;
  SampleBlock b = sample(dem, shots, 4);
  size_t cnt = 0;
  for (size_t s = 0; s < shots; s++) {
    cnt += b.detector(s, 0);
  }
  double f = double(cnt) / double(shots);
  EXPECT_NEAR(f, 0.5, 3 * std::sqrt(0.25 / shots));
}

TEST(Sample, MergedMarginalMatchesClosedForm) {
  DetectorErrorModel dem;
  dem.num_detectors = 1;
  dem.mechanisms.push_back({0.1, {0}, {}});
  dem.mechanisms.push_back({0.25, {0}, {}});
  size_t shots = 200000;
  SampleBlock b = sample(dem, shots, 5);
  size_t cnt = 0;
  for (size_t s = 0; s < shots; s++) {
    cnt += b.detector(s, 0);
  }
  double want = 0.1 * 0.75 + 0.25 * 0.9;
  double f = double(cnt) / double(shots);
  EXPECT_NEAR(f, want, 3 * std::sqrt(want * (1 - want) / shots));
}

TEST(Frame, SingleFaultSymptomsMatchTableauOracle) {
  // Exhaustive oracle equality on the one-round memory circuit.
  CsdCode csd = build_csd("c422");
  MemoryCircuit mem = build_memory_circuit(csd, 1, PrepNoiseProxy{2e-3, 1e-3});
  Circuit noisy = annotate(mem.circuit, NoiseModel{1e-3});
  Circuit zeroed = noisy;
  for (auto &ins : zeroed.instructions) {
    ins.p = 0;
  }
  auto faults = enumerate_faults(noisy);
  ASSERT_GT(faults.size(), 100u);
  for (size_t fi = 0; fi < faults.size(); fi++) {
    const auto &f = faults[fi];
    FrameOutcome fo = propagate_fault(noisy, f);
    FaultInjection inj;
    inj.after_instruction = f.after_instruction;
    if (f.record_flip) {
      inj.flip_record = zeroed.instructions[f.after_instruction].record;
    } else {
      inj.pauli = f.pauli;
    }
    CircuitSimulator sim(zeroed, 99, fi);
    SimResult r = sim.run({inj});
    std::vector<uint32_t> fired;
    for (size_t d = 0; d < r.detectors.size(); d++) {
      if (r.detectors[d]) {
        fired.push_back(uint32_t(d));
      }
    }
    std::vector<uint32_t> want = fo.flipped_detectors;
    std::sort(want.begin(), want.end());
    ASSERT_EQ(fired, want) << "fault index " << fi;
    std::vector<uint32_t> obs_fired;
    for (size_t o = 0; o < r.observables.size(); o++) {
      if (r.observables[o]) {
        obs_fired.push_back(uint32_t(o));
      }
    }
    std::vector<uint32_t> obs_want = fo.flipped_observables;
    std::sort(obs_want.begin(), obs_want.end());
    ASSERT_EQ(obs_fired, obs_want) << "fault index " << fi;
  }
}

TEST(Frame, SymptomsAreLinearOverFaults) {
  CsdCode csd = build_csd("c422");
  PrepCircuit prep = build_state_prep(csd, PrepPolicy{});
  Circuit noisy = annotate(prep.circuit, NoiseModel{1e-3});
  auto faults = enumerate_faults(noisy);
  Rng rng(31, 0);
  for (int trial = 0; trial < 25; trial++) {
    size_t i = rng.below(faults.size());
    size_t j = rng.below(faults.size());
    if (i == j) {
      continue;
    }
    auto sym = [&](const std::vector<uint32_t> &dets) {
      BitVector v(noisy.num_detectors);
      for (uint32_t d : dets) {
        v.flip(d);
      }
      return v;
    };
    FrameOutcome a = propagate_fault(noisy, faults[i]);
    FrameOutcome b = propagate_fault(noisy, faults[j]);
    // Combined run through the reference simulator.
    Circuit zeroed = noisy;
    for (auto &ins : zeroed.instructions) {
      ins.p = 0;
    }
    std::vector<FaultInjection> both;
    for (size_t f : {i, j}) {
      FaultInjection inj;
      inj.after_instruction = faults[f].after_instruction;
      if (faults[f].record_flip) {
        inj.flip_record = zeroed.instructions[faults[f].after_instruction].record;
      } else {
        inj.pauli = faults[f].pauli;
      }
      both.push_back(inj);
    }
    CircuitSimulator sim(zeroed, 17, trial);
    SimResult r = sim.run(both);
    BitVector want = sym(a.flipped_detectors) ^ sym(b.flipped_detectors);
    for (size_t d = 0; d < noisy.num_detectors; d++) {
      ASSERT_EQ(r.detectors[d] != 0, want.get(d)) << "detector " << d;
    }
  }
}

TEST(CircuitText, RoundTripsBitExact) {
  CsdCode csd = build_csd("c422");
  MemoryCircuit mem = build_memory_circuit(csd, 2, PrepNoiseProxy{1.5e-3, 1e-3});
  Circuit noisy = annotate(mem.circuit, NoiseModel{2.5e-3});
  std::string text = circuit_to_text(noisy);
  Circuit back = circuit_from_text(text);
  EXPECT_EQ(circuit_to_text(back), text);
  EXPECT_EQ(back.num_records, noisy.num_records);
  EXPECT_EQ(back.num_detectors, noisy.num_detectors);
  EXPECT_EQ(back.num_observables, noisy.num_observables);
}

TEST(DemText, RoundTrips) {
  CsdCode csd = build_csd("c422");
  PrepCircuit prep = build_state_prep(csd, PrepPolicy{});
  DetectorErrorModel dem = extract_dem(annotate(prep.circuit, NoiseModel{1e-3}));
  std::string text = dem_to_text(dem);
  DetectorErrorModel back = dem_from_text(text);
  EXPECT_EQ(dem_to_text(back), text);
  ASSERT_EQ(back.mechanisms.size(), dem.mechanisms.size());
}

}  // namespace
}  // namespace csd
