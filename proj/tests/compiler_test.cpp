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

#include "csd/compiler.hpp"

#include <gtest/gtest.h>

namespace csd {
namespace {

class CompilerFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    StabilizerCode seed = seed_library("c513");
    auto d = symplectic_double(seed);
    gens_ = new GeneratorSet();
    gens_->free_generators = g_tau_generators(seed, d.code, d.tau);
    gens_->injected.push_back({"S_0", injected_s_action(2, 0)});
    search_ = new CosetSearch(*gens_);
  }
  static void TearDownTestSuite() {
    delete gens_;
    delete search_;
  }
  static GeneratorSet *gens_;
  static CosetSearch *search_;
};
GeneratorSet *CompilerFixture::gens_ = nullptr;
CosetSearch *CompilerFixture::search_ = nullptr;

TEST_F(CompilerFixture, FreeElementNeedsNoInjection) {
  Factorization f = search_->factorize(gens_->free_generators[1]);
  EXPECT_EQ(f.injection_count, 0u);
  EXPECT_EQ(f.product(), gens_->free_generators[1]);
}

TEST_F(CompilerFixture, HistogramCoversSp4) {
  auto hist = search_->injection_histogram();
  uint64_t total = 0;
  size_t max_key = 0;
  for (auto &[k, v] : hist) {
    total += v;
    max_key = std::max(max_key, k);
  }
  EXPECT_EQ(big_count_str(sp_order(2)), std::to_string(total));
  // Exhaustive over Sp_4: every element reachable with at most 3 injections,
  // the majority with two or fewer.
  EXPECT_EQ(max_key, 3u);
  uint64_t le2 = 0;
  for (auto &[k, v] : hist) {
    if (k <= 2) {
      le2 += v;
    }
  }
  EXPECT_GT(le2 * 2, total);
}

TEST_F(CompilerFixture, CombinedInjectionsNeverWorse) {
  GeneratorSet both = *gens_;
  both.injected.push_back({"SX_0", injected_sqrtx_action(2, 0)});
  CosetSearch search2(both);
  auto h1 = search_->injection_histogram();
  auto h2 = search2.injection_histogram();
  EXPECT_LE(h2.rbegin()->first, h1.rbegin()->first);
}

TEST_F(CompilerFixture, EveryElementFactorizesExactly) {
  // Replay check over all of Sp_4, enumerated via transvections.
  std::vector<SymplecticMatrix> tv;
  for (uint32_t v = 1; v < 16; v++) {
    SymplecticMatrix m = SymplecticMatrix::identity(4);
    for (size_t i = 0; i < 4; i++) {
      uint32_t e = uint32_t{1} << i;
      if (m.form(e, v)) {
        m.set_row(i, e ^ v);
      }
    }
    tv.push_back(m);
  }
  ClosureResult sp4 = group_closure(tv, 1000);
  ASSERT_EQ(sp4.order, 720u);
  size_t checked = 0;
  for (const auto &target : sp4.elements) {
    Factorization f = search_->factorize(target);
    ASSERT_EQ(f.product(), target);
    checked++;
  }
  EXPECT_EQ(checked, 720u);
}

TEST(Compiler, NotInGroupWhenInjectionMissing) {
  StabilizerCode seed = seed_library("c513");
  auto d = symplectic_double(seed);
  GeneratorSet gens;
  gens.free_generators = g_tau_generators(seed, d.code, d.tau);
  // No injections: only the free group itself is reachable.
  CosetSearch search(gens);
  EXPECT_EQ(search.coset_count(), 1u);
  EXPECT_THROW(search.factorize(injected_s_action(2, 0)), NotInGroup);
}

TEST(Compiler, ScheduleCompressesFreeElements) {
  StabilizerCode seed = seed_library("c422");
  auto d = symplectic_double(seed);
  CsdCode csd = concatenate_c4(d.code, d.tau);

  GeneratorSet gens;
  GateRecord h = h_tau(csd);
  GateRecord s = s_tau(csd);
  gens.free_generators = {h.action, s.action};
  gens.free_records = {h, s};
  gens.injected.push_back({"S_2", injected_s_action(4, 2)});

  // Word = [h_tau]: one compressed single-qubit layer, identity relabeling.
  Factorization f;
  f.factors = {h.action};
  f.injection_labels = {-1};
  auto steps = schedule(f, gens);
  ASSERT_EQ(steps.size(), 1u);
  EXPECT_FALSE(steps[0].is_injection);
  for (uint32_t q = 0; q < 16; q++) {
    EXPECT_EQ(steps[0].relabel[q], q);
    EXPECT_TRUE(steps[0].layer[q] == Mat2::of_gate(Gate::H));
  }
  // Rebuilt circuit has the same logical action.
  CliffordCircuit rebuilt = schedule_step_circuit(steps[0], 16);
  EXPECT_EQ(logical_action(rebuilt, csd.css), h.action);
}

TEST(Compiler, ScheduleCompressionMatchesUncompressedAction) {
  StabilizerCode seed = seed_library("c422");
  auto d = symplectic_double(seed);
  CsdCode csd = concatenate_c4(d.code, d.tau);

  // A longer SWAP-transversal word: s_tau then h_tau then a lifted row.
  CliffordCircuit word(16);
  word.append(s_tau(csd).circuit);
  word.append(h_tau(csd).circuit);
  CliffordCircuit seed_word(4);
  seed_word.h(2);
  seed_word.h(3);
  seed_word.swap(2, 3);
  word.append(lift_to_csd(seed_word, csd));

  std::vector<Mat2> layer;
  std::vector<uint32_t> relabel;
  detail::compress_word(word, &layer, &relabel);
  ScheduleStep step;
  step.layer = layer;
  step.relabel = relabel;
  CliffordCircuit compressed = schedule_step_circuit(step, 16);
  EXPECT_EQ(logical_action(compressed, csd.css), logical_action(word, csd.css));
}

TEST(Compiler, EmptyFactorizationSchedulesEmpty) {
  GeneratorSet gens;
  gens.injected.push_back({"S_0", injected_s_action(2, 0)});
  Factorization f;
  f.factors = {};
  f.injection_labels = {};
  EXPECT_TRUE(schedule(f, gens).empty());
}

}  // namespace
}  // namespace csd
