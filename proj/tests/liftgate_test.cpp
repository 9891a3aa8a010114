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

#include "csd/liftgate.hpp"

#include <gtest/gtest.h>

namespace csd {
namespace {

// Table rows for the [[4,2,2]] -> [[8,4,2]] -> [[16,4,4]] pipeline: the seed
// word, the printed physical word on the double, and the printed physical
// word on the concatenated code (all 0-indexed here).
struct TableRow {
  const char *name;
  CliffordCircuit seed;
  CliffordCircuit on_double;
  CliffordCircuit on_csd;
};

CliffordCircuit seed_row1() {
  CliffordCircuit c(4);
  c.h(2);
  c.h(3);
  c.swap(2, 3);
  return c;
}
CliffordCircuit seed_row2() {
  CliffordCircuit c(4);
  for (uint32_t q = 0; q < 4; q++) {
    c.h(q);
  }
  return c;
}
CliffordCircuit seed_row3() {
  CliffordCircuit c(4);
  c.h(1);
  c.h(3);
  c.swap(2, 3);
  c.swap(1, 3);
  return c;
}
CliffordCircuit seed_row4() {
  CliffordCircuit c(4);
  c.h(0);
  c.s(0);
  c.sdg(1);
  c.h(1);
  c.sdg(2);
  c.h(2);
  c.h(3);
  c.s(3);
  return c;
}

std::vector<TableRow> table_rows() {
  std::vector<TableRow> rows;
  {
    TableRow r{"row1", seed_row1(), CliffordCircuit(8), CliffordCircuit(16)};
    r.on_double.swap(2, 6);
    r.on_double.swap(3, 7);
    r.on_double.swap(2, 3);
    r.on_double.swap(6, 7);
    r.on_csd.swap(9, 10);
    r.on_csd.swap(13, 14);
    for (uint32_t i = 0; i < 4; i++) {
      r.on_csd.swap(8 + i, 12 + i);
    }
    rows.push_back(r);
  }
  {
    TableRow r{"row2", seed_row2(), CliffordCircuit(8), CliffordCircuit(16)};
    for (uint32_t i = 0; i < 4; i++) {
      r.on_double.swap(i, i + 4);
    }
    for (uint32_t b = 0; b < 4; b++) {
      r.on_csd.swap(4 * b + 1, 4 * b + 2);
    }
    rows.push_back(r);
  }
  {
    TableRow r{"row3", seed_row3(), CliffordCircuit(8), CliffordCircuit(16)};
    r.on_double.swap(1, 5);
    r.on_double.swap(3, 7);
    r.on_double.swap(2, 3);
    r.on_double.swap(6, 7);
    r.on_double.swap(1, 3);
    r.on_double.swap(5, 7);
    r.on_csd.swap(5, 6);
    r.on_csd.swap(13, 14);
    for (uint32_t i = 0; i < 4; i++) {
      r.on_csd.swap(8 + i, 12 + i);
    }
    for (uint32_t i = 0; i < 4; i++) {
      r.on_csd.swap(4 + i, 12 + i);
    }
    rows.push_back(r);
  }
  {
    TableRow r{"row4", seed_row4(), CliffordCircuit(8), CliffordCircuit(16)};
    r.on_double.swap(0, 4);
    r.on_double.cx(0, 4);
    r.on_double.cx(1, 5);
    r.on_double.swap(1, 5);
    r.on_double.cx(2, 6);
    r.on_double.swap(2, 6);
    r.on_double.swap(3, 7);
    r.on_double.cx(3, 7);
    r.on_csd.swap(1, 2);
    r.on_csd.swap(1, 3);
    r.on_csd.swap(5, 7);
    r.on_csd.swap(5, 6);
    r.on_csd.swap(9, 11);
    r.on_csd.swap(9, 10);
    r.on_csd.swap(13, 14);
    r.on_csd.swap(13, 15);
    rows.push_back(r);
  }
  return rows;
}

class LiftGateFixture : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    seed_ = new StabilizerCode(seed_library("c422"));
    auto d = symplectic_double(*seed_);
    double_code_ = new CssCode(d.code);
    tau_ = new ZXDuality(d.tau);
    csd_ = new CsdCode(concatenate_c4(d.code, d.tau));
  }
  static void TearDownTestSuite() {
    delete seed_;
    delete double_code_;
    delete tau_;
    delete csd_;
  }
  static StabilizerCode *seed_;
  static CssCode *double_code_;
  static ZXDuality *tau_;
  static CsdCode *csd_;
};
StabilizerCode *LiftGateFixture::seed_ = nullptr;
CssCode *LiftGateFixture::double_code_ = nullptr;
ZXDuality *LiftGateFixture::tau_ = nullptr;
CsdCode *LiftGateFixture::csd_ = nullptr;

TEST_F(LiftGateFixture, EmptyCircuitIsIdentityAction) {
  CliffordCircuit empty(16);
  EXPECT_TRUE(logical_action(empty, csd_->css).is_identity());
}

TEST_F(LiftGateFixture, NonLogicalCircuitRejected) {
  CliffordCircuit c(16);
  c.s(0);
  EXPECT_THROW(logical_action(c, csd_->css), NotALogicalGate);
}

TEST_F(LiftGateFixture, STauActionIsPairingCz) {
  GateRecord rec = s_tau(*csd_);
  // Physical word uses only S/SDG gates.
  for (const auto &op : rec.circuit.ops) {
    EXPECT_TRUE(op.g == Gate::S || op.g == Gate::SDG);
  }
  // Upper unitriangular with the pairing S block: X_i -> X_i Z_{i+2}.
  size_t K = 4, k = 2;
  SymplecticMatrix want = SymplecticMatrix::identity(2 * K);
  for (size_t i = 0; i < K; i++) {
    want.set(i, K + (i + k) % K, true);
  }
  EXPECT_EQ(rec.action, want);
  EXPECT_TRUE(rec.action.mul(rec.action).is_identity());
  EXPECT_EQ(rec.action, s_tau(*double_code_, *tau_).action);
}

TEST_F(LiftGateFixture, HTauActionIsHadamardPlusPairSwap) {
  GateRecord rec = h_tau(*csd_);
  for (const auto &op : rec.circuit.ops) {
    EXPECT_EQ(op.g, Gate::H);
  }
  EXPECT_EQ(rec.circuit.ops.size(), 16u);
  size_t K = 4, k = 2;
  SymplecticMatrix want(2 * K);
  for (size_t i = 0; i < K; i++) {
    want.set(i, K + (i + k) % K, true);         // X_i -> Z_{i+k}
    want.set(K + i, (i + k) % K, true);         // Z_i -> X_{i+k}
  }
  EXPECT_EQ(rec.action, want);
  // Zero diagonal blocks.
  for (size_t i = 0; i < K; i++) {
    for (size_t j = 0; j < K; j++) {
      EXPECT_FALSE(rec.action.get(i, j));
      EXPECT_FALSE(rec.action.get(K + i, K + j));
    }
  }
  EXPECT_TRUE(rec.action.mul(rec.action).is_identity());
  EXPECT_EQ(rec.action, h_tau(*double_code_, *tau_).action);
}

TEST_F(LiftGateFixture, LiftSingleQubitAnchors) {
  // H lifts to the orbit SWAP.
  CliffordCircuit h = lift_single_qubit(Mat2::of_gate(Gate::H), 2, *tau_);
  ASSERT_EQ(h.ops.size(), 1u);
  EXPECT_EQ(h.ops[0].g, Gate::SWAP);
  EXPECT_EQ(h.ops[0].a, 2u);
  EXPECT_EQ(h.ops[0].b, 6u);
  // Identity lifts to the empty circuit.
  EXPECT_TRUE(lift_single_qubit(Mat2::identity(), 0, *tau_).ops.empty());
  // S lifts to CX(i, tau(i)).
  CliffordCircuit s = lift_single_qubit(Mat2::of_gate(Gate::S), 1, *tau_);
  ASSERT_EQ(s.ops.size(), 1u);
  EXPECT_EQ(s.ops[0].g, Gate::CX);
}

TEST_F(LiftGateFixture, LiftSwap) {
  CliffordCircuit c = lift_swap(2, 3, *tau_);
  ASSERT_EQ(c.ops.size(), 2u);
  EXPECT_EQ(c.ops[0].a, 2u);
  EXPECT_EQ(c.ops[0].b, 3u);
  EXPECT_EQ(c.ops[1].a, 6u);
  EXPECT_EQ(c.ops[1].b, 7u);
  EXPECT_THROW(lift_swap(3, 3, *tau_), std::invalid_argument);
}

TEST_F(LiftGateFixture, TableRowsReplayIdentically) {
  for (const auto &row : table_rows()) {
    // The generated lift reproduces the printed double word's action.
    SymplecticMatrix printed_double = logical_action(row.on_double, *double_code_);
    SymplecticMatrix lifted = logical_action(lift_word(row.seed, *tau_), *double_code_);
    EXPECT_EQ(printed_double, lifted) << row.name;

    // The printed concatenated word and the generated one agree too.
    SymplecticMatrix printed_csd = logical_action(row.on_csd, csd_->css);
    SymplecticMatrix gen_csd = logical_action(lift_to_csd(row.seed, *csd_), csd_->css);
    EXPECT_EQ(printed_csd, gen_csd) << row.name;

    // And the double and concatenated actions are the same matrix.
    EXPECT_EQ(printed_double, printed_csd) << row.name;
  }
}

TEST_F(LiftGateFixture, PrintedRowsGenerateGTau) {
  std::vector<SymplecticMatrix> gens;
  for (const auto &row : table_rows()) {
    gens.push_back(logical_action(row.on_double, *double_code_));
  }
  gens.push_back(h_tau(*double_code_, *tau_).action);
  gens.push_back(s_tau(*double_code_, *tau_).action);
  ClosureResult cl = group_closure(gens, 1000);
  EXPECT_FALSE(cl.capped);
  EXPECT_EQ(cl.order, 216u);
}

TEST_F(LiftGateFixture, SwapTransversalSearchFindsTableGenerators) {
  auto gates = find_swap_transversal_gates(*seed_);
  EXPECT_EQ(gates.size(), 36u);
  for (const auto &row : table_rows()) {
    SymplecticMatrix want = logical_action(row.seed, *seed_);
    bool found = false;
    for (const auto &g : gates) {
      if (g.action == want) {
        found = true;
        break;
      }
    }
    EXPECT_TRUE(found) << row.name;
  }
}

TEST_F(LiftGateFixture, GTauOrder216) {
  auto gens = g_tau_generators(*seed_, *double_code_, *tau_);
  ClosureResult cl = group_closure(gens, 1000);
  EXPECT_FALSE(cl.capped);
  EXPECT_EQ(cl.order, 216u);
}

TEST(LiftGate, TrivialCodeHasAllSixSingleQubitGates) {
  StabilizerCode c;
  c.n = 1;
  c = compute_logicals(c);
  auto gates = find_swap_transversal_gates(c);
  EXPECT_EQ(gates.size(), 6u);
}

TEST(LiftGate, BudgetExceededAboveBound) {
  StabilizerCode big = seed_library("c833");
  EXPECT_THROW(find_swap_transversal_gates(big), BudgetExceeded);
}

TEST(LiftGate, FiveOneThreeGroups) {
  StabilizerCode seed = seed_library("c513");
  auto d = symplectic_double(seed);
  auto gens = g_tau_generators(seed, d.code, d.tau);
  ClosureResult cl = group_closure(gens, 1000);
  EXPECT_FALSE(cl.capped);
  // The complete automorphism enumeration yields 36 actions; the cyclic
  // subset quoted in the literature generates the order-18 subgroup.
  EXPECT_EQ(cl.order, 36u);

  auto auts = find_swap_transversal_gates(seed);
  std::vector<SymplecticMatrix> cyclic;
  for (const auto &a : auts) {
    SymplecticMatrix p = a.action;
    int ord = 1;
    while (!p.is_identity()) {
      p = p.mul(a.action);
      ord++;
    }
    if (ord != 2) {
      cyclic.push_back(logical_action(lift_word(a.circuit, d.tau), d.code));
    }
  }
  cyclic.push_back(h_tau(d.code, d.tau).action);
  cyclic.push_back(s_tau(d.code, d.tau).action);
  EXPECT_EQ(group_closure(cyclic, 1000).order, 18u);

  // Either generating set plus a targeted injected S gives all of Sp_4.
  auto with_s = gens;
  with_s.push_back(injected_s_action(2, 0));
  EXPECT_TRUE(is_full_symplectic(with_s));
  EXPECT_FALSE(is_full_symplectic(gens));
}

TEST(LiftGate, SixteenFourFourInjection) {
  StabilizerCode seed = seed_library("c422");
  auto d = symplectic_double(seed);
  auto gens = g_tau_generators(seed, d.code, d.tau);

  auto with_ts = gens;
  with_ts.push_back(injected_s_action(4, 2));
  EXPECT_EQ(big_count_str(group_order(with_ts, 100000, 3)), "47377612800");

  // The global phase gate S on all four logical qubits generates a proper
  // subgroup; its exact order for the Table 2 gateset is 518400.
  auto with_gs = gens;
  with_gs.push_back(global_s_action(4));
  EXPECT_FALSE(is_full_symplectic(with_gs));
  EXPECT_EQ(big_count_str(group_order(with_gs, 600000, 3)), "518400");
}

TEST(LiftGate, GroupClosureTrivial) {
  std::vector<SymplecticMatrix> gens{SymplecticMatrix::identity(4)};
  EXPECT_EQ(group_closure(gens, 10).order, 1u);
}

TEST(LiftGate, SchreierMatchesEnumerationOnSp2AndSp4) {
  // Transvections generate the symplectic group; compare both order paths.
  for (size_t t : {1u, 2u}) {
    size_t dim = 2 * t;
    std::vector<SymplecticMatrix> gens;
    for (uint32_t v = 1; v < (uint32_t{1} << dim); v++) {
      SymplecticMatrix m = SymplecticMatrix::identity(dim);
      for (size_t i = 0; i < dim; i++) {
        uint32_t e = uint32_t{1} << i;
        if (m.form(e, v)) {
          m.set_row(i, e ^ v);
        }
      }
      gens.push_back(m);
    }
    ClosureResult cl = group_closure(gens, 10000);
    EXPECT_EQ(BigCount(cl.order), sp_order(t));
    detail::SchreierSims chain(gens, 7);
    EXPECT_EQ(chain.order(), sp_order(t));
  }
}

}  // namespace
}  // namespace csd
