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

#include "csd/pauli.hpp"

#include <gtest/gtest.h>

#include <random>

namespace csd {
namespace {

PauliOperator random_pauli(size_t n, std::mt19937_64 &rng) {
  PauliOperator p(n);
  for (size_t q = 0; q < n; q++) {
    p.set_pauli(q, "IXYZ"[rng() & 3]);
  }
  return p;
}

TEST(Pauli, ParseAndPrint) {
  EXPECT_EQ(PauliOperator::from_string("XZZX").str(), "+XZZX");
  EXPECT_EQ(PauliOperator::from_string("-YIZ").str(), "-YIZ");
  EXPECT_EQ(PauliOperator::from_string("iX").str(), "+iX");
  EXPECT_EQ(PauliOperator::from_string("Y").weight(), 1u);
  EXPECT_EQ(PauliOperator::from_string("XZZX").weight(), 4u);
}

TEST(Pauli, SingleQubitProducts) {
  auto X = PauliOperator::from_string("X");
  auto Y = PauliOperator::from_string("Y");
  auto Z = PauliOperator::from_string("Z");
  EXPECT_EQ((X * Y).str(), "+iZ");
  EXPECT_EQ((Y * X).str(), "-iZ");
  EXPECT_EQ((X * Z).str(), "-iY");
  EXPECT_EQ((Z * X).str(), "+iY");
  EXPECT_EQ((Y * Z).str(), "+iX");
  EXPECT_EQ((Z * Y).str(), "-iX");
  EXPECT_EQ((X * X).str(), "+I");
  EXPECT_EQ((Y * Y).str(), "+I");
}

TEST(Pauli, SymplecticProductExamples) {
  // Anticommuting pair on the same qubit.
  auto x0 = PauliOperator::from_string("XI");
  auto z0 = PauliOperator::from_string("ZI");
  EXPECT_EQ(symplectic_product(x0, z0), 1);

  // C4 logical pair X1 = XXII vs Z1 = ZIZI anticommute.
  auto xbar = PauliOperator::from_string("XXII");
  auto zbar = PauliOperator::from_string("ZIZI");
  EXPECT_EQ(symplectic_product(xbar, zbar), 1);

  // Cross-pair logicals commute: X1 = XXII vs Z2 = ZZII.
  auto zbar2 = PauliOperator::from_string("ZZII");
  EXPECT_EQ(symplectic_product(xbar, zbar2), 0);

  EXPECT_THROW(symplectic_product(x0, xbar), std::invalid_argument);
}

TEST(Pauli, ProductSignMatchesCommutation) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 200; trial++) {
    auto p = random_pauli(6, rng);
    auto q = random_pauli(6, rng);
    auto pq = p * q;
    auto qp = q * p;
    EXPECT_TRUE(pq.same_xz(qp));
    int anti = symplectic_product(p, q);
    // p q = (-1)^{sp} q p.
    EXPECT_EQ(pq.internal_phase(), (qp.internal_phase() + 2 * anti) & 3);
  }
}

TEST(Pauli, SymplecticProductBilinear) {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 200; trial++) {
    auto p = random_pauli(8, rng);
    auto q = random_pauli(8, rng);
    auto r = random_pauli(8, rng);
    int lhs = symplectic_product(p * q, r);
    int rhs = symplectic_product(p, r) ^ symplectic_product(q, r);
    EXPECT_EQ(lhs, rhs);
  }
}

TEST(Pauli, XzRoundTrip) {
  auto p = PauliOperator::from_string("XZYI");
  BitVector row = p.xz();
  EXPECT_EQ(row.str(), "10100110");
  auto q = PauliOperator::from_xz(row);
  EXPECT_TRUE(p.same_xz(q));
}

TEST(Pauli, WeightCountsYOnce) {
  auto p = PauliOperator::from_string("XYZI");
  EXPECT_EQ(p.weight(), 3u);
}

}  // namespace
}  // namespace csd
