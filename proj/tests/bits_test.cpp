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

#include "csd/bits.hpp"

#include <gtest/gtest.h>

#include <random>

namespace csd {
namespace {

BitMatrix random_matrix(size_t rows, size_t cols, std::mt19937_64 &rng) {
  BitMatrix m(rows, cols);
  for (size_t r = 0; r < rows; r++) {
    for (size_t c = 0; c < cols; c++) {
      m.set(r, c, rng() & 1);
    }
  }
  return m;
}

TEST(BitVector, BasicOps) {
  BitVector v = BitVector::from_string("0110");
  EXPECT_EQ(v.size(), 4u);
  EXPECT_EQ(v.weight(), 2u);
  EXPECT_FALSE(v.get(0));
  EXPECT_TRUE(v.get(1));
  EXPECT_EQ(v.str(), "0110");
  EXPECT_EQ(v.lowest_set(), 1u);

  BitVector w = BitVector::from_string("1110");
  EXPECT_EQ((v ^ w).str(), "1000");
}

TEST(BitVector, DotParity) {
  BitVector a = BitVector::from_string("0110");
  BitVector b = BitVector::from_string("1110");
  EXPECT_FALSE(a.dot(b));
  BitVector c = BitVector::from_string("0100");
  EXPECT_TRUE(a.dot(c));
}

TEST(BitVector, CrossWordBoundary) {
  BitVector v(130);
  v.set(0, true);
  v.set(64, true);
  v.set(129, true);
  EXPECT_EQ(v.weight(), 3u);
  BitVector w(130);
  w.set(64, true);
  EXPECT_TRUE(v.dot(w));
  v ^= w;
  EXPECT_EQ(v.weight(), 2u);
  EXPECT_EQ(v.lowest_set(), 0u);
}

TEST(Rref, Identity3x3) {
  BitMatrix id = BitMatrix::identity(3);
  RrefResult rr = rref(id);
  EXPECT_EQ(rr.r, id);
  EXPECT_EQ(rr.rank, 3u);
  EXPECT_EQ(rr.pivots, (std::vector<size_t>{0, 1, 2}));
}

TEST(Rref, PaperXBlockRank2) {
  // X block of the [[8,4,2]] check matrix.
  BitMatrix m = BitMatrix::from_rows({"10010110", "01101001"});
  EXPECT_EQ(rref(m).rank, 2u);
}

TEST(Rref, AllZero) {
  BitMatrix m(2, 4);
  RrefResult rr = rref(m);
  EXPECT_EQ(rr.rank, 0u);
  EXPECT_EQ(rr.r, m);
}

TEST(Rref, Idempotent) {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 50; trial++) {
    BitMatrix m = random_matrix(7, 11, rng);
    RrefResult once = rref(m);
    RrefResult twice = rref(once.r);
    EXPECT_EQ(once.r, twice.r);
    EXPECT_EQ(once.rank, twice.rank);
    EXPECT_EQ(rank(m), once.rank);
  }
}

TEST(Kernel, IdentityIsEmpty) {
  BitMatrix id = BitMatrix::identity(4);
  EXPECT_EQ(kernel(id).rows(), 0u);
}

TEST(Kernel, OneOne) {
  BitMatrix m = BitMatrix::from_rows({"11"});
  BitMatrix k = kernel(m);
  ASSERT_EQ(k.rows(), 1u);
  EXPECT_EQ(k.row(0).str(), "11");
}

TEST(Kernel, C4XChecks) {
  // Kernel of the single row 1111 is 3-dimensional and contains 1100.
  BitMatrix m = BitMatrix::from_rows({"1111"});
  BitMatrix k = kernel(m);
  EXPECT_EQ(k.rows(), 3u);
  RowSpace span(4);
  for (size_t r = 0; r < k.rows(); r++) {
    EXPECT_TRUE(span.insert(k.row(r)));
  }
  EXPECT_TRUE(span.contains(BitVector::from_string("1100")));
  // Exhaustive oracle: every kernel vector satisfies Mv = 0, and the count
  // over all 16 candidates matches 2^3.
  int count = 0;
  for (int bits = 0; bits < 16; bits++) {
    BitVector v(4);
    for (int i = 0; i < 4; i++) {
      v.set(i, (bits >> i) & 1);
    }
    bool in_kernel = !m.mul(v).any();
    if (in_kernel) {
      count++;
      EXPECT_TRUE(span.contains(v));
    }
  }
  EXPECT_EQ(count, 8);
}

TEST(Kernel, RowsAllSatisfyAndCountMatches) {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 40; trial++) {
    BitMatrix m = random_matrix(5, 9, rng);
    BitMatrix k = kernel(m);
    EXPECT_EQ(k.rows(), 9u - rank(m));
    for (size_t r = 0; r < k.rows(); r++) {
      EXPECT_FALSE(m.mul(k.row(r)).any());
    }
    EXPECT_EQ(rank(k), k.rows());
  }
}

TEST(Solve, IdentityReturnsRhs) {
  BitMatrix id = BitMatrix::identity(5);
  BitVector b = BitVector::from_string("01011");
  auto x = solve(id, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(x->str(), "01011");
}

TEST(Solve, UnderdeterminedPicksASolution) {
  BitMatrix m = BitMatrix::from_rows({"11"});
  BitVector b = BitVector::from_string("1");
  auto x = solve(m, b);
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ(m.mul(*x).str(), "1");
}

TEST(Solve, NoSolution) {
  BitMatrix m(1, 2);
  BitVector b = BitVector::from_string("1");
  EXPECT_FALSE(solve(m, b).has_value());
}

TEST(Solve, RandomConsistency) {
  std::mt19937_64 rng(31337);
  for (int trial = 0; trial < 60; trial++) {
    BitMatrix m = random_matrix(6, 8, rng);
    BitVector want(8);
    for (int i = 0; i < 8; i++) {
      want.set(i, rng() & 1);
    }
    BitVector b = m.mul(want);
    auto x = solve(m, b);
    ASSERT_TRUE(x.has_value());
    EXPECT_EQ(m.mul(*x), b);
  }
}

TEST(RowSpace, MembershipAndRank) {
  RowSpace rs(4);
  EXPECT_TRUE(rs.insert(BitVector::from_string("1100")));
  EXPECT_TRUE(rs.insert(BitVector::from_string("0110")));
  EXPECT_FALSE(rs.insert(BitVector::from_string("1010")));
  EXPECT_EQ(rs.rank(), 2u);
  EXPECT_TRUE(rs.contains(BitVector::from_string("1010")));
  EXPECT_FALSE(rs.contains(BitVector::from_string("0001")));
}

TEST(BitMatrix, MulMatchesManual) {
  BitMatrix a = BitMatrix::from_rows({"110", "011"});
  BitMatrix b = BitMatrix::from_rows({"10", "11", "01"});
  BitMatrix c = a.mul(b);
  // (1,1,0)*cols -> row0 = (1^1, 0^1) = (0,1); row1 = (1^0, 1^1) = (1,0)
  EXPECT_EQ(c.row_strings(), (std::vector<std::string>{"01", "10"}));
}

}  // namespace
}  // namespace csd
