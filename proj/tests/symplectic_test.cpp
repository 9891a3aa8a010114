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

#include "csd/symplectic.hpp"

#include <gtest/gtest.h>

#include <random>

namespace csd {
namespace {

// Symplectic transvection T_v: u -> u + <u,v> v.
SymplecticMatrix transvection(size_t dim, uint32_t v) {
  SymplecticMatrix m = SymplecticMatrix::identity(dim);
  for (size_t i = 0; i < dim; i++) {
    uint32_t e = uint32_t{1} << i;
    if (m.form(e, v)) {
      m.set_row(i, e ^ v);
    }
  }
  return m;
}

TEST(Symplectic, IdentityIsSymplectic) {
  EXPECT_TRUE(SymplecticMatrix::identity(4).is_symplectic());
  EXPECT_TRUE(SymplecticMatrix::identity(8).is_symplectic());
}

TEST(Symplectic, TwoBlockCnotGeneratorIsSymplectic) {
  // Upper-left CNOT block form: X block gets I_k in the off-diagonal, the Z
  // block compensates with the transposed inverse.
  size_t k = 2;
  size_t dim = 4 * k;
  SymplecticMatrix m = SymplecticMatrix::identity(dim);
  // x_i -> x_i + x_{k+i}; z_{k+i} -> z_{k+i} + z_i (columns: x block first).
  for (size_t i = 0; i < k; i++) {
    m.set(i, k + i, true);
    m.set(2 * k + k + i, 2 * k + i, true);
  }
  EXPECT_TRUE(m.is_symplectic());
}

TEST(Symplectic, SingleOffDiagonalBitBreaksForm) {
  SymplecticMatrix m = SymplecticMatrix::identity(4);
  m.set(0, 1, true);  // x0 -> x0 + x1 alone does not preserve the form
  EXPECT_FALSE(m.is_symplectic());
}

TEST(Symplectic, ClosedUnderProductAndInverse) {
  std::mt19937_64 rng(5150);
  size_t dim = 8;
  SymplecticMatrix acc = SymplecticMatrix::identity(dim);
  for (int trial = 0; trial < 100; trial++) {
    uint32_t v = rng() & ((uint32_t{1} << dim) - 1);
    if (!v) {
      continue;
    }
    SymplecticMatrix t = transvection(dim, v);
    ASSERT_TRUE(t.is_symplectic());
    acc = acc.mul(t);
    ASSERT_TRUE(acc.is_symplectic());
    ASSERT_TRUE(acc.inverse().is_symplectic());
    ASSERT_TRUE(acc.mul(acc.inverse()).is_identity());
  }
}

TEST(Symplectic, ApplyMatchesRowSelection) {
  SymplecticMatrix m = SymplecticMatrix::identity(4);
  m.set_row(0, 0b0011);
  EXPECT_EQ(m.apply(0b0001), 0b0011u);
  EXPECT_EQ(m.apply(0b0101), 0b0011u ^ 0b0100u);
}

TEST(SpOrder, SmallValues) {
  EXPECT_EQ(big_count_str(sp_order(1)), "6");
  EXPECT_EQ(big_count_str(sp_order(2)), "720");
  EXPECT_EQ(big_count_str(sp_order(3)), "1451520");
  EXPECT_EQ(big_count_str(sp_order(4)), "47377612800");
}

TEST(SpOrder, RejectsOutOfRange) {
  EXPECT_THROW(sp_order(0), std::invalid_argument);
  EXPECT_THROW(sp_order(8), std::invalid_argument);
}

}  // namespace
}  // namespace csd
