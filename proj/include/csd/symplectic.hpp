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

#ifndef CSD_SYMPLECTIC_HPP
#define CSD_SYMPLECTIC_HPP

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "csd/bits.hpp"

namespace csd {

/// Compact 2t x 2t GF(2) matrix with rows as bitmasks, columns ordered
/// (x_0..x_{t-1} | z_0..z_{t-1}). Row i is the image of generator i under the
/// row-vector action v -> v*M, so applying U then V composes as M_U * M_V.
///
/// Dimension capped at 32 (16 logical qubits), enough for every code here.
class SymplecticMatrix {
 public:
  static constexpr size_t kMaxDim = 32;

  SymplecticMatrix() = default;
  explicit SymplecticMatrix(size_t dim) : dim_(dim) {
    if (dim > kMaxDim || dim % 2 != 0) {
      throw std::invalid_argument("SymplecticMatrix: dim must be even and <= 32");
    }
    rows_.fill(0);
  }

  static SymplecticMatrix identity(size_t dim) {
    SymplecticMatrix m(dim);
    for (size_t i = 0; i < dim; i++) {
      m.rows_[i] = uint32_t{1} << i;
    }
    return m;
  }

  static SymplecticMatrix from_bit_matrix(const BitMatrix &b) {
    if (b.rows() != b.cols()) {
      throw std::invalid_argument("must be square");
    }
    SymplecticMatrix m(b.rows());
    for (size_t r = 0; r < b.rows(); r++) {
      for (size_t c = 0; c < b.cols(); c++) {
        if (b.get(r, c)) {
          m.rows_[r] |= uint32_t{1} << c;
        }
      }
    }
    return m;
  }

  BitMatrix to_bit_matrix() const {
    BitMatrix b(dim_, dim_);
    for (size_t r = 0; r < dim_; r++) {
      for (size_t c = 0; c < dim_; c++) {
        b.set(r, c, get(r, c));
      }
    }
    return b;
  }

  size_t dim() const { return dim_; }
  size_t t() const { return dim_ / 2; }

  bool get(size_t r, size_t c) const { return (rows_[r] >> c) & 1; }
  void set(size_t r, size_t c, bool v) {
    if (v) {
      rows_[r] |= uint32_t{1} << c;
    } else {
      rows_[r] &= ~(uint32_t{1} << c);
    }
  }
  uint32_t row(size_t r) const { return rows_[r]; }
  void set_row(size_t r, uint32_t bits) { rows_[r] = bits; }

  /// Row-vector action v -> v*M: XOR of rows selected by v's bits.
  uint32_t apply(uint32_t v) const {
    uint32_t out = 0;
    while (v) {
      size_t i = std::countr_zero(v);
      v &= v - 1;
      out ^= rows_[i];
    }
    return out;
  }

  SymplecticMatrix mul(const SymplecticMatrix &o) const {
    if (o.dim_ != dim_) {
      throw std::invalid_argument("dim mismatch");
    }
    SymplecticMatrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
      out.rows_[r] = o.apply(rows_[r]);
    }
    return out;
  }

  SymplecticMatrix inverse() const {
    // Gauss-Jordan on (M | I).
    std::array<uint32_t, kMaxDim> a = rows_;
    std::array<uint32_t, kMaxDim> inv{};
    for (size_t i = 0; i < dim_; i++) {
      inv[i] = uint32_t{1} << i;
    }
    for (size_t c = 0; c < dim_; c++) {
      size_t piv = c;
      while (piv < dim_ && !((a[piv] >> c) & 1)) {
        piv++;
      }
      if (piv == dim_) {
        throw std::domain_error("matrix is singular");
      }
      std::swap(a[c], a[piv]);
      std::swap(inv[c], inv[piv]);
      for (size_t r = 0; r < dim_; r++) {
        if (r != c && ((a[r] >> c) & 1)) {
          a[r] ^= a[c];
          inv[r] ^= inv[c];
        }
      }
    }
    SymplecticMatrix out(dim_);
    out.rows_ = inv;
    return out;
  }

  SymplecticMatrix transposed() const {
    SymplecticMatrix out(dim_);
    for (size_t r = 0; r < dim_; r++) {
      for (size_t c = 0; c < dim_; c++) {
        if (get(r, c)) {
          out.set(c, r, true);
        }
      }
    }
    return out;
  }

  /// Symplectic product of two (x|z) rows under Lambda = [[0,I],[I,0]].
  int form(uint32_t a, uint32_t b) const {
    size_t t = dim_ / 2;
    uint32_t swapped = ((b & ((uint32_t{1} << t) - 1)) << t) | (b >> t);
    return std::popcount(a & swapped) & 1;
  }

  /// True iff the row action preserves the symplectic form.
  bool is_symplectic() const {
    for (size_t i = 0; i < dim_; i++) {
      for (size_t j = i; j < dim_; j++) {
        size_t t = dim_ / 2;
        int expected = (j == i + t && i < t) ? 1 : 0;
        if (form(rows_[i], rows_[j]) != expected) {
          return false;
        }
      }
    }
    return true;
  }

  bool is_identity() const {
    for (size_t i = 0; i < dim_; i++) {
      if (rows_[i] != (uint32_t{1} << i)) {
        return false;
      }
    }
    return true;
  }

  bool operator==(const SymplecticMatrix &o) const {
    if (dim_ != o.dim_) {
      return false;
    }
    for (size_t i = 0; i < dim_; i++) {
      if (rows_[i] != o.rows_[i]) {
        return false;
      }
    }
    return true;
  }
  bool operator!=(const SymplecticMatrix &o) const { return !(*this == o); }

  uint64_t hash() const {
    uint64_t h = 0x9e3779b97f4a7c15ull ^ dim_;
    for (size_t i = 0; i < dim_; i++) {
      h ^= rows_[i];
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
    }
    return h;
  }

  std::string str() const {
    std::string out;
    for (size_t r = 0; r < dim_; r++) {
      for (size_t c = 0; c < dim_; c++) {
        out += get(r, c) ? '1' : '0';
      }
      out += '\n';
    }
    return out;
  }

 private:
  size_t dim_ = 0;
  std::array<uint32_t, kMaxDim> rows_{};
};

struct SymplecticMatrixHash {
  size_t operator()(const SymplecticMatrix &m) const { return m.hash(); }
};

using BigCount = unsigned __int128;

inline std::string big_count_str(BigCount v) {
  if (v == 0) {
    return "0";
  }
  std::string s;
  while (v) {
    s += char('0' + int(v % 10));
    v /= 10;
  }
  return std::string(s.rbegin(), s.rend());
}

/// |Sp_{2t}(F_2)| = 2^{t^2} * prod_{i=1..t} (2^{2i} - 1). Valid for t <= 7.
inline BigCount sp_order(size_t t) {
  if (t < 1 || t > 7) {
    throw std::invalid_argument("sp_order: t must be in [1, 7]");
  }
  BigCount out = BigCount{1} << (t * t);
  for (size_t i = 1; i <= t; i++) {
    out *= (BigCount{1} << (2 * i)) - 1;
  }
  return out;
}

}  // namespace csd

#endif
