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

#ifndef CSD_BITS_HPP
#define CSD_BITS_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace csd {

/// Dense bit vector packed into 64-bit words.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(size_t len) : len_(len), words_((len + 63) / 64, 0) {}

  static BitVector from_string(std::string_view s) {
    BitVector v(s.size());
    for (size_t i = 0; i < s.size(); i++) {
      char c = s[i];
      if (c == '1') {
        v.set(i, true);
      } else if (c != '0') {
        throw std::invalid_argument("bit string must be over {0,1}");
      }
    }
    return v;
  }

  size_t size() const { return len_; }

  bool get(size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1; }

  void set(size_t i, bool v) {
    uint64_t mask = uint64_t{1} << (i & 63);
    if (v) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(size_t i) { words_[i >> 6] ^= uint64_t{1} << (i & 63); }

  BitVector &operator^=(const BitVector &o) {
    if (o.len_ != len_) {
      throw std::invalid_argument("BitVector size mismatch");
    }
    for (size_t w = 0; w < words_.size(); w++) {
      words_[w] ^= o.words_[w];
    }
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector &b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVector &o) const {
    return len_ == o.len_ && words_ == o.words_;
  }
  bool operator!=(const BitVector &o) const { return !(*this == o); }

  size_t weight() const {
    size_t w = 0;
    for (uint64_t word : words_) {
      w += std::popcount(word);
    }
    return w;
  }

  bool any() const {
    for (uint64_t word : words_) {
      if (word) {
        return true;
      }
    }
    return false;
  }

  /// Parity of the AND with another vector (GF(2) inner product).
  bool dot(const BitVector &o) const {
    if (o.len_ != len_) {
      throw std::invalid_argument("BitVector size mismatch");
    }
    uint64_t acc = 0;
    for (size_t w = 0; w < words_.size(); w++) {
      acc ^= words_[w] & o.words_[w];
    }
    return std::popcount(acc) & 1;
  }

  /// Index of the lowest set bit, or len if none.
  size_t lowest_set() const {
    for (size_t w = 0; w < words_.size(); w++) {
      if (words_[w]) {
        return (w << 6) + std::countr_zero(words_[w]);
      }
    }
    return len_;
  }

  std::string str() const {
    std::string s(len_, '0');
    for (size_t i = 0; i < len_; i++) {
      if (get(i)) {
        s[i] = '1';
      }
    }
    return s;
  }

  /// Concatenation (a | b).
  static BitVector concat(const BitVector &a, const BitVector &b) {
    BitVector v(a.size() + b.size());
    for (size_t i = 0; i < a.size(); i++) {
      v.set(i, a.get(i));
    }
    for (size_t i = 0; i < b.size(); i++) {
      v.set(a.size() + i, b.get(i));
    }
    return v;
  }

  BitVector slice(size_t begin, size_t end) const {
    BitVector v(end - begin);
    for (size_t i = begin; i < end; i++) {
      v.set(i - begin, get(i));
    }
    return v;
  }

  const std::vector<uint64_t> &words() const { return words_; }

  uint64_t hash() const {
    uint64_t h = 0xcbf29ce484222325ull ^ len_;
    for (uint64_t w : words_) {
      h ^= w;
      h *= 0x100000001b3ull;
    }
    return h;
  }

 private:
  size_t len_ = 0;
  std::vector<uint64_t> words_;
};

/// Dense GF(2) matrix, row-major, rows padded to word boundaries.
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(size_t rows, size_t cols)
      : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), data_(rows * wpr_, 0) {}

  static BitMatrix identity(size_t n) {
    BitMatrix m(n, n);
    for (size_t i = 0; i < n; i++) {
      m.set(i, i, true);
    }
    return m;
  }

  static BitMatrix from_rows(const std::vector<std::string> &rows) {
    if (rows.empty()) {
      return BitMatrix(0, 0);
    }
    BitMatrix m(rows.size(), rows[0].size());
    for (size_t r = 0; r < rows.size(); r++) {
      if (rows[r].size() != m.cols_) {
        throw std::invalid_argument("ragged rows");
      }
      for (size_t c = 0; c < m.cols_; c++) {
        if (rows[r][c] == '1') {
          m.set(r, c, true);
        } else if (rows[r][c] != '0') {
          throw std::invalid_argument("bit string must be over {0,1}");
        }
      }
    }
    return m;
  }

  static BitMatrix from_row_vectors(const std::vector<BitVector> &rows, size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (size_t r = 0; r < rows.size(); r++) {
      m.set_row(r, rows[r]);
    }
    return m;
  }

  size_t rows() const { return rows_; }
  size_t cols() const { return cols_; }

  bool get(size_t r, size_t c) const {
    return (data_[r * wpr_ + (c >> 6)] >> (c & 63)) & 1;
  }

  void set(size_t r, size_t c, bool v) {
    uint64_t mask = uint64_t{1} << (c & 63);
    if (v) {
      data_[r * wpr_ + (c >> 6)] |= mask;
    } else {
      data_[r * wpr_ + (c >> 6)] &= ~mask;
    }
  }

  BitVector row(size_t r) const {
    BitVector v(cols_);
    for (size_t c = 0; c < cols_; c++) {
      v.set(c, get(r, c));
    }
    return v;
  }

  void set_row(size_t r, const BitVector &v) {
    if (v.size() != cols_) {
      throw std::invalid_argument("row length mismatch");
    }
    for (size_t c = 0; c < cols_; c++) {
      set(r, c, v.get(c));
    }
  }

  /// rows[dst] ^= rows[src]
  void row_xor(size_t dst, size_t src) {
    uint64_t *d = &data_[dst * wpr_];
    const uint64_t *s = &data_[src * wpr_];
    for (size_t w = 0; w < wpr_; w++) {
      d[w] ^= s[w];
    }
  }

  void swap_rows(size_t a, size_t b) {
    if (a == b) {
      return;
    }
    for (size_t w = 0; w < wpr_; w++) {
      std::swap(data_[a * wpr_ + w], data_[b * wpr_ + w]);
    }
  }

  BitMatrix transposed() const {
    BitMatrix t(cols_, rows_);
    for (size_t r = 0; r < rows_; r++) {
      for (size_t c = 0; c < cols_; c++) {
        if (get(r, c)) {
          t.set(c, r, true);
        }
      }
    }
    return t;
  }

  BitMatrix mul(const BitMatrix &o) const {
    if (cols_ != o.rows_) {
      throw std::invalid_argument("matrix shape mismatch");
    }
    BitMatrix out(rows_, o.cols_);
    for (size_t r = 0; r < rows_; r++) {
      for (size_t c = 0; c < cols_; c++) {
        if (get(r, c)) {
          out.row_xor_from(r, o, c);
        }
      }
    }
    return out;
  }

  /// M · v with v as a column vector of length cols.
  BitVector mul(const BitVector &v) const {
    if (v.size() != cols_) {
      throw std::invalid_argument("matrix/vector shape mismatch");
    }
    BitVector out(rows_);
    for (size_t r = 0; r < rows_; r++) {
      uint64_t acc = 0;
      const uint64_t *d = &data_[r * wpr_];
      for (size_t w = 0; w < wpr_; w++) {
        acc ^= d[w] & v.words()[w];
      }
      out.set(r, std::popcount(acc) & 1);
    }
    return out;
  }

  bool operator==(const BitMatrix &o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const BitMatrix &o) const { return !(*this == o); }

  std::vector<std::string> row_strings() const {
    std::vector<std::string> out;
    out.reserve(rows_);
    for (size_t r = 0; r < rows_; r++) {
      out.push_back(row(r).str());
    }
    return out;
  }

 private:
  void row_xor_from(size_t dst, const BitMatrix &src, size_t src_row) {
    uint64_t *d = &data_[dst * wpr_];
    const uint64_t *s = &src.data_[src_row * src.wpr_];
    size_t w_count = wpr_ < src.wpr_ ? wpr_ : src.wpr_;
    for (size_t w = 0; w < w_count; w++) {
      d[w] ^= s[w];
    }
  }

  size_t rows_ = 0;
  size_t cols_ = 0;
  size_t wpr_ = 0;
  std::vector<uint64_t> data_;
};

struct RrefResult {
  BitMatrix r;
  std::vector<size_t> pivots;
  size_t rank;
};

/// Reduced row echelon form over GF(2).
inline RrefResult rref(const BitMatrix &m) {
  RrefResult res{m, {}, 0};
  size_t r = 0;
  for (size_t c = 0; c < m.cols() && r < m.rows(); c++) {
    size_t pivot = r;
    while (pivot < m.rows() && !res.r.get(pivot, c)) {
      pivot++;
    }
    if (pivot == m.rows()) {
      continue;
    }
    res.r.swap_rows(r, pivot);
    for (size_t i = 0; i < m.rows(); i++) {
      if (i != r && res.r.get(i, c)) {
        res.r.row_xor(i, r);
      }
    }
    res.pivots.push_back(c);
    r++;
  }
  res.rank = r;
  return res;
}

inline size_t rank(const BitMatrix &m) { return rref(m).rank; }

/// Rows span the null space {v : M v = 0}.
inline BitMatrix kernel(const BitMatrix &m) {
  RrefResult rr = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (size_t p : rr.pivots) {
    is_pivot[p] = true;
  }
  BitMatrix out(m.cols() - rr.rank, m.cols());
  size_t k = 0;
  for (size_t c = 0; c < m.cols(); c++) {
    if (is_pivot[c]) {
      continue;
    }
    out.set(k, c, true);
    for (size_t p = 0; p < rr.pivots.size(); p++) {
      if (rr.r.get(p, c)) {
        out.set(k, rr.pivots[p], true);
      }
    }
    k++;
  }
  return out;
}

/// Solves M x = b; empty when b is outside the column space.
inline std::optional<BitVector> solve(const BitMatrix &m, const BitVector &b) {
  if (b.size() != m.rows()) {
    throw std::invalid_argument("solve: rhs length must equal row count");
  }
  // Eliminate on the augmented matrix (M | b).
  BitMatrix aug(m.rows(), m.cols() + 1);
  for (size_t r = 0; r < m.rows(); r++) {
    for (size_t c = 0; c < m.cols(); c++) {
      aug.set(r, c, m.get(r, c));
    }
    aug.set(r, m.cols(), b.get(r));
  }
  size_t r = 0;
  std::vector<size_t> pivots;
  for (size_t c = 0; c < m.cols() && r < m.rows(); c++) {
    size_t pivot = r;
    while (pivot < m.rows() && !aug.get(pivot, c)) {
      pivot++;
    }
    if (pivot == m.rows()) {
      continue;
    }
    aug.swap_rows(r, pivot);
    for (size_t i = 0; i < m.rows(); i++) {
      if (i != r && aug.get(i, c)) {
        aug.row_xor(i, r);
      }
    }
    pivots.push_back(c);
    r++;
  }
  for (size_t i = r; i < m.rows(); i++) {
    if (aug.get(i, m.cols())) {
      return std::nullopt;
    }
  }
  BitVector x(m.cols());
  for (size_t p = 0; p < pivots.size(); p++) {
    if (aug.get(p, m.cols())) {
      x.set(pivots[p], true);
    }
  }
  return x;
}

/// Incrementally built row space with O(rank) membership reduction.
class RowSpace {
 public:
  explicit RowSpace(size_t cols) : cols_(cols) {}

  /// Returns true when v enlarged the space.
  bool insert(BitVector v) {
    reduce_in_place(v);
    size_t p = v.lowest_set();
    if (p == cols_) {
      return false;
    }
    // Keep the basis reduced: clear column p from existing rows.
    for (auto &[piv, row] : basis_) {
      if (row.get(p)) {
        row ^= v;
      }
    }
    basis_.emplace_back(p, std::move(v));
    return true;
  }

  BitVector reduce(BitVector v) const {
    reduce_in_place(v);
    return v;
  }

  bool contains(const BitVector &v) const { return !reduce(v).any(); }

  size_t rank() const { return basis_.size(); }
  size_t cols() const { return cols_; }

 private:
  void reduce_in_place(BitVector &v) const {
    for (const auto &[piv, row] : basis_) {
      if (v.get(piv)) {
        v ^= row;
      }
    }
  }

  size_t cols_;
  std::vector<std::pair<size_t, BitVector>> basis_;
};

}  // namespace csd

#endif
