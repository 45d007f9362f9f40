#include "fraccut/gf2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <utility>

namespace fraccut {

namespace {
constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }
}  // namespace

BitVector::BitVector(std::size_t n) : n_(n), words_(word_count(n), 0) {}

BitVector BitVector::from_string(const std::string& bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw std::invalid_argument("BitVector::from_string: character '" +
                                  std::string(1, bits[i]) + "' is not 0 or 1");
    }
  }
  return v;
}

BitVector BitVector::from_support(std::size_t n, const std::vector<int>& support) {
  BitVector v(n);
  for (int i : support) {
    if (i < 0 || static_cast<std::size_t>(i) >= n) {
      throw std::out_of_range("BitVector::from_support: index out of range");
    }
    if (v.get(static_cast<std::size_t>(i))) {
      throw std::invalid_argument("BitVector::from_support: duplicate index");
    }
    v.set(static_cast<std::size_t>(i), true);
  }
  return v;
}

void BitVector::check_index(std::size_t i) const {
  if (i >= n_) throw std::out_of_range("BitVector: index out of range");
}

bool BitVector::get(std::size_t i) const {
  check_index(i);
  return (words_[i / kWordBits] >> (i % kWordBits)) & 1u;
}

void BitVector::set(std::size_t i, bool value) {
  check_index(i);
  std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
  if (value) {
    words_[i / kWordBits] |= mask;
  } else {
    words_[i / kWordBits] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) {
  check_index(i);
  words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

void BitVector::xor_with(const BitVector& other) {
  if (other.n_ != n_) throw std::invalid_argument("BitVector::xor_with: length mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
}

std::size_t BitVector::weight() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

bool BitVector::is_zero() const {
  for (std::uint64_t w : words_) {
    if (w != 0) return false;
  }
  return true;
}

std::vector<int> BitVector::support() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word != 0) {
      int bit = std::countr_zero(word);
      out.push_back(static_cast<int>(w * kWordBits + static_cast<std::size_t>(bit)));
      word &= word - 1;
    }
  }
  return out;
}

std::string BitVector::to_string() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i) {
    if (get(i)) s[i] = '1';
  }
  return s;
}

bool BitVector::dot(const BitVector& a, const BitVector& b) {
  if (a.n_ != b.n_) throw std::invalid_argument("BitVector::dot: length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w) acc ^= a.words_[w] & b.words_[w];
  return (std::popcount(acc) & 1) != 0;
}

bool operator==(const BitVector& a, const BitVector& b) {
  return a.n_ == b.n_ && a.words_ == b.words_;
}

bool operator<(const BitVector& a, const BitVector& b) {
  std::size_t common_words = std::min(a.words_.size(), b.words_.size());
  for (std::size_t w = 0; w < common_words; ++w) {
    std::uint64_t diff = a.words_[w] ^ b.words_[w];
    if (diff != 0) {
      // The lowest differing bit is the earliest coordinate; the vector with
      // a 0 there sorts first.
      std::uint64_t lowest = diff & (~diff + 1);
      return (a.words_[w] & lowest) == 0;
    }
  }
  return a.n_ < b.n_;
}

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("BitMatrix: empty dimensions");
  rows_.assign(rows, BitVector(cols));
}

BitMatrix::BitMatrix(std::vector<BitVector> rows) {
  if (rows.empty()) throw std::invalid_argument("BitMatrix: no rows");
  cols_ = rows[0].size();
  if (cols_ == 0) throw std::invalid_argument("BitMatrix: zero-length rows");
  for (const BitVector& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("BitMatrix: ragged rows");
  }
  rows_ = std::move(rows);
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVector> vs;
  vs.reserve(rows.size());
  for (const std::string& s : rows) vs.push_back(BitVector::from_string(s));
  return BitMatrix(std::move(vs));
}

const BitVector& BitMatrix::row(std::size_t i) const {
  if (i >= rows_.size()) throw std::out_of_range("BitMatrix: row index out of range");
  return rows_[i];
}

BitVector& BitMatrix::row(std::size_t i) {
  if (i >= rows_.size()) throw std::out_of_range("BitMatrix: row index out of range");
  return rows_[i];
}

bool BitMatrix::get(std::size_t i, std::size_t j) const { return row(i).get(j); }

void BitMatrix::set(std::size_t i, std::size_t j, bool value) { row(i).set(j, value); }

void BitMatrix::append_row(const BitVector& r) {
  if (r.size() != cols_) throw std::invalid_argument("BitMatrix::append_row: length mismatch");
  rows_.push_back(r);
}

bool operator==(const BitMatrix& a, const BitMatrix& b) {
  return a.cols_ == b.cols_ && a.rows_ == b.rows_;
}

EchelonResult row_echelon(const BitMatrix& mat, const std::vector<int>& col_order) {
  if (col_order.size() != mat.cols()) {
    throw std::invalid_argument("row_echelon: col_order size mismatch");
  }
  {
    std::vector<bool> seen(mat.cols(), false);
    for (int c : col_order) {
      if (c < 0 || static_cast<std::size_t>(c) >= mat.cols() || seen[static_cast<std::size_t>(c)]) {
        throw std::invalid_argument("row_echelon: col_order is not a permutation");
      }
      seen[static_cast<std::size_t>(c)] = true;
    }
  }
  EchelonResult res{mat, 0, {}, {}};
  BitMatrix& a = res.echelon;
  std::size_t frontier = 0;
  for (int c : col_order) {
    if (frontier == a.rows()) break;
    std::size_t col = static_cast<std::size_t>(c);
    std::size_t pivot = frontier;
    while (pivot < a.rows() && !a.get(pivot, col)) ++pivot;
    if (pivot == a.rows()) continue;
    if (pivot != frontier) {
      std::swap(a.row(pivot), a.row(frontier));
      res.ops.push_back({RowOp::Kind::Swap, pivot, frontier});
    }
    for (std::size_t r = frontier + 1; r < a.rows(); ++r) {
      if (a.get(r, col)) {
        a.row(r).xor_with(a.row(frontier));
        res.ops.push_back({RowOp::Kind::AddTo, frontier, r});
      }
    }
    res.pivot_cols.push_back(col);
    ++frontier;
  }
  res.rank = frontier;
  return res;
}

EchelonResult row_echelon(const BitMatrix& mat) {
  std::vector<int> order(mat.cols());
  for (std::size_t j = 0; j < mat.cols(); ++j) order[j] = static_cast<int>(j);
  return row_echelon(mat, order);
}

std::size_t rank(const BitMatrix& mat) { return row_echelon(mat).rank; }

BitMatrix replay_ops(const BitMatrix& mat, const std::vector<RowOp>& ops) {
  BitMatrix out = mat;
  for (const RowOp& op : ops) {
    if (op.a >= out.rows() || op.b >= out.rows()) {
      throw std::out_of_range("replay_ops: row index out of range");
    }
    if (op.kind == RowOp::Kind::Swap) {
      std::swap(out.row(op.a), out.row(op.b));
    } else {
      if (op.a == op.b) throw std::invalid_argument("replay_ops: AddTo with equal rows");
      BitVector src = out.row(op.a);
      out.row(op.b).xor_with(src);
    }
  }
  return out;
}

bool in_row_space(const BitMatrix& mat, const BitVector& v) {
  if (v.size() != mat.cols()) throw std::invalid_argument("in_row_space: length mismatch");
  EchelonResult ech = row_echelon(mat);
  BitVector residue = v;
  for (std::size_t i = 0; i < ech.rank; ++i) {
    if (residue.get(ech.pivot_cols[i])) residue.xor_with(ech.echelon.row(i));
  }
  return residue.is_zero();
}

std::vector<BitVector> enumerate_codewords(const BitMatrix& mat, std::size_t cap) {
  EchelonResult ech = row_echelon(mat);
  std::size_t n = mat.cols();
  std::size_t dim = n - ech.rank;
  if (dim >= 63 || (std::size_t{1} << dim) > cap) {
    throw std::length_error("enumerate_codewords: 2^(n - rank) exceeds cap");
  }
  std::vector<bool> is_pivot(n, false);
  for (std::size_t c : ech.pivot_cols) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) free_cols.push_back(j);
  }
  std::vector<BitVector> out;
  out.reserve(std::size_t{1} << dim);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dim); ++mask) {
    BitVector x(n);
    for (std::size_t b = 0; b < dim; ++b) {
      if ((mask >> b) & 1u) x.set(free_cols[b], true);
    }
    // Echelon pivots descend in column order, so coordinates to the right of
    // each pivot are already fixed when that pivot is solved.
    for (std::size_t i = ech.rank; i-- > 0;) {
      bool parity = false;
      for (int j : ech.echelon.row(i).support()) {
        if (static_cast<std::size_t>(j) != ech.pivot_cols[i] && x.get(static_cast<std::size_t>(j))) {
          parity = !parity;
        }
      }
      x.set(ech.pivot_cols[i], parity);
    }
    out.push_back(std::move(x));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace fraccut
