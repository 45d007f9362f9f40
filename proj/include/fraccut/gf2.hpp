#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fraccut {

// Fixed-length vector over GF(2), packed 64 bits per word.
class BitVector {
 public:
  BitVector() = default;
  explicit BitVector(std::size_t n);

  // "1011100" with the leftmost character as coordinate 0.
  static BitVector from_string(const std::string& bits);
  // support holds 0-based coordinates; duplicates and out-of-range throw.
  static BitVector from_support(std::size_t n, const std::vector<int>& support);

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool value);
  void flip(std::size_t i);

  // this ^= other; lengths must match.
  void xor_with(const BitVector& other);

  std::size_t weight() const;
  bool is_zero() const;
  std::vector<int> support() const;  // ascending 0-based coordinates
  std::string to_string() const;

  // <a, b> over GF(2); lengths must match.
  static bool dot(const BitVector& a, const BitVector& b);

  friend bool operator==(const BitVector& a, const BitVector& b);
  friend bool operator!=(const BitVector& a, const BitVector& b) { return !(a == b); }
  // Lexicographic by coordinate, position 0 most significant.
  friend bool operator<(const BitVector& a, const BitVector& b);

 private:
  void check_index(std::size_t i) const;
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// Dense binary matrix; rows all share one length. Empty matrices are rejected.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  explicit BitMatrix(std::vector<BitVector> rows);
  static BitMatrix from_strings(const std::vector<std::string>& rows);

  std::size_t rows() const { return rows_.size(); }
  std::size_t cols() const { return cols_; }
  const BitVector& row(std::size_t i) const;
  BitVector& row(std::size_t i);
  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool value);
  void append_row(const BitVector& r);

  friend bool operator==(const BitMatrix& a, const BitMatrix& b);

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

// Elementary row operation over GF(2). AddTo means row[dst] ^= row[src].
struct RowOp {
  enum class Kind { Swap, AddTo };
  Kind kind;
  std::size_t a;
  std::size_t b;
};

struct EchelonResult {
  BitMatrix echelon;
  std::size_t rank = 0;
  // Pivot column (in original coordinates) of each of the first `rank` rows.
  std::vector<std::size_t> pivot_cols;
  // Replaying ops over the input reproduces `echelon` exactly.
  std::vector<RowOp> ops;
};

// Forward elimination only: scan columns in the order given by col_order,
// pick the first row at or below the frontier with a 1 in that column, swap
// it up, clear the column below. Rows above the pivot are left untouched, so
// every echelon row is a sum of original rows with indices <= its position
// after the recorded swaps.
EchelonResult row_echelon(const BitMatrix& mat, const std::vector<int>& col_order);
EchelonResult row_echelon(const BitMatrix& mat);  // natural column order

std::size_t rank(const BitMatrix& mat);

BitMatrix replay_ops(const BitMatrix& mat, const std::vector<RowOp>& ops);

bool in_row_space(const BitMatrix& mat, const BitVector& v);

// All x with mat * x = 0, sorted lexicographically. Requires
// 2^(cols - rank) <= cap; throws std::length_error otherwise.
std::vector<BitVector> enumerate_codewords(const BitMatrix& mat, std::size_t cap);

}  // namespace fraccut
