#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "fraccut/bscsim.hpp"
#include "fraccut/cutplane.hpp"
#include "fraccut/gf2.hpp"

namespace fraccut {

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Sparse adjacency description of a binary matrix in the alist layout used
// by code archives: header "n m", maximum degrees, per-column and per-row
// degree lists, then one index line per column and per row (1-based).
// Index lines may be zero-padded up to the maximum degree on input; output
// is never padded except that an empty list, which cannot be a blank line,
// is written as a lone zero.
struct AlistDocument {
  std::size_t n = 0;
  std::size_t m = 0;
  std::size_t max_col_deg = 0;
  std::size_t max_row_deg = 0;
  std::vector<std::size_t> col_degs;
  std::vector<std::size_t> row_degs;
  std::vector<std::vector<std::size_t>> col_lists;
  std::vector<std::vector<std::size_t>> row_lists;
};

AlistDocument alist_from_matrix(const BitMatrix& h);
// Cross-validates the column and row lists against each other.
BitMatrix matrix_from_alist(const AlistDocument& doc);

AlistDocument parse_alist(std::istream& in);
BitMatrix read_alist_matrix(std::istream& in);
void write_alist(std::ostream& out, const BitMatrix& h);

// Dense text form: header "m n" (rows first), then m lines of n characters
// over {0,1}; spaces within a row are tolerated on input.
BitMatrix parse_dense(std::istream& in);
void write_dense(std::ostream& out, const BitMatrix& h);

enum class MatrixFormat { Auto, Alist, Dense };

// Auto dispatches on extension: ".alist" reads the sparse form, anything
// else the dense form.
BitMatrix load_matrix(const std::string& path, MatrixFormat format = MatrixFormat::Auto);
void store_matrix(const std::string& path, const BitMatrix& h,
                  MatrixFormat format = MatrixFormat::Auto);

void write_cut_log(std::ostream& out, const std::vector<CutRecord>& log);
std::string cut_record_line(const CutRecord& rec);

// Header crossover,trials,block_errors,bler,seed; bler and crossover are
// printed to six significant digits.
void write_sim_csv(std::ostream& out, const std::vector<SimPoint>& points);

}  // namespace fraccut
