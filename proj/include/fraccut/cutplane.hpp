#pragma once

#include <optional>

#include "fraccut/fracdist.hpp"

namespace fraccut {

// True when stacking h onto the parity-check matrix excludes p: some entry
// of p on the support of h strictly outweighs the rest of that support,
// i.e. 2 * max exceeds the support sum. The zero row never cuts.
bool cutting_condition(const RationalVector& p, const BitVector& h);

// Indices of the rows of h whose support meets supp(p), ascending. A
// cutting redundant row exists iff one exists over these rows alone, so
// searches restrict to them.
std::vector<int> support_row_set(const BitMatrix& h, const RationalVector& p);

// Echelon search for a cutting redundant row: restrict to support_row_set,
// order columns by descending p-entry with the heaviest column moved to the
// back (ties to the smaller index), run forward elimination and return the
// first echelon row that cuts p. Returns nothing when no echelon row cuts;
// p must be a nonzero point of the fundamental polytope.
std::optional<BitVector> search_redundant_row(const BitMatrix& h, const RationalVector& p);

// Reference search over every nonzero combination of support_row_set rows,
// ascending mask order. Requires |support_row_set| <= limit (and <= 62).
std::optional<BitVector> exhaustive_cut_search(const BitMatrix& h, const RationalVector& p,
                                               std::size_t limit);

// Copy of h with one redundant row appended; the row must be nonzero and of
// matching width. Rows from the GF(2) row space leave the code unchanged.
BitMatrix stack_row(const BitMatrix& h, const BitVector& row);

struct CutRecord {
  std::size_t iteration = 0;  // 1-based
  Rational d_frac_before;
  Rational d_frac_after;
  BitVector redundant_row;
  RationalVector target_vertex;
  std::size_t gamma_size_before = 0;
};

struct GreedyConfig {
  std::size_t max_rows = 0;
  std::optional<Rational> target_dfrac;
  // When the echelon search fails and support_row_set is at most this
  // large, fall back to trying every row combination.
  std::size_t exhaustive_fallback_limit = 20;
  // Discard a candidate row when the sweep after stacking it reports a
  // smaller fractional distance, and move on to the next target vertex.
  bool only_improving = false;
};

struct GreedyResult {
  BitMatrix strengthened;
  std::vector<CutRecord> log;
  FracDistReport first_sweep;
  FracDistReport last_sweep;
};

// Iteratively stack cutting redundant rows: sweep for the minimum-weight
// vertices, try them in lexicographic order until one admits a cutting row,
// stack it, and repeat until no vertex can be cut, max_rows is exhausted or
// target_dfrac is reached. Sweeps use the relaxed method with results
// cached across iterations.
GreedyResult greedy_improve(const BitMatrix& h, const GreedyConfig& cfg,
                            const SweepOptions& sweep = {});

}  // namespace fraccut
