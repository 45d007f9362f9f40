#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fraccut/lp.hpp"

namespace fraccut {

// Full sweeps minimize over the facet intersected with the whole fundamental
// polytope; Relaxed sweeps use the fundamental cone restricted to the unit
// box instead. Both yield the same minimum over inactive facets; the relaxed
// system is polynomial-sized.
enum class Method { Full, Relaxed };

struct FacetResult {
  enum class Status { Value, Infeasible, ZeroSkipped };
  ConstraintId id;
  Status status = Status::Infeasible;
  Rational value;
  RationalVector point;
};

enum class SweepStatus { Ok, NoFractionalVertex };

struct SweepOptions {
  // Solve every inactive facet LP instead of skipping facets whose lower
  // bound already exceeds the best value seen.
  bool exhaustive = false;
  int jobs = 1;
};

struct FracDistReport {
  SweepStatus status = SweepStatus::NoFractionalVertex;
  Rational d_frac;  // meaningful only when status == Ok
  Method method = Method::Relaxed;
  // Minimum-weight facet optima: for every facet whose minimum equals
  // d_frac, the vertex its LP returns plus the lexicographically smallest
  // point of that facet's optimal face; deduplicated and sorted
  // lexicographically. Relaxed candidates are kept only if they satisfy
  // every polytope constraint, which filters cone points lying outside it.
  // Two probes per facet still see one vertex of a tie each, so the set is
  // the distinct minimum-weight vertices as discovered, not a certified
  // enumeration.
  std::vector<RationalVector> gamma;
  // Ascending global index. Pruned sweeps report exactly the facets whose
  // lower bound does not exceed the final d_frac, which makes the list
  // independent of batch size and thread count. An engine reusing cached
  // values after append_row holds tighter bounds, so it may prove more
  // facets irrelevant and list fewer of them than a fresh sweep; d_frac and
  // gamma never depend on the cache. Exhaustive sweeps always list every
  // facet.
  std::vector<FacetResult> per_facet;
  std::size_t facet_lps_solved = 0;
  std::size_t facets_skipped_active = 0;
  std::size_t facets_pruned = 0;
};

// Facet sweep with result caching across row appends. Appending a row only
// shrinks each facet's feasible region, so previously computed facet minima
// remain valid lower bounds and infeasible facets stay infeasible; the
// greedy strengthening loop exploits this by reusing one engine.
class FracDistEngine {
 public:
  FracDistEngine(BitMatrix h, Method method, SweepOptions opts = {});

  const BitMatrix& matrix() const { return h_; }
  void append_row(const BitVector& row);
  FracDistReport evaluate();

 private:
  struct FacetKey {
    int kind;
    int row;
    std::uint64_t mask;
    int var;
    bool operator==(const FacetKey&) const = default;
  };
  struct FacetKeyHash {
    std::size_t operator()(const FacetKey& k) const;
  };
  struct CacheEntry {
    bool infeasible = false;
    Rational value;
  };
  struct Task;
  struct SolveOutcome;
  struct FacetLp;

  static FacetKey key_of(const ConstraintId& id);
  void rebuild_pools();
  FacetLp facet_lp(const ConstraintId& id) const;
  LpOutcome lazy_min(FacetLp& state) const;
  SolveOutcome solve_facet(const ConstraintId& id) const;
  SolveOutcome solve_facet_lexmin(const ConstraintId& id, const Rational& value) const;
  LinConstraint facet_equation(const ConstraintId& id) const;

  BitMatrix h_;
  Method method_;
  SweepOptions opts_;
  std::vector<bool> dup_;
  std::vector<std::uint64_t> row_offset_;   // parity block start per row
  std::uint64_t parity_total_ = 0;
  std::vector<LinConstraint> active_pool_;  // singleton constraints, global order
  std::vector<std::vector<std::size_t>> row_pool_slots_;
  std::unordered_map<FacetKey, CacheEntry, FacetKeyHash> cache_;

  friend FacetResult facet_min_weight(const BitMatrix& h, const ConstraintId& facet,
                                      bool relaxed);
};

FracDistReport fractional_distance(const BitMatrix& h, Method method,
                                   const SweepOptions& opts = {});

// Minimum of the weight over one facet of the fundamental polytope, by
// global constraint id. Active facets have minimum zero (the origin lies on
// them); requesting one with relaxed=true is rejected since the relaxation
// argument only covers inactive facets.
FacetResult facet_min_weight(const BitMatrix& h, const ConstraintId& facet, bool relaxed);

std::vector<RationalVector> gamma_set(const BitMatrix& h);

}  // namespace fraccut
