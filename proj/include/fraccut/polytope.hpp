#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fraccut/gf2.hpp"
#include "fraccut/rational.hpp"

namespace fraccut {

enum class Relation { LessEq, Eq };

// One linear constraint sum(coeffs . f) rel rhs over n variables.
struct LinConstraint {
  RationalVector coeffs;
  Rational rhs;
  Relation rel = Relation::LessEq;
  std::vector<int> support;  // indices with nonzero coefficient, ascending

  Rational eval(const RationalVector& p) const;
  bool satisfied_by(const RationalVector& p) const;
};

LinConstraint make_constraint(RationalVector coeffs, Rational rhs,
                              Relation rel = Relation::LessEq);

// Identity of a constraint in the fixed global enumeration: parity
// constraints first (rows in order, odd subsets of each row's support in
// ascending mask order), then box_lower 1..n, then box_upper 1..n.
// For Parity, bit b of `mask` selects the b-th smallest support coordinate
// of the row. global_index is 1-based.
struct ConstraintId {
  enum class Kind { Parity, BoxLower, BoxUpper };
  Kind kind = Kind::Parity;
  int row = -1;
  std::uint64_t mask = 0;
  int var = -1;
  long global_index = 0;

  std::string to_string() const;
};

struct ConstraintSystem {
  std::size_t n = 0;
  std::vector<std::pair<ConstraintId, LinConstraint>> constraints;
  // Positions into `constraints`. A constraint is active when its hyperplane
  // passes through the origin (rhs 0 after normalization): parity subsets of
  // size 1 and the box_lower constraints.
  std::vector<std::size_t> active;
  std::vector<std::size_t> inactive;
};

// The odd-subset description of the convex hull of even-weight configurations
// on the support of t: for each odd S within the support,
//   sum_{j in S} f_j - sum_{j in supp(t) \ S} f_j <= |S| - 1.
// Returned in ascending mask order; ConstraintId.row is taken from row_index
// and global_index numbers the returned sequence from 1.
std::vector<std::pair<ConstraintId, LinConstraint>> parity_constraints(
    const BitVector& t, int row_index = 0);

// Intersection of all rows' parity constraint sets with the unit box.
// Duplicate rows are emitted once (identical rows generate identical
// constraint sets and nothing else collides); zero rows generate nothing.
ConstraintSystem fundamental_polytope(const BitMatrix& h);

// Active constraints of fundamental_polytope(h) plus box_upper, with the
// global indices they carry in the full enumeration.
ConstraintSystem fundamental_cone(const BitMatrix& h);

bool contains(const ConstraintSystem& sys, const RationalVector& p);

// Most violated odd-subset constraint of row t at p, if any: start from
// {j : p_j > 1/2}; if that set is even, flip the element whose p_j is
// closest to 1/2 (ties to the smallest index). Exact comparison throughout.
std::optional<std::pair<ConstraintId, LinConstraint>> most_violated_parity(
    const BitVector& t, const RationalVector& p, int row_index = 0);

// Membership tests that avoid materializing the exponential constraint set.
bool in_parity_polytope(const BitVector& t, const RationalVector& p);
bool in_fundamental_polytope(const BitMatrix& h, const RationalVector& p);

// Constraint of odd subset `mask` of row t (bit b of mask selects the b-th
// smallest support coordinate), optionally as an equality for restricting a
// feasible set to the corresponding facet.
LinConstraint parity_subset_constraint(const BitVector& t, std::uint64_t mask,
                                       Relation rel = Relation::LessEq);

// True at position i when row i equals an earlier row. Constraint
// generation emits each repeated row once.
std::vector<bool> duplicate_row_flags(const BitMatrix& h);

}  // namespace fraccut
