#pragma once

#include <vector>

#include "fraccut/polytope.hpp"
#include "fraccut/rational.hpp"

namespace fraccut {

// Minimize objective . x subject to the rows and the finite box
// lower <= x <= upper. Every variable must carry both bounds; problems
// that need a ray live elsewhere (the cone sweeps always add a facet
// equation that bounds them).
struct LpProblem {
  std::size_t n = 0;
  RationalVector objective;
  std::vector<LinConstraint> rows;
  RationalVector lower;
  RationalVector upper;
};

struct LpOutcome {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  RationalVector point;  // a vertex of the feasible region when Optimal
  Rational value;
};

// Two-phase primal simplex over exact rationals with bounded variables.
// Pivot selection is Bland's rule (smallest eligible index enters, smallest
// basic variable index leaves on ratio ties), so runs are deterministic and
// cycling is impossible. The returned point is a basic feasible solution,
// hence a vertex of the feasible region.
LpOutcome solve_min(const LpProblem& prob);

}  // namespace fraccut
