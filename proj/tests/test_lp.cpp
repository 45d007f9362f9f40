#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <stdexcept>

#include "fraccut/lp.hpp"
#include "oracle.hpp"

using namespace fraccut;
using fraccut::testing::enumerate_vertices;
using fraccut::testing::oracle_min;

namespace {

LpProblem box_problem(std::size_t n) {
  LpProblem prob;
  prob.n = n;
  prob.objective.assign(n, rational(0));
  prob.lower.assign(n, rational(0));
  prob.upper.assign(n, rational(1));
  return prob;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s(0);
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

bool feasible(const LpProblem& prob, const RationalVector& x) {
  for (std::size_t j = 0; j < prob.n; ++j) {
    if (x[j] < prob.lower[j] || x[j] > prob.upper[j]) return false;
  }
  return std::all_of(prob.rows.begin(), prob.rows.end(),
                     [&](const LinConstraint& c) { return c.satisfied_by(x); });
}

}  // namespace

TEST_CASE("bounds alone decide the trivial problem") {
  LpProblem prob = box_problem(2);
  prob.lower = {rational(2), rational(-1)};
  prob.upper = {rational(5), rational(4)};
  prob.objective = {rational(1), rational(-2)};
  LpOutcome out = solve_min(prob);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == rational(-6));
  CHECK(out.point == RationalVector{rational(2), rational(4)});
}

TEST_CASE("a binding row moves the optimum off the box corner") {
  LpProblem prob = box_problem(2);
  prob.upper = {rational(2), rational(2)};
  prob.objective = {rational(-1), rational(-1)};
  prob.rows.push_back(make_constraint({rational(1), rational(1)}, rational(3)));
  LpOutcome out = solve_min(prob);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == rational(-3));
  CHECK(dot(prob.rows[0].coeffs, out.point) == rational(3));
  CHECK(feasible(prob, out.point));
}

TEST_CASE("equality rows restrict the feasible set") {
  LpProblem prob = box_problem(2);
  prob.objective = {rational(1), rational(0)};
  prob.rows.push_back(
      make_constraint({rational(1), rational(1)}, rational(3, 2), Relation::Eq));
  LpOutcome out = solve_min(prob);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == rational(1, 2));
  CHECK(out.point == RationalVector{rational(1, 2), rational(1)});
}

TEST_CASE("infeasibility is detected") {
  LpProblem leq = box_problem(2);
  leq.rows.push_back(make_constraint({rational(1), rational(1)}, rational(-1)));
  CHECK(solve_min(leq).status == LpOutcome::Status::Infeasible);

  LpProblem eq = box_problem(2);
  eq.rows.push_back(make_constraint({rational(1), rational(1)}, rational(3), Relation::Eq));
  CHECK(solve_min(eq).status == LpOutcome::Status::Infeasible);
}

TEST_CASE("redundant and empty rows are tolerated") {
  LpProblem prob = box_problem(3);
  prob.objective = {rational(1), rational(1), rational(1)};
  LinConstraint row = make_constraint({rational(1), rational(1), rational(0)}, rational(1),
                                      Relation::Eq);
  prob.rows.push_back(row);
  prob.rows.push_back(row);  // duplicate equality: phase 1 must drop one
  prob.rows.push_back(make_constraint({rational(0), rational(0), rational(0)}, rational(0)));
  LpOutcome out = solve_min(prob);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.value == rational(1));
}

TEST_CASE("fixed variables stay put") {
  LpProblem prob = box_problem(3);
  prob.lower[1] = prob.upper[1] = rational(1, 3);
  prob.objective = {rational(1), rational(-1), rational(2)};
  LpOutcome out = solve_min(prob);
  REQUIRE(out.status == LpOutcome::Status::Optimal);
  CHECK(out.point[1] == rational(1, 3));
  CHECK(out.value == rational(-1, 3));
}

TEST_CASE("validation rejects malformed problems") {
  LpProblem empty;
  CHECK_THROWS_AS(solve_min(empty), std::invalid_argument);
  LpProblem bad = box_problem(2);
  bad.lower[0] = rational(2);  // above the upper bound
  CHECK_THROWS_AS(solve_min(bad), std::invalid_argument);
  LpProblem ragged = box_problem(2);
  ragged.rows.push_back(make_constraint({rational(1)}, rational(0)));
  CHECK_THROWS_AS(solve_min(ragged), std::invalid_argument);
}

TEST_CASE("repeated solves are bitwise identical") {
  LpProblem prob = box_problem(3);
  prob.objective = {rational(-1), rational(2), rational(-1)};
  prob.rows.push_back(make_constraint({rational(1), rational(1), rational(1)}, rational(2)));
  prob.rows.push_back(make_constraint({rational(1), rational(-1), rational(0)}, rational(0)));
  LpOutcome a = solve_min(prob);
  LpOutcome b = solve_min(prob);
  REQUIRE(a.status == LpOutcome::Status::Optimal);
  CHECK(a.value == b.value);
  CHECK(a.point == b.point);
}

TEST_CASE("random problems agree with vertex enumeration") {
  std::mt19937 rng(101);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::uniform_int_distribution<int> den(1, 2);
  std::uniform_int_distribution<int> rhs_num(-4, 6);
  std::uniform_int_distribution<int> obj(-5, 5);
  int optimal_seen = 0, infeasible_seen = 0;

  for (int trial = 0; trial < 100; ++trial) {
    std::size_t n = 2 + trial % 4;
    if (trial % 17 == 0) n = 6;
    LpProblem prob;
    prob.n = n;
    std::size_t eqs = 0;
    for (std::size_t j = 0; j < n; ++j) {
      long lo = -(static_cast<long>(rng() % 3));
      long span = (trial % 10 == 9) ? 0 : 1 + rng() % 4;
      prob.lower.push_back(rational(lo));
      prob.upper.push_back(rational(lo + span));
      prob.objective.push_back(rational(obj(rng)));
    }
    std::size_t rows = 1 + rng() % 6;
    for (std::size_t i = 0; i < rows; ++i) {
      RationalVector coeffs(n);
      bool nonzero = false;
      for (std::size_t j = 0; j < n; ++j) {
        coeffs[j] = rational(coef(rng), den(rng));
        nonzero = nonzero || coeffs[j] != 0;
      }
      if (!nonzero) coeffs[0] = rational(1);
      Relation rel = (rng() % 7 == 0 && eqs + 1 < n) ? Relation::Eq : Relation::LessEq;
      if (rel == Relation::Eq) ++eqs;
      prob.rows.push_back(make_constraint(coeffs, rational(rhs_num(rng), den(rng)), rel));
    }

    LpOutcome out = solve_min(prob);
    auto expect = oracle_min(prob);
    if (!expect) {
      CHECK(out.status == LpOutcome::Status::Infeasible);
      ++infeasible_seen;
      continue;
    }
    REQUIRE(out.status == LpOutcome::Status::Optimal);
    CHECK(out.value == *expect);
    CHECK(feasible(prob, out.point));
    CHECK(dot(prob.objective, out.point) == out.value);
    // The simplex answer is a basic feasible solution, hence a vertex.
    std::vector<RationalVector> verts = enumerate_vertices(prob);
    CHECK(std::count(verts.begin(), verts.end(), out.point) == 1);
    ++optimal_seen;
  }
  // The generator must exercise both outcomes.
  CHECK(optimal_seen >= 30);
  CHECK(infeasible_seen >= 5);
}
