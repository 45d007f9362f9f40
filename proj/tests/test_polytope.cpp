#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <bit>
#include <random>
#include <stdexcept>

#include "fraccut/polytope.hpp"
#include "fraccut/rational.hpp"

using namespace fraccut;

namespace {

const std::vector<std::string> kHammingRows = {"1011100", "1101010", "0111001"};
const std::vector<std::string> kHammingStarRows = {"1011100", "1101010", "0111001", "1010011",
                                                   "1100101", "0001111", "0110110"};

RationalVector point(std::initializer_list<Rational> vals) { return RationalVector(vals); }

Rational third() { return rational(2, 3); }

// The §III-C style target vertex (0, 2/3, 2/3, 2/3, 0, 0, 0).
RationalVector hamming_vertex() {
  return point({rational(0), third(), third(), third(), rational(0), rational(0), rational(0)});
}

}  // namespace

TEST_CASE("parity constraints of a full weight-3 row") {
  BitVector t = BitVector::from_string("111");
  auto cons = parity_constraints(t);
  REQUIRE(cons.size() == 4);

  // Ascending odd masks: {0}, {1}, {2}, {0,1,2}.
  CHECK(cons[0].first.mask == 1);
  CHECK(cons[1].first.mask == 2);
  CHECK(cons[2].first.mask == 4);
  CHECK(cons[3].first.mask == 7);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(cons[i].first.global_index == static_cast<long>(i + 1));
    CHECK(cons[i].first.kind == ConstraintId::Kind::Parity);
    CHECK(cons[i].second.rel == Relation::LessEq);
  }

  CHECK(cons[0].second.coeffs == point({rational(1), rational(-1), rational(-1)}));
  CHECK(cons[0].second.rhs == rational(0));
  CHECK(cons[1].second.coeffs == point({rational(-1), rational(1), rational(-1)}));
  CHECK(cons[2].second.coeffs == point({rational(-1), rational(-1), rational(1)}));
  CHECK(cons[3].second.coeffs == point({rational(1), rational(1), rational(1)}));
  CHECK(cons[3].second.rhs == rational(2));
}

TEST_CASE("parity constraints follow the support embedding") {
  BitVector t = BitVector::from_string("01011");  // support {1, 3, 4}
  auto cons = parity_constraints(t, 5);
  REQUIRE(cons.size() == 4);
  // Mask bit b selects the b-th smallest support coordinate.
  CHECK(cons[1].first.mask == 2);
  CHECK(cons[1].second.coeffs ==
        point({rational(0), rational(-1), rational(0), rational(1), rational(-1)}));
  CHECK(cons[1].second.support == std::vector<int>{1, 3, 4});
  CHECK(cons[1].first.row == 5);
  // Zero coordinates never enter a constraint.
  for (const auto& [id, c] : cons) {
    CHECK(c.coeffs[0] == rational(0));
    CHECK(c.coeffs[2] == rational(0));
  }
}

TEST_CASE("a zero row constrains nothing") {
  CHECK(parity_constraints(BitVector(4)).empty());
}

TEST_CASE("fundamental polytope of the Hamming matrix") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  ConstraintSystem sys = fundamental_polytope(h);
  CHECK(sys.n == 7);
  // 3 rows of weight 4 contribute 2^3 odd subsets each, plus 14 box rows.
  REQUIRE(sys.constraints.size() == 24 + 14);
  CHECK(sys.active.size() == 12 + 7);
  CHECK(sys.inactive.size() == 12 + 7);

  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    CHECK(sys.constraints[i].first.global_index == static_cast<long>(i + 1));
  }
  // Active exactly when the hyperplane passes through the origin.
  for (std::size_t idx : sys.active) {
    const ConstraintId& id = sys.constraints[idx].first;
    bool singleton = id.kind == ConstraintId::Kind::Parity && std::popcount(id.mask) == 1;
    CHECK((singleton || id.kind == ConstraintId::Kind::BoxLower));
    CHECK(sys.constraints[idx].second.rhs == rational(0));
  }
  for (std::size_t idx : sys.inactive) {
    const ConstraintId& id = sys.constraints[idx].first;
    bool wide = id.kind == ConstraintId::Kind::Parity && std::popcount(id.mask) >= 3;
    CHECK((wide || id.kind == ConstraintId::Kind::BoxUpper));
    CHECK(sys.constraints[idx].second.rhs != rational(0));
  }

  // Box constraints sit after all parity constraints, lower before upper.
  const auto& box_low = sys.constraints[24];
  CHECK(box_low.first.kind == ConstraintId::Kind::BoxLower);
  CHECK(box_low.first.var == 0);
  CHECK(box_low.second.coeffs[0] == rational(-1));
  CHECK(box_low.second.rhs == rational(0));
  const auto& box_up = sys.constraints[31];
  CHECK(box_up.first.kind == ConstraintId::Kind::BoxUpper);
  CHECK(box_up.second.coeffs[0] == rational(1));
  CHECK(box_up.second.rhs == rational(1));
}

TEST_CASE("duplicate rows contribute their constraints once") {
  BitMatrix twice = BitMatrix::from_strings({"1011100", "1011100"});
  ConstraintSystem sys = fundamental_polytope(twice);
  CHECK(sys.constraints.size() == 8 + 14);
  CHECK(duplicate_row_flags(twice) == std::vector<bool>{false, true});
  BitMatrix h = BitMatrix::from_strings(kHammingStarRows);
  CHECK(duplicate_row_flags(h) == std::vector<bool>(7, false));
}

TEST_CASE("zero rows generate no parity constraints") {
  BitMatrix z = BitMatrix::from_strings({"0000", "1100"});
  ConstraintSystem sys = fundamental_polytope(z);
  CHECK(sys.constraints.size() == 2 + 8);  // weight-2 row: masks {0}, {1}; box: 8
}

TEST_CASE("fundamental cone keeps the active constraints with their indices") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  ConstraintSystem poly = fundamental_polytope(h);
  ConstraintSystem cone = fundamental_cone(h);
  CHECK(cone.n == 7);
  REQUIRE(cone.constraints.size() == 12 + 14);

  // Every cone constraint matches the same-identity polytope constraint.
  for (const auto& [id, c] : cone.constraints) {
    bool found = false;
    for (const auto& [pid, pc] : poly.constraints) {
      if (pid.kind == id.kind && pid.row == id.row && pid.mask == id.mask && pid.var == id.var) {
        found = true;
        CHECK(pid.global_index == id.global_index);
        CHECK(pc.coeffs == c.coeffs);
        CHECK(pc.rhs == c.rhs);
      }
    }
    CHECK(found);
  }
  // Actives: the 12 parity singletons and 7 lower bounds; uppers inactive.
  CHECK(cone.active.size() == 19);
  CHECK(cone.inactive.size() == 7);
}

TEST_CASE("H* systems have the expected sizes") {
  BitMatrix hs = BitMatrix::from_strings(kHammingStarRows);
  ConstraintSystem poly = fundamental_polytope(hs);
  CHECK(poly.constraints.size() == 7 * 8 + 14);
  CHECK(poly.active.size() == 7 * 4 + 7);
  ConstraintSystem cone = fundamental_cone(hs);
  CHECK(cone.constraints.size() == 7 * 4 + 14);
}

TEST_CASE("membership at the fractional vertex and after the cut") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  RationalVector p = hamming_vertex();
  CHECK(contains(fundamental_polytope(h), p));
  CHECK(contains(fundamental_cone(h), p));
  CHECK(in_fundamental_polytope(h, p));

  BitMatrix stacked = h;
  stacked.append_row(BitVector::from_string("1010011"));
  CHECK_FALSE(in_fundamental_polytope(stacked, p));
  CHECK_FALSE(contains(fundamental_polytope(stacked), p));

  // Codewords always stay inside.
  RationalVector cw =
      point({rational(1), rational(0), rational(1), rational(0), rational(0), rational(1),
             rational(1)});  // 1010011 itself is a codeword of H
  CHECK(in_fundamental_polytope(h, cw));
  CHECK(in_fundamental_polytope(stacked, cw));
}

TEST_CASE("lazy membership agrees with the materialized system") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  ConstraintSystem sys = fundamental_polytope(h);
  std::mt19937 rng(23);
  std::uniform_int_distribution<int> num(0, 6);
  std::uniform_int_distribution<int> den(1, 6);
  for (int trial = 0; trial < 300; ++trial) {
    RationalVector p(7);
    for (std::size_t j = 0; j < 7; ++j) {
      Rational q = rational(num(rng), den(rng));
      p[j] = q > 1 ? rational(1) : q;
    }
    CHECK(in_fundamental_polytope(h, p) == contains(sys, p));
  }
}

TEST_CASE("most violated parity constraint maximizes the violation") {
  std::mt19937 rng(29);
  std::uniform_int_distribution<int> num(-1, 7);
  std::uniform_int_distribution<int> den(1, 5);
  for (int trial = 0; trial < 400; ++trial) {
    std::size_t n = 2 + rng() % 5;
    BitVector t(n);
    for (std::size_t j = 0; j < n; ++j) t.set(j, rng() % 2);
    if (t.is_zero()) t.set(rng() % n, true);
    RationalVector p(n);
    for (std::size_t j = 0; j < n; ++j) {
      Rational q = rational(num(rng), den(rng));
      p[j] = q < 0 ? rational(0) : (q > 1 ? rational(1) : q);
    }

    Rational worst(0);
    bool any = false;
    for (const auto& [id, c] : parity_constraints(t)) {
      Rational gap = c.eval(p) - c.rhs;
      if (gap > worst) {
        worst = gap;
        any = true;
      }
    }
    auto got = most_violated_parity(t, p);
    CHECK(got.has_value() == any);
    if (got) {
      CHECK(got->second.eval(p) - got->second.rhs == worst);
      CHECK(got->first.row == 0);
    }
    CHECK(in_parity_polytope(t, p) == !any);
  }
}

TEST_CASE("most violated parity handles hand cases") {
  BitVector t = BitVector::from_string("1011100");
  RationalVector p = point({rational(9, 10), rational(0), rational(9, 10), rational(9, 10),
                            rational(1, 5), rational(0), rational(0)});
  auto hit = most_violated_parity(t, p);
  REQUIRE(hit.has_value());
  CHECK(hit->first.mask == 7);  // S = {0, 2, 3}, the three largest coordinates
  CHECK(hit->second.eval(p) == rational(5, 2));

  // Even majority set: the coordinate closest to 1/2 flips in (index 3).
  RationalVector q = point({rational(9, 10), rational(0), rational(9, 10), rational(9, 20),
                            rational(1, 20), rational(0), rational(0)});
  auto fixed = most_violated_parity(t, q);
  REQUIRE(fixed.has_value());
  CHECK(fixed->first.mask == 7);

  // Codeword pattern on the support: inside the parity polytope.
  RationalVector cw = point({rational(1), rational(0), rational(1), rational(0), rational(0),
                             rational(0), rational(0)});
  CHECK_FALSE(most_violated_parity(t, cw).has_value());
  CHECK(in_parity_polytope(t, cw));
}

TEST_CASE("subset constraint helper validates masks") {
  BitVector t = BitVector::from_string("1011100");
  LinConstraint eq = parity_subset_constraint(t, 7, Relation::Eq);
  CHECK(eq.rel == Relation::Eq);
  CHECK(eq.rhs == rational(2));
  CHECK(eq.coeffs[0] == rational(1));
  CHECK(eq.coeffs[4] == rational(-1));
  CHECK_THROWS_AS(parity_subset_constraint(t, 0), std::invalid_argument);
  CHECK_THROWS_AS(parity_subset_constraint(t, 3), std::invalid_argument);
  CHECK_THROWS_AS(parity_subset_constraint(t, 16), std::invalid_argument);
}

TEST_CASE("constraint identities render readably") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  ConstraintSystem sys = fundamental_polytope(h);
  CHECK(sys.constraints[7].first.to_string() == "[8] parity(row=1,S={1,2,3})");
  CHECK(sys.constraints[24].first.to_string() == "[25] box_lower(1)");
  CHECK(sys.constraints[37].first.to_string() == "[38] box_upper(7)");
}
