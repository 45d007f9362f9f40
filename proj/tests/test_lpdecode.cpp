#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <stdexcept>

#include "fraccut/cutplane.hpp"
#include "fraccut/lpdecode.hpp"
#include "fraccut/polytope.hpp"

using namespace fraccut;

namespace {

const std::vector<std::string> kHammingRows = {"1011100", "1101010", "0111001"};
const std::vector<std::string> kHammingStarRows = {"1011100", "1101010", "0111001", "1010011",
                                                   "1100101", "0001111", "0110110"};

RationalVector cost_vector(const BitVector& received) {
  RationalVector cost(received.size(), rational(1));
  for (int j : received.support()) cost[static_cast<std::size_t>(j)] = rational(-1);
  return cost;
}

Rational dot(const RationalVector& a, const RationalVector& b) {
  Rational s = 0;
  for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
  return s;
}

bool is_binary(const RationalVector& v) {
  for (const Rational& x : v) {
    if (x != 0 && x != 1) return false;
  }
  return true;
}

BitVector to_bits(const RationalVector& v) {
  BitVector out(v.size());
  for (std::size_t j = 0; j < v.size(); ++j) out.set(j, v[j] == 1);
  return out;
}

// Structural checks every decode must satisfy, regardless of outcome.
void check_result(const BitMatrix& h, const BitVector& received, const DecodeResult& res) {
  REQUIRE(res.output.size() == h.cols());
  CHECK(in_fundamental_polytope(h, res.output));
  CHECK(res.objective == dot(cost_vector(received), res.output));
  if (res.status == DecodeResult::Status::Codeword) {
    REQUIRE(is_binary(res.output));
    BitVector word = to_bits(res.output);
    for (std::size_t i = 0; i < h.rows(); ++i) CHECK(!BitVector::dot(h.row(i), word));
  } else {
    CHECK(!is_binary(res.output));
  }
}

BitMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols,
                        std::size_t max_weight) {
  while (true) {
    BitMatrix m(rows, cols);
    bool any = false;
    for (std::size_t i = 0; i < rows; ++i) {
      std::size_t w = 1 + rng() % max_weight;
      for (std::size_t k = 0; k < w; ++k) m.set(i, rng() % cols, true);
      any = any || !m.row(i).is_zero();
    }
    if (any) return m;
  }
}

}  // namespace

TEST_CASE("an error-free word decodes to itself") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  DecodeResult res = lp_decode(h, BitVector(7));
  check_result(h, BitVector(7), res);
  CHECK(res.status == DecodeResult::Status::Codeword);
  CHECK(res.output == RationalVector(7, rational(0)));
  CHECK(res.objective == rational(0));
}

TEST_CASE("every received codeword is returned unchanged") {
  for (const auto& rows : {kHammingRows, kHammingStarRows}) {
    BitMatrix h = BitMatrix::from_strings(rows);
    for (const BitVector& c : enumerate_codewords(h, 1 << 7)) {
      DecodeResult res = lp_decode(h, c);
      check_result(h, c, res);
      REQUIRE(res.status == DecodeResult::Status::Codeword);
      CHECK(to_bits(res.output) == c);
      CHECK(res.objective == -Rational(static_cast<long>(c.weight())));
    }
  }
}

TEST_CASE("the strengthened matrix corrects every single bit flip") {
  BitMatrix hs = BitMatrix::from_strings(kHammingStarRows);
  RationalVector zero(7, rational(0));
  for (std::size_t j = 0; j < 7; ++j) {
    BitVector received(7);
    received.set(j, true);
    DecodeResult res = lp_decode(hs, received);
    check_result(hs, received, res);
    CHECK(res.status == DecodeResult::Status::Codeword);
    CHECK(res.output == zero);
  }
}

TEST_CASE("single flips on the weak matrix only tie the decoder at cost zero") {
  // With fractional distance 2 every nonzero vertex has cost at least
  // weight - 2 = 0 against a single flip, so the zero word is optimal but
  // shares the optimum with fractional vertices: correction is never
  // certified, it hinges on the pivot rule's tie-breaking.
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  for (std::size_t j = 0; j < 7; ++j) {
    BitVector received(7);
    received.set(j, true);
    DecodeResult res = lp_decode(h, received);
    check_result(h, received, res);
    CHECK(res.objective == rational(0));
  }
  // A tied fractional optimum against a flip of the last bit.
  RationalVector tied(7, rational(0));
  tied[1] = tied[2] = tied[3] = rational(1, 3);
  tied[6] = rational(1);
  CHECK(in_fundamental_polytope(h, tied));
  BitVector last(7);
  last.set(6, true);
  CHECK(dot(cost_vector(last), tied) == rational(0));
}

TEST_CASE("correction radius follows the fractional distance of each matrix") {
  BitMatrix base = BitMatrix::from_strings(kHammingRows);
  std::vector<BitMatrix> family = {base, stack_row(base, BitVector::from_string("1010011")),
                                   BitMatrix::from_strings(kHammingStarRows)};
  for (const BitMatrix& h : family) {
    FracDistReport rep = fractional_distance(h, Method::Relaxed);
    REQUIRE(rep.status == SweepStatus::Ok);
    long g = guaranteed_errors(rep.d_frac);
    RationalVector zero(h.cols(), rational(0));
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << h.cols()); ++mask) {
      if (static_cast<long>(std::popcount(mask)) > g) continue;
      BitVector received(h.cols());
      for (std::size_t j = 0; j < h.cols(); ++j) received.set(j, (mask >> j) & 1u);
      DecodeResult res = lp_decode(h, received);
      REQUIRE(res.status == DecodeResult::Status::Codeword);
      CHECK(res.output == zero);
    }
  }
}

TEST_CASE("lazy separation matches the fully materialized decoder") {
  std::mt19937 rng(630u);
  for (int trial = 0; trial < 30; ++trial) {
    BitMatrix h = random_matrix(rng, 3 + trial % 2, 6, 3);
    BitVector received(6);
    for (std::size_t j = 0; j < 6; ++j) received.set(j, rng() % 2 == 0);

    DecodeResult res = lp_decode(h, received);
    check_result(h, received, res);

    LpProblem full;
    full.n = h.cols();
    full.objective = cost_vector(received);
    full.lower.assign(h.cols(), rational(0));
    full.upper.assign(h.cols(), rational(1));
    for (const auto& [id, c] : fundamental_polytope(h).constraints) full.rows.push_back(c);
    LpOutcome oracle = solve_min(full);
    REQUIRE(oracle.status == LpOutcome::Status::Optimal);
    CHECK(res.objective == oracle.value);
    CHECK(in_fundamental_polytope(h, oracle.point));
  }
}

TEST_CASE("a reported codeword is maximum likelihood") {
  std::mt19937 rng(415u);
  int codewords_seen = 0;
  for (int trial = 0; trial < 40; ++trial) {
    BitMatrix h = random_matrix(rng, 3, 7, 3);
    BitVector received(7);
    for (std::size_t j = 0; j < 7; ++j) received.set(j, rng() % 4 == 0);
    DecodeResult res = lp_decode(h, received);
    check_result(h, received, res);
    if (res.status != DecodeResult::Status::Codeword) continue;
    ++codewords_seen;
    RationalVector cost = cost_vector(received);
    for (const BitVector& c : enumerate_codewords(h, 1 << 7)) {
      RationalVector cv(7, rational(0));
      for (int j : c.support()) cv[static_cast<std::size_t>(j)] = rational(1);
      CHECK(res.objective <= dot(cost, cv));
    }
  }
  CHECK(codewords_seen >= 10);
}

TEST_CASE("decoder input validation") {
  BitMatrix h = BitMatrix::from_strings(kHammingRows);
  CHECK_THROWS_AS(lp_decode(h, BitVector(6)), std::invalid_argument);
}

TEST_CASE("guaranteed correction counts") {
  CHECK(guaranteed_errors(rational(3)) == 1);
  CHECK(guaranteed_errors(rational(2)) == 0);
  CHECK(guaranteed_errors(rational(1)) == 0);
  CHECK(guaranteed_errors(rational(21, 8)) == 1);
  CHECK(guaranteed_errors(parse_rational("3.895")) == 1);
  CHECK(guaranteed_errors(rational(4)) == 1);
  CHECK(guaranteed_errors(rational(5)) == 2);
  CHECK(guaranteed_errors(rational(8)) == 3);
  CHECK(guaranteed_errors(rational(1, 3)) == 0);
  CHECK_THROWS_AS(guaranteed_errors(rational(0)), std::invalid_argument);
  CHECK_THROWS_AS(guaranteed_errors(rational(-3)), std::invalid_argument);
}
