#include "fraccut/polytope.hpp"

#include <bit>
#include <stdexcept>

namespace fraccut {

namespace {

constexpr std::size_t kMaxMaterializedConstraints = std::size_t{1} << 22;

void check_point_size(std::size_t have, std::size_t want, const char* who) {
  if (have != want) throw std::invalid_argument(std::string(who) + ": point length mismatch");
}

}  // namespace

Rational LinConstraint::eval(const RationalVector& p) const {
  check_point_size(p.size(), coeffs.size(), "LinConstraint::eval");
  Rational acc = 0;
  for (int j : support) acc += coeffs[static_cast<std::size_t>(j)] * p[static_cast<std::size_t>(j)];
  return acc;
}

bool LinConstraint::satisfied_by(const RationalVector& p) const {
  Rational lhs = eval(p);
  return rel == Relation::Eq ? lhs == rhs : lhs <= rhs;
}

LinConstraint make_constraint(RationalVector coeffs, Rational rhs, Relation rel) {
  LinConstraint c{std::move(coeffs), std::move(rhs), rel, {}};
  for (std::size_t j = 0; j < c.coeffs.size(); ++j) {
    if (c.coeffs[j] != 0) c.support.push_back(static_cast<int>(j));
  }
  return c;
}

std::string ConstraintId::to_string() const {
  switch (kind) {
    case Kind::BoxLower:
      return "[" + std::to_string(global_index) + "] box_lower(" + std::to_string(var + 1) + ")";
    case Kind::BoxUpper:
      return "[" + std::to_string(global_index) + "] box_upper(" + std::to_string(var + 1) + ")";
    case Kind::Parity:
      break;
  }
  std::string s = "[" + std::to_string(global_index) + "] parity(row=" +
                  std::to_string(row + 1) + ",S={";
  bool first = true;
  int bit = 0;
  for (std::uint64_t m = mask; m != 0; m >>= 1, ++bit) {
    if (m & 1u) {
      if (!first) s += ",";
      s += std::to_string(bit);
      first = false;
    }
  }
  return s + "})";
}

namespace {

// Build the constraint for odd subset `mask` of the support `supp` of a row.
LinConstraint parity_constraint_for_mask(std::size_t n, const std::vector<int>& supp,
                                         std::uint64_t mask) {
  RationalVector coeffs(n, Rational(0));
  long size_s = 0;
  for (std::size_t b = 0; b < supp.size(); ++b) {
    bool in_s = (mask >> b) & 1u;
    coeffs[static_cast<std::size_t>(supp[b])] = in_s ? 1 : -1;
    if (in_s) ++size_s;
  }
  return make_constraint(std::move(coeffs), Rational(size_s - 1), Relation::LessEq);
}

ConstraintId parity_id(int row, std::uint64_t mask) {
  ConstraintId id;
  id.kind = ConstraintId::Kind::Parity;
  id.row = row;
  id.mask = mask;
  return id;
}

std::uint64_t odd_subset_count(std::size_t weight) {
  return weight == 0 ? 0 : std::uint64_t{1} << (weight - 1);
}

}  // namespace

std::vector<std::pair<ConstraintId, LinConstraint>> parity_constraints(const BitVector& t,
                                                                       int row_index) {
  std::vector<int> supp = t.support();
  std::vector<std::pair<ConstraintId, LinConstraint>> out;
  if (supp.empty()) return out;
  if (supp.size() > 62 || odd_subset_count(supp.size()) > kMaxMaterializedConstraints) {
    throw std::length_error("parity_constraints: row weight too large to materialize");
  }
  out.reserve(odd_subset_count(supp.size()));
  long k = 0;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << supp.size()); ++mask) {
    if ((std::popcount(mask) & 1) == 0) continue;
    ConstraintId id = parity_id(row_index, mask);
    id.global_index = ++k;
    out.emplace_back(id, parity_constraint_for_mask(t.size(), supp, mask));
  }
  return out;
}

// Rows equal to an earlier row are skipped: a row is exactly the support of
// its constraints, so two constraints coincide only when their rows do.
std::vector<bool> duplicate_row_flags(const BitMatrix& h) {
  std::vector<bool> dup(h.rows(), false);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (std::size_t k = 0; k < i; ++k) {
      if (h.row(i) == h.row(k)) {
        dup[i] = true;
        break;
      }
    }
  }
  return dup;
}

LinConstraint parity_subset_constraint(const BitVector& t, std::uint64_t mask, Relation rel) {
  std::vector<int> supp = t.support();
  if (supp.size() > 62) throw std::length_error("parity_subset_constraint: row weight too large");
  if (mask == 0 || mask >= (std::uint64_t{1} << supp.size())) {
    throw std::invalid_argument("parity_subset_constraint: mask outside row support");
  }
  if ((std::popcount(mask) & 1) == 0) {
    throw std::invalid_argument("parity_subset_constraint: subset must be odd");
  }
  LinConstraint c = parity_constraint_for_mask(t.size(), supp, mask);
  c.rel = rel;
  return c;
}

namespace {

void append_box(ConstraintSystem& sys, long& k) {
  std::size_t n = sys.n;
  for (std::size_t v = 0; v < n; ++v) {
    RationalVector coeffs(n, Rational(0));
    coeffs[v] = -1;
    ConstraintId id;
    id.kind = ConstraintId::Kind::BoxLower;
    id.var = static_cast<int>(v);
    id.global_index = ++k;
    sys.constraints.emplace_back(id, make_constraint(std::move(coeffs), Rational(0)));
  }
  for (std::size_t v = 0; v < n; ++v) {
    RationalVector coeffs(n, Rational(0));
    coeffs[v] = 1;
    ConstraintId id;
    id.kind = ConstraintId::Kind::BoxUpper;
    id.var = static_cast<int>(v);
    id.global_index = ++k;
    sys.constraints.emplace_back(id, make_constraint(std::move(coeffs), Rational(1)));
  }
}

void classify(ConstraintSystem& sys) {
  for (std::size_t i = 0; i < sys.constraints.size(); ++i) {
    if (sys.constraints[i].second.rhs == 0) {
      sys.active.push_back(i);
    } else {
      sys.inactive.push_back(i);
    }
  }
}

}  // namespace

ConstraintSystem fundamental_polytope(const BitMatrix& h) {
  ConstraintSystem sys;
  sys.n = h.cols();
  std::vector<bool> dup = duplicate_row_flags(h);
  std::uint64_t total = 2 * static_cast<std::uint64_t>(h.cols());
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (dup[i]) continue;
    std::size_t w = h.row(i).weight();
    if (w > 62) throw std::length_error("fundamental_polytope: row weight too large");
    total += odd_subset_count(w);
    if (total > kMaxMaterializedConstraints) {
      throw std::length_error("fundamental_polytope: constraint set too large to materialize");
    }
  }
  long k = 0;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (dup[i]) continue;
    std::vector<int> supp = h.row(i).support();
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << supp.size()); ++mask) {
      if ((std::popcount(mask) & 1) == 0) continue;
      ConstraintId id = parity_id(static_cast<int>(i), mask);
      id.global_index = ++k;
      sys.constraints.emplace_back(id, parity_constraint_for_mask(sys.n, supp, mask));
    }
  }
  append_box(sys, k);
  classify(sys);
  return sys;
}

ConstraintSystem fundamental_cone(const BitMatrix& h) {
  ConstraintSystem sys;
  sys.n = h.cols();
  std::vector<bool> dup = duplicate_row_flags(h);
  std::uint64_t parity_total = 0;
  // Walk rows twice: once to place each row's block in the full enumeration,
  // once to emit only the singleton subsets with their original indices.
  std::vector<std::uint64_t> row_offset(h.rows(), 0);
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (dup[i]) continue;
    std::size_t w = h.row(i).weight();
    if (w > 62) throw std::length_error("fundamental_cone: row weight too large");
    row_offset[i] = parity_total;
    if (__builtin_add_overflow(parity_total, odd_subset_count(w), &parity_total)) {
      throw std::length_error("fundamental_cone: constraint indices overflow");
    }
  }
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (dup[i]) continue;
    std::vector<int> supp = h.row(i).support();
    for (std::size_t b = 0; b < supp.size(); ++b) {
      // Rank of singleton mask 2^b among odd masks in ascending order.
      std::uint64_t rank_in_row = b == 0 ? 1 : (std::uint64_t{1} << (b - 1)) + 1;
      ConstraintId id = parity_id(static_cast<int>(i), std::uint64_t{1} << b);
      id.global_index = static_cast<long>(row_offset[i] + rank_in_row);
      sys.constraints.emplace_back(id, parity_constraint_for_mask(sys.n, supp, id.mask));
    }
  }
  long k = static_cast<long>(parity_total);
  append_box(sys, k);
  classify(sys);
  return sys;
}

bool contains(const ConstraintSystem& sys, const RationalVector& p) {
  check_point_size(p.size(), sys.n, "contains");
  for (const auto& [id, c] : sys.constraints) {
    if (!c.satisfied_by(p)) return false;
  }
  return true;
}

std::optional<std::pair<ConstraintId, LinConstraint>> most_violated_parity(
    const BitVector& t, const RationalVector& p, int row_index) {
  check_point_size(p.size(), t.size(), "most_violated_parity");
  std::vector<int> supp = t.support();
  if (supp.empty()) return std::nullopt;
  if (supp.size() > 62) throw std::length_error("most_violated_parity: row weight too large");
  const Rational half = rational(1, 2);
  std::uint64_t mask = 0;
  for (std::size_t b = 0; b < supp.size(); ++b) {
    if (p[static_cast<std::size_t>(supp[b])] > half) mask |= std::uint64_t{1} << b;
  }
  if ((std::popcount(mask) & 1) == 0) {
    // Even set: flip the coordinate whose contribution |2 p_j - 1| is
    // smallest, preferring the smallest index on ties.
    std::size_t best = 0;
    Rational best_cost;
    bool have = false;
    for (std::size_t b = 0; b < supp.size(); ++b) {
      Rational cost = abs(2 * p[static_cast<std::size_t>(supp[b])] - 1);
      if (!have || cost < best_cost) {
        best = b;
        best_cost = cost;
        have = true;
      }
    }
    mask ^= std::uint64_t{1} << best;
  }
  LinConstraint c = parity_constraint_for_mask(t.size(), supp, mask);
  if (c.eval(p) <= c.rhs) return std::nullopt;
  return std::make_pair(parity_id(row_index, mask), std::move(c));
}

bool in_parity_polytope(const BitVector& t, const RationalVector& p) {
  return !most_violated_parity(t, p).has_value();
}

bool in_fundamental_polytope(const BitMatrix& h, const RationalVector& p) {
  check_point_size(p.size(), h.cols(), "in_fundamental_polytope");
  for (const Rational& x : p) {
    if (x < 0 || x > 1) return false;
  }
  for (std::size_t i = 0; i < h.rows(); ++i) {
    if (!in_parity_polytope(h.row(i), p)) return false;
  }
  return true;
}

}  // namespace fraccut
