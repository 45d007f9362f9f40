#include "oracle.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace fraccut::testing {

namespace {

struct Plane {
  RationalVector coeffs;
  Rational rhs;
};

// Unique solution of the square system planes . x = rhs, or nullopt when
// the chosen planes are linearly dependent.
std::optional<RationalVector> solve_square(const std::vector<Plane>& planes,
                                           const std::vector<std::size_t>& pick) {
  const std::size_t n = pick.size();
  std::vector<RationalVector> a(n, RationalVector(n + 1, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) a[i][j] = planes[pick[i]].coeffs[j];
    a[i][n] = planes[pick[i]].rhs;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[col], a[pivot]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      Rational factor = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= n; ++j) a[r][j] -= factor * a[col][j];
    }
  }
  RationalVector x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = Rational(a[i][n] / a[i][i]);
  return x;
}

bool feasible(const LpProblem& prob, const RationalVector& x) {
  for (std::size_t j = 0; j < prob.n; ++j) {
    if (x[j] < prob.lower[j] || x[j] > prob.upper[j]) return false;
  }
  for (const LinConstraint& row : prob.rows) {
    if (!row.satisfied_by(x)) return false;
  }
  return true;
}

}  // namespace

std::vector<RationalVector> enumerate_vertices(const LpProblem& prob) {
  const std::size_t n = prob.n;
  std::vector<Plane> planes;
  std::size_t forced = 0;
  for (const LinConstraint& row : prob.rows) {
    if (row.rel == Relation::Eq) {
      planes.push_back({row.coeffs, row.rhs});
      ++forced;
    }
  }
  if (forced > n) throw std::invalid_argument("enumerate_vertices: more equalities than variables");
  for (const LinConstraint& row : prob.rows) {
    if (row.rel == Relation::LessEq) planes.push_back({row.coeffs, row.rhs});
  }
  for (std::size_t j = 0; j < n; ++j) {
    RationalVector unit(n, Rational(0));
    unit[j] = 1;
    planes.push_back({unit, prob.lower[j]});
    if (prob.upper[j] != prob.lower[j]) planes.push_back({unit, prob.upper[j]});
  }

  std::set<RationalVector> seen;
  std::vector<RationalVector> out;
  std::vector<std::size_t> pick(n);
  for (std::size_t i = 0; i < forced; ++i) pick[i] = i;

  // Choose the n - forced free planes from indices [forced, planes.size()).
  const std::size_t free = n - forced;
  std::vector<std::size_t> idx(free);
  for (std::size_t i = 0; i < free; ++i) idx[i] = forced + i;
  if (free > planes.size() - forced) return out;
  while (true) {
    for (std::size_t i = 0; i < free; ++i) pick[forced + i] = idx[i];
    if (auto x = solve_square(planes, pick)) {
      if (feasible(prob, *x) && seen.insert(*x).second) out.push_back(*x);
    }
    // Advance the combination.
    std::size_t i = free;
    while (i > 0) {
      --i;
      if (idx[i] + (free - i) < planes.size()) {
        ++idx[i];
        for (std::size_t k = i + 1; k < free; ++k) idx[k] = idx[k - 1] + 1;
        break;
      }
      if (i == 0) return out;
    }
    if (free == 0) break;
  }
  return out;
}

std::optional<Rational> oracle_min(const LpProblem& prob) {
  std::vector<RationalVector> verts = enumerate_vertices(prob);
  if (verts.empty()) return std::nullopt;
  std::optional<Rational> best;
  for (const RationalVector& v : verts) {
    Rational value(0);
    for (std::size_t j = 0; j < prob.n; ++j) value += prob.objective[j] * v[j];
    if (!best || value < *best) best = value;
  }
  return best;
}

}  // namespace fraccut::testing
