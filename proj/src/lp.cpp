#include "fraccut/lp.hpp"

#include <cstddef>
#include <limits>
#include <stdexcept>

namespace fraccut {

namespace {

constexpr std::size_t kNoRow = std::numeric_limits<std::size_t>::max();

enum class VarState { AtLower, AtUpper, Basic, Removed };

// Dense tableau kept in basis-canonical form: the column of every basic
// variable is a unit column. basic_value mirrors B^-1 b and is updated
// incrementally together with the rows.
struct Tableau {
  std::size_t n_struct = 0;
  std::size_t n_total = 0;
  std::vector<RationalVector> rows;
  RationalVector obj_phase1;
  RationalVector obj_phase2;
  std::vector<Rational> basic_value;
  std::vector<std::size_t> basis;        // row -> column
  std::vector<VarState> state;           // column -> state
  std::vector<Rational> lower, upper;    // per column; artificials [0,0+inf)
  std::vector<bool> has_upper;
  std::vector<bool> is_artificial;
  bool phase1_done = false;

  Rational bound_value(std::size_t j) const {
    return state[j] == VarState::AtUpper ? upper[j] : lower[j];
  }
};

void validate(const LpProblem& prob) {
  if (prob.n == 0) throw std::invalid_argument("solve_min: zero variables");
  if (prob.objective.size() != prob.n || prob.lower.size() != prob.n ||
      prob.upper.size() != prob.n) {
    throw std::invalid_argument("solve_min: vector sizes disagree with n");
  }
  for (std::size_t j = 0; j < prob.n; ++j) {
    if (prob.lower[j] > prob.upper[j]) {
      throw std::invalid_argument("solve_min: lower bound exceeds upper bound");
    }
  }
  for (const LinConstraint& c : prob.rows) {
    if (c.coeffs.size() != prob.n) throw std::invalid_argument("solve_min: row length mismatch");
  }
}

Tableau build(const LpProblem& prob) {
  Tableau t;
  std::size_t m = prob.rows.size();
  std::size_t n_slack = 0;
  for (const LinConstraint& c : prob.rows) {
    if (c.rel == Relation::LessEq) ++n_slack;
  }
  t.n_struct = prob.n;
  std::size_t cols_no_art = prob.n + n_slack;
  t.rows.assign(m, RationalVector());
  t.basic_value.assign(m, Rational(0));
  t.basis.assign(m, kNoRow);
  t.lower.assign(cols_no_art, Rational(0));
  t.upper.assign(cols_no_art, Rational(0));
  t.has_upper.assign(cols_no_art, false);
  t.is_artificial.assign(cols_no_art, false);
  t.state.assign(cols_no_art, VarState::AtLower);
  for (std::size_t j = 0; j < prob.n; ++j) {
    t.lower[j] = prob.lower[j];
    t.upper[j] = prob.upper[j];
    t.has_upper[j] = true;
  }

  // Residual of each row with structurals at their lower bounds decides
  // whether the slack can start basic or an artificial is needed.
  std::vector<Rational> residual(m);
  std::vector<int> art_sign(m, 0);
  std::size_t slack_idx = prob.n;
  std::size_t n_art = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const LinConstraint& c = prob.rows[i];
    Rational lhs = 0;
    for (int j : c.support) lhs += c.coeffs[static_cast<std::size_t>(j)] * prob.lower[static_cast<std::size_t>(j)];
    residual[i] = c.rhs - lhs;
    if (c.rel == Relation::LessEq && residual[i] >= 0) continue;
    art_sign[i] = sgn(residual[i]) < 0 ? -1 : 1;
    ++n_art;
  }
  t.n_total = cols_no_art + n_art;
  t.lower.resize(t.n_total, Rational(0));
  t.upper.resize(t.n_total, Rational(0));
  t.has_upper.resize(t.n_total, false);
  t.is_artificial.resize(t.n_total, true);
  t.state.resize(t.n_total, VarState::AtLower);

  std::size_t art_idx = cols_no_art;
  for (std::size_t i = 0; i < m; ++i) {
    const LinConstraint& c = prob.rows[i];
    RationalVector row(t.n_total, Rational(0));
    int scale = art_sign[i] == -1 ? -1 : 1;
    for (int j : c.support) {
      row[static_cast<std::size_t>(j)] = scale * c.coeffs[static_cast<std::size_t>(j)];
    }
    if (c.rel == Relation::LessEq) {
      row[slack_idx] = scale;
      ++slack_idx;
    }
    if (art_sign[i] != 0) {
      row[art_idx] = 1;
      t.basis[i] = art_idx;
      t.state[art_idx] = VarState::Basic;
      t.basic_value[i] = abs(residual[i]);
      ++art_idx;
    } else {
      std::size_t s = slack_idx - 1;
      t.basis[i] = s;
      t.state[s] = VarState::Basic;
      t.basic_value[i] = residual[i];
    }
    t.rows[i] = std::move(row);
  }

  // Reduced costs against the starting basis. Slacks and artificials have
  // phase-2 cost zero, so phase 2 starts as the raw objective. Phase 1
  // charges 1 per artificial: z_j = -sum of artificial rows' coefficients.
  t.obj_phase2.assign(t.n_total, Rational(0));
  for (std::size_t j = 0; j < prob.n; ++j) t.obj_phase2[j] = prob.objective[j];
  t.obj_phase1.assign(t.n_total, Rational(0));
  for (std::size_t i = 0; i < m; ++i) {
    if (art_sign[i] == 0) continue;
    for (std::size_t j = 0; j < cols_no_art; ++j) {
      if (t.rows[i][j] != 0) t.obj_phase1[j] -= t.rows[i][j];
    }
  }
  return t;
}

void pivot(Tableau& t, std::size_t leave_row, std::size_t enter_col) {
  RationalVector& prow = t.rows[leave_row];
  Rational piv = prow[enter_col];
  if (piv != 1) {
    Rational inv = 1 / piv;
    for (Rational& x : prow) {
      if (x != 0) x *= inv;
    }
  }
  Rational factor, tmp;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (i == leave_row) continue;
    factor = t.rows[i][enter_col];
    if (factor == 0) continue;
    RationalVector& row = t.rows[i];
    for (std::size_t j = 0; j < t.n_total; ++j) {
      if (prow[j] != 0) {
        tmp = factor * prow[j];
        row[j] -= tmp;
      }
    }
  }
  for (RationalVector* obj : {&t.obj_phase1, &t.obj_phase2}) {
    Rational f = (*obj)[enter_col];
    if (f == 0) continue;
    for (std::size_t j = 0; j < t.n_total; ++j) {
      if (prow[j] != 0) {
        tmp = f * prow[j];
        (*obj)[j] -= tmp;
      }
    }
  }
}

// One simplex phase under Bland's rule. Returns false when phase 2 detects
// an unbounded direction; phase 1 cannot be unbounded (its objective is a
// sum of nonnegative variables) so `phase1` asserts instead.
bool run_phase(Tableau& t, bool phase1) {
  const RationalVector& obj = phase1 ? t.obj_phase1 : t.obj_phase2;
  for (;;) {
    // Entering: smallest improving nonbasic column.
    std::size_t enter = kNoRow;
    int dir = 0;
    for (std::size_t j = 0; j < t.n_total; ++j) {
      VarState s = t.state[j];
      if (s == VarState::Basic || s == VarState::Removed) continue;
      if (!phase1 && t.is_artificial[j]) continue;
      if (t.has_upper[j] && t.lower[j] == t.upper[j]) continue;
      int sg = sgn(obj[j]);
      if (s == VarState::AtLower && sg < 0) {
        enter = j;
        dir = 1;
        break;
      }
      if (s == VarState::AtUpper && sg > 0) {
        enter = j;
        dir = -1;
        break;
      }
    }
    if (enter == kNoRow) return true;

    // Ratio test: smallest step among basic bound hits and the entering
    // variable's own opposite bound; ties resolve to the smallest variable
    // index with the entering column's own bound counting as `enter`.
    bool limited = false;
    bool own_bound = false;
    Rational best_step;
    std::size_t best_row = kNoRow;
    std::size_t best_var = kNoRow;
    auto consider = [&](const Rational& step, std::size_t row, std::size_t var) {
      if (!limited || step < best_step || (step == best_step && var < best_var)) {
        limited = true;
        best_step = step;
        best_row = row;
        best_var = var;
        own_bound = row == kNoRow;
      }
    };
    if (t.has_upper[enter]) consider(t.upper[enter] - t.lower[enter], kNoRow, enter);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      const Rational& coef = t.rows[i][enter];
      if (coef == 0) continue;
      int eff = dir * sgn(coef);
      std::size_t b = t.basis[i];
      if (eff > 0) {
        Rational step = (t.basic_value[i] - t.lower[b]) / (dir > 0 ? coef : -coef);
        consider(step, i, b);
      } else if (t.has_upper[b]) {
        Rational step = (t.upper[b] - t.basic_value[i]) / (dir > 0 ? -coef : coef);
        consider(step, i, b);
      }
    }
    if (!limited) {
      if (phase1) throw std::logic_error("solve_min: phase 1 unbounded");
      return false;
    }

    Rational delta = dir > 0 ? best_step : -best_step;
    if (own_bound) {
      for (std::size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i][enter] != 0) t.basic_value[i] -= t.rows[i][enter] * delta;
      }
      t.state[enter] = dir > 0 ? VarState::AtUpper : VarState::AtLower;
      continue;
    }

    std::size_t leave = t.basis[best_row];
    int eff = dir * sgn(t.rows[best_row][enter]);
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (i == best_row) continue;
      if (t.rows[i][enter] != 0) t.basic_value[i] -= t.rows[i][enter] * delta;
    }
    t.basic_value[best_row] = t.bound_value(enter) + delta;
    t.state[leave] = eff > 0 ? VarState::AtLower : VarState::AtUpper;
    t.state[enter] = VarState::Basic;
    t.basis[best_row] = enter;
    pivot(t, best_row, enter);
  }
}

// Drive artificials out of the basis after phase 1; rows that cannot pivot
// on any real column are redundant and dropped.
void retire_artificials(Tableau& t) {
  for (std::size_t i = 0; i < t.rows.size();) {
    if (!t.is_artificial[t.basis[i]]) {
      ++i;
      continue;
    }
    std::size_t col = kNoRow;
    for (std::size_t j = 0; j < t.n_total; ++j) {
      if (t.is_artificial[j] || t.state[j] == VarState::Basic || t.state[j] == VarState::Removed) {
        continue;
      }
      if (t.rows[i][j] != 0) {
        col = j;
        break;
      }
    }
    if (col == kNoRow) {
      t.state[t.basis[i]] = VarState::Removed;
      t.rows.erase(t.rows.begin() + static_cast<std::ptrdiff_t>(i));
      t.basic_value.erase(t.basic_value.begin() + static_cast<std::ptrdiff_t>(i));
      t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(i));
      continue;
    }
    // Degenerate pivot: the artificial sits at value 0, so the entering
    // column keeps its current value and only the basis changes.
    std::size_t leave = t.basis[i];
    t.basic_value[i] = t.bound_value(col);
    t.state[leave] = VarState::Removed;
    t.state[col] = VarState::Basic;
    t.basis[i] = col;
    pivot(t, i, col);
    ++i;
  }
  for (std::size_t j = 0; j < t.n_total; ++j) {
    if (t.is_artificial[j] && t.state[j] != VarState::Removed) t.state[j] = VarState::Removed;
  }
}

RationalVector extract_point(const Tableau& t) {
  RationalVector x(t.n_struct);
  for (std::size_t j = 0; j < t.n_struct; ++j) x[j] = t.bound_value(j);
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.basis[i] < t.n_struct) x[t.basis[i]] = t.basic_value[i];
  }
  return x;
}

void check_solution(const LpProblem& prob, const RationalVector& x) {
  for (std::size_t j = 0; j < prob.n; ++j) {
    if (x[j] < prob.lower[j] || x[j] > prob.upper[j]) {
      throw std::logic_error("solve_min: solution violates bounds");
    }
  }
  for (const LinConstraint& c : prob.rows) {
    if (!c.satisfied_by(x)) throw std::logic_error("solve_min: solution violates a row");
  }
}

}  // namespace

LpOutcome solve_min(const LpProblem& prob) {
  validate(prob);
  Tableau t = build(prob);
  run_phase(t, true);
  Rational art_total = 0;
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    if (t.is_artificial[t.basis[i]]) art_total += t.basic_value[i];
  }
  if (art_total != 0) return {LpOutcome::Status::Infeasible, {}, Rational(0)};
  retire_artificials(t);
  if (!run_phase(t, false)) return {LpOutcome::Status::Unbounded, {}, Rational(0)};
  LpOutcome out;
  out.status = LpOutcome::Status::Optimal;
  out.point = extract_point(t);
  check_solution(prob, out.point);
  out.value = 0;
  for (std::size_t j = 0; j < prob.n; ++j) {
    if (prob.objective[j] != 0) out.value += prob.objective[j] * out.point[j];
  }
  return out;
}

}  // namespace fraccut
