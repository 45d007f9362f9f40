#include "fraccut/cutplane.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace fraccut {

bool cutting_condition(const RationalVector& p, const BitVector& h) {
  if (p.size() != h.size()) throw std::invalid_argument("cutting_condition: length mismatch");
  std::vector<int> supp = h.support();
  if (supp.empty()) return false;
  Rational total = 0;
  const Rational* max_entry = nullptr;
  for (int j : supp) {
    const Rational& x = p[static_cast<std::size_t>(j)];
    total += x;
    if (max_entry == nullptr || x > *max_entry) max_entry = &x;
  }
  return 2 * *max_entry > total;
}

std::vector<int> support_row_set(const BitMatrix& h, const RationalVector& p) {
  if (p.size() != h.cols()) throw std::invalid_argument("support_row_set: length mismatch");
  std::vector<int> rows;
  for (std::size_t i = 0; i < h.rows(); ++i) {
    for (int j : h.row(i).support()) {
      if (p[static_cast<std::size_t>(j)] != 0) {
        rows.push_back(static_cast<int>(i));
        break;
      }
    }
  }
  return rows;
}

namespace {

bool is_zero_point(const RationalVector& p) {
  return std::all_of(p.begin(), p.end(), [](const Rational& x) { return x == 0; });
}

}  // namespace

std::optional<BitVector> search_redundant_row(const BitMatrix& h, const RationalVector& p) {
  if (p.size() != h.cols()) throw std::invalid_argument("search_redundant_row: length mismatch");
  if (is_zero_point(p)) throw std::invalid_argument("search_redundant_row: zero target point");
  std::vector<int> q = support_row_set(h, p);
  if (q.empty()) return std::nullopt;
  std::vector<BitVector> rows;
  rows.reserve(q.size());
  for (int i : q) rows.push_back(h.row(static_cast<std::size_t>(i)));
  BitMatrix restricted(std::move(rows));

  std::vector<int> by_weight(h.cols());
  std::iota(by_weight.begin(), by_weight.end(), 0);
  std::stable_sort(by_weight.begin(), by_weight.end(), [&](int a, int b) {
    return p[static_cast<std::size_t>(a)] > p[static_cast<std::size_t>(b)];
  });
  // Heaviest coordinate last: elimination then front-loads pivots on the
  // lighter coordinates, leaving later echelon rows sparse where p is large.
  std::vector<int> col_order(by_weight.begin() + 1, by_weight.end());
  col_order.push_back(by_weight.front());

  EchelonResult ech = row_echelon(restricted, col_order);
  for (std::size_t i = 0; i < ech.rank; ++i) {
    if (cutting_condition(p, ech.echelon.row(i))) return ech.echelon.row(i);
  }
  return std::nullopt;
}

std::optional<BitVector> exhaustive_cut_search(const BitMatrix& h, const RationalVector& p,
                                               std::size_t limit) {
  if (p.size() != h.cols()) throw std::invalid_argument("exhaustive_cut_search: length mismatch");
  if (is_zero_point(p)) throw std::invalid_argument("exhaustive_cut_search: zero target point");
  if (limit > 62) throw std::invalid_argument("exhaustive_cut_search: limit exceeds 62");
  std::vector<int> q = support_row_set(h, p);
  if (q.size() > limit) {
    throw std::length_error("exhaustive_cut_search: support row set exceeds limit");
  }
  if (q.empty()) return std::nullopt;
  // Coefficient masks ascend with the first restricted row as the most
  // significant bit, so sparser combinations of later rows come first.
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << q.size()); ++mask) {
    BitVector candidate(h.cols());
    for (std::size_t b = 0; b < q.size(); ++b) {
      if ((mask >> (q.size() - 1 - b)) & 1u) {
        candidate.xor_with(h.row(static_cast<std::size_t>(q[b])));
      }
    }
    if (cutting_condition(p, candidate)) return candidate;
  }
  return std::nullopt;
}

BitMatrix stack_row(const BitMatrix& h, const BitVector& row) {
  if (row.is_zero()) throw std::invalid_argument("stack_row: zero row");
  BitMatrix out = h;
  out.append_row(row);
  return out;
}

GreedyResult greedy_improve(const BitMatrix& h, const GreedyConfig& cfg,
                            const SweepOptions& sweep) {
  if (cfg.exhaustive_fallback_limit > 24) {
    throw std::invalid_argument("greedy_improve: exhaustive fallback limit exceeds 24");
  }
  FracDistEngine engine(h, Method::Relaxed, sweep);
  GreedyResult result{h, {}, {}, {}};
  FracDistReport rep = engine.evaluate();
  result.first_sweep = rep;
  while (result.log.size() < cfg.max_rows && rep.status == SweepStatus::Ok &&
         (!cfg.target_dfrac || rep.d_frac < *cfg.target_dfrac)) {
    bool stacked = false;
    for (const RationalVector& p : rep.gamma) {
      std::optional<BitVector> row = search_redundant_row(engine.matrix(), p);
      if (!row) {
        std::vector<int> q = support_row_set(engine.matrix(), p);
        if (q.size() <= cfg.exhaustive_fallback_limit) {
          row = exhaustive_cut_search(engine.matrix(), p, cfg.exhaustive_fallback_limit);
        }
      }
      if (!row) continue;
      if (!in_row_space(engine.matrix(), *row)) {
        throw std::logic_error("greedy_improve: candidate row outside the row space");
      }
      if (!cutting_condition(p, *row)) {
        throw std::logic_error("greedy_improve: candidate row fails the cutting condition");
      }
      FracDistReport after;
      if (cfg.only_improving) {
        FracDistEngine trial = engine;
        trial.append_row(*row);
        after = trial.evaluate();
        if (after.status == SweepStatus::Ok && after.d_frac < rep.d_frac) continue;
        engine = std::move(trial);
      } else {
        engine.append_row(*row);
        after = engine.evaluate();
      }
      if (in_fundamental_polytope(engine.matrix(), p)) {
        throw std::logic_error("greedy_improve: stacked row failed to exclude its target");
      }
      if (after.status != SweepStatus::Ok) {
        throw std::logic_error("greedy_improve: sweep lost all nonzero vertices after a cut");
      }
      CutRecord rec;
      rec.iteration = result.log.size() + 1;
      rec.d_frac_before = rep.d_frac;
      rec.d_frac_after = after.d_frac;
      rec.redundant_row = *row;
      rec.target_vertex = p;
      rec.gamma_size_before = rep.gamma.size();
      result.log.push_back(std::move(rec));
      rep = std::move(after);
      stacked = true;
      break;
    }
    if (!stacked) break;
  }
  result.strengthened = engine.matrix();
  result.last_sweep = std::move(rep);
  return result;
}

}  // namespace fraccut
