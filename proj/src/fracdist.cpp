#include "fraccut/fracdist.hpp"

#include <algorithm>
#include <bit>
#include <exception>
#include <queue>
#include <set>
#include <stdexcept>
#include <thread>
#include <utility>

namespace fraccut {

namespace {

constexpr std::uint64_t kMaxExhaustiveFacets = std::uint64_t{1} << 22;

// 1-based rank of an odd-popcount mask among odd-popcount masks in
// ascending order; exactly half of any 2^b block has odd popcount.
std::uint64_t odd_rank(std::uint64_t mask) {
  std::uint64_t count = 0;
  bool parity = false;
  for (int b = 63; b >= 0; --b) {
    if (!((mask >> b) & 1u)) continue;
    if (b == 0) {
      if (parity) ++count;
    } else {
      count += std::uint64_t{1} << (b - 1);
    }
    parity = !parity;
  }
  return count + 1;
}

std::uint64_t next_same_popcount(std::uint64_t v) {
  std::uint64_t c = v & (~v + 1);
  std::uint64_t r = v + c;
  return (((r ^ v) >> 2) / c) | r;
}

std::uint64_t inactive_facet_count(std::size_t weight) {
  if (weight < 3) return 0;
  return (std::uint64_t{1} << (weight - 1)) - weight;
}

}  // namespace

std::size_t FracDistEngine::FacetKeyHash::operator()(const FacetKey& k) const {
  std::uint64_t h = (static_cast<std::uint64_t>(k.kind) + 1) * 0x9E3779B97F4A7C15ull;
  h ^= (static_cast<std::uint64_t>(static_cast<std::int64_t>(k.row)) + 0x101) * 0xBF58476D1CE4E5B9ull;
  h ^= (k.mask + 1) * 0x94D049BB133111EBull;
  h ^= (static_cast<std::uint64_t>(static_cast<std::int64_t>(k.var)) + 0x10001) * 0xD6E8FEB86659FD93ull;
  return static_cast<std::size_t>(h ^ (h >> 32));
}

struct FracDistEngine::Task {
  Rational bound;
  long gidx = 0;
  ConstraintId id;
};

struct FracDistEngine::SolveOutcome {
  bool infeasible = true;
  Rational value;
  RationalVector point;
};

FracDistEngine::FacetKey FracDistEngine::key_of(const ConstraintId& id) {
  return {static_cast<int>(id.kind), id.row, id.mask, id.var};
}

FracDistEngine::FracDistEngine(BitMatrix h, Method method, SweepOptions opts)
    : h_(std::move(h)), method_(method), opts_(opts) {
  if (opts_.jobs < 1) throw std::invalid_argument("FracDistEngine: jobs must be positive");
  rebuild_pools();
}

void FracDistEngine::rebuild_pools() {
  dup_ = duplicate_row_flags(h_);
  row_offset_.assign(h_.rows(), 0);
  parity_total_ = 0;
  active_pool_.clear();
  row_pool_slots_.assign(h_.rows(), {});
  for (std::size_t i = 0; i < h_.rows(); ++i) {
    if (dup_[i]) continue;
    std::size_t w = h_.row(i).weight();
    if (w > 62) throw std::length_error("FracDistEngine: row weight too large");
    row_offset_[i] = parity_total_;
    std::uint64_t block = w == 0 ? 0 : std::uint64_t{1} << (w - 1);
    if (__builtin_add_overflow(parity_total_, block, &parity_total_)) {
      throw std::length_error("FracDistEngine: constraint indices overflow");
    }
  }
  for (std::size_t i = 0; i < h_.rows(); ++i) {
    if (dup_[i]) continue;
    std::size_t w = h_.row(i).weight();
    for (std::size_t b = 0; b < w; ++b) {
      row_pool_slots_[i].push_back(active_pool_.size());
      active_pool_.push_back(
          parity_subset_constraint(h_.row(i), std::uint64_t{1} << b, Relation::LessEq));
    }
  }
}

void FracDistEngine::append_row(const BitVector& row) {
  h_.append_row(row);
  rebuild_pools();
}

LinConstraint FracDistEngine::facet_equation(const ConstraintId& id) const {
  return parity_subset_constraint(h_.row(static_cast<std::size_t>(id.row)), id.mask, Relation::Eq);
}

// Working state of one facet's delayed constraint generation: the LP plus
// the bookkeeping of which constraints already joined it.
struct FracDistEngine::FacetLp {
  LpProblem lp;
  std::vector<char> in_working;
  std::set<std::pair<int, std::uint64_t>> added;
};

FracDistEngine::FacetLp FracDistEngine::facet_lp(const ConstraintId& id) const {
  const std::size_t n = h_.cols();
  FacetLp state;
  state.lp.n = n;
  state.lp.objective.assign(n, Rational(1));
  state.lp.lower.assign(n, Rational(0));
  state.lp.upper.assign(n, Rational(1));
  state.in_working.assign(active_pool_.size(), 0);

  if (id.kind == ConstraintId::Kind::Parity) {
    state.lp.rows.push_back(facet_equation(id));
    state.added.insert({id.row, id.mask});
    for (std::size_t pos : row_pool_slots_[static_cast<std::size_t>(id.row)]) {
      state.lp.rows.push_back(active_pool_[pos]);
      state.in_working[pos] = 1;
    }
  } else if (id.kind == ConstraintId::Kind::BoxUpper) {
    state.lp.lower[static_cast<std::size_t>(id.var)] = 1;
  } else {
    state.lp.upper[static_cast<std::size_t>(id.var)] = 0;
  }
  return state;
}

// Minimize state.lp.objective by delayed constraint generation: solve
// against the working subset, then add constraints the optimum violates and
// repeat. An infeasible subset proves the facet infeasible, and a point
// violating nothing is optimal for the full facet problem.
LpOutcome FracDistEngine::lazy_min(FacetLp& state) const {
  for (;;) {
    LpOutcome sol = solve_min(state.lp);
    if (sol.status == LpOutcome::Status::Infeasible) return sol;
    if (sol.status == LpOutcome::Status::Unbounded) {
      throw std::logic_error("solve_facet: unbounded over the unit box");
    }
    bool grew = false;
    if (method_ == Method::Relaxed) {
      for (std::size_t pos = 0; pos < active_pool_.size(); ++pos) {
        if (state.in_working[pos] || active_pool_[pos].satisfied_by(sol.point)) continue;
        state.lp.rows.push_back(active_pool_[pos]);
        state.in_working[pos] = 1;
        grew = true;
      }
    } else {
      for (std::size_t r = 0; r < h_.rows(); ++r) {
        if (dup_[r]) continue;
        auto violated = most_violated_parity(h_.row(r), sol.point, static_cast<int>(r));
        if (!violated) continue;
        auto tag = std::make_pair(static_cast<int>(r), violated->first.mask);
        if (state.added.contains(tag)) continue;
        state.added.insert(tag);
        state.lp.rows.push_back(std::move(violated->second));
        grew = true;
      }
    }
    if (!grew) return sol;
  }
}

FracDistEngine::SolveOutcome FracDistEngine::solve_facet(const ConstraintId& id) const {
  FacetLp state = facet_lp(id);
  LpOutcome sol = lazy_min(state);
  if (sol.status == LpOutcome::Status::Infeasible) return {true, Rational(0), {}};
  return {false, std::move(sol.value), std::move(sol.point)};
}

// Lexicographically smallest point of the facet's optimal face: pin the
// weight to the known optimum, then minimize the coordinates one at a time,
// fixing each at its minimum. One facet LP can hide several minimum-weight
// vertices behind ties; this second deterministic probe recovers the one
// the plain solve is biased against.
FracDistEngine::SolveOutcome FracDistEngine::solve_facet_lexmin(const ConstraintId& id,
                                                                const Rational& value) const {
  const std::size_t n = h_.cols();
  FacetLp state = facet_lp(id);
  state.lp.rows.push_back(
      make_constraint(RationalVector(n, Rational(1)), value, Relation::Eq));
  RationalVector point(n);
  for (std::size_t j = 0; j < n; ++j) {
    state.lp.objective.assign(n, Rational(0));
    state.lp.objective[j] = 1;
    LpOutcome sol = lazy_min(state);
    if (sol.status != LpOutcome::Status::Optimal) {
      throw std::logic_error("solve_facet_lexmin: optimal face vanished");
    }
    point[j] = sol.point[j];
    state.lp.lower[j] = state.lp.upper[j] = point[j];
  }
  return {false, value, std::move(point)};
}

FracDistReport FracDistEngine::evaluate() {
  FracDistReport rep;
  rep.method = method_;
  const std::size_t n = h_.cols();
  const long box_lower_base = static_cast<long>(parity_total_);
  const long box_upper_base = box_lower_base + static_cast<long>(n);

  // Facets through the origin contribute nothing to the minimum and are
  // reported without an LP.
  for (std::size_t i = 0; i < h_.rows(); ++i) {
    if (dup_[i]) continue;
    std::vector<int> supp = h_.row(i).support();
    for (std::size_t b = 0; b < supp.size(); ++b) {
      ConstraintId id;
      id.kind = ConstraintId::Kind::Parity;
      id.row = static_cast<int>(i);
      id.mask = std::uint64_t{1} << b;
      id.global_index = static_cast<long>(row_offset_[i] + odd_rank(id.mask));
      FacetResult fr;
      fr.id = id;
      fr.status = FacetResult::Status::ZeroSkipped;
      rep.per_facet.push_back(std::move(fr));
    }
  }
  for (std::size_t v = 0; v < n; ++v) {
    ConstraintId id;
    id.kind = ConstraintId::Kind::BoxLower;
    id.var = static_cast<int>(v);
    id.global_index = box_lower_base + static_cast<long>(v) + 1;
    FacetResult fr;
    fr.id = id;
    fr.status = FacetResult::Status::ZeroSkipped;
    rep.per_facet.push_back(std::move(fr));
  }
  rep.facets_skipped_active = rep.per_facet.size();

  std::uint64_t total_inactive = n;
  for (std::size_t i = 0; i < h_.rows(); ++i) {
    if (!dup_[i]) total_inactive += inactive_facet_count(h_.row(i).weight());
  }

  struct Solved {
    ConstraintId id;
    std::optional<Rational> popped_bound;  // empty: cached infeasible, no LP run
    SolveOutcome res;
  };
  std::vector<Solved> solved;
  std::optional<Rational> best;
  std::size_t cached_skips = 0;

  auto make_box_task = [&](std::size_t v) {
    Task t;
    t.id.kind = ConstraintId::Kind::BoxUpper;
    t.id.var = static_cast<int>(v);
    t.id.global_index = box_upper_base + static_cast<long>(v) + 1;
    t.gidx = t.id.global_index;
    t.bound = 1;
    return t;
  };
  auto make_parity_task = [&](std::size_t row, std::uint64_t mask, long level) {
    Task t;
    t.id.kind = ConstraintId::Kind::Parity;
    t.id.row = static_cast<int>(row);
    t.id.mask = mask;
    t.id.global_index = static_cast<long>(row_offset_[row] + odd_rank(mask));
    t.gidx = t.id.global_index;
    t.bound = level - 1;
    return t;
  };

  auto run_batch = [&](std::vector<Task>& batch) {
    std::vector<SolveOutcome> outs(batch.size());
    std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(opts_.jobs), batch.size());
    if (workers <= 1) {
      for (std::size_t i = 0; i < batch.size(); ++i) outs[i] = solve_facet(batch[i].id);
    } else {
      std::vector<std::thread> threads;
      std::vector<std::exception_ptr> errors(workers);
      for (std::size_t w = 0; w < workers; ++w) {
        threads.emplace_back([&, w] {
          try {
            for (std::size_t i = w; i < batch.size(); i += workers) {
              outs[i] = solve_facet(batch[i].id);
            }
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      }
      for (std::thread& th : threads) th.join();
      for (const std::exception_ptr& e : errors) {
        if (e) std::rethrow_exception(e);
      }
    }
    for (std::size_t i = 0; i < batch.size(); ++i) {
      rep.facet_lps_solved += 1;
      cache_[key_of(batch[i].id)] =
          outs[i].infeasible ? CacheEntry{true, Rational(0)} : CacheEntry{false, outs[i].value};
      if (!outs[i].infeasible && outs[i].value < batch[i].bound) {
        throw std::logic_error("evaluate: facet value below its lower bound");
      }
      if (!outs[i].infeasible && (!best || outs[i].value < *best)) best = outs[i].value;
      solved.push_back({batch[i].id, batch[i].bound, std::move(outs[i])});
    }
  };

  if (opts_.exhaustive) {
    if (total_inactive > kMaxExhaustiveFacets) {
      throw std::length_error("evaluate: exhaustive sweep too large to materialize");
    }
    std::vector<Task> tasks;
    tasks.reserve(total_inactive);
    for (std::size_t i = 0; i < h_.rows(); ++i) {
      if (dup_[i]) continue;
      std::size_t w = h_.row(i).weight();
      for (std::size_t level = 3; level <= w; level += 2) {
        std::uint64_t mask = (std::uint64_t{1} << level) - 1;
        while (mask < (std::uint64_t{1} << w)) {
          tasks.push_back(make_parity_task(i, mask, static_cast<long>(level)));
          mask = next_same_popcount(mask);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) tasks.push_back(make_box_task(v));
    std::sort(tasks.begin(), tasks.end(), [](const Task& a, const Task& b) { return a.gidx < b.gidx; });
    run_batch(tasks);
  } else {
    // Sources in ascending analytic bound: on a parity facet of subset size
    // s the weight is at least s - 1, and on a box facet at least 1. Cached
    // values override the analytic bound; both stay valid after row appends
    // because appending rows only shrinks each facet's feasible set.
    struct Source {
      Rational bound;
      std::size_t level;  // 0 marks the box batch
    };
    std::vector<Source> sources;
    sources.push_back({Rational(1), 0});
    std::size_t max_w = 0;
    for (std::size_t i = 0; i < h_.rows(); ++i) {
      if (!dup_[i]) max_w = std::max(max_w, h_.row(i).weight());
    }
    for (std::size_t level = 3; level <= max_w; level += 2) {
      sources.push_back({Rational(static_cast<long>(level) - 1), level});
    }
    std::sort(sources.begin(), sources.end(),
              [](const Source& a, const Source& b) { return a.bound < b.bound; });

    auto later = [](const Task& a, const Task& b) {
      int c = cmp(a.bound, b.bound);
      if (c != 0) return c > 0;
      return a.gidx > b.gidx;
    };
    std::priority_queue<Task, std::vector<Task>, decltype(later)> heap(later);

    auto push_task = [&](Task t) {
      auto it = cache_.find(key_of(t.id));
      if (it != cache_.end()) {
        if (it->second.infeasible) {
          ++cached_skips;
          solved.push_back({t.id, std::nullopt, SolveOutcome{true, Rational(0), {}}});
          return;
        }
        t.bound = it->second.value;
      }
      heap.push(std::move(t));
    };
    auto materialize = [&](const Source& src) {
      if (src.level == 0) {
        for (std::size_t v = 0; v < n; ++v) push_task(make_box_task(v));
        return;
      }
      for (std::size_t i = 0; i < h_.rows(); ++i) {
        if (dup_[i]) continue;
        std::size_t w = h_.row(i).weight();
        if (w < src.level) continue;
        std::uint64_t mask = (std::uint64_t{1} << src.level) - 1;
        while (mask < (std::uint64_t{1} << w)) {
          push_task(make_parity_task(i, mask, static_cast<long>(src.level)));
          mask = next_same_popcount(mask);
        }
      }
    };

    std::size_t next_src = 0;
    auto feed = [&] {
      while (next_src < sources.size() && (!best || sources[next_src].bound <= *best) &&
             (heap.empty() || sources[next_src].bound <= heap.top().bound)) {
        materialize(sources[next_src]);
        ++next_src;
      }
    };
    for (;;) {
      feed();
      if (heap.empty()) break;
      if (best && heap.top().bound > *best) break;
      std::vector<Task> batch;
      while (static_cast<int>(batch.size()) < opts_.jobs && !heap.empty() &&
             (!best || heap.top().bound <= *best)) {
        batch.push_back(heap.top());
        heap.pop();
        feed();
      }
      run_batch(batch);
    }
  }

  if (best) {
    rep.status = SweepStatus::Ok;
    rep.d_frac = *best;
    for (const Solved& s : solved) {
      if (s.res.infeasible || s.res.value != *best) continue;
      if (in_fundamental_polytope(h_, s.res.point)) rep.gamma.push_back(s.res.point);
      SolveOutcome refined = solve_facet_lexmin(s.id, *best);
      if (refined.point != s.res.point && in_fundamental_polytope(h_, refined.point)) {
        rep.gamma.push_back(std::move(refined.point));
      }
    }
    std::sort(rep.gamma.begin(), rep.gamma.end(), lex_less);
    rep.gamma.erase(std::unique(rep.gamma.begin(), rep.gamma.end()), rep.gamma.end());
  } else {
    rep.status = SweepStatus::NoFractionalVertex;
  }

  for (Solved& s : solved) {
    if (!opts_.exhaustive) {
      if (s.popped_bound) {
        if (best && *s.popped_bound > *best) continue;
      } else if (best) {
        continue;
      }
    }
    FacetResult fr;
    fr.id = s.id;
    if (s.res.infeasible) {
      fr.status = FacetResult::Status::Infeasible;
    } else {
      fr.status = FacetResult::Status::Value;
      fr.value = std::move(s.res.value);
      fr.point = std::move(s.res.point);
    }
    rep.per_facet.push_back(std::move(fr));
  }
  std::sort(rep.per_facet.begin(), rep.per_facet.end(),
            [](const FacetResult& a, const FacetResult& b) {
              return a.id.global_index < b.id.global_index;
            });
  rep.facets_pruned = static_cast<std::size_t>(total_inactive) - rep.facet_lps_solved - cached_skips;
  return rep;
}

FracDistReport fractional_distance(const BitMatrix& h, Method method, const SweepOptions& opts) {
  FracDistEngine engine(h, method, opts);
  return engine.evaluate();
}

FacetResult facet_min_weight(const BitMatrix& h, const ConstraintId& facet, bool relaxed) {
  const std::size_t n = h.cols();
  bool active = false;
  switch (facet.kind) {
    case ConstraintId::Kind::Parity: {
      if (facet.row < 0 || static_cast<std::size_t>(facet.row) >= h.rows()) {
        throw std::invalid_argument("facet_min_weight: row out of range");
      }
      std::size_t w = h.row(static_cast<std::size_t>(facet.row)).weight();
      if (w > 62) throw std::length_error("facet_min_weight: row weight too large");
      if (facet.mask == 0 || facet.mask >= (std::uint64_t{1} << w)) {
        throw std::invalid_argument("facet_min_weight: mask outside row support");
      }
      if ((std::popcount(facet.mask) & 1) == 0) {
        throw std::invalid_argument("facet_min_weight: subset must be odd");
      }
      active = std::popcount(facet.mask) == 1;
      break;
    }
    case ConstraintId::Kind::BoxLower:
    case ConstraintId::Kind::BoxUpper:
      if (facet.var < 0 || static_cast<std::size_t>(facet.var) >= n) {
        throw std::invalid_argument("facet_min_weight: variable out of range");
      }
      active = facet.kind == ConstraintId::Kind::BoxLower;
      break;
  }
  if (active && relaxed) {
    throw std::invalid_argument("facet_min_weight: active facet has no relaxed restriction");
  }
  FracDistEngine engine(h, relaxed ? Method::Relaxed : Method::Full, {});
  FracDistEngine::SolveOutcome so = engine.solve_facet(facet);
  FacetResult fr;
  fr.id = facet;
  if (so.infeasible) {
    fr.status = FacetResult::Status::Infeasible;
  } else {
    fr.status = FacetResult::Status::Value;
    fr.value = std::move(so.value);
    fr.point = std::move(so.point);
  }
  return fr;
}

std::vector<RationalVector> gamma_set(const BitMatrix& h) {
  return fractional_distance(h, Method::Relaxed).gamma;
}

}  // namespace fraccut
