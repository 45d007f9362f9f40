#include "fraccut/lpdecode.hpp"

#include <set>
#include <stdexcept>
#include <utility>

namespace fraccut {

DecodeResult lp_decode(const BitMatrix& h, const BitVector& received) {
  if (received.size() != h.cols()) throw std::invalid_argument("lp_decode: length mismatch");
  const std::size_t n = h.cols();
  std::vector<bool> dup = duplicate_row_flags(h);
  LpProblem lp;
  lp.n = n;
  lp.objective.assign(n, Rational(1));
  for (std::size_t j = 0; j < n; ++j) {
    if (received.get(j)) lp.objective[j] = -1;
  }
  lp.lower.assign(n, Rational(0));
  lp.upper.assign(n, Rational(1));
  std::set<std::pair<int, std::uint64_t>> added;
  for (;;) {
    LpOutcome sol = solve_min(lp);
    if (sol.status != LpOutcome::Status::Optimal) {
      throw std::logic_error("lp_decode: the fundamental polytope cannot be empty");
    }
    bool grew = false;
    for (std::size_t r = 0; r < h.rows(); ++r) {
      if (dup[r]) continue;
      auto violated = most_violated_parity(h.row(r), sol.point, static_cast<int>(r));
      if (!violated) continue;
      auto tag = std::make_pair(static_cast<int>(r), violated->first.mask);
      if (added.contains(tag)) continue;
      added.insert(tag);
      lp.rows.push_back(std::move(violated->second));
      grew = true;
    }
    if (grew) continue;
    DecodeResult out;
    out.output = std::move(sol.point);
    out.objective = std::move(sol.value);
    out.status = DecodeResult::Status::Codeword;
    for (const Rational& x : out.output) {
      if (x != 0 && x != 1) {
        out.status = DecodeResult::Status::Fractional;
        break;
      }
    }
    return out;
  }
}

long guaranteed_errors(const Rational& d_frac) {
  if (d_frac <= 0) throw std::invalid_argument("guaranteed_errors: distance must be positive");
  // ceil((d - 2) / 2) over exact integers.
  mpz_class num = d_frac.get_num() - 2 * d_frac.get_den();
  mpz_class den = 2 * d_frac.get_den();
  mpz_class q;
  mpz_cdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  if (!q.fits_slong_p()) throw std::overflow_error("guaranteed_errors: result does not fit");
  return q.get_si();
}

}  // namespace fraccut
