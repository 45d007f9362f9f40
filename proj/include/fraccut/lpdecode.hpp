#pragma once

#include "fraccut/lp.hpp"

namespace fraccut {

struct DecodeResult {
  enum class Status { Codeword, Fractional };
  Status status = Status::Fractional;
  RationalVector output;  // a vertex of the fundamental polytope
  Rational objective;
};

// Linear-programming decoder: minimize the correlation cost (+1 where the
// received bit is 0, -1 where it is 1) over the fundamental polytope, with
// parity constraints generated on demand. An all-integral optimum is the
// maximum-likelihood codeword; a fractional optimum is a decoding failure.
DecodeResult lp_decode(const BitMatrix& h, const BitVector& received);

// ceil(d_frac / 2 - 1): number of bit errors below which LP decoding is
// guaranteed to return the transmitted codeword. Requires d_frac > 0.
long guaranteed_errors(const Rational& d_frac);

}  // namespace fraccut
