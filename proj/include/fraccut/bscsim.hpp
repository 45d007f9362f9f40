#pragma once

#include <cstdint>

#include "fraccut/lpdecode.hpp"

namespace fraccut {

struct SimPoint {
  Rational crossover;
  std::size_t trials = 0;
  std::size_t block_errors = 0;
  Rational bler;
  std::uint64_t seed = 0;
};

// Monte Carlo block error rate of LP decoding over a binary symmetric
// channel, transmitting the all-zero codeword (the decoder's behaviour is
// symmetric across codewords). A trial is an error unless the decoder
// returns the zero codeword.
//
// Noise generation is pinned so results are reproducible and independent of
// threading: trial t uses mt19937_64 seeded with
// splitmix64(seed + (t + 1) * 0x9E3779B97F4A7C15), draws one 64-bit value
// per bit position in order, and flips the bit when the draw is below
// floor(crossover * 2^64). crossover must lie in [0, 1/2].
SimPoint simulate_bler(const BitMatrix& h, const Rational& crossover, std::size_t trials,
                       std::uint64_t seed, int jobs = 1);

// One point per crossover value; point i uses seed + i as its seed.
std::vector<SimPoint> sweep_bler(const BitMatrix& h, const std::vector<Rational>& crossovers,
                                 std::size_t trials, std::uint64_t seed, int jobs = 1);

}  // namespace fraccut
