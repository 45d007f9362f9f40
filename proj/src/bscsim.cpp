#include "fraccut/bscsim.hpp"

#include <exception>
#include <random>
#include <stdexcept>
#include <thread>
#include <vector>

namespace fraccut {

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) {
  return splitmix64(seed + (static_cast<std::uint64_t>(trial) + 1) * 0x9E3779B97F4A7C15ull);
}

std::uint64_t flip_threshold(const Rational& crossover) {
  // floor(crossover * 2^64); crossover <= 1/2 keeps this below 2^64.
  mpz_class scaled = (crossover.get_num() << 64) / crossover.get_den();
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, scaled.get_mpz_t());
  return out;
}

bool run_trial(const BitMatrix& h, std::uint64_t threshold, std::uint64_t seed_value) {
  std::mt19937_64 gen(seed_value);
  BitVector received(h.cols());
  for (std::size_t i = 0; i < h.cols(); ++i) {
    if (gen() < threshold) received.set(i, true);
  }
  DecodeResult dec = lp_decode(h, received);
  if (dec.status != DecodeResult::Status::Codeword) return true;
  for (const Rational& x : dec.output) {
    if (x != 0) return true;
  }
  return false;
}

}  // namespace

SimPoint simulate_bler(const BitMatrix& h, const Rational& crossover, std::size_t trials,
                       std::uint64_t seed, int jobs) {
  if (crossover < 0 || crossover > rational(1, 2)) {
    throw std::invalid_argument("simulate_bler: crossover outside [0, 1/2]");
  }
  if (trials == 0) throw std::invalid_argument("simulate_bler: zero trials");
  if (jobs < 1) throw std::invalid_argument("simulate_bler: jobs must be positive");
  const std::uint64_t threshold = flip_threshold(crossover);

  std::size_t errors = 0;
  std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), trials);
  if (workers <= 1) {
    for (std::size_t t = 0; t < trials; ++t) {
      if (run_trial(h, threshold, trial_seed(seed, t))) ++errors;
    }
  } else {
    // Per-trial seeding makes each trial independent of the partition, so
    // striding over workers tallies the same count in any interleaving.
    std::vector<std::size_t> counts(workers, 0);
    std::vector<std::exception_ptr> fails(workers);
    std::vector<std::thread> threads;
    for (std::size_t w = 0; w < workers; ++w) {
      threads.emplace_back([&, w] {
        try {
          for (std::size_t t = w; t < trials; t += workers) {
            if (run_trial(h, threshold, trial_seed(seed, t))) ++counts[w];
          }
        } catch (...) {
          fails[w] = std::current_exception();
        }
      });
    }
    for (std::thread& th : threads) th.join();
    for (const std::exception_ptr& e : fails) {
      if (e) std::rethrow_exception(e);
    }
    for (std::size_t c : counts) errors += c;
  }

  SimPoint point;
  point.crossover = crossover;
  point.trials = trials;
  point.block_errors = errors;
  point.bler = Rational(static_cast<unsigned long>(errors), static_cast<unsigned long>(trials));
  point.bler.canonicalize();
  point.seed = seed;
  return point;
}

std::vector<SimPoint> sweep_bler(const BitMatrix& h, const std::vector<Rational>& crossovers,
                                 std::size_t trials, std::uint64_t seed, int jobs) {
  std::vector<SimPoint> out;
  out.reserve(crossovers.size());
  for (std::size_t i = 0; i < crossovers.size(); ++i) {
    out.push_back(simulate_bler(h, crossovers[i], trials, seed + i, jobs));
  }
  return out;
}

}  // namespace fraccut
