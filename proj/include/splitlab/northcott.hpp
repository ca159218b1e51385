#pragma once

// Two-sided bounds on the Northcott number of the maximal field in which a
// finite set of primes splits totally, and the selection of a window of
// consecutive primes putting both bounds in a target interval.

#include <cstdint>
#include <vector>

#include "splitlab/primes.hpp"

namespace splitlab {

/// No window exists for the requested (r, epsilon).
class Infeasible : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

struct NorthcottBounds {
  std::vector<Prime> primes;  // sorted
  double lower = 0.0;  // 1/2 sum log p / (p + 1)
  double upper = 0.0;  // sum log p / (p - 1)
};

NorthcottBounds northcott_bounds(std::vector<Prime> primes);

struct PrimeWindow {
  std::uint64_t l = 0;   // tail of the bound gaps is <= epsilon from here
  std::uint64_t j = 0;   // first index with log p / (p + 1) < epsilon
  std::uint64_t c = 0;   // max(j, l)
  std::uint64_t j0 = 0;  // last index of the window
  double tail_bound = 0.0;  // certified bound on the gap tail from l
  NorthcottBounds bounds;   // over p_c, ..., p_j0
};

struct WindowOptions {
  std::uint64_t tail_ceiling = 1'000'000;
  std::uint64_t sieve_ceiling = kDefaultSieveCeiling;
};

/// Consecutive primes p_c..p_j0 (1-based, p_1 = 2) with
/// r - epsilon < lower and upper <= 2r, re-verified before returning.
PrimeWindow select_prime_window(double r, double epsilon,
                                const WindowOptions& options = {});

/// Certified upper bound on sum_{p > x} 2 log p / (p^2 - 1):
/// 2 (log x + 1) / x * x^2 / (x^2 - 1).
double gap_tail_bound(std::uint64_t x);

}  // namespace splitlab
