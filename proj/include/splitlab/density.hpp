#pragma once

// Counts of totally split primes against the density 1/[K:Q] and its
// refinement to a residue class mod 4. Statistical checks, not proofs.

#include <cstdint>
#include <optional>
#include <vector>

#include "splitlab/multiquadratic.hpp"

namespace splitlab {

struct DensityReport {
  std::uint64_t degree = 1;
  std::uint64_t x = 0;
  std::optional<unsigned> residue_filter;  // r in {1, 3}: p = r (mod 4)
  std::uint64_t count = 0;
  double density = 0.0;  // expected natural density
  double expected = 0.0;  // density * x / log x
  std::optional<double> ratio;  // count / expected, when expected > 0
};

/// Natural density of totally split primes, restricted to p = r (mod 4)
/// when a filter is given: 1/d unfiltered; with a filter, 1/(2d) if i is
/// not in K, else 1/d for r = 1 and 0 for r = 3.
double split_density(const MultiquadField& field,
                     std::optional<unsigned> residue_filter);

DensityReport count_totally_split(const MultiquadField& field, std::uint64_t x,
                                  std::optional<unsigned> residue_filter = {},
                                  std::uint64_t sieve_ceiling = kDefaultSieveCeiling);

double reciprocal_sum_totally_split(
    const MultiquadField& field, std::uint64_t x,
    std::optional<unsigned> residue_filter = {},
    std::uint64_t sieve_ceiling = kDefaultSieveCeiling);

/// Reports at x = 100, 200, 400, ... and at x itself, from one scan.
std::vector<DensityReport> density_series(
    const MultiquadField& field, std::uint64_t x,
    std::optional<unsigned> residue_filter = {},
    std::uint64_t sieve_ceiling = kDefaultSieveCeiling);

}  // namespace splitlab
