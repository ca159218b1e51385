#pragma once

// The functional S_p(L) = log p / (e_p (p^f_p + 1)) and its sums over prime
// ranges, with rigorous tails and stabilized evaluation along towers.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "splitlab/multiquadratic.hpp"

namespace splitlab {

/// Neumaier compensated summation with a running bound on the absolute
/// error of the returned value, counting both the rounding of each term
/// (a few ulps from log and division) and the summation itself.
class CompensatedSum {
 public:
  void add(double x);
  double value() const { return sum_ + compensation_; }
  double error_bound() const;
  std::uint64_t count() const { return count_; }

 private:
  double sum_ = 0.0;
  double compensation_ = 0.0;
  double magnitude_ = 0.0;  // sum of |x|
  std::uint64_t count_ = 0;
};

struct SfrakTerm {
  Prime p;
  unsigned e;
  unsigned f;
  double term;
};

struct SfrakReport {
  std::uint64_t field_degree = 1;
  std::uint64_t prime_lo = 0;
  std::uint64_t prime_hi = 0;
  double partial_sum = 0.0;
  double error_bound = 0.0;
  std::optional<double> tail_upper_bound;
  std::uint64_t primes_counted = 0;
  std::uint64_t chunks = 1;  // sequential reduction, one chunk
  std::optional<std::vector<SfrakTerm>> terms;
};

struct SumOptions {
  bool odd_only = false;
  std::optional<unsigned> residue_mod_4;  // keep only p = r (mod 4)
  bool keep_terms = false;
  std::uint64_t sieve_ceiling = kDefaultSieveCeiling;
};

double sfrak_term(const LocalData& d, Prime p);

template <LocalField F>
double sfrak_term(const F& field, Prime p) {
  return sfrak_term(field.local_data(p), p);
}

/// Sum over the primes of range passing the filters of the term given by
/// `local` at that prime.
SfrakReport sum_local_terms(std::uint64_t degree, PrimeRange range,
                            const SumOptions& options,
                            const std::function<LocalData(Prime)>& local);

template <LocalField F>
SfrakReport sfrak_partial_sum(const F& field, PrimeRange range,
                              const SumOptions& options = {}) {
  return sum_local_terms(field.degree(), range, options,
                         [&](Prime p) { return field.local_data(p); });
}

/// Upper bound for sum_{p > start} log p / (p^2 + 1) by the integral of
/// log x / x^2 from start: (log start + 1) / start. Requires start >= 2.
double tail_bound_fully_inert(std::uint64_t start);

/// Every stage from `stage` on splits p totally in the added generators, so
/// the term of p in the whole tower equals its term at that stage.
struct StabilizationCertificate {
  Prime prime;
  std::size_t stage;
};

/// Raised when a tower sum reaches a prime with no certificate.
class UnstabilizedPrimeError : public InvalidArgument {
 public:
  explicit UnstabilizedPrimeError(std::vector<Prime> offenders);
  const std::vector<Prime>& offenders() const { return offenders_; }

 private:
  std::vector<Prime> offenders_;
};

/// Partial sum of the tower's functional over range: each prime uses the
/// stage named by its certificate. Certificates must be sorted by prime.
/// Stages are assumed increasing under inclusion.
template <LocalField F>
SfrakReport sfrak_tower_sum(std::span<const F> stages, PrimeRange range,
                            std::span<const StabilizationCertificate> certs,
                            const SumOptions& options = {});

namespace detail {
std::optional<std::size_t> certified_stage(
    std::span<const StabilizationCertificate> certs, Prime p,
    std::size_t stage_count);
bool passes_filter(Prime p, const SumOptions& options);
}  // namespace detail

template <LocalField F>
SfrakReport sfrak_tower_sum(std::span<const F> stages, PrimeRange range,
                            std::span<const StabilizationCertificate> certs,
                            const SumOptions& options) {
  if (stages.empty()) throw InvalidArgument("sfrak_tower_sum: no stages");
  std::vector<Prime> offenders;
  for_each_prime(
      range,
      [&](Prime p) {
        if (!detail::passes_filter(p, options)) return;
        if (!detail::certified_stage(certs, p, stages.size()))
          offenders.push_back(p);
      },
      options.sieve_ceiling);
  if (!offenders.empty()) throw UnstabilizedPrimeError(std::move(offenders));
  return sum_local_terms(stages.back().degree(), range, options, [&](Prime p) {
    return stages[*detail::certified_stage(certs, p, stages.size())]
        .local_data(p);
  });
}

}  // namespace splitlab
