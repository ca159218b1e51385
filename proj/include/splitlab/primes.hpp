#pragma once

// Exact elementary number theory on machine integers: prime generation,
// primality, residue symbols, CRT and factored integers.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

#include <gmpxx.h>

#include "splitlab/errors.hpp"

namespace splitlab {

using Prime = std::uint64_t;
using BigInt = mpz_class;

inline constexpr std::uint64_t kDefaultSieveCeiling = 100'000'000;
inline constexpr std::uint64_t kDefaultApBudget = 10'000'000;
inline constexpr std::uint64_t kTrialDivisionCeiling = 10'000'000;

/// Closed interval [lo, hi] of integers, lo >= 2.
class PrimeRange {
 public:
  PrimeRange(std::uint64_t lo, std::uint64_t hi);

  std::uint64_t lo() const { return lo_; }
  std::uint64_t hi() const { return hi_; }
  bool contains(std::uint64_t n) const { return lo_ <= n && n <= hi_; }

 private:
  std::uint64_t lo_;
  std::uint64_t hi_;
};

/// Segmented sieve yielding the primes of a range in increasing order.
class PrimeStream {
 public:
  explicit PrimeStream(PrimeRange range,
                       std::uint64_t ceiling = kDefaultSieveCeiling);

  std::optional<Prime> next();

 private:
  void fill_segment();

  std::uint64_t hi_;
  std::uint64_t segment_lo_;
  std::vector<std::uint32_t> base_primes_;
  std::vector<std::uint8_t> composite_;
  std::size_t cursor_ = 0;
  bool exhausted_ = false;
};

/// Calls fn(p) for each prime of the range. If fn returns bool, a false
/// return stops the scan.
template <class Fn>
void for_each_prime(PrimeRange range, Fn&& fn,
                    std::uint64_t ceiling = kDefaultSieveCeiling) {
  PrimeStream stream(range, ceiling);
  while (auto p = stream.next()) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, Prime>, bool>) {
      if (!fn(*p)) return;
    } else {
      fn(*p);
    }
  }
}

std::vector<Prime> sieve_primes(PrimeRange range,
                                std::uint64_t ceiling = kDefaultSieveCeiling);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);

/// Deterministic for every 64-bit input (Miller-Rabin on the first twelve
/// prime bases).
bool is_prime(std::uint64_t n);

/// Kronecker symbol (a|n). Throws InvalidArgument for n = 0.
int kronecker(std::int64_t a, std::int64_t n);

/// Smallest positive quadratic non-residue modulo an odd prime.
std::uint64_t smallest_nonresidue(Prime p);

struct Congruence {
  std::int64_t residue;
  std::int64_t modulus;

  friend bool operator==(const Congruence&, const Congruence&) = default;
};

/// Unique class modulo the product of the (pairwise coprime, >= 2) moduli.
/// The residue is the smallest non-negative representative. A product that
/// leaves int64 raises ResourceError.
Congruence crt_solve(std::span<const Congruence> congruences);

/// Smallest prime p = residue (mod modulus) with p > min_value. Requires
/// gcd(residue, modulus) = 1.
Prime find_prime_in_ap(std::int64_t residue, std::int64_t modulus,
                       std::int64_t min_value,
                       std::uint64_t budget = kDefaultApBudget);

struct PrimePower {
  Prime prime;
  unsigned exponent;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A nonzero integer held as sign * prod p^a with strictly increasing primes.
class FactoredInt {
 public:
  FactoredInt(int sign, std::vector<PrimePower> factors);

  /// Trial division up to kTrialDivisionCeiling; a cofactor that cannot be
  /// certified prime is rejected with ResourceError.
  static FactoredInt of(std::int64_t value);

  int sign() const { return sign_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  BigInt value() const;
  std::optional<std::int64_t> to_int64() const;

  /// Non-negative residue of the value modulo m >= 1.
  std::uint64_t mod(std::uint64_t m) const;
  unsigned valuation(Prime p) const;
  bool is_squarefree() const;

  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;

 private:
  int sign_;
  std::vector<PrimePower> factors_;
};

FactoredInt squarefree_kernel(const FactoredInt& n);

std::string to_string(const FactoredInt& n);

}  // namespace splitlab
