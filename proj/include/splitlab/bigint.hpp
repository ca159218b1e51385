#pragma once

// Arbitrary-precision helpers for the construction layer: product and
// remainder trees, CRT over many word-sized moduli, and primes of the form
// k*M + 1 with Pocklington certificates.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "splitlab/primes.hpp"

namespace splitlab {

/// Balanced product tree over word-sized moduli. levels()[0] holds the
/// leaves, levels().back() the single root.
class ProductTree {
 public:
  explicit ProductTree(std::span<const std::uint64_t> leaves);

  const BigInt& root() const { return levels_.back().front(); }
  const std::vector<std::vector<BigInt>>& levels() const { return levels_; }
  std::size_t size() const { return levels_.front().size(); }

 private:
  std::vector<std::vector<BigInt>> levels_;
};

/// x mod m for every modulus, via a remainder tree (moduli >= 1).
std::vector<std::uint64_t> residues_mod(const BigInt& x,
                                        std::span<const std::uint64_t> moduli);
std::vector<std::uint64_t> residues_mod(const BigInt& x,
                                        const ProductTree& tree);

struct WordCongruence {
  std::uint64_t residue;
  std::uint64_t modulus;
};

struct BigCongruence {
  BigInt residue;  // smallest non-negative representative
  BigInt modulus;
};

/// CRT for pairwise coprime moduli in [2, 2^32). Coprimality is the
/// caller's contract; it is checked by reducing the result.
BigCongruence crt_big(std::span<const WordCongruence> congruences);

/// Kronecker symbol (x|p) for an odd prime p.
int kronecker_big(const BigInt& x, Prime p);

std::string to_decimal(const BigInt& x);
std::string to_hex(const BigInt& x);
BigInt from_decimal(const std::string& s);
BigInt from_hex(const std::string& s);

/// Pocklington certificate for n = k*M + 1 with M = prod q fully factored
/// and M > sqrt(n): each q comes with a base a such that a^(n-1) = 1 and
/// gcd(a^((n-1)/q) - 1, n) = 1 (mod n).
struct PocklingtonCertificate {
  BigInt n;
  BigInt k;
  std::vector<PrimePower> modulus_factors;
  std::vector<std::uint32_t> bases;  // parallel to modulus_factors
};

bool verify_pocklington(const PocklingtonCertificate& cert);

struct CertifiedPrime {
  PocklingtonCertificate certificate;
  std::uint64_t candidates_tested;
};

/// Smallest prime n = 1 (mod M) with n > min_value, M = prod of the given
/// prime powers. Candidates are sieved, screened by a base-2 Fermat test
/// and proven prime by Pocklington. At most `budget` values of k are
/// examined; exhaustion raises ResourceError.
CertifiedPrime find_prime_one_mod(std::span<const PrimePower> modulus_factors,
                                  const BigInt& min_value,
                                  std::uint64_t budget = kDefaultApBudget);

/// Complete factorization of |x| when it is within reach: trial division by
/// primes below 10^6, then Pollard-Brent on a cofactor below 2^64.
/// Returns nullopt when some factor cannot be found or exceeds 64 bits.
std::optional<FactoredInt> try_factor(const BigInt& x);

}  // namespace splitlab
