#pragma once

// Executable versions of the field constructions: quadratic fields with
// prescribed splitting, the tower with divergent functional whose
// adjunction of i converges, the tower that also meets the discriminant
// growth criterion, and the reciprocity companion search.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "splitlab/sfrak.hpp"

namespace splitlab {

enum class TwoBehavior { Unconstrained, Split, Inert, Ramified };
enum class Signature { TotallyReal, TotallyComplex };

std::string_view to_string(TwoBehavior b);
std::string_view to_string(Signature s);

/// Pairwise disjoint sets of odd primes with the wanted behavior, plus
/// optional constraints at 2 and at infinity.
struct SplittingSpec {
  std::vector<Prime> split;
  std::vector<Prime> inert;
  std::vector<Prime> ramified;
  TwoBehavior two = TwoBehavior::Unconstrained;
  Signature signature = Signature::TotallyReal;
};

/// Throws InvalidArgument naming the first violated invariant. Sorts and
/// deduplicates the sets in place.
void normalize(SplittingSpec& spec);

/// Behaviors of Q(sqrt m) that differ from the spec, one line each; empty
/// when m realizes it. Residues are taken with a remainder tree, so specs
/// with many primes are cheap.
std::vector<std::string> spec_violations(const BigInt& m,
                                         const SplittingSpec& spec);

struct PrescribedQuadratic {
  BigInt m;        // CRT representative; Q(sqrt m) realizes the spec
  BigInt modulus;  // modulus of the CRT class of m
  std::optional<Prime> auxiliary_prime;
  /// m' = squarefree kernel of m, when m factors within reach.
  std::optional<SquarefreeInt> kernel;
  bool verified = false;
};

struct QuadraticOptions {
  bool compute_kernel = true;
};

PrescribedQuadratic construct_prescribed_quadratic(SplittingSpec spec,
                                                   QuadraticOptions options = {});

/// One checked inequality or identity of a construction.
struct CertifiedInequality {
  std::string name;
  double lhs;
  std::string relation;  // ">=", "<=", "<", ">", "=="
  double rhs;
  bool holds;
  std::string detail;
};

CertifiedInequality certify(std::string name, double lhs, std::string relation,
                            double rhs, std::string detail = {});

/// Growth of the relative discriminant at the step L_{i-1} < L_i.
struct WidmerTerm {
  unsigned stage;
  BigInt prime;                 // the norm is prime^exponent
  std::uint64_t norm_exponent;  // [L_{i-1} : Q]
  double log_norm;
  double log_widmer_quantity;   // log of norm^(1/([L_i:Q][L_i:L_{i-1}]))
  std::optional<double> widmer_quantity;  // when it fits a double
};

struct StageRecord {
  unsigned index = 0;
  std::uint64_t n = 0;
  std::vector<BigInt> auxiliary_primes;
  BigInt field_added;
  std::uint64_t cumulative_degree = 1;
  double block_sum = 0.0;
  std::vector<CertifiedInequality> certificates;
  std::optional<PocklingtonCertificate> primality;
  std::optional<WidmerTerm> widmer;
};

struct ConstructionTrace {
  std::string construction;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<StageRecord> stages;
  std::vector<CertifiedInequality> certificates;
  std::vector<TowerField> fields;  // L_0 = Q, L_1, ..., L_K

  bool accepted() const;
};

struct TowerOptions {
  unsigned stages = 3;
  double sum_target = 1.0;
  std::uint64_t sieve_ceiling = kDefaultSieveCeiling;
  std::uint64_t ap_budget = kDefaultApBudget;
};

/// The tower L_k = F_1...F_k with n_0 = 1 and, for each k:
///   block   P_{k+1} = {p = 3 (mod 4) : n_k <= p < n_{k+1}}, n_{k+1} minimal
///           with sum over the block of S_p(L_k) >= target;
///   q       the smallest prime = 1 (mod 4) totally split in L_k;
///   F_{k+1} the prescribed quadratic field with every p <= n_{k+1},
///           p = 3 (mod 4) split and every p <= n_{k+1}, p = 1 (mod 4),
///           together with q, inert.
ConstructionTrace build_theorem_1_2_tower(const TowerOptions& options);

/// Sums over the tower's certified blocks (p = 3 mod 4 below n_K), each
/// prime at the stage where it stabilizes.
SfrakReport theorem_1_2_block_sum(const ConstructionTrace& trace,
                                  std::uint64_t sieve_ceiling = kDefaultSieveCeiling);

struct AdjoinIBound {
  SfrakReport report;  // partial sum of the bounding terms and the tail
  double total = 0.0;
  std::uint64_t certified_inert = 0;    // p = 1 (mod 4) inert by some F_k
  std::uint64_t continuation_primes = 0;  // p = 1 (mod 4) at or past n_K
  double continuation_sum = 0.0;
};

/// Upper bound for the functional of L(i), L the tower of the trace, over
/// p <= prime_ceiling plus the tail beyond it.
AdjoinIBound certify_adjoin_i_convergence(const ConstructionTrace& trace,
                                          std::uint64_t prime_ceiling);

/// The tower Q(sqrt p_1, ..., sqrt p_K): n_i minimal with the block sum
/// over n_{i-1} < p <= n_i of S_p(L_{i-1}) at least 1 (n_0 = 1, so 2 is in
/// the first block), and p_i the smallest prime = 1 (mod 4 prod_{q<=n_i} q)
/// above max(n_i, p_{i-1}).
ConstructionTrace build_prop_7_1_tower(const TowerOptions& options);

enum class CompanionWant { Inert, Split };

struct InertCompanion {
  Prime q;
  SplittingType p_in_q;                 // p in Q(sqrt q)
  std::optional<SplittingType> q_in_p;  // q in Q(sqrt p), when q = 1 mod 4
};

/// Smallest prime q = 1 (mod 2^m), q != p, such that p has the wanted
/// behavior in Q(sqrt q).
InertCompanion search_inert_companion(Prime p, unsigned m, CompanionWant want,
                                      std::uint64_t budget = kDefaultApBudget);

}  // namespace splitlab
