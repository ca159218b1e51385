#pragma once

// Multiquadratic fields as subgroups of Q^*/(Q^*)^2, with exact local data
// at every prime including 2.

#include <concepts>
#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "splitlab/bigint.hpp"
#include "splitlab/quadratic.hpp"

namespace splitlab {

/// A field whose local data at every rational prime can be computed.
template <class F>
concept LocalField = requires(const F& field, Prime p) {
  { field.degree() } -> std::convertible_to<std::uint64_t>;
  { field.local_data(p) } -> std::same_as<LocalData>;
};

inline constexpr unsigned kMaxEnumerationRank = 20;

/// Compositum of Q(sqrt m) over a square-class group given by a reduced
/// F2 basis. Letters are the sign (-1) and the primes, ordered
/// -1 < 2 < 3 < 5 < ...; each basis vector is pivoted on its largest letter
/// and no other basis vector contains that pivot, so the basis is canonical.
class MultiquadField {
 public:
  MultiquadField() = default;  // Q
  static MultiquadField generated_by(std::span<const SquarefreeInt> generators);

  const std::vector<SquarefreeInt>& basis() const { return basis_; }
  unsigned rank() const { return static_cast<unsigned>(basis_.size()); }
  std::uint64_t degree() const { return std::uint64_t{1} << rank(); }

  MultiquadField adjoin(const SquarefreeInt& m) const;
  bool contains_sqrt(const SquarefreeInt& m) const;
  bool is_totally_real() const;
  LocalData local_data(Prime p) const;
  bool totally_split(Prime p) const;

  /// All 2^rank - 1 nontrivial classes, ascending. ResourceError above
  /// kMaxEnumerationRank.
  std::vector<SquarefreeInt> classes() const;

  friend bool operator==(const MultiquadField& a, const MultiquadField& b) {
    return a.basis_ == b.basis_;
  }

 private:
  using Letters = std::vector<std::uint64_t>;  // sorted; 0 stands for -1

  static Letters letters_of(const SquarefreeInt& m);
  static SquarefreeInt from_letters(const Letters& letters);
  Letters reduce(Letters v) const;
  void insert(Letters v);

  std::vector<Letters> rows_;  // pivot descending
  std::vector<SquarefreeInt> basis_;  // ascending by value
};

MultiquadField adjoin(const MultiquadField& field, const SquarefreeInt& m);
bool contains_sqrt(const MultiquadField& field, const SquarefreeInt& m);
bool linearly_disjoint(const MultiquadField& a, const MultiquadField& b);
bool is_totally_real(const MultiquadField& field);
LocalData local_data(const MultiquadField& field, Prime p);
bool totally_split(const MultiquadField& field, Prime p);
MultiquadField compositum(const MultiquadField& a, const MultiquadField& b);

/// q is totally split in the field so far and inert in Q(sqrt m). Every
/// class of the field is then a square at q while m is not, so m is new.
struct InertWitness {
  Prime q;
};

/// ell is prime, ramified in Q(sqrt m) and unramified in the field so far.
struct RamifiedWitness {
  BigInt ell;
};

using IndependenceWitness = std::variant<InertWitness, RamifiedWitness>;

/// Multiquadratic field given by generators of any size, with a checked
/// certificate that each generator doubles the degree. Used for towers
/// whose generators are too large to factor.
class TowerField {
 public:
  TowerField() = default;  // Q

  /// Throws VerificationError if the witness does not prove independence.
  TowerField adjoin(QuadraticGenerator generator,
                    IndependenceWitness witness) const;

  const std::vector<QuadraticGenerator>& generators() const {
    return generators_;
  }
  const std::vector<IndependenceWitness>& witnesses() const {
    return witnesses_;
  }
  unsigned rank() const { return static_cast<unsigned>(generators_.size()); }
  std::uint64_t degree() const { return std::uint64_t{1} << rank(); }

  LocalData local_data(Prime p) const;
  bool totally_split(Prime p) const;
  bool is_totally_real() const;

 private:
  std::vector<QuadraticGenerator> generators_;
  std::vector<IndependenceWitness> witnesses_;
};

static_assert(LocalField<MultiquadField>);
static_assert(LocalField<TowerField>);

}  // namespace splitlab
