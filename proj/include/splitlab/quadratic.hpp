#pragma once

// Quadratic fields Q(sqrt m): discriminant, splitting types and the local
// square classes that drive local data in composita.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "splitlab/primes.hpp"

namespace splitlab {

/// Ramification index, inertia degree and number of primes above p.
struct LocalData {
  unsigned e = 1;
  unsigned f = 1;
  std::uint64_t g = 1;

  friend bool operator==(const LocalData&, const LocalData&) = default;
};

enum class SplittingType { Split, Inert, Ramified };

std::string_view to_string(SplittingType t);

/// Image of a nonzero rational in Q_p^* / (Q_p^*)^2, packed into bits.
/// Bit 0 is the parity of the valuation. For odd p, bit 1 says the unit
/// part is a non-residue. For p = 2 the unit u = (-1)^a 5^b (mod 8) gives
/// bit 1 = a and bit 2 = b.
using SquareClass = unsigned;

/// The class that generates the unramified quadratic extension of Q_p:
/// a non-residue unit for odd p, the class of 5 for p = 2.
SquareClass unramified_nonsquare(Prime p);

/// Local data of the compositum of Q(sqrt x) over x in the span of the
/// given classes, for a field of the given degree over Q.
LocalData local_data_from_classes(std::span<const SquareClass> classes,
                                  std::uint64_t degree, Prime p);

SquareClass square_class(const FactoredInt& x, Prime p);
SquareClass square_class(const BigInt& x, Prime p);

/// Splitting of p in Q(sqrt x) read off the square class of x at p.
SplittingType splitting_type_of_class(SquareClass c, Prime p);

/// A squarefree integer other than 0 and 1; denotes Q(sqrt m).
class SquarefreeInt {
 public:
  explicit SquarefreeInt(FactoredInt value);
  static SquarefreeInt of(std::int64_t value);

  const FactoredInt& factored() const { return value_; }
  BigInt value() const { return value_.value(); }
  int sign() const { return value_.sign(); }

  friend bool operator==(const SquarefreeInt&, const SquarefreeInt&) = default;

 private:
  FactoredInt value_;
};

std::string to_string(const SquarefreeInt& m);

/// m if m = 1 (mod 4), else 4m.
BigInt discriminant(const SquarefreeInt& m);

SplittingType splitting_type(const SquarefreeInt& m, Prime p);
LocalData local_data_quadratic(const SquarefreeInt& m, Prime p);

/// Precomputed residues of one big integer modulo a sorted list of primes.
struct ResidueCache {
  std::vector<Prime> primes;
  std::vector<std::uint64_t> residues;

  std::optional<std::uint64_t> lookup(Prime p) const;
};

/// A non-square integer of any size standing for Q(sqrt value). It need not
/// be squarefree or factored; every local question goes through square
/// classes, which only see the value modulo squares.
class QuadraticGenerator {
 public:
  explicit QuadraticGenerator(BigInt value,
                              std::shared_ptr<const ResidueCache> cache = {});

  const BigInt& value() const { return value_; }
  int sign() const { return sgn(value_); }
  const std::shared_ptr<const ResidueCache>& cache() const { return cache_; }

  SquareClass square_class(Prime p) const;
  SplittingType splitting_type(Prime p) const;

 private:
  BigInt value_;
  std::shared_ptr<const ResidueCache> cache_;
};

}  // namespace splitlab
