#include "splitlab/quadratic.hpp"

#include <algorithm>
#include <bit>

namespace splitlab {

namespace {

// Square class of an odd unit u given u mod 8.
SquareClass two_adic_unit_class(std::uint64_t u_mod_8) {
  switch (u_mod_8) {
    case 1: return 0b000;
    case 3: return 0b110;  // 3 = -5
    case 5: return 0b100;
    case 7: return 0b010;  // 7 = -1
  }
  throw InvalidArgument("two_adic_unit_class: even residue");
}

SquareClass odd_unit_class(std::uint64_t residue, Prime p) {
  const int k = kronecker(static_cast<std::int64_t>(residue),
                          static_cast<std::int64_t>(p));
  return k == -1 ? 0b10 : 0b00;
}

}  // namespace

std::string_view to_string(SplittingType t) {
  switch (t) {
    case SplittingType::Split: return "split";
    case SplittingType::Inert: return "inert";
    case SplittingType::Ramified: return "ramified";
  }
  return "?";
}

SquareClass unramified_nonsquare(Prime p) { return p == 2 ? 0b100 : 0b10; }

LocalData local_data_from_classes(std::span<const SquareClass> classes,
                                  std::uint64_t degree, Prime p) {
  // The local square-class group has order 4 (odd p) or 8 (p = 2), so the
  // span is found by closing a bitmask of members under xor.
  std::uint8_t members = 1;  // bit c set <=> class c in the span
  for (SquareClass c : classes) {
    std::uint8_t shifted = 0;
    for (unsigned x = 0; x < 8; ++x)
      if (members & (1u << x)) shifted |= static_cast<std::uint8_t>(1u << (x ^ c));
    members |= shifted;
  }
  const unsigned size = static_cast<unsigned>(std::popcount(members));
  LocalData d;
  d.f = (members >> unramified_nonsquare(p)) & 1 ? 2 : 1;
  d.e = size / d.f;
  d.g = degree / (d.e * d.f);
  return d;
}

SquareClass square_class(const FactoredInt& x, Prime p) {
  const unsigned v = x.valuation(p);
  const std::uint64_t modulus = p == 2 ? 8 : p;
  std::uint64_t unit = x.sign() < 0 ? modulus - 1 : 1;
  for (const auto& f : x.factors())
    if (f.prime != p)
      unit = mulmod(unit, powmod(f.prime, f.exponent, modulus), modulus);
  const SquareClass unit_class =
      p == 2 ? two_adic_unit_class(unit) : odd_unit_class(unit, p);
  return unit_class | (v & 1);
}

SquareClass square_class(const BigInt& x, Prime p) {
  if (x == 0) throw InvalidArgument("square_class: zero has no square class");
  if (p == 2) {
    const auto v = mpz_scan1(x.get_mpz_t(), 0);
    BigInt u;
    mpz_fdiv_q_2exp(u.get_mpz_t(), x.get_mpz_t(), v);
    return two_adic_unit_class(mpz_fdiv_ui(u.get_mpz_t(), 8)) | (v & 1);
  }
  const std::uint64_t r = mpz_fdiv_ui(x.get_mpz_t(), p);
  if (r != 0) return odd_unit_class(r, p);
  BigInt u;
  const auto v = mpz_remove(u.get_mpz_t(), x.get_mpz_t(),
                            BigInt(static_cast<unsigned long>(p)).get_mpz_t());
  return odd_unit_class(mpz_fdiv_ui(u.get_mpz_t(), p), p) | (v & 1);
}

SplittingType splitting_type_of_class(SquareClass c, Prime p) {
  if (c == 0) return SplittingType::Split;
  if (c == unramified_nonsquare(p)) return SplittingType::Inert;
  return SplittingType::Ramified;
}

SquarefreeInt::SquarefreeInt(FactoredInt value) : value_(std::move(value)) {
  if (!value_.is_squarefree())
    throw InvalidArgument("SquarefreeInt: " + to_string(value_) +
                          " is not squarefree");
  if (value_.sign() == 1 && value_.factors().empty())
    throw InvalidArgument("SquarefreeInt: 1 denotes Q itself");
}

SquarefreeInt SquarefreeInt::of(std::int64_t value) {
  return SquarefreeInt(FactoredInt::of(value));
}

std::string to_string(const SquarefreeInt& m) {
  return m.value().get_str();
}

BigInt discriminant(const SquarefreeInt& m) {
  return m.factored().mod(4) == 1 ? m.value() : BigInt(4 * m.value());
}

SplittingType splitting_type(const SquarefreeInt& m, Prime p) {
  const FactoredInt& x = m.factored();
  if (p == 2) {
    const std::uint64_t r8 = x.mod(8);
    if (r8 % 4 == 2 || r8 % 4 == 3) return SplittingType::Ramified;
    return r8 == 1 ? SplittingType::Split : SplittingType::Inert;
  }
  const int k = kronecker(static_cast<std::int64_t>(x.mod(p)),
                          static_cast<std::int64_t>(p));
  if (k == 0) return SplittingType::Ramified;
  return k == 1 ? SplittingType::Split : SplittingType::Inert;
}

LocalData local_data_quadratic(const SquarefreeInt& m, Prime p) {
  switch (splitting_type(m, p)) {
    case SplittingType::Ramified: return {2, 1, 1};
    case SplittingType::Inert: return {1, 2, 1};
    case SplittingType::Split: return {1, 1, 2};
  }
  return {};
}

std::optional<std::uint64_t> ResidueCache::lookup(Prime p) const {
  const auto it = std::lower_bound(primes.begin(), primes.end(), p);
  if (it == primes.end() || *it != p) return std::nullopt;
  return residues[static_cast<std::size_t>(it - primes.begin())];
}

QuadraticGenerator::QuadraticGenerator(BigInt value,
                                       std::shared_ptr<const ResidueCache> cache)
    : value_(std::move(value)), cache_(std::move(cache)) {
  if (value_ == 0) throw InvalidArgument("QuadraticGenerator: zero");
  if (sgn(value_) > 0 && mpz_perfect_square_p(value_.get_mpz_t()))
    throw InvalidArgument("QuadraticGenerator: value is a perfect square");
  if (cache_ && cache_->primes.size() != cache_->residues.size())
    throw InvalidArgument("QuadraticGenerator: malformed residue cache");
}

SquareClass QuadraticGenerator::square_class(Prime p) const {
  if (p != 2 && cache_) {
    if (auto r = cache_->lookup(p); r && *r != 0) {
      const int k = kronecker(static_cast<std::int64_t>(*r),
                              static_cast<std::int64_t>(p));
      return k == -1 ? 0b10 : 0b00;
    }
  }
  return splitlab::square_class(value_, p);
}

SplittingType QuadraticGenerator::splitting_type(Prime p) const {
  return splitting_type_of_class(square_class(p), p);
}

}  // namespace splitlab
