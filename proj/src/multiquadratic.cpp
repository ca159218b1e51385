#include "splitlab/multiquadratic.hpp"

#include <algorithm>
#include <bit>
#include <iterator>

namespace splitlab {

namespace {

std::vector<std::uint64_t> xor_letters(const std::vector<std::uint64_t>& a,
                                       const std::vector<std::uint64_t>& b) {
  std::vector<std::uint64_t> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                std::back_inserter(out));
  return out;
}

bool has_letter(const std::vector<std::uint64_t>& v, std::uint64_t letter) {
  return std::binary_search(v.begin(), v.end(), letter);
}

bool big_is_prime(const BigInt& n) {
  if (n < 2) return false;
  if (n.fits_ulong_p()) return is_prime(n.get_ui());
  return mpz_probab_prime_p(n.get_mpz_t(), 1) > 0;  // Baillie-PSW
}

}  // namespace

MultiquadField::Letters MultiquadField::letters_of(const SquarefreeInt& m) {
  Letters out;
  if (m.sign() < 0) out.push_back(0);
  for (const auto& f : m.factored().factors()) out.push_back(f.prime);
  return out;
}

SquarefreeInt MultiquadField::from_letters(const Letters& letters) {
  int sign = 1;
  std::vector<PrimePower> factors;
  for (std::uint64_t l : letters) {
    if (l == 0)
      sign = -1;
    else
      factors.push_back({l, 1});
  }
  return SquarefreeInt(FactoredInt(sign, std::move(factors)));
}

MultiquadField::Letters MultiquadField::reduce(Letters v) const {
  for (const auto& row : rows_)
    if (has_letter(v, row.back())) v = xor_letters(v, row);
  return v;
}

void MultiquadField::insert(Letters v) {
  v = reduce(std::move(v));
  if (v.empty()) return;
  if (rows_.size() >= 63) throw ResourceError("field degree exceeds 2^63");
  const std::uint64_t pivot = v.back();
  for (auto& row : rows_)
    if (has_letter(row, pivot)) row = xor_letters(row, v);
  rows_.push_back(std::move(v));
  std::sort(rows_.begin(), rows_.end(),
            [](const Letters& a, const Letters& b) { return a.back() > b.back(); });
  basis_.clear();
  for (const auto& row : rows_) basis_.push_back(from_letters(row));
  std::sort(basis_.begin(), basis_.end(),
            [](const SquarefreeInt& a, const SquarefreeInt& b) {
              return a.value() < b.value();
            });
}

MultiquadField MultiquadField::generated_by(
    std::span<const SquarefreeInt> generators) {
  MultiquadField out;
  for (const auto& m : generators) out.insert(letters_of(m));
  return out;
}

MultiquadField MultiquadField::adjoin(const SquarefreeInt& m) const {
  MultiquadField out = *this;
  out.insert(letters_of(m));
  return out;
}

bool MultiquadField::contains_sqrt(const SquarefreeInt& m) const {
  return reduce(letters_of(m)).empty();
}

bool MultiquadField::is_totally_real() const {
  return std::all_of(basis_.begin(), basis_.end(),
                     [](const SquarefreeInt& m) { return m.sign() > 0; });
}

LocalData MultiquadField::local_data(Prime p) const {
  std::vector<SquareClass> classes;
  classes.reserve(basis_.size());
  for (const auto& m : basis_) classes.push_back(square_class(m.factored(), p));
  return local_data_from_classes(classes, degree(), p);
}

bool MultiquadField::totally_split(Prime p) const {
  return local_data(p) == LocalData{1, 1, degree()};
}

std::vector<SquarefreeInt> MultiquadField::classes() const {
  if (rank() > kMaxEnumerationRank)
    throw ResourceError("class enumeration is capped at rank " +
                        std::to_string(kMaxEnumerationRank) + ", field has rank " +
                        std::to_string(rank()));
  std::vector<SquarefreeInt> out;
  const std::uint64_t count = degree();
  Letters current;
  for (std::uint64_t i = 1; i < count; ++i) {
    // Gray code: flip the row indexed by the lowest set bit of i.
    current = xor_letters(current, rows_[static_cast<std::size_t>(std::countr_zero(i))]);
    out.push_back(from_letters(current));
  }
  std::sort(out.begin(), out.end(),
            [](const SquarefreeInt& a, const SquarefreeInt& b) {
              return a.value() < b.value();
            });
  return out;
}

MultiquadField adjoin(const MultiquadField& field, const SquarefreeInt& m) {
  return field.adjoin(m);
}

bool contains_sqrt(const MultiquadField& field, const SquarefreeInt& m) {
  return field.contains_sqrt(m);
}

MultiquadField compositum(const MultiquadField& a, const MultiquadField& b) {
  MultiquadField out = a;
  for (const auto& m : b.basis()) out = out.adjoin(m);
  return out;
}

bool linearly_disjoint(const MultiquadField& a, const MultiquadField& b) {
  return compositum(a, b).rank() == a.rank() + b.rank();
}

bool is_totally_real(const MultiquadField& field) {
  return field.is_totally_real();
}

LocalData local_data(const MultiquadField& field, Prime p) {
  return field.local_data(p);
}

bool totally_split(const MultiquadField& field, Prime p) {
  return field.totally_split(p);
}

TowerField TowerField::adjoin(QuadraticGenerator generator,
                              IndependenceWitness witness) const {
  if (const auto* w = std::get_if<InertWitness>(&witness)) {
    if (w->q == 2 || !is_prime(w->q))
      throw VerificationError("inert witness " + std::to_string(w->q) +
                              " is not an odd prime");
    for (const auto& g : generators_)
      if (g.square_class(w->q) != 0)
        throw VerificationError("inert witness " + std::to_string(w->q) +
                                " is not totally split in the field");
    if (generator.square_class(w->q) != unramified_nonsquare(w->q))
      throw VerificationError("inert witness " + std::to_string(w->q) +
                              " is not inert in the new quadratic field");
  } else {
    const BigInt& ell = std::get<RamifiedWitness>(witness).ell;
    if (!big_is_prime(ell))
      throw VerificationError("ramified witness is not prime");
    auto valuation = [&](const BigInt& x) {
      BigInt rest;
      return mpz_remove(rest.get_mpz_t(), x.get_mpz_t(), ell.get_mpz_t());
    };
    for (const auto& g : generators_)
      if (valuation(g.value()) % 2 != 0)
        throw VerificationError("ramified witness already ramifies in the field");
    if (valuation(generator.value()) % 2 == 0)
      throw VerificationError("ramified witness does not ramify in the new field");
  }
  if (rank() >= 63) throw ResourceError("tower degree exceeds 2^63");
  TowerField out = *this;
  out.generators_.push_back(std::move(generator));
  out.witnesses_.push_back(std::move(witness));
  return out;
}

LocalData TowerField::local_data(Prime p) const {
  std::vector<SquareClass> classes;
  classes.reserve(generators_.size());
  for (const auto& g : generators_) classes.push_back(g.square_class(p));
  return local_data_from_classes(classes, degree(), p);
}

bool TowerField::totally_split(Prime p) const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [p](const QuadraticGenerator& g) {
                       return g.square_class(p) == 0;
                     });
}

bool TowerField::is_totally_real() const {
  return std::all_of(generators_.begin(), generators_.end(),
                     [](const QuadraticGenerator& g) { return g.sign() > 0; });
}

}  // namespace splitlab
