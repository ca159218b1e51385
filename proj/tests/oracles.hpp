#pragma once

// Brute-force references used only by the tests. Each one is deliberately
// naive and shares no code with the library.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <vector>

#include "splitlab/quadratic.hpp"

namespace oracle {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::uint64_t> primes_in(std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = lo; n <= hi; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline std::uint64_t mod(std::int64_t a, std::uint64_t p) {
  const auto m = static_cast<std::int64_t>(p);
  return static_cast<std::uint64_t>(((a % m) + m) % m);
}

// Legendre symbol by listing the squares mod p.
inline int legendre(std::int64_t a, std::uint64_t p) {
  const std::uint64_t r = mod(a, p);
  if (r == 0) return 0;
  for (std::uint64_t x = 1; x < p; ++x)
    if (x * x % p == r) return 1;
  return -1;
}

inline unsigned root_count(std::int64_t m, std::uint64_t p) {
  unsigned n = 0;
  for (std::uint64_t x = 0; x < p; ++x) n += (x * x) % p == mod(m, p);
  return n;
}

// Splitting of p in Q(sqrt m) from root counts of the minimal polynomial of
// the ring of integers: x^2 - m, or x^2 - x + (1 - m)/4 when m = 1 (mod 4).
inline splitlab::SplittingType splitting(std::int64_t m, std::uint64_t p) {
  using T = splitlab::SplittingType;
  const bool one_mod_4 = mod(m, 4) == 1;
  unsigned roots = 0;
  bool repeated = false;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::int64_t xs = static_cast<std::int64_t>(x);
    const std::int64_t value = one_mod_4 ? xs * xs - xs + (1 - m) / 4 : xs * xs - m;
    if (mod(value, p) != 0) continue;
    ++roots;
    const std::int64_t derivative = one_mod_4 ? 2 * xs - 1 : 2 * xs;
    repeated |= mod(derivative, p) == 0;
  }
  if (repeated) return T::Ramified;
  return roots == 2 ? T::Split : T::Inert;
}

inline std::int64_t squarefree_part(std::int64_t m) {
  const std::int64_t sign = m < 0 ? -1 : 1;
  std::int64_t a = m * sign, out = 1;
  for (std::int64_t d = 2; d * d <= a; ++d) {
    unsigned e = 0;
    while (a % d == 0) a /= d, ++e;
    if (e % 2) out *= d;
  }
  return sign * out * a;
}

struct Local {
  unsigned e, f;
  std::uint64_t g;
};

// (e, f, g) of p in the compositum of Q(sqrt m), m in gens, by counting
// quadratic subfields: p splits in g - 1 of them and ramifies in
// d - d/e of them (characters trivial on the decomposition group, resp.
// nontrivial on inertia).
inline Local multiquad_local(const std::vector<std::int64_t>& gens, std::uint64_t p) {
  std::set<std::int64_t> classes;
  for (std::uint64_t mask = 1; mask < (1ULL << gens.size()); ++mask) {
    std::int64_t m = 1;
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (mask >> i & 1) m = squarefree_part(m * gens[i]);
    if (m != 1) classes.insert(m);
  }
  const std::uint64_t d = classes.size() + 1;
  std::uint64_t split = 0, ramified = 0;
  for (auto m : classes) {
    const auto t = splitting(m, p);
    split += t == splitlab::SplittingType::Split;
    ramified += t == splitlab::SplittingType::Ramified;
  }
  const std::uint64_t g = split + 1;
  const auto e = static_cast<unsigned>(d / (d - ramified));
  return {e, static_cast<unsigned>(d / (e * g)), g};
}

}  // namespace oracle
