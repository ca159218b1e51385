#include "splitlab/bigint.hpp"

#include <algorithm>
#include <numeric>

namespace splitlab {

namespace {

BigInt from_u64(std::uint64_t v) {
  BigInt out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof v, 0, 0, &v);
  return out;
}

std::uint64_t to_u64(const BigInt& v) {
  std::uint64_t out = 0;
  if (sgn(v) != 0) mpz_export(&out, nullptr, -1, sizeof out, 0, 0, v.get_mpz_t());
  return out;
}

std::uint64_t inverse_mod_u64(std::uint64_t a, std::uint64_t m) {
  __int128 old_r = a % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw InvalidArgument("crt_big: moduli are not coprime");
  __int128 inv = old_s % static_cast<__int128>(m);
  if (inv < 0) inv += m;
  return static_cast<std::uint64_t>(inv);
}

BigInt product_of(std::span<const PrimePower> factors) {
  std::vector<std::uint64_t> leaves;
  for (const auto& f : factors)
    for (unsigned e = 0; e < f.exponent; ++e) leaves.push_back(f.prime);
  if (leaves.empty()) return 1;
  return ProductTree(leaves).root();
}

// Writes a^((n-1)/q) mod n for each listed prime power q^e | M into out,
// given x = a^((n-1)/M). Splitting the factor list in halves keeps the
// total exponent length per level at about log M.
void powers_below(const BigInt& x, std::span<const PrimePower> factors,
                  const BigInt& n, BigInt* out) {
  if (factors.size() == 1) {
    const PrimePower& f = factors.front();
    BigInt e;
    mpz_pow_ui(e.get_mpz_t(), from_u64(f.prime).get_mpz_t(), f.exponent - 1);
    mpz_powm(out->get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), n.get_mpz_t());
    return;
  }
  const std::size_t mid = factors.size() / 2;
  const auto left = factors.first(mid);
  const auto right = factors.subspan(mid);
  BigInt xl, xr;
  const BigInt pr = product_of(right), pl = product_of(left);
  mpz_powm(xl.get_mpz_t(), x.get_mpz_t(), pr.get_mpz_t(), n.get_mpz_t());
  mpz_powm(xr.get_mpz_t(), x.get_mpz_t(), pl.get_mpz_t(), n.get_mpz_t());
  powers_below(xl, left, n, out);
  powers_below(xr, right, n, out + mid);
}

bool coprime_to(const BigInt& y, const BigInt& n) {
  BigInt t = y - 1, g;
  mpz_gcd(g.get_mpz_t(), t.get_mpz_t(), n.get_mpz_t());
  return g == 1;
}

// Bases per factor for a Pocklington proof of n = k*M + 1, or nullopt if
// n is composite (a^(n-1) != 1 for some base). Base 2 is tried for every
// factor at once; stragglers retry individually with small bases.
std::optional<std::vector<std::uint32_t>> pocklington_bases(
    const BigInt& n, const BigInt& k, const BigInt& m,
    std::span<const PrimePower> factors) {
  std::vector<std::uint32_t> bases(factors.size(), 0);
  BigInt x;
  mpz_powm(x.get_mpz_t(), BigInt(2).get_mpz_t(), k.get_mpz_t(), n.get_mpz_t());
  BigInt fermat;
  mpz_powm(fermat.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t(), n.get_mpz_t());
  if (fermat != 1) return std::nullopt;
  std::vector<BigInt> ys(factors.size());
  powers_below(x, factors, n, ys.data());
  const BigInt n_minus_1 = n - 1;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (coprime_to(ys[i], n)) {
      bases[i] = 2;
      continue;
    }
    for (std::uint32_t a = 3; a < 1000 && bases[i] == 0; ++a) {
      BigInt full, partial;
      mpz_powm(full.get_mpz_t(), BigInt(a).get_mpz_t(), n_minus_1.get_mpz_t(),
               n.get_mpz_t());
      if (full != 1) return std::nullopt;
      BigInt e = n_minus_1 / from_u64(factors[i].prime);
      mpz_powm(partial.get_mpz_t(), BigInt(a).get_mpz_t(), e.get_mpz_t(),
               n.get_mpz_t());
      if (coprime_to(partial, n)) bases[i] = a;
    }
    if (bases[i] == 0) return std::nullopt;
  }
  return bases;
}

std::uint64_t pollard_brent(std::uint64_t n) {
  if (n % 2 == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    std::uint64_t y = 2, x = 2, g = 1, q = 1, ys = 2;
    const std::uint64_t block = 128;
    auto f = [&](std::uint64_t v) { return (mulmod(v, v, n) + c) % n; };
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += block) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(block, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_u64(std::uint64_t n, std::vector<Prime>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const std::uint64_t d = pollard_brent(n);
  factor_u64(d, out);
  factor_u64(n / d, out);
}

}  // namespace

ProductTree::ProductTree(std::span<const std::uint64_t> leaves) {
  if (leaves.empty()) throw InvalidArgument("ProductTree: no leaves");
  std::vector<BigInt> level;
  level.reserve(leaves.size());
  for (std::uint64_t v : leaves) level.push_back(from_u64(v));
  levels_.push_back(std::move(level));
  while (levels_.back().size() > 1) {
    const auto& below = levels_.back();
    std::vector<BigInt> above((below.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < below.size(); i += 2)
      above[i / 2] = below[i] * below[i + 1];
    if (below.size() % 2) above.back() = below.back();
    levels_.push_back(std::move(above));
  }
}

std::vector<std::uint64_t> residues_mod(const BigInt& x,
                                        std::span<const std::uint64_t> moduli) {
  if (moduli.empty()) return {};
  if (moduli.size() < 16) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t m : moduli) {
      if (m == 0) throw InvalidArgument("residues_mod: zero modulus");
      BigInt r;
      mpz_fdiv_r(r.get_mpz_t(), x.get_mpz_t(), from_u64(m).get_mpz_t());
      out.push_back(to_u64(r));
    }
    return out;
  }
  return residues_mod(x, ProductTree(moduli));
}

std::vector<std::uint64_t> residues_mod(const BigInt& x,
                                        const ProductTree& tree) {
  const auto& levels = tree.levels();
  std::vector<BigInt> current(1);
  mpz_fdiv_r(current[0].get_mpz_t(), x.get_mpz_t(), tree.root().get_mpz_t());
  for (std::size_t depth = levels.size() - 1; depth-- > 0;) {
    const auto& nodes = levels[depth];
    std::vector<BigInt> next(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i)
      mpz_fdiv_r(next[i].get_mpz_t(), current[i / 2].get_mpz_t(),
                 nodes[i].get_mpz_t());
    current = std::move(next);
  }
  std::vector<std::uint64_t> out;
  out.reserve(current.size());
  for (const auto& r : current) out.push_back(to_u64(r));
  return out;
}

BigCongruence crt_big(std::span<const WordCongruence> congruences) {
  if (congruences.empty()) throw InvalidArgument("crt_big: no congruences");
  std::vector<std::uint64_t> moduli, squares;
  for (const auto& c : congruences) {
    if (c.modulus < 2 || c.modulus >= (std::uint64_t{1} << 32))
      throw InvalidArgument("crt_big: modulus " + std::to_string(c.modulus) +
                            " outside [2, 2^32)");
    moduli.push_back(c.modulus);
    squares.push_back(c.modulus * c.modulus);
  }
  const ProductTree tree(moduli);
  const BigInt& m = tree.root();
  // (M / m_i) mod m_i, read off from M mod m_i^2.
  const auto cofactors = residues_mod(m, squares);
  std::vector<BigInt> values(congruences.size());
  for (std::size_t i = 0; i < congruences.size(); ++i) {
    const std::uint64_t mi = moduli[i];
    const std::uint64_t cof = cofactors[i] / mi;
    const std::uint64_t c =
        mulmod(congruences[i].residue % mi, inverse_mod_u64(cof, mi), mi);
    values[i] = from_u64(c);
  }
  const auto& levels = tree.levels();
  for (std::size_t depth = 0; depth + 1 < levels.size(); ++depth) {
    const auto& nodes = levels[depth];
    std::vector<BigInt> above((values.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < values.size(); i += 2)
      above[i / 2] = values[i] * nodes[i + 1] + values[i + 1] * nodes[i];
    if (values.size() % 2) above.back() = values.back();
    values = std::move(above);
  }
  BigInt r;
  mpz_fdiv_r(r.get_mpz_t(), values[0].get_mpz_t(), m.get_mpz_t());
  const auto check = residues_mod(r, moduli);
  for (std::size_t i = 0; i < moduli.size(); ++i)
    if (check[i] != congruences[i].residue % moduli[i])
      throw InvalidArgument("crt_big: moduli are not pairwise coprime");
  return {r, m};
}

int kronecker_big(const BigInt& x, Prime p) {
  const std::uint64_t r = mpz_fdiv_ui(x.get_mpz_t(), p);
  return kronecker(static_cast<std::int64_t>(r), static_cast<std::int64_t>(p));
}

std::string to_decimal(const BigInt& x) { return x.get_str(10); }
std::string to_hex(const BigInt& x) { return x.get_str(16); }

BigInt from_decimal(const std::string& s) {
  BigInt v;
  if (s.empty() || v.set_str(s, 10) != 0)
    throw InvalidArgument("not a decimal integer: '" + s.substr(0, 40) + "'");
  return v;
}

BigInt from_hex(const std::string& s) {
  BigInt v;
  if (s.empty() || v.set_str(s, 16) != 0)
    throw InvalidArgument("not a hexadecimal integer");
  return v;
}

bool verify_pocklington(const PocklingtonCertificate& cert) {
  if (cert.bases.size() != cert.modulus_factors.size()) return false;
  for (const auto& f : cert.modulus_factors)
    if (!is_prime(f.prime) || f.exponent == 0) return false;
  const BigInt m = product_of(cert.modulus_factors);
  const BigInt& n = cert.n;
  if (cert.k < 1 || n != cert.k * m + 1 || m * m <= n) return false;
  const BigInt n_minus_1 = n - 1;
  // Group factors by base and reuse the batched powering.
  std::vector<std::uint32_t> distinct(cert.bases);
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  for (std::uint32_t a : distinct) {
    if (a < 2) return false;
    std::vector<PrimePower> group;
    for (std::size_t i = 0; i < cert.bases.size(); ++i)
      if (cert.bases[i] == a) group.push_back(cert.modulus_factors[i]);
    const BigInt rest = n_minus_1 / product_of(group);
    BigInt x, full;
    mpz_powm(x.get_mpz_t(), BigInt(a).get_mpz_t(), rest.get_mpz_t(),
             n.get_mpz_t());
    const BigInt group_product = product_of(group);
    mpz_powm(full.get_mpz_t(), x.get_mpz_t(), group_product.get_mpz_t(),
             n.get_mpz_t());
    if (full != 1) return false;
    std::vector<BigInt> ys(group.size());
    powers_below(x, group, n, ys.data());
    for (const auto& y : ys)
      if (!coprime_to(y, n)) return false;
  }
  return true;
}

CertifiedPrime find_prime_one_mod(std::span<const PrimePower> modulus_factors,
                                  const BigInt& min_value,
                                  std::uint64_t budget) {
  if (modulus_factors.empty())
    throw InvalidArgument("find_prime_one_mod: empty modulus");
  const BigInt m = product_of(modulus_factors);
  BigInt k = 1;
  if (min_value >= 1) k = (min_value - 1) / m + 1;

  constexpr std::uint64_t kWindow = 1 << 14;
  constexpr std::uint64_t kSieveBound = 1 << 20;
  std::vector<Prime> sieve;
  if (m > kSieveBound) {
    for (Prime r : sieve_primes(PrimeRange(3, kSieveBound)))
      if (mpz_fdiv_ui(m.get_mpz_t(), r) != 0) sieve.push_back(r);
  }
  std::vector<std::uint8_t> composite(kWindow);
  std::uint64_t examined = 0, tested = 0;
  while (examined < budget) {
    const std::uint64_t width = std::min(kWindow, budget - examined);
    std::fill(composite.begin(), composite.begin() + width, 0);
    for (Prime r : sieve) {
      // k*M + 1 = 0 (mod r)  <=>  k = -M^{-1} (mod r)
      const std::uint64_t mr = mpz_fdiv_ui(m.get_mpz_t(), r);
      const std::uint64_t target = r - inverse_mod_u64(mr, r);
      const std::uint64_t k0 = mpz_fdiv_ui(k.get_mpz_t(), r);
      for (std::uint64_t j = (target + r - k0) % r; j < width; j += r)
        composite[j] = 1;
    }
    for (std::uint64_t j = 0; j < width; ++j) {
      if (composite[j]) continue;
      const BigInt kk = k + static_cast<unsigned long>(j);
      const BigInt n = kk * m + 1;
      if (m * m <= n)
        throw ResourceError(
            "find_prime_one_mod: modulus too small to certify candidates "
            "by Pocklington");
      ++tested;
      if (auto bases = pocklington_bases(n, kk, m, modulus_factors)) {
        PocklingtonCertificate cert{
            n, kk, {modulus_factors.begin(), modulus_factors.end()},
            std::move(*bases)};
        return {std::move(cert), tested};
      }
    }
    examined += width;
    k += static_cast<unsigned long>(width);
  }
  throw ResourceError("find_prime_one_mod: scan budget of " +
                      std::to_string(budget) + " candidates exhausted");
}

std::optional<FactoredInt> try_factor(const BigInt& x) {
  if (x == 0) throw InvalidArgument("try_factor: zero has no factorization");
  BigInt n = abs(x);
  std::vector<PrimePower> factors;
  auto strip = [&](Prime p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
      ++e;
    }
    if (e) factors.push_back({p, e});
  };
  static const std::vector<Prime> small = sieve_primes(PrimeRange(2, 1'000'000));
  for (Prime p : small) {
    if (n.fits_ulong_p() && p * p > n.get_ui()) break;
    strip(p);
  }
  if (n > 1) {
    if (!n.fits_ulong_p()) return std::nullopt;
    std::vector<Prime> rest;
    factor_u64(n.get_ui(), rest);
    std::sort(rest.begin(), rest.end());
    for (Prime p : rest) {
      if (!factors.empty() && factors.back().prime == p)
        ++factors.back().exponent;
      else
        factors.push_back({p, 1});
    }
  }
  return FactoredInt(sgn(x) < 0 ? -1 : 1, std::move(factors));
}

}  // namespace splitlab
