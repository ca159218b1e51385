#include "splitlab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace splitlab {

namespace {

constexpr std::uint64_t kSegmentSpan = 1u << 19;

std::uint64_t isqrt(std::uint64_t n) {
  auto r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<std::uint32_t> small_primes_upto(std::uint64_t limit) {
  std::vector<std::uint32_t> out;
  if (limit < 2) return out;
  std::vector<bool> composite(limit + 1, false);
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= limit; j += i) composite[j] = true;
  }
  return out;
}

std::uint64_t positive_mod(std::int64_t a, std::uint64_t m) {
  auto r = static_cast<std::int64_t>(static_cast<__int128>(a) %
                                     static_cast<__int128>(m));
  return r < 0 ? static_cast<std::uint64_t>(r + static_cast<std::int64_t>(m))
               : static_cast<std::uint64_t>(r);
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  return std::gcd(a, b);
}

// Inverse of a modulo m (gcd = 1 assumed), in [0, m).
std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  __int128 old_r = positive_mod(a, m), r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  __int128 inv = old_s % m;
  if (inv < 0) inv += m;
  return static_cast<std::int64_t>(inv);
}

}  // namespace

PrimeRange::PrimeRange(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {
  if (lo < 2)
    throw InvalidArgument("invalid range: lower bound " + std::to_string(lo) +
                          " is below 2");
  if (hi < lo)
    throw InvalidArgument("invalid range: [" + std::to_string(lo) + ", " +
                          std::to_string(hi) + "] is empty");
}

PrimeStream::PrimeStream(PrimeRange range, std::uint64_t ceiling)
    : hi_(range.hi()), segment_lo_(range.lo()) {
  if (range.hi() > ceiling)
    throw ResourceError("sieve ceiling " + std::to_string(ceiling) +
                        " exceeded by requested bound " +
                        std::to_string(range.hi()));
  base_primes_ = small_primes_upto(isqrt(hi_));
  fill_segment();
}

void PrimeStream::fill_segment() {
  if (segment_lo_ > hi_) {
    exhausted_ = true;
    return;
  }
  const std::uint64_t seg_hi = std::min(hi_, segment_lo_ + kSegmentSpan - 1);
  composite_.assign(seg_hi - segment_lo_ + 1, 0);
  for (std::uint32_t p : base_primes_) {
    const std::uint64_t pp = std::uint64_t{p} * p;
    if (pp > seg_hi) break;
    std::uint64_t start = std::max(pp, (segment_lo_ + p - 1) / p * p);
    for (std::uint64_t j = start; j <= seg_hi; j += p)
      composite_[j - segment_lo_] = 1;
  }
  cursor_ = 0;
}

std::optional<Prime> PrimeStream::next() {
  while (!exhausted_) {
    while (cursor_ < composite_.size()) {
      const std::uint64_t n = segment_lo_ + cursor_;
      const bool hit = !composite_[cursor_] && n >= 2;
      ++cursor_;
      if (hit) return n;
    }
    segment_lo_ += composite_.size();
    fill_segment();
  }
  return std::nullopt;
}

std::vector<Prime> sieve_primes(PrimeRange range, std::uint64_t ceiling) {
  std::vector<Prime> out;
  for_each_prime(range, [&](Prime p) { out.push_back(p); }, ceiling);
  return out;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  static constexpr std::uint64_t kBases[] = {2,  3,  5,  7,  11, 13,
                                             17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t b : kBases) {
    if (n == b) return true;
    if (n % b == 0) return false;
  }
  std::uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) throw InvalidArgument("kronecker: modulus n must be nonzero");
  int result = 1;
  std::uint64_t un;
  if (n < 0) {
    un = static_cast<std::uint64_t>(-(n + 1)) + 1;
    if (a < 0) result = -result;
  } else {
    un = static_cast<std::uint64_t>(n);
  }
  const int twos = std::countr_zero(un);
  if (twos > 0) {
    if (a % 2 == 0) return 0;
    un >>= twos;
    const std::uint64_t a8 = positive_mod(a, 8);
    if ((twos & 1) && (a8 == 3 || a8 == 5)) result = -result;
  }
  if (un == 1) return result;
  std::uint64_t ua = positive_mod(a, un);
  while (ua != 0) {
    while ((ua & 1) == 0) {
      ua >>= 1;
      const std::uint64_t r = un % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(ua, un);
    if (ua % 4 == 3 && un % 4 == 3) result = -result;
    ua %= un;
  }
  return un == 1 ? result : 0;
}

std::uint64_t smallest_nonresidue(Prime p) {
  if (p < 3 || p % 2 == 0)
    throw InvalidArgument("smallest_nonresidue: " + std::to_string(p) +
                          " is not an odd prime");
  for (std::uint64_t a = 2; a < p; ++a)
    if (kronecker(static_cast<std::int64_t>(a), static_cast<std::int64_t>(p)) ==
        -1)
      return a;
  throw InvalidArgument("smallest_nonresidue: " + std::to_string(p) +
                        " has no non-residue");
}

Congruence crt_solve(std::span<const Congruence> congruences) {
  if (congruences.empty())
    throw InvalidArgument("crt_solve: no congruences given");
  for (const auto& c : congruences)
    if (c.modulus < 2)
      throw InvalidArgument("crt_solve: modulus " + std::to_string(c.modulus) +
                            " is below 2");
  for (std::size_t i = 0; i < congruences.size(); ++i)
    for (std::size_t j = i + 1; j < congruences.size(); ++j)
      if (gcd_i64(congruences[i].modulus, congruences[j].modulus) != 1)
        throw InvalidArgument(
            "crt_solve: moduli " + std::to_string(congruences[i].modulus) +
            " and " + std::to_string(congruences[j].modulus) +
            " are not coprime (congruences " + std::to_string(i) + " and " +
            std::to_string(j) + ")");

  std::int64_t residue = static_cast<std::int64_t>(
      positive_mod(congruences[0].residue, congruences[0].modulus));
  std::int64_t modulus = congruences[0].modulus;
  for (std::size_t i = 1; i < congruences.size(); ++i) {
    const std::int64_t m2 = congruences[i].modulus;
    const auto r2 =
        static_cast<std::int64_t>(positive_mod(congruences[i].residue, m2));
    std::int64_t product;
    if (__builtin_mul_overflow(modulus, m2, &product))
      throw ResourceError("crt_solve: combined modulus exceeds 64 bits");
    const std::int64_t inv = inverse_mod(modulus, m2);
    const __int128 diff = positive_mod(r2 - residue % m2, m2);
    const __int128 t = diff * inv % m2;
    residue = static_cast<std::int64_t>(residue + t * modulus);
    modulus = product;
  }
  return {residue, modulus};
}

Prime find_prime_in_ap(std::int64_t residue, std::int64_t modulus,
                       std::int64_t min_value, std::uint64_t budget) {
  if (modulus < 1)
    throw InvalidArgument("find_prime_in_ap: modulus must be >= 1");
  const auto r = static_cast<std::int64_t>(positive_mod(residue, modulus));
  if (gcd_i64(r, modulus) != 1)
    throw InvalidArgument("find_prime_in_ap: gcd(" + std::to_string(residue) +
                          ", " + std::to_string(modulus) +
                          ") > 1; the progression holds at most one prime");
  const __int128 floor = std::max<__int128>(__int128{min_value} + 1, 2);
  __int128 candidate = r;
  if (candidate < floor)
    candidate += (floor - candidate + modulus - 1) / modulus * modulus;
  constexpr auto kMax = static_cast<__int128>(std::numeric_limits<std::uint64_t>::max());
  for (std::uint64_t i = 0; i < budget; ++i, candidate += modulus) {
    if (candidate > kMax)
      throw ResourceError("find_prime_in_ap: progression left the 64-bit range");
    if (is_prime(static_cast<std::uint64_t>(candidate)))
      return static_cast<Prime>(candidate);
  }
  throw ResourceError("find_prime_in_ap: scan budget of " +
                      std::to_string(budget) + " candidates exhausted");
}

FactoredInt::FactoredInt(int sign, std::vector<PrimePower> factors)
    : sign_(sign), factors_(std::move(factors)) {
  if (sign != 1 && sign != -1)
    throw InvalidArgument("FactoredInt: sign must be +1 or -1");
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    const auto& f = factors_[i];
    if (f.exponent == 0)
      throw InvalidArgument("FactoredInt: zero exponent for prime " +
                            std::to_string(f.prime));
    if (i > 0 && factors_[i - 1].prime >= f.prime)
      throw InvalidArgument("FactoredInt: primes must be strictly increasing");
    if (!is_prime(f.prime))
      throw InvalidArgument("FactoredInt: " + std::to_string(f.prime) +
                            " is not prime");
  }
}

FactoredInt FactoredInt::of(std::int64_t value) {
  if (value == 0) throw InvalidArgument("FactoredInt: zero has no factorization");
  const int sign = value < 0 ? -1 : 1;
  std::uint64_t n = value < 0 ? static_cast<std::uint64_t>(-(value + 1)) + 1
                              : static_cast<std::uint64_t>(value);
  std::vector<PrimePower> factors;
  auto strip = [&](std::uint64_t d) {
    unsigned e = 0;
    while (n % d == 0) {
      n /= d;
      ++e;
    }
    if (e > 0) factors.push_back({d, e});
  };
  strip(2);
  for (std::uint64_t d = 3; d <= kTrialDivisionCeiling && d * d <= n; d += 2)
    strip(d);
  if (n > 1) {
    const bool below_square = n < kTrialDivisionCeiling * kTrialDivisionCeiling;
    if (!below_square && !is_prime(n))
      throw ResourceError("FactoredInt: cannot factor " + std::to_string(value) +
                          " with trial division ceiling " +
                          std::to_string(kTrialDivisionCeiling));
    factors.push_back({n, 1});
  }
  return FactoredInt(sign, std::move(factors));
}

BigInt FactoredInt::value() const {
  BigInt v = sign_;
  for (const auto& f : factors_) {
    BigInt p;
    mpz_ui_pow_ui(p.get_mpz_t(), f.prime, f.exponent);
    v *= p;
  }
  return v;
}

std::optional<std::int64_t> FactoredInt::to_int64() const {
  const BigInt v = value();
  if (!v.fits_slong_p()) return std::nullopt;
  return static_cast<std::int64_t>(v.get_si());
}

std::uint64_t FactoredInt::mod(std::uint64_t m) const {
  if (m == 0) throw InvalidArgument("FactoredInt::mod: zero modulus");
  std::uint64_t r = 1 % m;
  for (const auto& f : factors_) r = mulmod(r, powmod(f.prime, f.exponent, m), m);
  if (sign_ < 0 && r != 0) r = m - r;
  return r;
}

unsigned FactoredInt::valuation(Prime p) const {
  for (const auto& f : factors_)
    if (f.prime == p) return f.exponent;
  return 0;
}

bool FactoredInt::is_squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PrimePower& f) { return f.exponent == 1; });
}

FactoredInt squarefree_kernel(const FactoredInt& n) {
  std::vector<PrimePower> odd;
  for (const auto& f : n.factors())
    if (f.exponent % 2 == 1) odd.push_back({f.prime, 1});
  return FactoredInt(n.sign(), std::move(odd));
}

std::string to_string(const FactoredInt& n) {
  std::ostringstream out;
  out << (n.sign() < 0 ? "-" : "");
  if (n.factors().empty()) out << "1";
  for (std::size_t i = 0; i < n.factors().size(); ++i) {
    if (i) out << "*";
    out << n.factors()[i].prime;
    if (n.factors()[i].exponent > 1) out << "^" << n.factors()[i].exponent;
  }
  return out.str();
}

}  // namespace splitlab
