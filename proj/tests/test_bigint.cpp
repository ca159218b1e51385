#include <doctest.h>

#include "oracles.hpp"
#include "splitlab/bigint.hpp"

using namespace splitlab;

namespace {

BigInt power_of_ten(unsigned k) {
  BigInt x;
  mpz_ui_pow_ui(x.get_mpz_t(), 10, k);
  return x;
}

}  // namespace

TEST_SUITE("bigint") {
  TEST_CASE("remainder tree matches direct reduction") {
    const BigInt x = power_of_ten(300) + 12345;
    std::vector<std::uint64_t> moduli;
    for (auto p : oracle::primes_in(2, 5000)) moduli.push_back(p);
    moduli.push_back(4'294'967'291ULL);
    const auto r = residues_mod(x, moduli);
    REQUIRE(r.size() == moduli.size());
    for (std::size_t i = 0; i < moduli.size(); ++i)
      REQUIRE(r[i] == mpz_fdiv_ui(x.get_mpz_t(), moduli[i]));
    const BigInt negative = -x;
    const auto rn = residues_mod(negative, moduli);
    for (std::size_t i = 0; i < moduli.size(); ++i)
      REQUIRE(rn[i] == mpz_fdiv_ui(negative.get_mpz_t(), moduli[i]));
  }

  TEST_CASE("crt over word moduli") {
    const std::vector<WordCongruence> small{{1, 3}, {2, 5}};
    const auto c = crt_big(small);
    CHECK(c.residue == 7);
    CHECK(c.modulus == 15);
    std::vector<WordCongruence> many;
    for (auto p : oracle::primes_in(3, 3000)) many.push_back({p / 2, p});
    const auto big = crt_big(many);
    for (const auto& w : many) REQUIRE(mpz_fdiv_ui(big.residue.get_mpz_t(), w.modulus) == w.residue);
    CHECK(big.residue < big.modulus);
    const std::vector<WordCongruence> bad{{1, 4}, {1, 6}};
    CHECK_THROWS_AS(crt_big(bad), InvalidArgument);
  }

  TEST_CASE("kronecker of big integers") {
    const BigInt x = power_of_ten(50) + 7;
    for (auto p : oracle::primes_in(3, 300))
      REQUIRE(kronecker_big(x, p) ==
              oracle::legendre(static_cast<std::int64_t>(mpz_fdiv_ui(x.get_mpz_t(), p)), p));
  }

  TEST_CASE("text round trips") {
    const BigInt x = -(power_of_ten(40) + 99);
    CHECK(from_decimal(to_decimal(x)) == x);
    CHECK(from_hex(to_hex(x)) == x);
    CHECK(to_hex(BigInt(255)) == "ff");
    CHECK_THROWS_AS(from_decimal("12a"), InvalidArgument);
    CHECK_THROWS_AS(from_hex(""), InvalidArgument);
  }

  TEST_CASE("Pocklington certificates") {
    // 2521 = 3 * 840 + 1 with 840 = 2^3 * 3 * 5 * 7 > sqrt(2521).
    const std::vector<PrimePower> m{{2, 3}, {3, 1}, {5, 1}, {7, 1}};
    const auto found = find_prime_one_mod(m, BigInt(7));
    CHECK(found.certificate.n == 2521);
    CHECK(found.certificate.k == 3);
    CHECK(verify_pocklington(found.certificate));
    auto forged = found.certificate;
    forged.n = 841;  // 29^2 = 840 + 1
    forged.k = 1;
    CHECK_FALSE(verify_pocklington(forged));

    // Every smaller candidate in the class is composite.
    for (std::uint64_t n = 841; n < 2521; n += 840) CHECK_FALSE(oracle::is_prime(n));

    std::vector<PrimePower> primorial;
    for (auto q : oracle::primes_in(2, 200)) primorial.push_back({q, q == 2 ? 3u : 1u});
    const auto large = find_prime_one_mod(primorial, BigInt(1000));
    CHECK(verify_pocklington(large.certificate));
    CHECK(mpz_probab_prime_p(large.certificate.n.get_mpz_t(), 30) > 0);
    CHECK_THROWS_AS(find_prime_one_mod(m, BigInt(1'000'000)), ResourceError);
  }

  TEST_CASE("factoring within reach") {
    const auto f = try_factor(BigInt(-360));
    REQUIRE(f);
    CHECK(f->to_int64() == -360);
    // Product of two primes near 2^31 needs Pollard-Brent.
    const BigInt semiprime = BigInt(2'147'483'647UL) * BigInt(2'147'483'629UL);
    const auto g = try_factor(semiprime);
    REQUIRE(g);
    CHECK(g->value() == semiprime);
    CHECK(g->factors().size() == 2);
    // Two 80-bit primes are out of reach.
    BigInt p = power_of_ten(24), q = power_of_ten(24) + 1000;
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
    mpz_nextprime(q.get_mpz_t(), q.get_mpz_t());
    CHECK_FALSE(try_factor(p * q));
  }
}
