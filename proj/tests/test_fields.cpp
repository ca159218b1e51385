#include <doctest.h>

#include "oracles.hpp"
#include "splitlab/multiquadratic.hpp"

using namespace splitlab;
using T = SplittingType;

namespace {

MultiquadField field(std::initializer_list<std::int64_t> gens) {
  std::vector<SquarefreeInt> v;
  for (auto m : gens) v.push_back(SquarefreeInt::of(m));
  return MultiquadField::generated_by(v);
}

std::vector<std::int64_t> basis_values(const MultiquadField& f) {
  std::vector<std::int64_t> out;
  for (const auto& m : f.basis()) out.push_back(*m.factored().to_int64());
  return out;
}

bool same(LocalData d, oracle::Local o) { return d.e == o.e && d.f == o.f && d.g == o.g; }

}  // namespace

TEST_SUITE("quadratic") {
  TEST_CASE("squarefree integers") {
    CHECK_THROWS_AS(SquarefreeInt::of(1), InvalidArgument);
    CHECK_THROWS_AS(SquarefreeInt::of(12), InvalidArgument);
    CHECK_THROWS_AS(SquarefreeInt::of(0), InvalidArgument);
    CHECK(SquarefreeInt::of(-1).sign() == -1);
  }

  TEST_CASE("discriminant") {
    CHECK(discriminant(SquarefreeInt::of(5)) == 5);
    CHECK(discriminant(SquarefreeInt::of(2)) == 8);
    CHECK(discriminant(SquarefreeInt::of(-1)) == -4);
    CHECK(discriminant(SquarefreeInt::of(-3)) == -3);
  }

  TEST_CASE("splitting type examples") {
    CHECK(splitting_type(SquarefreeInt::of(-1), 5) == T::Split);
    CHECK(splitting_type(SquarefreeInt::of(2), 3) == T::Inert);
    CHECK(splitting_type(SquarefreeInt::of(17), 2) == T::Split);
    CHECK(splitting_type(SquarefreeInt::of(5), 2) == T::Inert);
    CHECK(splitting_type(SquarefreeInt::of(3), 2) == T::Ramified);
  }

  TEST_CASE("splitting type matches root counts") {
    for (std::uint64_t p : oracle::primes_in(2, 500))
      for (std::int64_t m = -200; m <= 200; ++m) {
        if (m == 0 || m == 1 || oracle::squarefree_part(m) != m) continue;
        REQUIRE_MESSAGE(splitting_type(SquarefreeInt::of(m), p) == oracle::splitting(m, p),
                        "m = " << m << ", p = " << p);
      }
  }

  TEST_CASE("local data of quadratic fields") {
    CHECK(local_data_quadratic(SquarefreeInt::of(5), 5) == LocalData{2, 1, 1});
    CHECK(local_data_quadratic(SquarefreeInt::of(2), 7) == LocalData{1, 1, 2});
    CHECK(local_data_quadratic(SquarefreeInt::of(-1), 3) == LocalData{1, 2, 1});
  }

  TEST_CASE("generators of any size use square classes") {
    // 2^200 * 7 is 7 modulo squares.
    BigInt big = BigInt(1);
    mpz_mul_2exp(big.get_mpz_t(), big.get_mpz_t(), 200);
    big *= 7;
    QuadraticGenerator g(big);
    for (std::uint64_t p : oracle::primes_in(2, 200))
      REQUIRE(g.splitting_type(p) == oracle::splitting(7, p));
    CHECK_THROWS_AS(QuadraticGenerator(BigInt(49)), InvalidArgument);
    CHECK_THROWS_AS(QuadraticGenerator(BigInt(0)), InvalidArgument);
    CHECK(QuadraticGenerator(BigInt(-4)).splitting_type(5) == T::Split);
  }

  TEST_CASE("residue cache agrees with direct reduction") {
    const BigInt m("1234567890123456789012345678901");
    auto cache = std::make_shared<ResidueCache>();
    cache->primes = oracle::primes_in(3, 400);
    for (auto p : cache->primes) cache->residues.push_back(mpz_fdiv_ui(m.get_mpz_t(), p));
    QuadraticGenerator cached(m, cache), plain(m);
    for (std::uint64_t p : oracle::primes_in(2, 600))
      REQUIRE(cached.splitting_type(p) == plain.splitting_type(p));
  }
}

TEST_SUITE("multiquadratic") {
  TEST_CASE("adjoin and canonical basis") {
    CHECK(basis_values(MultiquadField().adjoin(SquarefreeInt::of(2))) ==
          std::vector<std::int64_t>{2});
    CHECK(field({2, 3}).adjoin(SquarefreeInt::of(6)) == field({2, 3}));
    const auto f = field({2}).adjoin(SquarefreeInt::of(-1));
    CHECK(basis_values(f) == std::vector<std::int64_t>{-1, 2});
    CHECK(f.degree() == 4);
    CHECK(field({6, 3}) == field({2, 3}));
    CHECK(field({-2, -3}) == field({-2, 6}));
  }

  TEST_CASE("membership, disjointness and signature") {
    CHECK(contains_sqrt(field({2, 3}), SquarefreeInt::of(6)));
    CHECK_FALSE(contains_sqrt(field({2, 3}), SquarefreeInt::of(5)));
    CHECK(contains_sqrt(field({-1, 2}), SquarefreeInt::of(-2)));
    CHECK(linearly_disjoint(field({2}), field({3})));
    CHECK_FALSE(linearly_disjoint(field({2, 3}), field({6})));
    CHECK(linearly_disjoint(MultiquadField(), field({5, 7})));
    CHECK(is_totally_real(field({2, 5})));
    CHECK_FALSE(is_totally_real(field({-1})));
    CHECK_FALSE(is_totally_real(field({-2, -3})));
    CHECK(compositum(field({2}), field({3, 6})) == field({2, 3}));
  }

  TEST_CASE("local data examples") {
    CHECK(local_data(field({2, 5}), 41) == LocalData{1, 1, 4});
    CHECK(local_data(field({2, 5}), 5) == LocalData{2, 2, 1});
    CHECK(local_data(field({-1}), 2) == LocalData{2, 1, 1});
    CHECK(local_data(field({-1, 2}), 2) == LocalData{4, 1, 1});
    CHECK(totally_split(field({2, 5}), 41));
    CHECK(totally_split(field({-1}), 13));
    CHECK_FALSE(totally_split(field({2}), 3));
  }

  TEST_CASE("local data matches subfield counting") {
    const std::vector<std::int64_t> pool{-1, 2, -2, 3, -3, 5, -5, 7, -7, 6, 10, -15};
    const auto primes = oracle::primes_in(2, 300);
    for (std::size_t a = 0; a < pool.size(); ++a)
      for (std::size_t b = a; b < pool.size(); ++b)
        for (std::size_t c = b; c < pool.size(); ++c) {
          const std::vector<std::int64_t> gens{pool[a], pool[b], pool[c]};
          const auto f = field({pool[a], pool[b], pool[c]});
          for (auto p : primes) {
            const auto d = f.local_data(p);
            REQUIRE(d.e * d.f * d.g == f.degree());
            REQUIRE_MESSAGE(same(d, oracle::multiquad_local(gens, p)),
                            pool[a] << "," << pool[b] << "," << pool[c] << " at " << p);
          }
        }
  }

  TEST_CASE("class enumeration") {
    const auto f = field({-1, 2, 5});
    std::vector<std::int64_t> values;
    for (const auto& m : f.classes()) values.push_back(*m.factored().to_int64());
    CHECK(values == std::vector<std::int64_t>{-10, -5, -2, -1, 2, 5, 10});
  }

  TEST_CASE("tower fields require independence witnesses") {
    TowerField t;
    t = t.adjoin(QuadraticGenerator(BigInt(5)), RamifiedWitness{BigInt(5)});
    // (5|13) = (3|5) = -1: 13 is inert in Q(sqrt 5), so it proves nothing.
    CHECK_THROWS_AS(t.adjoin(QuadraticGenerator(BigInt(2)), InertWitness{13}),
                    VerificationError);
    // (5|11) = 1 and (2|11) = -1: 11 splits in Q(sqrt 5) and is inert in Q(sqrt 2).
    t = t.adjoin(QuadraticGenerator(BigInt(2)), InertWitness{11});
    CHECK(t.degree() == 4);
    CHECK(t.is_totally_real());
    for (auto p : oracle::primes_in(2, 300)) REQUIRE(t.local_data(p) == field({2, 5}).local_data(p));
    // 10 = 2 * 5 is already in the field: no witness can exist.
    CHECK_THROWS_AS(t.adjoin(QuadraticGenerator(BigInt(10)), RamifiedWitness{BigInt(5)}),
                    VerificationError);
    CHECK_THROWS_AS(t.adjoin(QuadraticGenerator(BigInt(3)), RamifiedWitness{BigInt(9)}),
                    VerificationError);
  }
}
