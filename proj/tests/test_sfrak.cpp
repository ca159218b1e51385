#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "oracles.hpp"
#include "splitlab/sfrak.hpp"

using namespace splitlab;

namespace {

MultiquadField field(std::initializer_list<std::int64_t> gens) {
  std::vector<SquarefreeInt> v;
  for (auto m : gens) v.push_back(SquarefreeInt::of(m));
  return MultiquadField::generated_by(v);
}

// Reference term from the subfield-counting oracle, in long double.
long double reference_term(const std::vector<std::int64_t>& gens, std::uint64_t p) {
  const auto d = oracle::multiquad_local(gens, p);
  return std::log(static_cast<long double>(p)) /
         (d.e * (std::pow(static_cast<long double>(p), d.f) + 1));
}

}  // namespace

TEST_SUITE("sfrak") {
  TEST_CASE("terms") {
    CHECK(sfrak_term(MultiquadField(), 3) == doctest::Approx(std::log(3.0) / 4).epsilon(1e-15));
    CHECK(sfrak_term(field({-1}), 3) == doctest::Approx(std::log(3.0) / 10).epsilon(1e-15));
    CHECK(sfrak_term(field({5}), 5) == doctest::Approx(std::log(5.0) / 12).epsilon(1e-15));
    CHECK(sfrak_term(field({-1}), 3) == doctest::Approx(0.10986).epsilon(1e-4));
  }

  TEST_CASE("partial sums") {
    const auto q = sfrak_partial_sum(MultiquadField(), PrimeRange(2, 3));
    CHECK(q.partial_sum == doctest::Approx(std::log(2.0) / 3 + std::log(3.0) / 4));
    CHECK(q.primes_counted == 2);
    const auto i = sfrak_partial_sum(field({-1}), PrimeRange(3, 3));
    CHECK(i.partial_sum == doctest::Approx(std::log(3.0) / 10));
    const auto empty = sfrak_partial_sum(field({2}), PrimeRange(24, 28));
    CHECK(empty.partial_sum == 0.0);
    CHECK(empty.primes_counted == 0);
  }

  TEST_CASE("partial sum against long double reference") {
    const std::vector<std::int64_t> gens{-1, 2, 5};
    long double ref = 0;
    for (auto p : oracle::primes_in(2, 20000)) ref += reference_term(gens, p);
    const auto r = sfrak_partial_sum(field({-1, 2, 5}), PrimeRange(2, 20000));
    CHECK(std::fabs(r.partial_sum - static_cast<double>(ref)) <= r.error_bound);
    CHECK(r.error_bound < 1e-12);
  }

  TEST_CASE("filters and kept terms") {
    SumOptions o;
    o.residue_mod_4 = 3;
    o.keep_terms = true;
    const auto r = sfrak_partial_sum(MultiquadField(), PrimeRange(2, 40), o);
    REQUIRE(r.terms);
    std::vector<Prime> ps;
    for (const auto& t : *r.terms) ps.push_back(t.p);
    CHECK(ps == std::vector<Prime>{3, 7, 11, 19, 23, 31});
    SumOptions odd;
    odd.odd_only = true;
    CHECK(sfrak_partial_sum(MultiquadField(), PrimeRange(2, 2), odd).primes_counted == 0);
  }

  TEST_CASE("compensated summation bounds its error") {
    CompensatedSum s;
    std::vector<double> xs;
    for (int k = 1; k <= 100000; ++k) xs.push_back(1.0 / (static_cast<double>(k) * k));
    long double exact = 0;
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) exact += *it;
    for (double x : xs) s.add(x);
    CHECK(std::fabs(s.value() - static_cast<double>(exact)) <= s.error_bound());
    CompensatedSum cancel;
    for (double x : {1e100, 1.0, -1e100}) cancel.add(x);
    CHECK(cancel.value() == 1.0);
  }

  TEST_CASE("tail bound") {
    CHECK(tail_bound_fully_inert(1'000'000) ==
          doctest::Approx((std::log(1e6) + 1) / 1e6).epsilon(1e-12));
    CHECK(tail_bound_fully_inert(2) == doctest::Approx(0.8466).epsilon(1e-4));
    CHECK_THROWS_AS(tail_bound_fully_inert(1), InvalidArgument);
    // The bound dominates a long explicit stretch of the fully inert series.
    long double stretch = 0;
    for (auto p : oracle::primes_in(1001, 200000))
      stretch += std::log(static_cast<long double>(p)) / (static_cast<long double>(p) * p + 1);
    CHECK(static_cast<double>(stretch) < tail_bound_fully_inert(1000));
  }

  TEST_CASE("tower sums use certified stages") {
    const std::vector<MultiquadField> stages{MultiquadField(), field({2})};
    const std::vector<StabilizationCertificate> one{{2, 0}, {3, 0}, {5, 0}, {7, 0}};
    const auto r = sfrak_tower_sum<MultiquadField>(stages, PrimeRange(2, 7), one);
    const auto direct = sfrak_partial_sum(MultiquadField(), PrimeRange(2, 7));
    CHECK(r.partial_sum == doctest::Approx(direct.partial_sum).epsilon(1e-15));

    const std::vector<StabilizationCertificate> mixed{{2, 1}, {3, 0}, {5, 1}, {7, 1}};
    const auto m = sfrak_tower_sum<MultiquadField>(stages, PrimeRange(2, 7), mixed);
    const double expected = sfrak_term(field({2}), 2) + sfrak_term(MultiquadField(), 3) +
                            sfrak_term(field({2}), 5) + sfrak_term(field({2}), 7);
    CHECK(m.partial_sum == doctest::Approx(expected).epsilon(1e-15));

    try {
      sfrak_tower_sum<MultiquadField>(stages, PrimeRange(2, 13), one);
      FAIL("expected an unstabilized prime error");
    } catch (const UnstabilizedPrimeError& e) {
      CHECK(e.offenders() == std::vector<Prime>{11, 13});
    }
  }

  TEST_CASE("compositum inequality on a few pairs") {
    const auto a = field({-1, 3});
    const auto b = field({2, 7});
    const auto c = compositum(a, b);
    for (auto p : oracle::primes_in(2, 2000))
      REQUIRE(sfrak_term(c, p) <= std::min(sfrak_term(a, p), sfrak_term(b, p)) + 1e-15);
  }
}
