#include "splitlab/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <sstream>

namespace splitlab {

namespace {

const char* const kTheorem12 = "thm12-tower";
const char* const kProp71 = "prop71-tower";

double log_big(const BigInt& x) {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

std::string str(std::uint64_t v) { return std::to_string(v); }

// Residues of m modulo the odd primes a spec mentions, sorted by prime.
std::shared_ptr<ResidueCache> residue_cache(const BigInt& m,
                                            const SplittingSpec& spec) {
  auto cache = std::make_shared<ResidueCache>();
  std::merge(spec.split.begin(), spec.split.end(), spec.inert.begin(),
             spec.inert.end(), std::back_inserter(cache->primes));
  cache->residues = residues_mod(m, cache->primes);
  return cache;
}

std::vector<std::string> violations_with(const BigInt& m,
                                         const SplittingSpec& spec,
                                         const ResidueCache& cache) {
  std::vector<std::string> out;
  if (m == 0) return {"m is zero"};
  if (sgn(m) > 0 && mpz_perfect_square_p(m.get_mpz_t()))
    return {"m is a perfect square"};
  const QuadraticGenerator g(m, std::shared_ptr<const ResidueCache>(
                                    std::shared_ptr<const ResidueCache>{}, &cache));
  auto expect = [&](const std::vector<Prime>& primes, SplittingType want) {
    std::size_t bad = 0;
    std::string first;
    for (Prime p : primes) {
      const SplittingType got = g.splitting_type(p);
      if (got != want && bad++ == 0)
        first = std::to_string(p) + " is " + std::string(to_string(got));
    }
    if (bad)
      out.push_back(str(bad) + " prime(s) not " + std::string(to_string(want)) +
                    ", first: " + first);
  };
  expect(spec.split, SplittingType::Split);
  expect(spec.inert, SplittingType::Inert);
  expect(spec.ramified, SplittingType::Ramified);
  if (spec.two != TwoBehavior::Unconstrained) {
    const SplittingType want = spec.two == TwoBehavior::Split ? SplittingType::Split
                               : spec.two == TwoBehavior::Inert
                                   ? SplittingType::Inert
                                   : SplittingType::Ramified;
    const SplittingType got = g.splitting_type(2);
    if (got != want)
      out.push_back("2 is " + std::string(to_string(got)) + ", wanted " +
                    std::string(to_string(want)));
  }
  const bool real = sgn(m) > 0;
  if (real != (spec.signature == Signature::TotallyReal))
    out.push_back(std::string("field is ") +
                  (real ? "totally real" : "totally complex"));
  return out;
}

Prime first_prime_where(std::uint64_t lo, std::uint64_t ceiling,
                        const std::function<bool(Prime)>& pred,
                        const std::string& what) {
  std::optional<Prime> found;
  for_each_prime(
      PrimeRange(lo, ceiling),
      [&](Prime p) {
        if (!pred(p)) return true;
        found = p;
        return false;
      },
      ceiling);
  if (!found)
    throw ResourceError(what + ": none found below sieve ceiling " +
                        std::to_string(ceiling));
  return *found;
}

// Scans primes from lo, adding terms while `keep` holds, until the sum
// minus its error bound reaches target. Returns the last prime used.
Prime close_block(const std::function<LocalData(Prime)>& local, std::uint64_t lo,
                  double target, std::uint64_t ceiling,
                  const std::function<bool(Prime)>& keep, CompensatedSum& sum,
                  const std::string& stage) {
  std::optional<Prime> last;
  for_each_prime(
      PrimeRange(std::max<std::uint64_t>(lo, 2), ceiling),
      [&](Prime p) {
        if (!keep(p)) return true;
        sum.add(sfrak_term(local(p), p));
        if (sum.value() - sum.error_bound() < target) return true;
        last = p;
        return false;
      },
      ceiling);
  if (!last)
    throw ResourceError(stage + ": block sum stays below target up to sieve ceiling " +
                        std::to_string(ceiling));
  return *last;
}

std::vector<std::pair<std::string, std::string>> tower_params(
    const TowerOptions& o) {
  std::ostringstream target;
  target.precision(17);
  target << o.sum_target;
  return {{"stages", str(o.stages)},
          {"sum_target", target.str()},
          {"sieve_ceiling", str(o.sieve_ceiling)},
          {"ap_budget", str(o.ap_budget)}};
}

void validate(const TowerOptions& o) {
  if (o.stages < 1) throw InvalidArgument("stages must be >= 1");
  if (!(o.sum_target > 0) || !std::isfinite(o.sum_target))
    throw InvalidArgument("sum target must be a positive finite number");
  if (o.sieve_ceiling < 100) throw InvalidArgument("sieve ceiling must be >= 100");
  if (o.ap_budget < 1) throw InvalidArgument("AP budget must be positive");
}

void require_accepted(const ConstructionTrace& trace) {
  auto check = [](const std::vector<CertifiedInequality>& certs) {
    for (const auto& c : certs)
      if (!c.holds)
        throw VerificationError("certificate failed: " + c.name + " (" +
                                c.detail + ")");
  };
  check(trace.certificates);
  for (const auto& s : trace.stages) check(s.certificates);
}

}  // namespace

std::string_view to_string(TwoBehavior b) {
  switch (b) {
    case TwoBehavior::Unconstrained: return "unconstrained";
    case TwoBehavior::Split: return "split";
    case TwoBehavior::Inert: return "inert";
    case TwoBehavior::Ramified: return "ramified";
  }
  return "?";
}

std::string_view to_string(Signature s) {
  return s == Signature::TotallyReal ? "real" : "complex";
}

void normalize(SplittingSpec& spec) {
  auto tidy = [](std::vector<Prime>& v, const char* name) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    for (Prime p : v) {
      if (p == 2)
        throw InvalidArgument(std::string("2 may not appear in the ") + name +
                              " set; use the behavior at 2 instead");
      if (!is_prime(p))
        throw InvalidArgument(std::to_string(p) + " in the " + name +
                              " set is not prime");
    }
  };
  tidy(spec.split, "split");
  tidy(spec.inert, "inert");
  tidy(spec.ramified, "ramified");
  auto disjoint = [](const std::vector<Prime>& a, const std::vector<Prime>& b,
                     const char* na, const char* nb) {
    std::vector<Prime> common;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(common));
    if (!common.empty())
      throw InvalidArgument(std::to_string(common.front()) + " is in both the " +
                            na + " and " + nb + " sets");
  };
  disjoint(spec.split, spec.inert, "split", "inert");
  disjoint(spec.split, spec.ramified, "split", "ramified");
  disjoint(spec.inert, spec.ramified, "inert", "ramified");
  if (spec.split.empty() && spec.inert.empty() && spec.ramified.empty() &&
      spec.two == TwoBehavior::Unconstrained)
    throw InvalidArgument("spec constrains no prime");
}

std::vector<std::string> spec_violations(const BigInt& m,
                                         const SplittingSpec& spec) {
  SplittingSpec s = spec;
  normalize(s);
  return violations_with(m, s, *residue_cache(m, s));
}

PrescribedQuadratic construct_prescribed_quadratic(SplittingSpec spec,
                                                   QuadraticOptions options) {
  normalize(spec);
  std::vector<WordCongruence> congruences;
  for (Prime p : spec.split) congruences.push_back({1, p});
  for (Prime p : spec.inert) congruences.push_back({smallest_nonresidue(p), p});
  for (Prime l : spec.ramified) congruences.push_back({l, l * l});
  switch (spec.two) {
    case TwoBehavior::Split: congruences.push_back({1, 8}); break;
    case TwoBehavior::Inert: congruences.push_back({5, 8}); break;
    case TwoBehavior::Ramified: congruences.push_back({2, 4}); break;
    case TwoBehavior::Unconstrained: break;
  }
  PrescribedQuadratic out;
  // Without an inert or ramified condition, at 2 or at an odd prime, and
  // with m > 0, the class could contain squares; a non-residue condition at
  // one more prime rules them out.
  const bool may_be_square = spec.inert.empty() && spec.ramified.empty() &&
                             spec.two != TwoBehavior::Inert &&
                             spec.two != TwoBehavior::Ramified &&
                             spec.signature == Signature::TotallyReal;
  if (may_be_square) {
    auto used = [&](Prime q) {
      return std::binary_search(spec.split.begin(), spec.split.end(), q);
    };
    Prime q = 3;
    while (used(q)) q = find_prime_in_ap(1, 2, static_cast<std::int64_t>(q));
    out.auxiliary_prime = q;
    congruences.push_back({smallest_nonresidue(q), q});
  }
  const BigCongruence c = crt_big(congruences);
  out.modulus = c.modulus;
  out.m = spec.signature == Signature::TotallyReal ? c.residue
                                                   : BigInt(c.residue - c.modulus);
  if (out.m == 0)
    throw VerificationError("CRT class of the spec contains only multiples of its modulus");

  const auto cache = residue_cache(out.m, spec);
  const auto bad = violations_with(out.m, spec, *cache);
  if (!bad.empty())
    throw VerificationError("constructed m fails its spec: " + bad.front());
  if (out.auxiliary_prime &&
      QuadraticGenerator(out.m).splitting_type(*out.auxiliary_prime) !=
          SplittingType::Inert)
    throw VerificationError("auxiliary prime is not inert");

  if (options.compute_kernel) {
    if (auto factored = try_factor(out.m)) {
      out.kernel = SquarefreeInt(squarefree_kernel(*factored));
      const BigInt k = out.kernel->value();
      const auto kbad = violations_with(k, spec, *residue_cache(k, spec));
      if (!kbad.empty())
        throw VerificationError("squarefree kernel fails its spec: " + kbad.front());
    }
  }
  out.verified = true;
  return out;
}

CertifiedInequality certify(std::string name, double lhs, std::string relation,
                            double rhs, std::string detail) {
  bool holds = false;
  if (relation == ">=")
    holds = lhs >= rhs;
  else if (relation == "<=")
    holds = lhs <= rhs;
  else if (relation == ">")
    holds = lhs > rhs;
  else if (relation == "<")
    holds = lhs < rhs;
  else if (relation == "==")
    holds = lhs == rhs;
  else
    throw InvalidArgument("unknown relation " + relation);
  return {std::move(name), lhs, std::move(relation), rhs, holds,
          std::move(detail)};
}

bool ConstructionTrace::accepted() const {
  auto all = [](const std::vector<CertifiedInequality>& v) {
    return std::all_of(v.begin(), v.end(),
                       [](const CertifiedInequality& c) { return c.holds; });
  };
  return all(certificates) &&
         std::all_of(stages.begin(), stages.end(),
                     [&](const StageRecord& s) { return all(s.certificates); });
}

ConstructionTrace build_theorem_1_2_tower(const TowerOptions& options) {
  validate(options);
  ConstructionTrace trace;
  trace.construction = kTheorem12;
  trace.params = tower_params(options);
  trace.fields.emplace_back();
  const std::uint64_t ceiling = options.sieve_ceiling;
  std::uint64_t n = 1;
  for (unsigned k = 0; k < options.stages; ++k) {
    const TowerField& field = trace.fields.back();
    const std::string stage = "stage " + std::to_string(k + 1);
    StageRecord rec;
    rec.index = k + 1;

    CompensatedSum block;
    const Prime last = close_block(
        [&](Prime p) { return field.local_data(p); }, n, options.sum_target,
        ceiling, [](Prime p) { return p % 4 == 3; }, block, stage);
    const std::uint64_t n_next = last + 1;

    const Prime q = first_prime_where(
        5, ceiling, [&](Prime p) { return p % 4 == 1 && field.totally_split(p); },
        stage + ": auxiliary prime q = 1 (mod 4) totally split");

    SplittingSpec spec;
    for (Prime p : sieve_primes(PrimeRange(3, n_next), ceiling))
      (p % 4 == 3 ? spec.split : spec.inert).push_back(p);
    spec.inert.push_back(q);
    const PrescribedQuadratic f =
        construct_prescribed_quadratic(spec, {.compute_kernel = false});
    normalize(spec);
    auto cache = residue_cache(f.m, spec);
    QuadraticGenerator generator(f.m, cache);

    std::uint64_t split_ok = 0, inert_ok = 0;
    for (Prime p : spec.split)
      split_ok += generator.splitting_type(p) == SplittingType::Split;
    std::uint64_t inert_small = 0;
    for (Prime p : spec.inert) {
      if (p > n_next) continue;
      ++inert_small;
      inert_ok += generator.splitting_type(p) == SplittingType::Inert;
    }
    const int q_symbol = generator.splitting_type(q) == SplittingType::Inert ? -1 : 1;

    rec.n = n_next;
    rec.auxiliary_primes = {BigInt(static_cast<unsigned long>(q))};
    rec.field_added = f.m;
    rec.block_sum = block.value();
    rec.certificates.push_back(certify(
        "F_k and L_{k-1} linearly disjoint", q_symbol, "==", -1,
        "q = " + str(q) + " is totally split in L_{k-1} and inert in F_k"));
    rec.certificates.push_back(
        certify("p <= n_k, p = 3 mod 4 split in F_k",
                static_cast<double>(split_ok), "==",
                static_cast<double>(spec.split.size()),
                str(spec.split.size()) + " primes checked"));
    rec.certificates.push_back(
        certify("p <= n_k, p = 1 mod 4 inert in F_k", static_cast<double>(inert_ok),
                "==", static_cast<double>(inert_small),
                str(inert_small) + " primes checked"));
    rec.certificates.push_back(certify(
        "block sum over P_k on L_{k-1}", block.value() - block.error_bound(),
        ">=", options.sum_target,
        "block [" + str(n) + ", " + str(n_next) + "), sum " +
            std::to_string(block.value())));
    rec.certificates.push_back(
        certify("F_k totally real", sgn(f.m), ">", 0, "m > 0"));

    TowerField next = field.adjoin(std::move(generator), InertWitness{q});
    rec.cumulative_degree = next.degree();
    trace.fields.push_back(std::move(next));
    trace.stages.push_back(std::move(rec));
    n = n_next;
  }

  const SfrakReport tower = theorem_1_2_block_sum(trace, ceiling);
  const double need = options.sum_target * options.stages;
  trace.certificates.push_back(certify(
      "tower sum over certified blocks", tower.partial_sum - tower.error_bound,
      ">=", need, str(tower.primes_counted) + " primes, each at its stabilized stage"));
  trace.certificates.push_back(certify(
      "i not in L_K (totally real)", trace.fields.back().is_totally_real() ? 1 : 0,
      "==", 1, "all generators positive"));
  require_accepted(trace);
  return trace;
}

SfrakReport theorem_1_2_block_sum(const ConstructionTrace& trace,
                                  std::uint64_t sieve_ceiling) {
  if (trace.construction != kTheorem12 || trace.stages.empty())
    throw InvalidArgument("not a thm12-tower trace");
  std::vector<std::uint64_t> bounds{1};
  for (const auto& s : trace.stages) bounds.push_back(s.n);
  std::vector<StabilizationCertificate> certs;
  for_each_prime(
      PrimeRange(3, bounds.back() - 1),
      [&](Prime p) {
        if (p % 4 != 3) return;
        const auto it = std::upper_bound(bounds.begin(), bounds.end(), p);
        certs.push_back({p, static_cast<std::size_t>(it - bounds.begin()) - 1});
      },
      sieve_ceiling);
  const std::span<const TowerField> stages(trace.fields.data(),
                                           trace.stages.size());
  SumOptions opts;
  opts.residue_mod_4 = 3;
  opts.sieve_ceiling = sieve_ceiling;
  return sfrak_tower_sum(stages, PrimeRange(3, bounds.back() - 1), certs, opts);
}

AdjoinIBound certify_adjoin_i_convergence(const ConstructionTrace& trace,
                                          std::uint64_t prime_ceiling) {
  if (trace.construction != kTheorem12)
    throw InvalidArgument("adjoin-i bound needs a thm12-tower trace");
  if (!trace.accepted()) throw InvalidArgument("trace is not accepted");
  if (prime_ceiling < 2) throw InvalidArgument("prime ceiling must be >= 2");
  if (trace.fields.size() != trace.stages.size() + 1)
    throw InvalidArgument("trace carries no fields; rebuild it first");

  std::vector<std::uint64_t> bounds;
  for (const auto& s : trace.stages) bounds.push_back(s.n);
  AdjoinIBound out;
  CompensatedSum sum, continuation;
  for_each_prime(PrimeRange(2, prime_ceiling), [&](Prime p) {
    const double x = static_cast<double>(p);
    // With f >= 2 in L(i), the term is at most log p / (p^2 + 1).
    const double bound = std::log(x) / (x * x + 1.0);
    if (p % 4 == 1) {
      const auto it = std::lower_bound(bounds.begin(), bounds.end(), p);
      if (it == bounds.end()) {
        ++out.continuation_primes;
        continuation.add(bound);
      } else {
        const auto k = static_cast<std::size_t>(it - bounds.begin());
        const auto& g = trace.fields.back().generators()[k];
        if (g.splitting_type(p) != SplittingType::Inert)
          throw VerificationError("prime " + std::to_string(p) +
                                  " is not inert in F_" + std::to_string(k + 1));
        ++out.certified_inert;
      }
    }
    sum.add(bound);
  });
  out.report.field_degree = trace.fields.back().degree() * 2;
  out.report.prime_lo = 2;
  out.report.prime_hi = prime_ceiling;
  out.report.partial_sum = sum.value();
  out.report.error_bound = sum.error_bound();
  out.report.primes_counted = sum.count();
  out.report.tail_upper_bound = tail_bound_fully_inert(prime_ceiling);
  out.continuation_sum = continuation.value();
  out.total = out.report.partial_sum + out.report.error_bound +
              *out.report.tail_upper_bound;
  return out;
}

ConstructionTrace build_prop_7_1_tower(const TowerOptions& options) {
  validate(options);
  ConstructionTrace trace;
  trace.construction = kProp71;
  trace.params = tower_params(options);
  trace.fields.emplace_back();
  const std::uint64_t ceiling = options.sieve_ceiling;
  std::uint64_t n = 1;
  BigInt p_prev = 0;
  std::vector<BigInt> chosen;
  for (unsigned i = 1; i <= options.stages; ++i) {
    const TowerField& field = trace.fields.back();
    const std::string stage = "stage " + std::to_string(i);
    StageRecord rec;
    rec.index = i;

    CompensatedSum block;
    const std::uint64_t n_i = close_block(
        [&](Prime p) { return field.local_data(p); }, n + 1, options.sum_target,
        ceiling, [](Prime) { return true; }, block, stage);

    // 4 * prod_{2 <= q <= n_i} q = 2^3 * prod of the odd q.
    const std::vector<Prime> small = sieve_primes(PrimeRange(2, n_i), ceiling);
    std::vector<PrimePower> modulus;
    for (Prime q : small) modulus.push_back({q, q == 2 ? 3u : 1u});
    const BigInt floor = std::max(BigInt(static_cast<unsigned long>(n_i)), p_prev);
    CertifiedPrime found = [&] {
      try {
        return find_prime_one_mod(modulus, floor, options.ap_budget);
      } catch (const ResourceError& e) {
        throw ResourceError(stage + ": " + e.what());
      }
    }();
    const BigInt p_i = found.certificate.n;
    QuadraticGenerator generator(p_i);

    std::uint64_t split_ok = 0;
    for (Prime q : small) split_ok += generator.splitting_type(q) == SplittingType::Split;

    rec.n = n_i;
    rec.field_added = p_i;
    rec.block_sum = block.value();
    rec.certificates.push_back(certify(
        "block sum over (n_{i-1}, n_i] on L_{i-1}", block.value() - block.error_bound(),
        ">=", options.sum_target,
        "block (" + str(n) + ", " + str(n_i) + "], sum " + std::to_string(block.value())));
    rec.certificates.push_back(certify(
        "p_i prime (Pocklington)", verify_pocklington(found.certificate) ? 1 : 0,
        "==", 1, str(found.candidates_tested) + " candidate(s) tested"));
    rec.certificates.push_back(certify("p_i = 1 mod 4",
                                       static_cast<double>(mpz_fdiv_ui(p_i.get_mpz_t(), 4)),
                                       "==", 1));
    rec.certificates.push_back(certify(
        "p_i > max(n_i, p_{i-1})", p_i > floor ? 1 : 0, "==", 1));
    rec.certificates.push_back(certify(
        "primes q <= n_i totally split in Q(sqrt p_i)", static_cast<double>(split_ok),
        "==", static_cast<double>(small.size()), str(small.size()) + " primes checked"));

    // Conductor-discriminant formula: for r generators that are primes
    // = 1 (mod 4), each appears in D(L) with exponent 2^(r-1). The relative
    // norm is D(L_i) / D(L_{i-1})^2.
    chosen.push_back(p_i);
    const std::uint64_t r = i;
    std::vector<std::uint64_t> relative(r);
    for (std::uint64_t j = 0; j < r; ++j) {
      const std::uint64_t now = std::uint64_t{1} << (r - 1);
      const std::uint64_t before = j + 1 < r ? (std::uint64_t{1} << (r - 2)) : 0;
      relative[j] = now - 2 * before;
    }
    const bool only_new = std::all_of(relative.begin(), relative.end() - 1,
                                      [](std::uint64_t e) { return e == 0; });
    WidmerTerm w;
    w.stage = i;
    w.prime = p_i;
    w.norm_exponent = relative.back();
    w.log_norm = static_cast<double>(w.norm_exponent) * log_big(p_i);
    const double degree_product = static_cast<double>(field.degree()) * 2.0 * 2.0;
    w.log_widmer_quantity = w.log_norm / degree_product;
    if (w.log_widmer_quantity < 700) w.widmer_quantity = std::exp(w.log_widmer_quantity);
    rec.certificates.push_back(certify(
        "relative discriminant norm = p_i^[L_{i-1}:Q]",
        only_new ? static_cast<double>(w.norm_exponent) : -1.0, "==",
        static_cast<double>(field.degree())));
    if (!trace.stages.empty())
      rec.certificates.push_back(certify(
          "Widmer quantity increasing", w.log_widmer_quantity, ">",
          trace.stages.back().widmer->log_widmer_quantity, "compared as logarithms"));
    rec.widmer = w;
    rec.primality = std::move(found.certificate);

    TowerField next = field.adjoin(std::move(generator), RamifiedWitness{p_i});
    rec.cumulative_degree = next.degree();
    trace.fields.push_back(std::move(next));
    trace.stages.push_back(std::move(rec));
    n = n_i;
    p_prev = p_i;
  }

  // Primes in (n_{i-1}, n_i] split in every later Q(sqrt p_j), so their
  // terms stabilize at L_{i-1}.
  std::vector<StabilizationCertificate> certs;
  std::size_t stage = 0;
  for_each_prime(
      PrimeRange(2, trace.stages.back().n),
      [&](Prime p) {
        while (p > trace.stages[stage].n) ++stage;
        certs.push_back({p, stage});
      },
      ceiling);
  SumOptions opts;
  opts.sieve_ceiling = ceiling;
  const SfrakReport tower = sfrak_tower_sum(
      std::span<const TowerField>(trace.fields.data(), trace.stages.size()),
      PrimeRange(2, trace.stages.back().n), certs, opts);
  trace.certificates.push_back(certify(
      "tower sum over certified blocks", tower.partial_sum - tower.error_bound,
      ">=", options.sum_target * options.stages,
      str(tower.primes_counted) + " primes, each at its stabilized stage"));
  require_accepted(trace);
  return trace;
}

InertCompanion search_inert_companion(Prime p, unsigned m, CompanionWant want,
                                      std::uint64_t budget) {
  if (p == 2 || !is_prime(p))
    throw InvalidArgument("search_inert_companion: p = " + std::to_string(p) +
                          " is not an odd prime");
  if (m < 1) throw InvalidArgument("search_inert_companion: m must be >= 1");
  if (m > 40 || p > (std::uint64_t{1} << 20))
    throw ResourceError("search_inert_companion: modulus p * 2^m exceeds 64-bit scan range");
  const int target = want == CompanionWant::Inert ? -1 : 1;
  const auto power = static_cast<std::int64_t>(std::uint64_t{1} << m);
  std::optional<Prime> best;
  // One progression per residue class a mod p with (a|p) = target; the
  // answer is the least prime over all of them.
  for (std::uint64_t a = 1; a < p; ++a) {
    if (kronecker(static_cast<std::int64_t>(a), static_cast<std::int64_t>(p)) != target)
      continue;
    const Congruence parts[] = {{static_cast<std::int64_t>(a), static_cast<std::int64_t>(p)},
                                {1, power}};
    const Congruence c = power >= 2 ? crt_solve(parts) : parts[0];
    const Prime q = find_prime_in_ap(c.residue, c.modulus, 1, budget);
    if (!best || q < *best) best = q;
  }
  InertCompanion out;
  out.q = *best;
  const int k = kronecker(static_cast<std::int64_t>(out.q), static_cast<std::int64_t>(p));
  out.p_in_q = k == 1 ? SplittingType::Split : SplittingType::Inert;
  if (out.q % 4 == 1)
    out.q_in_p = splitting_type(SquarefreeInt::of(static_cast<std::int64_t>(p)), out.q);
  if (k != target) throw VerificationError("companion has the wrong behavior");
  return out;
}

}  // namespace splitlab
