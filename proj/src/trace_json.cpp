#include "splitlab/trace_json.hpp"

#include <algorithm>
#include <cmath>

namespace splitlab {

using nlohmann::json;

namespace {

json optional_number(const std::optional<double>& v) {
  return v && std::isfinite(*v) ? json(*v) : json(nullptr);
}

std::vector<Prime> primes_json(const json& j) {
  return j.is_null() ? std::vector<Prime>{} : j.get<std::vector<Prime>>();
}

TwoBehavior two_from(const std::string& s) {
  if (s == "unconstrained") return TwoBehavior::Unconstrained;
  if (s == "split") return TwoBehavior::Split;
  if (s == "inert") return TwoBehavior::Inert;
  if (s == "ramified") return TwoBehavior::Ramified;
  throw InvalidArgument("unknown behavior at 2: " + s);
}

double log_big(const BigInt& x) {
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(mantissa) + static_cast<double>(exp) * std::log(2.0);
}

struct Failures {
  std::vector<std::string> lines;
  void check(bool ok, const std::string& what) {
    if (!ok) lines.push_back(what);
  }
};

// Sum of terms over the primes of [lo, hi] kept by `keep`, and the same sum
// without its largest kept prime (to confirm the block is minimal).
std::pair<double, double> block_sums(const TowerField& field, std::uint64_t lo,
                                     std::uint64_t hi,
                                     const std::function<bool(Prime)>& keep,
                                     double& error) {
  CompensatedSum sum;
  double last = 0.0;
  if (lo <= hi)
    for_each_prime(PrimeRange(std::max<std::uint64_t>(lo, 2), hi), [&](Prime p) {
      if (!keep(p)) return;
      last = sfrak_term(field, p);
      sum.add(last);
    });
  error = sum.error_bound();
  return {sum.value(), sum.value() - last};
}

std::string stage_name(std::size_t i) { return "stage " + std::to_string(i); }

void verify_theorem_1_2(const json& j, Failures& f) {
  const double target = std::stod(j.at("params").at("sum_target").get<std::string>());
  TowerField field;
  std::vector<TowerField> fields{field};
  std::uint64_t n_prev = 1;
  std::size_t index = 0;
  for (const auto& s : j.at("stages")) {
    const std::string name = stage_name(++index);
    const auto n = s.at("n").get<std::uint64_t>();
    const BigInt m = get_bigint(s.at("field_added"), "m");
    const auto q = static_cast<Prime>(
        get_bigint(s.at("auxiliary_primes").at(0), "q").get_ui());

    double err = 0;
    const auto [sum, without_last] =
        block_sums(field, n_prev, n - 1, [](Prime p) { return p % 4 == 3; }, err);
    f.check(sum - err >= target, name + ": block sum below target");
    f.check(without_last - err < target, name + ": block is not minimal");

    const auto primes = sieve_primes(PrimeRange(3, std::max<std::uint64_t>(n, 3)));
    auto cache = std::make_shared<ResidueCache>();
    cache->primes = primes;
    cache->residues = residues_mod(m, primes);
    f.check(sgn(m) > 0, name + ": F_k not totally real");
    if (sgn(m) <= 0 || mpz_perfect_square_p(m.get_mpz_t())) continue;
    QuadraticGenerator g(m, cache);
    std::size_t bad = 0;
    for (Prime p : primes) {
      if (p > n) break;
      const auto want = p % 4 == 3 ? SplittingType::Split : SplittingType::Inert;
      bad += g.splitting_type(p) != want;
    }
    f.check(bad == 0, name + ": " + std::to_string(bad) +
                          " prime(s) below n_k with the wrong behavior");
    f.check(q % 4 == 1, name + ": auxiliary prime is not 1 mod 4");
    try {
      field = field.adjoin(g, InertWitness{q});
      fields.push_back(field);
    } catch (const VerificationError& e) {
      f.check(false, name + ": " + e.what());
      return;
    }
    n_prev = n;
  }
  // Tower sum over the certified blocks, every prime at its stage.
  CompensatedSum tower;
  std::uint64_t lo = 1;
  for (std::size_t k = 0; k + 1 < fields.size(); ++k) {
    const auto hi = j.at("stages")[k].at("n").get<std::uint64_t>();
    double err = 0;
    tower.add(block_sums(fields[k], lo, hi - 1,
                         [](Prime p) { return p % 4 == 3; }, err)
                  .first);
    lo = hi;
  }
  f.check(tower.value() >= target * static_cast<double>(fields.size() - 1) -
                               1e-9,
          "tower sum over certified blocks below K * target");
}

void verify_prop_7_1(const json& j, Failures& f) {
  const double target = std::stod(j.at("params").at("sum_target").get<std::string>());
  TowerField field;
  std::uint64_t n_prev = 1;
  BigInt p_prev = 0;
  double widmer_prev = -1;
  std::size_t index = 0;
  for (const auto& s : j.at("stages")) {
    const std::string name = stage_name(++index);
    const auto n = s.at("n").get<std::uint64_t>();
    const BigInt p = get_bigint(s.at("field_added"), "m");

    double err = 0;
    const auto [sum, without_last] =
        block_sums(field, n_prev + 1, n, [](Prime) { return true; }, err);
    f.check(sum - err >= target, name + ": block sum below target");
    f.check(without_last - err < target, name + ": block is not minimal");

    const auto small = sieve_primes(PrimeRange(2, std::max<std::uint64_t>(n, 2)));
    PocklingtonCertificate cert;
    cert.n = p;
    const auto& pj = s.at("primality");
    cert.k = get_bigint(pj, "k");
    for (const auto& pe : pj.at("modulus_factors"))
      cert.modulus_factors.push_back({pe.at(0).get<Prime>(), pe.at(1).get<unsigned>()});
    cert.bases = pj.at("bases").get<std::vector<std::uint32_t>>();
    std::vector<PrimePower> expected;
    for (Prime q : small)
      if (q <= n) expected.push_back({q, q == 2 ? 3u : 1u});
    f.check(cert.modulus_factors == expected,
            name + ": modulus is not 8 * prod of odd q <= n_i");
    f.check(verify_pocklington(cert), name + ": Pocklington certificate fails");
    f.check(mpz_fdiv_ui(p.get_mpz_t(), 4) == 1, name + ": p_i is not 1 mod 4");
    f.check(p > std::max(BigInt(static_cast<unsigned long>(n)), p_prev),
            name + ": p_i does not exceed max(n_i, p_{i-1})");
    if (sgn(p) <= 0) return;
    QuadraticGenerator g(p);
    std::size_t bad = 0;
    for (Prime q : small)
      if (q <= n) bad += g.splitting_type(q) != SplittingType::Split;
    f.check(bad == 0, name + ": " + std::to_string(bad) +
                          " prime(s) q <= n_i not split in Q(sqrt p_i)");

    const auto& w = s.at("widmer");
    const double log_q = log_big(p) / 4.0;
    f.check(w.at("norm_exponent").get<std::uint64_t>() == field.degree(),
            name + ": relative discriminant exponent is not [L_{i-1}:Q]");
    f.check(std::fabs(w.at("log_widmer_quantity").get<double>() - log_q) <=
                1e-9 * std::max(1.0, log_q),
            name + ": Widmer quantity differs from p_i^(1/4)");
    f.check(log_q > widmer_prev, name + ": Widmer quantity not increasing");
    widmer_prev = log_q;
    try {
      field = field.adjoin(g, RamifiedWitness{p});
    } catch (const VerificationError& e) {
      f.check(false, name + ": " + e.what());
      return;
    }
    n_prev = n;
    p_prev = p;
  }
}

void verify_prescribed(const json& j, Failures& f) {
  const SplittingSpec spec = spec_from_json(j.at("spec"));
  const BigInt m = get_bigint(j, "m");
  for (const auto& line : spec_violations(m, spec)) f.check(false, "m: " + line);
  if (j.contains("kernel") && !j.at("kernel").is_null()) {
    const BigInt k = get_bigint(j, "kernel");
    for (const auto& line : spec_violations(k, spec)) f.check(false, "kernel: " + line);
    const bool divides = k != 0 && mpz_divisible_p(m.get_mpz_t(), k.get_mpz_t());
    const BigInt q = divides ? BigInt(m / k) : BigInt(0);
    f.check(divides && sgn(q) > 0 && mpz_perfect_square_p(q.get_mpz_t()),
            "kernel differs from m by more than a square");
  }
}

}  // namespace

void put_bigint(json& j, const std::string& key, const BigInt& v) {
  if (v.fits_slong_p())
    j[key] = v.get_si();
  else if (mpz_sizeinbase(v.get_mpz_t(), 2) <= kDecimalBitLimit)
    j[key] = v.get_str(10);
  else
    j[key + "_hex"] = v.get_str(16);
}

BigInt get_bigint(const json& j, const std::string& key) {
  if (j.contains(key)) {
    const auto& v = j.at(key);
    if (v.is_number_integer()) return BigInt(v.dump());
    return from_decimal(v.get<std::string>());
  }
  if (j.contains(key + "_hex")) return from_hex(j.at(key + "_hex").get<std::string>());
  throw InvalidArgument("missing integer field '" + key + "'");
}

json to_json(const CertifiedInequality& c) {
  return {{"name", c.name},       {"lhs", c.lhs},   {"relation", c.relation},
          {"rhs", c.rhs},         {"holds", c.holds}, {"detail", c.detail}};
}

json to_json(const SfrakReport& r) {
  json j = {{"field_degree", r.field_degree},
            {"prime_lo", r.prime_lo},
            {"prime_hi", r.prime_hi},
            {"partial_sum", r.partial_sum},
            {"error_bound", r.error_bound},
            {"tail_upper_bound", optional_number(r.tail_upper_bound)},
            {"primes_counted", r.primes_counted},
            {"chunks", r.chunks}};
  if (r.terms) {
    json terms = json::array();
    for (const auto& t : *r.terms)
      terms.push_back({{"p", t.p}, {"e", t.e}, {"f", t.f}, {"term", t.term}});
    j["terms"] = std::move(terms);
  }
  return j;
}

json to_json(const ConstructionTrace& t) {
  json params = json::object();
  for (const auto& [k, v] : t.params) params[k] = v;
  json stages = json::array();
  for (const auto& s : t.stages) {
    json js = {{"index", s.index}, {"n", s.n}};
    json aux = json::array();
    for (const auto& a : s.auxiliary_primes) {
      json q;
      put_bigint(q, "q", a);
      aux.push_back(std::move(q));
    }
    js["auxiliary_primes"] = std::move(aux);
    json field;
    put_bigint(field, "m", s.field_added);
    field["bits"] = mpz_sizeinbase(s.field_added.get_mpz_t(), 2);
    js["field_added"] = std::move(field);
    js["cumulative_degree"] = s.cumulative_degree;
    js["block_sum"] = s.block_sum;
    json certs = json::array();
    for (const auto& c : s.certificates) certs.push_back(to_json(c));
    js["certificates"] = std::move(certs);
    if (s.primality) {
      json pj;
      put_bigint(pj, "k", s.primality->k);
      json factors = json::array();
      for (const auto& f : s.primality->modulus_factors)
        factors.push_back({f.prime, f.exponent});
      pj["modulus_factors"] = std::move(factors);
      pj["bases"] = s.primality->bases;
      js["primality"] = std::move(pj);
    }
    if (s.widmer) {
      json w = {{"stage", s.widmer->stage},
                {"norm_exponent", s.widmer->norm_exponent},
                {"log_norm", s.widmer->log_norm},
                {"log_widmer_quantity", s.widmer->log_widmer_quantity},
                {"widmer_quantity", optional_number(s.widmer->widmer_quantity)}};
      put_bigint(w, "prime", s.widmer->prime);
      js["widmer"] = std::move(w);
    }
    stages.push_back(std::move(js));
  }
  json certs = json::array();
  for (const auto& c : t.certificates) certs.push_back(to_json(c));
  return {{"version", kSchemaVersion},
          {"construction", t.construction},
          {"params", std::move(params)},
          {"stages", std::move(stages)},
          {"certificates", std::move(certs)},
          {"accepted", t.accepted()}};
}

json to_json(const SplittingSpec& s) {
  return {{"split", s.split},
          {"inert", s.inert},
          {"ramified", s.ramified},
          {"two", std::string(to_string(s.two))},
          {"signature", std::string(to_string(s.signature))}};
}

SplittingSpec spec_from_json(const json& j) {
  SplittingSpec s;
  s.split = primes_json(j.value("split", json()));
  s.inert = primes_json(j.value("inert", json()));
  s.ramified = primes_json(j.value("ramified", json()));
  s.two = two_from(j.value("two", std::string("unconstrained")));
  const std::string sig = j.value("signature", std::string("real"));
  if (sig != "real" && sig != "complex") throw InvalidArgument("unknown signature " + sig);
  s.signature = sig == "real" ? Signature::TotallyReal : Signature::TotallyComplex;
  return s;
}

json to_json(const PrescribedQuadratic& q, const SplittingSpec& s) {
  json j = {{"version", kSchemaVersion}, {"construction", "prescribed-quadratic"}};
  j["spec"] = to_json(s);
  put_bigint(j, "m", q.m);
  put_bigint(j, "modulus", q.modulus);
  j["auxiliary_prime"] = q.auxiliary_prime ? json(*q.auxiliary_prime) : json(nullptr);
  if (q.kernel)
    put_bigint(j, "kernel", q.kernel->value());
  else
    j["kernel"] = nullptr;
  j["kernel_complete"] = q.kernel.has_value();
  if (q.kernel) put_bigint(j, "discriminant", discriminant(*q.kernel));
  j["verified"] = q.verified;
  return j;
}

json to_json(const AdjoinIBound& b) {
  return {{"report", to_json(b.report)},
          {"total", b.total},
          {"certified_inert", b.certified_inert},
          {"continuation_primes", b.continuation_primes},
          {"continuation_sum", b.continuation_sum}};
}

json to_json(const NorthcottBounds& b, bool list_primes) {
  json j = {{"count", b.primes.size()},
            {"first", b.primes.empty() ? json(nullptr) : json(b.primes.front())},
            {"last", b.primes.empty() ? json(nullptr) : json(b.primes.back())},
            {"lower", b.lower},
            {"upper", b.upper}};
  if (list_primes) j["primes"] = b.primes;
  return j;
}

json to_json(const PrimeWindow& w) {
  return {{"l", w.l},   {"j", w.j},   {"c", w.c}, {"j0", w.j0},
          {"tail_bound", w.tail_bound}, {"bounds", to_json(w.bounds, false)}};
}

json to_json(const DensityReport& r) {
  return {{"degree", r.degree},
          {"x", r.x},
          {"residue_filter", r.residue_filter ? json(*r.residue_filter) : json(nullptr)},
          {"count", r.count},
          {"density", r.density},
          {"expected", r.expected},
          {"ratio", optional_number(r.ratio)}};
}

json to_json(const InertCompanion& c) {
  return {{"q", c.q},
          {"p_in_q", std::string(to_string(c.p_in_q))},
          {"q_in_p", c.q_in_p ? json(std::string(to_string(*c.q_in_p))) : json(nullptr)}};
}

std::vector<std::string> verify_construction(const json& j) {
  Failures f;
  try {
    if (j.value("version", 0) != kSchemaVersion)
      return {"unsupported or missing schema version"};
    const std::string kind = j.at("construction").get<std::string>();
    if (kind == "thm12-tower")
      verify_theorem_1_2(j, f);
    else if (kind == "prop71-tower")
      verify_prop_7_1(j, f);
    else if (kind == "prescribed-quadratic")
      verify_prescribed(j, f);
    else
      f.check(false, "unknown construction '" + kind + "'");
  } catch (const json::exception& e) {
    f.check(false, std::string("malformed trace: ") + e.what());
  }
  return f.lines;
}

}  // namespace splitlab
