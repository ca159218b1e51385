#include "cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "splitlab/constructions.hpp"
#include "splitlab/density.hpp"
#include "splitlab/errors.hpp"
#include "splitlab/northcott.hpp"
#include "splitlab/trace_json.hpp"

namespace splitlab::cli {

namespace {

using nlohmann::json;

struct RunConfig {
  std::string command;
  std::optional<unsigned> stages;
  double sum_target = 1.0;
  std::optional<std::uint64_t> prime_ceiling;
  std::uint64_t prime_floor = 2;
  std::vector<Prime> split, inert, ramified, primes;
  std::string two = "unconstrained";
  std::string signature = "real";
  bool no_kernel = false;
  std::vector<std::int64_t> field;
  std::optional<unsigned> residue;
  bool terms = false;
  double r = 1.0;
  double epsilon = 0.5;
  std::uint64_t tail_ceiling = 1'000'000;
  bool list_primes = false;
  Prime p = 3;
  unsigned m = 2;
  std::string want = "inert";
  std::string input;
  bool rerun = false;
  std::string format = "json";
  std::string out;
  std::uint64_t budget_sieve = kDefaultSieveCeiling;
  std::uint64_t budget_ap = kDefaultApBudget;
  unsigned budget_stages = 8;
};

std::string number(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

template <class T>
std::string joined(const std::vector<T>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s;
}

std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

std::string env_name(const std::string& flag) {
  std::string s = "SPLITLAB_";
  for (char c : flag) s += c == '-' ? '_' : static_cast<char>(std::toupper(c));
  return s;
}

template <class T>
CLI::Option* add(CLI::App* app, const std::string& flag, T& target,
                 const std::string& help) {
  return app->add_option("--" + flag, target, help)->envname(env_name(flag));
}

CLI::Option* add_list(CLI::App* app, const std::string& flag, std::vector<Prime>& target,
                      const std::string& help) {
  return add(app, flag, target, help)->delimiter(',');
}

void add_budgets(CLI::App* app, RunConfig& c, bool ap, bool stages) {
  add(app, "budget-sieve", c.budget_sieve, "largest integer the sieve may reach")
      ->check(CLI::PositiveNumber);
  if (ap)
    add(app, "budget-ap", c.budget_ap, "candidates scanned per arithmetic progression")
        ->check(CLI::PositiveNumber);
  if (stages)
    add(app, "budget-stages", c.budget_stages, "largest accepted --stages")
        ->check(CLI::PositiveNumber);
}

void add_tower(CLI::App* app, RunConfig& c) {
  add(app, "stages", c.stages, "number of stages K (default 3, prop71-tower 2)");
  add(app, "sum-target", c.sum_target, "required block sum");
  add_budgets(app, c, true, true);
}

std::unique_ptr<CLI::App> make_app(RunConfig& c) {
  auto app = std::make_unique<CLI::App>(
      "Prime splitting in multiquadratic fields and the constructions built on it",
      "splitlab");
  app->require_subcommand(1);
  app->set_help_all_flag("--help-all", "help for every subcommand");
  add(app.get(), "format", c.format, "json, csv or human")
      ->check(CLI::IsMember({"json", "csv", "human"}));
  add(app.get(), "out", c.out, "write the report to this path");
  app->fallthrough();

  auto* q = app->add_subcommand("construct-quadratic",
                                "quadratic field with prescribed splitting");
  add_list(q, "split", c.split, "odd primes to split");
  add_list(q, "inert", c.inert, "odd primes to stay inert");
  add_list(q, "ramified", c.ramified, "odd primes to ramify");
  add(q, "two", c.two, "behavior of 2")
      ->check(CLI::IsMember({"unconstrained", "split", "inert", "ramified"}));
  add(q, "signature", c.signature, "real or complex")
      ->check(CLI::IsMember({"real", "complex"}));
  q->add_flag("--no-kernel", c.no_kernel, "skip factoring m to its squarefree kernel");

  add_tower(app->add_subcommand("thm12-tower",
                                "tower with divergent functional whose adjunction of i converges"),
            c);
  add_tower(app->add_subcommand("prop71-tower",
                                "tower with divergent functional and growing discriminants"),
            c);

  auto* s = app->add_subcommand("sfrak-sum", "partial sum of the functional of a field");
  add(s, "field", c.field, "squarefree generators, e.g. -1,2,5")->delimiter(',');
  add(s, "prime-floor", c.prime_floor, "smallest prime summed")->check(CLI::Range(2, 1 << 30));
  add(s, "prime-ceiling", c.prime_ceiling, "largest prime summed (default 10000)");
  s->add_flag("--terms", c.terms, "include every term");
  add_budgets(s, c, false, false);

  auto* a = app->add_subcommand("adjoin-i-bound",
                                "upper bound for the functional of the tower with i adjoined");
  add_tower(a, c);
  add(a, "prime-ceiling", c.prime_ceiling, "explicit summation limit X (default 1000000)");

  auto* nb = app->add_subcommand("northcott-bounds", "bounds on the Northcott number");
  add_list(nb, "primes", c.primes, "prime set")->required();

  auto* ns = app->add_subcommand("northcott-select", "window of primes with bounds in (r - eps, 2r]");
  add(ns, "r", c.r, "target r");
  add(ns, "epsilon", c.epsilon, "tolerance");
  add(ns, "tail-ceiling", c.tail_ceiling, "explicit summation limit for the gap tail");
  ns->add_flag("--list-primes", c.list_primes, "list the window");
  add_budgets(ns, c, false, false);

  auto* d = app->add_subcommand("density-check", "count of totally split primes");
  add(d, "field", c.field, "squarefree generators")->delimiter(',');
  add(d, "prime-ceiling", c.prime_ceiling, "count primes up to x (default 1000000)");
  add(d, "residue", c.residue, "keep only p = r (mod 4)")->check(CLI::IsMember({1, 3}));
  add_budgets(d, c, false, false);

  auto* ic = app->add_subcommand("inert-companion",
                                 "smallest q = 1 (mod 2^m) with p inert or split in Q(sqrt q)");
  add(ic, "p", c.p, "odd prime")->required();
  add(ic, "m", c.m, "2-adic exponent")->check(CLI::Range(1, 60));
  add(ic, "want", c.want, "inert or split")->check(CLI::IsMember({"inert", "split"}));
  add_budgets(ic, c, true, false);

  auto* v = app->add_subcommand("verify", "re-check a JSON report produced by this tool");
  v->add_option("input", c.input, "report path, - for stdin")->required();
  v->add_flag("--rerun", c.rerun, "recompute constructions too, not only their certificates");

  for (auto* sub : app->get_subcommands({})) sub->fallthrough();
  return app;
}

// Explicit flags reproducing the run; budgets are included so that a rerun
// is independent of the environment.
std::vector<std::string> invocation(const RunConfig& c) {
  std::vector<std::string> v{c.command};
  auto flag = [&](const std::string& name, const std::string& value) {
    v.push_back("--" + name);
    v.push_back(value);
  };
  auto tower = [&] {
    flag("stages", std::to_string(*c.stages));
    flag("sum-target", number(c.sum_target));
    flag("budget-sieve", std::to_string(c.budget_sieve));
    flag("budget-ap", std::to_string(c.budget_ap));
    flag("budget-stages", std::to_string(c.budget_stages));
  };
  const std::string& cmd = c.command;
  if (cmd == "construct-quadratic") {
    if (!c.split.empty()) flag("split", joined(c.split));
    if (!c.inert.empty()) flag("inert", joined(c.inert));
    if (!c.ramified.empty()) flag("ramified", joined(c.ramified));
    flag("two", c.two);
    flag("signature", c.signature);
    if (c.no_kernel) v.push_back("--no-kernel");
  } else if (cmd == "thm12-tower" || cmd == "prop71-tower") {
    tower();
  } else if (cmd == "adjoin-i-bound") {
    tower();
    flag("prime-ceiling", std::to_string(*c.prime_ceiling));
  } else if (cmd == "sfrak-sum" || cmd == "density-check") {
    if (!c.field.empty()) flag("field", joined(c.field));
    flag("prime-ceiling", std::to_string(*c.prime_ceiling));
    if (cmd == "sfrak-sum") {
      flag("prime-floor", std::to_string(c.prime_floor));
      if (c.terms) v.push_back("--terms");
    } else if (c.residue) {
      flag("residue", std::to_string(*c.residue));
    }
    flag("budget-sieve", std::to_string(c.budget_sieve));
  } else if (cmd == "northcott-bounds") {
    flag("primes", joined(c.primes));
  } else if (cmd == "northcott-select") {
    flag("r", number(c.r));
    flag("epsilon", number(c.epsilon));
    flag("tail-ceiling", std::to_string(c.tail_ceiling));
    if (c.list_primes) v.push_back("--list-primes");
    flag("budget-sieve", std::to_string(c.budget_sieve));
  } else if (cmd == "inert-companion") {
    flag("p", std::to_string(c.p));
    flag("m", std::to_string(c.m));
    flag("want", c.want);
    flag("budget-ap", std::to_string(c.budget_ap));
  }
  return v;
}

TowerOptions tower_options(const RunConfig& c) {
  if (*c.stages > c.budget_stages)
    throw ResourceError("--stages " + std::to_string(*c.stages) + " exceeds --budget-stages " +
                        std::to_string(c.budget_stages));
  TowerOptions o;
  o.stages = *c.stages;
  o.sum_target = c.sum_target;
  o.sieve_ceiling = c.budget_sieve;
  o.ap_budget = c.budget_ap;
  return o;
}

MultiquadField field_of(const RunConfig& c) {
  std::vector<SquarefreeInt> gens;
  for (auto m : c.field) gens.push_back(SquarefreeInt::of(m));
  return MultiquadField::generated_by(gens);
}

json basis_json(const MultiquadField& f) {
  json b = json::array();
  for (const auto& m : f.basis()) b.push_back(to_string(m));
  return b;
}

SplittingSpec spec_of(const RunConfig& c) {
  SplittingSpec s;
  s.split = c.split;
  s.inert = c.inert;
  s.ramified = c.ramified;
  s.two = c.two == "split"      ? TwoBehavior::Split
          : c.two == "inert"    ? TwoBehavior::Inert
          : c.two == "ramified" ? TwoBehavior::Ramified
                                : TwoBehavior::Unconstrained;
  s.signature = c.signature == "complex" ? Signature::TotallyComplex : Signature::TotallyReal;
  return s;
}

json tower_summary(const ConstructionTrace& t) {
  json stages = json::array();
  for (const auto& s : t.stages)
    stages.push_back({{"index", s.index},
                      {"n", s.n},
                      {"generator_bits", mpz_sizeinbase(s.field_added.get_mpz_t(), 2)},
                      {"block_sum", s.block_sum}});
  return {{"construction", t.construction}, {"accepted", t.accepted()}, {"stages", stages}};
}

json compute(RunConfig& c) {
  const std::string& cmd = c.command;
  if (cmd == "construct-quadratic") {
    SplittingSpec spec = spec_of(c);
    normalize(spec);
    c.split = spec.split;
    c.inert = spec.inert;
    c.ramified = spec.ramified;
    const auto q = construct_prescribed_quadratic(spec, {.compute_kernel = !c.no_kernel});
    return to_json(q, spec);
  }
  if (cmd == "thm12-tower") {
    const auto o = tower_options(c);
    const auto trace = build_theorem_1_2_tower(o);
    json j = to_json(trace);
    j["tower_sum"] = to_json(theorem_1_2_block_sum(trace, o.sieve_ceiling));
    return j;
  }
  if (cmd == "prop71-tower") return to_json(build_prop_7_1_tower(tower_options(c)));
  if (cmd == "adjoin-i-bound") {
    if (!c.prime_ceiling) c.prime_ceiling = 1'000'000;
    const auto trace = build_theorem_1_2_tower(tower_options(c));
    json j = to_json(certify_adjoin_i_convergence(trace, *c.prime_ceiling));
    j["tower"] = tower_summary(trace);
    j["prime_ceiling"] = *c.prime_ceiling;
    return j;
  }
  if (cmd == "sfrak-sum") {
    if (!c.prime_ceiling) c.prime_ceiling = 10'000;
    if (c.format == "csv") c.terms = true;
    if (*c.prime_ceiling < c.prime_floor)
      throw InvalidArgument("--prime-ceiling is below --prime-floor");
    const auto field = field_of(c);
    SumOptions o;
    o.keep_terms = c.terms;
    o.sieve_ceiling = c.budget_sieve;
    json j = to_json(sfrak_partial_sum(field, PrimeRange(c.prime_floor, *c.prime_ceiling), o));
    j["field"] = basis_json(field);
    return j;
  }
  if (cmd == "northcott-bounds") return to_json(northcott_bounds(c.primes), true);
  if (cmd == "northcott-select") {
    WindowOptions o;
    o.tail_ceiling = c.tail_ceiling;
    o.sieve_ceiling = c.budget_sieve;
    const auto w = select_prime_window(c.r, c.epsilon, o);
    json j = to_json(w);
    j["r"] = c.r;
    j["epsilon"] = c.epsilon;
    if (c.list_primes) j["bounds"]["primes"] = w.bounds.primes;
    return j;
  }
  if (cmd == "density-check") {
    if (!c.prime_ceiling) c.prime_ceiling = 1'000'000;
    const auto field = field_of(c);
    json series = json::array();
    for (const auto& r : density_series(field, *c.prime_ceiling, c.residue, c.budget_sieve))
      series.push_back(to_json(r));
    json j = {{"field", basis_json(field)},
              {"degree", field.degree()},
              {"series", series},
              {"final", series.back()},
              {"reciprocal_sum",
               reciprocal_sum_totally_split(field, *c.prime_ceiling, c.residue, c.budget_sieve)}};
    return j;
  }
  if (cmd == "inert-companion") {
    const auto want = c.want == "split" ? CompanionWant::Split : CompanionWant::Inert;
    json j = to_json(search_inert_companion(c.p, c.m, want, c.budget_ap));
    j["p"] = c.p;
    j["m"] = c.m;
    j["want"] = c.want;
    return j;
  }
  throw InvalidArgument("unknown subcommand " + cmd);
}

json report(RunConfig& c) {
  json j = compute(c);
  j["version"] = kSchemaVersion;
  j["command"] = c.command;
  j["invocation"] = invocation(c);
  return j;
}

std::unique_ptr<CLI::App> parse(RunConfig& c, const std::vector<std::string>& args) {
  auto app = make_app(c);
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  app->parse(reversed);
  c.command = app->get_subcommands().front()->get_name();
  // A third growing-discriminant stage needs a prime modulo a ~17 kbit
  // modulus, which takes far longer than the other defaults.
  if (!c.stages) c.stages = c.command == "prop71-tower" ? 2u : 3u;
  return app;
}

json verify_report(const RunConfig& c) {
  json input;
  try {
    if (c.input == "-") {
      input = json::parse(std::cin);
    } else {
      std::ifstream in(c.input);
      if (!in) throw InvalidArgument("cannot read " + c.input);
      input = json::parse(in);
    }
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("malformed JSON: ") + e.what());
  }
  if (!input.is_object() || input.value("version", 0) != kSchemaVersion)
    throw InvalidArgument("input lacks schema version " + std::to_string(kSchemaVersion));
  if (!input.contains("command") || !input.contains("invocation"))
    throw InvalidArgument("input lacks command/invocation fields");

  std::vector<std::string> failures;
  std::vector<std::string> modes;
  const bool construction = input.contains("construction");
  if (construction) {
    modes.push_back("certificates");
    failures = verify_construction(input);
    if (!input.value("accepted", true)) failures.push_back("report records a rejected construction");
  }
  if (!construction || c.rerun) {
    modes.push_back("recompute");
    RunConfig again;
    parse(again, input.at("invocation").get<std::vector<std::string>>());
    if (again.command == "verify") throw InvalidArgument("cannot verify a verify report");
    json fresh = report(again);
    if (fresh.dump() != input.dump()) failures.push_back("recomputed report differs from input");
  }
  return {{"version", kSchemaVersion},
          {"command", "verify"},
          {"checked", input.at("command")},
          {"modes", modes},
          {"failures", failures},
          {"ok", failures.empty()}};
}

std::string csv_of(const RunConfig& c, const json& j) {
  std::ostringstream s;
  if (c.command == "density-check") {
    s << "x,count,expected,density,ratio\n";
    for (const auto& r : j.at("series"))
      s << r.at("x").get<std::uint64_t>() << ',' << r.at("count").get<std::uint64_t>() << ','
        << number(r.at("expected").get<double>()) << ','
        << number(r.at("density").get<double>()) << ','
        << (r.at("ratio").is_null() ? "" : number(r.at("ratio").get<double>())) << '\n';
  } else {
    s << "p,e,f,term\n";
    for (const auto& t : j.at("terms"))
      s << t.at("p").get<Prime>() << ',' << t.at("e").get<unsigned>() << ','
        << t.at("f").get<unsigned>() << ',' << number(t.at("term").get<double>()) << '\n';
  }
  return s.str();
}

void human(std::ostream& s, const json& j, const std::string& path) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) human(s, v, path.empty() ? k : path + "." + k);
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i)
      human(s, j[i], path + "[" + std::to_string(i) + "]");
  } else {
    s << path << " = " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
  }
}

std::string render(const RunConfig& c, const json& j) {
  if (c.format == "csv") {
    if (c.command != "density-check" && c.command != "sfrak-sum")
      throw InvalidArgument("csv output is only available for density-check and sfrak-sum");
    return csv_of(c, j);
  }
  if (c.format == "human") {
    std::ostringstream s;
    human(s, j, "");
    return s.str();
  }
  return j.dump(2) + "\n";
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty()) {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f || !(f << text)) throw ResourceError("cannot write " + c.out);
}

int fail(std::ostream& err, const char* kind, const std::string& what, int code) {
  err << "error: " << kind << ": " << one_line(what) << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  std::unique_ptr<CLI::App> app;
  try {
    app = parse(c, args);
  } catch (const CLI::CallForHelp&) {
    // Help for the named subcommand if there is one, else the overview.
    const auto fresh = make_app(c);
    const CLI::App* target = fresh.get();
    for (const auto& a : args)
      for (const auto* sub : fresh->get_subcommands({}))
        if (target == fresh.get() && sub->get_name() == a) target = sub;
    out << target->help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << make_app(c)->help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    return fail(err, "invalid-argument", e.what(), kExitInvalid);
  }
  try {
    if (c.command == "verify") {
      const json v = verify_report(c);
      emit(c, render(c, v), out);
      if (!v.at("ok").get<bool>())
        return fail(err, "verification", v.at("failures").at(0).get<std::string>(),
                    kExitVerification);
      return kExitOk;
    }
    const json j = report(c);
    emit(c, render(c, j), out);
    return kExitOk;
  } catch (const Infeasible& e) {
    return fail(err, "infeasible", e.what(), kExitInvalid);
  } catch (const InvalidArgument& e) {
    return fail(err, "invalid-argument", e.what(), kExitInvalid);
  } catch (const CLI::ParseError& e) {
    return fail(err, "invalid-argument", e.what(), kExitInvalid);
  } catch (const ResourceError& e) {
    return fail(err, "resource", e.what(), kExitResource);
  } catch (const std::bad_alloc&) {
    return fail(err, "resource", "out of memory", kExitResource);
  } catch (const VerificationError& e) {
    return fail(err, "verification", e.what(), kExitVerification);
  } catch (const nlohmann::json::exception& e) {
    return fail(err, "invalid-argument", e.what(), kExitInvalid);
  }
}

}  // namespace splitlab::cli
