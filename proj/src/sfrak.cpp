#include "splitlab/sfrak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace splitlab {

void CompensatedSum::add(double x) {
  const double t = sum_ + x;
  if (std::fabs(sum_) >= std::fabs(x))
    compensation_ += (sum_ - t) + x;
  else
    compensation_ += (x - t) + sum_;
  sum_ = t;
  magnitude_ += std::fabs(x);
  ++count_;
}

double CompensatedSum::error_bound() const {
  // Each term carries at most ~4 ulps from log and division; the
  // compensated reduction adds O(n u^2) relative to the magnitude.
  constexpr double u = std::numeric_limits<double>::epsilon() / 2;
  const double n = static_cast<double>(count_);
  return 4 * u * magnitude_ + 2 * u * std::fabs(value()) +
         2 * n * u * u * magnitude_;
}

double sfrak_term(const LocalData& d, Prime p) {
  const double pf = std::pow(static_cast<double>(p), static_cast<double>(d.f));
  return std::log(static_cast<double>(p)) / (d.e * (pf + 1.0));
}

namespace detail {

std::optional<std::size_t> certified_stage(
    std::span<const StabilizationCertificate> certs, Prime p,
    std::size_t stage_count) {
  const auto it = std::lower_bound(
      certs.begin(), certs.end(), p,
      [](const StabilizationCertificate& c, Prime q) { return c.prime < q; });
  if (it == certs.end() || it->prime != p || it->stage >= stage_count)
    return std::nullopt;
  return it->stage;
}

bool passes_filter(Prime p, const SumOptions& options) {
  if (options.odd_only && p == 2) return false;
  if (options.residue_mod_4 && p % 4 != *options.residue_mod_4) return false;
  return true;
}

}  // namespace detail

SfrakReport sum_local_terms(std::uint64_t degree, PrimeRange range,
                            const SumOptions& options,
                            const std::function<LocalData(Prime)>& local) {
  SfrakReport report;
  report.field_degree = degree;
  report.prime_lo = range.lo();
  report.prime_hi = range.hi();
  if (options.keep_terms) report.terms.emplace();
  CompensatedSum sum;
  for_each_prime(
      range,
      [&](Prime p) {
        if (!detail::passes_filter(p, options)) return;
        const LocalData d = local(p);
        const double t = sfrak_term(d, p);
        sum.add(t);
        if (report.terms) report.terms->push_back({p, d.e, d.f, t});
      },
      options.sieve_ceiling);
  report.partial_sum = sum.value();
  report.error_bound = sum.error_bound();
  report.primes_counted = sum.count();
  return report;
}

double tail_bound_fully_inert(std::uint64_t start) {
  if (start < 2)
    throw InvalidArgument("tail_bound_fully_inert: start must be >= 2");
  const double x = static_cast<double>(start);
  return (std::log(x) + 1.0) / x;
}

namespace {

std::string describe_offenders(const std::vector<Prime>& offenders) {
  std::string out = "unstabilized prime(s): " + std::to_string(offenders.size()) +
                    " without certificate:";
  const std::size_t shown = std::min<std::size_t>(offenders.size(), 10);
  for (std::size_t i = 0; i < shown; ++i) out += " " + std::to_string(offenders[i]);
  if (shown < offenders.size()) out += " ...";
  return out;
}

}  // namespace

UnstabilizedPrimeError::UnstabilizedPrimeError(std::vector<Prime> offenders)
    : InvalidArgument(describe_offenders(offenders)),
      offenders_(std::move(offenders)) {}

}  // namespace splitlab
