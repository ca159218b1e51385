#include "splitlab/density.hpp"

#include <cmath>

#include "splitlab/sfrak.hpp"

namespace splitlab {

namespace {

void validate(std::uint64_t x, std::optional<unsigned> filter) {
  if (x < 100) throw InvalidArgument("density: x must be >= 100");
  if (filter && *filter != 1 && *filter != 3)
    throw InvalidArgument("density: residue filter must be 1 or 3 (mod 4)");
}

bool counted(const MultiquadField& field, Prime p, std::optional<unsigned> filter) {
  if (filter && p % 4 != *filter) return false;
  return field.totally_split(p);
}

DensityReport report_at(const MultiquadField& field, std::uint64_t x,
                        std::optional<unsigned> filter, std::uint64_t count) {
  DensityReport r;
  r.degree = field.degree();
  r.x = x;
  r.residue_filter = filter;
  r.count = count;
  r.density = split_density(field, filter);
  const double xd = static_cast<double>(x);
  r.expected = r.density * xd / std::log(xd);
  if (r.expected > 0) r.ratio = static_cast<double>(count) / r.expected;
  return r;
}

}  // namespace

double split_density(const MultiquadField& field,
                     std::optional<unsigned> residue_filter) {
  const double d = static_cast<double>(field.degree());
  if (!residue_filter) return 1.0 / d;
  if (!field.contains_sqrt(SquarefreeInt::of(-1))) return 1.0 / (2.0 * d);
  return *residue_filter == 1 ? 1.0 / d : 0.0;
}

DensityReport count_totally_split(const MultiquadField& field, std::uint64_t x,
                                  std::optional<unsigned> residue_filter,
                                  std::uint64_t sieve_ceiling) {
  validate(x, residue_filter);
  std::uint64_t count = 0;
  for_each_prime(
      PrimeRange(2, x),
      [&](Prime p) { count += counted(field, p, residue_filter); },
      sieve_ceiling);
  return report_at(field, x, residue_filter, count);
}

double reciprocal_sum_totally_split(const MultiquadField& field,
                                    std::uint64_t x,
                                    std::optional<unsigned> residue_filter,
                                    std::uint64_t sieve_ceiling) {
  validate(x, residue_filter);
  CompensatedSum sum;
  for_each_prime(
      PrimeRange(2, x),
      [&](Prime p) {
        if (counted(field, p, residue_filter)) sum.add(1.0 / static_cast<double>(p));
      },
      sieve_ceiling);
  return sum.value();
}

std::vector<DensityReport> density_series(const MultiquadField& field,
                                          std::uint64_t x,
                                          std::optional<unsigned> residue_filter,
                                          std::uint64_t sieve_ceiling) {
  validate(x, residue_filter);
  std::vector<std::uint64_t> checkpoints;
  for (std::uint64_t c = 100; c < x; c *= 2) checkpoints.push_back(c);
  checkpoints.push_back(x);
  std::vector<DensityReport> out;
  std::uint64_t count = 0;
  std::size_t next = 0;
  for_each_prime(
      PrimeRange(2, x),
      [&](Prime p) {
        while (p > checkpoints[next])
          out.push_back(report_at(field, checkpoints[next++], residue_filter, count));
        count += counted(field, p, residue_filter);
      },
      sieve_ceiling);
  while (next < checkpoints.size())
    out.push_back(report_at(field, checkpoints[next++], residue_filter, count));
  return out;
}

}  // namespace splitlab
