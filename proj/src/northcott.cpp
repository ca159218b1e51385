#include "splitlab/northcott.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "splitlab/sfrak.hpp"

namespace splitlab {

namespace {

double log_over(Prime p, double shift) {
  const double x = static_cast<double>(p);
  return std::log(x) / (x + shift);
}

double gap(Prime p) {
  const double x = static_cast<double>(p);
  return 2.0 * std::log(x) / (x * x - 1.0);
}

std::string fmt(double v) {
  std::ostringstream out;
  out.precision(6);
  out << v;
  return out.str();
}

// Primes in increasing order with 1-based indices, extended on demand.
class IndexedPrimes {
 public:
  explicit IndexedPrimes(std::uint64_t ceiling)
      : ceiling_(ceiling), stream_(PrimeRange(2, ceiling), ceiling) {}

  // p_index, or 0 past the ceiling.
  Prime at(std::uint64_t index) {
    while (primes_.size() < index) {
      auto p = stream_.next();
      if (!p) return 0;
      primes_.push_back(*p);
    }
    return primes_[index - 1];
  }
  std::uint64_t ceiling() const { return ceiling_; }

 private:
  std::uint64_t ceiling_;
  PrimeStream stream_;
  std::vector<Prime> primes_;
};

}  // namespace

NorthcottBounds northcott_bounds(std::vector<Prime> primes) {
  if (primes.empty()) throw InvalidArgument("northcott_bounds: empty prime set");
  std::sort(primes.begin(), primes.end());
  if (std::adjacent_find(primes.begin(), primes.end()) != primes.end())
    throw InvalidArgument("northcott_bounds: repeated prime");
  for (Prime p : primes)
    if (!is_prime(p))
      throw InvalidArgument("northcott_bounds: " + std::to_string(p) + " is not prime");
  CompensatedSum lower, upper;
  for (Prime p : primes) {
    lower.add(log_over(p, 1.0));
    upper.add(log_over(p, -1.0));
  }
  return {std::move(primes), lower.value() / 2.0, upper.value()};
}

double gap_tail_bound(std::uint64_t x) {
  if (x < 2) throw InvalidArgument("gap_tail_bound: x must be >= 2");
  const double xd = static_cast<double>(x);
  // 1/(p^2 - 1) <= (1/p^2) * x^2/(x^2 - 1) for p > x, and the sum of
  // log p / p^2 beyond x is at most (log x + 1) / x.
  return 2.0 * tail_bound_fully_inert(x) * (xd * xd / (xd * xd - 1.0));
}

PrimeWindow select_prime_window(double r, double epsilon,
                                const WindowOptions& options) {
  if (!(r > 0) || !std::isfinite(r)) throw InvalidArgument("r must be positive");
  if (!(epsilon > 0) || !std::isfinite(epsilon))
    throw InvalidArgument("epsilon must be positive");
  if (options.tail_ceiling < 2 || options.tail_ceiling > options.sieve_ceiling)
    throw InvalidArgument("tail ceiling must lie in [2, sieve ceiling]");

  PrimeWindow w;
  const double tail = gap_tail_bound(options.tail_ceiling);
  if (tail > epsilon)
    throw Infeasible("epsilon = " + fmt(epsilon) + " is below the certified gap tail " +
                     fmt(tail) + " beyond " + std::to_string(options.tail_ceiling) +
                     "; use a larger epsilon or tail ceiling");

  // l: suffix sums of the gaps up to the tail ceiling, plus the tail.
  const std::vector<Prime> head = sieve_primes(PrimeRange(2, options.tail_ceiling),
                                               options.sieve_ceiling);
  std::vector<double> suffix(head.size() + 1, tail);
  CompensatedSum acc;
  for (std::size_t i = head.size(); i-- > 0;) {
    acc.add(gap(head[i]));
    suffix[i] = acc.value() + acc.error_bound() + tail;
  }
  std::size_t l0 = 0;
  while (suffix[l0] > epsilon) ++l0;
  w.l = l0 + 1;
  w.tail_bound = suffix[l0];

  IndexedPrimes primes(options.sieve_ceiling);
  w.j = 1;
  for (;; ++w.j) {
    const Prime p = primes.at(w.j);
    if (p == 0)
      throw Infeasible("no prime below the sieve ceiling has log p/(p+1) < " +
                       fmt(epsilon));
    if (log_over(p, 1.0) < epsilon) break;
  }
  w.c = std::max(w.j, w.l);

  const double limit = 2.0 * r;
  const Prime first = primes.at(w.c);
  if (first == 0) throw ResourceError("window start lies past the sieve ceiling");
  if (log_over(first, -1.0) > limit)
    throw Infeasible("first term log p_c/(p_c - 1) = " + fmt(log_over(first, -1.0)) +
                     " at p_c = " + std::to_string(first) + " exceeds 2r = " +
                     fmt(limit) + "; use a larger r or epsilon");
  CompensatedSum upper;
  std::vector<Prime> window;
  for (std::uint64_t i = w.c;; ++i) {
    const Prime p = primes.at(i);
    if (p == 0)
      throw ResourceError("window sum stays below 2r up to sieve ceiling " +
                          std::to_string(options.sieve_ceiling));
    CompensatedSum trial = upper;
    trial.add(log_over(p, -1.0));
    if (trial.value() > limit) break;
    upper = trial;
    window.push_back(p);
    w.j0 = i;
  }

  w.bounds = northcott_bounds(std::move(window));
  if (!(w.bounds.lower > r - epsilon) || !(w.bounds.upper <= limit))
    throw VerificationError("selected window fails r - epsilon < lower, upper <= 2r: lower " +
                            fmt(w.bounds.lower) + ", upper " + fmt(w.bounds.upper));
  return w;
}

}  // namespace splitlab
