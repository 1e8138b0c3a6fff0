#include "effdim/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "effdim/errors.hpp"

namespace effdim {

namespace {

bool all_finite(std::span<const double> v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::isfinite(x); });
}

constexpr std::size_t kExactTailTerms = 1'000'000;
constexpr double kRelSlack = 1e-12;

}  // namespace

Signal::Signal(std::vector<double> coeffs, double tail_energy)
    : coeffs_(std::move(coeffs)), tail_energy_(tail_energy) {
  if (coeffs_.empty()) {
    throw DomainError("signal needs at least one coefficient");
  }
  if (!all_finite(coeffs_)) {
    throw DomainError("signal coefficients must be finite");
  }
  if (!(tail_energy_ >= 0.0) || !std::isfinite(tail_energy_)) {
    throw DomainError("signal tail_energy must be finite and >= 0");
  }
}

double Signal::total_energy() const {
  double sum = tail_energy_;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    sum += *it * *it;
  }
  return sum;
}

NoiseLevel::NoiseLevel(double epsilon) : epsilon_(epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw DomainError("noise level epsilon must be positive, got " +
                      std::to_string(epsilon));
  }
}

Observation make_observation(std::vector<double> x, NoiseLevel noise) {
  if (x.empty()) {
    throw DomainError("observation needs at least one value");
  }
  if (!all_finite(x)) {
    throw DomainError("observation values must be finite");
  }
  return Observation{std::move(x), noise, std::nullopt};
}

Observation simulate(const Signal& theta, NoiseLevel eps, std::size_t n,
                     const StreamKey& key) {
  if (n == 0) {
    throw DomainError("simulate requires n >= 1");
  }
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = theta.coeff(i + 1) + eps.value() * standard_normal(key, i);
  }
  return Observation{std::move(x), eps, key};
}

Signal zero_signal(std::size_t n) {
  if (n == 0) {
    throw DomainError("signal length must be >= 1");
  }
  return Signal(std::vector<double>(n, 0.0), 0.0);
}

double power_tail_sum(double p, std::size_t n) {
  if (!(p > 1.0)) {
    throw DomainError("power_tail_sum requires exponent p > 1");
  }
  const std::size_t m = std::max(n, kExactTailTerms);
  const double md = static_cast<double>(m);
  // Remainder sum_{i>m} i^{-p} <= int_m^inf - m^{-p}/2 + p m^{-p-1}/12.
  double sum = std::pow(md, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(md, -p) +
               p * std::pow(md, -p - 1.0) / 12.0;
  for (std::size_t i = m; i > n; --i) {
    sum += std::pow(static_cast<double>(i), -p);
  }
  return sum;
}

Signal power_law_signal(double s, double c, std::size_t n) {
  if (!(s > 0.0) || !(c > 0.0)) {
    throw DomainError("power_law_signal requires s > 0 and c > 0");
  }
  if (n == 0) {
    throw DomainError("signal length must be >= 1");
  }
  std::vector<double> coeffs(n);
  for (std::size_t i = 1; i <= n; ++i) {
    coeffs[i - 1] = c * std::pow(static_cast<double>(i), -(s + 0.5));
  }
  return Signal(std::move(coeffs), c * c * power_tail_sum(2.0 * s + 1.0, n));
}

Signal block_signal(double level, std::size_t length, NoiseLevel eps,
                    std::size_t padding) {
  if (!(level >= 0.0) || length == 0) {
    throw DomainError("block_signal requires level >= 0 and length >= 1");
  }
  std::vector<double> coeffs(length + padding, 0.0);
  std::fill_n(coeffs.begin(), length, eps.value() * std::sqrt(level));
  return Signal(std::move(coeffs), 0.0);
}

AdversarialPair adversarial_pair(double tau, NoiseLevel eps, std::size_t l1,
                                 std::size_t l2, double delta) {
  if (!(tau > 0.0)) {
    throw DomainError("adversarial_pair requires tau > 0");
  }
  if (!(delta > 1.0)) {
    throw DomainError("adversarial_pair requires Delta > 1");
  }
  const std::size_t l = l1 + l2;
  if (l == 0) {
    throw DomainError("adversarial_pair requires L1 + L2 >= 1");
  }
  const double e = eps.value();
  const double base = e * std::sqrt(tau);
  const double shift =
      e * std::sqrt(std::log(delta)) / (2.0 * std::sqrt(static_cast<double>(l)));
  if (!(base - shift > 0.0)) {
    throw DomainError(
        "adversarial_pair: theta' coefficients would be non-positive "
        "(need sqrt(tau) > sqrt(log Delta) / (2 sqrt(L1+L2)))");
  }
  std::vector<double> lo(l + 1, base - shift);
  std::vector<double> hi(l + 1, base + shift);
  lo[0] = hi[0] = e * std::sqrt(2.0 * tau);
  return {Signal(std::move(lo), 0.0), Signal(std::move(hi), 0.0)};
}

void SmoothnessClassParams::validate() const {
  if (!(s > 0.0)) throw DomainError("smoothness s must be > 0");
  if (!(q > 0.0)) throw DomainError("radius Q must be > 0");
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw DomainError("alpha must lie in (0, 1)");
  }
  if (!(rho0 > 1.0)) throw DomainError("rho0 must be > 1");
  if (n0 == 0) throw DomainError("N0 must be >= 1");
}

MembershipReport check_membership(const Signal& theta,
                                  const SmoothnessClassParams& p) {
  p.validate();
  const std::size_t n = theta.size();
  const auto c = theta.coeffs();

  // suffix[m] = sum_{k>m} theta_k^2 + tail_energy, m = 0..n.
  std::vector<double> suffix(n + 1);
  suffix[n] = theta.tail_energy();
  for (std::size_t m = n; m-- > 0;) {
    suffix[m] = suffix[m + 1] + c[m] * c[m];
  }

  MembershipReport report;
  report.in_tail_class = true;
  for (std::size_t m = 1; m <= n; ++m) {
    const double lhs = std::pow(static_cast<double>(m), 2.0 * p.s) * suffix[m];
    if (lhs > p.q * (1.0 + kRelSlack)) {
      report.in_tail_class = false;
      report.tail_violation = m;
      break;
    }
  }

  // prefix[i] = sum_{k<=i} theta_k^2 for block sums inside the prefix.
  std::vector<double> prefix(n + 1, 0.0);
  for (std::size_t i = 1; i <= n; ++i) {
    prefix[i] = prefix[i - 1] + c[i - 1] * c[i - 1];
  }
  bool blocks_ok = true;
  for (std::size_t start = p.n0;; ++start) {
    const auto end = static_cast<std::size_t>(
        std::ceil(p.rho0 * static_cast<double>(start)));
    if (end > n) break;
    ++report.blocks_checked;
    const double block = prefix[end] - prefix[start - 1];
    const double floor =
        p.alpha * p.q * std::pow(static_cast<double>(start), -2.0 * p.s);
    if (block < floor * (1.0 - kRelSlack)) {
      blocks_ok = false;
      report.block_violation = start;
      break;
    }
  }
  report.self_similar = blocks_ok && report.blocks_checked > 0;
  return report;
}

Signal self_similar_signal(const SmoothnessClassParams& p, std::size_t n) {
  p.validate();
  if (std::ceil(p.rho0 * static_cast<double>(p.n0)) > static_cast<double>(n)) {
    throw DomainError("self_similar_signal: N=" + std::to_string(n) +
                      " too short for a block starting at N0=" +
                      std::to_string(p.n0));
  }
  const double scale = std::sqrt(p.q) * std::min(1.0, std::sqrt(2.0 * p.s));
  Signal theta = power_law_signal(p.s, scale, n);
  const MembershipReport report = check_membership(theta, p);
  if (report.tail_violation) {
    throw ConstructionError(
        "self_similar_signal: tail-class bound violated at m=" +
            std::to_string(*report.tail_violation),
        *report.tail_violation);
  }
  if (report.block_violation) {
    throw ConstructionError(
        "self_similar_signal: block lower bound violated at block start " +
            std::to_string(*report.block_violation),
        *report.block_violation);
  }
  return theta;
}

}  // namespace effdim
