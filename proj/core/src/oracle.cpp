#include "effdim/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "effdim/errors.hpp"
#include "effdim/text.hpp"

namespace effdim {

namespace {

void require_tau(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau)) {
    throw DomainError("tau must be positive");
  }
}

std::vector<double> prefix_energy(const Signal& theta) {
  const auto c = theta.coeffs();
  std::vector<double> prefix(c.size() + 1, 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    prefix[i + 1] = prefix[i] + c[i] * c[i];
  }
  return prefix;
}

}  // namespace

std::vector<double> approximation_error_curve(const Signal& theta) {
  const auto c = theta.coeffs();
  const std::size_t n = c.size();
  std::vector<double> err(n);
  double acc = theta.tail_energy();
  for (std::size_t d = n; d >= 1; --d) {
    err[d - 1] = acc;  // sum over i > d
    acc += c[d - 1] * c[d - 1];
  }
  return err;
}

double risk(std::size_t d, const Signal& theta, NoiseLevel eps, double tau) {
  require_tau(tau);
  if (d < 1 || d > theta.size()) {
    throw IndexError("risk: d=" + std::to_string(d) + " outside 1.." +
                     std::to_string(theta.size()));
  }
  double approx = theta.tail_energy();
  for (std::size_t i = theta.size(); i > d; --i) {
    const double c = theta.coeff(i);
    approx += c * c;
  }
  return approx + tau * static_cast<double>(d) * eps.variance();
}

OracleResult effective_dimension(const Signal& theta, NoiseLevel eps,
                                 double tau) {
  require_tau(tau);
  const double unit_cost = tau * eps.variance();
  if (theta.tail_energy() > unit_cost) {
    throw HorizonError(
        "oracle horizon insufficient: tail_energy=" +
        format_number(theta.tail_energy()) + " exceeds tau*eps^2=" +
        format_number(unit_cost) + " at N=" + std::to_string(theta.size()) +
        "; materialize more coefficients until the unmaterialized energy "
        "drops below tau*eps^2");
  }
  const auto approx = approximation_error_curve(theta);
  OracleResult result;
  result.risk_curve.resize(approx.size());
  for (std::size_t d = 1; d <= approx.size(); ++d) {
    const double r = approx[d - 1] + unit_cost * static_cast<double>(d);
    result.risk_curve[d - 1] = r;
    if (d == 1 || r < result.r_tau) {
      result.r_tau = r;
      result.d_tau = d;
    }
  }
  return result;
}

bool tau_scaling_identity_check(const Signal& theta, NoiseLevel eps,
                                double tau) {
  const auto lhs = effective_dimension(theta, eps, tau);
  const auto rhs =
      effective_dimension(theta, NoiseLevel(std::sqrt(tau) * eps.value()), 1.0);
  return lhs.d_tau == rhs.d_tau;
}

ConditionReport tail_condition(const Signal& theta, NoiseLevel eps, double tau,
                               double t0, std::size_t big_n0) {
  require_tau(tau);
  if (!(t0 > 0.0 && t0 < tau)) {
    throw DomainError("tail condition requires 0 < t0 < tau");
  }
  if (big_n0 == 0) {
    throw DomainError("tail condition requires N0 >= 1");
  }
  const std::size_t d_tau = effective_dimension(theta, eps, tau).d_tau;
  const std::size_t n = theta.size();
  const auto prefix = prefix_energy(theta);
  const double unit = t0 * eps.variance();

  ConditionReport report;
  report.d_tau = d_tau;
  const std::size_t room = n - d_tau;
  report.horizon_warning = room < big_n0;

  for (std::size_t d = big_n0; d <= room; ++d) {
    ++report.blocks_checked;
    const double block = prefix[d_tau + d] - prefix[d_tau];
    if (block > unit * static_cast<double>(d)) {
      report.first_violation = d;
      return report;
    }
  }
  const std::size_t d_past = std::max(big_n0, room + 1);
  ++report.blocks_checked;
  const double block = (prefix[n] - prefix[d_tau]) + theta.tail_energy();
  if (block > unit * static_cast<double>(d_past)) {
    report.first_violation = d_past;
    return report;
  }
  report.member = true;
  return report;
}

ConditionReport head_condition(const Signal& theta, NoiseLevel eps, double tau,
                               double h0, std::size_t n0) {
  require_tau(tau);
  if (!(h0 > tau)) {
    throw DomainError("head condition requires H0 > tau");
  }
  if (n0 == 0) {
    throw DomainError("head condition requires n0 >= 1");
  }
  const std::size_t d_tau = effective_dimension(theta, eps, tau).d_tau;
  const auto prefix = prefix_energy(theta);
  const double unit = h0 * eps.variance();

  ConditionReport report;
  report.d_tau = d_tau;
  if (d_tau < n0) {
    report.vacuous = true;
    report.member = true;
    return report;
  }
  for (std::size_t d = n0; d <= d_tau; ++d) {
    ++report.blocks_checked;
    const double block = prefix[d_tau] - prefix[d_tau - d];
    if (block < unit * static_cast<double>(d)) {
      report.first_violation = d;
      return report;
    }
  }
  report.member = true;
  return report;
}

void write_risk_curve(std::ostream& os, const Signal& theta, NoiseLevel eps,
                      double tau) {
  const auto result = effective_dimension(theta, eps, tau);
  const auto approx = approximation_error_curve(theta);
  os << "d,r_tau,approx_error,dim_cost\n";
  for (std::size_t d = 1; d <= approx.size(); ++d) {
    os << d << ',' << format_number(result.risk_curve[d - 1]) << ','
       << format_number(approx[d - 1]) << ','
       << format_number(tau * static_cast<double>(d) * eps.variance()) << '\n';
  }
}

}  // namespace effdim
