#pragma once

// Oracle quantities that depend on the (unknown) signal: the tau-error
//   r_tau(d, theta) = sum_{i>d} theta_i^2 + tau * d * eps^2,
// its smallest minimizer d_tau over d in {1, 2, ...}, and the tail / head
// growth conditions around d_tau.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "effdim/signals.hpp"

namespace effdim {

struct OracleResult {
  std::size_t d_tau = 1;
  double r_tau = 0.0;
  /// r_tau(d) for d = 1..N (entry d-1).
  std::vector<double> risk_curve;
};

/// sum_{i>d} theta_i^2 for d = 1..N (entry d-1), tail_energy included.
std::vector<double> approximation_error_curve(const Signal& theta);

/// r_tau(d, theta). Throws IndexError unless 1 <= d <= N.
double risk(std::size_t d, const Signal& theta, NoiseLevel eps, double tau);

/// Smallest minimizer of r_tau over d = 1..N. Requires tail_energy <= tau
/// eps^2 so that no d > N can do better; throws HorizonError otherwise.
OracleResult effective_dimension(const Signal& theta, NoiseLevel eps,
                                 double tau);

/// d_tau(theta, eps) == d_1(theta, sqrt(tau) eps).
bool tau_scaling_identity_check(const Signal& theta, NoiseLevel eps,
                                double tau);

struct ConditionReport {
  bool member = false;
  std::size_t d_tau = 1;
  /// First block size d that breaks the inequality.
  std::optional<std::size_t> first_violation;
  std::size_t blocks_checked = 0;
  /// Tail: fewer than N0 materialized coefficients after d_tau, so the
  /// verdict rests on the conservative tail block alone.
  bool horizon_warning = false;
  /// Head: d_tau < n0, nothing to check.
  bool vacuous = false;
};

/// sum_{i=d_tau+1}^{d_tau+d} theta_i^2 <= t0 eps^2 d for all d >= N0.
/// Blocks reaching past N are charged the full tail_energy; since their left
/// side is then constant while the right side grows, checking the shortest
/// such block settles all of them. Requires 0 < t0 < tau.
ConditionReport tail_condition(const Signal& theta, NoiseLevel eps, double tau,
                               double t0, std::size_t big_n0);

/// sum_{i=d_tau-d+1}^{d_tau} theta_i^2 >= H0 eps^2 d for n0 <= d <= d_tau.
/// Requires H0 > tau.
ConditionReport head_condition(const Signal& theta, NoiseLevel eps, double tau,
                               double h0, std::size_t n0);

/// CSV with columns d,r_tau,approx_error,dim_cost.
void write_risk_curve(std::ostream& os, const Signal& theta, NoiseLevel eps,
                      double tau);

}  // namespace effdim
