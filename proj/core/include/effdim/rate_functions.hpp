#pragma once

// Chernoff-type rate functions governing overshoot/undershoot decay of the
// dimension posterior, and the penalty constant A(kappa, varkappa).
//
//   f(h, a, t) = 1/2 (a h + log(1 - h) - t h / (1 - h)),   h < 1
//   g(h, a, t) = f(-h, a, t),                              h > -1
//   f_sup(a, t) = sup_{h in [0,1)} f(h, a, t)
//   g_sup(a, t) = sup_{h in [0,1]} g(h, a, t)
//
// Both f and g are strictly concave in h, so the suprema have closed forms.
// All functions are pure.

#include <numbers>

namespace effdim {

struct RateParams {
  double a;  ///< penalty constant argument, a > 0
  double t;  ///< tau-type argument, t > 0

  /// Throws DomainError unless a > 0 and t > 0.
  RateParams(double a_, double t_);
};

struct RateEvaluation {
  double h_star;  ///< maximizer in the legal range of the variant
  double value;   ///< the supremum
  bool positive;  ///< value > 0
};

/// Smallest admissible kappa is e - 1 (exclusive).
inline constexpr double kKappaFloor = std::numbers::e - 1.0;

/// A = log(kappa + 1) + 2 varkappa. Requires kappa > e - 1 and varkappa > 0;
/// the result is then always > 1.
double penalty_constant(double kappa, double varkappa);

double rate_f(double h, const RateParams& p);
double rate_g(double h, const RateParams& p);

/// Unconstrained stationary points h_f(a,t) and h_g(a,t) = -h_f(a,t), in a
/// cancellation-free form.
double stationary_point_f(const RateParams& p);
double stationary_point_g(const RateParams& p);

RateEvaluation f_sup(const RateParams& p);
RateEvaluation g_sup(const RateParams& p);

}  // namespace effdim
