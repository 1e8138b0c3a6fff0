#include "effdim/rate_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "effdim/errors.hpp"

namespace effdim {

RateParams::RateParams(double a_, double t_) : a(a_), t(t_) {
  if (!(a > 0.0) || !(t > 0.0) || !std::isfinite(a) || !std::isfinite(t)) {
    throw DomainError("rate parameters require a > 0 and t > 0, got a=" +
                      std::to_string(a) + " t=" + std::to_string(t));
  }
}

double penalty_constant(double kappa, double varkappa) {
  if (!(kappa > kKappaFloor) || !std::isfinite(kappa)) {
    throw DomainError("kappa must exceed e-1 (posterior existence), got " +
                      std::to_string(kappa));
  }
  if (!(varkappa > 0.0) || !std::isfinite(varkappa)) {
    throw DomainError("varkappa must be positive, got " +
                      std::to_string(varkappa));
  }
  return std::log1p(kappa) + 2.0 * varkappa;
}

double rate_f(double h, const RateParams& p) {
  if (!(h < 1.0)) {
    throw DomainError("f(h, a, t) requires h < 1");
  }
  return 0.5 * (p.a * h + std::log1p(-h) - p.t * h / (1.0 - h));
}

double rate_g(double h, const RateParams& p) {
  if (!(h > -1.0)) {
    throw DomainError("g(h, a, t) requires h > -1");
  }
  return 0.5 * (p.t * h / (1.0 + h) + std::log1p(h) - p.a * h);
}

// h_f = (2a - 1 - sqrt(4at + 1)) / (2a). Multiplying through by the
// conjugate gives 2 (a - 1 - t) / (2a - 1 + sqrt(4at + 1)), which has no
// cancellation near a = t + 1 and makes the sign of h_f exactly the sign of
// a - (t + 1).
double stationary_point_f(const RateParams& p) {
  const double root = std::sqrt(4.0 * p.a * p.t + 1.0);
  return 2.0 * ((p.a - 1.0) - p.t) / (2.0 * p.a - 1.0 + root);
}

double stationary_point_g(const RateParams& p) {
  return -stationary_point_f(p);
}

RateEvaluation f_sup(const RateParams& p) {
  // f(0) = 0 and f increases up to h_f, so the supremum over [0,1) sits at
  // h_f when it is interior and at 0 otherwise.
  const double hf = stationary_point_f(p);
  const double h = hf > 0.0 ? hf : 0.0;
  const double value = h > 0.0 ? rate_f(h, p) : 0.0;
  return {h, value, value > 0.0};
}

RateEvaluation g_sup(const RateParams& p) {
  const double hg = stationary_point_g(p);
  const double h = std::clamp(hg, 0.0, 1.0);
  const double value = h > 0.0 ? rate_g(h, p) : 0.0;
  return {h, value, value > 0.0};
}

}  // namespace effdim
