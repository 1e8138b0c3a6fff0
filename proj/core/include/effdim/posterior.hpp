#pragma once

// Empirical-Bayes posterior over the model dimension D.
//
// Prior: D ~ lambda_d = (e^varkappa - 1) e^{-varkappa d}; given D = d,
// theta_i ~ N(mu_i, kappa eps^2) for i <= d and theta_i = mu_i = 0 beyond.
// Plugging mu_i = X_i (the marginal-likelihood maximizer) in gives, up to a
// d-free factor,
//
//   log w(d) = -varkappa d + 1/2 sum_{i<=d} X_i^2 / eps^2 - d/2 log(kappa+1)
//            = -crit(d) / (2 eps^2),
//   crit(d)  = -sum_{i<=d} X_i^2 + A eps^2 d,   A = log(kappa+1) + 2 varkappa.
//
// With n observations, w(d) = w(n) e^{-varkappa (d-n)} for d > n; those
// dimensions are carried as one geometric lump `tail_mass`.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <vector>

#include "effdim/signals.hpp"

namespace effdim {

class PriorParams {
 public:
  /// Throws DomainError unless kappa > e - 1 and varkappa > 0.
  PriorParams(double kappa, double varkappa, NoiseLevel eps);

  /// kappa = exp(A - 2 varkappa) - 1; throws if that kappa is not > e - 1.
  static PriorParams from_penalty(double a, double varkappa, NoiseLevel eps);

  double kappa() const { return kappa_; }
  double varkappa() const { return varkappa_; }
  NoiseLevel eps() const { return eps_; }
  double penalty() const { return penalty_; }

  /// Same (kappa, varkappa) at another noise level.
  PriorParams with_noise(NoiseLevel eps) const {
    return PriorParams(kappa_, varkappa_, eps);
  }

 private:
  double kappa_;
  double varkappa_;
  NoiseLevel eps_;
  double penalty_;
};

struct PosteriorOverD {
  std::size_t n = 0;
  double varkappa = 0.0;
  /// Unnormalized log w(d), d = 1..n (entry d-1).
  std::vector<double> log_weights;
  /// P(D = d | X), d = 1..n (entry d-1).
  std::vector<double> pmf;
  /// P(D > n | X).
  double tail_mass = 0.0;

  double at(std::size_t d) const { return pmf.at(d - 1); }
};

/// log w(d) for d = 1..n. The observation's noise level must equal the
/// prior's.
std::vector<double> log_weights(const Observation& x, const PriorParams& p);

/// Max-shifted, normalized posterior including the analytic tail lump.
PosteriorOverD posterior_pmf(const Observation& x, const PriorParams& p);

/// crit(d) for 1 <= d <= n; throws IndexError otherwise.
double crit(std::size_t d, const Observation& x, const PriorParams& p);

/// crit(d) for d = 1..n (entry d-1).
std::vector<double> crit_curve(const Observation& x, const PriorParams& p);

/// Smallest maximizer of the posterior over d = 1..n (d > n never wins since
/// w decreases geometrically there).
std::size_t map_dimension(const Observation& x, const PriorParams& p);
std::size_t map_dimension(const PosteriorOverD& post);

/// X_i 1{i <= dhat}, i = 1..n: the penalized (projection) estimator.
std::vector<double> posterior_mean_theta(const Observation& x,
                                         const PriorParams& p);

/// P(lo <= D <= hi | X); hi = nullopt means infinity. Dimensions past n are
/// resolved from the geometric lump exactly: mass of {n+a..n+b} is
/// tail_mass (e^{-varkappa(a-1)} - e^{-varkappa b}). Empty ranges give 0.
double region_mass(const PosteriorOverD& post, std::size_t lo,
                   std::optional<std::size_t> hi = std::nullopt);

/// Total variation between posteriors from a data prefix of length
/// a.n <= b.n, both viewed on {1..a.n} plus the lump {D > a.n}.
double truncation_tv_distance(const PosteriorOverD& a,
                              const PosteriorOverD& b);

/// CSV with columns d,pmf,cumulative and a final `tail` row.
void write_pmf(std::ostream& os, const PosteriorOverD& post);

}  // namespace effdim
