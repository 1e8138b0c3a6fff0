#pragma once

// Monte Carlo checks of the concentration bounds for the dimension
// posterior and the MAP dimension dhat:
//
//   overshoot   E P(D >= d_tau + n | X)  <= e^{-alpha n} / alpha,  A > 1 + tau
//   undershoot  E P(D <= d_tau - n | X)  <= e^{-beta n} / beta,    A < 1 + tau
//   two-sided   E P(D outside [d_tau - n, d_tau + n] | X)
//                   <= e^{-alpha n}/alpha + e^{-beta n}/beta  on tail/head classes
//   lower bound P'(dhat >= d_tau' + L1) + P''(dhat <= d_tau'' - L2) >= q_o(Delta)
//
// plus smoothness estimation on self-similar classes. Each replicate r draws
// its noise from StreamKey{master_seed, r}; results are reduced in replicate
// order, so reports are bit-identical for any thread count.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "effdim/posterior.hpp"
#include "effdim/signals.hpp"

namespace effdim {

struct MCConfig {
  std::size_t replicates = 2000;
  /// Data length n of every simulated observation.
  std::size_t n = 100;
  std::uint64_t master_seed = 0;
  /// Offsets n at which the bounds are evaluated.
  std::vector<std::size_t> offsets{1, 2, 3, 4, 5};
  /// Worker threads; 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Every MC comparison allows this many standard errors of slack.
inline constexpr double kSigmaSlack = 3.0;
/// Reports that quote standard errors need at least this many replicates.
inline constexpr std::size_t kMinReplicates = 100;

struct ReportRow {
  std::size_t offset = 0;
  double posterior_mass = 0.0;
  double posterior_mass_se = 0.0;
  double dhat_freq = 0.0;
  double dhat_freq_se = 0.0;
  double theory_bound = 0.0;
  /// theory_bound >= 1: the row carries no evidence.
  bool vacuous = false;
  bool satisfied = false;
};

using Metadata = std::vector<std::pair<std::string, std::string>>;

struct ExperimentReport {
  std::string theorem;
  Metadata metadata;
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;

  /// All non-vacuous rows satisfied.
  bool all_satisfied() const;
};

ExperimentReport mc_overshoot(const Signal& theta, const PriorParams& p,
                              double tau, const MCConfig& cfg,
                              const std::string& label = "custom");

ExperimentReport mc_undershoot(const Signal& theta, const PriorParams& p,
                               double tau, const MCConfig& cfg,
                               const std::string& label = "custom");

struct TwoSidedParams {
  enum class Case { kTail, kHead };
  Case which = Case::kTail;
  /// t0 for the tail case (0 < t0 < tau), H0 for the head case (H0 > tau).
  double level = 0.0;
  /// N0 (tail case) or n0 (head case); every offset must be >= this.
  std::size_t min_offset = 1;
};

/// Validates the A sandwich (1 + t0 < A < 1 + tau, or 1 + tau < A < 1 + H0)
/// and class membership before simulating. Offset n uses n1 = n2 = n.
ExperimentReport mc_two_sided(const Signal& theta, const PriorParams& p,
                              double tau, const TwoSidedParams& tp,
                              const MCConfig& cfg,
                              const std::string& label = "custom");

/// q_o(Delta) = 1 + 2 Delta - 2 sqrt(Delta^2 + Delta), the solution of
/// q = (1 - q)^2 / (4 Delta); evaluated as 1 / (1 + 2 Delta + 2 sqrt(.)).
double lower_bound_level(double delta);

struct LowerBoundReport {
  double tau = 0.0;
  double eps = 0.0;
  std::size_t l1 = 0;
  std::size_t l2 = 0;
  double delta = 0.0;
  std::size_t d_tau_prime = 0;
  std::size_t d_tau_double_prime = 0;
  /// exp(eps^-2 |theta' - theta''|^2); equals Delta by construction.
  double likelihood_ratio_moment = 0.0;
  double p1 = 0.0;
  double p1_se = 0.0;
  double p2 = 0.0;
  double p2_se = 0.0;
  double sum = 0.0;
  double combined_se = 0.0;
  double delta_prime = 0.0;
  bool satisfied = false;
  Metadata metadata;
};

/// theta' replicates use streams r, theta'' replicates use streams R + r.
LowerBoundReport lower_bound_experiment(double tau, NoiseLevel eps,
                                        std::size_t l1, std::size_t l2,
                                        double delta, const PriorParams& p,
                                        const MCConfig& cfg);

/// s_hat = 1/2 (log(eps^-2) / log(dhat) - 1). Requires dhat >= 2, eps < 1.
double smoothness_estimate(std::size_t dhat, NoiseLevel eps);

struct SmoothnessSweepParams {
  /// Strictly decreasing noise levels in (0, 1).
  std::vector<double> eps_grid{0.3, 0.1, 0.03, 0.01};
  /// Event constants for dhat in [c d_tau, C d_tau], c < 1 < C.
  double c_lo = 0.5;
  double c_hi = 2.0;
  /// Limit for max/min of d_tau (tau eps^-2)^{-1/(2s+1)}; reported only.
  double band_limit = 4.0;
};

struct SmoothnessRow {
  double eps = 0.0;
  std::size_t d_tau = 0;
  /// d_tau (tau eps^-2)^{-1/(2s+1)}
  double scaled_d_tau = 0.0;
  double dhat_median = 0.0;
  double s_hat_median = 0.0;
  /// Median |s_hat - s|; replicates with dhat < 2 count as +infinity.
  double abs_error_median = 0.0;
  /// abs_error_median * log(eps^-2)
  double scaled_error = 0.0;
  std::size_t undefined_count = 0;
  double outside_freq = 0.0;
  double outside_freq_se = 0.0;
  /// s_hat range implied by dhat in [c d_tau, C d_tau].
  double bracket_lo = 0.0;
  double bracket_hi = 0.0;
};

struct SmoothnessReport {
  double s = 0.0;
  std::vector<SmoothnessRow> rows;
  bool d_tau_monotone = false;
  double band_ratio = 0.0;
  bool band_ok = false;
  bool error_nonincreasing = false;
  Metadata metadata;
  std::vector<std::string> notes;
};

/// One fixed theta = self_similar_signal(p_class, cfg.n); for each eps in the
/// grid the prior keeps (kappa, varkappa) with the noise level replaced.
/// Replicate r at grid index j uses stream j * R + r.
SmoothnessReport smoothness_sweep(const SmoothnessClassParams& p_class,
                                  const PriorParams& p, double tau,
                                  const SmoothnessSweepParams& sp,
                                  const MCConfig& cfg);

// CSV writers. Each starts with `# effdim-report v1` and one `# key=value`
// line per metadata entry.
void write_report(std::ostream& os, const ExperimentReport& r);
void write_report(std::ostream& os, const LowerBoundReport& r);
void write_report(std::ostream& os, const SmoothnessReport& r);
std::string format_report(const ExperimentReport& r);
std::string format_report(const LowerBoundReport& r);
std::string format_report(const SmoothnessReport& r);

}  // namespace effdim
