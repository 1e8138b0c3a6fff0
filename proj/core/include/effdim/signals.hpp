#pragma once

// Signals theta in l2 and noisy observations X_i = theta_i + eps * xi_i.
//
// A Signal is a finite coefficient prefix theta_1..theta_N plus one scalar
// holding (an upper value of) the energy sum_{i>N} theta_i^2 of everything
// not materialized. Indices are 1-based in the public API to match the model.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "effdim/random.hpp"

namespace effdim {

class Signal {
 public:
  /// Throws DomainError if coeffs is empty, any value is non-finite, or
  /// tail_energy is negative.
  explicit Signal(std::vector<double> coeffs, double tail_energy = 0.0);

  std::span<const double> coeffs() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }
  double tail_energy() const { return tail_energy_; }

  /// theta_i for 1 <= i; zero past the materialized prefix.
  double coeff(std::size_t i) const {
    return (i >= 1 && i <= coeffs_.size()) ? coeffs_[i - 1] : 0.0;
  }

  /// sum theta_i^2 over the prefix plus tail_energy.
  double total_energy() const;

 private:
  std::vector<double> coeffs_;
  double tail_energy_;
};

class NoiseLevel {
 public:
  explicit NoiseLevel(double epsilon);
  double value() const { return epsilon_; }
  double variance() const { return epsilon_ * epsilon_; }

 private:
  double epsilon_;
};

struct Observation {
  std::vector<double> x;
  NoiseLevel noise;
  /// Set when the observation was simulated; empty for supplied data.
  std::optional<StreamKey> seed_trace;

  std::size_t size() const { return x.size(); }
};

/// Wraps measured data. Throws DomainError on empty or non-finite input.
Observation make_observation(std::vector<double> x, NoiseLevel noise);

/// X_i = theta_i + eps * xi_i for i = 1..n, with theta_i = 0 for i > N and
/// xi_i the counter-based normal draw (key, i - 1).
Observation simulate(const Signal& theta, NoiseLevel eps, std::size_t n,
                     const StreamKey& key);

Signal zero_signal(std::size_t n);

/// Upper value of sum_{i>n} i^{-p} for p > 1: exact partial sum up to
/// max(n, 1e6) plus an Euler-Maclaurin remainder truncated after the B2 term,
/// which overestimates for completely monotone summands.
double power_tail_sum(double p, std::size_t n);

/// theta_i = c * i^{-(s + 1/2)} for i <= n; tail_energy = c^2 sum_{i>n}
/// i^{-(2s+1)} (upper value).
Signal power_law_signal(double s, double c, std::size_t n);

/// theta_i = eps * sqrt(level) for i <= length, then `padding` zeros.
Signal block_signal(double level, std::size_t length, NoiseLevel eps,
                    std::size_t padding = 0);

struct AdversarialPair {
  Signal prime;         ///< theta'  : d_tau = 1
  Signal double_prime;  ///< theta'' : d_tau = L1 + L2 + 1
};

/// The two-point construction behind the minimax lower bound:
///   theta'_1 = theta''_1 = eps sqrt(2 tau),
///   theta'_i, theta''_i = eps sqrt(tau) -/+ eps sqrt(log Delta) / (2 sqrt(L1+L2))
/// for i = 2..L1+L2+1. Then exp(eps^-2 |theta' - theta''|^2) = Delta.
/// Throws DomainError if Delta <= 1, L1 + L2 == 0, or theta' would have a
/// non-positive coefficient.
AdversarialPair adversarial_pair(double tau, NoiseLevel eps, std::size_t l1,
                                 std::size_t l2, double delta);

struct SmoothnessClassParams {
  double s;      ///< smoothness, > 0
  double q;      ///< radius Q, > 0
  double alpha;  ///< block fraction, in (0, 1)
  double rho0;   ///< block ratio, > 1
  std::size_t n0;  ///< first block start, >= 1

  /// Throws DomainError naming the first violated constraint.
  void validate() const;
};

struct MembershipReport {
  bool in_tail_class = false;
  bool self_similar = false;
  /// First m with m^{2s} sum_{k>m} theta_k^2 > Q.
  std::optional<std::size_t> tail_violation;
  /// First block start M with sum_{i=M}^{ceil(rho0 M)} theta_i^2 < alpha Q / M^{2s}.
  std::optional<std::size_t> block_violation;
  /// Number of blocks that fit inside the materialized prefix.
  std::size_t blocks_checked = 0;
};

/// Finite verification of theta in T_s(Q) (m = 1..N, tail folded in via
/// tail_energy) and of the self-similar block lower bound for every block
/// start M >= N0 whose block ends inside the prefix. self_similar is false
/// when no block fits.
MembershipReport check_membership(const Signal& theta,
                                  const SmoothnessClassParams& p);

class ConstructionError : public std::runtime_error {
 public:
  ConstructionError(const std::string& what, std::size_t index)
      : std::runtime_error(what), index_(index) {}
  std::size_t index() const { return index_; }

 private:
  std::size_t index_;
};

/// Power law sqrt(Q) min(1, sqrt(2s)) i^{-(s+1/2)} on 1..n. The scale keeps
/// m^{2s} sum_{k>m} theta_k^2 <= Q for every m. Throws ConstructionError with
/// the offending index if either class inequality fails on the checked range,
/// DomainError if no block fits (ceil(rho0 N0) > n).
Signal self_similar_signal(const SmoothnessClassParams& p, std::size_t n);

// Plain-text signal format:
//   # effdim-signal v1 N=<N> tail_energy=<e>
//   <theta_1>
//   ...
// one coefficient per line, 17 significant digits.
void write_signal(std::ostream& os, const Signal& theta);
std::string format_signal(const Signal& theta);
/// Throws FormatError on malformed input.
Signal read_signal(std::istream& is);

}  // namespace effdim
