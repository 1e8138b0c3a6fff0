#include "effdim/posterior.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>

#include "effdim/errors.hpp"
#include "effdim/rate_functions.hpp"
#include "effdim/text.hpp"

namespace effdim {

PriorParams::PriorParams(double kappa, double varkappa, NoiseLevel eps)
    : kappa_(kappa),
      varkappa_(varkappa),
      eps_(eps),
      penalty_(penalty_constant(kappa, varkappa)) {}

PriorParams PriorParams::from_penalty(double a, double varkappa,
                                      NoiseLevel eps) {
  if (!(varkappa > 0.0)) {
    throw DomainError("varkappa must be positive");
  }
  return PriorParams(std::expm1(a - 2.0 * varkappa), varkappa, eps);
}

namespace {

void require_matching_noise(const Observation& x, const PriorParams& p) {
  if (x.size() == 0) {
    throw DomainError("posterior needs at least one observation");
  }
  if (x.noise.value() != p.eps().value()) {
    throw DomainError("observation noise " + format_number(x.noise.value()) +
                      " differs from prior noise " +
                      format_number(p.eps().value()));
  }
}

}  // namespace

std::vector<double> crit_curve(const Observation& x, const PriorParams& p) {
  require_matching_noise(x, p);
  const double unit = p.penalty() * p.eps().variance();
  std::vector<double> out(x.size());
  double energy = 0.0;
  for (std::size_t d = 1; d <= x.size(); ++d) {
    energy += x.x[d - 1] * x.x[d - 1];
    out[d - 1] = -energy + unit * static_cast<double>(d);
  }
  return out;
}

double crit(std::size_t d, const Observation& x, const PriorParams& p) {
  if (d < 1 || d > x.size()) {
    throw IndexError("crit: d=" + std::to_string(d) + " outside 1.." +
                     std::to_string(x.size()));
  }
  return crit_curve(x, p)[d - 1];
}

std::vector<double> log_weights(const Observation& x, const PriorParams& p) {
  // -crit/(2 eps^2) is the same expression as the prior/likelihood form in
  // the header; sharing crit's prefix sums keeps argmax(w) == argmin(crit)
  // exact in floating point.
  auto lw = crit_curve(x, p);
  const double scale = -0.5 / p.eps().variance();
  for (double& v : lw) v *= scale;
  return lw;
}

PosteriorOverD posterior_pmf(const Observation& x, const PriorParams& p) {
  PosteriorOverD post;
  post.n = x.size();
  post.varkappa = p.varkappa();
  post.log_weights = log_weights(x, p);

  // log of w(n) sum_{k>=1} e^{-varkappa k}
  const double log_tail = post.log_weights.back() - p.varkappa() -
                          std::log(-std::expm1(-p.varkappa()));
  const double shift =
      std::max(*std::max_element(post.log_weights.begin(),
                                 post.log_weights.end()),
               log_tail);

  post.pmf.resize(post.n);
  double z = 0.0;
  for (std::size_t i = 0; i < post.n; ++i) {
    post.pmf[i] = std::exp(post.log_weights[i] - shift);
    z += post.pmf[i];
  }
  const double tail = std::exp(log_tail - shift);
  z += tail;
  for (double& v : post.pmf) v /= z;
  post.tail_mass = tail / z;
  return post;
}

std::size_t map_dimension(const PosteriorOverD& post) {
  const auto it =
      std::max_element(post.log_weights.begin(), post.log_weights.end());
  return static_cast<std::size_t>(it - post.log_weights.begin()) + 1;
}

std::size_t map_dimension(const Observation& x, const PriorParams& p) {
  const auto lw = log_weights(x, p);
  return static_cast<std::size_t>(std::max_element(lw.begin(), lw.end()) -
                                  lw.begin()) +
         1;
}

std::vector<double> posterior_mean_theta(const Observation& x,
                                         const PriorParams& p) {
  const std::size_t dhat = map_dimension(x, p);
  std::vector<double> out(x.size(), 0.0);
  std::copy_n(x.x.begin(), dhat, out.begin());
  return out;
}

double region_mass(const PosteriorOverD& post, std::size_t lo,
                   std::optional<std::size_t> hi) {
  lo = std::max<std::size_t>(lo, 1);
  if (hi && *hi < lo) return 0.0;
  double mass = 0.0;
  const std::size_t inner_hi = hi ? std::min(*hi, post.n) : post.n;
  for (std::size_t d = lo; d <= inner_hi; ++d) {
    mass += post.pmf[d - 1];
  }
  if (!hi || *hi > post.n) {
    // Lump offsets k = d - n >= 1.
    const std::size_t a = std::max(lo, post.n + 1) - post.n;
    if (!hi) {
      mass += post.tail_mass * std::exp(-post.varkappa * static_cast<double>(a - 1));
    } else {
      const std::size_t b = *hi - post.n;
      if (b >= a) {
        mass += post.tail_mass *
                (std::exp(-post.varkappa * static_cast<double>(a - 1)) -
                 std::exp(-post.varkappa * static_cast<double>(b)));
      }
    }
  }
  return mass;
}

double truncation_tv_distance(const PosteriorOverD& a,
                              const PosteriorOverD& b) {
  if (a.n > b.n) {
    return truncation_tv_distance(b, a);
  }
  double tv = 0.0;
  for (std::size_t d = 1; d <= a.n; ++d) {
    tv += std::abs(a.at(d) - b.at(d));
  }
  tv += std::abs(a.tail_mass - region_mass(b, a.n + 1));
  return 0.5 * tv;
}

void write_pmf(std::ostream& os, const PosteriorOverD& post) {
  os << "d,pmf,cumulative\n";
  double cumulative = 0.0;
  for (std::size_t d = 1; d <= post.n; ++d) {
    cumulative += post.pmf[d - 1];
    os << d << ',' << format_number(post.pmf[d - 1]) << ','
       << format_number(cumulative) << '\n';
  }
  cumulative += post.tail_mass;
  os << "tail," << format_number(post.tail_mass) << ','
     << format_number(cumulative) << '\n';
}

}  // namespace effdim
