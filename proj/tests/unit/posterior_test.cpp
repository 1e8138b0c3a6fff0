#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include "effdim/errors.hpp"
#include "effdim/posterior.hpp"

namespace effdim {
namespace {

const NoiseLevel kUnit(1.0);

double total(const PosteriorOverD& post) {
  return std::accumulate(post.pmf.begin(), post.pmf.end(), 0.0) +
         post.tail_mass;
}

// A = 2 with kappa strictly above e - 1.
PriorParams prior_a2(NoiseLevel eps = kUnit) {
  return PriorParams::from_penalty(2.0, 0.25, eps);
}

TEST(PriorParams, Validates) {
  EXPECT_THROW(PriorParams(1.0, 1.0, kUnit), DomainError);
  EXPECT_THROW(PriorParams(3.0, 0.0, kUnit), DomainError);
  const PriorParams p(std::exp(2.0) - 1.0, 2.0, kUnit);
  EXPECT_NEAR(p.penalty(), 6.0, 1e-15);
  EXPECT_NEAR(prior_a2().penalty(), 2.0, 1e-15);
  EXPECT_THROW(PriorParams::from_penalty(2.0, 0.5, kUnit), DomainError);
}

TEST(Crit, HandEnumeration) {
  const auto x = make_observation({3, 2, 0.5, 0, 0}, kUnit);
  const auto c = crit_curve(x, prior_a2());
  const std::vector<double> expected{-7, -9, -7.25, -5.25, -3.25};
  ASSERT_EQ(c.size(), expected.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    EXPECT_NEAR(c[i], expected[i], 1e-14);
  }
  EXPECT_EQ(map_dimension(x, prior_a2()), 2u);
  EXPECT_THROW(crit(0, x, prior_a2()), IndexError);
  EXPECT_THROW(crit(6, x, prior_a2()), IndexError);
}

TEST(Crit, ZeroData) {
  const auto x = make_observation(std::vector<double>(6, 0.0), NoiseLevel(0.5));
  const PriorParams p = prior_a2(NoiseLevel(0.5));
  for (std::size_t d = 1; d <= 6; ++d) {
    EXPECT_NEAR(crit(d, x, p), 2.0 * 0.25 * static_cast<double>(d), 1e-15);
  }
  EXPECT_EQ(map_dimension(x, p), 1u);
  const auto lw = log_weights(x, p);
  for (std::size_t i = 1; i < lw.size(); ++i) EXPECT_LT(lw[i], lw[i - 1]);
}

TEST(PosteriorPmf, ZeroDataRatio) {
  const auto x = make_observation(std::vector<double>(5, 0.0), kUnit);
  const PriorParams p(std::exp(2.0) - 1.0, 1.0, kUnit);
  const auto post = posterior_pmf(x, p);
  EXPECT_NEAR(total(post), 1.0, 1e-12);
  EXPECT_NEAR(post.at(1) / post.at(2), std::exp(2.0), 1e-12);
  EXPECT_EQ(map_dimension(post), 1u);
}

TEST(PosteriorPmf, LargeVarkappaSmallTail) {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> z;
  for (int k = 0; k < 50; ++k) {
    std::vector<double> v(5);
    for (auto& e : v) e = 3.0 * z(rng);
    const auto post =
        posterior_pmf(make_observation(v, kUnit), PriorParams(3.0, 10.0, kUnit));
    EXPECT_LT(post.tail_mass, 1e-4);
  }
}

TEST(PosteriorPmf, NormalizedAndArgmaxMatchesCrit) {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> z;
  std::uniform_int_distribution<std::size_t> len(1, 80);
  for (int k = 0; k < 500; ++k) {
    std::vector<double> v(len(rng));
    for (std::size_t i = 0; i < v.size(); ++i) {
      v[i] = 4.0 / (1.0 + static_cast<double>(i)) + z(rng);
    }
    const NoiseLevel eps(0.5 + std::abs(z(rng)));
    const PriorParams p(2.0 + std::abs(3.0 * z(rng)), 0.1 + std::abs(z(rng)), eps);
    const auto x = make_observation(v, eps);
    const auto post = posterior_pmf(x, p);
    EXPECT_NEAR(total(post), 1.0, 1e-12);
    const auto c = crit_curve(x, p);
    const auto argmin =
        static_cast<std::size_t>(std::min_element(c.begin(), c.end()) - c.begin()) + 1;
    EXPECT_EQ(map_dimension(post), argmin);
    EXPECT_EQ(map_dimension(x, p), argmin);
  }
}

TEST(PosteriorPmf, NoiseMismatchRejected) {
  const auto x = make_observation({1.0, 2.0}, NoiseLevel(0.5));
  EXPECT_THROW(posterior_pmf(x, prior_a2()), DomainError);
}

TEST(PosteriorPmf, ExtremeDataStaysFinite) {
  const auto x = make_observation({1e6, -1e6, 1e-300, 0.0}, NoiseLevel(1e-3));
  const auto post = posterior_pmf(x, prior_a2(NoiseLevel(1e-3)));
  EXPECT_NEAR(total(post), 1.0, 1e-12);
  for (double v : post.pmf) EXPECT_TRUE(std::isfinite(v));
}

TEST(PosteriorMean, ProjectionEstimator) {
  const auto x = make_observation({3, 2, 0.5, 0, 0}, kUnit);
  EXPECT_EQ(posterior_mean_theta(x, prior_a2()),
            (std::vector<double>{3, 2, 0, 0, 0}));
  const auto zero = make_observation(std::vector<double>(4, 0.0), kUnit);
  EXPECT_EQ(posterior_mean_theta(zero, prior_a2()), std::vector<double>(4, 0.0));
}

TEST(RegionMass, SplitsAndLump) {
  const auto x = make_observation({3, 2, 0.5, 0, 0}, kUnit);
  const auto post = posterior_pmf(x, prior_a2());
  EXPECT_NEAR(region_mass(post, 1), 1.0, 1e-12);
  EXPECT_NEAR(region_mass(post, 1, 2) + region_mass(post, 3), 1.0, 1e-12);
  EXPECT_NEAR(region_mass(post, 6), post.tail_mass, 1e-15);
  EXPECT_NEAR(region_mass(post, 6, 7) + region_mass(post, 8), post.tail_mass,
              1e-15);
  // lump is geometric with ratio e^{-varkappa}
  EXPECT_NEAR(region_mass(post, 7) / region_mass(post, 6), std::exp(-0.25),
              1e-14);
  EXPECT_EQ(region_mass(post, 4, 3), 0.0);
}

TEST(Truncation, StableForPowerLaw) {
  const NoiseLevel eps(0.1);
  const PriorParams p(std::exp(2.0) - 1.0, 1.0, eps);
  const Signal theta = power_law_signal(1.0, 1.0, 400);
  const auto big = simulate(theta, eps, 400, StreamKey{4, 0});
  const auto half = make_observation(
      std::vector<double>(big.x.begin(), big.x.begin() + 200), eps);
  const double tv =
      truncation_tv_distance(posterior_pmf(half, p), posterior_pmf(big, p));
  EXPECT_LT(tv, 1e-6);
}

TEST(WritePmf, Layout) {
  const auto x = make_observation({3, 2}, kUnit);
  std::ostringstream os;
  write_pmf(os, posterior_pmf(x, prior_a2()));
  const std::string s = os.str();
  EXPECT_EQ(s.rfind("d,pmf,cumulative\n1,", 0), 0u);
  EXPECT_NE(s.find("\ntail,"), std::string::npos);
}

}  // namespace
}  // namespace effdim
