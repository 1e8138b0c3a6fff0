#include <gtest/gtest.h>

#include <cmath>

#include "effdim/errors.hpp"
#include "effdim/experiments.hpp"
#include "effdim/oracle.hpp"

namespace effdim {
namespace {

const NoiseLevel kUnit(1.0);

PriorParams prior_a6() { return PriorParams(std::exp(2.0) - 1.0, 2.0, kUnit); }
PriorParams prior_a2() { return PriorParams::from_penalty(2.0, 0.25, kUnit); }

MCConfig small(std::size_t replicates = 200) {
  MCConfig cfg;
  cfg.replicates = replicates;
  cfg.n = 30;
  cfg.master_seed = 12345;
  return cfg;
}

bool has_substring(const std::string& what, const std::string& needle) {
  return what.find(needle) != std::string::npos;
}

TEST(LowerBoundLevel, Values) {
  EXPECT_NEAR(lower_bound_level(1.1), 0.16026316928586727, 1e-15);
  for (double d : {1.01, 2.0, 50.0}) {
    const double q = lower_bound_level(d);
    EXPECT_NEAR(q, (1.0 - q) * (1.0 - q) / (4.0 * d), 1e-14);
  }
  EXPECT_THROW(lower_bound_level(1.0), DomainError);
}

TEST(SmoothnessEstimate, Values) {
  EXPECT_NEAR(smoothness_estimate(10, NoiseLevel(0.1)), 0.5, 1e-15);
  EXPECT_NEAR(smoothness_estimate(10, NoiseLevel(std::pow(10.0, -1.5))), 1.0,
              1e-14);
  EXPECT_GT(smoothness_estimate(10, NoiseLevel(0.01)),
            smoothness_estimate(11, NoiseLevel(0.01)));
  EXPECT_THROW(smoothness_estimate(1, NoiseLevel(0.1)), DomainError);
  EXPECT_THROW(smoothness_estimate(5, NoiseLevel(1.0)), DomainError);
}

TEST(Overshoot, ZeroSignalRowsAndEnvelope) {
  const auto rep = mc_overshoot(zero_signal(30), prior_a6(), 1.0, small());
  ASSERT_EQ(rep.rows.size(), 5u);
  const double expected[] = {0.79620304, 0.41423267, 0.21550873, 0.11212059,
                             0.05833187};
  for (std::size_t i = 0; i < 5; ++i) {
    EXPECT_NEAR(rep.rows[i].theory_bound, expected[i], 1e-8);
    EXPECT_FALSE(rep.rows[i].vacuous);
    EXPECT_TRUE(rep.rows[i].satisfied) << "offset " << rep.rows[i].offset;
    if (i > 0) EXPECT_LT(rep.rows[i].theory_bound, rep.rows[i - 1].theory_bound);
  }
  EXPECT_TRUE(rep.all_satisfied());
}

TEST(Overshoot, RejectsBadConfig) {
  try {
    mc_overshoot(zero_signal(30), PriorParams::from_penalty(1.5, 0.1, kUnit), 1.0,
                 small());
    FAIL() << "expected ConfigError";
  } catch (const ConfigError& e) {
    EXPECT_TRUE(has_substring(e.what(), "requires A > 1+tau")) << e.what();
  }
  EXPECT_THROW(mc_overshoot(zero_signal(30), prior_a6(), 1.0, small(99)),
               ConfigError);
  EXPECT_THROW(
      mc_overshoot(power_law_signal(1.0, 0.1, 10), prior_a6(), 1.0, small()),
      ConfigError);
  MCConfig zero_offset = small();
  zero_offset.offsets = {0, 1};
  EXPECT_THROW(mc_overshoot(zero_signal(30), prior_a6(), 1.0, zero_offset),
               ConfigError);
}

TEST(Undershoot, EnvelopeAndEmptyRegion) {
  const auto pair = adversarial_pair(9.0, kUnit, 3, 3, 1.1);
  MCConfig cfg = small();
  cfg.offsets = {1, 2, 3, 7, 8};
  const auto rep = mc_undershoot(pair.double_prime, prior_a2(), 9.0, cfg);
  const double expected[] = {0.12689016, 0.02570661, 0.00520789};
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(rep.rows[i].theory_bound, expected[i], 1e-8);
  }
  // d_tau = 7: offsets >= 7 leave D <= 0, an empty event
  EXPECT_EQ(rep.rows[3].posterior_mass, 0.0);
  EXPECT_EQ(rep.rows[3].dhat_freq, 0.0);
  EXPECT_EQ(rep.rows[4].posterior_mass, 0.0);
  EXPECT_THROW(mc_undershoot(pair.double_prime, prior_a6(), 1.0, cfg),
               ConfigError);
}

TEST(TwoSided, SandwichErrorsNameTheInequality) {
  const Signal theta = power_law_signal(2.0, 1.0, 200);
  const PriorParams p = PriorParams::from_penalty(2.5, 0.25, kUnit);
  const auto message = [&](double tau, TwoSidedParams tp) {
    try {
      mc_two_sided(theta, p, tau, tp, small());
    } catch (const ConfigError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  EXPECT_TRUE(has_substring(
      message(3.0, {TwoSidedParams::Case::kTail, 2.0, 1}), "1+t0 < A"));
  EXPECT_TRUE(has_substring(
      message(1.0, {TwoSidedParams::Case::kTail, 0.5, 1}), "A < 1+tau"));
  EXPECT_TRUE(has_substring(
      message(3.0, {TwoSidedParams::Case::kTail, 4.0, 1}), "0 < t0 < tau"));
  EXPECT_TRUE(has_substring(
      message(1.0, {TwoSidedParams::Case::kHead, 1.2, 1}), "A < 1+H0"));
  EXPECT_TRUE(has_substring(
      message(2.0, {TwoSidedParams::Case::kHead, 3.0, 1}), "1+tau < A"));
}

TEST(TwoSided, RejectsNonMember) {
  const auto pair = adversarial_pair(1.0, kUnit, 3, 3, 1.1);
  const PriorParams p = PriorParams::from_penalty(2.5, 0.25, kUnit);
  EXPECT_THROW(mc_two_sided(pair.double_prime, p, 1.0,
                            {TwoSidedParams::Case::kHead, 2.0, 1}, small()),
               ConfigError);
}

TEST(Determinism, ThreadCountDoesNotMatter) {
  MCConfig one = small();
  one.threads = 1;
  MCConfig four = small();
  four.threads = 4;
  const Signal theta = power_law_signal(1.0, 3.0, 30);
  EXPECT_EQ(format_report(mc_overshoot(theta, prior_a6(), 1.0, one)),
            format_report(mc_overshoot(theta, prior_a6(), 1.0, four)));
  const SmoothnessClassParams pc{1.0, 1.0, 0.1, 2.0, 2};
  SmoothnessSweepParams sp;
  sp.eps_grid = {0.3, 0.1};
  MCConfig s1 = small(20);
  s1.n = 256;
  s1.threads = 1;
  MCConfig s3 = s1;
  s3.threads = 3;
  EXPECT_EQ(format_report(smoothness_sweep(pc, prior_a2(), 1.0, sp, s1)),
            format_report(smoothness_sweep(pc, prior_a2(), 1.0, sp, s3)));
}

TEST(LowerBound, PairDiagnostics) {
  MCConfig cfg = small(100);
  const auto rep =
      lower_bound_experiment(1.0, kUnit, 3, 3, 1.1, prior_a2(), cfg);
  EXPECT_NEAR(rep.likelihood_ratio_moment, 1.1, 1.1e-10);
  EXPECT_EQ(rep.d_tau_prime, 1u);
  EXPECT_EQ(rep.d_tau_double_prime, 7u);
  EXPECT_NEAR(rep.delta_prime, 0.16026316928586727, 1e-15);
  EXPECT_TRUE(has_substring(format_report(rep), "0.1602631692858"));
}

TEST(Report, HeaderAndColumns) {
  const auto rep = mc_overshoot(zero_signal(30), prior_a6(), 1.0, small());
  const std::string text = format_report(rep);
  EXPECT_EQ(text.rfind("# effdim-report v1\n# theorem=overshoot\n", 0), 0u);
  EXPECT_TRUE(has_substring(text, "# master_seed=12345\n"));
  EXPECT_TRUE(has_substring(
      text,
      "offset,posterior_mass,posterior_mass_se,dhat_freq,dhat_freq_se,"
      "theory_bound,vacuous,satisfied\n1,"));
}

}  // namespace
}  // namespace effdim
