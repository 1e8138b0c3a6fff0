#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "effdim/errors.hpp"
#include "effdim/oracle.hpp"

namespace effdim {
namespace {

const NoiseLevel kUnit(1.0);

TEST(Risk, ZeroSignalIsDimensionCost) {
  EXPECT_DOUBLE_EQ(risk(3, zero_signal(5), kUnit, 1.0), 3.0);
  EXPECT_THROW(risk(0, zero_signal(5), kUnit, 1.0), IndexError);
  EXPECT_THROW(risk(6, zero_signal(5), kUnit, 1.0), IndexError);
}

TEST(EffectiveDimension, Examples) {
  const auto a = effective_dimension(Signal(std::vector<double>{3, 2, 0.1}), kUnit, 1.0);
  EXPECT_EQ(a.d_tau, 2u);
  EXPECT_NEAR(a.r_tau, 2.01, 1e-14);

  const auto b = effective_dimension(Signal(std::vector<double>{3, 1, 0.5}), kUnit, 1.0);
  EXPECT_DOUBLE_EQ(b.risk_curve[0], 2.25);
  EXPECT_DOUBLE_EQ(b.risk_curve[1], 2.25);
  EXPECT_EQ(b.d_tau, 1u);

  const auto z = effective_dimension(zero_signal(10), NoiseLevel(0.5), 3.0);
  EXPECT_EQ(z.d_tau, 1u);
  EXPECT_DOUBLE_EQ(z.r_tau, 0.75);
}

TEST(EffectiveDimension, HorizonGuard) {
  // tail beyond N worth more than one more dimension
  EXPECT_THROW(effective_dimension(Signal(std::vector<double>{1.0}, 2.0), kUnit, 1.0),
               HorizonError);
  EXPECT_NO_THROW(effective_dimension(Signal(std::vector<double>{1.0}, 0.5), kUnit, 1.0));
}

// Naive O(N^2) reference.
std::size_t brute_force(const Signal& theta, double eps, double tau) {
  std::size_t best = 1;
  double best_r = INFINITY;
  for (std::size_t d = 1; d <= theta.size(); ++d) {
    double r = theta.tail_energy() + tau * static_cast<double>(d) * eps * eps;
    for (std::size_t i = d + 1; i <= theta.size(); ++i) {
      r += theta.coeff(i) * theta.coeff(i);
    }
    if (r < best_r) {
      best_r = r;
      best = d;
    }
  }
  return best;
}

TEST(EffectiveDimension, MatchesBruteForce) {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<std::size_t> len(1, 60);
  std::normal_distribution<double> z;
  for (int k = 0; k < 200; ++k) {
    std::vector<double> c(len(rng));
    for (auto& v : c) v = 2.0 * z(rng);
    const Signal theta(c);
    const double tau = 0.5 + std::abs(z(rng));
    EXPECT_EQ(effective_dimension(theta, kUnit, tau).d_tau,
              brute_force(theta, 1.0, tau));
  }
}

TEST(TauScaling, Identity) {
  const Signal a(std::vector<double>{3, 2, 0.1, 1.5, 0.2});
  for (double tau : {0.5, 1.0, 2.0, 9.0}) {
    EXPECT_TRUE(tau_scaling_identity_check(a, kUnit, tau));
    EXPECT_TRUE(tau_scaling_identity_check(zero_signal(8), kUnit, tau));
  }
  EXPECT_TRUE(tau_scaling_identity_check(power_law_signal(1.0, 1.0, 2000),
                                         NoiseLevel(0.1), 4.0));
}

TEST(TailCondition, ZeroSignalAlwaysMember) {
  for (std::size_t n0 : {1u, 3u, 50u}) {
    EXPECT_TRUE(tail_condition(zero_signal(20), kUnit, 1.0, 0.5, n0).member);
  }
}

TEST(TailCondition, AdversarialPair) {
  const auto pair = adversarial_pair(1.0, kUnit, 3, 3, 1.1);
  EXPECT_TRUE(tail_condition(pair.double_prime, kUnit, 1.0, 0.5, 1).member);
  const auto rep = tail_condition(pair.prime, kUnit, 1.0, 0.5, 6);
  EXPECT_FALSE(rep.member);
  ASSERT_TRUE(rep.first_violation.has_value());
  EXPECT_EQ(*rep.first_violation, 6u);
  EXPECT_THROW(tail_condition(pair.prime, kUnit, 1.0, 1.0, 1), DomainError);
}

TEST(HeadCondition, AdversarialPair) {
  const auto pair = adversarial_pair(1.0, kUnit, 3, 3, 1.1);
  EXPECT_TRUE(head_condition(pair.prime, kUnit, 1.0, 1.5, 1).member);
  const auto miss = head_condition(pair.double_prime, kUnit, 1.0, 1.5, 1);
  EXPECT_FALSE(miss.member);
  EXPECT_EQ(miss.first_violation, std::optional<std::size_t>(1));
  EXPECT_THROW(head_condition(pair.prime, kUnit, 1.0, 1.0, 1), DomainError);
}

TEST(HeadCondition, ZeroSignal) {
  const auto rep = head_condition(zero_signal(5), kUnit, 1.0, 2.0, 1);
  EXPECT_EQ(rep.d_tau, 1u);
  EXPECT_FALSE(rep.member);
  const auto vac = head_condition(zero_signal(5), kUnit, 1.0, 2.0, 2);
  EXPECT_TRUE(vac.vacuous);
  EXPECT_TRUE(vac.member);
}

TEST(RiskCurve, Csv) {
  std::ostringstream os;
  write_risk_curve(os, Signal(std::vector<double>{3, 2, 0.1}), kUnit, 1.0);
  std::istringstream in(os.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "d,r_tau,approx_error,dim_cost");
  std::vector<std::string> rows;
  while (std::getline(in, line)) rows.push_back(line);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[1].substr(0, 2), "2,");
  EXPECT_NEAR(std::stod(rows[1].substr(2)), 2.01, 1e-15);
  EXPECT_EQ(rows[2], "3,3,0,3");
}

}  // namespace
}  // namespace effdim
