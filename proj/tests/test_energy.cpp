#include <gtest/gtest.h>

#include <cmath>

#include "hrsync/energy.hpp"
#include "hrsync/sim.hpp"
#include "oracles.hpp"

using namespace hrsync;

namespace {

double norm2(const Vec4& v) { return std::sqrt(dot(v, v)); }

}  // namespace

TEST(Energy, Origin) {
  EXPECT_EQ(energy({}, NeuronParams::canonical()), 0.0);
  EXPECT_EQ(energy_gradient({}, NeuronParams::canonical()), (Vec4{0, 0, 0, 0}));
  EXPECT_EQ(energy_derivative({}, NeuronParams::canonical()), 0.0);
}

TEST(Energy, OnlyQuadraticYTermSurvives) {
  const auto q = NeuronParams::canonical();
  EXPECT_DOUBLE_EQ(energy({0, 1, 0, 0}, q), -1.0);
  const Vec4 g = energy_gradient({0, 1, 0, 0}, q);
  EXPECT_DOUBLE_EQ(g[0], 0.0);
  EXPECT_DOUBLE_EQ(g[1], -2.0);
  EXPECT_DOUBLE_EQ(g[2], 1.98);
  EXPECT_DOUBLE_EQ(g[3], 0.0);
}

TEST(Energy, UnitStateMatchesOracle) {
  const auto q = NeuronParams::canonical(3.024);
  const auto lq = oracle::widen(q);
  EXPECT_NEAR(energy({1, 1, 1, 1}, q), static_cast<double>(oracle::energy(1, 1, 1, 1, lq)), 1e-12);
  // exact rational evaluation
  EXPECT_NEAR(energy({1, 1, 1, 1}, q), -3.3972185347851975, 1e-12);
  EXPECT_NEAR(energy_derivative({1, 1, 1, 1}, q), -50.73198178008929, 1e-11);
}

TEST(Energy, DivisorGuards) {
  EXPECT_THROW(energy({1, 0, 0, 0}, NeuronParams::canonical().with(Param::a, 0)), DomainError);
  EXPECT_THROW(energy_gradient({}, NeuronParams::canonical().with(Param::s, 0)), DomainError);
  EXPECT_THROW(energy_derivative({}, NeuronParams::canonical().with(Param::m, 0)), DomainError);
}

TEST(Energy, RandomStatesMatchOracle) {
  const auto q = NeuronParams::canonical(3.024);
  const auto lq = oracle::widen(q);
  for (const auto& st : oracle::random_states(100, 3)) {
    const double H = static_cast<double>(oracle::energy(st.x, st.y, st.z, st.w, lq));
    const double Hdot =
        static_cast<double>(oracle::energy_derivative_expanded(st.x, st.y, st.z, st.w, lq));
    EXPECT_NEAR(energy(st, q), H, 1e-12 * (1 + std::abs(H)));
    EXPECT_NEAR(energy_derivative(st, q), Hdot, 1e-12 * (1 + std::abs(Hdot)));
  }
}

TEST(EnergyGradient, MatchesFiniteDifferences) {
  const auto q = NeuronParams::canonical(3.024);
  constexpr double step = 1e-6;
  for (const auto& st : oracle::random_states(100)) {
    const Vec4 analytic = energy_gradient(st, q);
    const Vec4 base = st.as_array();
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
      const double fd = oracle::central_difference(
          [&](double v) {
            Vec4 s = base;
            s[i] = v;
            return energy(NeuronState::from_array(s), q);
          },
          base[i], step);
      worst = std::max(worst, std::abs(fd - analytic[i]));
    }
    const double scale = std::max(
        {1.0, std::abs(analytic[0]), std::abs(analytic[1]), std::abs(analytic[2]),
         std::abs(analytic[3])});
    EXPECT_LE(worst / scale, 1e-6);
  }
}

TEST(EnergyGradient, OrthogonalToConservativeField) {
  for (double current : {0.85, 3.024}) {
    const auto q = NeuronParams::canonical(current);
    for (const auto& st : oracle::random_states(100, 5)) {
      const Vec4 g = energy_gradient(st, q);
      const Vec4 fc = conservative_field(st, q).as_array();
      EXPECT_LE(std::abs(dot(g, fc)), 1e-10 * (1 + norm2(g) * norm2(fc)));
    }
  }
}

TEST(EnergyDerivative, EqualsGradientDotFullFieldUpToOrthogonalPart) {
  const auto q = NeuronParams::canonical(3.024);
  for (const auto& st : oracle::random_states(50, 9)) {
    const Vec4 g = energy_gradient(st, q);
    const double full = dot(g, vector_field(st, q).as_array());
    const double cons = dot(g, conservative_field(st, q).as_array());
    EXPECT_NEAR(energy_derivative(st, q), full - cons, 1e-10 * (1 + std::abs(full)));
  }
}

TEST(EnergyReport, Consistent) {
  const auto q = NeuronParams::canonical(3.024);
  const NeuronState st{0.3, -2.0, 2.9, -0.4};
  const auto report = energy_report(st, q);
  EXPECT_EQ(report.H, energy(st, q));
  EXPECT_EQ(report.gradient, energy_gradient(st, q));
  EXPECT_EQ(report.Hdot, dot(report.gradient, dissipative_field(st, q).as_array()));
}

// Along a trajectory, the centered difference quotient of H approximates Hdot.
TEST(EnergyDerivative, ChainRuleAlongTrajectory) {
  const auto q = NeuronParams::canonical(3.024);
  const auto field = [&](const Vec4& v, double) {
    return vector_field(NeuronState::from_array(v), q).as_array();
  };
  Vec4 state = rk4_integrate(field, Vec4{0.1, 0.2, 0.3, 0.1}, 0.0, 0.01, 5000);
  constexpr double dt = 1e-3;
  int checked = 0;
  for (int i = 0; i < 20000; ++i) {
    const Vec4 next = rk4_step(field, state, 0.0, dt);
    if (i % 500 == 250) {
      const Vec4 prev = rk4_step(field, state, 0.0, -dt);
      const double quotient =
          (energy(NeuronState::from_array(next), q) - energy(NeuronState::from_array(prev), q)) /
          (2 * dt);
      const double Hdot = energy_derivative(NeuronState::from_array(state), q);
      EXPECT_LE(std::abs(quotient - Hdot), 1e-3 * std::max(1.0, std::abs(Hdot)))
          << "t offset " << i * dt;
      ++checked;
    }
    state = next;
  }
  EXPECT_EQ(checked, 40);
}
