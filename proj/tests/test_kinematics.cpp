#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "rsse/kinematics.hpp"

namespace {

namespace kin = rsse::kinematics;
constexpr double c = rsse::kAtomicUnits.c;

TEST(TotalEnergy, RestMassMasslessAndMovingCases) {
  EXPECT_NEAR(kin::total_energy(1.0, 0.0), 18778.86504486668, 1e-8);
  EXPECT_DOUBLE_EQ(kin::total_energy(0.0, 2.5), 2.5 * c);
  const double p = kin::momentum(1.0, 0.6 * c);
  EXPECT_NEAR(kin::total_energy(1.0, p) / (c * c), 1.25, 1e-14);
}

TEST(TotalEnergy, DomainErrors) {
  EXPECT_THROW(kin::total_energy(-1.0, 1.0), rsse::DomainError);
  EXPECT_THROW(kin::total_energy(0.0, 0.0), rsse::DomainError);
}

TEST(TotalEnergy, RightTriangleIdentityOnRandomInputs) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> mass(0.0, 5.0);
  std::uniform_real_distribution<double> mom(-5e3, 5e3);
  for (int i = 0; i < 500; ++i) {
    const double m0 = mass(rng);
    const double p = mom(rng);
    const double E = kin::total_energy(m0, p);
    const double legs = (p * c) * (p * c) + (m0 * c * c) * (m0 * c * c);
    EXPECT_NEAR(E * E - legs, 0.0, 1e-10 * E * E);
  }
}

TEST(WaveFromParticle, RestAndMovingParticle) {
  const auto rest = kin::wave_from_particle(1.0, 0.0);
  EXPECT_DOUBLE_EQ(rest.omega, c * c);
  EXPECT_EQ(rest.k, 0.0);
  EXPECT_FALSE(rest.lambda.has_value());

  const auto moving = kin::wave_from_particle(1.0, 0.6 * c);
  EXPECT_NEAR(moving.k, 0.75 * c, 1e-12 * c);
  ASSERT_TRUE(moving.lambda.has_value());
  const double p = kin::momentum(1.0, 0.6 * c);
  EXPECT_NEAR(rsse::kAtomicUnits.planck() / *moving.lambda, p, 1e-12 * p);
  EXPECT_NEAR(2.0 * M_PI / *moving.lambda, moving.k, 1e-12 * moving.k);
  EXPECT_THROW(kin::wave_from_particle(1.0, c), rsse::DomainError);
}

TEST(Velocities, GroupVelocityIsParticleVelocity) {
  const double p = kin::momentum(1.0, 0.6 * c);
  const auto v = kin::velocities(1.0, p);
  EXPECT_NEAR(v.group, 0.6 * c, 1e-12 * c);
  EXPECT_NEAR(v.group * v.phase, c * c, 1e-12 * c * c);

  const auto light = kin::velocities(0.0, 3.0);
  EXPECT_DOUBLE_EQ(light.group, c);
  EXPECT_DOUBLE_EQ(light.phase, c);
  EXPECT_THROW(kin::velocities(1.0, 0.0), rsse::DomainError);
}

TEST(Velocities, ProductLawAcrossMassiveCases) {
  for (double beta = -0.95; beta <= 0.951; beta += 0.05) {
    if (std::abs(beta) < 1e-9) continue;
    const double p = kin::momentum(2.0, beta * c);
    const auto v = kin::velocities(2.0, p);
    EXPECT_NEAR(v.group * v.phase / (c * c), 1.0, 1e-12);
  }
}

TEST(ClockAndWave, DilationAgainstWaveFrequency) {
  const auto rest = kin::clock_and_wave_frequencies(1.0, 0.0);
  EXPECT_DOUBLE_EQ(rest.omega_clock, c * c);
  EXPECT_DOUBLE_EQ(rest.omega_wave, c * c);

  const auto moving = kin::clock_and_wave_frequencies(1.0, 0.6 * c);
  EXPECT_NEAR(moving.omega_clock / (c * c), 0.8, 1e-14);
  EXPECT_NEAR(moving.omega_wave / (c * c), 1.25, 1e-14);

  for (double beta = 0.0; beta < 0.999; beta += 0.037) {
    const auto f = kin::clock_and_wave_frequencies(1.0, beta * c);
    EXPECT_NEAR(f.omega_clock * f.omega_wave / (c * c * c * c), 1.0, 1e-12);
  }
}

TEST(PhaseHarmony, ClockPhaseEqualsWavePhaseOnTrajectory) {
  const auto rest = kin::check_phase_harmony(1.0, 0.0, 3.0);
  EXPECT_DOUBLE_EQ(rest.phi_clock, -c * c * 3.0);
  EXPECT_DOUBLE_EQ(rest.phi_wave, -c * c * 3.0);

  EXPECT_LT(kin::check_phase_harmony(1.0, 0.6 * c, 10.0).residual, 1e-10);
  double worst = 0.0;
  for (int i = 1; i <= 99; ++i) {
    worst = std::max(worst, kin::check_phase_harmony(1.0, 0.01 * i * c, 10.0).residual);
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(LorentzBoost, EventsAndInvariantInterval) {
  const auto same = kin::lorentz_boost_event(1.5, -2.0, 0.0);
  EXPECT_EQ(same.x, 1.5);
  EXPECT_EQ(same.t, -2.0);

  const auto boosted = kin::lorentz_boost_event(0.0, 1.0, 0.6 * c);
  EXPECT_NEAR(boosted.t, 1.25, 1e-14);
  EXPECT_NEAR(boosted.x, -0.75 * c, 1e-12 * c);

  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double x = 50.0 * u(rng);
    const double t = u(rng);
    const double v = 0.99 * c * u(rng);
    const auto e = kin::lorentz_boost_event(x, t, v);
    const double before = x * x - c * c * t * t;
    const double after = e.x * e.x - c * c * e.t * e.t;
    const double scale = x * x + c * c * t * t;
    EXPECT_NEAR(after, before, 1e-10 * scale);
    const auto back = kin::lorentz_boost_event(e.x, e.t, -v);
    EXPECT_NEAR(back.x, x, 1e-10 * (std::abs(x) + c * std::abs(t)));
    EXPECT_NEAR(back.t, t, 1e-10 * (std::abs(t) + std::abs(x) / c));
  }
  EXPECT_THROW(kin::lorentz_boost_event(0.0, 0.0, -c), rsse::DomainError);
}

TEST(LorentzBoost, EnergyMomentumKeepsInvariantMassAndPhase) {
  // A particle at rest seen from a frame moving with -v.
  const double v = 0.6 * c;
  const auto moving = kin::lorentz_boost_energy_momentum(c * c, 0.0, -v);
  EXPECT_NEAR(moving.E, 1.25 * c * c, 1e-12 * c * c);
  EXPECT_NEAR(moving.p, 1.25 * v, 1e-12 * v);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const double m0 = 1.0 + std::abs(u(rng));
    const double p = 300.0 * u(rng);
    const double E = kin::total_energy(m0, p);
    const double boost = 0.9 * c * u(rng);
    const auto em = kin::lorentz_boost_energy_momentum(E, p, boost);
    const double rest2 = m0 * m0 * c * c * c * c;
    EXPECT_NEAR((em.E * em.E - em.p * em.p * c * c) / rest2, 1.0, 1e-10);

    const double x = 10.0 * u(rng);
    const double t = 1e-2 * u(rng);
    const auto ev = kin::lorentz_boost_event(x, t, boost);
    const double phase = p * x - E * t;
    const double phase_boosted = em.p * ev.x - em.E * ev.t;
    EXPECT_NEAR(phase_boosted, phase, 1e-10 * (std::abs(p * x) + std::abs(E * t)));

    const auto back = kin::lorentz_boost_energy_momentum(em.E, em.p, -boost);
    EXPECT_NEAR(back.E, E, 1e-10 * E);
    EXPECT_NEAR(back.p, p, 1e-10 * E / c);
  }
}

TEST(DeBroglie, GroupVelocityConditionYieldsMomentumOverHbar) {
  const auto d = kin::derive_de_broglie(1.0, 0.6 * c);
  EXPECT_NEAR(d.k, 0.75 * c, 1e-10 * c);
  EXPECT_TRUE(d.matches_p_over_hbar);

  const auto slow = kin::derive_de_broglie(1.0, 1e-8 * c);
  EXPECT_LT(slow.k, 1e-7 * c);
  EXPECT_GT(slow.k, 0.0);

  for (int i = 1; i <= 19; ++i) {
    const double v = 0.05 * i * c;
    const auto r = kin::derive_de_broglie(1.0, v);
    // Independent oracle: p = gamma m0 v evaluated directly.
    const double beta = 0.05 * i;
    const double k_oracle = v / std::sqrt(1.0 - beta * beta);
    EXPECT_NEAR(r.k, k_oracle, 1e-9 * k_oracle) << "beta " << beta;
    EXPECT_LT(r.group_velocity_mismatch, 1e-9 * v);
  }
}

TEST(DeBroglie, NegativeVelocityAndDomain) {
  const auto d = kin::derive_de_broglie(1.0, -0.3 * c);
  EXPECT_LT(d.k, 0.0);
  EXPECT_TRUE(d.matches_p_over_hbar);
  EXPECT_THROW(kin::derive_de_broglie(1.0, 0.0), rsse::DomainError);
  EXPECT_THROW(kin::derive_de_broglie(0.0, 0.1 * c), rsse::DomainError);
  EXPECT_THROW(kin::derive_de_broglie(1.0, 1.5 * c), rsse::DomainError);
}

}  // namespace
