#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "helix3/helix.hpp"
#include "test_support.hpp"

using namespace helix3;
using helix3::fixtures::irrational_params;
using helix3::fixtures::three_twentieths_params;

TEST(Spectrum, ExampleParameters) {
  const Spectrum s1 = spectrum_of(irrational_params());
  EXPECT_NEAR(s1.omega1, 0.5, 1e-12);
  EXPECT_NEAR(s1.omega2, std::sqrt(29.0) / 2.0, 1e-12);
  const Spectrum s2 = spectrum_of(three_twentieths_params());
  EXPECT_NEAR(s2.omega1, 0.25, 1e-12);
  EXPECT_NEAR(s2.omega2, 5.0 / 3.0, 1e-12);
}

TEST(Spectrum, DegenerateCases) {
  const Spectrum g = spectrum_of({0.0, 0.0});
  EXPECT_EQ(g.omega1, 0.0);
  EXPECT_EQ(g.omega2, 1.0);
  const Spectrum c = spectrum_of({1.0, 0.0});
  EXPECT_EQ(c.omega1, 0.0);
  EXPECT_NEAR(c.omega2, std::sqrt(2.0), 1e-15);
}

TEST(Spectrum, RejectsInadmissibleParams) {
  for (HelixParams p : {HelixParams{0.0, 0.5}, HelixParams{-1.0, 0.0}, HelixParams{1.0, -0.1},
                        HelixParams{std::nan(""), 0.0}}) {
    try {
      spectrum_of(p);
      FAIL() << "expected InvalidParams";
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::InvalidParams);
    }
  }
  try {
    spectrum_of({0.0, 0.5});
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("zero curvature requires zero torsion"),
              std::string::npos);
  }
}

TEST(Spectrum, CharacteristicIdentityAndVieta) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 2000; ++i) {
    const HelixParams p = fixtures::random_params(rng);
    const Spectrum s = spectrum_of(p);
    for (double w : {s.omega1, s.omega2}) {
      const double w2 = w * w;
      EXPECT_LE(std::abs(w2 * w2 - s.chi2 * w2 + p.tau * p.tau), 1e-10);
    }
    EXPECT_GT(s.omega2, 1.0);
    EXPECT_LT(s.omega1, 1.0);
    EXPECT_GT(s.omega2, s.omega1);
  }
}

TEST(Spectrum, SmallTorsionKeepsRelativeAccuracy) {
  // ω₁ ≈ τ/χ for τ ≪ 1; the naive difference formula loses every digit here.
  const Spectrum s = spectrum_of({1.0, 1e-9});
  EXPECT_NEAR(s.omega1 / (1e-9 / std::sqrt(2.0)), 1.0, 1e-9);
}

TEST(Canonical, IrrationalExampleMagnitudes) {
  const LissajousForm f = construct_canonical(irrational_params());
  EXPECT_NEAR(dot(f.A1, f.A1), 25.0 / 28.0, 1e-12);
  EXPECT_NEAR(dot(f.A2, f.A2), 3.0 / 28.0, 1e-12);
  EXPECT_NEAR(dot(f.A1, f.A1) + dot(f.A2, f.A2), 1.0, 1e-12);
  EXPECT_EQ(f.A1[1], 0.0);
  EXPECT_GT(f.A1[0], 0.0);
  EXPECT_GT(f.B1[1], 0.0);
  EXPECT_GT(f.A2[2], 0.0);
  EXPECT_GT(f.B2[3], 0.0);
}

TEST(Canonical, GreatCircleAndCircle) {
  const LissajousForm g = construct_canonical({0.0, 0.0});
  EXPECT_EQ(norm(g.A1), 0.0);
  EXPECT_NEAR(norm(g.A2), 1.0, 1e-15);
  EXPECT_NEAR(norm(g.B2), 1.0, 1e-15);

  const LissajousForm c = construct_canonical({1.0, 0.0});
  EXPECT_NEAR(norm(c.A2), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(norm(c.B2), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(norm(c.A1), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(c.B1, Vec4::zero());
  // Magnitude relations for the τ = 0 circle.
  EXPECT_EQ(dot(c.A1, c.A2), 0.0);
  EXPECT_EQ(dot(c.A1, c.B2), 0.0);
  EXPECT_EQ(dot(c.A2, c.B2), 0.0);
}

TEST(Evaluate, BasicValues) {
  const LissajousForm f = construct_canonical(irrational_params());
  EXPECT_EQ(evaluate(f, 0.0), f.A1 + f.A2);
  const LissajousForm g = construct_canonical({0.0, 0.0});
  EXPECT_LE(max_abs(evaluate(g, std::numbers::pi / 2) - e4), 1e-15);
}

TEST(Evaluate, ThreeTwentiethsRepeatsAfter24Pi) {
  const LissajousForm f = construct_canonical(three_twentieths_params());
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, 100.0);
  for (int i = 0; i < 100; ++i) {
    const double t = u(rng);
    EXPECT_LE(max_abs(evaluate(f, t + 24.0 * std::numbers::pi) - evaluate(f, t)), 1e-9);
  }
}

TEST(Derivatives, UnitSpeedAndAcceleration) {
  const LissajousForm g = construct_canonical({0.0, 0.0});
  EXPECT_LE(max_abs(evaluate_derivatives(g, 0.0, 1) - e4), 1e-15);

  const LissajousForm f = construct_canonical(irrational_params());
  EXPECT_NEAR(dot(evaluate_derivatives(f, 0.0, 2), evaluate_derivatives(f, 0.0, 2)),
              91.0 / 16.0, 1e-12);
  EXPECT_THROW(evaluate_derivatives(f, 0.0, 0), Error);
  EXPECT_THROW(evaluate_derivatives(f, 0.0, 4), Error);
}

TEST(Derivatives, MatchFiniteDifferences) {
  const LissajousForm f = construct_canonical(three_twentieths_params());
  const double h = 1e-4;
  for (double t : {0.0, 0.7, 13.1}) {
    for (int k = 1; k <= 3; ++k) {
      auto lower = [&](double s) { return k == 1 ? evaluate(f, s) : evaluate_derivatives(f, s, k - 1); };
      const Vec4 fd = (lower(t + h) - lower(t - h)) / (2.0 * h);
      EXPECT_LE(max_abs(fd - evaluate_derivatives(f, t, k)), 1e-7) << "order " << k;
    }
  }
}

TEST(Canonical, SphereAndSpeedOverLongSpan) {
  for (const HelixParams p : {irrational_params(), three_twentieths_params(), HelixParams{1.0, 0.0},
                              HelixParams{0.0, 0.0}, HelixParams{3.0, 7.0}}) {
    const LissajousForm f = construct_canonical(p);
    for (int i = 0; i < 1000; ++i) {
      const double t = 0.1 * i;
      EXPECT_LE(std::abs(norm(evaluate(f, t)) - 1.0), 1e-10);
      EXPECT_LE(std::abs(norm(evaluate_derivatives(f, t, 1)) - 1.0), 1e-10);
    }
  }
}

TEST(Canonical, CoefficientStructureRandomParams) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 1000; ++i) {
    const LissajousForm f = construct_canonical(fixtures::random_params(rng));
    const Vec4 v[4] = {f.A1, f.B1, f.A2, f.B2};
    for (int a = 0; a < 4; ++a)
      for (int b = a + 1; b < 4; ++b) EXPECT_LE(std::abs(dot(v[a], v[b])), 1e-12);
    EXPECT_NEAR(norm(f.A1), norm(f.B1), 1e-12);
    EXPECT_NEAR(norm(f.A2), norm(f.B2), 1e-12);
    EXPECT_NEAR(dot(f.A1, f.A1) + dot(f.A2, f.A2), 1.0, 1e-12);
  }
}

TEST(FrenetFrame, OrthogonalAndConsistent) {
  for (const HelixParams p : {irrational_params(), three_twentieths_params(), HelixParams{1.0, 0.0},
                              HelixParams{0.0, 0.0}}) {
    const LissajousForm f = construct_canonical(p);
    for (double t : {0.0, 1.3, 55.0}) {
      const Mat4 x = frenet_frame(f, t);
      EXPECT_LT(orthogonality_error(x), 1e-12);
      EXPECT_LE(max_abs(x[0] - evaluate(f, t)), 1e-15);
      EXPECT_LE(max_abs(x[1] - evaluate_derivatives(f, t, 1)), 1e-12);
    }
  }
}
