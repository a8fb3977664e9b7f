#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "helix3/frenet.hpp"
#include "helix3/helix.hpp"
#include "test_support.hpp"

using namespace helix3;
using helix3::fixtures::irrational_params;
using helix3::fixtures::three_twentieths_params;

namespace {

using cd = std::complex<double>;

// det(C − xI) by cofactor expansion, independent of the plane-splitting code.
cd det_shifted(const Mat4& c, cd x) {
  std::array<std::array<cd, 4>, 4> m;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) m[i][j] = c[i][j] - (i == j ? x : cd{0.0});
  auto det3 = [&](int skip_col) {
    int cols[3], k = 0;
    for (int j = 0; j < 4; ++j)
      if (j != skip_col) cols[k++] = j;
    auto a = [&](int r, int cc) { return m[r][cols[cc]]; };
    return a(1, 0) * (a(2, 1) * a(3, 2) - a(2, 2) * a(3, 1)) -
           a(1, 1) * (a(2, 0) * a(3, 2) - a(2, 2) * a(3, 0)) +
           a(1, 2) * (a(2, 0) * a(3, 1) - a(2, 1) * a(3, 0));
  };
  cd d = 0.0;
  for (int j = 0; j < 4; ++j) d += (j % 2 == 0 ? 1.0 : -1.0) * m[0][j] * det3(j);
  return d;
}

}  // namespace

TEST(FrenetMatrix, SparsityPattern) {
  const FrenetMatrix g = frenet_matrix({0.0, 0.0});
  Mat4 expect = Mat4::zero();
  expect[0][1] = 1.0;
  expect[1][0] = -1.0;
  EXPECT_EQ(g.C, expect);

  const FrenetMatrix m = frenet_matrix({1.0, 2.0});
  EXPECT_EQ(m.C[1][2], 1.0);
  EXPECT_EQ(m.C[2][3], 2.0);
  EXPECT_EQ(m.C + transpose(m.C), Mat4::zero());
  EXPECT_THROW(frenet_matrix({0.0, 1.0}), Error);
}

TEST(FrenetMatrix, CharacteristicPolynomial) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 200; ++i) {
    const HelixParams p = fixtures::random_params(rng, 5.0);
    const FrenetMatrix m = frenet_matrix(p);
    const double chi2 = m.spectrum.chi2;
    for (double x : {0.0, 0.5, -1.3, 2.0}) {
      const double poly = x * x * x * x + chi2 * x * x + p.tau * p.tau;
      EXPECT_NEAR(det_shifted(m.C, x).real(), poly, 1e-9 * (1.0 + std::abs(poly)));
    }
    // Eigenvalues ±iω₁, ±iω₂.
    for (double w : {m.spectrum.omega1, m.spectrum.omega2}) {
      EXPECT_LT(std::abs(det_shifted(m.C, cd{0.0, w})), 1e-8);
      EXPECT_LT(std::abs(det_shifted(m.C, cd{0.0, -w})), 1e-8);
    }
  }
}

TEST(ExpTC, IdentityAtZeroAndPlaneRotationForGeodesic) {
  const FrenetMatrix m = frenet_matrix(irrational_params());
  EXPECT_LE(max_abs(exp_tC(m, 0.0) - Mat4::identity()), 1e-15);

  const FrenetMatrix g = frenet_matrix({0.0, 0.0});
  for (double t : {0.3, 1.0, 2.5, -4.0}) {
    Mat4 r = Mat4::identity();
    r[0][0] = std::cos(t);
    r[0][1] = std::sin(t);
    r[1][0] = -std::sin(t);
    r[1][1] = std::cos(t);
    EXPECT_LE(max_abs(exp_tC(g, t) - r), 1e-15);
  }
}

TEST(ExpTC, OrthogonalForRandomArguments) {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> ut(-100.0, 100.0);
  for (int i = 0; i < 500; ++i) {
    const FrenetMatrix m = frenet_matrix(fixtures::random_params(rng));
    EXPECT_LT(orthogonality_error(exp_tC(m, ut(rng))), 1e-11);
  }
}

TEST(ExpTC, GroupProperty) {
  std::mt19937_64 rng(13);
  std::uniform_real_distribution<double> ut(-10.0, 10.0);
  for (int i = 0; i < 300; ++i) {
    const FrenetMatrix m = frenet_matrix(fixtures::random_params(rng));
    const double s = ut(rng), t = ut(rng);
    EXPECT_LE(max_abs(exp_tC(m, s + t) - exp_tC(m, s) * exp_tC(m, t)), 1e-11);
  }
}

TEST(ExpTC, RotationFrequenciesMatchSpectrum) {
  // The trace of a rotation with angles θ₁, θ₂ is 2cos θ₁ + 2cos θ₂.
  const FrenetMatrix m = frenet_matrix(three_twentieths_params());
  for (double t : {0.4, 3.0, 17.0}) {
    const Mat4 e = exp_tC(m, t);
    const double trace = e[0][0] + e[1][1] + e[2][2] + e[3][3];
    EXPECT_NEAR(trace, 2.0 * std::cos(0.25 * t) + 2.0 * std::cos(5.0 / 3.0 * t), 1e-12);
  }
}

TEST(ExpTC, TaylorFallbackAgreesWithClosedForm) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> ut(-20.0, 20.0);
  for (int i = 0; i < 50; ++i) {
    const FrenetMatrix m = frenet_matrix(fixtures::random_params(rng, 3.0));
    const double t = ut(rng);
    EXPECT_LE(max_abs(detail::expm_taylor(m.C * t) - exp_tC(m, t)), 1e-11);
  }
}

TEST(ExpTC, AgreesWithReferenceIntegrator) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 5; ++i) {
    const HelixParams p = fixtures::random_params(rng, 3.0);
    const auto ref = reference_integrate(p, FrameState{}, 3.0, 20000);
    EXPECT_LE(max_abs(ref.state.X - exp_tC(frenet_matrix(p), 3.0)), 1e-11);
  }
  const auto g = reference_integrate({0.0, 0.0}, FrameState{}, std::numbers::pi, 10000);
  EXPECT_LE(max_abs(g.state.X - exp_tC(frenet_matrix({0.0, 0.0}), std::numbers::pi)), 1e-10);
}

TEST(ReferenceIntegrate, FourthOrderConvergence) {
  const HelixParams p = irrational_params();
  const Mat4 exact = exp_tC(frenet_matrix(p), 10.0);
  const double e1 = max_abs(reference_integrate(p, FrameState{}, 10.0, 200).state.X - exact);
  const double e2 = max_abs(reference_integrate(p, FrameState{}, 10.0, 400).state.X - exact);
  const double order = std::log2(e1 / e2);
  EXPECT_NEAR(order, 4.0, 0.2);
}

TEST(ReferenceIntegrate, TrivialAndErrorCases) {
  const auto r = reference_integrate(irrational_params(), FrameState{}, 0.0, 1);
  EXPECT_EQ(r.state.X, Mat4::identity());
  EXPECT_EQ(r.reorthogonalizations, 0);
  EXPECT_THROW(reference_integrate(irrational_params(), FrameState{}, 1.0, 0), Error);
  FrameState bad;
  bad.X[0] = 2.0 * e1;
  try {
    reference_integrate(irrational_params(), bad, 1.0, 10);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidFrame);
  }
}

TEST(ReferenceIntegrate, RecordsReorthogonalization) {
  // A coarse step drifts off O(4) quickly; the integrator must say so.
  const auto r = reference_integrate({5.0, 5.0}, FrameState{}, 50.0, 500);
  EXPECT_GT(r.reorthogonalizations, 0);
  EXPECT_LT(orthogonality_error(r.state.X), 1e-8);
}

TEST(Evolve, BasicExamples) {
  const FrameState x0;
  EXPECT_EQ(evolve(irrational_params(), x0, 0.0).X, Mat4::identity());
  const FrameState half = evolve({0.0, 0.0}, x0, std::numbers::pi);
  EXPECT_LE(max_abs(half.X[0] + e1), 1e-15);
  EXPECT_DOUBLE_EQ(half.t, std::numbers::pi);

  const FrameState closed = evolve(three_twentieths_params(), x0, 24.0 * std::numbers::pi);
  EXPECT_LE(max_abs(closed.X - Mat4::identity()), 1e-9);

  FrameState bad;
  bad.X[1] = e1;
  EXPECT_THROW(evolve(irrational_params(), bad, 1.0), Error);
}

TEST(Evolve, FrameInvariantsHold) {
  std::mt19937_64 rng(6);
  const FrameState x0{0.0, fixtures::random_orthogonal(rng)};
  for (int i = 0; i < 200; ++i) {
    const FrameState x = evolve(irrational_params(), x0, 0.5 * i);
    EXPECT_LT(orthogonality_error(x.X), 1e-10);
    for (int r = 1; r < 4; ++r) EXPECT_LE(std::abs(dot(x.X[r], x.X[0])), 1e-10);
  }
}

TEST(Evolve, AgreesWithClosedFormAfterAligningFrames) {
  for (const HelixParams p : {irrational_params(), three_twentieths_params(), HelixParams{1.0, 0.0},
                              HelixParams{0.0, 0.0}, HelixParams{2.0, 0.3}}) {
    const LissajousForm f = construct_canonical(p);
    const Mat4 align = frenet_frame(f, 0.0);
    double worst = 0.0;
    for (int i = 0; i <= 1000; ++i) {
      const double t = 0.1 * i;
      const Vec4 g = row_times(evolve(p, FrameState{}, t).X[0], align);
      worst = std::max(worst, max_abs(g - evaluate(f, t)));
    }
    EXPECT_LE(worst, 1e-9) << "kappa " << p.kappa << " tau " << p.tau;
  }
}
