#include <gtest/gtest.h>

#include <random>

#include "helix3/congruence.hpp"
#include "helix3/curve_oracle.hpp"
#include "helix3/samples.hpp"
#include "test_support.hpp"

using namespace helix3;
using helix3::fixtures::irrational_params;
using helix3::fixtures::three_twentieths_params;
using helix3::fixtures::random_orthogonal;
using helix3::fixtures::random_params;

TEST(Congruence, SelfMapIsIdentity) {
  for (const HelixParams p : {irrational_params(), three_twentieths_params()}) {
    const LissajousForm f = construct_canonical(p);
    const Isometry4 g = congruence_between(f, f);
    EXPECT_LE(max_abs(g.G - Mat4::identity()), 1e-12);
    EXPECT_LE(verify_congruence(f, f, g, 200).max_residual, 1e-12);
  }
}

TEST(Congruence, RecoversRandomOrthogonalImages) {
  std::mt19937_64 rng(2024);
  for (int i = 0; i < 100; ++i) {
    const HelixParams p = random_params(rng, 5.0);
    const LissajousForm a = construct_canonical(p);
    const LissajousForm b = transform(random_orthogonal(rng), a);
    const Isometry4 g = congruence_between(a, b);
    EXPECT_TRUE(is_orthogonal(g.G, 1e-12));
    EXPECT_LE(verify_congruence(a, b, g, 1000).max_residual, 1e-10) << p.kappa << "," << p.tau;
  }
}

TEST(Congruence, DegenerateFamilies) {
  std::mt19937_64 rng(9);
  for (const HelixParams p : {HelixParams{1.0, 0.0}, HelixParams{0.3, 0.0}, HelixParams{0.0, 0.0}}) {
    const LissajousForm a = construct_canonical(p);
    for (int i = 0; i < 10; ++i) {
      const LissajousForm b = transform(random_orthogonal(rng), a);
      const Isometry4 g = congruence_between(a, b);
      EXPECT_TRUE(is_orthogonal(g.G, 1e-12));
      EXPECT_LE(verify_congruence(a, b, g, 500).max_residual, 1e-10);
    }
  }
}

TEST(Congruence, DifferentSpectraAreRejected) {
  try {
    congruence_between(construct_canonical(irrational_params()), construct_canonical(three_twentieths_params()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpectrumMismatch);
  }
}

TEST(Congruence, WrongMapHasOrderOneResidual) {
  std::mt19937_64 rng(77);
  const LissajousForm a = construct_canonical(irrational_params());
  const LissajousForm b = transform(random_orthogonal(rng), a);
  EXPECT_GT(verify_congruence(a, b, Isometry4{}, 200).max_residual, 0.1);
}

TEST(Congruence, ZeroSamplesGiveEmptyReport) {
  const LissajousForm a = construct_canonical(three_twentieths_params());
  const CongruenceResidual r = verify_congruence(a, a, Isometry4{}, 0);
  EXPECT_TRUE(r.empty);
  EXPECT_EQ(r.samples, 0u);
  EXPECT_EQ(r.max_residual, 0.0);
}

TEST(Congruence, Composes) {
  std::mt19937_64 rng(31);
  const LissajousForm a = construct_canonical(three_twentieths_params());
  const LissajousForm b = transform(random_orthogonal(rng), a);
  const LissajousForm c = transform(random_orthogonal(rng), b);
  const Mat4 gab = congruence_between(a, b).G;
  const Mat4 gbc = congruence_between(b, c).G;
  const Mat4 gac = congruence_between(a, c).G;
  EXPECT_LE(max_abs(gbc * gab - gac), 1e-10);
}

TEST(Congruence, ImagesHaveTheSameEstimatedInvariants) {
  std::mt19937_64 rng(5);
  const LissajousForm a = construct_canonical(irrational_params());
  const LissajousForm b = transform(random_orthogonal(rng), a);
  const FrenetEstimate ea = estimate_kappa_tau(sample_form(a, 0.0, 1e-2, 401, false));
  const FrenetEstimate eb = estimate_kappa_tau(sample_form(b, 0.0, 1e-2, 401, false));
  EXPECT_NEAR(ea.kappa_hat, eb.kappa_hat, 1e-9);
  EXPECT_NEAR(ea.tau_hat, eb.tau_hat, 1e-8);
}
