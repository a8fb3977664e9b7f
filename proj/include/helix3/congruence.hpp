#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/helix.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

/// Orthogonal map of R⁴; its restriction to S³ is an isometry.
struct Isometry4 {
  Mat4 G = Mat4::identity();
};

inline constexpr double kSpectrumMatchTol = 1e-10;

namespace detail {

// Normalized coefficient directions that pin down the curve: all four for
// τ > 0, (A₁, A₂, B₂) for the τ = 0 circle, (A₂, B₂) for a great circle.
inline std::vector<Vec4> coefficient_directions(const LissajousForm& f) {
  const HelixParams& p = f.spectrum.params;
  std::vector<Vec4> dirs;
  auto push = [&](const Vec4& v) { dirs.push_back(UnitVec4::normalized(v).vec()); };
  if (p.tau > 0.0) {
    push(f.A1);
    push(f.B1);
  } else if (p.kappa > 0.0) {
    push(f.A1);
  }
  push(f.A2);
  push(f.B2);
  return dirs;
}

}  // namespace detail

/// Builds G ∈ O(4) with b(t) = G·a(t) for two helices of equal (κ, τ).
///
/// G sends each normalized coefficient vector of `a` to the matching one of
/// `b`, cos-axis to cos-axis, which fixes the phase at t = 0. Directions the
/// curve leaves free are matched through basis completion.
inline Isometry4 congruence_between(const LissajousForm& a, const LissajousForm& b) {
  if (std::abs(a.spectrum.omega1 - b.spectrum.omega1) > kSpectrumMatchTol ||
      std::abs(a.spectrum.omega2 - b.spectrum.omega2) > kSpectrumMatchTol) {
    throw Error(ErrorCode::SpectrumMismatch, "helices have different frequencies");
  }
  const std::vector<Vec4> da = detail::coefficient_directions(a);
  const std::vector<Vec4> db = detail::coefficient_directions(b);
  const Mat4 ua = complete_basis(da);
  const Mat4 ub = complete_basis(db);
  return {transpose(ub) * ua};
}

struct CongruenceResidual {
  double max_residual = 0.0;
  std::size_t samples = 0;
  bool empty = true;
};

/// max over n random t ∈ [−t_range, t_range] of |G·a(t) − b(t)|.
inline CongruenceResidual verify_congruence(const LissajousForm& a, const LissajousForm& b,
                                            const Isometry4& g, std::size_t n_samples,
                                            std::uint64_t seed = 0x5eed, double t_range = 100.0) {
  CongruenceResidual r;
  r.samples = n_samples;
  r.empty = n_samples == 0;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-t_range, t_range);
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = dist(rng);
    r.max_residual = std::max(r.max_residual, norm(g.G * evaluate(a, t) - evaluate(b, t)));
  }
  return r;
}

}  // namespace helix3
