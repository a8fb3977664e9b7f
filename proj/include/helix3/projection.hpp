#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/samples.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

struct ProjectionSpec {
  Vec4 pole = e4;
  double min_pole_distance = 1e-2;
};

/// A stereographically projected point; x4_color keeps the ambient x₄ of the
/// source point for downstream coloring.
struct Projected3 {
  double t = 0.0;
  double y1 = 0.0, y2 = 0.0, y3 = 0.0;
  double x4_color = 0.0;
};

/// Householder reflection sending `pole` to e4 (identity when pole = e4).
inline Mat4 pole_to_e4(const Vec4& pole) {
  const Vec4 v = pole - e4;
  const double vv = dot(v, v);
  if (vv < 1e-30) return Mat4::identity();
  Mat4 h = Mat4::identity();
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) h[i][j] -= 2.0 * v[i] * v[j] / vv;
  return h;
}

/// σ(x) = (x₁, x₂, x₃)/(1 − x₄) after moving the pole to e4.
inline Projected3 stereographic(const ProjectionSpec& spec, const Vec4& x, double t = 0.0) {
  if (std::abs(norm(spec.pole) - 1.0) > kIdentityTol) {
    throw Error(ErrorCode::InvalidParams, "projection pole is not on the unit sphere");
  }
  if (norm(x - spec.pole) < spec.min_pole_distance) {
    throw Error(ErrorCode::NearPole, "point is within min_pole_distance of the pole");
  }
  const Vec4 r = spec.pole == e4 ? x : pole_to_e4(spec.pole) * x;
  const double denom = 1.0 - r[3];
  return {t, r[0] / denom, r[1] / denom, r[2] / denom, x[3]};
}

inline std::vector<Projected3> project_samples(const ProjectionSpec& spec,
                                               const CurveSamples& s) {
  std::vector<Projected3> out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    out.push_back(stereographic(spec, s.points[i], s.time(i)));
  }
  return out;
}

inline constexpr int kRandomPoleCandidates = 1000;

/// Picks a pole at distance ≥ margin from every sample: ±e4, ±e1, ±e2, ±e3 in
/// that order, then seeded random points of S³.
inline ProjectionSpec choose_pole(const CurveSamples& s, double margin = 1e-2,
                                  std::uint64_t seed = 0) {
  if (s.size() == 0) throw Error(ErrorCode::InvalidParams, "no samples to avoid");
  auto clear_of_curve = [&](const Vec4& pole) {
    for (const Vec4& p : s.points)
      if (norm(p - pole) < margin) return false;
    return true;
  };
  const std::array<Vec4, 8> axes{e4, -e4, e1, -e1, e2, -e2, e3, -e3};
  for (const Vec4& pole : axes)
    if (clear_of_curve(pole)) return {pole, margin};
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss;
  for (int i = 0; i < kRandomPoleCandidates; ++i) {
    Vec4 v{gauss(rng), gauss(rng), gauss(rng), gauss(rng)};
    const double n = norm(v);
    if (n < 1e-12) continue;
    v = v / n;
    if (clear_of_curve(v)) return {v, margin};
  }
  throw Error(ErrorCode::NoPoleFound, "every candidate pole is too close to the curve");
}

}  // namespace helix3
