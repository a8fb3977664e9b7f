#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/frenet.hpp"
#include "helix3/helix.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

/// Curve points at t = t0 + i·dt, optionally with Frenet frames (rows γ, T, N, B).
struct CurveSamples {
  double t0 = 0.0;
  double dt = 1e-3;
  std::vector<Vec4> points;
  std::optional<std::vector<Mat4>> frames;

  std::size_t size() const { return points.size(); }
  double time(std::size_t i) const { return t0 + static_cast<double>(i) * dt; }
  bool has_frames() const { return frames.has_value(); }
};

inline constexpr double kSamplesOnSphereTol = 1e-10;
inline constexpr double kChordRelTol = 0.05;

/// Checks the on-sphere and arc-length invariants, throwing FormatError.
inline void validate(const CurveSamples& s) {
  if (!(s.dt > 0.0) || !std::isfinite(s.dt) || !std::isfinite(s.t0)) {
    throw Error(ErrorCode::FormatError, "sample spacing must be positive and finite");
  }
  if (s.frames && s.frames->size() != s.points.size()) {
    throw Error(ErrorCode::FormatError, "frame count does not match point count");
  }
  for (std::size_t i = 0; i < s.size(); ++i) {
    const Vec4& p = s.points[i];
    if (!is_finite(p) || std::abs(norm(p) - 1.0) > kSamplesOnSphereTol) {
      throw Error(ErrorCode::FormatError,
                  "sample " + std::to_string(i) + " is not on the unit sphere");
    }
    if (i > 0) {
      const double chord = norm(p - s.points[i - 1]);
      if (std::abs(chord - s.dt) > kChordRelTol * s.dt) {
        throw Error(ErrorCode::FormatError, "sample " + std::to_string(i) +
                                                " breaks arc-length spacing");
      }
    }
  }
}

/// Samples a Lissajous form at n points starting from t0.
inline CurveSamples sample_form(const LissajousForm& f, double t0, double dt, std::size_t n,
                                bool with_frames = false) {
  CurveSamples s{t0, dt, {}, std::nullopt};
  s.points.reserve(n);
  if (with_frames) s.frames.emplace().reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = s.time(i);
    s.points.push_back(evaluate(f, t));
    if (with_frames) s.frames->push_back(frenet_frame(f, t));
  }
  return s;
}

/// Samples the ODE solution X(t) = e^{(t − x0.t)C}·X0 at n points from x0.t.
inline CurveSamples sample_evolve(const HelixParams& p, const FrameState& x0, double dt,
                                  std::size_t n) {
  validate(x0);
  const FrenetMatrix m = frenet_matrix(p);
  CurveSamples s{x0.t, dt, {}, std::vector<Mat4>{}};
  s.points.reserve(n);
  s.frames->reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Mat4 x = exp_tC(m, static_cast<double>(i) * dt) * x0.X;
    s.points.push_back(x[0]);
    s.frames->push_back(x);
  }
  return s;
}

}  // namespace helix3
