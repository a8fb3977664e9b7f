#pragma once

#include <cmath>
#include <cstdint>

#include "helix3/error.hpp"
#include "helix3/helix.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

/// Skew-symmetric coefficient matrix of the augmented Frenet system X′ = C·X,
/// with X holding (γ, T, N, B) in its rows:
///
///   γ′ = T,  T′ = −γ + κN,  N′ = −κT + τB,  B′ = −τN.
struct FrenetMatrix {
  Mat4 C;
  Spectrum spectrum;
};

inline FrenetMatrix frenet_matrix(const HelixParams& p) {
  const Spectrum s = spectrum_of(p);
  Mat4 c = Mat4::zero();
  c[0][1] = 1.0;
  c[1][0] = -1.0;
  c[1][2] = p.kappa;
  c[2][1] = -p.kappa;
  c[2][3] = p.tau;
  c[3][2] = -p.tau;
  return {c, s};
}

/// Frame (γ, T, N, B) in the rows of X at arc length t.
struct FrameState {
  double t = 0.0;
  Mat4 X = Mat4::identity();
};

inline void validate(const FrameState& s, double tol = kOrthoTol) {
  if (!std::isfinite(s.t)) throw Error(ErrorCode::InvalidFrame, "non-finite time");
  for (const auto& row : s.X.rows) {
    if (!is_finite(row)) throw Error(ErrorCode::InvalidFrame, "non-finite frame entry");
  }
  if (orthogonality_error(s.X) > tol) {
    throw Error(ErrorCode::InvalidFrame, "frame is not orthogonal");
  }
}

namespace detail {

inline double sin_over(double w, double t) {
  return w == 0.0 ? t : std::sin(w * t) / w;
}

/// e^{A} by scaling and squaring with a truncated Taylor series.
inline Mat4 expm_taylor(const Mat4& a) {
  const double nrm = 4.0 * max_abs(a);
  int squarings = 0;
  double scale = 1.0;
  while (nrm * scale > 0.25) {
    scale *= 0.5;
    ++squarings;
  }
  const Mat4 x = a * scale;
  Mat4 term = Mat4::identity();
  Mat4 sum = Mat4::identity();
  for (int k = 1; k <= 20; ++k) {
    term = term * x * (1.0 / k);
    sum += term;
  }
  for (int i = 0; i < squarings; ++i) sum = sum * sum;
  return sum;
}

}  // namespace detail

/// Below this value of ω₂² − ω₁² the two invariant planes are not separated
/// reliably and exp_tC switches to scaling and squaring.
inline constexpr double kPlaneSplitMinGap = 1e-8;

/// e^{tC} in closed form.
///
/// C² has eigenvalue −ω₁² on one invariant plane and −ω₂² on the other, so
/// P₁ = (C² + ω₂²I)/(ω₂² − ω₁²) and P₂ = I − P₁ are the orthogonal projectors
/// onto those planes, and on each plane C generates a rotation at rate ωᵢ:
///
///   e^{tC} = Σᵢ cos(ωᵢt)Pᵢ + (sin(ωᵢt)/ωᵢ)·C·Pᵢ.
inline Mat4 exp_tC(const FrenetMatrix& m, double t) {
  const Spectrum& s = m.spectrum;
  if (s.gap2 < kPlaneSplitMinGap) return detail::expm_taylor(m.C * t);
  const Mat4 c2 = m.C * m.C;
  const Mat4 p1 = (c2 + s.omega2 * s.omega2 * Mat4::identity()) * (1.0 / s.gap2);
  const Mat4 p2 = Mat4::identity() - p1;
  const Mat4 cp1 = m.C * p1;
  const Mat4 cp2 = m.C * p2;
  return std::cos(s.omega1 * t) * p1 + detail::sin_over(s.omega1, t) * cp1 +
         std::cos(s.omega2 * t) * p2 + detail::sin_over(s.omega2, t) * cp2;
}

/// Frame after arc length t: X(t₀ + t) = e^{tC}·X(t₀).
inline FrameState evolve(const HelixParams& p, const FrameState& x0, double t) {
  validate(x0);
  const FrenetMatrix m = frenet_matrix(p);
  return {x0.t + t, exp_tC(m, t) * x0.X};
}

struct ReferenceResult {
  FrameState state;
  /// Number of times the integrator pulled X back onto O(4).
  std::int64_t reorthogonalizations = 0;
};

/// Drift threshold that triggers a Gram–Schmidt pass in reference_integrate.
inline constexpr double kReferenceDriftTol = 1e-8;

/// Classical fourth-order Runge–Kutta on X′ = C·X with `steps` equal steps.
/// Independent of exp_tC; used as its oracle.
inline ReferenceResult reference_integrate(const HelixParams& p, const FrameState& x0,
                                           double t, std::int64_t steps) {
  validate(x0);
  if (steps < 1) throw Error(ErrorCode::InvalidParams, "steps must be >= 1");
  const Mat4 c = frenet_matrix(p).C;
  const double h = t / static_cast<double>(steps);
  Mat4 x = x0.X;
  ReferenceResult out;
  for (std::int64_t i = 0; i < steps; ++i) {
    const Mat4 k1 = c * x;
    const Mat4 k2 = c * (x + (0.5 * h) * k1);
    const Mat4 k3 = c * (x + (0.5 * h) * k2);
    const Mat4 k4 = c * (x + h * k3);
    x += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (orthogonality_error(x) > kReferenceDriftTol) {
      x = gram_schmidt4(x);
      ++out.reorthogonalizations;
    }
  }
  out.state = {x0.t + t, x};
  return out;
}

}  // namespace helix3
