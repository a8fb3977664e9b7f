#pragma once

#include <cmath>
#include <string>
#include <utility>

#include "helix3/error.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

/// Constant curvature and torsion of a helix in S³.
///
/// Admissible pairs have κ ≥ 0, τ ≥ 0, and τ = 0 whenever κ = 0. A geodesic
/// (κ = 0) has no principal normal, so a positive torsion is meaningless.
struct HelixParams {
  double kappa = 0.0;
  double tau = 0.0;
};

inline void validate(const HelixParams& p) {
  if (!std::isfinite(p.kappa) || !std::isfinite(p.tau)) {
    throw Error(ErrorCode::InvalidParams, "curvature and torsion must be finite");
  }
  if (p.kappa < 0.0 || p.tau < 0.0) {
    throw Error(ErrorCode::InvalidParams, "curvature and torsion must be non-negative");
  }
  if (p.kappa == 0.0 && p.tau != 0.0) {
    throw Error(ErrorCode::InvalidParams,
                "zero curvature requires zero torsion (a helix with kappa = 0 is a "
                "geodesic and its torsion is taken to be 0)");
  }
}

/// Fundamental angular frequencies ω₁ < ω₂ of a helix together with χ².
struct Spectrum {
  double omega1 = 0.0;
  double omega2 = 1.0;
  double chi2 = 1.0;
  HelixParams params{};
  /// ω₂² − ω₁² = sqrt(χ⁴ − 4τ²), kept separately to avoid cancellation.
  double gap2 = 1.0;
};

/// Solves ω⁴ − χ²ω² + τ² = 0 for the two non-negative roots.
///
/// The discriminant is expanded as κ⁴ + (τ² − 1)² + 2κ²τ² + 2κ², a sum of
/// non-negative terms, and ω₁² is taken from 2τ²/(χ² + sqrt(disc)) so that
/// small τ does not lose digits.
inline Spectrum spectrum_of(const HelixParams& p) {
  validate(p);
  const double k2 = p.kappa * p.kappa;
  const double t2 = p.tau * p.tau;
  const double chi2 = k2 + t2 + 1.0;
  const double disc = k2 * k2 + (t2 - 1.0) * (t2 - 1.0) + 2.0 * k2 * t2 + 2.0 * k2;
  const double root = std::sqrt(disc);
  const double w2sq = 0.5 * (chi2 + root);
  const double w1sq = 2.0 * t2 / (chi2 + root);
  if (!(root > 0.0)) {
    // Only κ = 0, τ = 1 reaches this, which validate() already rejects.
    throw Error(ErrorCode::InvalidParams, "repeated frequency");
  }
  return Spectrum{std::sqrt(w1sq), std::sqrt(w2sq), chi2, p, root};
}

/// γ(t) = cos(ω₁t)A₁ + sin(ω₁t)B₁ + cos(ω₂t)A₂ + sin(ω₂t)B₂.
struct LissajousForm {
  Spectrum spectrum;
  Vec4 A1, B1, A2, B2;
};

/// Squared radii (|A₁|², |A₂|²) of the two circular motions.
inline std::pair<double, double> coefficient_magnitudes2(const Spectrum& s) {
  const double w1sq = s.omega1 * s.omega1;
  const double w2sq = s.omega2 * s.omega2;
  // (1 − ω₂²)/(ω₁² − ω₂²) and (1 − ω₁²)/(ω₂² − ω₁²), with the difference
  // replaced by its cancellation-free value.
  return {(w2sq - 1.0) / s.gap2, (1.0 - w1sq) / s.gap2};
}

/// The canonical helix with A₁ ∥ e1, B₁ ∥ e2, A₂ ∥ e3, B₂ ∥ e4.
///
/// For τ = 0 the slow motion degenerates to the fixed offset A₁ and B₁ = 0;
/// the same magnitude formulas then give |A₂| = 1/ω and |A₁|² = 1 − 1/ω².
inline LissajousForm construct_canonical(const HelixParams& p) {
  const Spectrum s = spectrum_of(p);
  const auto [a1sq, a2sq] = coefficient_magnitudes2(s);
  const double r1 = std::sqrt(std::max(a1sq, 0.0));
  const double r2 = std::sqrt(std::max(a2sq, 0.0));
  LissajousForm f{s, r1 * e1, r1 * e2, r2 * e3, r2 * e4};
  if (p.tau == 0.0) f.B1 = Vec4::zero();
  return f;
}

inline Vec4 evaluate(const LissajousForm& f, double t) {
  const double w1 = f.spectrum.omega1, w2 = f.spectrum.omega2;
  return std::cos(w1 * t) * f.A1 + std::sin(w1 * t) * f.B1 + std::cos(w2 * t) * f.A2 +
         std::sin(w2 * t) * f.B2;
}

namespace detail {

// d^k/dt^k [cos(ωt)A + sin(ωt)B] = ω^k [cos(ωt + kπ/2)A + sin(ωt + kπ/2)B].
inline Vec4 circle_derivative(double w, double t, int order, const Vec4& A, const Vec4& B) {
  const double c = std::cos(w * t), s = std::sin(w * t);
  const double wk = std::pow(w, order);
  switch (order & 3) {
    case 0: return wk * (c * A + s * B);
    case 1: return wk * (-s * A + c * B);
    case 2: return wk * (-c * A - s * B);
    default: return wk * (s * A - c * B);
  }
}

}  // namespace detail

/// Exact term-by-term derivative of the Lissajous form, order in 1..3.
inline Vec4 evaluate_derivatives(const LissajousForm& f, double t, int order) {
  if (order < 1 || order > 3) {
    throw Error(ErrorCode::InvalidParams, "derivative order must be 1, 2 or 3");
  }
  return detail::circle_derivative(f.spectrum.omega1, t, order, f.A1, f.B1) +
         detail::circle_derivative(f.spectrum.omega2, t, order, f.A2, f.B2);
}

/// Frenet frame of a helix form at t, rows (γ, T, N, B).
///
/// T = γ′, N = (γ″ + γ)/κ, B = (N′ + κT)/τ. Directions the curve does not
/// determine (N for κ = 0, B for τ = 0) are filled by basis completion.
inline Mat4 frenet_frame(const LissajousForm& f, double t) {
  const double kappa = f.spectrum.params.kappa;
  const double tau = f.spectrum.params.tau;
  const Vec4 g = evaluate(f, t);
  const Vec4 d1 = evaluate_derivatives(f, t, 1);
  if (kappa == 0.0) {
    const std::array<Vec4, 2> prefix{g, d1};
    return complete_basis(prefix);
  }
  const Vec4 d2 = evaluate_derivatives(f, t, 2);
  const Vec4 n = (d2 + g) / kappa;
  if (tau == 0.0) {
    const std::array<Vec4, 3> prefix{g, d1, n};
    return complete_basis(prefix);
  }
  const Vec4 d3 = evaluate_derivatives(f, t, 3);
  const Vec4 dn = (d3 + d1) / kappa;
  const Vec4 b = (dn + kappa * d1) / tau;
  return Mat4{{g, d1, n, b}};
}

/// Applies G to every coefficient vector (the image curve is G·γ).
inline LissajousForm transform(const Mat4& g, const LissajousForm& f) {
  return {f.spectrum, g * f.A1, g * f.B1, g * f.A2, g * f.B2};
}

}  // namespace helix3
