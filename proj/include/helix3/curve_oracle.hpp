#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/helix.hpp"
#include "helix3/samples.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

namespace detail {

// Fourth-order central difference (−f₊₂ + 8f₊₁ − 8f₋₁ + f₋₂)/(12h).
inline Vec4 central_diff4(std::span<const Vec4> f, std::size_t i, double h) {
  return (f[i - 2] - f[i + 2] + 8.0 * (f[i + 1] - f[i - 1])) / (12.0 * h);
}

inline double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid), v.end());
  const double hi = v[mid];
  if (v.size() % 2 == 1) return hi;
  const double lo = *std::max_element(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(mid));
  return 0.5 * (lo + hi);
}

}  // namespace detail

/// Covariant derivative D/dt of a vector field along the sampled curve at index i:
/// the ambient derivative (fourth-order central difference) projected onto the
/// tangent space at γ(tᵢ).
inline Vec4 covariant_derivative(const CurveSamples& s, std::span<const Vec4> field,
                                 std::size_t i) {
  if (field.size() != s.size()) {
    throw Error(ErrorCode::IndexOutOfStencil, "field length does not match samples");
  }
  if (i < 2 || i + 2 >= s.size()) {
    throw Error(ErrorCode::IndexOutOfStencil, "index has no room for the 5-point stencil");
  }
  return project_tangent(s.points[i], detail::central_diff4(field, i, s.dt));
}

struct ResidualStats {
  double max = 0.0;
  double mean = 0.0;
};

struct FrenetEstimate {
  double kappa_hat = 0.0;
  double tau_hat = 0.0;
  /// False when the curvature vanished somewhere in the τ window; τ̂ is then 0
  /// by the κ = 0 ⇒ τ = 0 convention.
  bool tau_defined = true;
  /// Deviation of per-sample estimates from the medians.
  ResidualStats kappa_spread;
  ResidualStats tau_spread;
  std::size_t kappa_samples = 0;
  std::size_t tau_samples = 0;
};

inline constexpr double kDegenerateCurvature = 1e-8;
/// Nested 5-point stencils (T, then D/dt T, then D/dt N) need 13 samples.
inline constexpr std::size_t kMinEstimateSamples = 13;

namespace detail {

inline ResidualStats spread(const std::vector<double>& v, double center) {
  ResidualStats r;
  if (v.empty()) return r;
  double sum = 0.0;
  for (double x : v) {
    const double d = std::abs(x - center);
    r.max = std::max(r.max, d);
    sum += d;
  }
  r.mean = sum / static_cast<double>(v.size());
  return r;
}

}  // namespace detail

/// Estimates curvature and torsion from raw points using
/// κ = |D/dt T|, N = D/dt T / κ, τ = |D/dt N + κT|, aggregated by median.
inline FrenetEstimate estimate_kappa_tau(const CurveSamples& s) {
  const std::size_t n = s.size();
  if (n < kMinEstimateSamples) {
    throw Error(ErrorCode::InsufficientSamples,
                "estimate_kappa_tau needs at least 13 samples");
  }
  std::vector<Vec4> tangent(n), normal(n);
  for (std::size_t i = 2; i + 2 < n; ++i) {
    tangent[i] = detail::central_diff4(s.points, i, s.dt);
  }
  std::vector<double> kappa_at(n, 0.0);
  std::vector<double> kappas, taus;
  FrenetEstimate est;
  for (std::size_t i = 4; i + 4 < n; ++i) {
    const Vec4 dT = covariant_derivative(s, tangent, i);
    kappa_at[i] = norm(dT);
    kappas.push_back(kappa_at[i]);
    normal[i] = kappa_at[i] > kDegenerateCurvature ? dT / kappa_at[i] : Vec4::zero();
  }
  for (std::size_t i = 6; i + 6 < n; ++i) {
    if (kappa_at[i] <= kDegenerateCurvature) {
      est.tau_defined = false;
      continue;
    }
    const Vec4 dN = covariant_derivative(s, normal, i);
    taus.push_back(norm(dN + kappa_at[i] * tangent[i]));
  }
  // A neighbour inside the stencil with vanishing curvature poisons N there too.
  for (std::size_t i = 4; i + 4 < n; ++i) {
    if (kappa_at[i] <= kDegenerateCurvature) est.tau_defined = false;
  }
  est.kappa_hat = detail::median(kappas);
  est.kappa_samples = kappas.size();
  est.kappa_spread = detail::spread(kappas, est.kappa_hat);
  if (est.tau_defined) {
    est.tau_hat = detail::median(taus);
    est.tau_samples = taus.size();
    est.tau_spread = detail::spread(taus, est.tau_hat);
  }
  return est;
}

struct FrameResidualReport {
  /// |γ′ − T|
  double tangent = 0.0;
  /// |D/dt T − κN|
  double dT = 0.0;
  /// |D/dt N + κT − τB|
  double dN = 0.0;
  /// |D/dt B + τN|
  double dB = 0.0;
  bool flagged = false;

  double worst() const { return std::max({tangent, dT, dN, dB}); }
};

/// Max-norm residuals of the Frenet equations along sampled frames.
inline FrameResidualReport frame_residuals(const CurveSamples& s, const HelixParams& p,
                                           double flag_tol = 1e-6) {
  if (!s.frames) throw Error(ErrorCode::MissingFrames, "samples carry no frames");
  const std::size_t n = s.size();
  if (n < 5) throw Error(ErrorCode::InsufficientSamples, "need at least 5 framed samples");
  std::vector<Vec4> T(n), N(n), B(n);
  for (std::size_t i = 0; i < n; ++i) {
    T[i] = (*s.frames)[i][1];
    N[i] = (*s.frames)[i][2];
    B[i] = (*s.frames)[i][3];
  }
  FrameResidualReport r;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const Vec4 dg = detail::central_diff4(s.points, i, s.dt);
    r.tangent = std::max(r.tangent, max_abs(dg - T[i]));
    r.dT = std::max(r.dT, max_abs(covariant_derivative(s, T, i) - p.kappa * N[i]));
    r.dN = std::max(r.dN, max_abs(covariant_derivative(s, N, i) + p.kappa * T[i] - p.tau * B[i]));
    r.dB = std::max(r.dB, max_abs(covariant_derivative(s, B, i) + p.tau * N[i]));
  }
  r.flagged = r.worst() > flag_tol;
  return r;
}

}  // namespace helix3
