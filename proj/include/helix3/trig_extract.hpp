#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/helix.hpp"
#include "helix3/samples.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

/// f(t) = Σₖ bₖ cos(αₖt) + aₖ sin(αₖt) with vector coefficients.
struct TrigSum {
  std::vector<double> frequencies;
  std::vector<Vec4> cos_coeffs;
  std::vector<Vec4> sin_coeffs;
};

inline void validate(const TrigSum& f) {
  const std::size_t n = f.frequencies.size();
  if (f.cos_coeffs.size() != n || f.sin_coeffs.size() != n) {
    throw Error(ErrorCode::InvalidParams, "trig sum coefficient count mismatch");
  }
  for (std::size_t k = 0; k < n; ++k) {
    if (!(f.frequencies[k] >= 0.0) || (k > 0 && !(f.frequencies[k] > f.frequencies[k - 1]))) {
      throw Error(ErrorCode::InvalidParams,
                  "trig sum frequencies must be non-negative and strictly increasing");
    }
  }
  if (n > 0 && f.frequencies[0] == 0.0 && f.sin_coeffs[0] != Vec4::zero()) {
    throw Error(ErrorCode::InvalidParams, "sine coefficient at zero frequency must vanish");
  }
}

inline Vec4 evaluate(const TrigSum& f, double t) {
  Vec4 v;
  for (std::size_t k = 0; k < f.frequencies.size(); ++k) {
    const double a = f.frequencies[k] * t;
    v += std::cos(a) * f.cos_coeffs[k] + std::sin(a) * f.sin_coeffs[k];
  }
  return v;
}

inline CurveSamples sample_trig_sum(const TrigSum& f, double t0, double dt, std::size_t n) {
  CurveSamples s{t0, dt, {}, std::nullopt};
  s.points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) s.points.push_back(evaluate(f, s.time(i)));
  return s;
}

/// Smallest distance from α to ±β over the signal frequencies β other than α
/// itself, including the mirror −α when α > 0. Returns +∞ if nothing interferes.
inline double interference_gap(double alpha, std::span<const double> signal_frequencies) {
  double gap = std::numeric_limits<double>::infinity();
  if (alpha > 0.0) gap = 2.0 * alpha;
  for (double beta : signal_frequencies) {
    if (beta == alpha) continue;
    gap = std::min({gap, std::abs(alpha - beta), alpha + beta});
  }
  return gap;
}

/// Averaging error bound 2·Σ|coeffs| / (T_avg·gap).
inline double truncation_bound(double coeff_norm_sum, double span, double gap) {
  return 2.0 * coeff_norm_sum / (span * gap);
}

/// Required product T_avg · gap for extraction to be attempted.
inline constexpr double kMinSpanGapProduct = 50.0;

struct Extracted {
  Vec4 cos_part;
  Vec4 sin_part;
};

/// Recovers the α-frequency coefficients of a sampled trig sum by long-time
/// averaging against cos(αt) and sin(αt), using the composite trapezoid rule
/// over [t0, t0 + T_avg]. `gap` is the distance from α to the nearest
/// interfering frequency (see interference_gap).
inline Extracted extract_coefficient(const CurveSamples& s, double alpha, double gap) {
  if (s.size() < 2) throw Error(ErrorCode::InsufficientSpan, "need at least two samples");
  const double span = s.dt * static_cast<double>(s.size() - 1);
  if (!(span * gap >= kMinSpanGapProduct)) {
    throw Error(ErrorCode::InsufficientSpan,
                "averaging span times frequency gap is below 50");
  }
  Vec4 c_acc, s_acc;
  const std::size_t last = s.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const double w = (i == 0 || i == last) ? 0.5 : 1.0;
    const double a = alpha * s.time(i);
    c_acc += (w * std::cos(a)) * s.points[i];
    s_acc += (w * std::sin(a)) * s.points[i];
  }
  const double scale = s.dt / span;
  if (alpha == 0.0) return {scale * c_acc, Vec4::zero()};
  return {2.0 * scale * c_acc, 2.0 * scale * s_acc};
}

struct LissajousFit {
  LissajousForm form;
  /// Per-coefficient averaging bound 2·Σ|coeffs|/(T_avg·gap).
  double bound = 0.0;
  /// max over samples of |form(t) − sample|.
  double residual = 0.0;
};

inline constexpr double kFitResidualFactor = 10.0;
inline constexpr double kMinSamplesPerPeriod = 8.0;

/// Fits the four coefficient vectors of a helix whose frequencies are known.
inline LissajousFit fit_lissajous(const CurveSamples& s, const Spectrum& spectrum) {
  const double w1 = spectrum.omega1, w2 = spectrum.omega2;
  if (s.dt > 2.0 * std::numbers::pi / (kMinSamplesPerPeriod * w2)) {
    throw Error(ErrorCode::InsufficientSpan,
                "fewer than 8 samples per period of the fast frequency");
  }
  const std::vector<double> freqs = w1 > 0.0 ? std::vector<double>{w1, w2}
                                             : std::vector<double>{0.0, w2};
  const double gap = std::min(interference_gap(w1, freqs), interference_gap(w2, freqs));
  const Extracted slow = extract_coefficient(s, w1, gap);
  const Extracted fast = extract_coefficient(s, w2, gap);

  LissajousFit fit;
  fit.form = LissajousForm{spectrum, slow.cos_part, slow.sin_part, fast.cos_part, fast.sin_part};
  const double span = s.dt * static_cast<double>(s.size() - 1);
  const double coeff_sum = norm(fit.form.A1) + norm(fit.form.B1) + norm(fit.form.A2) +
                           norm(fit.form.B2);
  fit.bound = truncation_bound(coeff_sum, span, gap);
  for (std::size_t i = 0; i < s.size(); ++i) {
    fit.residual = std::max(fit.residual, norm(evaluate(fit.form, s.time(i)) - s.points[i]));
  }
  if (fit.residual > kFitResidualFactor * fit.bound) {
    throw Error(ErrorCode::SpectrumMismatch,
                "reconstruction residual exceeds 10x the averaging bound");
  }
  return fit;
}

}  // namespace helix3
