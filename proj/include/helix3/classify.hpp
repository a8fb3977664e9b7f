#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/helix.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

inline constexpr double kDefaultRelTol = 1e-9;
inline constexpr std::int64_t kDefaultMaxDen = 1'000'000;

struct Rational {
  std::int64_t m = 0;
  std::int64_t n = 1;
  friend bool operator==(const Rational&, const Rational&) = default;
};

struct NoSmallPeriod {
  std::int64_t max_denominator_searched = 0;
  friend bool operator==(const NoSmallPeriod&, const NoSmallPeriod&) = default;
};

/// Verdict on ω₁/ω₂ ∈ [0, 1).
struct RatioClass {
  double ratio = 0.0;
  std::variant<Rational, NoSmallPeriod> verdict;

  bool is_rational() const { return std::holds_alternative<Rational>(verdict); }
  const Rational& rational() const { return std::get<Rational>(verdict); }
};

/// Scans the continued-fraction convergents p/q of r = ω₁/ω₂ in increasing
/// denominator up to max_den and accepts the first one with
///
///   |r − p/q| ≤ rel_tol · r / q.
///
/// Every convergent of an irrational number already lies within 1/q² of it, so
/// a tolerance that does not shrink with q would eventually accept any input;
/// the 1/q factor keeps the test from certifying Dirichlet approximations.
inline RatioClass classify_ratio(const Spectrum& s, double rel_tol = kDefaultRelTol,
                                 std::int64_t max_den = kDefaultMaxDen) {
  if (!(rel_tol > 0.0 && rel_tol <= 1e-3)) {
    throw Error(ErrorCode::InvalidParams, "rel_tol must lie in (0, 1e-3]");
  }
  if (max_den < 2) throw Error(ErrorCode::InvalidParams, "max_den must be >= 2");
  if (!(s.omega2 > 0.0)) throw Error(ErrorCode::InvalidParams, "omega2 must be positive");

  const double r = s.omega1 / s.omega2;
  RatioClass rc{r, NoSmallPeriod{max_den}};
  if (r == 0.0) {
    rc.verdict = Rational{0, 1};
    return rc;
  }
  const long double target = r;
  long double x = target;
  // Convergent recurrence seeded with p₋₂/q₋₂ = 0/1 and p₋₁/q₋₁ = 1/0.
  std::int64_t h_prev = 0, k_prev = 1;
  std::int64_t h = 1, k = 0;
  for (int iter = 0; iter < 64; ++iter) {
    const long double a_ld = std::floor(x);
    if (a_ld > 9.0e18L) break;
    const auto a = static_cast<std::int64_t>(a_ld);
    const std::int64_t h_next = a * h + h_prev;
    const std::int64_t k_next = a * k + k_prev;
    if (k_next > max_den || k_next <= 0) break;
    h_prev = h;
    k_prev = k;
    h = h_next;
    k = k_next;
    const long double err =
        std::abs(target - static_cast<long double>(h) / static_cast<long double>(k));
    if (err <= static_cast<long double>(rel_tol) * target / static_cast<long double>(k)) {
      rc.verdict = Rational{h, k};
      return rc;
    }
    const long double frac = x - a_ld;
    if (frac <= 0.0L) break;
    x = 1.0L / frac;
  }
  return rc;
}

/// Minimal period 2πn/ω₂ for a Rational(m, n) verdict; 2π/ω₂ when ω₁ = 0.
inline double period_of(const Spectrum& s, const RatioClass& rc) {
  if (!rc.is_rational()) {
    throw Error(ErrorCode::NotPeriodic, "no period found up to the searched denominator");
  }
  const Rational q = rc.rational();
  const double n = q.m == 0 ? 1.0 : static_cast<double>(q.n);
  return 2.0 * std::numbers::pi * n / s.omega2;
}

/// Clifford torus {x₁² + x₂² = r1², x₃² + x₄² = r2²} in the coordinates of the
/// orthonormal frame (a1, b1, a2, b2) along the coefficient vectors.
struct TorusSpec {
  double r1 = 0.0;
  double r2 = 0.0;
  std::pair<Vec4, Vec4> plane1;
  std::pair<Vec4, Vec4> plane2;
};

inline TorusSpec torus_of(const LissajousForm& f) {
  if (!(f.spectrum.params.tau > 0.0) || !(f.spectrum.omega1 > 0.0)) {
    throw Error(ErrorCode::DegenerateTorus, "torus needs positive curvature and torsion");
  }
  const double na1 = norm(f.A1), nb1 = norm(f.B1), na2 = norm(f.A2), nb2 = norm(f.B2);
  if (!(na1 > 0.0 && nb1 > 0.0 && na2 > 0.0 && nb2 > 0.0)) {
    throw Error(ErrorCode::DegenerateTorus, "a coefficient vector vanishes");
  }
  return {na1, na2, {f.A1 / na1, f.B1 / nb1}, {f.A2 / na2, f.B2 / nb2}};
}

/// Largest violation of the two circle equations at x.
inline double torus_residual(const TorusSpec& tor, const Vec4& x) {
  const double x1 = dot(x, tor.plane1.first), x2 = dot(x, tor.plane1.second);
  const double x3 = dot(x, tor.plane2.first), x4 = dot(x, tor.plane2.second);
  return std::max(std::abs(x1 * x1 + x2 * x2 - tor.r1 * tor.r1),
                  std::abs(x3 * x3 + x4 * x4 - tor.r2 * tor.r2));
}

namespace detail {

inline double wrap_2pi(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

inline double circular_distance(double a, double b) {
  const double d = std::abs(wrap_2pi(a - b));
  return std::min(d, 2.0 * std::numbers::pi - d);
}

}  // namespace detail

/// Torus angles of a point, each in [0, 2π).
inline std::pair<double, double> angles_on(const TorusSpec& tor, const Vec4& x) {
  return {detail::wrap_2pi(std::atan2(dot(x, tor.plane1.second), dot(x, tor.plane1.first))),
          detail::wrap_2pi(std::atan2(dot(x, tor.plane2.second), dot(x, tor.plane2.first)))};
}

/// (θ₁, θ₂) of γ(t) on its torus; θᵢ(t) ≡ ωᵢt + θᵢ(0) mod 2π.
inline std::pair<double, double> angle_lift(const LissajousForm& f, double t) {
  return angles_on(torus_of(f), evaluate(f, t));
}

struct DensityReport {
  int bins = 0;
  std::size_t samples = 0;
  double step = 0.0;
  /// Fraction of the bins×bins cells of [0, 2π)² hit by a sample.
  double occupancy = 0.0;
  /// Side length in radians of the largest empty square block of cells
  /// (cyclic in both angles); 0 when every cell is hit.
  double largest_gap = 0.0;
};

/// Largest k such that some cyclic k×k block of `grid` is entirely empty.
inline int largest_empty_block(const std::vector<std::uint8_t>& grid, int bins) {
  // Prefix sums over the grid tiled 2×2 handle wrap-around.
  const int m = 2 * bins;
  std::vector<int> pre(static_cast<std::size_t>((m + 1) * (m + 1)), 0);
  auto at = [&](int i, int j) -> int& { return pre[static_cast<std::size_t>(i * (m + 1) + j)]; };
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      at(i + 1, j + 1) = grid[static_cast<std::size_t>((i % bins) * bins + (j % bins))] +
                         at(i, j + 1) + at(i + 1, j) - at(i, j);
  int best = 0;
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j) {
      int k = best + 1;
      while (k <= bins) {
        const int hits = at(i + k, j + k) - at(i, j + k) - at(i + k, j) + at(i, j);
        if (hits != 0) break;
        best = k;
        ++k;
      }
    }
  return best;
}

/// Bin occupancy of the angle pairs of γ(t) for t = 0, h, 2h, … ≤ t_max with
/// h = 2π/(8ω₂). Cells are half-open uniform partitions of [0, 2π)².
inline DensityReport density_report(const LissajousForm& f, double t_max, int bins) {
  if (bins < 1) throw Error(ErrorCode::InvalidParams, "bins must be >= 1");
  if (!(t_max >= 0.0)) throw Error(ErrorCode::InvalidParams, "t_max must be non-negative");
  const TorusSpec tor = torus_of(f);
  DensityReport rep;
  rep.bins = bins;
  rep.step = 2.0 * std::numbers::pi / (8.0 * f.spectrum.omega2);
  std::vector<std::uint8_t> grid(static_cast<std::size_t>(bins * bins), 0);
  const double cell = 2.0 * std::numbers::pi / bins;
  const auto count = static_cast<std::size_t>(std::floor(t_max / rep.step)) + 1;
  for (std::size_t i = 0; i < count; ++i) {
    const auto [a, b] = angles_on(tor, evaluate(f, static_cast<double>(i) * rep.step));
    const int ia = std::min(bins - 1, static_cast<int>(a / cell));
    const int ib = std::min(bins - 1, static_cast<int>(b / cell));
    grid[static_cast<std::size_t>(ia * bins + ib)] = 1;
  }
  rep.samples = count;
  const auto hit = std::count(grid.begin(), grid.end(), std::uint8_t{1});
  rep.occupancy = static_cast<double>(hit) / static_cast<double>(grid.size());
  rep.largest_gap = largest_empty_block(grid, bins) * cell;
  return rep;
}

/// Hausdorff distance between two finite sets of torus angle pairs, using the
/// flat metric on [0, 2π)².
inline double angle_set_hausdorff(std::span<const std::pair<double, double>> a,
                                  std::span<const std::pair<double, double>> b) {
  auto one_sided = [](auto from, auto to) {
    double worst = 0.0;
    for (const auto& p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& q : to) {
        const double d1 = detail::circular_distance(p.first, q.first);
        const double d2 = detail::circular_distance(p.second, q.second);
        best = std::min(best, std::hypot(d1, d2));
      }
      worst = std::max(worst, best);
    }
    return worst;
  };
  if (a.empty() || b.empty()) {
    return a.empty() && b.empty() ? 0.0 : std::numeric_limits<double>::infinity();
  }
  return std::max(one_sided(a, b), one_sided(b, a));
}

struct GlobalClass {
  RatioClass ratio_class;
  std::optional<double> period;
  std::optional<TorusSpec> torus;
  std::optional<DensityReport> density;
};

struct ClassifyOptions {
  double rel_tol = kDefaultRelTol;
  std::int64_t max_den = kDefaultMaxDen;
  double density_t_max = 5e3;
  int bins = 16;
};

inline GlobalClass classify(const LissajousForm& f, const ClassifyOptions& opt = {}) {
  GlobalClass g;
  g.ratio_class = classify_ratio(f.spectrum, opt.rel_tol, opt.max_den);
  if (g.ratio_class.is_rational()) g.period = period_of(f.spectrum, g.ratio_class);
  if (f.spectrum.params.tau > 0.0) {
    g.torus = torus_of(f);
    g.density = density_report(f, opt.density_t_max, opt.bins);
  }
  return g;
}

}  // namespace helix3
