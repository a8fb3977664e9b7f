#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>

#include "helix3/error.hpp"

namespace helix3 {

/// Algebraic identities are checked to this absolute max-norm tolerance.
inline constexpr double kIdentityTol = 1e-12;
/// Accumulated orthogonality drift tolerance.
inline constexpr double kOrthoTol = 1e-10;

struct Vec4 {
  std::array<double, 4> c{0.0, 0.0, 0.0, 0.0};

  constexpr Vec4() = default;
  constexpr Vec4(double x1, double x2, double x3, double x4) : c{x1, x2, x3, x4} {}

  constexpr double& operator[](std::size_t i) { return c[i]; }
  constexpr double operator[](std::size_t i) const { return c[i]; }

  static constexpr Vec4 zero() { return {}; }
  static constexpr Vec4 basis(std::size_t i) {
    Vec4 v;
    v.c[i] = 1.0;
    return v;
  }

  constexpr Vec4& operator+=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] += o.c[i];
    return *this;
  }
  constexpr Vec4& operator-=(const Vec4& o) {
    for (std::size_t i = 0; i < 4; ++i) c[i] -= o.c[i];
    return *this;
  }
  constexpr Vec4& operator*=(double s) {
    for (auto& x : c) x *= s;
    return *this;
  }

  friend constexpr Vec4 operator+(Vec4 a, const Vec4& b) { return a += b; }
  friend constexpr Vec4 operator-(Vec4 a, const Vec4& b) { return a -= b; }
  friend constexpr Vec4 operator-(Vec4 a) { return a *= -1.0; }
  friend constexpr Vec4 operator*(Vec4 a, double s) { return a *= s; }
  friend constexpr Vec4 operator*(double s, Vec4 a) { return a *= s; }
  friend constexpr Vec4 operator/(Vec4 a, double s) { return a *= (1.0 / s); }
  friend constexpr bool operator==(const Vec4&, const Vec4&) = default;
};

inline constexpr Vec4 e1 = Vec4::basis(0);
inline constexpr Vec4 e2 = Vec4::basis(1);
inline constexpr Vec4 e3 = Vec4::basis(2);
inline constexpr Vec4 e4 = Vec4::basis(3);

constexpr double dot(const Vec4& a, const Vec4& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

inline double norm(const Vec4& v) { return std::sqrt(dot(v, v)); }

inline double max_abs(const Vec4& v) {
  double m = 0.0;
  for (double x : v.c) m = std::max(m, std::abs(x));
  return m;
}

inline bool is_finite(const Vec4& v) {
  return std::all_of(v.c.begin(), v.c.end(), [](double x) { return std::isfinite(x); });
}

/// A point of S³ (or a unit frame vector). Construction checks the norm.
class UnitVec4 {
 public:
  /// Throws DegenerateInput unless | |v| - 1 | <= tol.
  explicit UnitVec4(const Vec4& v, double tol = kIdentityTol) : v_(v) {
    if (!is_finite(v) || std::abs(norm(v) - 1.0) > tol) {
      throw Error(ErrorCode::DegenerateInput, "vector is not of unit length");
    }
  }

  static UnitVec4 normalized(const Vec4& v) {
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw Error(ErrorCode::DegenerateInput, "cannot normalize a zero vector");
    }
    return UnitVec4(v / n);
  }

  const Vec4& vec() const noexcept { return v_; }
  operator const Vec4&() const noexcept { return v_; }
  double operator[](std::size_t i) const { return v_[i]; }

 private:
  Vec4 v_;
};

/// 4×4 matrix stored by rows. Frames put (γ, T, N, B) in rows 0..3.
struct Mat4 {
  std::array<Vec4, 4> rows{};

  constexpr Vec4& operator[](std::size_t i) { return rows[i]; }
  constexpr const Vec4& operator[](std::size_t i) const { return rows[i]; }

  static constexpr Mat4 identity() { return Mat4{{e1, e2, e3, e4}}; }
  static constexpr Mat4 zero() { return Mat4{}; }

  constexpr Mat4& operator+=(const Mat4& o) {
    for (std::size_t i = 0; i < 4; ++i) rows[i] += o.rows[i];
    return *this;
  }
  constexpr Mat4& operator-=(const Mat4& o) {
    for (std::size_t i = 0; i < 4; ++i) rows[i] -= o.rows[i];
    return *this;
  }
  constexpr Mat4& operator*=(double s) {
    for (auto& r : rows) r *= s;
    return *this;
  }
  friend constexpr Mat4 operator+(Mat4 a, const Mat4& b) { return a += b; }
  friend constexpr Mat4 operator-(Mat4 a, const Mat4& b) { return a -= b; }
  friend constexpr Mat4 operator*(Mat4 a, double s) { return a *= s; }
  friend constexpr Mat4 operator*(double s, Mat4 a) { return a *= s; }
  friend constexpr bool operator==(const Mat4&, const Mat4&) = default;
};

constexpr Mat4 transpose(const Mat4& m) {
  Mat4 t;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) t[i][j] = m[j][i];
  return t;
}

constexpr Mat4 operator*(const Mat4& a, const Mat4& b) {
  Mat4 r;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t k = 0; k < 4; ++k) r[i] += a[i][k] * b[k];
  return r;
}

/// Column-vector action M·v.
constexpr Vec4 operator*(const Mat4& m, const Vec4& v) {
  return {dot(m[0], v), dot(m[1], v), dot(m[2], v), dot(m[3], v)};
}

/// Row-vector action v·M (a linear combination of the rows of M).
constexpr Vec4 row_times(const Vec4& v, const Mat4& m) {
  return v[0] * m[0] + v[1] * m[1] + v[2] * m[2] + v[3] * m[3];
}

inline double max_abs(const Mat4& m) {
  double r = 0.0;
  for (const auto& row : m.rows) r = std::max(r, max_abs(row));
  return r;
}

/// ‖M·Mᵀ − I‖_max.
inline double orthogonality_error(const Mat4& m) {
  return max_abs(m * transpose(m) - Mat4::identity());
}

inline bool is_orthogonal(const Mat4& m, double tol = kOrthoTol) {
  return orthogonality_error(m) <= tol;
}

/// Tangential part of w at p ∈ S³: w − (p·w)p.
inline Vec4 project_tangent(const Vec4& p, const Vec4& w) { return w - dot(p, w) * p; }

/// Modified Gram–Schmidt on the rows. Row i of the result spans the same flag
/// as the first i+1 inputs.
inline Mat4 gram_schmidt4(std::span<const Vec4, 4> vs, double pivot_tol = 1e-10) {
  Mat4 q;
  for (std::size_t i = 0; i < 4; ++i) {
    Vec4 v = vs[i];
    // Two passes keep the result orthogonal to roundoff even for poorly
    // conditioned input.
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < i; ++j) v -= dot(q[j], v) * q[j];
    const double n = norm(v);
    if (!(n >= pivot_tol)) {
      throw Error(ErrorCode::DegenerateInput, "gram_schmidt4: input has rank < 4");
    }
    q[i] = v / n;
  }
  return q;
}

inline Mat4 gram_schmidt4(const Mat4& m, double pivot_tol = 1e-10) {
  return gram_schmidt4(std::span<const Vec4, 4>(m.rows), pivot_tol);
}

/// Extends `prefix` (up to four vectors, assumed independent) to an orthonormal
/// basis by appending standard basis vectors that are not already in the span.
inline Mat4 complete_basis(std::span<const Vec4> prefix, double pivot_tol = 1e-10) {
  if (prefix.size() > 4) {
    throw Error(ErrorCode::DegenerateInput, "complete_basis: more than four vectors");
  }
  Mat4 q;
  std::size_t filled = 0;
  auto try_add = [&](const Vec4& cand) {
    Vec4 v = cand;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t j = 0; j < filled; ++j) v -= dot(q[j], v) * q[j];
    const double n = norm(v);
    if (n < pivot_tol) return false;
    q[filled++] = v / n;
    return true;
  };
  for (const Vec4& v : prefix) {
    if (!try_add(v)) {
      throw Error(ErrorCode::DegenerateInput, "complete_basis: dependent prefix");
    }
  }
  // Fallback candidates are accepted only when they are well separated from the
  // current span, so the completion stays well conditioned.
  for (std::size_t i = 0; i < 4 && filled < 4; ++i) {
    Vec4 v = Vec4::basis(i);
    Vec4 r = v;
    for (std::size_t j = 0; j < filled; ++j) r -= dot(q[j], r) * q[j];
    if (norm(r) > 0.5) try_add(v);
  }
  for (std::size_t i = 0; i < 4 && filled < 4; ++i) try_add(Vec4::basis(i));
  if (filled < 4) {
    throw Error(ErrorCode::DegenerateInput, "complete_basis: could not reach rank 4");
  }
  return q;
}

}  // namespace helix3
