#pragma once

#include <nlohmann/json.hpp>

#include "helix3/classify.hpp"
#include "helix3/congruence.hpp"
#include "helix3/curve_oracle.hpp"
#include "helix3/helix.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

inline nlohmann::json to_json_value(const Vec4& v) { return {v[0], v[1], v[2], v[3]}; }

inline nlohmann::json to_json_value(const Mat4& m) {
  return {to_json_value(m[0]), to_json_value(m[1]), to_json_value(m[2]), to_json_value(m[3])};
}

inline nlohmann::json to_json_value(const Spectrum& s) {
  return {{"kappa", s.params.kappa}, {"tau", s.params.tau}, {"omega1", s.omega1},
          {"omega2", s.omega2},      {"chi2", s.chi2}};
}

inline nlohmann::json to_json_value(const LissajousForm& f) {
  return {{"spectrum", to_json_value(f.spectrum)},
          {"A1", to_json_value(f.A1)},
          {"B1", to_json_value(f.B1)},
          {"A2", to_json_value(f.A2)},
          {"B2", to_json_value(f.B2)}};
}

/// Classification report. Keys verdict, m, n, period, r1, r2, occupancy and
/// largest_gap are always present (null when not applicable).
inline nlohmann::json to_json_value(const GlobalClass& g) {
  nlohmann::json j;
  const RatioClass& rc = g.ratio_class;
  j["ratio"] = rc.ratio;
  j["ratio_inverse"] = rc.ratio > 0.0 ? nlohmann::json(1.0 / rc.ratio) : nlohmann::json(nullptr);
  if (rc.is_rational()) {
    j["verdict"] = "Rational";
    j["m"] = rc.rational().m;
    j["n"] = rc.rational().n;
    j["max_denominator_searched"] = nullptr;
  } else {
    j["verdict"] = "NoSmallPeriod";
    j["m"] = nullptr;
    j["n"] = nullptr;
    j["max_denominator_searched"] = std::get<NoSmallPeriod>(rc.verdict).max_denominator_searched;
  }
  j["period"] = g.period ? nlohmann::json(*g.period) : nlohmann::json(nullptr);
  j["r1"] = g.torus ? nlohmann::json(g.torus->r1) : nlohmann::json(nullptr);
  j["r2"] = g.torus ? nlohmann::json(g.torus->r2) : nlohmann::json(nullptr);
  j["occupancy"] = g.density ? nlohmann::json(g.density->occupancy) : nlohmann::json(nullptr);
  j["largest_gap"] = g.density ? nlohmann::json(g.density->largest_gap) : nlohmann::json(nullptr);
  if (g.density) {
    j["bins"] = g.density->bins;
    j["density_samples"] = g.density->samples;
  }
  return j;
}

inline nlohmann::json to_json_value(const FrenetEstimate& e) {
  nlohmann::json j{{"kappa_hat", e.kappa_hat},
                   {"tau_hat", e.tau_hat},
                   {"tau_defined", e.tau_defined},
                   {"kappa_spread", {{"max", e.kappa_spread.max}, {"mean", e.kappa_spread.mean}}},
                   {"tau_spread", {{"max", e.tau_spread.max}, {"mean", e.tau_spread.mean}}}};
  if (!e.tau_defined) {
    j["note"] = "curvature vanishes; torsion reported as 0 by the kappa = 0 => tau = 0 convention";
  }
  return j;
}

inline nlohmann::json to_json_value(const FrameResidualReport& r) {
  return {{"tangent", r.tangent}, {"dT", r.dT}, {"dN", r.dN}, {"dB", r.dB},
          {"flagged", r.flagged}};
}

}  // namespace helix3
