#include <CLI11.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <random>
#include <string>

#include "helix3.hpp"
#include "helix3/json.hpp"

namespace {

using namespace helix3;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 2;
constexpr int kExitIo = 3;
constexpr int kExitConvention = 4;

struct ParamOptions {
  std::optional<double> kappa, tau;
  std::string kappa_expr, tau_expr;

  void add_to(CLI::App* cmd) {
    auto* k = cmd->add_option("--kappa", kappa, "curvature");
    auto* ke = cmd->add_option("--kappa-expr", kappa_expr, "curvature as an expression, e.g. 5*sqrt(3)/4");
    auto* t = cmd->add_option("--tau", tau, "torsion");
    auto* te = cmd->add_option("--tau-expr", tau_expr, "torsion as an expression");
    k->excludes(ke);
    t->excludes(te);
  }

  HelixParams resolve() const {
    HelixParams p;
    p.kappa = pick(kappa, kappa_expr, "kappa");
    p.tau = pick(tau, tau_expr, "tau");
    validate(p);
    return p;
  }

 private:
  static double pick(const std::optional<double>& v, const std::string& expr, const char* name) {
    if (v) return *v;
    if (!expr.empty()) return evaluate_expression(expr);
    throw Error(ErrorCode::InvalidParams, std::string("missing --") + name + " or --" + name + "-expr");
  }
};

struct SampleRange {
  double dt = 1e-3;
  double t_max = 100.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--dt", dt, "sample spacing")->capture_default_str();
    cmd->add_option("--t-max", t_max, "samples cover [0, t-max]")->capture_default_str();
  }

  std::size_t count() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorCode::InvalidParams, "--dt must be positive");
    if (!(t_max > 0.0) || !std::isfinite(t_max)) {
      throw Error(ErrorCode::InvalidParams, "--t-max must be positive");
    }
    return static_cast<std::size_t>(std::floor(t_max / dt + 1e-9)) + 1;
  }
};

std::uint64_t seed_from_env() {
  const char* s = std::getenv("HELIX3_SEED");
  if (s == nullptr || *s == '\0') return 0;
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(s, &used, 0);
    if (s[used] != '\0') throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidParams, std::string("HELIX3_SEED is not an integer: ") + s);
  }
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json torus_json(const LissajousForm& f) {
  if (f.spectrum.params.tau == 0.0) return {{"r1", nullptr}, {"r2", nullptr}};
  const TorusSpec t = torus_of(f);
  return {{"r1", t.r1}, {"r2", t.r2}};
}

int cmd_construct(const ParamOptions& po, const SampleRange& range, const std::string& out,
                  bool frames) {
  const HelixParams p = po.resolve();
  const std::size_t n = range.count();
  const LissajousForm f = construct_canonical(p);
  export_samples(sample_form(f, 0.0, range.dt, n, frames), out);
  const auto [a1sq, a2sq] = coefficient_magnitudes2(f.spectrum);
  json j{{"spectrum", to_json_value(f.spectrum)},
         {"magnitudes2", {{"A1", a1sq}, {"A2", a2sq}}},
         {"torus", torus_json(f)},
         {"form", to_json_value(f)},
         {"samples", n},
         {"dt", range.dt},
         {"output", out}};
  print(j);
  return kExitOk;
}

int cmd_integrate(const ParamOptions& po, const SampleRange& range, const std::string& out) {
  const HelixParams p = po.resolve();
  const std::size_t n = range.count();
  const CurveSamples s = sample_evolve(p, FrameState{}, range.dt, n);
  export_samples(s, out);
  double drift = 0.0;
  for (const Mat4& x : *s.frames) drift = std::max(drift, orthogonality_error(x));
  print({{"spectrum", to_json_value(spectrum_of(p))},
         {"samples", n},
         {"dt", range.dt},
         {"max_orthogonality_error", drift},
         {"output", out}});
  return kExitOk;
}

int cmd_estimate(const std::string& in) {
  const CurveSamples s = import_samples(in);
  validate(s);
  const FrenetEstimate e = estimate_kappa_tau(s);
  json j{{"estimate", to_json_value(e)}, {"samples", s.size()}};
  if (s.frames) {
    const HelixParams hat{e.kappa_hat, e.tau_defined ? e.tau_hat : 0.0};
    j["frame_residuals"] = to_json_value(frame_residuals(s, hat));
  }
  print(j);
  return e.tau_defined ? kExitOk : kExitConvention;
}

int cmd_classify(const ParamOptions& po, double rel_tol, std::int64_t max_den, int bins,
                 double density_t_max) {
  const HelixParams p = po.resolve();
  ClassifyOptions opt;
  opt.rel_tol = rel_tol;
  opt.max_den = max_den;
  opt.bins = bins;
  opt.density_t_max = density_t_max;
  json j = to_json_value(classify(construct_canonical(p), opt));
  j["kappa"] = p.kappa;
  j["tau"] = p.tau;
  print(j);
  return kExitOk;
}

LissajousForm fit_file(const std::string& path, const Spectrum& spec) {
  const CurveSamples s = import_samples(path);
  validate(s);
  return fit_lissajous(s, spec).form;
}

int cmd_congruence(const ParamOptions& po, const std::string& a_path, const std::string& b_path,
                   std::size_t n_samples) {
  const HelixParams p = po.resolve();
  const std::uint64_t seed = seed_from_env();
  LissajousForm a = construct_canonical(p);
  LissajousForm b;
  std::string mode;
  if (!a_path.empty() || !b_path.empty()) {
    if (a_path.empty() || b_path.empty()) {
      throw Error(ErrorCode::InvalidParams, "--a and --b must be given together");
    }
    a = fit_file(a_path, a.spectrum);
    b = fit_file(b_path, a.spectrum);
    mode = "fitted";
  } else {
    // Seeded random orthogonal image of the canonical helix.
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    Mat4 m;
    for (auto& row : m.rows) row = {g(rng), g(rng), g(rng), g(rng)};
    Mat4 q = gram_schmidt4(m);
    if (std::bernoulli_distribution(0.5)(rng)) q[0] = -q[0];
    b = transform(q, a);
    mode = "synthesized";
  }
  const Isometry4 iso = congruence_between(a, b);
  const CongruenceResidual r = verify_congruence(a, b, iso, n_samples, seed);
  print({{"mode", mode},
         {"G", to_json_value(iso.G)},
         {"orthogonality_error", orthogonality_error(iso.G)},
         {"max_residual", r.empty ? json(nullptr) : json(r.max_residual)},
         {"samples", r.samples},
         {"seed", seed}});
  return kExitOk;
}

ProjectedFormat format_for(const std::string& fmt, const std::string& out) {
  std::string f = fmt;
  if (f.empty()) f = std::filesystem::path(out).extension() == ".ply" ? "ply" : "csv";
  if (f == "csv") return ProjectedFormat::Csv;
  if (f == "ply") return ProjectedFormat::Ply;
  throw Error(ErrorCode::InvalidParams, "--format must be csv or ply");
}

int cmd_project(const std::string& in, const std::string& out, const std::string& fmt,
                double margin) {
  const ProjectedFormat f = format_for(fmt, out);
  if (!(margin > 0.0)) throw Error(ErrorCode::InvalidParams, "--margin must be positive");
  const CurveSamples s = import_samples(in);
  const std::uint64_t seed = seed_from_env();
  const ProjectionSpec spec = choose_pole(s, margin, seed);
  const auto pts = project_samples(spec, s);
  export_projected(pts, out, f);
  print({{"pole", to_json_value(spec.pole)},
         {"margin", margin},
         {"points", pts.size()},
         {"format", f == ProjectedFormat::Ply ? "ply" : "csv"},
         {"output", out}});
  return kExitOk;
}

int cmd_extract(const ParamOptions& po, const std::string& in) {
  const Spectrum spec = spectrum_of(po.resolve());
  const CurveSamples s = import_samples(in);
  validate(s);
  const LissajousFit fit = fit_lissajous(s, spec);
  print({{"form", to_json_value(fit.form)},
         {"bound", fit.bound},
         {"residual", fit.residual},
         {"samples", s.size()}});
  return kExitOk;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::IoError:
    case ErrorCode::FormatError:
    case ErrorCode::MissingFrames:
      return kExitIo;
    default:
      return kExitInvalid;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Helices in the 3-sphere: construction, integration, estimation and classification"};
  app.require_subcommand(1);

  ParamOptions params;
  SampleRange range;
  std::string in, out, a_path, b_path, format;
  bool frames = false;
  double rel_tol = kDefaultRelTol;
  std::int64_t max_den = kDefaultMaxDen;
  int bins = 16;
  double density_t_max = 5e3;
  double margin = 1e-2;
  std::size_t n_samples = 1000;

  auto* construct = app.add_subcommand("construct", "sample the canonical helix to CSV");
  params.add_to(construct);
  range.add_to(construct);
  construct->add_option("--out", out, "samples CSV")->required();
  construct->add_flag("--frames", frames, "append Frenet frame columns");

  auto* integrate = app.add_subcommand("integrate", "sample the Frenet ODE solution (with frames) to CSV");
  params.add_to(integrate);
  range.add_to(integrate);
  integrate->add_option("--out", out, "samples CSV")->required();

  auto* estimate = app.add_subcommand("estimate", "estimate curvature and torsion from a samples CSV");
  estimate->add_option("--in", in, "samples CSV")->required();

  auto* classify_cmd = app.add_subcommand("classify", "periodicity, torus and density report");
  params.add_to(classify_cmd);
  classify_cmd->add_option("--rel-tol", rel_tol, "relative tolerance for a rational frequency ratio")->capture_default_str();
  classify_cmd->add_option("--max-den", max_den, "largest denominator searched")->capture_default_str();
  classify_cmd->add_option("--bins", bins, "torus grid cells per angle")->capture_default_str();
  classify_cmd->add_option("--density-t-max", density_t_max, "time span sampled for occupancy")->capture_default_str();

  auto* congruence = app.add_subcommand("congruence", "isometry between two helices with the same invariants");
  params.add_to(congruence);
  congruence->add_option("--a", a_path, "first samples CSV");
  congruence->add_option("--b", b_path, "second samples CSV");
  congruence->add_option("--samples", n_samples, "random times used to check the map")->capture_default_str();

  auto* project = app.add_subcommand("project", "stereographic projection of a samples CSV");
  project->add_option("--in", in, "samples CSV")->required();
  project->add_option("--out", out, "projected CSV or PLY")->required();
  project->add_option("--format", format, "csv or ply (default from the extension)");
  project->add_option("--margin", margin, "minimum distance from the pole")->capture_default_str();

  auto* extract = app.add_subcommand("extract", "fit the Lissajous form to a samples CSV");
  params.add_to(extract);
  extract->add_option("--in", in, "samples CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    if (*construct) return cmd_construct(params, range, out, frames);
    if (*integrate) return cmd_integrate(params, range, out);
    if (*estimate) return cmd_estimate(in);
    if (*classify_cmd) return cmd_classify(params, rel_tol, max_den, bins, density_t_max);
    if (*congruence) return cmd_congruence(params, a_path, b_path, n_samples);
    if (*project) return cmd_project(in, out, format, margin);
    if (*extract) return cmd_extract(params, in);
  } catch (const Error& e) {
    std::cerr << "helix3: " << e.what() << '\n';
    return exit_code_for(e.code());
  }
  return kExitInvalid;
}
