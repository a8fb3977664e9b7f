// Writes samples and stereographic point clouds for two helices: one with
// frequency ratio 1/√29 (dense on its torus) and one with ratio 3/20 (closed
// after 24π).
//
//   helix3_point_clouds <out-dir>

#include <cmath>
#include <filesystem>
#include <iostream>
#include <numbers>
#include <string>

#include "helix3.hpp"

int main(int argc, char** argv) {
  using namespace helix3;
  if (argc != 2) {
    std::cerr << "usage: helix3_point_clouds <out-dir>\n";
    return 2;
  }
  const std::filesystem::path dir = argv[1];
  std::filesystem::create_directories(dir);

  struct Example {
    const char* name;
    HelixParams params;
    double t_max;
  };
  const Example examples[] = {
      {"irrational", {5.0 * std::sqrt(3.0) / 4.0, std::sqrt(29.0) / 4.0}, 200.0},
      {"three_twentieths", {std::sqrt(15.0) / 3.0, 5.0 / 12.0}, 24.0 * std::numbers::pi},
  };
  try {
    for (const Example& ex : examples) {
      const LissajousForm f = construct_canonical(ex.params);
      const double dt = 1e-2;
      const auto n = static_cast<std::size_t>(ex.t_max / dt) + 1;
      const CurveSamples s = sample_form(f, 0.0, dt, n);
      const ProjectionSpec pole = choose_pole(s);
      const std::string base = (dir / ex.name).string();
      export_samples(s, base + ".csv");
      export_projected(project_samples(pole, s), base + ".ply", ProjectedFormat::Ply);

      const RatioClass rc = classify_ratio(f.spectrum);
      std::cout << ex.name << ": omega1 = " << f.spectrum.omega1
                << ", omega2 = " << f.spectrum.omega2 << ", ";
      if (rc.is_rational()) {
        std::cout << "ratio " << rc.rational().m << "/" << rc.rational().n << ", period "
                  << period_of(f.spectrum, rc) << '\n';
      } else {
        std::cout << "no period with denominator <= " << kDefaultMaxDen << '\n';
      }
    }
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return 1;
  }
  return 0;
}
