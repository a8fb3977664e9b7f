#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "helix3/error.hpp"
#include "helix3/projection.hpp"
#include "helix3/samples.hpp"
#include "helix3/vec4.hpp"

namespace helix3 {

/// Shortest decimal that parses back to the same double.
inline std::string format_double(double x) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace detail {

inline constexpr std::string_view kPointHeader = "t,x1,x2,x3,x4";
inline constexpr std::string_view kFrameHeader =
    ",T1,T2,T3,T4,N1,N2,N3,N4,B1,B2,B3,B4";

inline double parse_cell(std::string_view cell, std::size_t line) {
  double v = 0.0;
  const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (res.ec != std::errc{} || res.ptr != cell.data() + cell.size() || !std::isfinite(v)) {
    throw Error(ErrorCode::FormatError,
                "line " + std::to_string(line) + ": non-numeric cell '" + std::string(cell) + "'");
  }
  return v;
}

inline std::vector<std::string_view> split_commas(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = s.find(',', start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? std::string_view::npos
                                                                : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

inline void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace detail

/// CSV with header `t,x1,x2,x3,x4`, followed by `T1..T4,N1..N4,B1..B4` when
/// frames are present. LF line endings, shortest round-trip decimals.
inline void write_samples_csv(std::ostream& os, const CurveSamples& s) {
  os << detail::kPointHeader;
  if (s.frames) os << detail::kFrameHeader;
  os << '\n';
  for (std::size_t i = 0; i < s.size(); ++i) {
    os << format_double(s.time(i));
    for (double x : s.points[i].c) os << ',' << format_double(x);
    if (s.frames) {
      const Mat4& f = (*s.frames)[i];
      for (std::size_t r = 1; r < 4; ++r)
        for (double x : f[r].c) os << ',' << format_double(x);
    }
    os << '\n';
  }
}

inline CurveSamples read_samples_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw Error(ErrorCode::FormatError, "missing header");
  detail::strip_cr(line);
  if (line.empty()) throw Error(ErrorCode::FormatError, "missing header");
  bool with_frames = false;
  if (line == detail::kPointHeader) {
    with_frames = false;
  } else if (line == std::string(detail::kPointHeader) + std::string(detail::kFrameHeader)) {
    with_frames = true;
  } else {
    throw Error(ErrorCode::FormatError, "bad header '" + line + "'");
  }
  const std::size_t columns = with_frames ? 17 : 5;
  std::vector<double> times;
  CurveSamples s;
  if (with_frames) s.frames.emplace();
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    detail::strip_cr(line);
    if (line.empty()) continue;
    const auto cells = detail::split_commas(line);
    if (cells.size() != columns) {
      throw Error(ErrorCode::FormatError, "line " + std::to_string(line_no) + ": expected " +
                                              std::to_string(columns) + " cells, got " +
                                              std::to_string(cells.size()));
    }
    std::vector<double> v(columns);
    for (std::size_t c = 0; c < columns; ++c) v[c] = detail::parse_cell(cells[c], line_no);
    times.push_back(v[0]);
    const Vec4 p{v[1], v[2], v[3], v[4]};
    s.points.push_back(p);
    if (with_frames) {
      Mat4 f;
      f[0] = p;
      for (std::size_t r = 1; r < 4; ++r)
        for (std::size_t k = 0; k < 4; ++k) f[r][k] = v[1 + 4 * r + k];
      s.frames->push_back(f);
    }
  }
  if (times.empty()) throw Error(ErrorCode::FormatError, "no data rows");
  s.t0 = times.front();
  if (times.size() >= 2) {
    s.dt = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
    if (!(s.dt > 0.0)) throw Error(ErrorCode::FormatError, "time column is not increasing");
    for (std::size_t i = 0; i < times.size(); ++i) {
      const double expect = s.time(i);
      if (std::abs(times[i] - expect) > 1e-9 * std::max(1.0, std::abs(expect))) {
        throw Error(ErrorCode::FormatError, "time column is not uniformly spaced");
      }
    }
  }
  return s;
}

inline void export_samples(const CurveSamples& s, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_samples_csv(os, s);
  if (!os) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

inline CurveSamples import_samples(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for reading");
  return read_samples_csv(is);
}

enum class ProjectedFormat { Csv, Ply };

/// Maps x₄ ∈ [−1, 1] linearly onto 0..255.
inline int gray_level(double x4) {
  const double g = std::round((std::clamp(x4, -1.0, 1.0) + 1.0) * 127.5);
  return static_cast<int>(g);
}

inline void write_projected(std::ostream& os, const std::vector<Projected3>& pts,
                            ProjectedFormat fmt) {
  if (fmt == ProjectedFormat::Csv) {
    os << "t,y1,y2,y3,c\n";
    for (const auto& p : pts) {
      os << format_double(p.t) << ',' << format_double(p.y1) << ',' << format_double(p.y2)
         << ',' << format_double(p.y3) << ',' << format_double(p.x4_color) << '\n';
    }
    return;
  }
  os << "ply\nformat ascii 1.0\nelement vertex " << pts.size()
     << "\nproperty double x\nproperty double y\nproperty double z\nproperty uchar gray\n"
        "end_header\n";
  for (const auto& p : pts) {
    os << format_double(p.y1) << ' ' << format_double(p.y2) << ' ' << format_double(p.y3)
       << ' ' << gray_level(p.x4_color) << '\n';
  }
}

inline void export_projected(const std::vector<Projected3>& pts, const std::string& path,
                             ProjectedFormat fmt) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  write_projected(os, pts, fmt);
  if (!os) throw Error(ErrorCode::IoError, "write to '" + path + "' failed");
}

}  // namespace helix3
