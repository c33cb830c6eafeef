#include "nagumo/io.hpp"

#include <zlib.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace nagumo {

namespace {

std::string format_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out.write(data.data(), static_cast<std::streamsize>(data.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void put_u32(std::string& s, std::uint32_t v) {
  s.push_back(static_cast<char>((v >> 24) & 0xff));
  s.push_back(static_cast<char>((v >> 16) & 0xff));
  s.push_back(static_cast<char>((v >> 8) & 0xff));
  s.push_back(static_cast<char>(v & 0xff));
}

void append_chunk(std::string& png, const char type[4], const std::string& payload) {
  put_u32(png, static_cast<std::uint32_t>(payload.size()));
  std::string body(type, 4);
  body += payload;
  png += body;
  const auto crc = crc32(0L, reinterpret_cast<const Bytef*>(body.data()), static_cast<uInt>(body.size()));
  put_u32(png, static_cast<std::uint32_t>(crc));
}

}  // namespace

HeatMap build_heatmap(const Trajectory& traj, int j_min, int j_max) {
  HeatMap map;
  std::size_t first = 0;
  if (traj.times.size() > 1 && traj.times.front() == 0.0) first = 1;
  for (std::size_t i = first; i < traj.times.size(); ++i) map.time_axis.push_back(traj.times[i]);
  for (int ord = -j_max; ord <= -j_min; ++ord) map.ord_axis.push_back(ord);
  map.values.assign(map.ord_axis.size(), std::vector<double>(map.time_axis.size(), 0.0));
  for (std::size_t row = 0; row < map.ord_axis.size(); ++row) {
    const int shell = -map.ord_axis[row];
    for (std::size_t col = 0; col < map.time_axis.size(); ++col) {
      map.values[row][col] = traj.snapshots[first + col].value_at_shell(shell);
    }
  }
  return map;
}

void export_csv(const HeatMap& map, const std::string& path) {
  std::ostringstream out;
  out << "ord";
  for (double t : map.time_axis) out << ",t=" << format_full(t);
  out << "\n";
  for (std::size_t row = 0; row < map.ord_axis.size(); ++row) {
    out << map.ord_axis[row];
    for (double v : map.values[row]) out << "," << format_full(v);
    out << "\n";
  }
  write_file(path, out.str());
}

std::vector<std::vector<double>> parse_csv_matrix(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open: " + path);
  std::string line;
  std::getline(in, line);  // header
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    bool first = true;
    while (std::getline(ss, cell, ',')) {
      if (first) {
        first = false;
        continue;  // ord label
      }
      row.push_back(std::strtod(cell.c_str(), nullptr));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void export_png(const HeatMap& map, const std::string& path, double cap, int upscale) {
  if (upscale < 1) throw std::invalid_argument("export_png: upscale must be >= 1");
  const std::size_t rows = map.ord_axis.size();
  const std::size_t cols = map.time_axis.size();
  if (rows == 0 || cols == 0) throw std::invalid_argument("export_png: empty heat map");

  double top = 0.0;
  for (const auto& row : map.values) {
    for (double v : row) {
      if (std::isfinite(v)) top = std::max(top, v);
    }
  }
  const double scale_cap = std::min(std::max(top, 0.0), cap);

  const std::size_t width = cols * static_cast<std::size_t>(upscale);
  const std::size_t height = rows * static_cast<std::size_t>(upscale);
  std::string raw;
  raw.reserve(height * (width + 1));
  for (std::size_t y = 0; y < height; ++y) {
    raw.push_back('\0');  // filter: none
    const std::size_t row = y / static_cast<std::size_t>(upscale);
    for (std::size_t x = 0; x < width; ++x) {
      const std::size_t col = x / static_cast<std::size_t>(upscale);
      double v = map.values[row][col];
      if (!std::isfinite(v)) v = scale_cap;
      double intensity = scale_cap > 0.0 ? std::clamp(v, 0.0, scale_cap) / scale_cap : 0.0;
      raw.push_back(static_cast<char>(std::lround(intensity * 255.0)));
    }
  }

  uLongf bound = compressBound(static_cast<uLong>(raw.size()));
  std::string compressed(bound, '\0');
  if (compress2(reinterpret_cast<Bytef*>(compressed.data()), &bound, reinterpret_cast<const Bytef*>(raw.data()),
                static_cast<uLong>(raw.size()), 9) != Z_OK) {
    throw std::runtime_error("export_png: deflate failed");
  }
  compressed.resize(bound);

  std::string png("\x89PNG\r\n\x1a\n", 8);
  std::string ihdr;
  put_u32(ihdr, static_cast<std::uint32_t>(width));
  put_u32(ihdr, static_cast<std::uint32_t>(height));
  ihdr.push_back(8);   // bit depth
  ihdr.push_back(0);   // grayscale
  ihdr.push_back(0);   // compression
  ihdr.push_back(0);   // filter
  ihdr.push_back(0);   // no interlace
  append_chunk(png, "IHDR", ihdr);
  append_chunk(png, "IDAT", compressed);
  append_chunk(png, "IEND", "");
  write_file(path, png);
}

void export_json(const Trajectory& traj, const std::string& params_echo,
                 const std::optional<OdeReport>& ode, const std::string& path) {
  nlohmann::json j;
  auto number_or_null = [](double v) -> nlohmann::json {
    if (std::isnan(v)) return nullptr;
    if (std::isinf(v)) return "inf";
    return v;
  };
  j["times"] = traj.times;
  j["sup_norm"] = traj.sup_norm;
  j["l2_norm"] = traj.l2_norm;
  j["hs_norm"] = traj.hs_norm;
  j["mass"] = traj.mass;
  nlohmann::json gray = nlohmann::json::array();
  for (double g : traj.g_value) gray.push_back(number_or_null(g));
  j["G_value"] = gray;
  if (traj.blowup) {
    j["blowup"] = {{"t_lo", traj.blowup->t_lo},
                   {"t_hi", traj.blowup->t_hi},
                   {"sup_lo", number_or_null(traj.blowup->sup_lo)},
                   {"sup_hi", number_or_null(traj.blowup->sup_hi)}};
  } else {
    j["blowup"] = nullptr;
  }
  j["error_budget"] = traj.error_budget;
  j["params"] = nlohmann::json::parse(params_echo);
  if (ode) {
    j["comparison_ode"] = {{"weight_r", ode->weight_r},
                           {"g0_signed", ode->g0_signed},
                           {"g0_positive", ode->g0_positive},
                           {"blowup_time_signed", number_or_null(ode->blowup_time_signed)},
                           {"blowup_time_positive", number_or_null(ode->blowup_time_positive)},
                           {"monitor_frames", ode->monitor_frames},
                           {"monitor_violations", ode->monitor_violations}};
  } else {
    j["comparison_ode"] = nullptr;
  }
  write_file(path, j.dump(2) + "\n");
}

}  // namespace nagumo
