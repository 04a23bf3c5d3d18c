// Copyright 2026 The sledsim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sled/sweep/writers.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <sstream>
#include <system_error>

#include <json.hpp>

#include "sled/errors.hpp"

namespace sled::sweep {

std::string format_number(double v) {
  if (v == 0.0) v = 0.0;  // drops the sign of -0
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  std::error_code ec;
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec)
      throw IoError("cannot create directory '" + path.parent_path().string() +
                    "': " + ec.message());
  }
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw IoError("write to '" + tmp.string() + "' failed");
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

std::string sha256_hex(const std::string& data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1)
    throw IoError("sha256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[digest[i] >> 4];
    out += kHex[digest[i] & 0xF];
  }
  return out;
}

std::string csv_table(const std::vector<std::string>& header,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (i) out += ',';
    out += header[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  return out;
}

// nlohmann prints doubles with %.17g-style round-trip precision; -0 is
// folded into 0 so that sign noise never reaches the files.
std::string density_matrix_json(const PairDensityMatrix& m) {
  using nlohmann::json;
  const std::size_t n = m.size();
  json basis = json::array();
  for (const auto& p : m.basis().pairs()) basis.push_back({p.l1, p.l2});
  json re = json::array();
  json im = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json rr = json::array();
    json ir = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      rr.push_back(m(i, j).real() + 0.0);
      ir.push_back(m(i, j).imag() + 0.0);
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ir));
  }
  // One matrix row per line keeps the files diffable.
  std::string out = "{\n \"basis\": " + basis.dump() + ",\n";
  for (const auto* part : {"re", "im"}) {
    const json& rows = std::string(part) == "re" ? re : im;
    out += std::string(" \"") + part + "\": [\n";
    for (std::size_t i = 0; i < n; ++i)
      out += "  " + rows[i].dump() + (i + 1 < n ? ",\n" : "\n");
    out += std::string(" ]") + (std::string(part) == "re" ? ",\n" : "\n");
  }
  return out + "}\n";
}

PairDensityMatrix parse_density_matrix_json(const std::string& text) {
  using nlohmann::json;
  try {
    const json doc = json::parse(text);
    std::vector<OamPair> pairs;
    for (const auto& p : doc.at("basis")) {
      if (!p.is_array() || p.size() != 2)
        throw IoError("basis entries must be [l1, l2]");
      pairs.push_back({p[0].get<int>(), p[1].get<int>()});
    }
    const std::size_t n = pairs.size();
    const auto& re = doc.at("re");
    const auto& im = doc.at("im");
    if (re.size() != n || im.size() != n)
      throw IoError("matrix size does not match basis");
    ComplexMatrix entries(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (re[i].size() != n || im[i].size() != n)
        throw IoError("matrix row size does not match basis");
      for (std::size_t j = 0; j < n; ++j)
        entries(i, j) = {re[i][j].get<double>(), im[i][j].get<double>()};
    }
    return PairDensityMatrix(OamPairBasis(std::move(pairs)), std::move(entries));
  } catch (const json::exception& e) {
    throw IoError(std::string("malformed density-matrix JSON: ") + e.what());
  } catch (const DomainError& e) {
    throw IoError(std::string("invalid density-matrix JSON: ") + e.what());
  }
}

namespace {

std::string escape_xml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string fixed(double v, int digits = 2) {
  std::ostringstream s;
  s.setf(std::ios::fixed);
  s.precision(digits);
  s << v;
  return s.str();
}

// Viridis-like ramp through five anchor colors.
std::string ramp(double x) {
  static constexpr double kAnchors[5][3] = {{68, 1, 84},
                                            {59, 82, 139},
                                            {33, 145, 140},
                                            {94, 201, 98},
                                            {253, 231, 37}};
  x = std::clamp(std::isfinite(x) ? x : 0.0, 0.0, 1.0) * 4.0;
  const int i = std::min(3, static_cast<int>(x));
  const double f = x - i;
  char buf[8];
  int rgb[3];
  for (int c = 0; c < 3; ++c)
    rgb[c] = static_cast<int>(
        std::lround(kAnchors[i][c] + f * (kAnchors[i + 1][c] - kAnchors[i][c])));
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x", rgb[0], rgb[1], rgb[2]);
  return buf;
}

constexpr double kMargin = 70.0;

}  // namespace

std::string svg_heatmap(const HeatmapSpec& spec) {
  const std::size_t rows = spec.row_labels.size();
  const std::size_t cols = spec.col_labels.size();
  if (spec.values.size() != rows * cols)
    throw ContractError("svg_heatmap: value count does not match labels");
  const double cell = std::clamp(480.0 / std::max<std::size_t>(cols, 1), 3.0, 40.0);
  const double cell_h = std::clamp(480.0 / std::max<std::size_t>(rows, 1), 3.0, 40.0);
  const double width = 2 * kMargin + cell * cols + 60.0;
  const double height = 2 * kMargin + cell_h * rows;

  const double lo_floor = spec.scale_max > 0 ? spec.scale_max * 1e-6 : 1e-300;
  auto scaled = [&](double v) {
    if (spec.log_scale) {
      const double lo = std::log10(std::max(spec.scale_min, lo_floor));
      const double hi = std::log10(std::max(spec.scale_max, lo_floor));
      if (hi <= lo) return 0.0;
      return (std::log10(std::max(v, lo_floor)) - lo) / (hi - lo);
    }
    const double span = spec.scale_max - spec.scale_min;
    return span > 0 ? (v - spec.scale_min) / span : 0.0;
  };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width)
    << "\" height=\"" << fixed(height) << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  s << "<text x=\"" << fixed(width / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
    << escape_xml(spec.title) << "</text>\n";
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      s << "<rect x=\"" << fixed(kMargin + c * cell) << "\" y=\""
        << fixed(kMargin + r * cell_h) << "\" width=\"" << fixed(cell)
        << "\" height=\"" << fixed(cell_h) << "\" fill=\""
        << ramp(scaled(spec.values[r * cols + c])) << "\"/>\n";
    }
  }
  // Thin out labels so that they do not overlap.
  const std::size_t col_step = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(14.0 / cell)));
  const std::size_t row_step = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(12.0 / cell_h)));
  for (std::size_t c = 0; c < cols; c += col_step) {
    const double x = kMargin + (c + 0.5) * cell;
    const double y = kMargin + rows * cell_h + 12;
    s << "<text x=\"" << fixed(x) << "\" y=\"" << fixed(y)
      << "\" text-anchor=\"end\" transform=\"rotate(-60 " << fixed(x) << ' '
      << fixed(y) << ")\">" << escape_xml(spec.col_labels[c]) << "</text>\n";
  }
  for (std::size_t r = 0; r < rows; r += row_step) {
    s << "<text x=\"" << fixed(kMargin - 4) << "\" y=\""
      << fixed(kMargin + (r + 0.5) * cell_h + 3) << "\" text-anchor=\"end\">"
      << escape_xml(spec.row_labels[r]) << "</text>\n";
  }
  s << "<text x=\"" << fixed(kMargin + cols * cell / 2) << "\" y=\""
    << fixed(height - 6) << "\" text-anchor=\"middle\">" << escape_xml(spec.x_title)
    << "</text>\n";
  s << "<text x=\"14\" y=\"" << fixed(kMargin + rows * cell_h / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 "
    << fixed(kMargin + rows * cell_h / 2) << ")\">" << escape_xml(spec.y_title)
    << "</text>\n";

  // Color bar.
  const double bar_x = kMargin + cols * cell + 20;
  const double bar_h = rows * cell_h;
  constexpr int kSteps = 32;
  for (int i = 0; i < kSteps; ++i) {
    s << "<rect x=\"" << fixed(bar_x) << "\" y=\""
      << fixed(kMargin + bar_h * (kSteps - 1 - i) / kSteps) << "\" width=\"12\" height=\""
      << fixed(bar_h / kSteps + 0.5) << "\" fill=\"" << ramp((i + 0.5) / kSteps)
      << "\"/>\n";
  }
  s << "<text x=\"" << fixed(bar_x) << "\" y=\"" << fixed(kMargin - 4) << "\">"
    << format_number(spec.scale_max) << "</text>\n";
  s << "<text x=\"" << fixed(bar_x) << "\" y=\"" << fixed(kMargin + bar_h + 12)
    << "\">" << (spec.log_scale ? format_number(std::max(spec.scale_min, lo_floor))
                                : format_number(spec.scale_min))
    << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string svg_line_plot(const std::string& title, const std::string& x_title,
                          const std::string& y_title,
                          const std::vector<LineSeries>& series) {
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c",
                                            "#9467bd", "#ff7f0e", "#8c564b"};
  constexpr double kW = 480, kH = 320;
  double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
  for (const auto& ser : series) {
    if (ser.x.size() != ser.y.size())
      throw ContractError("svg_line_plot: x and y lengths differ");
    for (double v : ser.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : ser.y) y0 = std::min(y0, v), y1 = std::max(y1, v);
  }
  if (!(x1 > x0)) x0 -= 0.5, x1 += 0.5;
  if (!(y1 > y0)) y0 -= 0.5, y1 += 0.5;
  auto px = [&](double x) { return kMargin + (x - x0) / (x1 - x0) * kW; };
  auto py = [&](double y) { return kMargin + (y1 - y) / (y1 - y0) * kH; };

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(kW + 2 * kMargin + 100)
    << "\" height=\"" << fixed(kH + 2 * kMargin)
    << "\" font-family=\"sans-serif\" font-size=\"10\">\n";
  s << "<text x=\"" << fixed(kMargin + kW / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">"
    << escape_xml(title) << "</text>\n";
  s << "<rect x=\"" << fixed(kMargin) << "\" y=\"" << fixed(kMargin) << "\" width=\""
    << fixed(kW) << "\" height=\"" << fixed(kH)
    << "\" fill=\"none\" stroke=\"#444\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double xv = x0 + (x1 - x0) * i / 4, yv = y0 + (y1 - y0) * i / 4;
    s << "<text x=\"" << fixed(px(xv)) << "\" y=\"" << fixed(kMargin + kH + 14)
      << "\" text-anchor=\"middle\">" << fixed(xv, 3) << "</text>\n";
    s << "<text x=\"" << fixed(kMargin - 4) << "\" y=\"" << fixed(py(yv) + 3)
      << "\" text-anchor=\"end\">" << fixed(yv, 3) << "</text>\n";
  }
  s << "<text x=\"" << fixed(kMargin + kW / 2) << "\" y=\"" << fixed(kH + 2 * kMargin - 20)
    << "\" text-anchor=\"middle\">" << escape_xml(x_title) << "</text>\n";
  s << "<text x=\"14\" y=\"" << fixed(kMargin + kH / 2)
    << "\" text-anchor=\"middle\" transform=\"rotate(-90 14 " << fixed(kMargin + kH / 2)
    << ")\">" << escape_xml(y_title) << "</text>\n";
  for (std::size_t k = 0; k < series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    s << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < series[k].x.size(); ++i) {
      if (i) s << ' ';
      s << fixed(px(series[k].x[i])) << ',' << fixed(py(series[k].y[i]));
    }
    s << "\"/>\n";
    const double ly = kMargin + 14 * (k + 1);
    s << "<line x1=\"" << fixed(kMargin + kW + 10) << "\" y1=\"" << fixed(ly - 3)
      << "\" x2=\"" << fixed(kMargin + kW + 30) << "\" y2=\"" << fixed(ly - 3)
      << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    s << "<text x=\"" << fixed(kMargin + kW + 34) << "\" y=\"" << fixed(ly) << "\">"
      << escape_xml(series[k].label) << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace sled::sweep
