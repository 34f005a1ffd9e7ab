/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "subcloud/io.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>
#include <sstream>
#include <unistd.h>

#include "subcloud/error.hpp"

namespace subcloud {
namespace fs = std::filesystem;

std::string_view to_string(CloudFormat format) noexcept {
  switch (format) {
    case CloudFormat::PlyAscii: return "ply-ascii";
    case CloudFormat::PlyBinaryLE: return "ply-binary";
    case CloudFormat::XyzText: return "xyz";
  }
  return "unknown";
}

namespace {

enum class ScalarType { Int8, UInt8, Int16, UInt16, Int32, UInt32, Float32, Float64 };

std::optional<ScalarType> parse_scalar_type(std::string_view name) {
  if (name == "char" || name == "int8") return ScalarType::Int8;
  if (name == "uchar" || name == "uint8") return ScalarType::UInt8;
  if (name == "short" || name == "int16") return ScalarType::Int16;
  if (name == "ushort" || name == "uint16") return ScalarType::UInt16;
  if (name == "int" || name == "int32") return ScalarType::Int32;
  if (name == "uint" || name == "uint32") return ScalarType::UInt32;
  if (name == "float" || name == "float32") return ScalarType::Float32;
  if (name == "double" || name == "float64") return ScalarType::Float64;
  return std::nullopt;
}

std::size_t scalar_size(ScalarType t) {
  switch (t) {
    case ScalarType::Int8:
    case ScalarType::UInt8: return 1;
    case ScalarType::Int16:
    case ScalarType::UInt16: return 2;
    case ScalarType::Int32:
    case ScalarType::UInt32:
    case ScalarType::Float32: return 4;
    case ScalarType::Float64: return 8;
  }
  return 0;
}

template <typename T>
T load_le(const unsigned char* p) {
  T value;
  std::memcpy(&value, p, sizeof(T));
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    auto* bytes = reinterpret_cast<unsigned char*>(&value);
    std::reverse(bytes, bytes + sizeof(T));
  }
  return value;
}

template <typename T>
void append_le(std::string& out, T value) {
  char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big && sizeof(T) > 1) {
    std::reverse(bytes, bytes + sizeof(T));
  }
  out.append(bytes, sizeof(T));
}

double decode_scalar(ScalarType t, const unsigned char* p) {
  switch (t) {
    case ScalarType::Int8: return static_cast<std::int8_t>(*p);
    case ScalarType::UInt8: return *p;
    case ScalarType::Int16: return load_le<std::int16_t>(p);
    case ScalarType::UInt16: return load_le<std::uint16_t>(p);
    case ScalarType::Int32: return load_le<std::int32_t>(p);
    case ScalarType::UInt32: return load_le<std::uint32_t>(p);
    case ScalarType::Float32: return load_le<float>(p);
    case ScalarType::Float64: return load_le<double>(p);
  }
  return 0.0;
}

enum class Role { X, Y, Z, Red, Green, Blue, Intensity, Label, Ignored };

Role role_for_property(std::string_view name) {
  if (name == "x") return Role::X;
  if (name == "y") return Role::Y;
  if (name == "z") return Role::Z;
  if (name == "red") return Role::Red;
  if (name == "green") return Role::Green;
  if (name == "blue") return Role::Blue;
  if (name == "intensity") return Role::Intensity;
  if (name == "label") return Role::Label;
  return Role::Ignored;
}

struct PlyProperty {
  std::string name;
  ScalarType type = ScalarType::Float32;
  bool is_list = false;
  Role role = Role::Ignored;
};

struct PlyElement {
  std::string name;
  std::size_t count = 0;
  std::vector<PlyProperty> properties;

  std::size_t stride() const {
    std::size_t s = 0;
    for (const auto& p : properties) s += scalar_size(p.type);
    return s;
  }
  bool has_list() const {
    return std::any_of(properties.begin(), properties.end(),
                       [](const PlyProperty& p) { return p.is_list; });
  }
};

struct PlyHeader {
  CloudFormat format = CloudFormat::PlyAscii;
  std::vector<PlyElement> elements;
  std::size_t data_offset = 0;
};

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) tokens.push_back(line.substr(start, i - start));
  }
  return tokens;
}

double parse_number(std::string_view token, std::size_t row) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) {
    raise(Errc::Format, "unparsable number '" + std::string(token) + "' in row " +
                            std::to_string(row));
  }
  return value;
}

PlyHeader parse_ply_header(std::string_view data) {
  PlyHeader header;
  std::size_t pos = 0;
  auto next_line = [&]() -> std::optional<std::string_view> {
    if (pos >= data.size()) return std::nullopt;
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(pos, end - pos);
    pos = end + 1;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  };

  auto magic = next_line();
  if (!magic || *magic != "ply") raise(Errc::Format, "missing 'ply' magic line");

  bool have_format = false;
  while (true) {
    auto line = next_line();
    if (!line) raise(Errc::Format, "header ended without end_header");
    auto tokens = split_ws(*line);
    if (tokens.empty()) continue;
    const std::string_view key = tokens[0];
    if (key == "end_header") break;
    if (key == "comment" || key == "obj_info") continue;
    if (key == "format") {
      if (tokens.size() < 2) raise(Errc::Format, "malformed format line");
      if (tokens[1] == "ascii") {
        header.format = CloudFormat::PlyAscii;
      } else if (tokens[1] == "binary_little_endian") {
        header.format = CloudFormat::PlyBinaryLE;
      } else {
        raise(Errc::Format, "unsupported PLY encoding '" + std::string(tokens[1]) + "'");
      }
      have_format = true;
    } else if (key == "element") {
      if (tokens.size() != 3) raise(Errc::Format, "malformed element line");
      PlyElement element;
      element.name = std::string(tokens[1]);
      std::size_t count = 0;
      auto [ptr, ec] =
          std::from_chars(tokens[2].data(), tokens[2].data() + tokens[2].size(), count);
      if (ec != std::errc() || ptr != tokens[2].data() + tokens[2].size()) {
        raise(Errc::Format, "bad element count '" + std::string(tokens[2]) + "'");
      }
      element.count = count;
      header.elements.push_back(std::move(element));
    } else if (key == "property") {
      if (header.elements.empty()) raise(Errc::Format, "property before any element");
      PlyProperty prop;
      if (tokens.size() == 5 && tokens[1] == "list") {
        prop.is_list = true;
        prop.name = std::string(tokens[4]);
      } else if (tokens.size() == 3) {
        auto type = parse_scalar_type(tokens[1]);
        if (!type) raise(Errc::Format, "unknown property type '" + std::string(tokens[1]) + "'");
        prop.type = *type;
        prop.name = std::string(tokens[2]);
      } else {
        raise(Errc::Format, "malformed property line");
      }
      header.elements.back().properties.push_back(std::move(prop));
    } else {
      raise(Errc::Format, "unexpected header keyword '" + std::string(key) + "'");
    }
  }
  if (!have_format) raise(Errc::Format, "missing format line");
  header.data_offset = pos;
  return header;
}

struct Columns {
  std::vector<Vec3> coords;
  std::vector<Rgb> colors;
  std::vector<float> intensity;
  std::vector<std::uint32_t> labels;
  bool has_color = false;
  bool has_intensity = false;
  bool has_label = false;

  void reserve(std::size_t n) {
    coords.reserve(n);
    if (has_color) colors.reserve(n);
    if (has_intensity) intensity.reserve(n);
    if (has_label) labels.reserve(n);
  }

  PointCloud finish() {
    return PointCloud(std::move(coords),
                      has_color ? std::optional(std::move(colors)) : std::nullopt,
                      has_intensity ? std::optional(std::move(intensity)) : std::nullopt,
                      has_label ? std::optional(std::move(labels)) : std::nullopt);
  }
};

std::uint8_t to_channel(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::lround(v), 0L, 255L));
}

std::uint32_t to_label(double v, std::size_t row) {
  if (!(v >= 0.0) || v > 4294967295.0 || v != std::floor(v)) {
    raise(Errc::Format, "invalid label value in row " + std::to_string(row));
  }
  return static_cast<std::uint32_t>(v);
}

// Assigns decoded row values to columns; `values[k]` matches properties[k].
class RowSink {
 public:
  RowSink(const std::vector<PlyProperty>& props, Columns& cols) : props_(props), cols_(cols) {}

  void push(const double* values, std::size_t row) {
    Vec3 p;
    Rgb c{0, 0, 0};
    float intensity = 0.0f;
    std::uint32_t label = kUnlabeled;
    for (std::size_t k = 0; k < props_.size(); ++k) {
      const double v = values[k];
      switch (props_[k].role) {
        case Role::X: p.x = v; break;
        case Role::Y: p.y = v; break;
        case Role::Z: p.z = v; break;
        case Role::Red: c[0] = to_channel(v); break;
        case Role::Green: c[1] = to_channel(v); break;
        case Role::Blue: c[2] = to_channel(v); break;
        case Role::Intensity: intensity = static_cast<float>(v); break;
        case Role::Label: label = to_label(v, row); break;
        case Role::Ignored: break;
      }
    }
    if (!is_finite(p)) raise(Errc::Format, "non-finite coordinate in row " + std::to_string(row));
    cols_.coords.push_back(p);
    if (cols_.has_color) cols_.colors.push_back(c);
    if (cols_.has_intensity) cols_.intensity.push_back(intensity);
    if (cols_.has_label) cols_.labels.push_back(label);
  }

 private:
  const std::vector<PlyProperty>& props_;
  Columns& cols_;
};

PointCloud load_ply(std::string_view data, CloudFormat declared, LoadDiagnostics* diag) {
  PlyHeader header = parse_ply_header(data);
  if (header.format != declared) {
    raise(Errc::Format, "file is " + std::string(to_string(header.format)) + ", expected " +
                            std::string(to_string(declared)));
  }

  auto vertex_it = std::find_if(header.elements.begin(), header.elements.end(),
                                [](const PlyElement& e) { return e.name == "vertex"; });
  if (vertex_it == header.elements.end()) raise(Errc::Format, "no vertex element");
  PlyElement& vertex = *vertex_it;
  if (vertex.has_list()) raise(Errc::Format, "list property in vertex element");

  Columns cols;
  bool seen[3] = {false, false, false};
  int color_channels = 0;
  for (auto& prop : vertex.properties) {
    prop.role = role_for_property(prop.name);
    switch (prop.role) {
      case Role::X: seen[0] = true; break;
      case Role::Y: seen[1] = true; break;
      case Role::Z: seen[2] = true; break;
      case Role::Red:
      case Role::Green:
      case Role::Blue: ++color_channels; break;
      case Role::Intensity: cols.has_intensity = true; break;
      case Role::Label: cols.has_label = true; break;
      case Role::Ignored:
        if (diag) {
          ++diag->ignored_properties;
          diag->ignored_names.push_back(prop.name);
        }
        break;
    }
  }
  if (!seen[0] || !seen[1] || !seen[2]) raise(Errc::Format, "vertex element lacks x/y/z");
  cols.has_color = color_channels == 3;
  if (color_channels != 0 && color_channels != 3) {
    raise(Errc::Format, "partial color channels in vertex element");
  }
  cols.reserve(vertex.count);

  RowSink sink(vertex.properties, cols);
  std::vector<double> values(vertex.properties.size());
  std::size_t pos = header.data_offset;

  if (declared == CloudFormat::PlyBinaryLE) {
    for (const auto& element : header.elements) {
      const bool is_vertex = &element == &vertex;
      if (!is_vertex && element.has_list()) {
        raise(Errc::Format, "list element '" + element.name + "' precedes vertex data");
      }
      const std::size_t stride = element.stride();
      const std::size_t bytes = stride * element.count;
      if (data.size() - std::min(pos, data.size()) < bytes) {
        const std::size_t rows = stride ? (data.size() - std::min(pos, data.size())) / stride : 0;
        raise(Errc::Format, "element '" + element.name + "' declares " +
                                std::to_string(element.count) + " rows, file holds " +
                                std::to_string(rows));
      }
      if (is_vertex) {
        const auto* base = reinterpret_cast<const unsigned char*>(data.data()) + pos;
        for (std::size_t row = 0; row < element.count; ++row) {
          const unsigned char* p = base + row * stride;
          for (std::size_t k = 0; k < element.properties.size(); ++k) {
            values[k] = decode_scalar(element.properties[k].type, p);
            p += scalar_size(element.properties[k].type);
          }
          sink.push(values.data(), row);
        }
        break;
      }
      pos += bytes;
    }
  } else {
    auto next_line = [&]() -> std::optional<std::string_view> {
      while (pos < data.size()) {
        std::size_t end = data.find('\n', pos);
        if (end == std::string_view::npos) end = data.size();
        std::string_view line = data.substr(pos, end - pos);
        pos = end + 1;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (line.find_first_not_of(" \t") == std::string_view::npos) continue;
        return line;
      }
      return std::nullopt;
    };
    for (const auto& element : header.elements) {
      const bool is_vertex = &element == &vertex;
      for (std::size_t row = 0; row < element.count; ++row) {
        auto line = next_line();
        if (!line) {
          raise(Errc::Format, "element '" + element.name + "' declares " +
                                  std::to_string(element.count) + " rows, file holds " +
                                  std::to_string(row));
        }
        if (!is_vertex) continue;
        auto tokens = split_ws(*line);
        if (tokens.size() != element.properties.size()) {
          raise(Errc::Format, "row " + std::to_string(row) + " has " +
                                  std::to_string(tokens.size()) + " values, expected " +
                                  std::to_string(element.properties.size()));
        }
        for (std::size_t k = 0; k < tokens.size(); ++k) values[k] = parse_number(tokens[k], row);
        sink.push(values.data(), row);
      }
      if (is_vertex) break;
    }
  }
  return cols.finish();
}

std::string default_xyz_layout(std::size_t columns) {
  switch (columns) {
    case 3: return "xyz";
    case 4: return "xyzi";
    case 5: return "xyzil";
    case 6: return "xyzrgb";
    case 7: return "xyzrgbl";
    default: break;
  }
  raise(Errc::Format, "XYZ text needs 3 to 7 columns, found " + std::to_string(columns));
}

PointCloud load_xyz(std::string_view data, const LoadOptions& options) {
  std::string layout = options.xyz_columns;
  Columns cols;
  std::vector<PlyProperty> props;
  std::vector<double> values;
  std::optional<RowSink> sink;

  auto configure = [&](std::size_t columns) {
    if (layout.empty()) layout = default_xyz_layout(columns);
    if (layout.size() != columns) {
      raise(Errc::Format, "column layout '" + layout + "' does not match " +
                              std::to_string(columns) + " columns");
    }
    int colors = 0;
    bool seen[3] = {false, false, false};
    for (char role : layout) {
      PlyProperty prop;
      switch (role) {
        case 'x': prop.role = Role::X; seen[0] = true; break;
        case 'y': prop.role = Role::Y; seen[1] = true; break;
        case 'z': prop.role = Role::Z; seen[2] = true; break;
        case 'r': prop.role = Role::Red; ++colors; break;
        case 'g': prop.role = Role::Green; ++colors; break;
        case 'b': prop.role = Role::Blue; ++colors; break;
        case 'i': prop.role = Role::Intensity; cols.has_intensity = true; break;
        case 'l': prop.role = Role::Label; cols.has_label = true; break;
        case '_': prop.role = Role::Ignored; break;
        default: raise(Errc::InvalidArgument, std::string("unknown column role '") + role + "'");
      }
      props.push_back(prop);
    }
    if (!seen[0] || !seen[1] || !seen[2]) raise(Errc::InvalidArgument, "layout lacks x/y/z");
    if (colors != 0 && colors != 3) raise(Errc::InvalidArgument, "layout has partial color");
    cols.has_color = colors == 3;
    values.resize(props.size());
    sink.emplace(props, cols);
  };

  std::size_t pos = 0;
  std::size_t row = 0;
  while (pos < data.size()) {
    std::size_t end = data.find('\n', pos);
    if (end == std::string_view::npos) end = data.size();
    std::string_view line = data.substr(pos, end - pos);
    pos = end + 1;
    auto tokens = split_ws(line);
    if (tokens.empty() || tokens[0].starts_with('#') || tokens[0].starts_with("//")) continue;
    if (!sink) configure(tokens.size());
    if (tokens.size() != props.size()) {
      raise(Errc::Format, "row " + std::to_string(row) + " has " + std::to_string(tokens.size()) +
                              " columns, expected " + std::to_string(props.size()));
    }
    for (std::size_t k = 0; k < tokens.size(); ++k) values[k] = parse_number(tokens[k], row);
    sink->push(values.data(), row);
    ++row;
  }
  return cols.finish();
}

void append_number(std::string& out, double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

void append_number(std::string& out, float v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

void append_number(std::string& out, std::uint32_t v) {
  char buf[16];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, ptr);
}

void check_extra(const PointCloud& cloud, std::span<const ExtraColumn> extra) {
  for (const auto& col : extra) {
    if (col.values.size() != cloud.size()) {
      raise(Errc::ShapeMismatch, "extra column '" + col.name + "' has wrong length");
    }
  }
}

std::string encode_ply(const PointCloud& cloud, CloudFormat format,
                       std::span<const ExtraColumn> extra) {
  const bool binary = format == CloudFormat::PlyBinaryLE;
  std::string out;
  out += "ply\n";
  out += binary ? "format binary_little_endian 1.0\n" : "format ascii 1.0\n";
  out += "comment subcloud\n";
  out += "element vertex " + std::to_string(cloud.size()) + "\n";
  out += "property double x\nproperty double y\nproperty double z\n";
  if (cloud.has_colors()) out += "property uchar red\nproperty uchar green\nproperty uchar blue\n";
  if (cloud.has_intensity()) out += "property float intensity\n";
  if (cloud.has_labels()) out += "property uint label\n";
  for (const auto& col : extra) out += "property float " + col.name + "\n";
  out += "end_header\n";

  const auto coords = cloud.coords();
  const auto colors = cloud.colors();
  const auto intensity = cloud.intensity();
  const auto labels = cloud.labels();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Vec3& p = coords[i];
    if (binary) {
      append_le(out, p.x);
      append_le(out, p.y);
      append_le(out, p.z);
      if (cloud.has_colors()) out.append(reinterpret_cast<const char*>(colors[i].data()), 3);
      if (cloud.has_intensity()) append_le(out, intensity[i]);
      if (cloud.has_labels()) append_le(out, labels[i]);
      for (const auto& col : extra) append_le(out, col.values[i]);
    } else {
      append_number(out, p.x);
      out += ' ';
      append_number(out, p.y);
      out += ' ';
      append_number(out, p.z);
      if (cloud.has_colors()) {
        for (std::uint8_t c : colors[i]) {
          out += ' ';
          append_number(out, std::uint32_t{c});
        }
      }
      if (cloud.has_intensity()) {
        out += ' ';
        append_number(out, intensity[i]);
      }
      if (cloud.has_labels()) {
        out += ' ';
        append_number(out, labels[i]);
      }
      for (const auto& col : extra) {
        out += ' ';
        append_number(out, col.values[i]);
      }
      out += '\n';
    }
  }
  return out;
}

std::string encode_xyz(const PointCloud& cloud, std::span<const ExtraColumn> extra) {
  std::string out;
  const auto coords = cloud.coords();
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    append_number(out, coords[i].x);
    out += ' ';
    append_number(out, coords[i].y);
    out += ' ';
    append_number(out, coords[i].z);
    if (cloud.has_colors()) {
      for (std::uint8_t c : cloud.colors()[i]) {
        out += ' ';
        append_number(out, std::uint32_t{c});
      }
    }
    if (cloud.has_intensity()) {
      out += ' ';
      append_number(out, cloud.intensity()[i]);
    }
    if (cloud.has_labels()) {
      out += ' ';
      append_number(out, cloud.labels()[i]);
    }
    for (const auto& col : extra) {
      out += ' ';
      append_number(out, col.values[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::Io, "cannot open '" + path.string() + "' for reading");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) raise(Errc::Io, "read failed for '" + path.string() + "'");
  return std::move(buffer).str();
}

void write_file_atomic(const fs::path& path, std::string_view bytes) {
  fs::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) raise(Errc::Io, "cannot open '" + path.string() + "' for writing");
    out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      raise(Errc::Io, "write failed for '" + path.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    raise(Errc::Io, "cannot move temporary file onto '" + path.string() + "'");
  }
}

PointCloud load(const fs::path& path, CloudFormat format, const LoadOptions& options,
                LoadDiagnostics* diagnostics) {
  const std::string data = read_file(path);
  if (format == CloudFormat::XyzText) return load_xyz(data, options);
  return load_ply(data, format, diagnostics);
}

CloudFormat detect_format(const fs::path& path) {
  std::string ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (ext != ".ply") return CloudFormat::XyzText;
  std::ifstream in(path, std::ios::binary);
  if (!in) raise(Errc::Io, "cannot open '" + path.string() + "' for reading");
  std::string line;
  while (std::getline(in, line)) {
    if (line.starts_with("format")) {
      if (line.find("binary_little_endian") != std::string::npos) return CloudFormat::PlyBinaryLE;
      if (line.find("ascii") != std::string::npos) return CloudFormat::PlyAscii;
      raise(Errc::Format, "unsupported PLY encoding in '" + path.string() + "'");
    }
    if (line.starts_with("end_header")) break;
  }
  raise(Errc::Format, "no format line in '" + path.string() + "'");
}

void save(const PointCloud& cloud, const fs::path& path, CloudFormat format,
          std::span<const ExtraColumn> extra) {
  check_extra(cloud, extra);
  const std::string bytes =
      format == CloudFormat::XyzText ? encode_xyz(cloud, extra) : encode_ply(cloud, format, extra);
  write_file_atomic(path, bytes);
}

}  // namespace subcloud
