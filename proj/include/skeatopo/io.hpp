/* Copyright 2026 The skeatopo Authors. All Rights Reserved.

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

// File formats.
//
//   masks   8-bit grayscale PNG, 0 = object, 255 = boundary (any nonzero
//           value reads as boundary)
//   labels  16-bit grayscale PNG
//   floats  "FRAS": 4 magic bytes, then little-endian u32 width, height,
//           channels, then little-endian f32 values, row-major with channels
//           interleaved
//
// JSON numbers are rounded to 9 significant digits.

#ifndef SKEATOPO_IO_HPP
#define SKEATOPO_IO_HPP

#include <png.h>

#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "skeatopo/metrics.hpp"
#include "skeatopo/skeaw.hpp"
#include "skeatopo/raster.hpp"
#include "skeatopo/synth.hpp"

namespace skeatopo::io {

namespace detail {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using File = std::unique_ptr<std::FILE, FileCloser>;

inline File open_file(const std::filesystem::path& path, const char* mode) {
  File f(std::fopen(path.string().c_str(), mode));
  if (!f) throw Error("cannot open '" + path.string() + "'");
  return f;
}

[[noreturn]] inline void png_fail(png_structp, png_const_charp msg) {
  throw Error(std::string("png: ") + msg);
}

inline void png_warn(png_structp, png_const_charp) {}

// 8- or 16-bit grayscale samples, row-major.
struct GrayImage {
  int width = 0;
  int height = 0;
  int depth = 8;
  std::vector<std::uint16_t> samples;
};

inline GrayImage read_gray_png(const std::filesystem::path& path) {
  File f = open_file(path, "rb");
  std::array<unsigned char, 8> sig{};
  if (std::fread(sig.data(), 1, sig.size(), f.get()) != sig.size() ||
      png_sig_cmp(sig.data(), 0, sig.size()) != 0) {
    throw Error("'" + path.string() + "' is not a PNG file");
  }
  png_structp png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                           png_fail, png_warn);
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_read_struct(png, info, nullptr); }
  } guard{&png, &info};

  png_init_io(png, f.get());
  png_set_sig_bytes(png, static_cast<int>(sig.size()));
  png_read_info(png, info);
  GrayImage img;
  img.width = static_cast<int>(png_get_image_width(png, info));
  img.height = static_cast<int>(png_get_image_height(png, info));
  const int color = png_get_color_type(png, info);
  const int bits = png_get_bit_depth(png, info);
  if (color != PNG_COLOR_TYPE_GRAY && color != PNG_COLOR_TYPE_GRAY_ALPHA) {
    throw Error("'" + path.string() + "' is not a grayscale PNG");
  }
  if (color == PNG_COLOR_TYPE_GRAY_ALPHA) png_set_strip_alpha(png);
  if (bits < 8) png_set_expand_gray_1_2_4_to_8(png);
  img.depth = bits == 16 ? 16 : 8;
  if (img.depth == 16 && std::endian::native == std::endian::little) {
    png_set_swap(png);
  }
  png_read_update_info(png, info);
  const std::size_t row_bytes = png_get_rowbytes(png, info);
  std::vector<unsigned char> row(row_bytes);
  img.samples.resize(static_cast<std::size_t>(img.width) * img.height);
  for (int y = 0; y < img.height; ++y) {
    png_read_row(png, row.data(), nullptr);
    for (int x = 0; x < img.width; ++x) {
      std::uint16_t v = 0;
      if (img.depth == 16) {
        std::memcpy(&v, row.data() + 2 * x, 2);
      } else {
        v = row[x];
      }
      img.samples[static_cast<std::size_t>(y) * img.width + x] = v;
    }
  }
  png_read_end(png, nullptr);
  return img;
}

inline void write_gray_png(const std::filesystem::path& path, int width,
                           int height, int depth,
                           const std::vector<std::uint16_t>& samples) {
  File f = open_file(path, "wb");
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr,
                                            png_fail, png_warn);
  png_infop info = png_create_info_struct(png);
  struct Guard {
    png_structp* png;
    png_infop* info;
    ~Guard() { png_destroy_write_struct(png, info); }
  } guard{&png, &info};
  png_init_io(png, f.get());
  png_set_IHDR(png, info, static_cast<png_uint_32>(width),
               static_cast<png_uint_32>(height), depth, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  if (depth == 16 && std::endian::native == std::endian::little) {
    png_set_swap(png);
  }
  std::vector<unsigned char> row(static_cast<std::size_t>(width) * (depth / 8));
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      const std::uint16_t v = samples[static_cast<std::size_t>(y) * width + x];
      if (depth == 16) {
        std::memcpy(row.data() + 2 * x, &v, 2);
      } else {
        row[x] = static_cast<unsigned char>(v);
      }
    }
    png_write_row(png, row.data());
  }
  png_write_end(png, nullptr);
}

}  // namespace detail

inline BinaryMask read_mask(const std::filesystem::path& path) {
  const auto img = detail::read_gray_png(path);
  BinaryMask m(img.width, img.height);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = img.samples[i] != 0;
  return m;
}

inline void write_mask(const std::filesystem::path& path, const BinaryMask& m) {
  std::vector<std::uint16_t> s(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) s[i] = m[i] ? 255 : 0;
  detail::write_gray_png(path, m.width(), m.height(), 8, s);
}

inline LabelMap read_labels(const std::filesystem::path& path) {
  const auto img = detail::read_gray_png(path);
  LabelMap m(img.width, img.height);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = img.samples[i];
  return m;
}

inline void write_labels(const std::filesystem::path& path, const LabelMap& m) {
  std::vector<std::uint16_t> s(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] < 0 || m[i] > 0xFFFF) {
      throw Error("label " + std::to_string(m[i]) +
                  " does not fit a 16-bit PNG");
    }
    s[i] = static_cast<std::uint16_t>(m[i]);
  }
  detail::write_gray_png(path, m.width(), m.height(), 16, s);
}

/// A multi-channel float raster as stored in a FRAS file.
struct FloatRaster {
  std::uint32_t width = 0;
  std::uint32_t height = 0;
  std::uint32_t channels = 0;
  std::vector<float> values;

  ScalarField channel(std::uint32_t c) const {
    if (c >= channels) throw Error("FRAS: channel out of range");
    ScalarField out(static_cast<int>(width), static_cast<int>(height));
    for (std::size_t i = 0; i < out.size(); ++i) {
      out[i] = values[i * channels + c];
    }
    return out;
  }
};

namespace detail {

inline void put_u32(std::ostream& os, std::uint32_t v) {
  const std::array<char, 4> b{static_cast<char>(v & 0xFF),
                              static_cast<char>((v >> 8) & 0xFF),
                              static_cast<char>((v >> 16) & 0xFF),
                              static_cast<char>((v >> 24) & 0xFF)};
  os.write(b.data(), 4);
}

inline std::uint32_t get_u32(std::istream& is) {
  std::array<unsigned char, 4> b{};
  if (!is.read(reinterpret_cast<char*>(b.data()), 4)) {
    throw Error("FRAS: truncated header");
  }
  return b[0] | (b[1] << 8) | (b[2] << 16) |
         (static_cast<std::uint32_t>(b[3]) << 24);
}

}  // namespace detail

inline constexpr std::array<char, 4> kFrasMagic{'F', 'R', 'A', 'S'};

inline FloatRaster read_fras(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  std::array<char, 4> magic{};
  if (!is.read(magic.data(), 4) || magic != kFrasMagic) {
    throw Error("'" + path.string() + "' is not a FRAS file");
  }
  FloatRaster r;
  r.width = detail::get_u32(is);
  r.height = detail::get_u32(is);
  r.channels = detail::get_u32(is);
  if (r.width == 0 || r.height == 0 || r.channels == 0) {
    throw Error("FRAS: empty raster");
  }
  const std::size_t n =
      static_cast<std::size_t>(r.width) * r.height * r.channels;
  if (std::filesystem::file_size(path) != 16 + 4 * n) {
    throw Error("FRAS: '" + path.string() + "' size does not match its header");
  }
  r.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::uint32_t bits = detail::get_u32(is);
    r.values[i] = std::bit_cast<float>(bits);
  }
  return r;
}

inline void write_fras(const std::filesystem::path& path,
                       const FloatRaster& r) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  os.write(kFrasMagic.data(), 4);
  detail::put_u32(os, r.width);
  detail::put_u32(os, r.height);
  detail::put_u32(os, r.channels);
  for (float v : r.values) detail::put_u32(os, std::bit_cast<std::uint32_t>(v));
  if (!os) throw Error("write failed for '" + path.string() + "'");
}

inline FloatRaster to_fras(const std::vector<const ScalarField*>& channels) {
  FloatRaster r;
  r.width = static_cast<std::uint32_t>(channels.front()->width());
  r.height = static_cast<std::uint32_t>(channels.front()->height());
  r.channels = static_cast<std::uint32_t>(channels.size());
  r.values.resize(static_cast<std::size_t>(r.width) * r.height * r.channels);
  for (std::size_t c = 0; c < channels.size(); ++c) {
    require_same_shape(*channels.front(), *channels[c], "to_fras");
    for (std::size_t i = 0; i < channels[c]->size(); ++i) {
      r.values[i * r.channels + c] = static_cast<float>((*channels[c])[i]);
    }
  }
  return r;
}

inline void write_field(const std::filesystem::path& path,
                        const ScalarField& f) {
  write_fras(path, to_fras({&f}));
}

/// Probabilities from a FRAS file: one channel is p1, two channels are
/// (p0, p1).
inline ProbabilityPair read_probabilities(const std::filesystem::path& path) {
  const FloatRaster r = read_fras(path);
  ProbabilityPair probs;
  if (r.channels == 1) {
    probs = ProbabilityPair::from_foreground(r.channel(0));
  } else if (r.channels == 2) {
    probs = {r.channel(0), r.channel(1)};
  } else {
    throw Error("probability raster must have 1 or 2 channels");
  }
  // f32 storage: allow single-precision rounding in p0 + p1
  probs.validate(1e-6);
  return probs;
}

// ---------------------------------------------------------------------------
// JSON

/// Rounds to 9 significant digits; the JSON writer then prints the shortest
/// form, which is never longer.
inline double json_number(double v) {
  if (!std::isfinite(v)) throw Error("non-finite value in JSON output");
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.9g", v);
  return std::stod(buf.data());
}

inline nlohmann::ordered_json to_json(const MetricReport& r) {
  return {{"vi_split", json_number(r.vi_split)},
          {"vi_merge", json_number(r.vi_merge)},
          {"vi", json_number(r.vi)},
          {"ari", json_number(r.ari)},
          {"map", json_number(r.map)},
          {"betti_error", json_number(r.betti_error)},
          {"dice", json_number(r.dice)}};
}

inline SynthSpec synth_spec_from_json(const nlohmann::json& j) {
  try {
    SynthSpec s;
    s.width = j.at("width").get<int>();
    s.height = j.at("height").get<int>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.kind = parse_synth_kind(j.at("kind").get<std::string>());
    s.n_sites = j.at("n_sites").get<int>();
    s.boundary_thickness = j.at("boundary_thickness").get<int>();
    if (j.contains("errors")) {
      for (const auto& e : j.at("errors")) {
        s.errors.push_back({parse_error_type(e.at("type").get<std::string>()),
                            e.at("count").get<int>()});
      }
    }
    s.validate();
    return s;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad synth spec: ") + e.what());
  }
}

inline nlohmann::ordered_json to_json(const SynthSpec& s) {
  nlohmann::ordered_json errors = nlohmann::ordered_json::array();
  for (const auto& e : s.errors) {
    errors.push_back({{"type", to_string(e.type)}, {"count", e.count}});
  }
  return {{"width", s.width},
          {"height", s.height},
          {"seed", s.seed},
          {"kind", to_string(s.kind)},
          {"n_sites", s.n_sites},
          {"boundary_thickness", s.boundary_thickness},
          {"errors", errors}};
}

inline SynthSpec read_synth_spec(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error("cannot open '" + path.string() + "'");
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::exception& e) {
    throw Error("bad synth spec: " + std::string(e.what()));
  }
  return synth_spec_from_json(j);
}

}  // namespace skeatopo::io

#endif  // SKEATOPO_IO_HPP
