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

// Raster containers and the morphology/connectivity primitives everything
// else is built on. Pixels are addressed as (x, y) = (column, row) and stored
// row-major.
//
// Connectivity convention: objects (background, value 0) are 4-connected,
// boundaries (foreground, value 1) are 8-connected. Pixels outside the image
// belong to no component and are never foreground.

#ifndef SKEATOPO_RASTER_HPP
#define SKEATOPO_RASTER_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace skeatopo {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <typename T>
class Raster {
 public:
  using value_type = T;

  Raster() = default;
  Raster(int width, int height, T fill = T{})
      : width_(width), height_(height) {
    if (width < 1 || height < 1) {
      throw Error("raster dimensions must be positive, got " +
                  std::to_string(width) + "x" + std::to_string(height));
    }
    values_.assign(static_cast<std::size_t>(width) * height, fill);
  }

  int width() const { return width_; }
  int height() const { return height_; }
  std::size_t size() const { return values_.size(); }
  bool empty() const { return values_.empty(); }

  bool contains(int x, int y) const {
    return x >= 0 && y >= 0 && x < width_ && y < height_;
  }
  std::size_t index(int x, int y) const {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  T& operator()(int x, int y) { return values_[index(x, y)]; }
  const T& operator()(int x, int y) const { return values_[index(x, y)]; }
  T& operator[](std::size_t i) { return values_[i]; }
  const T& operator[](std::size_t i) const { return values_[i]; }

  std::span<T> values() { return values_; }
  std::span<const T> values() const { return values_; }

  template <typename U>
  bool same_shape(const Raster<U>& other) const {
    return width_ == other.width() && height_ == other.height();
  }

  bool operator==(const Raster&) const = default;

 private:
  int width_ = 0;
  int height_ = 0;
  std::vector<T> values_;
};

/// 1 = boundary (foreground), 0 = object (background).
using BinaryMask = Raster<std::uint8_t>;
/// 0 = boundary pixel, k >= 1 = k-th object component.
using LabelMap = Raster<std::int32_t>;
using ScalarField = Raster<double>;

template <typename A, typename B>
void require_same_shape(const Raster<A>& a, const Raster<B>& b,
                        const char* what) {
  if (!a.same_shape(b)) {
    throw Error(std::string(what) + ": dimension mismatch (" +
                std::to_string(a.width()) + "x" + std::to_string(a.height()) +
                " vs " + std::to_string(b.width()) + "x" +
                std::to_string(b.height()) + ")");
  }
}

enum class Target { foreground, background };
enum class Connectivity { four = 4, eight = 8 };

/// Connectivity used for a class under the dual convention.
constexpr Connectivity default_connectivity(Target target) {
  return target == Target::foreground ? Connectivity::eight
                                      : Connectivity::four;
}

inline std::size_t count(const BinaryMask& mask) {
  return static_cast<std::size_t>(
      std::count_if(mask.values().begin(), mask.values().end(),
                    [](std::uint8_t v) { return v != 0; }));
}

inline bool any(const BinaryMask& mask) {
  return std::any_of(mask.values().begin(), mask.values().end(),
                     [](std::uint8_t v) { return v != 0; });
}

inline BinaryMask invert(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] ? 0 : 1;
  return out;
}

enum class MaskOp { and_, or_, and_not, xor_ };

inline BinaryMask combine(const BinaryMask& a, const BinaryMask& b,
                          MaskOp op) {
  require_same_shape(a, b, "combine");
  BinaryMask out(a.width(), a.height());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const bool x = a[i] != 0;
    const bool y = b[i] != 0;
    bool r = false;
    switch (op) {
      case MaskOp::and_: r = x && y; break;
      case MaskOp::or_: r = x || y; break;
      case MaskOp::and_not: r = x && !y; break;
      case MaskOp::xor_: r = x != y; break;
    }
    out[i] = r ? 1 : 0;
  }
  return out;
}

inline BinaryMask operator&(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, MaskOp::and_);
}
inline BinaryMask operator|(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, MaskOp::or_);
}
inline BinaryMask operator^(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, MaskOp::xor_);
}
inline BinaryMask operator-(const BinaryMask& a, const BinaryMask& b) {
  return combine(a, b, MaskOp::and_not);
}

/// Pixels with p >= threshold become foreground.
inline BinaryMask binarize(const ScalarField& field, double threshold) {
  BinaryMask out(field.width(), field.height());
  for (std::size_t i = 0; i < field.size(); ++i) {
    out[i] = field[i] >= threshold ? 1 : 0;
  }
  return out;
}

/// Mask of pixels carrying a given label (label 0 selects boundary pixels).
inline BinaryMask select_label(const LabelMap& labels, std::int32_t label) {
  BinaryMask out(labels.width(), labels.height());
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out[i] = labels[i] == label ? 1 : 0;
  }
  return out;
}

inline std::int32_t max_label(const LabelMap& labels) {
  std::int32_t m = 0;
  for (auto v : labels.values()) m = std::max(m, v);
  return m;
}

/// Dense labeling of the target-class pixels. Labels are assigned in order of
/// first appearance in a row-major scan, starting at 1; other pixels get 0.
inline LabelMap connected_components(const BinaryMask& mask, Target target,
                                     Connectivity connectivity) {
  const int w = mask.width();
  const int h = mask.height();
  const bool want = target == Target::foreground;
  const bool eight = connectivity == Connectivity::eight;
  LabelMap labels(w, h, 0);

  // First pass: provisional labels from the already-visited neighbours
  // (W, N, and NW/NE for 8-connectivity), merged with union-find.
  std::vector<std::int32_t> parent{0};
  auto find = [&](std::int32_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
    return std::min(a, b);
  };
  auto in = [&](int x, int y) { return (mask(x, y) != 0) == want; };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!in(x, y)) continue;
      std::int32_t l = 0;
      auto take = [&](int nx, int ny) {
        if (nx < 0 || nx >= w || ny < 0) return;
        const std::int32_t n = labels(nx, ny);
        if (n != 0) l = l == 0 ? find(n) : unite(l, n);
      };
      take(x - 1, y);
      take(x, y - 1);
      if (eight) {
        take(x - 1, y - 1);
        take(x + 1, y - 1);
      }
      if (l == 0) {
        l = static_cast<std::int32_t>(parent.size());
        parent.push_back(l);
      }
      labels(x, y) = l;
    }
  }

  // Second pass: number roots in order of first appearance.
  std::vector<std::int32_t> final_label(parent.size(), 0);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == 0) continue;
    const std::int32_t r = find(labels[i]);
    if (final_label[r] == 0) final_label[r] = ++next;
    labels[i] = final_label[r];
  }
  return labels;
}

inline LabelMap connected_components(const BinaryMask& mask, Target target) {
  return connected_components(mask, target, default_connectivity(target));
}

inline int component_count(const BinaryMask& mask, Target target,
                           Connectivity connectivity) {
  return max_label(connected_components(mask, target, connectivity));
}

inline int component_count(const BinaryMask& mask, Target target) {
  return component_count(mask, target, default_connectivity(target));
}

/// Object (background) components under the 4-connected convention.
inline LabelMap label_objects(const BinaryMask& mask) {
  return connected_components(mask, Target::background, Connectivity::four);
}

/// Dilation by a 3x3 square, `iterations` times. Equivalent to a single
/// dilation by a (2k+1)x(2k+1) square; pixels outside the image are absent.
inline BinaryMask dilate(const BinaryMask& mask, int iterations) {
  if (iterations < 0) throw Error("dilate: negative iteration count");
  if (iterations == 0) return mask;
  const int w = mask.width();
  const int h = mask.height();
  const int r = iterations;
  // Separable max filter via running counts.
  BinaryMask rows(w, h);
  std::vector<int> prefix(static_cast<std::size_t>(std::max(w, h)) + 1);
  for (int y = 0; y < h; ++y) {
    prefix[0] = 0;
    for (int x = 0; x < w; ++x) prefix[x + 1] = prefix[x] + (mask(x, y) != 0);
    for (int x = 0; x < w; ++x) {
      const int lo = std::max(0, x - r);
      const int hi = std::min(w - 1, x + r);
      rows(x, y) = prefix[hi + 1] - prefix[lo] > 0 ? 1 : 0;
    }
  }
  // Vertical pass as a sliding window of per-column counts over whole rows.
  BinaryMask out(w, h);
  std::vector<int> window(static_cast<std::size_t>(w), 0);
  for (int y = 0; y < std::min(r, h); ++y) {
    for (int x = 0; x < w; ++x) window[x] += rows(x, y);
  }
  for (int y = 0; y < h; ++y) {
    if (y + r < h) {
      for (int x = 0; x < w; ++x) window[x] += rows(x, y + r);
    }
    if (y - r - 1 >= 0) {
      for (int x = 0; x < w; ++x) window[x] -= rows(x, y - r - 1);
    }
    for (int x = 0; x < w; ++x) out(x, y) = window[x] > 0 ? 1 : 0;
  }
  return out;
}

}  // namespace skeatopo

#endif  // SKEATOPO_RASTER_HPP
