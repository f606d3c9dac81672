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

// Shared fixtures and brute-force reference implementations for the tests.
// Nothing here calls into the library's own algorithms, so every comparison
// pits the library against an independently written computation.

#ifndef SKEATOPO_TESTS_SUPPORT_HPP
#define SKEATOPO_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "skeatopo/raster.hpp"

namespace support {

using skeatopo::BinaryMask;
using skeatopo::LabelMap;
using skeatopo::ScalarField;

inline BinaryMask random_mask(std::mt19937& rng, int w, int h, double p) {
  std::bernoulli_distribution coin(p);
  BinaryMask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = coin(rng) ? 1 : 0;
  return m;
}

/// White noise, box-blurred a few times, thresholded at a random level.
/// Produces blobby shapes with holes, handles and long thin parts.
inline BinaryMask smoothed_mask(std::mt19937& rng, int w, int h) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<double> f(static_cast<std::size_t>(w) * h);
  for (auto& v : f) v = u(rng);
  const int passes = 1 + static_cast<int>(rng() % 3);
  std::vector<double> g(f.size());
  for (int pass = 0; pass < passes; ++pass) {
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        double s = 0;
        int n = 0;
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            const int nx = x + dx, ny = y + dy;
            if (nx < 0 || ny < 0 || nx >= w || ny >= h) continue;
            s += f[static_cast<std::size_t>(ny) * w + nx];
            ++n;
          }
        }
        g[static_cast<std::size_t>(y) * w + x] = s / n;
      }
    }
    f.swap(g);
  }
  std::vector<double> sorted = f;
  std::sort(sorted.begin(), sorted.end());
  const double q = 0.3 + 0.4 * u(rng);
  const double thr = sorted[static_cast<std::size_t>(q * (sorted.size() - 1))];
  BinaryMask m(w, h);
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = f[i] > thr ? 1 : 0;
  return m;
}

/// Union-find labelling of the pixels where mask == value. Labels are assigned
/// in row-major order of each set's first pixel.
inline LabelMap union_find_labels(const BinaryMask& mask, std::uint8_t value,
                                  int connectivity) {
  const int w = mask.width(), h = mask.height();
  std::vector<std::size_t> parent(mask.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto is = [&](int x, int y) {
    return x >= 0 && y >= 0 && x < w && y < h &&
           (mask(x, y) != 0) == (value != 0);
  };
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!is(x, y)) continue;
      std::vector<std::pair<int, int>> nb{{x + 1, y}, {x, y + 1}};
      if (connectivity == 8) {
        nb.emplace_back(x + 1, y + 1);
        nb.emplace_back(x - 1, y + 1);
      }
      for (auto [nx, ny] : nb) {
        if (is(nx, ny)) {
          parent[find(mask.index(x, y))] = find(mask.index(nx, ny));
        }
      }
    }
  }
  LabelMap out(w, h, 0);
  std::map<std::size_t, std::int32_t> names;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!is(x, y)) continue;
      const auto root = find(mask.index(x, y));
      auto it = names.try_emplace(root, static_cast<std::int32_t>(names.size() + 1)).first;
      out(x, y) = it->second;
    }
  }
  return out;
}

inline int count_labels(const LabelMap& m) {
  int best = 0;
  for (auto v : m.values()) best = std::max<int>(best, v);
  return best;
}

/// Number of 8-connected foreground components.
inline int beta0_foreground(const BinaryMask& m) {
  return count_labels(union_find_labels(m, 1, 8));
}

/// Number of 4-connected background components.
inline int beta0_background(const BinaryMask& m) {
  return count_labels(union_find_labels(m, 0, 4));
}

/// Objects of a boundary mask: 4-connected background components.
inline LabelMap objects_of(const BinaryMask& m) {
  return union_find_labels(m, 0, 4);
}

/// Minimum over all feature pixels of the Euclidean distance.
inline ScalarField brute_edt(const BinaryMask& m) {
  ScalarField out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      double best = std::numeric_limits<double>::infinity();
      for (int fy = 0; fy < m.height(); ++fy) {
        for (int fx = 0; fx < m.width(); ++fx) {
          if (!m(fx, fy)) continue;
          best = std::min(best, std::hypot(double(fx - x), double(fy - y)));
        }
      }
      out(x, y) = best;
    }
  }
  return out;
}

/// Dilation by a (2k+1)-square, reading only pixels inside the image.
inline BinaryMask brute_dilate(const BinaryMask& m, int k) {
  BinaryMask out(m.width(), m.height());
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      bool hit = false;
      for (int dy = -k; dy <= k && !hit; ++dy) {
        for (int dx = -k; dx <= k && !hit; ++dx) {
          hit = m.contains(x + dx, y + dy) && m(x + dx, y + dy);
        }
      }
      out(x, y) = hit ? 1 : 0;
    }
  }
  return out;
}

/// Row-major first pixel of `targets` minimising the distance to (x, y).
template <typename Pred>
std::pair<int, int> brute_nearest(const BinaryMask& shape, int x, int y,
                                  Pred&& is_target) {
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  std::pair<int, int> arg{-1, -1};
  for (int ty = 0; ty < shape.height(); ++ty) {
    for (int tx = 0; tx < shape.width(); ++tx) {
      if (!is_target(tx, ty)) continue;
      const std::int64_t d = std::int64_t(tx - x) * (tx - x) +
                             std::int64_t(ty - y) * (ty - y);
      if (d < best) {
        best = d;
        arg = {tx, ty};
      }
    }
  }
  return arg;
}

/// Draws a filled rectangle [x0, x1] x [y0, y1] with `value`.
inline void fill_rect(BinaryMask& m, int x0, int y0, int x1, int y1,
                      std::uint8_t value = 1) {
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (m.contains(x, y)) m(x, y) = value;
    }
  }
}

/// Mask with a frame of width 1 and a vertical wall of width `wall` at
/// column `x0`, giving two objects (left and right cells).
inline BinaryMask two_cells(int w, int h, int x0, int wall) {
  BinaryMask m(w, h);
  fill_rect(m, 0, 0, w - 1, 0);
  fill_rect(m, 0, h - 1, w - 1, h - 1);
  fill_rect(m, 0, 0, 0, h - 1);
  fill_rect(m, w - 1, 0, w - 1, h - 1);
  fill_rect(m, x0, 0, x0 + wall - 1, h - 1);
  return m;
}

/// Random Voronoi tessellation with 1-pixel walls where the nearest-site
/// label changes to the right or below. Gives `sites` objects in expectation.
inline BinaryMask voronoi_walls(std::mt19937& rng, int w, int h, int sites) {
  std::uniform_int_distribution<int> ux(0, w - 1), uy(0, h - 1);
  std::vector<std::pair<int, int>> s(sites);
  for (auto& p : s) p = {ux(rng), uy(rng)};
  LabelMap region(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int best = 0;
      std::int64_t bd = std::numeric_limits<std::int64_t>::max();
      for (int i = 0; i < sites; ++i) {
        const std::int64_t d = std::int64_t(s[i].first - x) * (s[i].first - x) +
                               std::int64_t(s[i].second - y) * (s[i].second - y);
        if (d < bd) {
          bd = d;
          best = i;
        }
      }
      region(x, y) = best;
    }
  }
  BinaryMask m(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const bool right = x + 1 < w && region(x + 1, y) != region(x, y);
      const bool down = y + 1 < h && region(x, y + 1) != region(x, y);
      m(x, y) = right || down ? 1 : 0;
    }
  }
  return m;
}

inline bool relative_close(double a, double b, double rel, double abs_floor = 0.0) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return std::abs(a - b) <= std::max(rel * scale, abs_floor);
}

}  // namespace support

#endif  // SKEATOPO_TESTS_SUPPORT_HPP
