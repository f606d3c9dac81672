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

// Distance transforms and skeletonization.
//
// All distances are exact Euclidean distances on the pixel lattice. Where a
// nearest pixel has to be named (not just measured), ties are broken by the
// smallest row-major index.

#ifndef SKEATOPO_GEOMETRY_HPP
#define SKEATOPO_GEOMETRY_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "skeatopo/raster.hpp"

namespace skeatopo {

using SquaredField = Raster<std::int64_t>;

namespace detail {

inline constexpr std::int64_t kFar = std::numeric_limits<std::int64_t>::max() / 4;

// Squared distance along one line of samples. `f` holds the squared distance
// already accumulated along the other axis (kFar where no feature exists).
// Lower envelope of parabolas.
inline void squared_distance_1d(std::span<const std::int64_t> f,
                                std::span<std::int64_t> out,
                                std::vector<int>& v, std::vector<double>& z) {
  const int n = static_cast<int>(f.size());
  v.resize(n);
  z.resize(n + 1);
  int k = -1;
  for (int q = 0; q < n; ++q) {
    if (f[q] >= kFar) continue;
    if (k < 0) {
      k = 0;
      v[0] = q;
      z[0] = -std::numeric_limits<double>::infinity();
      z[1] = std::numeric_limits<double>::infinity();
      continue;
    }
    double s = 0;
    while (true) {
      const int p = v[k];
      s = (static_cast<double>(f[q] + static_cast<std::int64_t>(q) * q) -
           static_cast<double>(f[p] + static_cast<std::int64_t>(p) * p)) /
          (2.0 * (q - p));
      // z[0] is -inf, so this never pops the last parabola
      if (s > z[k]) break;
      --k;
    }
    ++k;
    v[k] = q;
    z[k] = s;
    z[k + 1] = std::numeric_limits<double>::infinity();
  }
  if (k < 0) {
    std::fill(out.begin(), out.end(), kFar);
    return;
  }
  int j = 0;
  for (int q = 0; q < n; ++q) {
    while (z[j + 1] < q) ++j;
    const std::int64_t d = q - v[j];
    out[q] = d * d + f[v[j]];
  }
}

}  // namespace detail

namespace detail {

// Two-pass EDT into `out`. A downward sweep records, per pixel, the
// distance to the nearest feature above it in its column, in a compact
// buffer of `Dist` (`none` where there is no such feature). Rows are then
// processed bottom-up while `below` tracks the nearest feature underneath;
// the smaller of the two is the column distance, and the row envelope turns
// a row of those into squared 2D distances. Only finish(squared) reaches
// `out`.
template <typename Dist, typename T, typename Finish>
void edt_into(const BinaryMask& mask, Raster<T>& out, Finish finish) {
  const int w = mask.width();
  const int h = mask.height();
  constexpr Dist none = std::numeric_limits<Dist>::max();
  std::vector<Dist> above(static_cast<std::size_t>(w) * h);
  for (int y = 0; y < h; ++y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      const Dist up = y > 0 ? above[row - w + x] : none;
      above[row + x] = mask(x, y) ? Dist{0} : up != none ? Dist(up + 1) : none;
    }
  }
  out = Raster<T>(w, h);
  std::vector<Dist> below(w, none);
  std::vector<std::int64_t> f(w);
  std::vector<std::int64_t> g(w);
  std::vector<int> v;
  std::vector<double> z;
  for (int y = h - 1; y >= 0; --y) {
    const std::size_t row = static_cast<std::size_t>(y) * w;
    for (int x = 0; x < w; ++x) {
      below[x] = mask(x, y) ? Dist{0} : below[x] != none ? Dist(below[x] + 1) : none;
      const Dist d = std::min(above[row + x], below[x]);
      f[x] = d != none ? static_cast<std::int64_t>(d) * d : kFar;
    }
    squared_distance_1d(f, g, v, z);
    for (int x = 0; x < w; ++x) out(x, y) = finish(g[x]);
  }
}

template <typename T, typename Finish>
void edt_into(const BinaryMask& mask, Raster<T>& out, Finish finish) {
  if (!any(mask)) throw Error("edt: no feature pixels");
  // column distances are below the height, so 16 bits usually suffice
  if (mask.height() < std::numeric_limits<std::uint16_t>::max()) {
    edt_into<std::uint16_t>(mask, out, finish);
  } else {
    edt_into<std::uint32_t>(mask, out, finish);
  }
}

}  // namespace detail

/// Squared Euclidean distance to the nearest set pixel (exact, integer).
inline SquaredField edt_squared(const BinaryMask& mask) {
  SquaredField out(1, 1);
  detail::edt_into(mask, out, [](std::int64_t d2) { return d2; });
  return out;
}

/// Euclidean distance to the nearest set pixel; set pixels map to 0.
inline ScalarField edt(const BinaryMask& mask) {
  ScalarField out(1, 1);
  detail::edt_into(mask, out, [](std::int64_t d2) {
    return std::sqrt(static_cast<double>(d2));
  });
  return out;
}

/// First pixel, in row-major order, at squared distance `sq` from (x, y) that
/// satisfies `is_feature`. Used to name the tie-broken nearest feature once
/// the exact distance is known.
template <typename Pred>
std::optional<std::pair<int, int>> nearest_on_circle(int x, int y,
                                                     std::int64_t sq, int width,
                                                     int height,
                                                     Pred&& is_feature) {
  const auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(sq)));
  for (std::int64_t dy = -r - 1; dy <= r + 1; ++dy) {
    const std::int64_t rest = sq - dy * dy;
    if (rest < 0) continue;
    auto dx = static_cast<std::int64_t>(std::sqrt(static_cast<double>(rest)));
    while (dx * dx > rest) --dx;
    while ((dx + 1) * (dx + 1) <= rest) ++dx;
    if (dx * dx != rest) continue;
    const auto ny = static_cast<int>(y + dy);
    if (ny < 0 || ny >= height) continue;
    const std::array<std::int64_t, 2> xs{-dx, dx};
    for (int k = 0; k < (dx == 0 ? 1 : 2); ++k) {
      const auto nx = static_cast<int>(x + xs[k]);
      if (nx < 0 || nx >= width) continue;
      if (is_feature(nx, ny)) return std::pair{nx, ny};
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Thinning

namespace detail {

// Neighbor order: N, NE, E, SE, S, SW, W, NW.
inline constexpr std::array<int, 8> kDx{0, 1, 1, 1, 0, -1, -1, -1};
inline constexpr std::array<int, 8> kDy{-1, -1, 0, 1, 1, 1, 0, -1};

// Simple-point test on a 3x3 ring. `fg` and `present` are 8-bit masks in the
// neighbor order above; absent neighbors (outside the image) join neither
// class. A point is simple when its foreground neighbors form exactly one
// 8-component and the background neighbors 4-adjacent to it lie in exactly one
// 4-component of the ring.
inline bool is_simple(unsigned fg, unsigned present) {
  const unsigned bg = present & ~fg & 0xFFu;
  std::array<int, 8> parent{0, 1, 2, 3, 4, 5, 6, 7};
  auto find = [&](int a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto unite = [&](int a, int b) { parent[find(a)] = find(b); };
  auto bit = [](unsigned m, int i) { return ((m >> (i & 7)) & 1u) != 0; };
  for (int i = 0; i < 8; ++i) {
    const int j = (i + 1) & 7;
    if (bit(fg, i) && bit(fg, j)) unite(i, j);
    if (bit(bg, i) && bit(bg, j)) unite(i, j);
    // edge neighbors two apart on the ring are diagonal to each other
    if (i % 2 == 0 && bit(fg, i) && bit(fg, i + 2)) unite(i, (i + 2) & 7);
  }
  int fg_roots = 0;
  int bg_roots = 0;
  std::array<bool, 8> seen{};
  for (int i = 0; i < 8; ++i) {
    if (bit(fg, i)) {
      const int r = find(i);
      if (!seen[r]) {
        seen[r] = true;
        ++fg_roots;
      }
    }
  }
  for (int i = 0; i < 8; i += 2) {
    if (bit(bg, i)) {
      const int r = find(i);
      if (!seen[r]) {
        seen[r] = true;
        ++bg_roots;
      }
    }
  }
  return fg_roots == 1 && bg_roots == 1;
}

inline const std::array<bool, 256>& interior_simple_table() {
  static const std::array<bool, 256> table = [] {
    std::array<bool, 256> t{};
    for (unsigned m = 0; m < 256; ++m) t[m] = is_simple(m, 0xFFu);
    return t;
  }();
  return table;
}

// Two-subiteration candidate rule on the neighbor pattern.
inline bool is_thinning_candidate(unsigned fg, int subiteration) {
  auto p = [&](int i) { return static_cast<int>((fg >> i) & 1u); };
  const int b = __builtin_popcount(fg);
  if (b < 2 || b > 6) return false;
  int transitions = 0;
  for (int i = 0; i < 8; ++i) transitions += (!p(i) && p((i + 1) & 7));
  if (transitions != 1) return false;
  const int n = p(0), e = p(2), s = p(4), w = p(6);
  if (subiteration == 0) return n * e * s == 0 && e * s * w == 0;
  return n * e * w == 0 && n * s * w == 0;
}

inline const std::array<std::array<bool, 256>, 2>& candidate_tables() {
  static const auto tables = [] {
    std::array<std::array<bool, 256>, 2> t{};
    for (int s = 0; s < 2; ++s) {
      for (unsigned m = 0; m < 256; ++m) t[s][m] = is_thinning_candidate(m, s);
    }
    return t;
  }();
  return tables;
}

// How thinning sees pixels beyond the image edge.
enum class Outside {
  absent,     // part of neither class; shapes stay anchored to the edge
  non_member  // zero padding; shapes shrink away from the edge
};

// Thins every nonzero label of `labels` independently, in place. A pixel's
// foreground is the set of pixels sharing its label; everything else,
// including other labels, is background to it.
//
// Each subiteration marks candidates on a snapshot of the image, then deletes
// them in row-major order only while they are still simple, so every single
// deletion preserves topology.
template <typename Label>
void thin_labels(Raster<Label>& labels, Outside outside) {
  const int w = labels.width();
  const int h = labels.height();
  const auto& simple = interior_simple_table();
  const auto& candidate = candidate_tables();

  auto pattern = [&](int x, int y, unsigned& present) {
    const Label self = labels(x, y);
    unsigned fg = 0;
    present = 0;
    for (int i = 0; i < 8; ++i) {
      const int nx = x + kDx[i];
      const int ny = y + kDy[i];
      if (!labels.contains(nx, ny)) {
        if (outside == Outside::non_member) present |= 1u << i;
        continue;
      }
      present |= 1u << i;
      if (labels(nx, ny) == self) fg |= 1u << i;
    }
    return fg;
  };

  // Only pixels touching a non-member can ever be deleted.
  if (labels.size() > std::numeric_limits<std::uint32_t>::max()) {
    throw Error("thinning: image too large");
  }
  std::vector<bool> in_frontier(labels.size(), false);
  std::vector<std::uint32_t> frontier;
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (labels(x, y) == 0) continue;
      unsigned present = 0;
      const unsigned fg = pattern(x, y, present);
      if (fg != 0xFFu) {
        frontier.push_back(static_cast<std::uint32_t>(labels.index(x, y)));
        in_frontier[labels.index(x, y)] = true;
      }
    }
  }

  std::vector<std::uint32_t> marked;
  std::vector<std::uint32_t> grown;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int sub = 0; sub < 2; ++sub) {
      marked.clear();
      for (std::size_t idx : frontier) {
        const int x = static_cast<int>(idx % w);
        const int y = static_cast<int>(idx / w);
        unsigned present = 0;
        const unsigned fg = pattern(x, y, present);
        if (candidate[sub][fg]) marked.push_back(idx);
      }
      grown.clear();
      for (std::size_t idx : marked) {
        const int x = static_cast<int>(idx % w);
        const int y = static_cast<int>(idx / w);
        unsigned present = 0;
        const unsigned fg = pattern(x, y, present);
        const bool ok =
            present == 0xFFu ? simple[fg] : is_simple(fg, present);
        if (!ok) continue;
        labels[idx] = 0;
        in_frontier[idx] = false;
        changed = true;
        for (int i = 0; i < 8; ++i) {
          const int nx = x + kDx[i];
          const int ny = y + kDy[i];
          if (!labels.contains(nx, ny)) continue;
          const std::size_t n = labels.index(nx, ny);
          if (labels[n] != 0 && !in_frontier[n]) {
            in_frontier[n] = true;
            grown.push_back(static_cast<std::uint32_t>(n));
          }
        }
      }
      std::erase_if(frontier, [&](std::size_t i) { return labels[i] == 0; });
      // keep the frontier sorted: merge in the (sorted) newcomers
      std::sort(grown.begin(), grown.end());
      const auto mid = static_cast<std::ptrdiff_t>(frontier.size());
      frontier.insert(frontier.end(), grown.begin(), grown.end());
      std::inplace_merge(frontier.begin(), frontier.begin() + mid,
                         frontier.end());
    }
  }

  // The subiteration rule can leave 2x2 blocks at junctions; remove any
  // block pixel that is simple and not an end point.
  auto same = [&](int x, int y, Label l) {
    return labels.contains(x, y) && labels(x, y) == l;
  };
  auto in_block = [&](int x, int y) {
    const Label l = labels(x, y);
    for (int oy = -1; oy <= 0; ++oy) {
      for (int ox = -1; ox <= 0; ++ox) {
        if (same(x + ox, y + oy, l) && same(x + ox + 1, y + oy, l) &&
            same(x + ox, y + oy + 1, l) && same(x + ox + 1, y + oy + 1, l)) {
          return true;
        }
      }
    }
    return false;
  };
  changed = true;
  while (changed) {
    changed = false;
    for (std::size_t idx : frontier) {
      if (labels[idx] == 0) continue;
      const int x = static_cast<int>(idx % w);
      const int y = static_cast<int>(idx / w);
      if (!in_block(x, y)) continue;
      unsigned present = 0;
      const unsigned fg = pattern(x, y, present);
      if (__builtin_popcount(fg) < 2) continue;
      const bool ok = present == 0xFFu ? simple[fg] : is_simple(fg, present);
      if (!ok) continue;
      labels[idx] = 0;
      changed = true;
    }
    std::erase_if(frontier, [&](std::size_t i) { return labels[i] == 0; });
  }
}

}  // namespace detail

/// Homotopy-preserving thinning of the foreground. Pixels outside the image
/// are treated as absent, so walls that run into the image border stay
/// anchored there.
inline BinaryMask skeletonize(const BinaryMask& mask) {
  BinaryMask out(mask.width(), mask.height());
  for (std::size_t i = 0; i < mask.size(); ++i) out[i] = mask[i] ? 1 : 0;
  detail::thin_labels(out, detail::Outside::absent);
  return out;
}

struct SkeletonSet {
  BinaryMask foreground_skeleton;
  /// Union of the per-object skeletons.
  BinaryMask background_skeleton;
  /// Skeleton pixels carry their object's label; everything else is 0.
  LabelMap per_object_skeletons;
};

namespace detail {

// Thinning compares a pixel only with its 3x3 neighbours. Distinct
// 4-connected objects can meet there only diagonally, so a one-byte map in
// which diagonally touching objects get different values thins exactly like
// the label map itself, with a quarter of the memory traffic. Greedy
// colouring in label order; empty when more than 255 colours would be needed.
inline std::optional<Raster<std::uint8_t>> colour_objects(
    const LabelMap& objects) {
  const int w = objects.width();
  const int h = objects.height();
  const auto n = static_cast<std::size_t>(max_label(objects)) + 1;
  std::vector<std::pair<std::int32_t, std::int32_t>> touching;
  auto note = [&](std::int32_t a, std::int32_t b) {
    if (a != 0 && b != 0 && a != b) {
      touching.emplace_back(a, b);
      touching.emplace_back(b, a);
    }
  };
  for (int y = 0; y + 1 < h; ++y) {
    for (int x = 0; x + 1 < w; ++x) {
      note(objects(x, y), objects(x + 1, y + 1));
      note(objects(x + 1, y), objects(x, y + 1));
    }
  }
  std::sort(touching.begin(), touching.end());
  touching.erase(std::unique(touching.begin(), touching.end()), touching.end());

  std::vector<std::uint8_t> colour(n, 0);
  std::size_t k = 0;
  for (std::size_t label = 1; label < n; ++label) {
    std::array<bool, 256> used{};
    for (; k < touching.size() &&
           touching[k].first == static_cast<std::int32_t>(label);
         ++k) {
      used[colour[touching[k].second]] = true;
    }
    int c = 1;
    while (c < 256 && used[c]) ++c;
    if (c == 256) return std::nullopt;
    colour[label] = static_cast<std::uint8_t>(c);
  }
  Raster<std::uint8_t> out(w, h);
  for (std::size_t i = 0; i < objects.size(); ++i) out[i] = colour[objects[i]];
  return out;
}

}  // namespace detail

/// Skeleton of every object taken on its own, plus the skeleton of the
/// boundary pixels (label 0). Objects are thinned as if the image were
/// zero-padded, so an object cut by the image edge gets a medial axis rather
/// than one that runs along the edge.
inline SkeletonSet object_skeletons(const LabelMap& objects) {
  SkeletonSet out;
  out.per_object_skeletons = objects;
  if (auto colours = detail::colour_objects(objects)) {
    detail::thin_labels(*colours, detail::Outside::non_member);
    for (std::size_t i = 0; i < objects.size(); ++i) {
      if ((*colours)[i] == 0) out.per_object_skeletons[i] = 0;
    }
  } else {
    detail::thin_labels(out.per_object_skeletons, detail::Outside::non_member);
  }
  out.background_skeleton = BinaryMask(objects.width(), objects.height());
  BinaryMask boundary(objects.width(), objects.height());
  for (std::size_t i = 0; i < objects.size(); ++i) {
    out.background_skeleton[i] = out.per_object_skeletons[i] != 0 ? 1 : 0;
    boundary[i] = objects[i] == 0 ? 1 : 0;
  }
  out.foreground_skeleton = skeletonize(boundary);
  return out;
}

// ---------------------------------------------------------------------------
// Object distances

struct ObjectDistances {
  /// Distance from each boundary pixel to the nearest object pixel.
  ScalarField d1;
  /// Distance to the nearest pixel of any object other than the d1 object.
  ScalarField d2;
};

/// Nearest and next-nearest object distances for every boundary pixel
/// (label 0). Both fields are 0 on object pixels.
inline ObjectDistances two_nearest_object_distances(const LabelMap& objects) {
  const int w = objects.width();
  const int h = objects.height();
  if (max_label(objects) < 2) throw Error("need two objects");
  ObjectDistances out{ScalarField(w, h, 0.0), ScalarField(w, h, 0.0)};
  const int max_radius = std::max(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (objects(x, y) != 0) continue;
      std::int64_t best1 = detail::kFar;
      std::int64_t best2 = detail::kFar;
      std::int32_t label1 = 0;
      std::int32_t label2 = 0;
      auto offer = [&](int nx, int ny) {
        const std::int32_t l = objects(nx, ny);
        if (l == 0) return;
        const std::int64_t dx = nx - x;
        const std::int64_t dy = ny - y;
        const std::int64_t d = dx * dx + dy * dy;
        if (l == label1) {
          best1 = std::min(best1, d);
        } else if (l == label2) {
          if (d < best2) best2 = d;
          if (best2 < best1) {
            std::swap(best1, best2);
            std::swap(label1, label2);
          }
        } else if (d < best1) {
          best2 = best1;
          label2 = label1;
          best1 = d;
          label1 = l;
        } else if (d < best2) {
          best2 = d;
          label2 = l;
        }
      };
      // Chebyshev rings; a pixel on ring r is at least r away.
      for (int r = 1; r <= max_radius; ++r) {
        if (static_cast<std::int64_t>(r) * r > best2) break;
        const int x0 = x - r, x1 = x + r, y0 = y - r, y1 = y + r;
        for (int nx = std::max(0, x0); nx <= std::min(w - 1, x1); ++nx) {
          if (y0 >= 0) offer(nx, y0);
          if (y1 < h) offer(nx, y1);
        }
        for (int ny = std::max(0, y0 + 1); ny <= std::min(h - 1, y1 - 1);
             ++ny) {
          if (x0 >= 0) offer(x0, ny);
          if (x1 < w) offer(x1, ny);
        }
      }
      out.d1(x, y) = std::sqrt(static_cast<double>(best1));
      out.d2(x, y) = std::sqrt(static_cast<double>(best2));
    }
  }
  return out;
}

struct NormalizedDistances {
  /// Object pixel to its nearest boundary pixel b(x).
  ScalarField d_nsp;
  /// b(x) to the nearest skeleton pixel of x's own object.
  ScalarField d0_nsp;
};

/// Distances behind the skeleton-normalized object weight. Both fields are 0
/// on boundary pixels.
inline NormalizedDistances skeleton_normalized_distances(
    const LabelMap& objects, const SkeletonSet& skeletons) {
  const int w = objects.width();
  const int h = objects.height();
  require_same_shape(objects, skeletons.per_object_skeletons,
                     "skeleton_normalized_distances");
  const BinaryMask boundary = select_label(objects, 0);
  const SquaredField to_boundary = edt_squared(boundary);

  // b(x) for every object pixel, stored as a flat index.
  std::vector<std::size_t> nearest_boundary(objects.size(), 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (objects(x, y) == 0) continue;
      const auto b = nearest_on_circle(
          x, y, to_boundary(x, y), w, h,
          [&](int bx, int by) { return boundary(bx, by) != 0; });
      nearest_boundary[objects.index(x, y)] = objects.index(b->first, b->second);
    }
  }

  struct Box {
    int x0 = std::numeric_limits<int>::max(), y0 = x0, x1 = -1, y1 = -1;
  };
  const std::int32_t n_objects = max_label(objects);
  std::vector<Box> boxes(static_cast<std::size_t>(n_objects) + 1);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const std::int32_t l = objects(x, y);
      if (l == 0) continue;
      Box& b = boxes[l];
      b.x0 = std::min(b.x0, x);
      b.y0 = std::min(b.y0, y);
      b.x1 = std::max(b.x1, x);
      b.y1 = std::max(b.y1, y);
    }
  }

  NormalizedDistances out{ScalarField(w, h, 0.0), ScalarField(w, h, 0.0)};
  const LabelMap& skel = skeletons.per_object_skeletons;
  for (std::int32_t l = 1; l <= n_objects; ++l) {
    const Box& box = boxes[l];
    if (box.x1 < 0) continue;
    const int bw = box.x1 - box.x0 + 1;
    const int bh = box.y1 - box.y0 + 1;
    BinaryMask features(bw, bh);
    for (int y = 0; y < bh; ++y) {
      for (int x = 0; x < bw; ++x) {
        features(x, y) = skel(box.x0 + x, box.y0 + y) == l ? 1 : 0;
      }
    }
    if (!any(features)) {
      throw Error("object " + std::to_string(l) + " has an empty skeleton");
    }
    const SquaredField to_skeleton = edt_squared(features);
    for (int y = 0; y < bh; ++y) {
      for (int x = 0; x < bw; ++x) {
        const int gx = box.x0 + x;
        const int gy = box.y0 + y;
        if (objects(gx, gy) != l) continue;
        const auto s = nearest_on_circle(
            x, y, to_skeleton(x, y), bw, bh,
            [&](int sx, int sy) { return features(sx, sy) != 0; });
        const std::size_t b = nearest_boundary[objects.index(gx, gy)];
        const std::int64_t bx = static_cast<std::int64_t>(b % w);
        const std::int64_t by = static_cast<std::int64_t>(b / w);
        const std::int64_t ddx = bx - (box.x0 + s->first);
        const std::int64_t ddy = by - (box.y0 + s->second);
        out.d_nsp(gx, gy) = std::sqrt(static_cast<double>(to_boundary(gx, gy)));
        out.d0_nsp(gx, gy) = std::sqrt(static_cast<double>(ddx * ddx + ddy * ddy));
      }
    }
  }
  return out;
}

/// d_nsp / d0_nsp with the 0/0-style guard: a zero denominator yields 1.
/// Not clamped; values above 1 occur near concave object corners.
inline double skeleton_ratio(double d_nsp, double d0_nsp) {
  return d0_nsp == 0.0 ? 1.0 : d_nsp / d0_nsp;
}

}  // namespace skeatopo

#endif  // SKEATOPO_GEOMETRY_HPP
