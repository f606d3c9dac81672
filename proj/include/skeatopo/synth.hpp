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

// Deterministic reticular test images (Voronoi grains, rectangular lattices,
// road networks) and controlled injection of the six error kinds used to
// exercise critical-pixel detection.
//
// Randomness comes from std::mt19937_64, whose output sequence is fixed by
// the C++ standard; raw 64-bit draws are mapped to ranges here rather than
// through <random> distributions, which are implementation-defined.

#ifndef SKEATOPO_SYNTH_HPP
#define SKEATOPO_SYNTH_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "skeatopo/raster.hpp"

namespace skeatopo {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n).
  std::uint64_t below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(engine_()) * n) >> 64);
  }

  /// Uniform double in [0, 1).
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

enum class SynthKind { voronoi, lattice, roads };

enum class ErrorType { closure, disappearance, fracture, appearance, thin, thicken };

inline constexpr std::string_view to_string(SynthKind k) {
  switch (k) {
    case SynthKind::voronoi: return "voronoi";
    case SynthKind::lattice: return "lattice";
    case SynthKind::roads: return "roads";
  }
  return "";
}

inline constexpr std::string_view to_string(ErrorType t) {
  switch (t) {
    case ErrorType::closure: return "closure";
    case ErrorType::disappearance: return "disappearance";
    case ErrorType::fracture: return "fracture";
    case ErrorType::appearance: return "appearance";
    case ErrorType::thin: return "thin";
    case ErrorType::thicken: return "thicken";
  }
  return "";
}

inline SynthKind parse_synth_kind(std::string_view s) {
  for (auto k : {SynthKind::voronoi, SynthKind::lattice, SynthKind::roads}) {
    if (s == to_string(k)) return k;
  }
  throw Error("unknown synth kind '" + std::string(s) + "'");
}

inline ErrorType parse_error_type(std::string_view s) {
  for (auto t : {ErrorType::closure, ErrorType::disappearance,
                 ErrorType::fracture, ErrorType::appearance, ErrorType::thin,
                 ErrorType::thicken}) {
    if (s == to_string(t)) return t;
  }
  throw Error("unknown error type '" + std::string(s) + "'");
}

/// Closure, disappearance, fracture and appearance change the object
/// topology; thin and thicken do not.
constexpr bool is_topological(ErrorType t) {
  return t != ErrorType::thin && t != ErrorType::thicken;
}

struct ErrorRequest {
  ErrorType type = ErrorType::fracture;
  int count = 1;
};

struct SynthSpec {
  int width = 64;
  int height = 64;
  std::uint64_t seed = 0;
  SynthKind kind = SynthKind::voronoi;
  int n_sites = 8;
  int boundary_thickness = 3;
  std::vector<ErrorRequest> errors;

  void validate() const {
    if (width < 16 || height < 16) {
      throw Error("synth: width and height must be at least 16");
    }
    if (n_sites < 2) throw Error("synth: n_sites must be at least 2");
    if (static_cast<std::int64_t>(n_sites) >
        static_cast<std::int64_t>(width) * height) {
      throw Error("synth: more sites than pixels");
    }
    if (boundary_thickness < 1) {
      throw Error("synth: boundary_thickness must be positive");
    }
    for (const auto& e : errors) {
      if (e.count < 0) throw Error("synth: negative error count");
    }
  }
};

struct Synthetic {
  BinaryMask gt;
  LabelMap objects;
};

namespace detail {

// Nearest-site labels (ties to the lower site index) using a bucket grid.
inline LabelMap voronoi_labels(int w, int h,
                               const std::vector<std::pair<int, int>>& sites) {
  const int n = static_cast<int>(sites.size());
  const int cell = std::max(
      1, static_cast<int>(std::sqrt(static_cast<double>(w) * h / n)));
  const int gw = (w + cell - 1) / cell;
  const int gh = (h + cell - 1) / cell;
  std::vector<std::vector<int>> buckets(static_cast<std::size_t>(gw) * gh);
  for (int i = 0; i < n; ++i) {
    buckets[static_cast<std::size_t>(sites[i].second / cell) * gw +
            sites[i].first / cell]
        .push_back(i);
  }
  LabelMap out(w, h, 0);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int cx = x / cell;
      const int cy = y / cell;
      std::int64_t best = std::numeric_limits<std::int64_t>::max();
      int best_i = -1;
      for (int r = 0;; ++r) {
        // every site in ring r of buckets is at least (r - 1) * cell away
        if (best_i >= 0) {
          const std::int64_t lo = static_cast<std::int64_t>(r - 1) * cell;
          if (lo > 0 && lo * lo > best) break;
        }
        if (r > gw + gh) break;
        for (int by = cy - r; by <= cy + r; ++by) {
          if (by < 0 || by >= gh) continue;
          for (int bx = cx - r; bx <= cx + r; ++bx) {
            if (bx < 0 || bx >= gw) continue;
            if (std::max(std::abs(bx - cx), std::abs(by - cy)) != r) continue;
            for (int i : buckets[static_cast<std::size_t>(by) * gw + bx]) {
              const std::int64_t dx = sites[i].first - x;
              const std::int64_t dy = sites[i].second - y;
              const std::int64_t d = dx * dx + dy * dy;
              if (d < best || (d == best && i < best_i)) {
                best = d;
                best_i = i;
              }
            }
          }
        }
      }
      out(x, y) = best_i + 1;
    }
  }
  return out;
}

// A pixel becomes boundary when a pixel of a lower-numbered region lies
// within Euclidean distance `thickness`, which separates every pair of
// regions by a one-sided band about `thickness` pixels wide in any
// orientation.
inline BinaryMask region_walls(const LabelMap& regions, int thickness) {
  BinaryMask out(regions.width(), regions.height());
  const int t2 = thickness * thickness;
  for (int y = 0; y < regions.height(); ++y) {
    for (int x = 0; x < regions.width(); ++x) {
      const std::int32_t self = regions(x, y);
      bool wall = false;
      for (int dy = -thickness; dy <= thickness && !wall; ++dy) {
        for (int dx = -thickness; dx <= thickness; ++dx) {
          if (dx * dx + dy * dy > t2) continue;
          if (regions.contains(x + dx, y + dy) &&
              regions(x + dx, y + dy) < self) {
            wall = true;
            break;
          }
        }
      }
      out(x, y) = wall ? 1 : 0;
    }
  }
  return out;
}

inline void split_evenly(int n, int& rows, int& cols) {
  rows = 1;
  for (int r = 1; r * r <= n; ++r) {
    if (n % r == 0) rows = r;
  }
  cols = n / rows;
}

}  // namespace detail

inline Synthetic generate(const SynthSpec& spec) {
  spec.validate();
  const int w = spec.width;
  const int h = spec.height;
  const int t = spec.boundary_thickness;
  Rng rng(spec.seed);
  BinaryMask gt(w, h);
  switch (spec.kind) {
    case SynthKind::voronoi: {
      std::vector<std::pair<int, int>> sites;
      std::vector<std::uint8_t> taken(gt.size(), 0);
      while (static_cast<int>(sites.size()) < spec.n_sites) {
        const int x = static_cast<int>(rng.below(w));
        const int y = static_cast<int>(rng.below(h));
        if (taken[gt.index(x, y)]) continue;
        taken[gt.index(x, y)] = 1;
        sites.emplace_back(x, y);
      }
      gt = detail::region_walls(detail::voronoi_labels(w, h, sites), t);
      break;
    }
    case SynthKind::lattice: {
      int rows = 1, cols = 1;
      detail::split_evenly(spec.n_sites, rows, cols);
      if (cols * (t + 1) > w || rows * (t + 1) > h) {
        throw Error("synth: lattice cells do not fit the image");
      }
      LabelMap cells(w, h, 0);
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          const int cx = static_cast<int>(static_cast<std::int64_t>(x) * cols / w);
          const int cy = static_cast<int>(static_cast<std::int64_t>(y) * rows / h);
          cells(x, y) = cy * cols + cx + 1;
        }
      }
      // one-sided band of width t on the lower/right side of each cut
      for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
          bool wall = false;
          for (int k = 1; k <= t && !wall; ++k) {
            wall = (x - k >= 0 && cells(x - k, y) != cells(x, y)) ||
                   (y - k >= 0 && cells(x, y - k) != cells(x, y));
          }
          gt(x, y) = wall ? 1 : 0;
        }
      }
      break;
    }
    case SynthKind::roads: {
      const double half = 0.5 * t;
      for (int i = 0; i < spec.n_sites; ++i) {
        const double px = rng.unit() * w;
        const double py = rng.unit() * h;
        const double angle = rng.unit() * std::numbers::pi;
        const double nx = -std::sin(angle);
        const double ny = std::cos(angle);
        for (int y = 0; y < h; ++y) {
          for (int x = 0; x < w; ++x) {
            const double d = (x - px) * nx + (y - py) * ny;
            if (std::abs(d) <= half) gt(x, y) = 1;
          }
        }
      }
      break;
    }
  }
  return {gt, label_objects(gt)};
}

// ---------------------------------------------------------------------------
// Error injection

struct InjectedError {
  ErrorType type = ErrorType::fracture;
  bool critical = false;
  std::size_t area = 0;
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  ///< inclusive bounding box
  BinaryMask region;
};

struct Injection {
  BinaryMask pred;
  std::vector<InjectedError> manifest;
};

namespace detail {

class Injector {
 public:
  Injector(const BinaryMask& gt, std::uint64_t seed)
      : gt_(gt),
        objects_(label_objects(gt)),
        pred_(gt),
        pred_objects_(objects_),
        reserved_(gt.width(), gt.height()),
        touched_(static_cast<std::size_t>(max_label(objects_)) + 1, 0),
        rng_(seed) {}

  void place(ErrorType type) {
    constexpr int kAttempts = 600;
    for (int attempt = 0; attempt < kAttempts; ++attempt) {
      std::optional<BinaryMask> region = propose(type);
      if (region && accept(type, *region)) return;
    }
    throw Error("cannot place " + std::string(to_string(type)) + ": " +
                failure_reason(type));
  }

  Injection finish() && { return {std::move(pred_), std::move(manifest_)}; }

 private:
  static std::string failure_reason(ErrorType type) {
    switch (type) {
      case ErrorType::thin:
        return "no wall thick enough to thin without breaking it";
      case ErrorType::appearance:
        return "no wall thick enough to hold a new object";
      case ErrorType::closure:
        return "no untouched object large enough to split";
      case ErrorType::disappearance:
        return "no untouched object left to remove";
      case ErrorType::fracture:
        return "no wall between two untouched objects can be cut";
      case ErrorType::thicken:
        return "no wall can be thickened without changing topology";
    }
    return "unknown";
  }

  int width() const { return gt_.width(); }
  int height() const { return gt_.height(); }

  std::pair<int, int> random_pixel() {
    return {static_cast<int>(rng_.below(width())),
            static_cast<int>(rng_.below(height()))};
  }

  bool is_wall(int x, int y) const { return gt_.contains(x, y) && gt_(x, y); }
  std::int32_t object_at(int x, int y) const {
    return gt_.contains(x, y) ? objects_(x, y) : 0;
  }

  // Objects met within Chebyshev distance `r` of (x, y).
  std::vector<std::int32_t> objects_near(int x, int y, int r) const {
    std::vector<std::int32_t> out;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        const std::int32_t l = object_at(x + dx, y + dy);
        if (l != 0 && std::find(out.begin(), out.end(), l) == out.end()) {
          out.push_back(l);
        }
      }
    }
    return out;
  }

  std::optional<std::pair<int, int>> random_wall_pixel() {
    for (int k = 0; k < 64; ++k) {
      auto [x, y] = random_pixel();
      if (is_wall(x, y)) return std::pair{x, y};
    }
    return std::nullopt;
  }

  std::optional<BinaryMask> propose(ErrorType type) {
    switch (type) {
      case ErrorType::closure: return propose_closure();
      case ErrorType::disappearance: return propose_disappearance();
      case ErrorType::fracture: return propose_fracture();
      case ErrorType::appearance: return propose_appearance();
      case ErrorType::thin: return propose_layer(true);
      case ErrorType::thicken: return propose_layer(false);
    }
    return std::nullopt;
  }

  // A straight wall across one object.
  std::optional<BinaryMask> propose_closure() {
    auto [x, y] = random_pixel();
    const std::int32_t l = object_at(x, y);
    if (l == 0 || touched_[l]) return std::nullopt;
    const double angle = rng_.unit() * std::numbers::pi;
    const double nx = -std::sin(angle);
    const double ny = std::cos(angle);
    const double half = 0.5 * std::max(1, wall_thickness_hint());
    BinaryMask region(width(), height());
    for (int yy = 0; yy < height(); ++yy) {
      for (int xx = 0; xx < width(); ++xx) {
        if (objects_(xx, yy) != l) continue;
        const double d = (xx - x) * nx + (yy - y) * ny;
        if (std::abs(d) <= half) region(xx, yy) = 1;
      }
    }
    return region;
  }

  std::optional<BinaryMask> propose_disappearance() {
    auto [x, y] = random_pixel();
    const std::int32_t l = object_at(x, y);
    if (l == 0 || touched_[l]) return std::nullopt;
    return select_label(objects_, l);
  }

  // Cut the wall with a disk wide enough to cross it.
  std::optional<BinaryMask> propose_fracture() {
    const auto p = random_wall_pixel();
    if (!p) return std::nullopt;
    const int r = wall_thickness_hint() + 1;
    BinaryMask region(width(), height());
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (dx * dx + dy * dy > r * r) continue;
        if (is_wall(p->first + dx, p->second + dy)) {
          region(p->first + dx, p->second + dy) = 1;
        }
      }
    }
    return region;
  }

  // A short run of wall pixels whose whole 3x3 neighbourhood is wall.
  std::optional<BinaryMask> propose_appearance() {
    const auto p = random_wall_pixel();
    if (!p) return std::nullopt;
    auto deep = [&](int x, int y) {
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          if (!is_wall(x + dx, y + dy)) return false;
        }
      }
      return true;
    };
    BinaryMask region(width(), height());
    constexpr int r = 2;
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (dx * dx + dy * dy > r * r) continue;
        if (deep(p->first + dx, p->second + dy)) {
          region(p->first + dx, p->second + dy) = 1;
        }
      }
    }
    return region;
  }

  // One pixel layer along a wall segment that separates exactly two
  // objects: removed from the wall (thin) or added to it (thicken).
  std::optional<BinaryMask> propose_layer(bool thin) {
    const auto p = random_wall_pixel();
    if (!p) return std::nullopt;
    // keep clear of the image frame, where object corners are pinched
    constexpr int kFrame = 8;
    if (p->first < kFrame || p->second < kFrame ||
        p->first >= width() - kFrame || p->second >= height() - kFrame) {
      return std::nullopt;
    }
    // mid-segment only: no third object within reach of a junction
    const auto near =
        objects_near(p->first, p->second, 6 + 2 * wall_thickness_hint());
    if (near.size() != 2) return std::nullopt;
    const std::int32_t side = near[rng_.below(2)];
    constexpr int r = 3;
    BinaryMask region(width(), height());
    for (int dy = -r; dy <= r; ++dy) {
      for (int dx = -r; dx <= r; ++dx) {
        if (dx * dx + dy * dy > r * r) continue;
        const int x = p->first + dx;
        const int y = p->second + dy;
        if (!gt_.contains(x, y)) continue;
        const bool wall = gt_(x, y) != 0;
        if (wall != thin) continue;
        // must face the chosen object (thin) or the wall (thicken)
        bool faces = false;
        for (int k = 0; k < 4; ++k) {
          const int nx = x + (k == 0) - (k == 1);
          const int ny = y + (k == 2) - (k == 3);
          if (!gt_.contains(nx, ny)) continue;
          faces |= thin ? objects_(nx, ny) == side : gt_(nx, ny) != 0;
        }
        if (faces && (thin || objects_(x, y) == side)) region(x, y) = 1;
      }
    }
    return region;
  }

  int wall_thickness_hint() const { return thickness_; }

  bool accept(ErrorType type, const BinaryMask& region) {
    if (!any(region)) return false;
    // one error component, clear of earlier errors
    if (component_count(region, Target::foreground, Connectivity::eight) != 1) {
      return false;
    }
    for (std::size_t i = 0; i < region.size(); ++i) {
      if (region[i] && reserved_[i]) return false;
    }
    // objects this error may affect
    const BinaryMask reach = dilate(region, 2);
    std::vector<std::int32_t> affected;
    for (std::size_t i = 0; i < reach.size(); ++i) {
      if (reach[i] && objects_[i] != 0 &&
          std::find(affected.begin(), affected.end(), objects_[i]) ==
              affected.end()) {
        affected.push_back(objects_[i]);
      }
    }
    for (auto l : affected) {
      if (touched_[l]) return false;
    }

    BinaryMask next = pred_;
    for (std::size_t i = 0; i < region.size(); ++i) {
      if (region[i]) next[i] = next[i] ? 0 : 1;
    }
    const LabelMap next_objects = label_objects(next);
    const int before = max_label(pred_objects_);
    const int after = max_label(next_objects);
    switch (type) {
      case ErrorType::closure:
      case ErrorType::appearance:
        if (after != before + 1) return false;
        break;
      case ErrorType::disappearance:
      case ErrorType::fracture:
        if (after != before - 1) return false;
        break;
      case ErrorType::thin:
      case ErrorType::thicken:
        if (after != before || structure_changed(pred_objects_, next_objects)) {
          return false;
        }
        break;
    }
    if (type == ErrorType::fracture && affected.size() != 2) return false;

    InjectedError e;
    e.type = type;
    e.critical = is_topological(type);
    e.area = count(region);
    e.x0 = width();
    e.y0 = height();
    e.x1 = -1;
    e.y1 = -1;
    for (int y = 0; y < height(); ++y) {
      for (int x = 0; x < width(); ++x) {
        if (!region(x, y)) continue;
        e.x0 = std::min(e.x0, x);
        e.y0 = std::min(e.y0, y);
        e.x1 = std::max(e.x1, x);
        e.y1 = std::max(e.y1, y);
      }
    }
    e.region = region;
    manifest_.push_back(std::move(e));

    pred_ = std::move(next);
    pred_objects_ = next_objects;
    reserved_ = reserved_ | dilate(region, 3);
    for (auto l : affected) touched_[l] = 1;
    return true;
  }

  static bool structure_changed(const LabelMap& a, const LabelMap& b) {
    std::vector<std::int32_t> fwd(static_cast<std::size_t>(max_label(a)) + 1, 0);
    std::vector<std::int32_t> bwd(static_cast<std::size_t>(max_label(b)) + 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0 || b[i] == 0) continue;
      if (fwd[a[i]] == 0) fwd[a[i]] = b[i];
      if (bwd[b[i]] == 0) bwd[b[i]] = a[i];
      if (fwd[a[i]] != b[i] || bwd[b[i]] != a[i]) return true;
    }
    return false;
  }

 public:
  void set_thickness(int t) { thickness_ = std::max(1, t); }

 private:
  const BinaryMask& gt_;
  LabelMap objects_;
  BinaryMask pred_;
  LabelMap pred_objects_;
  BinaryMask reserved_;
  std::vector<std::uint8_t> touched_;
  std::vector<InjectedError> manifest_;
  Rng rng_;
  int thickness_ = 1;
};

// Wall width estimate from the number of 3x3 erosions the walls survive.
inline int estimate_wall_thickness(const BinaryMask& gt) {
  int r = 0;
  BinaryMask core = gt;
  while (any(core)) {
    BinaryMask shrunk(gt.width(), gt.height());
    for (int y = 0; y < gt.height(); ++y) {
      for (int x = 0; x < gt.width(); ++x) {
        bool all = core(x, y) != 0;
        for (int dy = -1; dy <= 1 && all; ++dy) {
          for (int dx = -1; dx <= 1 && all; ++dx) {
            all = core.contains(x + dx, y + dy) && core(x + dx, y + dy);
          }
        }
        shrunk(x, y) = all ? 1 : 0;
      }
    }
    if (!any(shrunk)) break;
    core = std::move(shrunk);
    ++r;
  }
  return 2 * r + 1;
}

}  // namespace detail

/// Builds a prediction from `gt` carrying exactly the requested errors. Each
/// error is placed away from earlier ones and touches objects no other error
/// touches, so every error can be judged on its own.
inline Injection inject_errors(const BinaryMask& gt,
                               const std::vector<ErrorRequest>& requests,
                               std::uint64_t seed) {
  detail::Injector injector(gt, seed);
  injector.set_thickness(detail::estimate_wall_thickness(gt));
  for (const auto& req : requests) {
    if (req.count < 0) throw Error("negative error count");
    for (int k = 0; k < req.count; ++k) injector.place(req.type);
  }
  return std::move(injector).finish();
}

/// Ground truth plus injected prediction for a full spec.
struct SynthPair {
  Synthetic truth;
  Injection injection;
};

inline SynthPair generate_pair(const SynthSpec& spec) {
  Synthetic truth = generate(spec);
  Injection inj = inject_errors(truth.gt, spec.errors,
                                spec.seed ^ 0x9E3779B97F4A7C15ull);
  return {std::move(truth), std::move(inj)};
}

}  // namespace skeatopo

#endif  // SKEATOPO_SYNTH_HPP
