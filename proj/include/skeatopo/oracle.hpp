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

// Brute-force ground truth for topological criticality. A region is critical
// when flipping it changes the object (background) structure of the
// prediction: the number of 4-connected object components, or the partition
// those components induce on the object pixels unaffected by the flip.
//
// Cost is one labeling per error component; meant for tests and audits.

#ifndef SKEATOPO_ORACLE_HPP
#define SKEATOPO_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "skeatopo/bort.hpp"
#include "skeatopo/geometry.hpp"
#include "skeatopo/raster.hpp"

namespace skeatopo {

/// True when the object components of `before` and `after` differ in number
/// or split the shared object pixels differently.
inline bool object_structure_differs(const LabelMap& before,
                                     const LabelMap& after) {
  require_same_shape(before, after, "object_structure_differs");
  if (max_label(before) != max_label(after)) return true;
  std::unordered_map<std::int32_t, std::int32_t> fwd, bwd;
  for (std::size_t i = 0; i < before.size(); ++i) {
    const std::int32_t a = before[i];
    const std::int32_t b = after[i];
    if (a == 0 || b == 0) continue;
    const auto [fi, fnew] = fwd.try_emplace(a, b);
    if (!fnew && fi->second != b) return true;
    const auto [bi, bnew] = bwd.try_emplace(b, a);
    if (!bnew && bi->second != a) return true;
  }
  return false;
}

inline BinaryMask flip_region(const BinaryMask& pred, const BinaryMask& region) {
  require_same_shape(pred, region, "flip_region");
  BinaryMask out = pred;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (region[i]) out[i] = out[i] ? 0 : 1;
  }
  return out;
}

namespace detail {

inline bool region_critical_given(const BinaryMask& pred,
                                  const LabelMap& pred_objects,
                                  const BinaryMask& region) {
  return object_structure_differs(pred_objects,
                                  label_objects(flip_region(pred, region)));
}

}  // namespace detail

/// Flips `region` in `pred` and reports whether the object structure changes.
/// The region has to lie within one class of `pred`.
inline bool is_region_critical(const BinaryMask& pred,
                               const BinaryMask& region) {
  require_same_shape(pred, region, "is_region_critical");
  int cls = -1;
  for (std::size_t i = 0; i < region.size(); ++i) {
    if (!region[i]) continue;
    const int c = pred[i] ? 1 : 0;
    if (cls >= 0 && c != cls) {
      throw Error("is_region_critical: region spans both predicted classes");
    }
    cls = c;
  }
  if (cls < 0) return false;
  return detail::region_critical_given(pred, label_objects(pred), region);
}

struct OracleMasks {
  BinaryMask tfn;
  BinaryMask tfp;
};

/// Each 8-connected fn and fp component is flipped to its gt class on its own
/// and kept when the oracle calls it critical.
inline OracleMasks enumerate_critical_components(const BinaryMask& gt,
                                                 const BinaryMask& pred) {
  require_same_shape(gt, pred, "enumerate_critical_components");
  const LabelMap pred_objects = label_objects(pred);
  auto critical_part = [&](const BinaryMask& errors) {
    BinaryMask out(gt.width(), gt.height());
    const LabelMap comps =
        connected_components(errors, Target::foreground, Connectivity::eight);
    const std::int32_t n = max_label(comps);
    for (std::int32_t l = 1; l <= n; ++l) {
      const BinaryMask region = select_label(comps, l);
      if (detail::region_critical_given(pred, pred_objects, region)) {
        for (std::size_t i = 0; i < out.size(); ++i) {
          if (region[i]) out[i] = 1;
        }
      }
    }
    return out;
  };
  return {critical_part(gt - pred), critical_part(pred - gt)};
}

/// How one error component was judged by the skeleton detector and by the
/// oracle.
struct ComponentVerdict {
  bool false_negative = false;  ///< fn component (else fp)
  int x = 0;                    ///< first pixel in row-major order
  int y = 0;
  std::size_t area = 0;
  bool detector = false;
  bool oracle = false;
  /// Largest distance from a component pixel to the other gt class, i.e. how
  /// far the error reaches away from where the gt boundary lies.
  double depth = 0;

  bool agrees() const { return detector == oracle; }
};

/// Components deeper than this are "far from the boundary"; the detector may
/// flag them even when the oracle calls them neutral.
inline constexpr double kFarFromBoundary = 3.0;

inline std::vector<ComponentVerdict> compare_with_oracle(
    const BinaryMask& gt, const BinaryMask& pred) {
  require_same_shape(gt, pred, "compare_with_oracle");
  const ErrorPartition part = partition(gt, pred);
  const LabelMap pred_objects = label_objects(pred);
  std::vector<ComponentVerdict> out;

  auto judge = [&](const BinaryMask& errors, const BinaryMask& flagged,
                   bool false_negative) {
    if (!any(errors)) return;
    // distance to the other gt class
    const BinaryMask other = false_negative ? invert(gt) : gt;
    const std::optional<SquaredField> depth_sq =
        any(other) ? std::optional(edt_squared(other)) : std::nullopt;
    const LabelMap comps =
        connected_components(errors, Target::foreground, Connectivity::eight);
    const std::int32_t n = max_label(comps);
    std::vector<ComponentVerdict> verdicts(n);
    std::vector<std::uint8_t> seen(n + 1, 0);
    for (std::size_t i = 0; i < comps.size(); ++i) {
      const std::int32_t l = comps[i];
      if (l == 0) continue;
      ComponentVerdict& v = verdicts[l - 1];
      if (!seen[l]) {
        seen[l] = 1;
        v.false_negative = false_negative;
        v.x = static_cast<int>(i % gt.width());
        v.y = static_cast<int>(i / gt.width());
        v.detector = flagged[i] != 0;
      }
      ++v.area;
      if (depth_sq) {
        v.depth = std::max(v.depth, std::sqrt(static_cast<double>((*depth_sq)[i])));
      }
    }
    for (std::int32_t l = 1; l <= n; ++l) {
      verdicts[l - 1].oracle = detail::region_critical_given(
          pred, pred_objects, select_label(comps, l));
      out.push_back(verdicts[l - 1]);
    }
  };
  judge(part.fn, part.tfn, true);
  judge(part.fp, part.tfp, false);
  return out;
}

struct AgreementSummary {
  std::size_t components = 0;
  std::size_t agreeing = 0;
  /// detector flags, oracle neutral, component far from the boundary
  std::size_t allowed_disagreements = 0;
  std::size_t other_disagreements = 0;

  double agreement() const {
    return components == 0 ? 1.0
                           : static_cast<double>(agreeing) /
                                 static_cast<double>(components);
  }
  void add(const ComponentVerdict& v) {
    ++components;
    if (v.agrees()) {
      ++agreeing;
    } else if (v.detector && !v.oracle && v.depth > kFarFromBoundary) {
      ++allowed_disagreements;
    } else {
      ++other_disagreements;
    }
  }
};

}  // namespace skeatopo

#endif  // SKEATOPO_ORACLE_HPP
