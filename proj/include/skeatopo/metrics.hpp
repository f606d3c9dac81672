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

// Segmentation evaluation: VI, ARI, mAP, Betti error and Dice, plus the
// dilate / skeletonize / dilate clean-up applied before scoring.
//
// VI and ARI compare object partitions, so only pixels that are object
// pixels in both label maps enter their contingency tables. Entropies are in
// nats.

#ifndef SKEATOPO_METRICS_HPP
#define SKEATOPO_METRICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "skeatopo/geometry.hpp"
#include "skeatopo/raster.hpp"

namespace skeatopo {

inline BinaryMask postprocess(const BinaryMask& mask) {
  return dilate(skeletonize(dilate(mask, 1)), 1);
}

namespace detail {

struct Contingency {
  std::unordered_map<std::uint64_t, double> joint;
  std::unordered_map<std::int32_t, double> rows;  // first argument
  std::unordered_map<std::int32_t, double> cols;  // second argument
  double total = 0;
};

inline Contingency object_contingency(const LabelMap& a, const LabelMap& b,
                                      const char* what) {
  require_same_shape(a, b, what);
  Contingency c;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0 || b[i] <= 0) continue;
    const auto key = (static_cast<std::uint64_t>(a[i]) << 32) |
                     static_cast<std::uint32_t>(b[i]);
    c.joint[key] += 1;
    c.rows[a[i]] += 1;
    c.cols[b[i]] += 1;
    c.total += 1;
  }
  if (c.total == 0) {
    throw Error(std::string(what) + ": no pixel is an object in both maps");
  }
  return c;
}

inline double choose2(double n) { return n * (n - 1.0) / 2.0; }

}  // namespace detail

struct VariationOfInformation {
  double split = 0;  ///< H(b | a): over-segmentation of b relative to a
  double merge = 0;  ///< H(a | b): under-segmentation of b relative to a
  double total = 0;
};

/// Variation of information of `b` against reference `a`.
inline VariationOfInformation vi(const LabelMap& a, const LabelMap& b) {
  const auto c = detail::object_contingency(a, b, "vi");
  VariationOfInformation out;
  for (const auto& [key, n] : c.joint) {
    const auto la = static_cast<std::int32_t>(key >> 32);
    const auto lb = static_cast<std::int32_t>(key & 0xFFFFFFFFu);
    const double p = n / c.total;
    out.split -= p * std::log(n / c.rows.at(la));
    out.merge -= p * std::log(n / c.cols.at(lb));
  }
  // log(1) terms can leave -0.0
  out.split = std::max(out.split, 0.0);
  out.merge = std::max(out.merge, 0.0);
  out.total = out.split + out.merge;
  return out;
}

/// Pair-counting adjusted Rand index. When the chance-corrected denominator
/// vanishes (e.g. one cluster against one cluster) the result is 1 for
/// identical pair structure and 0 otherwise.
inline double ari(const LabelMap& a, const LabelMap& b) {
  const auto c = detail::object_contingency(a, b, "ari");
  double index = 0;
  for (const auto& [key, n] : c.joint) index += detail::choose2(n);
  double sum_a = 0;
  for (const auto& [l, n] : c.rows) sum_a += detail::choose2(n);
  double sum_b = 0;
  for (const auto& [l, n] : c.cols) sum_b += detail::choose2(n);
  const double pairs = detail::choose2(c.total);
  const double expected = pairs > 0 ? sum_a * sum_b / pairs : 0.0;
  const double max_index = 0.5 * (sum_a + sum_b);
  const double denom = max_index - expected;
  if (denom == 0.0) return index == expected ? 1.0 : 0.0;
  return (index - expected) / denom;
}

/// |objects(gt) - objects(pred)| for dense label maps.
inline int betti_error(const LabelMap& gt, const LabelMap& pred) {
  require_same_shape(gt, pred, "betti_error");
  return std::abs(max_label(gt) - max_label(pred));
}

/// Dice on the boundary class; 1 when both masks are empty.
inline double dice(const BinaryMask& gt, const BinaryMask& pred) {
  require_same_shape(gt, pred, "dice");
  std::size_t both = 0, ng = 0, np = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    ng += gt[i] != 0;
    np += pred[i] != 0;
    both += gt[i] != 0 && pred[i] != 0;
  }
  if (ng + np == 0) return 1.0;
  return 2.0 * static_cast<double>(both) / static_cast<double>(ng + np);
}

inline std::vector<double> map_iou_thresholds() {
  std::vector<double> t;
  for (int k = 0; k < 10; ++k) t.push_back(0.50 + 0.05 * k);
  return t;
}

/// Mean over IoU thresholds 0.50:0.05:0.95 of TP / (TP + FP + FN), with
/// instances matched greedily in order of decreasing IoU.
inline double map_instances(const LabelMap& gt, const LabelMap& pred) {
  require_same_shape(gt, pred, "map_instances");
  const std::int32_t ng = max_label(gt);
  const std::int32_t np = max_label(pred);
  if (ng == 0 && np == 0) return 1.0;
  if (ng == 0 || np == 0) return 0.0;
  std::vector<double> area_g(ng + 1, 0.0), area_p(np + 1, 0.0);
  std::unordered_map<std::uint64_t, double> overlap;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    area_g[gt[i]] += 1;
    area_p[pred[i]] += 1;
    if (gt[i] > 0 && pred[i] > 0) {
      overlap[(static_cast<std::uint64_t>(gt[i]) << 32) |
              static_cast<std::uint32_t>(pred[i])] += 1;
    }
  }
  struct Pair {
    double iou;
    std::int32_t g, p;
  };
  std::vector<Pair> pairs;
  pairs.reserve(overlap.size());
  for (const auto& [key, inter] : overlap) {
    const auto g = static_cast<std::int32_t>(key >> 32);
    const auto p = static_cast<std::int32_t>(key & 0xFFFFFFFFu);
    pairs.push_back({inter / (area_g[g] + area_p[p] - inter), g, p});
  }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& x, const Pair& y) {
    return std::tie(y.iou, x.g, x.p) < std::tie(x.iou, y.g, y.p);
  });
  const auto thresholds = map_iou_thresholds();
  double sum = 0;
  for (double t : thresholds) {
    std::vector<std::uint8_t> used_g(ng + 1, 0), used_p(np + 1, 0);
    int tp = 0;
    for (const Pair& pr : pairs) {
      if (pr.iou < t) break;
      if (used_g[pr.g] || used_p[pr.p]) continue;
      used_g[pr.g] = used_p[pr.p] = 1;
      ++tp;
    }
    const int fp = np - tp;
    const int fn = ng - tp;
    sum += static_cast<double>(tp) / static_cast<double>(tp + fp + fn);
  }
  return sum / static_cast<double>(thresholds.size());
}

struct MetricReport {
  double vi_split = 0;
  double vi_merge = 0;
  double vi = 0;
  double ari = 0;
  double map = 0;
  double betti_error = 0;
  double dice = 0;
};

/// Scores object label maps against each other; `gt_mask`/`pred_mask` feed
/// Dice only.
inline MetricReport evaluate_labels(const LabelMap& gt, const LabelMap& pred,
                                    const BinaryMask& gt_mask,
                                    const BinaryMask& pred_mask) {
  MetricReport r;
  const auto v = vi(gt, pred);
  r.vi_split = v.split;
  r.vi_merge = v.merge;
  r.vi = v.total;
  r.ari = ari(gt, pred);
  r.map = map_instances(gt, pred);
  r.betti_error = betti_error(gt, pred);
  r.dice = dice(gt_mask, pred_mask);
  return r;
}

/// Full evaluation pipeline: both masks are post-processed, then objects are
/// taken as the 4-connected background components.
inline MetricReport evaluate(const BinaryMask& gt, const BinaryMask& pred) {
  require_same_shape(gt, pred, "evaluate");
  const BinaryMask g = postprocess(gt);
  const BinaryMask p = postprocess(pred);
  return evaluate_labels(label_objects(g), label_objects(p), g, p);
}

/// Unweighted mean over images.
inline MetricReport mean_report(const std::vector<MetricReport>& reports) {
  MetricReport m;
  if (reports.empty()) return m;
  for (const auto& r : reports) {
    m.vi_split += r.vi_split;
    m.vi_merge += r.vi_merge;
    m.ari += r.ari;
    m.map += r.map;
    m.betti_error += r.betti_error;
    m.dice += r.dice;
  }
  const double n = static_cast<double>(reports.size());
  m.vi_split /= n;
  m.vi_merge /= n;
  m.vi = m.vi_split + m.vi_merge;
  m.ari /= n;
  m.map /= n;
  m.betti_error /= n;
  m.dice /= n;
  return m;
}

}  // namespace skeatopo

#endif  // SKEATOPO_METRICS_HPP
