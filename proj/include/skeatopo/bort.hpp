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

// Boundary rectified term: split prediction errors into topologically
// critical (tfp/tfn) and non-critical (ffp/ffn) parts using skeletons, and
// score the rectified likelihood map.
//
// A false-negative region (boundary in gt, object in pred) is critical when
//   (a) it meets the skeleton of some predicted object, or
//   (b) it contains a gt boundary-skeleton pixel that pred left uncovered.
// False positives use the same rules with gt and pred exchanged. Criticality
// is decided per 8-connected error component.

#ifndef SKEATOPO_BORT_HPP
#define SKEATOPO_BORT_HPP

#include <cmath>
#include <cstdint>
#include <vector>

#include "skeatopo/geometry.hpp"
#include "skeatopo/raster.hpp"
#include "skeatopo/skeaw.hpp"

namespace skeatopo {

struct ConfusionMasks {
  BinaryMask tp, tn, fp, fn;
};

inline ConfusionMasks confusion_masks(const BinaryMask& gt,
                                      const BinaryMask& pred) {
  require_same_shape(gt, pred, "confusion_masks");
  const int w = gt.width();
  const int h = gt.height();
  ConfusionMasks out{BinaryMask(w, h), BinaryMask(w, h), BinaryMask(w, h),
                     BinaryMask(w, h)};
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const bool g = gt[i] != 0;
    const bool p = pred[i] != 0;
    out.tp[i] = g && p;
    out.tn[i] = !g && !p;
    out.fp[i] = !g && p;
    out.fn[i] = g && !p;
  }
  return out;
}

/// Union of the 8-connected components of `errors` that contain a seed pixel.
inline BinaryMask components_touching(const BinaryMask& errors,
                                      const BinaryMask& seeds) {
  require_same_shape(errors, seeds, "components_touching");
  const LabelMap comps =
      connected_components(errors, Target::foreground, Connectivity::eight);
  std::vector<std::uint8_t> hit(static_cast<std::size_t>(max_label(comps)) + 1,
                                0);
  for (std::size_t i = 0; i < comps.size(); ++i) {
    if (comps[i] != 0 && seeds[i]) hit[comps[i]] = 1;
  }
  BinaryMask out(errors.width(), errors.height());
  for (std::size_t i = 0; i < comps.size(); ++i) {
    out[i] = comps[i] != 0 ? hit[comps[i]] : 0;
  }
  return out;
}

namespace detail {

// Critical part of `missed` = reference boundary that `other` lost.
// `other_skeletons` come from the objects of `other`, `reference_skeletons`
// from the objects of `reference`.
inline BinaryMask critical_misses(const BinaryMask& missed,
                                  const BinaryMask& other,
                                  const SkeletonSet& reference_skeletons,
                                  const SkeletonSet& other_skeletons) {
  BinaryMask seeds = other_skeletons.background_skeleton;
  const BinaryMask& ref_skel = reference_skeletons.foreground_skeleton;
  for (std::size_t i = 0; i < seeds.size(); ++i) {
    if (ref_skel[i] && !other[i]) seeds[i] = 1;
  }
  return components_touching(missed, seeds);
}

}  // namespace detail

/// Topological false negatives of `pred` with respect to `gt`.
inline BinaryMask identify_tfn(const BinaryMask& gt, const BinaryMask& pred) {
  require_same_shape(gt, pred, "identify_tfn");
  const BinaryMask fn = gt - pred;
  if (!any(fn)) return fn;
  return detail::critical_misses(fn, pred, object_skeletons(label_objects(gt)),
                                 object_skeletons(label_objects(pred)));
}

/// Topological false positives: identify_tfn with the roles exchanged.
inline BinaryMask identify_tfp(const BinaryMask& gt, const BinaryMask& pred) {
  return identify_tfn(pred, gt);
}

struct ErrorPartition {
  BinaryMask tp, tn, fp, fn;
  BinaryMask tfp, tfn, ffp, ffn;
};

inline ErrorPartition partition(const BinaryMask& gt, const BinaryMask& pred) {
  require_same_shape(gt, pred, "partition");
  ConfusionMasks c = confusion_masks(gt, pred);
  ErrorPartition out;
  if (any(c.fp) || any(c.fn)) {
    const SkeletonSet gt_skel = object_skeletons(label_objects(gt));
    const SkeletonSet pred_skel = object_skeletons(label_objects(pred));
    out.tfn = detail::critical_misses(c.fn, pred, gt_skel, pred_skel);
    out.tfp = detail::critical_misses(c.fp, gt, pred_skel, gt_skel);
  } else {
    out.tfn = BinaryMask(gt.width(), gt.height());
    out.tfp = out.tfn;
  }
  out.ffn = c.fn - out.tfn;
  out.ffp = c.fp - out.tfp;
  out.tp = std::move(c.tp);
  out.tn = std::move(c.tn);
  out.fp = std::move(c.fp);
  out.fn = std::move(c.fn);
  return out;
}

struct BortParams {
  double alpha_tfp = 1.0;
  double alpha_tfn = 1.0;
  bool include_ff = true;
  bool include_tt = true;
  double lambda = 1.0;
  /// Epoch at which a training loop should switch the term on. Carried for
  /// integrations; nothing in this library reads it.
  int step_num = 20;

  void validate() const {
    auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
    if (!positive(alpha_tfp) || !positive(alpha_tfn)) {
      throw Error("alpha weights must be positive and finite");
    }
    if (!std::isfinite(lambda) || lambda < 0.0) {
      throw Error("lambda must be finite and non-negative");
    }
    if (step_num < 0) throw Error("step_num must be non-negative");
  }

  /// Variant for heavily imbalanced road-like data: weight tfn and drop the
  /// ff terms.
  static BortParams road_variant(double alpha_tfn) {
    BortParams p;
    p.alpha_tfn = alpha_tfn;
    p.include_ff = false;
    return p;
  }
};

/// Sum of the rectified likelihood map. On gt-object pixels the map is
///   tn*p1 + alpha_tfp*tfp*p1 + ffp*p0,
/// on gt-boundary pixels
///   tp*p0 + alpha_tfn*tfn*p0 + ffn*p1.
inline double rectified_loss(const ProbabilityPair& probs,
                             const ErrorPartition& part,
                             const BortParams& params) {
  params.validate();
  require_same_shape(probs.p0, probs.p1, "rectified_loss");
  for (const BinaryMask* m : {&part.tp, &part.tn, &part.fp, &part.fn,
                              &part.tfp, &part.tfn, &part.ffp, &part.ffn}) {
    require_same_shape(probs.p1, *m, "rectified_loss");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < probs.p1.size(); ++i) {
    const double p0 = probs.p0[i];
    const double p1 = probs.p1[i];
    double v = 0.0;
    if (part.tfp[i]) {
      v = params.alpha_tfp * p1;
    } else if (part.tfn[i]) {
      v = params.alpha_tfn * p0;
    } else if (part.ffp[i]) {
      v = params.include_ff ? p0 : 0.0;
    } else if (part.ffn[i]) {
      v = params.include_ff ? p1 : 0.0;
    } else if (part.tn[i]) {
      v = params.include_tt ? p1 : 0.0;
    } else if (part.tp[i]) {
      v = params.include_tt ? p0 : 0.0;
    }
    total += v;
  }
  return total;
}

struct LossBreakdown {
  double skeaw = 0;
  double bort = 0;
  double total = 0;
};

/// skeaw + lambda * bort, with the prediction mask taken as p1 >= threshold.
inline LossBreakdown total_loss(const ProbabilityPair& probs,
                                const WeightMaps& wm, const BinaryMask& gt,
                                double threshold = 0.5,
                                const BortParams& params = {}) {
  params.validate();
  require_same_shape(probs.p1, gt, "total_loss");
  LossBreakdown out;
  out.skeaw = skeaw_loss(probs, wm);
  const ErrorPartition part = partition(gt, binarize(probs.p1, threshold));
  out.bort = rectified_loss(probs, part, params);
  out.total = out.skeaw + params.lambda * out.bort;
  return out;
}

}  // namespace skeatopo

#endif  // SKEATOPO_BORT_HPP
