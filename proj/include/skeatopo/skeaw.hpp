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

// Skeleton-aware weighted cross-entropy.
//
// Weight maps are computed once per ground-truth image (build_weight_maps)
// and then reused for every loss evaluation (skeaw_loss).

#ifndef SKEATOPO_SKEAW_HPP
#define SKEATOPO_SKEAW_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "skeatopo/geometry.hpp"
#include "skeatopo/raster.hpp"

namespace skeatopo {

/// Probabilities are floored here before taking the log.
inline constexpr double kProbabilityFloor = 1e-12;

struct ClassBalance {
  double w0_bce = 0;
  double w1_bce = 0;
};

/// Per-image class balance: each class is weighted by the fraction of pixels
/// belonging to the other class.
inline ClassBalance class_balance_weights(const BinaryMask& gt) {
  const std::size_t n = gt.size();
  const std::size_t fg = count(gt);
  if (fg == 0 || fg == n) throw Error("degenerate class balance");
  const double total = static_cast<double>(n);
  return {static_cast<double>(fg) / total,
          static_cast<double>(n - fg) / total};
}

struct WeightParams {
  double w0 = 10.0;
  int d_iter = 2;
};

struct WeightMaps {
  ScalarField w1s;  ///< boundary-pixel weights, 0 on objects
  ScalarField w0s;  ///< object-pixel weights, 0 on boundaries
  BinaryMask dilation_mask;
  WeightParams params;
};

/// Boundary weight from the nearest/next-nearest object distances. A zero
/// `d1_max` drops the distance term (the pixel gets w1_bce + w0).
///
/// When d1 + d2 exceeds 4 * d1_max (a boundary pixel with no second object
/// nearby, e.g. a dead-end spur) the bracket would turn negative; it is
/// floored at 0 so the weight never drops below w1_bce.
inline double foreground_weight(double w1_bce, double w0, double d1, double d2,
                                double d1_max) {
  const double closeness =
      d1_max > 0.0 ? (2.0 * d1_max - d1 - d2) / (2.0 * d1_max) : 0.0;
  return w1_bce + w0 * std::max(closeness + 1.0, 0.0);
}

inline double background_weight(double w0_bce, double w0, double d_nsp,
                                double d0_nsp) {
  return w0_bce + w0 * skeleton_ratio(d_nsp, d0_nsp);
}

inline WeightMaps build_weight_maps(const BinaryMask& gt,
                                    const WeightParams& params = {}) {
  if (!(params.w0 > 0.0) || !std::isfinite(params.w0)) {
    throw Error("w0 must be a positive finite number");
  }
  if (params.d_iter < 0) throw Error("d_iter must be non-negative");
  const ClassBalance balance = class_balance_weights(gt);
  const LabelMap objects = label_objects(gt);
  const ObjectDistances near = two_nearest_object_distances(objects);
  const SkeletonSet skeletons = object_skeletons(objects);
  const NormalizedDistances norm =
      skeleton_normalized_distances(objects, skeletons);

  double d1_max = 0.0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i]) d1_max = std::max(d1_max, near.d1[i]);
  }

  WeightMaps maps{ScalarField(gt.width(), gt.height(), 0.0),
                  ScalarField(gt.width(), gt.height(), 0.0),
                  dilate(gt, params.d_iter), params};
  for (std::size_t i = 0; i < gt.size(); ++i) {
    if (gt[i]) {
      maps.w1s[i] = foreground_weight(balance.w1_bce, params.w0, near.d1[i],
                                      near.d2[i], d1_max);
    } else {
      maps.w0s[i] = background_weight(balance.w0_bce, params.w0,
                                      norm.d_nsp[i], norm.d0_nsp[i]);
    }
  }
  return maps;
}

/// Post-softmax class probabilities.
struct ProbabilityPair {
  ScalarField p0;
  ScalarField p1;

  static ProbabilityPair from_foreground(const ScalarField& p1) {
    ProbabilityPair out{ScalarField(p1.width(), p1.height()), p1};
    for (std::size_t i = 0; i < p1.size(); ++i) out.p0[i] = 1.0 - p1[i];
    return out;
  }

  int width() const { return p1.width(); }
  int height() const { return p1.height(); }

  void validate(double tolerance = 1e-6) const {
    require_same_shape(p0, p1, "probabilities");
    for (std::size_t i = 0; i < p0.size(); ++i) {
      const double a = p0[i];
      const double b = p1[i];
      if (!(a >= 0.0 && a <= 1.0 && b >= 0.0 && b <= 1.0) ||
          std::abs(a + b - 1.0) > tolerance) {
        throw Error("probabilities at pixel " + std::to_string(i) +
                    " are not a distribution");
      }
    }
  }
};

/// The foreground branch is scored when w0s < w1s * m_d; ties go to the
/// background branch.
inline bool foreground_branch(double w0s, double w1s, std::uint8_t in_band) {
  return w0s < w1s * (in_band ? 1.0 : 0.0);
}

inline double floored_log(double p) {
  return std::log(std::max(p, kProbabilityFloor));
}

/// Sum over pixels of the branch-selected weighted negative log-likelihood.
inline double skeaw_loss(const ProbabilityPair& probs, const WeightMaps& wm) {
  require_same_shape(probs.p0, wm.w1s, "skeaw_loss");
  require_same_shape(probs.p1, wm.w1s, "skeaw_loss");
  require_same_shape(wm.w0s, wm.w1s, "skeaw_loss");
  require_same_shape(wm.dilation_mask, wm.w1s, "skeaw_loss");
  double total = 0.0;
  for (std::size_t i = 0; i < probs.p1.size(); ++i) {
    if (foreground_branch(wm.w0s[i], wm.w1s[i], wm.dilation_mask[i])) {
      total -= wm.w1s[i] * floored_log(probs.p1[i]);
    } else {
      total -= wm.w0s[i] * floored_log(probs.p0[i]);
    }
  }
  return total;
}

/// dL/dp1 with p0 = 1 - p1 tied to it. Zero where the log floor is active.
inline ScalarField skeaw_gradient(const ProbabilityPair& probs,
                                  const WeightMaps& wm) {
  require_same_shape(probs.p1, wm.w1s, "skeaw_gradient");
  ScalarField grad(probs.width(), probs.height(), 0.0);
  for (std::size_t i = 0; i < grad.size(); ++i) {
    if (foreground_branch(wm.w0s[i], wm.w1s[i], wm.dilation_mask[i])) {
      if (probs.p1[i] > kProbabilityFloor) grad[i] = -wm.w1s[i] / probs.p1[i];
    } else {
      if (probs.p0[i] > kProbabilityFloor) grad[i] = wm.w0s[i] / probs.p0[i];
    }
  }
  return grad;
}

}  // namespace skeatopo

#endif  // SKEATOPO_SKEAW_HPP
