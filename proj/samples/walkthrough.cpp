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

// End-to-end walk through the library on a synthetic image:
// generate ground truth, fake a network output with a few topological
// mistakes, then compute weight maps, the loss terms and the metrics.

#include <cstdio>

#include "skeatopo/skeatopo.hpp"

using namespace skeatopo;

int main() {
  SynthSpec spec;
  spec.width = spec.height = 128;
  spec.n_sites = 18;
  spec.boundary_thickness = 4;
  spec.seed = 42;
  spec.errors = {{ErrorType::closure, 1}, {ErrorType::fracture, 1}, {ErrorType::thin, 1}};
  const SynthPair pair = generate_pair(spec);
  const BinaryMask& gt = pair.truth.gt;
  const BinaryMask& pred = pair.injection.pred;

  // Weight maps depend only on the ground truth; compute once per image.
  const WeightMaps wm = build_weight_maps(gt);

  // A soft prediction: 0.9 / 0.1 around the injected mask.
  ScalarField p1(gt.width(), gt.height());
  for (std::size_t i = 0; i < p1.size(); ++i) p1[i] = pred[i] ? 0.9 : 0.1;
  const auto probs = ProbabilityPair::from_foreground(p1);

  const ErrorPartition part = partition(gt, binarize(probs.p1, 0.5));
  std::printf("errors: fn %zu px (%zu critical), fp %zu px (%zu critical)\n",
              count(part.fn), count(part.tfn), count(part.fp), count(part.tfp));

  const LossBreakdown loss = total_loss(probs, wm, gt);
  std::printf("loss: skeaw %.3f + bort %.3f = %.3f\n", loss.skeaw, loss.bort, loss.total);

  const MetricReport r = evaluate(gt, pred);
  std::printf("metrics: VI %.4f (split %.4f, merge %.4f), ARI %.4f, mAP %.4f, "
              "Betti %.0f, Dice %.4f\n",
              r.vi, r.vi_split, r.vi_merge, r.ari, r.map, r.betti_error, r.dice);
  return 0;
}
