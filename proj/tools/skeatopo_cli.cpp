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

// skeatopo command-line front end.
//
// Exit codes: 0 success, 1 usage error, 2 data error. Diagnostics go to
// stderr; machine-readable output goes to stdout or to files.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "skeatopo/io.hpp"
#include "skeatopo/skeatopo.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace skeatopo;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitData = 2;

void write_json(const fs::path& path, const ordered_json& j) {
  std::ofstream os(path);
  if (!os) throw Error("cannot open '" + path.string() + "' for writing");
  os << j.dump(2) << "\n";
}

fs::path with_suffix(const std::string& prefix, const std::string& suffix) {
  return fs::path(prefix + suffix);
}

void ensure_parent(const fs::path& p) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
}

// --- weights ---------------------------------------------------------------

struct WeightsArgs {
  std::string gt;
  std::string out_prefix;
  double w0 = 10.0;
  int d_iter = 2;
};

void run_weights(const WeightsArgs& a) {
  const BinaryMask gt = io::read_mask(a.gt);
  const WeightMaps wm = build_weight_maps(gt, {a.w0, a.d_iter});
  ensure_parent(with_suffix(a.out_prefix, ".w1s.fras"));
  io::write_field(with_suffix(a.out_prefix, ".w1s.fras"), wm.w1s);
  io::write_field(with_suffix(a.out_prefix, ".w0s.fras"), wm.w0s);
  io::write_mask(with_suffix(a.out_prefix, ".md.png"), wm.dilation_mask);
}

// --- critical --------------------------------------------------------------

struct CriticalArgs {
  std::string gt;
  std::string pred;
  std::string out_prefix;
};

ordered_json component_areas(const BinaryMask& m) {
  const LabelMap comps =
      connected_components(m, Target::foreground, Connectivity::eight);
  std::vector<std::size_t> areas(static_cast<std::size_t>(max_label(comps)), 0);
  for (auto l : comps.values()) {
    if (l > 0) ++areas[l - 1];
  }
  return areas;
}

void run_critical(const CriticalArgs& a) {
  const BinaryMask gt = io::read_mask(a.gt);
  const BinaryMask pred = io::read_mask(a.pred);
  const ErrorPartition part = partition(gt, pred);
  const std::vector<std::pair<std::string, const BinaryMask*>> masks{
      {"tfp", &part.tfp}, {"tfn", &part.tfn}, {"ffp", &part.ffp},
      {"ffn", &part.ffn}};
  ordered_json counts, components;
  ensure_parent(with_suffix(a.out_prefix, ".json"));
  for (const auto& [name, mask] : masks) {
    io::write_mask(with_suffix(a.out_prefix, "." + name + ".png"), *mask);
    counts[name] = count(*mask);
    components[name] = component_areas(*mask);
  }
  write_json(with_suffix(a.out_prefix, ".json"),
             {{"counts", counts}, {"components", components}});
}

// --- loss ------------------------------------------------------------------

struct LossArgs {
  std::string gt;
  std::string prob;
  double lambda = 1.0;
  double threshold = 0.5;
  double alpha_tfn = 1.0;
  double alpha_tfp = 1.0;
  bool no_ff = false;
  bool no_tt = false;
  double w0 = 10.0;
  int d_iter = 2;
};

void run_loss(const LossArgs& a) {
  const BinaryMask gt = io::read_mask(a.gt);
  const ProbabilityPair probs = io::read_probabilities(a.prob);
  require_same_shape(gt, probs.p1, "loss");
  const WeightMaps wm = build_weight_maps(gt, {a.w0, a.d_iter});
  BortParams params;
  params.lambda = a.lambda;
  params.alpha_tfn = a.alpha_tfn;
  params.alpha_tfp = a.alpha_tfp;
  params.include_ff = !a.no_ff;
  params.include_tt = !a.no_tt;
  const LossBreakdown loss = total_loss(probs, wm, gt, a.threshold, params);
  const ordered_json out{
      {"skeaw", io::json_number(loss.skeaw)},
      {"bort", io::json_number(loss.bort)},
      {"total", io::json_number(loss.total)},
      {"skeaw_mean",
       io::json_number(loss.skeaw / static_cast<double>(gt.size()))}};
  std::cout << out.dump(2) << "\n";
}

// --- eval ------------------------------------------------------------------

struct EvalArgs {
  std::string gt;
  std::string pred;
};

void run_eval(const EvalArgs& a) {
  if (fs::is_directory(a.gt) != fs::is_directory(a.pred)) {
    throw Error("eval: give two files or two directories");
  }
  if (!fs::is_directory(a.gt)) {
    const MetricReport r = evaluate(io::read_mask(a.gt), io::read_mask(a.pred));
    std::cout << io::to_json(r).dump(2) << "\n";
    return;
  }
  std::vector<fs::path> names;
  for (const auto& entry : fs::directory_iterator(a.gt)) {
    if (entry.is_regular_file() && entry.path().extension() == ".png") {
      names.push_back(entry.path().filename());
    }
  }
  std::sort(names.begin(), names.end());
  if (names.empty()) throw Error("eval: no PNG files in '" + a.gt + "'");
  std::vector<MetricReport> reports;
  for (const auto& name : names) {
    const fs::path pred = fs::path(a.pred) / name;
    if (!fs::exists(pred)) {
      throw Error("eval: missing prediction '" + pred.string() + "'");
    }
    reports.push_back(
        evaluate(io::read_mask(fs::path(a.gt) / name), io::read_mask(pred)));
  }
  std::cout << io::to_json(mean_report(reports)).dump(2) << "\n";
}

// --- oracle ----------------------------------------------------------------

struct OracleArgs {
  std::string gt;
  std::string pred;
  std::size_t max_pixels = std::size_t{1} << 20;
};

void run_oracle(const OracleArgs& a) {
  const BinaryMask gt = io::read_mask(a.gt);
  const BinaryMask pred = io::read_mask(a.pred);
  require_same_shape(gt, pred, "oracle");
  if (gt.size() > a.max_pixels) {
    throw Error("oracle: image has " + std::to_string(gt.size()) +
                " pixels, above --max-pixels " + std::to_string(a.max_pixels));
  }
  const auto verdicts = compare_with_oracle(gt, pred);
  AgreementSummary summary;
  ordered_json disagreements = ordered_json::array();
  for (const auto& v : verdicts) {
    summary.add(v);
    if (v.agrees()) continue;
    disagreements.push_back({{"kind", v.false_negative ? "fn" : "fp"},
                             {"x", v.x},
                             {"y", v.y},
                             {"area", v.area},
                             {"detector", v.detector},
                             {"oracle", v.oracle},
                             {"depth", io::json_number(v.depth)}});
  }
  const ordered_json out{
      {"components", summary.components},
      {"agreeing", summary.agreeing},
      {"agreement", io::json_number(summary.agreement())},
      {"allowed_disagreements", summary.allowed_disagreements},
      {"other_disagreements", summary.other_disagreements},
      {"disagreements", disagreements}};
  std::cout << out.dump(2) << "\n";
}

// --- gen -------------------------------------------------------------------

struct GenArgs {
  std::string spec;
  std::string out_dir;
};

void run_gen(const GenArgs& a) {
  const SynthSpec spec = io::read_synth_spec(a.spec);
  const SynthPair pair = generate_pair(spec);
  const fs::path dir(a.out_dir);
  fs::create_directories(dir);
  io::write_mask(dir / "gt.png", pair.truth.gt);
  io::write_labels(dir / "objects.png", pair.truth.objects);
  io::write_mask(dir / "pred.png", pair.injection.pred);
  ordered_json errors = ordered_json::array();
  for (const auto& e : pair.injection.manifest) {
    errors.push_back({{"type", to_string(e.type)},
                      {"critical", e.critical},
                      {"area", e.area},
                      {"bbox", {e.x0, e.y0, e.x1, e.y1}}});
  }
  write_json(dir / "manifest.json",
             {{"spec", io::to_json(spec)},
              {"objects", max_label(pair.truth.objects)},
              {"pred_objects", max_label(label_objects(pair.injection.pred))},
              {"errors", errors}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Topology-aware boundary segmentation toolkit"};
  app.require_subcommand(1);

  WeightsArgs weights;
  auto* w = app.add_subcommand("weights", "Skeleton-aware weight maps for a ground-truth mask");
  w->add_option("gt", weights.gt, "ground-truth mask (PNG)")->required();
  w->add_option("out_prefix", weights.out_prefix, "output prefix")->required();
  w->add_option("--w0", weights.w0, "distance-term weight")->capture_default_str();
  w->add_option("--d-iter", weights.d_iter, "3x3 dilations of the foreground band")
      ->capture_default_str();

  CriticalArgs critical;
  auto* c = app.add_subcommand("critical", "Critical / non-critical error masks");
  c->add_option("gt", critical.gt, "ground-truth mask (PNG)")->required();
  c->add_option("pred", critical.pred, "predicted mask (PNG)")->required();
  c->add_option("out_prefix", critical.out_prefix, "output prefix")->required();

  LossArgs loss;
  auto* l = app.add_subcommand("loss", "Total loss for a probability map");
  l->add_option("gt", loss.gt, "ground-truth mask (PNG)")->required();
  l->add_option("prob", loss.prob, "probabilities (FRAS, p1 or p0,p1)")->required();
  l->add_option("--lambda", loss.lambda, "weight of the rectified term")->capture_default_str();
  l->add_option("--threshold", loss.threshold, "p1 threshold for the prediction mask")
      ->capture_default_str();
  l->add_option("--alpha-tfn", loss.alpha_tfn, "tfn weight")->capture_default_str();
  l->add_option("--alpha-tfp", loss.alpha_tfp, "tfp weight")->capture_default_str();
  l->add_flag("--no-ff", loss.no_ff, "drop the ffp/ffn terms");
  l->add_flag("--no-tt", loss.no_tt, "drop the tp/tn terms");
  l->add_option("--w0", loss.w0, "distance-term weight")->capture_default_str();
  l->add_option("--d-iter", loss.d_iter, "3x3 dilations of the foreground band")
      ->capture_default_str();

  EvalArgs eval;
  auto* e = app.add_subcommand("eval", "VI / ARI / mAP / Betti / Dice report");
  e->add_option("gt", eval.gt, "ground-truth mask or directory")->required();
  e->add_option("pred", eval.pred, "predicted mask or directory")->required();

  OracleArgs oracle;
  auto* o = app.add_subcommand("oracle", "Cross-check detector against brute force");
  o->add_option("gt", oracle.gt, "ground-truth mask (PNG)")->required();
  o->add_option("pred", oracle.pred, "predicted mask (PNG)")->required();
  o->add_option("--max-pixels", oracle.max_pixels, "refuse larger images")
      ->capture_default_str();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate a synthetic pair from a JSON spec");
  g->add_option("spec", gen.spec, "spec file (JSON)")->required();
  g->add_option("out_dir", gen.out_dir, "output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*w) run_weights(weights);
    if (*c) run_critical(critical);
    if (*l) run_loss(loss);
    if (*e) run_eval(eval);
    if (*o) run_oracle(oracle);
    if (*g) run_gen(gen);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kExitData;
  }
  return 0;
}
