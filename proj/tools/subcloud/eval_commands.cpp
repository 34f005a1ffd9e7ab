/* Copyright 2026 The Subcloud Authors. All Rights Reserved.

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

#include <iostream>

#include "commands.hpp"
#include "subcloud/error.hpp"
#include "subcloud/fusion.hpp"
#include "subcloud/metrics.hpp"
#include "subcloud/subcloud_io.hpp"
#include "subcloud/synth.hpp"

namespace subcloud::cli {

namespace {

struct Pair {
  Subcloud subcloud;
  SubcloudPrediction prediction;
};

/// Every prediction in `preds` with the subcloud of the same center_id.
std::vector<Pair> load_pairs(const std::filesystem::path& subclouds,
                             const std::filesystem::path& preds, Parallelism par) {
  const auto files = list_files(preds, ".pred");
  if (files.empty()) raise(Errc::Io, "no .pred files in " + preds.string());
  std::vector<Pair> out(files.size());
  parallel_for(files.size(), par, [&](std::size_t k) {
    out[k].prediction = read_prediction(files[k]);
    out[k].subcloud =
        read_subcloud(subclouds / subcloud_file_name(out[k].prediction.center_id));
  });
  return out;
}

UndefinedIou undefined_flag(const std::string& text) {
  if (text == "exclude") return UndefinedIou::Exclude;
  if (text == "zero") return UndefinedIou::Zero;
  throw UsageError("--undefined must be exclude or zero");
}

}  // namespace

void add_eval_commands(CLI::App& app, const Globals& globals, std::vector<Command>& out) {
  {
    struct Flags {
      std::string input, subclouds, preds, output;
      bool weighted = false;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("fuse", "Fuse subcloud predictions onto the full cloud");
    cmd->add_option("cloud", f->input, "Cloud the subclouds were cropped from")->required();
    cmd->add_option("--subclouds", f->subclouds, "Directory of .subc files")->required();
    cmd->add_option("--preds", f->preds, "Directory of .pred files")->required();
    cmd->add_option("-o,--output", f->output,
                    "Output cloud with fused labels and a confidence column")
        ->required();
    cmd->add_flag("--weighted", f->weighted,
                  "Weight each vote by its selection probability (experimental)");
    out.push_back({cmd, [f, &globals] {
                     output_format(globals, f->output);
                     const PointCloud cloud = load_cloud(f->input);
                     const auto pairs = load_pairs(f->subclouds, f->preds, globals.parallelism());
                     PredictionBuffer buffer(cloud.size(), pairs.front().prediction.classes);
                     const FusionWeight weight =
                         f->weighted ? FusionWeight::BySelectionProb : FusionWeight::Uniform;
                     for (const auto& p : pairs) buffer.accumulate(p.subcloud, p.prediction, weight);
                     FusionResult fused = buffer.finalize();
                     const ExtraColumn confidence{"confidence", std::move(fused.confidence)};
                     save_cloud(globals, cloud.with_labels(std::move(fused.labels)), f->output,
                                std::span(&confidence, 1));
                     std::cerr << pairs.size() << " subclouds fused, " << fused.uncovered.size()
                               << " uncovered points\n";
                   }});
  }
  {
    struct Flags {
      std::string pred, gt, undefined = "exclude", output, subclouds, preds, sweep_output;
      std::uint32_t classes = 0;
      bool tau_sweep = false;
      std::vector<double> thresholds;
    };
    auto f = std::make_shared<Flags>();
    auto* cmd = app.add_subcommand("eval", "Confusion matrix and IoU of a labeled prediction");
    cmd->add_option("--pred", f->pred, "Predicted labels (cloud with a label column)")->required();
    cmd->add_option("--gt", f->gt, "Ground-truth labels (cloud with a label column)")->required();
    cmd->add_option("--classes", f->classes, "Class count (default: largest label + 1)");
    cmd->add_option("--undefined", f->undefined,
                    "Classes absent from both: exclude from the mean or count as 0")
        ->check(CLI::IsMember({"exclude", "zero"}))
        ->capture_default_str();
    cmd->add_option("-o,--output", f->output, "Metrics CSV (default stdout)");
    auto* sweep = cmd->add_flag("--tau-sweep", f->tau_sweep,
                                "Also report mIoU over subcloud points with p <= tau_p");
    cmd->add_option("--subclouds", f->subclouds, "Tau sweep: directory of .subc files")
        ->needs(sweep);
    cmd->add_option("--preds", f->preds, "Tau sweep: directory of .pred files")->needs(sweep);
    cmd->add_option("--thresholds", f->thresholds, "Tau sweep thresholds (default 0.2 .. 0.9)")
        ->needs(sweep);
    cmd->add_option("--sweep-output", f->sweep_output, "Tau sweep CSV (default stdout)")
        ->needs(sweep);
    out.push_back({cmd, [f, &globals] {
                     const UndefinedIou policy = undefined_flag(f->undefined);
                     if (f->tau_sweep && (f->subclouds.empty() || f->preds.empty())) {
                       throw UsageError("--tau-sweep needs --subclouds and --preds");
                     }
                     const PointCloud pred = load_cloud(f->pred);
                     const PointCloud gt = load_cloud(f->gt);
                     if (!pred.has_labels() || !gt.has_labels()) {
                       raise(Errc::InvalidArgument, "both clouds need a label column");
                     }
                     const std::uint32_t classes =
                         f->classes ? f->classes : infer_classes({gt.labels(), pred.labels()});
                     const ConfusionMatrix m = confusion(pred.labels(), gt.labels(), classes);
                     emit(metrics_to_csv(m, iou(m, policy)), f->output);
                     if (!f->tau_sweep) return;

                     const auto pairs = load_pairs(f->subclouds, f->preds, globals.parallelism());
                     std::vector<std::vector<std::uint32_t>> labels(pairs.size());
                     std::vector<SubcloudLabels> views;
                     for (std::size_t k = 0; k < pairs.size(); ++k) {
                       labels[k] = predicted_labels(pairs[k].prediction);
                       views.push_back({&pairs[k].subcloud, labels[k]});
                     }
                     const auto thresholds =
                         f->thresholds.empty() ? default_sensitivity_thresholds() : f->thresholds;
                     const auto rows =
                         distance_sensitivity(gt, gt.labels(), views, thresholds, classes, policy);
                     emit(sensitivity_to_csv(rows), f->sweep_output);
                   }});
  }
}

}  // namespace subcloud::cli
