// Copyright 2026 The osod-eval Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "osod/baseline/baseline.hpp"
#include "osod/baseline/sweep.hpp"
#include "osod/dataset/io.hpp"
#include "osod/dataset/split_apply.hpp"
#include "osod/dataset/validate.hpp"
#include "osod/error.hpp"
#include "osod/eval/ground_truth_index.hpp"
#include "osod/eval/report.hpp"
#include "osod/json_util.hpp"
#include "osod/report/aggregate.hpp"
#include "osod/report/run_eval.hpp"
#include "osod/splits/split_spec.hpp"

namespace fs = std::filesystem;

namespace {

struct GlobalFlags {
  std::string config;
  std::string out;
  std::string format = "markdown";
  int threads = 1;
  std::uint64_t seed = 0;
};

struct DatasetFlags {
  std::string path;
  std::string format = "native";
  std::string split;
};

osod::GroundTruthFormat ParseDatasetFormat(const std::string& text) {
  if (text == "native") return osod::GroundTruthFormat::kNative;
  if (text == "coco") return osod::GroundTruthFormat::kCocoLike;
  throw osod::ConfigError(
      fmt::format("unknown dataset format '{}' (expected native or coco)", text));
}

osod::ParsedDataset LoadDataset(const DatasetFlags& flags) {
  osod::ParsedDataset parsed = osod::ParseGroundTruth(
      osod::ReadFile(flags.path), ParseDatasetFormat(flags.format));
  for (const auto& w : parsed.warnings) {
    std::cerr << "warning: " << w.message << "\n";
  }
  if (!flags.split.empty()) {
    const osod::SplitSpec spec = osod::ParseSplitSpec(
        osod::ReadFile(flags.split), parsed.view.taxonomy);
    parsed.view =
        osod::ApplySplit(parsed.view, spec, spec.provenance.protocol);
  }
  return parsed;
}

std::vector<osod::ClassId> KnownClasses(const osod::DatasetView& view) {
  if (view.split) return view.split->known_classes;
  std::vector<osod::ClassId> all(view.taxonomy.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<osod::ClassId>(i);
  return all;
}

osod::EvalConfig LoadEvalConfig(const std::string& path) {
  if (path.empty()) return osod::EvalConfig{};
  return osod::ApplyEvalConfigOverrides(
      osod::json_util::Parse(osod::ReadFile(path)));
}

int RunEvalCommand(const GlobalFlags& g) {
  if (g.config.empty()) {
    throw osod::ConfigError("eval needs a manifest: --config PATH");
  }
  osod::RunOptions options;
  options.threads = g.threads;
  options.format = osod::ParseTableFormat(g.format);
  if (!g.out.empty()) options.output_dir = fs::path(g.out);
  const osod::RunResult result =
      osod::RunEval(osod::LoadManifest(g.config), options);
  if (result.errors.empty()) {
    std::cout << result.table;
    return 0;
  }
  bool input_error = false;
  for (const auto& e : result.errors) {
    std::cerr << fmt::format("error: {} / {}: {}\n", e.method, e.split,
                             e.message);
    input_error = input_error || e.kind == osod::ErrorKind::kParse ||
                  e.kind == osod::ErrorKind::kSchema ||
                  e.kind == osod::ErrorKind::kConfiguration ||
                  e.kind == osod::ErrorKind::kIo;
  }
  return input_error ? 1 : 2;
}

struct GenSplitsFlags {
  std::string method = "random";
  int k = 4;
  std::string protocol = "keep";
  std::string known_mode = "single";
};

int RunGenSplits(const GlobalFlags& g, const DatasetFlags& d,
                 const GenSplitsFlags& f) {
  const osod::ParsedDataset parsed = LoadDataset(d);
  const osod::SplitProtocol protocol = osod::ParseProtocol(f.protocol);
  std::vector<osod::SplitSpec> specs;
  if (f.method == "random") {
    osod::KnownSelection selection;
    if (f.known_mode == "single") {
      selection = osod::KnownSelection::kSingleChunk;
    } else if (f.known_mode == "all-but-one") {
      selection = osod::KnownSelection::kAllButOneChunk;
    } else {
      throw osod::ConfigError(fmt::format(
          "unknown --known-mode '{}' (expected single or all-but-one)",
          f.known_mode));
    }
    specs = osod::GenerateRandomSplits(parsed.view, f.k, g.seed, protocol,
                                       selection);
  } else if (f.method == "ncut") {
    specs = osod::GenerateNcutSplits(parsed.view, f.k, g.seed, protocol);
  } else {
    throw osod::ConfigError(fmt::format(
        "unknown --method '{}' (expected random or ncut)", f.method));
  }
  const fs::path out = g.out.empty() ? fs::path("splits") : fs::path(g.out);
  fs::create_directories(out);
  for (const auto& spec : specs) {
    const fs::path path = out / (spec.name + ".json");
    osod::WriteFileAtomic(path,
                          osod::SerializeSplitSpec(spec, parsed.view.taxonomy));
    std::cout << fmt::format("{}: {} known, {} unknown, {}/{}/{} images -> {}\n",
                             spec.name, spec.known_classes.size(), spec.unknown_classes.size(),
                             spec.train_images.size(), spec.val_images.size(),
                             spec.test_images.size(), path.string());
  }
  return 0;
}

struct BaselineFlags {
  std::string raw;
  double gamma = 4.0;
  double temperature = 1.0;
  int top_m = 3;
  std::optional<double> cross_nms;
};

int RunBaselineCommand(const GlobalFlags& g, const DatasetFlags& d,
                       const BaselineFlags& f) {
  const osod::ParsedDataset parsed = LoadDataset(d);
  const auto known = KnownClasses(parsed.view);
  const osod::DetectionSchema schema{&parsed.view.taxonomy, known};
  const auto raw = osod::ParseRawPredictions(osod::ReadFile(f.raw), schema);
  osod::BaselineConfig cfg{f.gamma, f.temperature, f.top_m};
  std::vector<osod::Diagnostic> warnings;
  auto dets = osod::RelabelAll(raw, cfg, known, &warnings, g.threads);
  for (const auto& w : warnings) std::cerr << "warning: " << w.message << "\n";
  if (f.cross_nms) dets = osod::CrossLabelNms(dets, *f.cross_nms);
  const std::string text =
      osod::SerializeDetections(dets, parsed.view.taxonomy);
  if (g.out.empty()) {
    std::cout << text;
  } else {
    osod::WriteFileAtomic(g.out, text);
  }
  return 0;
}

struct SweepFlags {
  std::string raw;
  std::vector<double> gammas{1.5, 2.0, 3.0, 4.0, 5.0, 10.0, 15.0, 50.0};
  std::vector<double> temperatures{1.0};
  int top_m = 3;
  std::optional<double> cross_nms;
};

std::string Optional(const std::optional<double>& v) {
  return v ? fmt::format("{}", *v) : std::string();
}

int RunSweepCommand(const GlobalFlags& g, const DatasetFlags& d,
                    const SweepFlags& f) {
  const osod::ParsedDataset parsed = LoadDataset(d);
  const auto known = KnownClasses(parsed.view);
  const osod::DetectionSchema schema{&parsed.view.taxonomy, known};
  const auto raw = osod::ParseRawPredictions(osod::ReadFile(f.raw), schema);
  const osod::EvalGroundTruth gt(parsed.view);
  osod::BaselineSweepOptions options;
  options.top_m = f.top_m;
  options.cross_nms_iou = f.cross_nms;
  options.threads = g.threads;
  const auto cells = osod::SweepBaseline(raw, f.gammas, f.temperatures, gt,
                                         LoadEvalConfig(g.config), options);
  std::string table = "gamma,temperature,unknown_count,map_known,ap_unk,aose,wi\n";
  for (const auto& c : cells) {
    table += fmt::format("{},{},{},{},{},{},{}\n", c.gamma, c.temperature,
                         c.unknown_count, c.report.map_known,
                         Optional(c.report.ap_unk), c.report.aose,
                         Optional(c.report.wi));
  }
  if (!g.out.empty()) {
    const fs::path out(g.out);
    fs::create_directories(out / "reports");
    for (const auto& c : cells) {
      osod::WriteFileAtomic(
          out / "reports" /
              fmt::format("gamma{}_T{}.json", c.gamma, c.temperature),
          osod::SerializeMetricsReport(c.report, parsed.view.taxonomy));
    }
    osod::WriteFileAtomic(out / "baseline_sweep.csv", table);
  }
  std::cout << table;
  return 0;
}

struct ValidateFlags {
  std::string detections;
  std::string raw;
};

int RunValidateCommand(const DatasetFlags& d, const ValidateFlags& f) {
  const osod::ParsedDataset parsed = LoadDataset(d);
  const auto diagnostics = osod::Validate(parsed.view);
  for (const auto& diag : diagnostics) {
    std::cerr << (diag.severity == osod::Severity::kError ? "error" : "warning") << ": " << diag.message << "\n";
  }
  const auto known = KnownClasses(parsed.view);
  const osod::DetectionSchema schema{&parsed.view.taxonomy, known};
  std::size_t records = 0;
  if (!f.detections.empty()) {
    records += osod::ParseLabeledDetections(osod::ReadFile(f.detections), schema)
                   .size();
  }
  if (!f.raw.empty()) {
    records += osod::ParseRawPredictions(osod::ReadFile(f.raw), schema).size();
  }
  std::cout << fmt::format(
      "{} images, {} annotations, {} classes, {} detection records, {} "
      "diagnostics\n",
      parsed.view.images.size(), parsed.view.instances.size(),
      parsed.view.taxonomy.size(), records, diagnostics.size());
  return osod::HasErrors(diagnostics) ? 1 : 0;
}

void AddDatasetFlags(CLI::App* cmd, DatasetFlags& d, bool split) {
  cmd->add_option("--dataset", d.path, "Ground-truth file")->required();
  cmd->add_option("--dataset-format", d.format, "native or coco");
  if (split) cmd->add_option("--split", d.split, "Split specification file");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Open-set object detection evaluation toolkit"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalFlags g;
  app.add_option("--config", g.config,
                 "Run manifest (eval) or evaluation config overrides (sweep)");
  app.add_option("--out", g.out, "Output directory or file");
  app.add_option("--format", g.format, "Table format: markdown, csv or json");
  app.add_option("--threads", g.threads, "Worker threads")
      ->check(CLI::PositiveNumber);
  app.add_option("--seed", g.seed, "Random seed");

  DatasetFlags dataset;

  CLI::App* eval = app.add_subcommand("eval", "Evaluate every method on every split");

  GenSplitsFlags gen;
  CLI::App* gen_cmd = app.add_subcommand("gen-splits", "Generate known/unknown splits");
  AddDatasetFlags(gen_cmd, dataset, false);
  gen_cmd->add_option("--method", gen.method, "random or ncut");
  gen_cmd->add_option("--k", gen.k, "Number of chunks or clusters");
  gen_cmd->add_option("--protocol", gen.protocol, "keep or drop");
  gen_cmd->add_option("--known-mode", gen.known_mode,
                      "random splits: single or all-but-one chunk known");

  BaselineFlags base;
  CLI::App* base_cmd =
      app.add_subcommand("baseline", "Relabel raw predictions with the ratio rule");
  AddDatasetFlags(base_cmd, dataset, true);
  base_cmd->add_option("--raw", base.raw, "Raw prediction file")->required();
  base_cmd->add_option("--gamma", base.gamma, "Top-1/top-2 ratio threshold")
      ->required();
  base_cmd->add_option("--temperature", base.temperature, "Softmax temperature");
  base_cmd->add_option("--top-m", base.top_m, "Scores summed for unknowns");
  base_cmd->add_option("--cross-nms", base.cross_nms, "Cross-label NMS IoU");

  SweepFlags sweep;
  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "Evaluate the baseline over gamma/T grids");
  AddDatasetFlags(sweep_cmd, dataset, true);
  sweep_cmd->add_option("--raw", sweep.raw, "Raw prediction file")->required();
  sweep_cmd->add_option("--gamma", sweep.gammas, "Comma-separated gamma grid")
      ->delimiter(',');
  sweep_cmd
      ->add_option("--temperature", sweep.temperatures,
                   "Comma-separated temperature grid")
      ->delimiter(',');
  sweep_cmd->add_option("--top-m", sweep.top_m, "Scores summed for unknowns");
  sweep_cmd->add_option("--cross-nms", sweep.cross_nms, "Cross-label NMS IoU");

  ValidateFlags val;
  CLI::App* val_cmd = app.add_subcommand("validate", "Check input files");
  AddDatasetFlags(val_cmd, dataset, true);
  val_cmd->add_option("--detections", val.detections, "Labeled detection file");
  val_cmd->add_option("--raw", val.raw, "Raw prediction file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (*eval) return RunEvalCommand(g);
    if (*gen_cmd) return RunGenSplits(g, dataset, gen);
    if (*base_cmd) return RunBaselineCommand(g, dataset, base);
    if (*sweep_cmd) return RunSweepCommand(g, dataset, sweep);
    if (*val_cmd) return RunValidateCommand(dataset, val);
  } catch (const osod::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.is_input_error() ? 1 : 2;
  } catch (const std::filesystem::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
