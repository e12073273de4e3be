// Copyright 2026 The floorline Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// floorline: command-line front end for augmentation, dataset statistics,
// geometry post-processing, evaluation, and the attention gradient check.
//
// Exit codes: 0 success, 1 invalid input or usage, 2 internal failure.

#include <cstdint>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "floorline/floorline.hpp"

namespace fs = std::filesystem;
using namespace floorline;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInvalid = 1;
constexpr int kExitInternal = 2;

struct RunConfig {
  std::uint64_t seed = 0;
  int min_area = 50;
  int band_px = 3;
  double parallel_slope_eps = 1e-4;
  double convergence_tol = 1e-8;
  int max_iters = 5000;

  PostprocessConfig postprocess(unsigned threads) const {
    return {min_area, parallel_slope_eps, convergence_tol, max_iters, threads};
  }
};

/// Usage error raised after parsing (bad combination of flags, etc.).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<fs::path> list_files(const fs::path& dir, const std::string& suffix) {
  if (!fs::is_directory(dir)) throw UsageError(dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& e : fs::directory_iterator(dir)) {
    const std::string name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
      out.push_back(e.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::string strip_suffix(const std::string& name, const std::string& suffix) {
  if (name.size() >= suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0) {
    return name.substr(0, name.size() - suffix.size());
  }
  return name;
}

std::string image_name_for(const fs::path& mask) {
  const std::string name = mask.filename().string();
  for (const char* suffix : {".floor.pgm", ".pgm"}) {
    if (name.size() > std::string(suffix).size()) {
      const std::string s = strip_suffix(name, suffix);
      if (s != name) return s;
    }
  }
  return name;
}

void add_tuning_flags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--min-area", cfg.min_area, "Smallest facade component kept, in pixels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--parallel-eps", cfg.parallel_slope_eps,
                  "Slope spread below which a facade's lines count as parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--tol", cfg.convergence_tol,
                  "Relative loss change that stops vanishing-point refinement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--max-iters", cfg.max_iters, "Iteration cap for vanishing-point refinement")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
}

// --- augment ---------------------------------------------------------------

struct AugmentArgs {
  fs::path facades;
  fs::path annotations;
  fs::path out;
  fs::path mapping;
  bool cmp_mapping = false;
  int samples = 0;
};

LabelMapping read_mapping(const fs::path& path) {
  const Json j = parse_json(read_file(path));
  if (!j.is_object()) throw SchemaError("", "mapping must be an object of code -> code");
  LabelMapping m;
  for (const auto& [key, value] : j.items()) {
    int from = -1;
    try {
      from = std::stoi(key);
    } catch (const std::exception&) {
    }
    if (from < 0 || from > 255) throw SchemaError("/" + key, "key must be a code in 0..255");
    if (!value.is_number_integer() || value.get<int>() < 0 || value.get<int>() > 255) {
      throw SchemaError("/" + key, "value must be a code in 0..255");
    }
    m[static_cast<std::uint8_t>(from)] = static_cast<std::uint8_t>(value.get<int>());
  }
  return m;
}

int run_augment(const AugmentArgs& args, const RunConfig& cfg) {
  const auto records = read_annotations(args.annotations);
  if (records.empty()) throw UsageError("annotation file has no records");

  std::optional<LabelMapping> mapping;
  if (!args.mapping.empty()) mapping = read_mapping(args.mapping);
  if (args.cmp_mapping) mapping = cmp_default_mapping();

  std::vector<std::string> names;
  std::vector<RectifiedFacade> facades;
  for (const auto& sem_path : list_files(args.facades, ".semantic.pgm")) {
    const std::string stem = strip_suffix(sem_path.filename().string(), ".semantic.pgm");
    const fs::path floor_path = args.facades / (stem + ".floor.pgm");
    RectifiedFacade f{read_label_mask(sem_path), read_label_mask(floor_path)};
    if (mapping) f.semantic = simplify_semantics(f.semantic, *mapping);
    try {
      validate(f);
    } catch (const Error& e) {
      throw Error(e.kind(), stem + ": " + e.what());
    }
    names.push_back(stem);
    facades.push_back(std::move(f));
  }
  if (facades.empty()) {
    throw UsageError("no <name>.semantic.pgm / <name>.floor.pgm pairs in " + args.facades.string());
  }

  fs::create_directories(args.out);
  const int count = args.samples > 0 ? args.samples : static_cast<int>(records.size());
  Json samples = Json::array();
  for (int i = 0; i < count; ++i) {
    const auto& rec = records[static_cast<std::size_t>(i) % records.size()];
    const std::uint64_t sample_seed = cfg.seed + static_cast<std::uint64_t>(i);
    const auto picks = pair_facades(rec.facades.size(), facades.size(), sample_seed);
    std::vector<FacadePlacement> placements;
    for (std::size_t q = 0; q < rec.facades.size(); ++q) {
      placements.push_back({&facades[picks[q]], rec.facades[q]});
    }
    const AugmentedSample sample = generate_sample(placements, rec.width, rec.height, sample_seed);

    char stem[32];
    std::snprintf(stem, sizeof stem, "%04d", i);
    const std::string sem_name = std::string(stem) + ".semantic.pgm";
    const std::string floor_name = std::string(stem) + ".floor.pgm";
    write_label_mask(sample.semantic, args.out / sem_name);
    write_label_mask(sample.floor, args.out / floor_name);

    Json placed = Json::array();
    for (std::size_t q = 0; q < sample.provenance.size(); ++q) {
      const auto& p = sample.provenance[q];
      Json entry = to_json(p.quad);
      entry["source"] = names[picks[q]];
      entry["homography"] = to_json(p.homography);
      placed.push_back(entry);
    }
    samples.push_back(Json{{"index", i},
                           {"image", rec.image_id},
                           {"seed", sample_seed},
                           {"width", rec.width},
                           {"height", rec.height},
                           {"semantic", sem_name},
                           {"floor", floor_name},
                           {"facades", placed}});
  }
  write_json(Json{{"seed", cfg.seed}, {"samples", samples}}, args.out / "manifest.json");
  std::cout << "wrote " << count << " samples to " << args.out.string() << "\n";
  return kExitOk;
}

// --- stats -----------------------------------------------------------------

struct StatsArgs {
  fs::path annotations;
  fs::path masks;
  fs::path out;
  int bounds = kDefaultBounds;
};

std::vector<LabelMask> read_floor_masks(const fs::path& dir) {
  auto paths = list_files(dir, ".floor.pgm");
  if (paths.empty()) paths = list_files(dir, ".pgm");
  std::vector<LabelMask> masks;
  for (const auto& p : paths) {
    masks.push_back(read_label_mask(p));
    validate_palette(masks.back(), MaskRole::kFloor);
  }
  return masks;
}

int run_stats(const StatsArgs& args) {
  if (args.annotations.empty() && args.masks.empty()) {
    throw UsageError("stats needs --annotations and/or --masks");
  }
  Json report = Json::object();
  if (!args.annotations.empty()) {
    const auto records = read_annotations(args.annotations);
    Json h = Json::object();
    for (const auto& [o, n] : orientation_histogram(records)) h[std::string(to_string(o))] = n;
    report["orientation_histogram"] = h;
  }
  if (!args.masks.empty()) {
    const auto masks = read_floor_masks(args.masks);
    if (masks.empty()) throw Error(ErrorKind::kEmptyDataset, "no masks in " + args.masks.string());
    report["images"] = masks.size();
    Json highest = Json::object();
    for (const auto& [order, n] : highest_floor_histogram(masks)) highest[std::to_string(order)] = n;
    report["highest_floor_histogram"] = highest;
    Json per_order = Json::object();
    for (const auto& [order, v] : pixels_per_order(masks)) per_order[std::to_string(order)] = v;
    report["pixels_per_order"] = per_order;
    report["vertical_bounds"] = to_json(dataset_bound_distribution(masks, args.bounds));
    report["entropy"] = to_json(bound_probability_table(masks));
  }
  write_json(report, args.out);
  return kExitOk;
}

// --- postprocess -----------------------------------------------------------

struct PostprocessArgs {
  fs::path facade_mask;
  fs::path floor_mask;
  fs::path out;
  fs::path svg;
  std::string image;
};

int run_postprocess(const PostprocessArgs& args, const RunConfig& cfg, unsigned threads) {
  const LabelMask facade = read_label_mask(args.facade_mask);
  const LabelMask floor = read_label_mask(args.floor_mask);
  validate_palette(facade, MaskRole::kFacade);
  validate_palette(floor, MaskRole::kFloor);
  const auto result = run_pipeline(facade, floor, cfg.postprocess(threads));
  for (const auto& f : result.facades) {
    for (const auto& e : f.errors) std::cerr << "facade " << f.id << ": " << e << "\n";
  }
  const LineResults lines =
      to_line_results(result, args.image.empty() ? image_name_for(args.floor_mask) : args.image);
  write_lines(lines, args.out);
  if (!args.svg.empty()) write_file(args.svg, render_svg(lines, facade.width(), facade.height()));
  return kExitOk;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateArgs {
  fs::path pred;
  fs::path gt;
  fs::path out;
};

int run_evaluate(const EvaluateArgs& args, unsigned threads) {
  const auto gt_files = list_files(args.gt, ".lines.json");
  if (gt_files.empty()) throw UsageError("no <name>.lines.json files in " + args.gt.string());
  std::vector<EvalPair> pairs;
  for (const auto& gt_lines_path : gt_files) {
    const std::string stem = strip_suffix(gt_lines_path.filename().string(), ".lines.json");
    EvalPair pair;
    pair.gt_mask = read_label_mask(args.gt / (stem + ".floor.pgm"));
    pair.pred_mask = read_label_mask(args.pred / (stem + ".floor.pgm"));
    validate_palette(pair.gt_mask, MaskRole::kFloor);
    validate_palette(pair.pred_mask, MaskRole::kFloor);
    pair.gt_lines = gt_lines_from(read_lines(gt_lines_path));
    pair.pred_lines = lines_from(read_lines(args.pred / (stem + ".lines.json")));
    pairs.push_back(std::move(pair));
  }
  const EvalReport report = evaluate_dataset(pairs, threads);
  write_json(to_json(report), args.out);
  std::cout << "pixel F1 " << report.pixel_f1(FloorBand::kOverall) << ", line F1 "
            << report.line_f1(FloorBand::kOverall) << " over " << report.images << " images\n";
  return kExitOk;
}

// --- attn-check ------------------------------------------------------------

int run_attn_check(std::uint64_t seed, int instances) {
  double worst = 0.0;
  bool gate_exact = true;
  for (int i = 0; i < instances; ++i) {
    const auto r = attention_gradient_check(seed + static_cast<std::uint64_t>(i));
    worst = std::max(worst, r.max_rel_error());
    gate_exact = gate_exact && r.zero_params_gate_exact;
  }
  std::printf("instances: %d\n", instances);
  std::printf("max relative gradient error: %.3e\n", worst);
  std::printf("zero-parameter gate == 0.5: %s\n", gate_exact ? "yes" : "no");
  const bool ok = gate_exact && worst < kGradientTolerance;
  std::printf("%s\n", ok ? "PASS" : "FAIL");
  return ok ? kExitOk : kExitInternal;
}

// --- overlay / rasterize ---------------------------------------------------

struct OverlayArgs {
  fs::path lines;
  fs::path out;
  fs::path mask;
  int width = 0;
  int height = 0;
  std::string background;
};

int run_overlay(const OverlayArgs& args) {
  int w = args.width, h = args.height;
  if (!args.mask.empty()) {
    const LabelMask m = read_label_mask(args.mask);
    w = m.width();
    h = m.height();
  }
  if (w <= 0 || h <= 0) throw UsageError("overlay needs --mask or both --width and --height");
  SvgOptions opts;
  opts.background_href = args.background;
  write_file(args.out, render_svg(read_lines(args.lines), w, h, opts));
  return kExitOk;
}

struct RasterizeArgs {
  fs::path lines;
  fs::path out;
  int width = 0;
  int height = 0;
  bool ascii = false;
};

int run_rasterize(const RasterizeArgs& args, const RunConfig& cfg) {
  const auto lines = lines_from(read_lines(args.lines));
  const LabelMask mask = rasterize_floor_lines(lines, cfg.band_px, args.width, args.height);
  write_label_mask(mask, args.out, args.ascii ? PgmFormat::kAscii : PgmFormat::kBinary);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Floor-level line recognition toolkit: augmentation, statistics, "
               "post-processing, and evaluation."};
  app.require_subcommand(1);
  RunConfig cfg;
  const unsigned threads = threads_from_env();

  AugmentArgs augment;
  auto* cmd_augment = app.add_subcommand(
      "augment", "Warp rectified facade masks onto annotated quads and write PGM pairs");
  cmd_augment->add_option("--facades", augment.facades,
                          "Directory of <name>.semantic.pgm / <name>.floor.pgm pairs")
      ->required();
  cmd_augment->add_option("--annotations", augment.annotations, "Quad annotations JSON")
      ->required();
  cmd_augment->add_option("--out", augment.out, "Output directory")->required();
  cmd_augment->add_option("--seed", cfg.seed, "Seed for facade/quad pairing")->capture_default_str();
  cmd_augment->add_option("--samples", augment.samples,
                          "Number of samples (default: one per annotation record)");
  cmd_augment->add_option("--mapping", augment.mapping,
                          "JSON object mapping raw semantic codes to other/window/door/shop");
  cmd_augment->add_flag("--cmp-mapping", augment.cmp_mapping,
                        "Simplify raw CMP-style semantic codes with the built-in table");

  StatsArgs stats;
  auto* cmd_stats = app.add_subcommand("stats", "Dataset histograms and the class-entropy table");
  cmd_stats->add_option("--annotations", stats.annotations, "Quad annotations JSON");
  cmd_stats->add_option("--masks", stats.masks, "Directory of floor-order masks");
  cmd_stats->add_option("--bounds", stats.bounds, "Vertical bounds for the distribution")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_stats->add_option("--out", stats.out, "Report JSON")->required();

  PostprocessArgs post;
  auto* cmd_post = app.add_subcommand(
      "postprocess", "Recover per-facade floor-level line 5-tuples from two segmentations");
  cmd_post->add_option("--facade-mask", post.facade_mask, "Facade semantic mask (PGM)")->required();
  cmd_post->add_option("--floor-mask", post.floor_mask, "Floor-order mask (PGM)")->required();
  cmd_post->add_option("--out", post.out, "Lines JSON")->required();
  cmd_post->add_option("--svg", post.svg, "Optional SVG overlay");
  cmd_post->add_option("--image", post.image, "Image name recorded in the output");
  add_tuning_flags(cmd_post, cfg);

  EvaluateArgs eval;
  auto* cmd_eval = app.add_subcommand("evaluate", "Pixel-wise and line-wise F1 over a dataset");
  cmd_eval->add_option("--pred", eval.pred,
                       "Directory of predicted <name>.floor.pgm and <name>.lines.json")
      ->required();
  cmd_eval->add_option("--gt", eval.gt,
                       "Directory of ground-truth <name>.floor.pgm and <name>.lines.json")
      ->required();
  cmd_eval->add_option("--out", eval.out, "Metrics JSON")->required();

  std::uint64_t check_seed = 0;
  int instances = 20;
  auto* cmd_check = app.add_subcommand(
      "attn-check", "Finite-difference check of the attention layer and loss gradients");
  cmd_check->add_option("--seed", check_seed, "First instance seed")->capture_default_str();
  cmd_check->add_option("--instances", instances, "Number of random instances")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  OverlayArgs overlay;
  auto* cmd_overlay = app.add_subcommand("overlay", "Render a lines JSON as an SVG overlay");
  cmd_overlay->add_option("--lines", overlay.lines, "Lines JSON")->required();
  cmd_overlay->add_option("--out", overlay.out, "SVG output")->required();
  cmd_overlay->add_option("--mask", overlay.mask, "Mask whose size sets the canvas");
  cmd_overlay->add_option("--width", overlay.width, "Canvas width");
  cmd_overlay->add_option("--height", overlay.height, "Canvas height");
  cmd_overlay->add_option("--background", overlay.background, "Image drawn underneath (href)");

  RasterizeArgs raster;
  auto* cmd_raster = app.add_subcommand(
      "rasterize", "Paint the lines of a lines JSON into a floor-order mask");
  cmd_raster->add_option("--lines", raster.lines, "Lines JSON")->required();
  cmd_raster->add_option("--out", raster.out, "Mask output (PGM)")->required();
  cmd_raster->add_option("--width", raster.width, "Mask width")->required()->check(CLI::PositiveNumber);
  cmd_raster->add_option("--height", raster.height, "Mask height")->required()->check(CLI::PositiveNumber);
  cmd_raster->add_option("--band-px", cfg.band_px, "Vertical band thickness")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd_raster->add_flag("--ascii", raster.ascii, "Write P2 instead of P5");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kExitInvalid;
  }

  try {
    if (*cmd_augment) return run_augment(augment, cfg);
    if (*cmd_stats) return run_stats(stats);
    if (*cmd_post) return run_postprocess(post, cfg, threads);
    if (*cmd_eval) return run_evaluate(eval, threads);
    if (*cmd_check) return run_attn_check(check_seed, instances);
    if (*cmd_overlay) return run_overlay(overlay);
    if (*cmd_raster) return run_rasterize(raster, cfg);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInternal;
}
