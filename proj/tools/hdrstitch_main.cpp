// hdrstitch: command-line front end for panoramic HDR stitching.
//
//   hdrstitch stitch --input <scene-dir> --output <file> [options]
//   hdrstitch imf    --ref <file> --tgt <file> --out <imf-file>
//   hdrstitch synth  --seed <n> --out <scene-dir>
//   hdrstitch fuse   <z1> <z2> <z3> --output <file> [--depth n]
//   hdrstitch eval   --pred <file> --gt <file> [--metrics psnr,ssim]
//
// Exit codes: 0 success, 2 input validation, 3 numerical failure.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "hdrstitch/enhance.hpp"
#include "hdrstitch/error.hpp"
#include "hdrstitch/image_io.hpp"
#include "hdrstitch/mef.hpp"
#include "hdrstitch/metrics.hpp"
#include "hdrstitch/pipeline.hpp"
#include "hdrstitch/synthetic.hpp"
#include "hdrstitch/wha.hpp"

namespace fs = std::filesystem;
using namespace hdrstitch;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

struct StitchArgs {
  std::string input;
  std::string output;
  std::string refined_dir;
  std::string intermediates;
  std::string dump_detail;
  int mef_depth = -1;
  enhance::SolverConfig solver;
};

int run_stitch(const StitchArgs& args) {
  const ViewSet viewset = load_viewset(args.input);
  StitchConfig cfg;
  cfg.solver = args.solver;
  if (args.mef_depth >= 0) cfg.mef_depth = args.mef_depth;
  if (!args.refined_dir.empty()) cfg.refined_dir = args.refined_dir;
  if (!args.intermediates.empty()) cfg.intermediates_dir = args.intermediates;

  const StitchResult result = stitch(viewset, cfg);
  write_image(args.output, result.final_image);
  if (!args.dump_detail.empty()) write_image(args.dump_detail, enhance::visualize_detail(result.detail));

  std::cerr << "panorama " << result.final_image.width() << "x" << result.final_image.height()
            << ", cg iterations " << result.cg_iterations << ", residual "
            << result.cg_relative_residual << ", fusion overshoot " << result.mef_overshoot << "\n";
  for (const auto& t : result.timings) std::cerr << "  " << t.stage << ": " << t.seconds << " s\n";
  return 0;
}

int run_imf(const std::string& ref, const std::string& tgt, const std::string& out) {
  const LdrImage a = read_image(ref);
  const LdrImage b = read_image(tgt);
  wha::Imf imf;
  for (int c = 0; c < kRgbChannels; ++c) {
    imf.channels[static_cast<std::size_t>(c)] =
        wha::fill_empty_bins(wha::build_imf(wha::histogram(a, c), wha::histogram(b, c)));
  }
  wha::write_imf(out, imf);
  return 0;
}

int run_synth(std::uint64_t seed, const std::string& out, int view_width, int view_height,
              int overlap12, int overlap23, double ev_gap) {
  const PanoLayout layout =
      PanoLayout::with_ev_gap(view_width, view_height, overlap12, overlap23, ev_gap);
  const SyntheticScene scene = synthesize_test_scene(seed, layout);
  const fs::path dir(out);
  save_viewset(dir, scene.viewset);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      write_image(dir / ("zT_" + std::to_string(i + 1) + "_to_" + std::to_string(j + 1) + ".png"),
                  truth_rendition(scene, i, j));
    }
    write_image(dir / ("pano_gt_" + std::to_string(i + 1) + ".png"),
                scene.truth[static_cast<std::size_t>(i)]);
  }
  return 0;
}

int run_fuse(const std::vector<std::string>& inputs, const std::string& output, int depth) {
  std::array<FloatImage, 3> images;
  for (std::size_t i = 0; i < 3; ++i) images[i] = to_float(read_image(inputs[i]));
  if (depth < 0) depth = mef::default_pyramid_depth(images[0].width(), images[0].height());
  write_image(output, quantize(mef::fuse(images, depth)));
  return 0;
}

int run_eval(const std::string& pred, const std::string& gt, const std::string& metric_list) {
  const LdrImage a = read_image(pred);
  const LdrImage b = read_image(gt);
  std::stringstream ss(metric_list);
  std::string name;
  while (std::getline(ss, name, ',')) {
    if (name == "psnr") {
      std::printf("psnr=%.6f\n", metrics::psnr(a, b));
    } else if (name == "ssim") {
      std::printf("ssim=%.6f\n", metrics::ssim(a, b));
    } else {
      throw validation_error("unknown metric '" + name + "'");
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Panoramic HDR stitching of three differently exposed views"};
  app.require_subcommand(1);

  StitchArgs stitch_args;
  auto* stitch_cmd = app.add_subcommand("stitch", "Stitch a scene directory into one panorama");
  stitch_cmd->add_option("--input", stitch_args.input, "Scene directory (z1..z3 + layout.txt)")
      ->required();
  stitch_cmd->add_option("--output", stitch_args.output, "Output image (.png or .ppm)")->required();
  stitch_cmd->add_option("--refined-dir", stitch_args.refined_dir,
                         "Directory with refined z<i>_to_<j> renditions");
  stitch_cmd->add_option("--nu", stitch_args.solver.nu, "Sharpness preference in [0,1]");
  stitch_cmd->add_option("--lambda", stitch_args.solver.lambda, "Detail fidelity weight");
  stitch_cmd->add_option("--alpha", stitch_args.solver.alpha, "Gradient amplification");
  stitch_cmd->add_option("--cg-tol", stitch_args.solver.cg_tolerance, "CG relative tolerance");
  stitch_cmd->add_option("--cg-max-iters", stitch_args.solver.cg_max_iters, "CG iteration cap");
  stitch_cmd->add_option("--mef-depth", stitch_args.mef_depth, "Pyramid depth for fusion");
  stitch_cmd->add_option("--emit-intermediates", stitch_args.intermediates,
                         "Write renditions, panoramas, fused image and detail map here");
  stitch_cmd->add_option("--dump-detail", stitch_args.dump_detail,
                         "Write the rescaled detail layer to this file");

  std::string imf_ref, imf_tgt, imf_out;
  auto* imf_cmd = app.add_subcommand("imf", "Estimate an intensity mapping between two images");
  imf_cmd->add_option("--ref", imf_ref, "Source exposure")->required();
  imf_cmd->add_option("--tgt", imf_tgt, "Target exposure")->required();
  imf_cmd->add_option("--out", imf_out, "Output IMF table")->required();

  std::uint64_t seed = 1;
  std::string synth_out;
  int view_width = 640, view_height = 480, overlap12 = 200, overlap23 = 200;
  double ev_gap = 1.0;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic scene directory");
  synth_cmd->add_option("--seed", seed, "Random seed")->required();
  synth_cmd->add_option("--out", synth_out, "Output scene directory")->required();
  synth_cmd->add_option("--view-width", view_width);
  synth_cmd->add_option("--view-height", view_height);
  synth_cmd->add_option("--overlap12", overlap12);
  synth_cmd->add_option("--overlap23", overlap23);
  synth_cmd->add_option("--ev-gap", ev_gap);

  std::vector<std::string> fuse_inputs;
  std::string fuse_out;
  int fuse_depth = -1;
  auto* fuse_cmd = app.add_subcommand("fuse", "Exposure-fuse three images");
  fuse_cmd->add_option("inputs", fuse_inputs, "Three input images")->required()->expected(3);
  fuse_cmd->add_option("--output", fuse_out, "Fused image")->required();
  fuse_cmd->add_option("--depth", fuse_depth, "Pyramid depth");

  std::string eval_pred, eval_gt, eval_metrics = "psnr,ssim";
  auto* eval_cmd = app.add_subcommand("eval", "Compare an image against ground truth");
  eval_cmd->add_option("--pred", eval_pred)->required();
  eval_cmd->add_option("--gt", eval_gt)->required();
  eval_cmd->add_option("--metrics", eval_metrics, "Comma-separated: psnr,ssim");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  try {
    if (*stitch_cmd) return run_stitch(stitch_args);
    if (*imf_cmd) return run_imf(imf_ref, imf_tgt, imf_out);
    if (*synth_cmd) {
      return run_synth(seed, synth_out, view_width, view_height, overlap12, overlap23, ev_gap);
    }
    if (*fuse_cmd) return run_fuse(fuse_inputs, fuse_out, fuse_depth);
    if (*eval_cmd) return run_eval(eval_pred, eval_gt, eval_metrics);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.kind() == ErrorKind::kNumerical ? kExitNumerical : kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return 0;
}
