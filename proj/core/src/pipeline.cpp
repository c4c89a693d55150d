#include "hdrstitch/pipeline.hpp"

#include <chrono>
#include <type_traits>

#include "hdrstitch/error.hpp"
#include "hdrstitch/image_io.hpp"
#include "hdrstitch/mef.hpp"
#include "hdrstitch/pyramid.hpp"

namespace hdrstitch {

namespace fs = std::filesystem;

namespace {

template <typename F>
auto run_stage(const char* name, std::vector<StageTiming>& timings, F&& body) {
  const auto start = std::chrono::steady_clock::now();
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      timings.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
    } else {
      auto value = body();
      timings.push_back({name, std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()});
      return value;
    }
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kValidation, std::string(name) + ": " + e.what());
  }
}

std::string pair_stem(int from, int to) {
  return std::to_string(from + 1) + "_to_" + std::to_string(to + 1);
}

void write_intermediates(const fs::path& dir, const StitchResult& result,
                         const ExposureRenditionSet& renditions) {
  fs::create_directories(dir);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      write_image(dir / ("z" + pair_stem(i, j) + ".png"), quantize(renditions.rendition(i, j)));
      wha::write_imf(dir / ("imf_" + pair_stem(i, j) + ".txt"),
                     result.imfs[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    }
  }
  for (int l = 0; l < 3; ++l) {
    write_image(dir / ("pano" + std::to_string(l + 1) + ".png"),
                quantize(result.panos[static_cast<std::size_t>(l)].image));
  }
  write_image(dir / "fused.png", quantize(result.fused.image));
  write_image(dir / "detail.png", enhance::visualize_detail(result.detail));
}

}  // namespace

std::array<std::array<wha::Imf, 3>, 3> estimate_all_imfs(const ViewSet& viewset) {
  viewset.validate();
  const PanoLayout& layout = viewset.layout;
  std::array<std::array<wha::Imf, 3>, 3> imfs;
  for (std::size_t i = 0; i < 3; ++i) imfs[i][i] = wha::Imf::identity();

  auto [m12, m21] = wha::estimate_imf_pair(extract_overlap(viewset.views[0], 0, Side::kRight, layout),
                                           extract_overlap(viewset.views[1], 1, Side::kLeft, layout));
  auto [m23, m32] = wha::estimate_imf_pair(extract_overlap(viewset.views[1], 1, Side::kRight, layout),
                                           extract_overlap(viewset.views[2], 2, Side::kLeft, layout));
  imfs[0][2] = wha::compose_imf(m12, m23);
  imfs[2][0] = wha::compose_imf(m32, m21);
  imfs[0][1] = std::move(m12);
  imfs[1][0] = std::move(m21);
  imfs[1][2] = std::move(m23);
  imfs[2][1] = std::move(m32);
  return imfs;
}

ExposureRenditionSet physics_renditions(const ViewSet& viewset,
                                        const std::array<std::array<wha::Imf, 3>, 3>& imfs) {
  std::array<std::array<FloatImage, 3>, 3> mapped;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      if (i != j) mapped[i][j] = wha::apply_imf(imfs[i][j], viewset.views[i]);
    }
  }
  return ExposureRenditionSet(viewset, std::move(mapped));
}

std::pair<FloatImage, enhance::DetailMap> fuse_and_enhance(const std::array<PanoImage, 3>& panos,
                                                            const StitchConfig& cfg,
                                                            mef::FuseStats* stats) {
  const PanoLayout& layout = panos[0].layout;
  const int depth =
      cfg.mef_depth.value_or(mef::default_pyramid_depth(layout.pano_width(), layout.pano_height()));
  const FloatImage fused = mef::fuse(panos, depth, stats).image;
  const enhance::GuidanceField field = enhance::guidance_field(
      {enhance::log_domain(panos[0].image), enhance::log_domain(panos[1].image),
       enhance::log_domain(panos[2].image)},
      layout);
  enhance::DetailMap detail = enhance::solve_detail(field, cfg.solver);
  return {enhance::recombine(fused, detail.zd, cfg.solver.nu), std::move(detail)};
}

StitchResult stitch(const ViewSet& viewset, const StitchConfig& cfg) {
  StitchResult result;
  auto& timings = result.timings;
  run_stage("config", timings, [&] {
    cfg.solver.validate();
    viewset.validate();
  });
  const PanoLayout& layout = viewset.layout;

  result.imfs = run_stage("imf", timings, [&] { return estimate_all_imfs(viewset); });
  ExposureRenditionSet renditions =
      run_stage("renditions", timings, [&] { return physics_renditions(viewset, result.imfs); });
  if (cfg.refined_dir) {
    renditions = run_stage("refined", timings,
                           [&] { return load_refined(*cfg.refined_dir, std::move(renditions)); });
  }
  for (int l = 0; l < 3; ++l) {
    result.panos[static_cast<std::size_t>(l)] =
        run_stage("pano", timings, [&] { return synthesize_pano(l, renditions); });
  }

  const int depth =
      cfg.mef_depth.value_or(mef::default_pyramid_depth(layout.pano_width(), layout.pano_height()));
  mef::FuseStats stats;
  result.fused = run_stage("mef", timings, [&] { return mef::fuse(result.panos, depth, &stats); });
  result.mef_overshoot = stats.max_overshoot;

  enhance::DetailMap detail = run_stage("detail", timings, [&] {
    const enhance::GuidanceField field = enhance::guidance_field(
        {enhance::log_domain(result.panos[0].image), enhance::log_domain(result.panos[1].image),
         enhance::log_domain(result.panos[2].image)},
        layout);
    return enhance::solve_detail(field, cfg.solver);
  });
  result.cg_iterations = detail.iterations;
  result.cg_relative_residual = detail.relative_residual;

  result.final_image = run_stage("recombine", timings, [&] {
    return quantize(enhance::recombine(result.fused.image, detail.zd, cfg.solver.nu));
  });
  result.detail = std::move(detail.zd);

  if (cfg.intermediates_dir) {
    run_stage("intermediates", timings,
              [&] { write_intermediates(*cfg.intermediates_dir, result, renditions); });
  }
  return result;
}

}  // namespace hdrstitch
