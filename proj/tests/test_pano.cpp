#include <algorithm>

#include <gtest/gtest.h>

#include "hdrstitch/error.hpp"
#include "hdrstitch/image_io.hpp"
#include "hdrstitch/pano.hpp"
#include "hdrstitch/pipeline.hpp"
#include "hdrstitch/synthetic.hpp"
#include "test_support.hpp"

namespace hdrstitch {
namespace {

using testing::random_float;
using testing::random_ldr;
using testing::TempDir;
using Mapped = std::array<std::array<FloatImage, 3>, 3>;

ViewSet random_viewset(const PanoLayout& layout, std::uint64_t seed) {
  const int w = layout.view_width();
  const int h = layout.view_height();
  return {{random_ldr(w, h, seed), random_ldr(w, h, seed + 1), random_ldr(w, h, seed + 2)}, layout};
}

Mapped random_mapped(const PanoLayout& layout, std::uint64_t seed) {
  Mapped m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          random_float(layout.view_width(), layout.view_height(), 3, seed + static_cast<std::uint64_t>(3 * i + j));
    }
  }
  return m;
}

Mapped truth_mapped(const SyntheticScene& s) {
  Mapped m;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_float(truth_rendition(s, i, j));
    }
  }
  return m;
}

TEST(OverlapWeight, Ramp) {
  const PanoLayout layout(640, 480, 200, 200);
  EXPECT_EQ(overlap_weight(0, 440, layout), 1.0);
  EXPECT_EQ(overlap_weight(0, 540, layout), 0.5);
  EXPECT_EQ(overlap_weight(0, 639, layout), 1.0 / 200.0);
  EXPECT_EQ(overlap_weight(1, 880, layout), 1.0);
  EXPECT_EQ(overlap_weight(1, 980, layout), 0.5);
  EXPECT_THROW(overlap_weight(0, 439, layout), Error);
  EXPECT_THROW(overlap_weight(0, 640, layout), Error);
  EXPECT_THROW(overlap_weight(2, 900, layout), Error);
}

TEST(RenditionSet, DiagonalAndSources) {
  const PanoLayout layout(32, 8, 10, 10);
  const ViewSet vs = random_viewset(layout, 1);
  ExposureRenditionSet r(vs, random_mapped(layout, 10));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(r.rendition(i, i), to_float(vs.views[static_cast<std::size_t>(i)]));
    EXPECT_EQ(r.source(i, i), RenditionSource::kDirect);
    for (int j = 0; j < 3; ++j) {
      if (i != j) {
        EXPECT_EQ(r.source(i, j), RenditionSource::kPhysics);
      }
    }
  }
  EXPECT_THROW(r.replace(1, 1, random_float(32, 8, 3, 1), RenditionSource::kRefined), Error);
  EXPECT_THROW(r.rendition(3, 0), Error);

  Mapped bad = random_mapped(layout, 20);
  bad[0][2] = random_float(31, 8, 3, 1);
  try {
    ExposureRenditionSet broken(vs, bad);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("z1_to_3"), std::string::npos);
  }
}

TEST(SynthesizePano, RegionBranches) {
  const PanoLayout layout(32, 8, 10, 10);
  const ViewSet vs = random_viewset(layout, 1);
  const ExposureRenditionSet r(vs, random_mapped(layout, 10));
  const PanoImage p1 = synthesize_pano(0, r);
  const PanoImage p3 = synthesize_pano(2, r);
  EXPECT_EQ(p1.image.width(), layout.pano_width());
  for (int y = 0; y < 8; ++y) {
    for (int c = 0; c < 3; ++c) {
      // Level 1 on the first region is the darkest view itself.
      for (int x = 0; x < 22; ++x) EXPECT_EQ(p1.image.at(x, y, c), vs.views[0].at(x, y, c));
      // Level 3 on the last region is the brightest view itself.
      for (int x = 54; x < layout.pano_width(); ++x) EXPECT_EQ(p3.image.at(x, y, c), vs.views[2].at(x - 44, y, c));
      // Level 1 on the middle region is view 2 mapped to exposure 1.
      for (int x = 32; x < 44; ++x) EXPECT_EQ(p1.image.at(x, y, c), r.rendition(1, 0).at(x - 22, y, c));
    }
  }
  EXPECT_THROW(synthesize_pano(3, r), Error);
}

TEST(SynthesizePano, OverlapBlendArithmetic) {
  const PanoLayout layout(640, 480, 200, 200);
  Mapped m;
  for (auto& row : m) {
    for (auto& img : row) img = FloatImage(640, 480, 3, 0.0);
  }
  m[0][1] = FloatImage(640, 480, 3, 100.0);
  LdrImage z2(640, 480);
  for (auto& v : z2.data()) v = 120;
  const ViewSet vs{{LdrImage(640, 480), z2, LdrImage(640, 480)}, layout};
  const PanoImage p2 = synthesize_pano(1, ExposureRenditionSet(vs, m));
  EXPECT_DOUBLE_EQ(p2.image.at(540, 17, 0), 110.0);
  EXPECT_DOUBLE_EQ(p2.image.at(440, 17, 1), 100.0);
}

TEST(SynthesizePano, ConvexityAndBoundaryContinuity) {
  const PanoLayout layout(40, 6, 12, 9);
  const ViewSet vs = random_viewset(layout, 5);
  const ExposureRenditionSet r(vs, random_mapped(layout, 50));
  for (int level = 0; level < 3; ++level) {
    const PanoImage p = synthesize_pano(level, r);
    for (int overlap = 0; overlap < 2; ++overlap) {
      const ColumnRange range = layout.overlap_range(overlap);
      const FloatImage& left = r.rendition(overlap, level);
      const FloatImage& right = r.rendition(overlap + 1, level);
      const int lo = layout.view_offset(overlap);
      const int ro = layout.view_offset(overlap + 1);
      for (int x = range.begin; x < range.end; ++x) {
        for (int y = 0; y < 6; ++y) {
          for (int c = 0; c < 3; ++c) {
            const double a = left.at(x - lo, y, c);
            const double b = right.at(x - ro, y, c);
            EXPECT_GE(p.image.at(x, y, c), std::min(a, b) - 1e-12);
            EXPECT_LE(p.image.at(x, y, c), std::max(a, b) + 1e-12);
            if (x == range.begin) {
              EXPECT_EQ(p.image.at(x, y, c), a);
            }
          }
        }
      }
    }
  }
}

TEST(SynthesizePano, ReproducesTruthFromTruthRenditions) {
  const PanoLayout layout(160, 120, 50, 50);
  const SyntheticScene s = synthesize_test_scene(1, layout);
  const ExposureRenditionSet r(s.viewset, truth_mapped(s));
  for (int level = 0; level < 3; ++level) {
    const LdrImage p = quantize(synthesize_pano(level, r).image);
    const LdrImage& truth = s.truth[static_cast<std::size_t>(level)];
    int worst = 0;
    for (std::size_t i = 0; i < p.data().size(); ++i) {
      worst = std::max(worst, std::abs(static_cast<int>(p.data()[i]) - static_cast<int>(truth.data()[i])));
    }
    EXPECT_LE(worst, 1) << "level " << level;
  }
}

class LoadRefinedTest : public ::testing::Test {
 protected:
  PanoLayout layout{24, 10, 8, 8};
  ViewSet vs = random_viewset(layout, 1);
  ExposureRenditionSet base{vs, random_mapped(layout, 30)};
  TempDir dir{"refined"};
};

TEST_F(LoadRefinedTest, AllSixPairs) {
  std::array<std::array<LdrImage, 3>, 3> files;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      auto& img = files[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      img = random_ldr(24, 10, static_cast<std::uint64_t>(100 + 3 * i + j));
      const std::string ext = (i + j) % 2 == 0 ? ".png" : ".ppm";
      write_image(dir.path() / ("z" + std::to_string(i + 1) + "_to_" + std::to_string(j + 1) + ext), img);
    }
  }
  const ExposureRenditionSet r = load_refined(dir.path(), base);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (i == j) continue;
      EXPECT_EQ(r.source(i, j), RenditionSource::kRefined);
      EXPECT_EQ(r.rendition(i, j), to_float(files[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]));
    }
  }
}

TEST_F(LoadRefinedTest, EmptyDirectoryIsNoOp) {
  const ExposureRenditionSet r = load_refined(dir.path(), base);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      EXPECT_EQ(r.rendition(i, j), base.rendition(i, j));
      EXPECT_EQ(r.source(i, j), base.source(i, j));
    }
  }
}

TEST_F(LoadRefinedTest, PartialSubstitution) {
  const LdrImage img = random_ldr(24, 10, 77);
  write_image(dir.path() / "z3_to_1.png", img);
  const ExposureRenditionSet r = load_refined(dir.path(), base);
  EXPECT_EQ(r.source(2, 0), RenditionSource::kRefined);
  EXPECT_EQ(r.rendition(2, 0), to_float(img));
  EXPECT_EQ(r.source(0, 2), RenditionSource::kPhysics);
}

TEST_F(LoadRefinedTest, WrongDimensionsNamePair) {
  write_image(dir.path() / "z2_to_3.png", random_ldr(23, 10, 1));
  try {
    load_refined(dir.path(), base);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("z2_to_3"), std::string::npos);
  }
}

TEST_F(LoadRefinedTest, MissingDirectory) {
  try {
    load_refined(dir.path() / "absent", base);
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
  }
}

}  // namespace
}  // namespace hdrstitch
