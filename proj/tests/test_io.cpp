#include <fstream>
#include <functional>

#include <gtest/gtest.h>

#include "hdrstitch/error.hpp"
#include "hdrstitch/image_io.hpp"
#include "hdrstitch/viewset.hpp"
#include "hdrstitch/wha.hpp"
#include "test_support.hpp"

namespace hdrstitch {
namespace {

namespace fs = std::filesystem;
using testing::random_ldr;
using testing::TempDir;

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
}

ErrorKind kind_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::kNumerical;
}

TEST(ImageIo, PpmRoundTrip) {
  TempDir dir("io");
  const LdrImage img = random_ldr(17, 5, 1);
  write_image(dir.path() / "a.ppm", img);
  EXPECT_EQ(read_image(dir.path() / "a.ppm"), img);
}

TEST(ImageIo, PngRoundTrip) {
  TempDir dir("io");
  const LdrImage img = random_ldr(33, 21, 2);
  write_image(dir.path() / "a.png", img);
  EXPECT_EQ(read_image(dir.path() / "a.png"), img);
}

TEST(ImageIo, AsciiPpmWithComments) {
  TempDir dir("io");
  write_text(dir.path() / "a.ppm", "P3\n# comment\n2 1\n255\n0 10 20\n255 128 7\n");
  const LdrImage img = read_image(dir.path() / "a.ppm");
  ASSERT_EQ(img.width(), 2);
  EXPECT_EQ(img.at(0, 0, 1), 10);
  EXPECT_EQ(img.at(1, 0, 0), 255);
  EXPECT_EQ(img.at(1, 0, 2), 7);
}

TEST(ImageIo, PpmMaxvalIsRescaled) {
  TempDir dir("io");
  write_text(dir.path() / "a.ppm", "P3 1 1 15 15 0 5\n");
  const LdrImage img = read_image(dir.path() / "a.ppm");
  EXPECT_EQ(img.at(0, 0, 0), 255);
  EXPECT_EQ(img.at(0, 0, 1), 0);
  EXPECT_EQ(img.at(0, 0, 2), 85);

  std::string wide = "P6\n1 1\n65535\n";
  for (int v : {0xFF, 0xFF, 0x00, 0x00, 0x80, 0x00}) wide.push_back(static_cast<char>(v));
  write_text(dir.path() / "w.ppm", wide);
  const LdrImage w = read_image(dir.path() / "w.ppm");
  EXPECT_EQ(w.at(0, 0, 0), 255);
  EXPECT_EQ(w.at(0, 0, 1), 0);
  EXPECT_EQ(w.at(0, 0, 2), 128);
}

TEST(ImageIo, Errors) {
  TempDir dir("io");
  EXPECT_EQ(kind_of([&] { read_image(dir.path() / "nope.png"); }), ErrorKind::kIo);
  write_text(dir.path() / "bad.ppm", "P5\n1 1\n255\n\x01");
  EXPECT_EQ(kind_of([&] { read_image(dir.path() / "bad.ppm"); }), ErrorKind::kValidation);
  write_text(dir.path() / "short.ppm", "P6\n4 4\n255\nabc");
  EXPECT_EQ(kind_of([&] { read_image(dir.path() / "short.ppm"); }), ErrorKind::kValidation);
  write_text(dir.path() / "junk.png", "not a png");
  EXPECT_EQ(kind_of([&] { read_image(dir.path() / "junk.png"); }), ErrorKind::kValidation);
  write_text(dir.path() / "a.tif", "x");
  EXPECT_EQ(kind_of([&] { read_image(dir.path() / "a.tif"); }), ErrorKind::kValidation);
  EXPECT_THROW(write_image(dir.path() / "a.bmp", random_ldr(2, 2, 1)), Error);
}

TEST(ImageIo, FindImagePrefersPng) {
  TempDir dir("io");
  EXPECT_FALSE(find_image(dir.path(), "z1").has_value());
  write_image(dir.path() / "z1.ppm", random_ldr(2, 2, 1));
  EXPECT_EQ(find_image(dir.path(), "z1"), dir.path() / "z1.ppm");
  write_image(dir.path() / "z1.png", random_ldr(2, 2, 1));
  EXPECT_EQ(find_image(dir.path(), "z1"), dir.path() / "z1.png");
}

TEST(ViewSetIo, SaveLoadRoundTrip) {
  TempDir dir("scene");
  const PanoLayout layout(64, 32, 20, 16);
  ViewSet vs{{random_ldr(64, 32, 1), random_ldr(64, 32, 2), random_ldr(64, 32, 3)}, layout};
  save_viewset(dir.path(), vs);
  const ViewSet back = load_viewset(dir.path());
  EXPECT_EQ(back.layout, layout);
  EXPECT_EQ(back.views, vs.views);
  EXPECT_EQ(back.layout.pano_width(), 3 * 64 - 36);
}

TEST(ViewSetIo, PanoWidthFromDescriptor) {
  TempDir dir("scene");
  write_text(dir.path() / "layout.txt",
             "# scene\nview_width = 640\nview_height=480\noverlap12_width=200\noverlap23_width=200\n");
  const PanoLayout layout = read_layout(dir.path() / "layout.txt");
  EXPECT_EQ(layout.pano_width(), 1520);
  EXPECT_EQ(layout.exposure_ratios(), (std::array<double, 3>{1.0, 2.0, 4.0}));
}

TEST(ViewSetIo, EvGapKey) {
  TempDir dir("scene");
  write_text(dir.path() / "layout.txt",
             "view_width=64\nview_height=8\noverlap12_width=8\noverlap23_width=8\nev_gap=1.5\n");
  const PanoLayout layout = read_layout(dir.path() / "layout.txt");
  EXPECT_DOUBLE_EQ(layout.exposure_ratios()[2], 8.0);
}

TEST(ViewSetIo, MissingView) {
  TempDir dir("scene");
  const PanoLayout layout(16, 16, 4, 4);
  save_viewset(dir.path(), {{random_ldr(16, 16, 1), random_ldr(16, 16, 2), random_ldr(16, 16, 3)}, layout});
  fs::remove(dir.path() / "z3.png");
  try {
    load_viewset(dir.path());
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kIo);
    EXPECT_NE(std::string(e.what()).find("missing view"), std::string::npos);
  }
}

TEST(ViewSetIo, OverlapAsWideAsView) {
  TempDir dir("scene");
  write_text(dir.path() / "layout.txt",
             "view_width=640\nview_height=480\noverlap12_width=640\noverlap23_width=200\n");
  try {
    read_layout(dir.path() / "layout.txt");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::kValidation);
    EXPECT_NE(std::string(e.what()).find("overlap must be smaller than view"), std::string::npos);
  }
}

TEST(ViewSetIo, DimensionMismatch) {
  TempDir dir("scene");
  const PanoLayout layout(16, 16, 4, 4);
  save_viewset(dir.path(), {{random_ldr(16, 16, 1), random_ldr(16, 16, 2), random_ldr(16, 16, 3)}, layout});
  write_image(dir.path() / "z2.png", random_ldr(15, 16, 2));
  EXPECT_EQ(kind_of([&] { load_viewset(dir.path()); }), ErrorKind::kValidation);
}

TEST(ViewSetIo, MalformedDescriptor) {
  TempDir dir("scene");
  const fs::path p = dir.path() / "layout.txt";
  write_text(p, "view_width=64\nview_height=8\noverlap12_width=8\n");
  EXPECT_EQ(kind_of([&] { read_layout(p); }), ErrorKind::kValidation);
  write_text(p, "view_width=sixty\nview_height=8\noverlap12_width=8\noverlap23_width=8\n");
  EXPECT_EQ(kind_of([&] { read_layout(p); }), ErrorKind::kValidation);
  write_text(p, "view_width 64\n");
  EXPECT_EQ(kind_of([&] { read_layout(p); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { read_layout(dir.path() / "missing.txt"); }), ErrorKind::kIo);
  EXPECT_EQ(kind_of([&] { load_viewset(dir.path() / "nowhere"); }), ErrorKind::kIo);
}

TEST(ImfIo, RoundTripIsExact) {
  TempDir dir("imf");
  const auto [ab, ba] = wha::estimate_imf_pair(random_ldr(40, 30, 1, 0, 200), random_ldr(40, 30, 2, 30, 255));
  wha::Imf partial = ab;
  partial.channels[1].defined[7] = false;
  write_imf(dir.path() / "m.txt", partial);
  const wha::Imf back = wha::read_imf(dir.path() / "m.txt");
  for (int c = 0; c < 3; ++c) {
    EXPECT_EQ(back.channels[static_cast<std::size_t>(c)].lambda, partial.channels[static_cast<std::size_t>(c)].lambda);
    EXPECT_EQ(back.channels[static_cast<std::size_t>(c)].defined, partial.channels[static_cast<std::size_t>(c)].defined);
  }
  std::ifstream in(dir.path() / "m.txt");
  std::string header;
  std::getline(in, header);
  EXPECT_EQ(header, "wha-imf v1 channels=3");
}

TEST(ImfIo, RejectsBadFiles) {
  TempDir dir("imf");
  write_text(dir.path() / "m.txt", "wha-imf v2 channels=3\n");
  EXPECT_EQ(kind_of([&] { wha::read_imf(dir.path() / "m.txt"); }), ErrorKind::kValidation);
  write_text(dir.path() / "t.txt", "wha-imf v1 channels=3\n0 0 0 0 1 1 1\n");
  EXPECT_EQ(kind_of([&] { wha::read_imf(dir.path() / "t.txt"); }), ErrorKind::kValidation);
  EXPECT_EQ(kind_of([&] { wha::read_imf(dir.path() / "none.txt"); }), ErrorKind::kIo);
}

}  // namespace
}  // namespace hdrstitch
