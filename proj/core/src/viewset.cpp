#include "hdrstitch/viewset.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <string>

#include "hdrstitch/error.hpp"
#include "hdrstitch/image_io.hpp"

namespace hdrstitch {

namespace fs = std::filesystem;

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

int parse_int(const std::map<std::string, std::string>& kv, const std::string& key) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw validation_error("layout is missing key '" + key + "'");
  try {
    std::size_t used = 0;
    const int v = std::stoi(it->second, &used);
    if (used == it->second.size()) return v;
  } catch (const std::exception&) {
  }
  throw validation_error("layout key '" + key + "' is not an integer: " + it->second);
}

}  // namespace

void ViewSet::validate() const {
  for (std::size_t i = 0; i < views.size(); ++i) {
    if (views[i].width() != layout.view_width() || views[i].height() != layout.view_height()) {
      throw validation_error("view z" + std::to_string(i + 1) + " is " +
                             std::to_string(views[i].width()) + "x" +
                             std::to_string(views[i].height()) + ", layout expects " +
                             std::to_string(layout.view_width()) + "x" +
                             std::to_string(layout.view_height()));
    }
  }
}

PanoLayout read_layout(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("missing layout descriptor " + path.string());
  std::map<std::string, std::string> kv;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw validation_error("malformed layout line: " + line);
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  double ev_gap = 1.0;
  if (const auto it = kv.find("ev_gap"); it != kv.end()) {
    try {
      ev_gap = std::stod(it->second);
    } catch (const std::exception&) {
      throw validation_error("layout key 'ev_gap' is not a number: " + it->second);
    }
  }
  return PanoLayout::with_ev_gap(parse_int(kv, "view_width"), parse_int(kv, "view_height"),
                                 parse_int(kv, "overlap12_width"),
                                 parse_int(kv, "overlap23_width"), ev_gap);
}

void write_layout(const fs::path& path, const PanoLayout& layout) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  const auto& r = layout.exposure_ratios();
  out << "view_width=" << layout.view_width() << '\n'
      << "view_height=" << layout.view_height() << '\n'
      << "overlap12_width=" << layout.overlap12_width() << '\n'
      << "overlap23_width=" << layout.overlap23_width() << '\n'
      << "ev_gap=" << std::log2(r[1] / r[0]) << '\n';
}

ViewSet load_viewset(const fs::path& scene_directory) {
  if (!fs::is_directory(scene_directory)) {
    throw io_error("scene directory not found: " + scene_directory.string());
  }
  PanoLayout layout = read_layout(scene_directory / "layout.txt");
  std::array<LdrImage, 3> views;
  for (int i = 0; i < 3; ++i) {
    const std::string stem = "z" + std::to_string(i + 1);
    const auto path = find_image(scene_directory, stem);
    if (!path) throw io_error("missing view " + stem + " in " + scene_directory.string());
    views[static_cast<std::size_t>(i)] = read_image(*path);
  }
  ViewSet vs{std::move(views), layout};
  vs.validate();
  return vs;
}

void save_viewset(const fs::path& scene_directory, const ViewSet& viewset) {
  fs::create_directories(scene_directory);
  for (int i = 0; i < 3; ++i) {
    write_image(scene_directory / ("z" + std::to_string(i + 1) + ".png"),
                viewset.views[static_cast<std::size_t>(i)]);
  }
  write_layout(scene_directory / "layout.txt", viewset.layout);
}

}  // namespace hdrstitch
