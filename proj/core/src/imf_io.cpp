#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include "hdrstitch/error.hpp"
#include "hdrstitch/wha.hpp"

namespace hdrstitch::wha {

namespace {
constexpr const char* kHeader = "wha-imf v1 channels=3";
}

void write_imf(const std::filesystem::path& path, const Imf& imf) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write " + path.string());
  out << kHeader << '\n';
  char buf[160];
  for (std::size_t z = 0; z < kBins; ++z) {
    std::snprintf(buf, sizeof(buf), "%zu %.17g %.17g %.17g %d %d %d\n", z,
                  imf.channels[0].lambda[z], imf.channels[1].lambda[z], imf.channels[2].lambda[z],
                  imf.channels[0].defined[z] ? 1 : 0, imf.channels[1].defined[z] ? 1 : 0,
                  imf.channels[2].defined[z] ? 1 : 0);
    out << buf;
  }
  if (!out) throw io_error("failed writing " + path.string());
}

Imf read_imf(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot open " + path.string());
  std::string line;
  std::getline(in, line);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw validation_error("not a wha-imf v1 file: " + path.string());

  Imf imf;
  for (std::size_t row = 0; row < kBins; ++row) {
    if (!std::getline(in, line)) throw validation_error("truncated IMF table in " + path.string());
    std::istringstream fields(line);
    std::size_t z = 0;
    std::array<double, 3> lambda{};
    std::array<int, 3> defined{};
    fields >> z >> lambda[0] >> lambda[1] >> lambda[2] >> defined[0] >> defined[1] >> defined[2];
    if (!fields || z != row) {
      throw validation_error("malformed IMF row " + std::to_string(row) + " in " + path.string());
    }
    for (std::size_t c = 0; c < 3; ++c) {
      imf.channels[c].lambda[z] = lambda[c];
      imf.channels[c].defined[z] = defined[c] != 0;
    }
  }
  return imf;
}

}  // namespace hdrstitch::wha
