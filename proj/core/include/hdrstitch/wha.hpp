#pragma once

// Weighted histogram averaging (WHA) estimation of intensity mapping
// functions between two differently exposed images of the same content.
//
// For source image i and target image j with cumulative histograms C_i, C_j,
// the bin correspondence psi(z) is the smallest k with
//
//     C_j(k - 1) < C_i(z) <= C_j(k),     C(-1) = 0, psi(-1) = 0.
//
// Source bin z then covers target bins psi(z-1) .. psi(z); the pixel mass it
// shares with each of them is the sub-bin cardinality, and the mapped value
// is the mass-weighted mean of those target bins.

#include <array>
#include <cstdint>
#include <filesystem>
#include <utility>

#include "hdrstitch/image.hpp"

namespace hdrstitch::wha {

inline constexpr int kBins = 256;

struct Histogram256 {
  std::array<std::int64_t, kBins> counts{};
  std::int64_t total = 0;
};

struct CumHist256 {
  std::array<std::int64_t, kBins> cum{};

  std::int64_t total() const noexcept { return cum[kBins - 1]; }
  /// cum[z] with the convention cum[-1] = 0.
  std::int64_t at(int z) const noexcept { return z < 0 ? 0 : cum[static_cast<std::size_t>(z)]; }
};

using PsiTable = std::array<int, kBins>;

/// Single-channel intensity mapping table.
struct ImfTable {
  std::array<double, kBins> lambda{};
  std::array<bool, kBins> defined{};

  bool fully_defined() const noexcept;
  static ImfTable identity();
};

/// Per-channel mapping, R, G, B.
struct Imf {
  std::array<ImfTable, 3> channels;

  bool fully_defined() const noexcept;
  static Imf identity();
};

Histogram256 histogram(const LdrImage& image, int channel);
/// Builds a histogram from raw counts; total is their sum.
Histogram256 make_histogram(const std::array<std::int64_t, kBins>& counts);
CumHist256 cumulative(const Histogram256& h);

/// Bin correspondence for source bin z in [-1, 255]. Requires equal totals.
int psi(const CumHist256& ci, const CumHist256& cj, int z);
PsiTable psi_table(const CumHist256& ci, const CumHist256& cj);

/// Pixel mass of source bin z that lands in target bin k,
/// psi(z-1) <= k <= psi(z). Requires equal totals.
std::int64_t subbin_mass(const CumHist256& ci, const CumHist256& cj, const PsiTable& psi_values,
                         int z, int k);

/// Mapping from the source histogram to the target histogram. Bins empty in
/// the source are left undefined. Unequal totals are handled by rescaling both
/// histograms to a common total (exact, in integers).
ImfTable build_imf(const Histogram256& hi, const Histogram256& hj);

/// Linear interpolation between defined neighbours, clamped at both ends.
ImfTable fill_empty_bins(const ImfTable& table);
Imf fill_empty_bins(const Imf& imf);

/// Mappings a->b and b->a from two images of the same content, per channel,
/// with empty bins filled.
std::pair<Imf, Imf> estimate_imf_pair(const LdrImage& a, const LdrImage& b);

/// second(first(z)), with `second` linearly interpolated between its bins.
ImfTable compose_imf(const ImfTable& first, const ImfTable& second);
Imf compose_imf(const Imf& first, const Imf& second);

/// Evaluates a fully defined table at a real-valued intensity in [0, 255].
double evaluate(const ImfTable& table, double z) noexcept;

FloatImage apply_imf(const Imf& imf, const LdrImage& image);

/// Plain-text table: header `wha-imf v1 channels=3`, then 256 rows of
/// `z lambda_R lambda_G lambda_B defined_R defined_G defined_B`.
void write_imf(const std::filesystem::path& path, const Imf& imf);
Imf read_imf(const std::filesystem::path& path);

}  // namespace hdrstitch::wha
