#include "hdrstitch/wha.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "hdrstitch/error.hpp"

namespace hdrstitch::wha {

namespace {

void require_equal_totals(const CumHist256& ci, const CumHist256& cj) {
  if (ci.total() != cj.total()) {
    throw validation_error("histogram totals differ (" + std::to_string(ci.total()) + " vs " +
                           std::to_string(cj.total()) + ")");
  }
}

void require_bin(int z, int lowest) {
  if (z < lowest || z >= kBins) throw validation_error("histogram bin out of range: " + std::to_string(z));
}

int psi_lower(const PsiTable& psi_values, int z) {
  return z <= 0 ? 0 : psi_values[static_cast<std::size_t>(z - 1)];
}

Histogram256 scaled(const Histogram256& h, std::int64_t factor) {
  Histogram256 out;
  for (int z = 0; z < kBins; ++z) {
    out.counts[static_cast<std::size_t>(z)] = h.counts[static_cast<std::size_t>(z)] * factor;
  }
  out.total = h.total * factor;
  return out;
}

ImfTable build_equal_totals(const Histogram256& hi, const Histogram256& hj) {
  const CumHist256 ci = cumulative(hi);
  const CumHist256 cj = cumulative(hj);
  const PsiTable psi_values = psi_table(ci, cj);

  ImfTable table;
  for (int z = 0; z < kBins; ++z) {
    const auto zi = static_cast<std::size_t>(z);
    const std::int64_t mass = hi.counts[zi];
    if (mass == 0) continue;
    const int first = psi_lower(psi_values, z);
    const int last = psi_values[zi];
    // Integer numerator keeps the weighted mean exact up to one division.
    std::int64_t weighted = 0;
    for (int k = first; k <= last; ++k) weighted += subbin_mass(ci, cj, psi_values, z, k) * k;
    table.lambda[zi] = static_cast<double>(weighted) / static_cast<double>(mass);
    table.defined[zi] = true;
  }
  return table;
}

}  // namespace

bool ImfTable::fully_defined() const noexcept {
  return std::all_of(defined.begin(), defined.end(), [](bool d) { return d; });
}

ImfTable ImfTable::identity() {
  ImfTable t;
  for (int z = 0; z < kBins; ++z) {
    t.lambda[static_cast<std::size_t>(z)] = z;
    t.defined[static_cast<std::size_t>(z)] = true;
  }
  return t;
}

bool Imf::fully_defined() const noexcept {
  return std::all_of(channels.begin(), channels.end(),
                     [](const ImfTable& t) { return t.fully_defined(); });
}

Imf Imf::identity() {
  Imf imf;
  imf.channels.fill(ImfTable::identity());
  return imf;
}

Histogram256 histogram(const LdrImage& image, int channel) {
  if (channel < 0 || channel >= kRgbChannels) throw validation_error("channel must be 0, 1 or 2");
  Histogram256 h;
  const auto data = image.data();
  for (std::size_t i = static_cast<std::size_t>(channel); i < data.size(); i += kRgbChannels) {
    ++h.counts[data[i]];
  }
  h.total = static_cast<std::int64_t>(image.pixel_count());
  return h;
}

Histogram256 make_histogram(const std::array<std::int64_t, kBins>& counts) {
  Histogram256 h;
  h.counts = counts;
  for (std::int64_t c : counts) {
    if (c < 0) throw validation_error("negative histogram count");
    h.total += c;
  }
  return h;
}

CumHist256 cumulative(const Histogram256& h) {
  CumHist256 c;
  std::partial_sum(h.counts.begin(), h.counts.end(), c.cum.begin());
  return c;
}

int psi(const CumHist256& ci, const CumHist256& cj, int z) {
  require_equal_totals(ci, cj);
  require_bin(z, -1);
  if (z < 0) return 0;
  const auto it = std::lower_bound(cj.cum.begin(), cj.cum.end(), ci.at(z));
  return static_cast<int>(it - cj.cum.begin());
}

PsiTable psi_table(const CumHist256& ci, const CumHist256& cj) {
  require_equal_totals(ci, cj);
  PsiTable t{};
  for (int z = 0; z < kBins; ++z) t[static_cast<std::size_t>(z)] = psi(ci, cj, z);
  return t;
}

std::int64_t subbin_mass(const CumHist256& ci, const CumHist256& cj, const PsiTable& psi_values,
                         int z, int k) {
  require_equal_totals(ci, cj);
  require_bin(z, 0);
  const int first = psi_lower(psi_values, z);
  const int last = psi_values[static_cast<std::size_t>(z)];
  if (k < first || k > last) {
    throw validation_error("target bin " + std::to_string(k) + " outside [" +
                           std::to_string(first) + ", " + std::to_string(last) + "]");
  }
  if (first == last) return ci.at(z) - ci.at(z - 1);
  if (k == first) return cj.at(k) - ci.at(z - 1);
  if (k == last) return ci.at(z) - cj.at(k - 1);
  return cj.at(k) - cj.at(k - 1);
}

ImfTable build_imf(const Histogram256& hi, const Histogram256& hj) {
  if (hi.total <= 0 || hj.total <= 0) throw validation_error("cannot build an IMF from an empty histogram");
  if (hi.total == hj.total) return build_equal_totals(hi, hj);

  // Rescale to the least common total; psi's inequality is invariant under a
  // common scaling and the integer arithmetic stays exact.
  const std::int64_t g = std::gcd(hi.total, hj.total);
  const std::int64_t fi = hj.total / g;
  const std::int64_t fj = hi.total / g;
  if (hi.total > INT64_MAX / 512 / fi) throw validation_error("histogram totals too large to rescale");
  return build_equal_totals(scaled(hi, fi), scaled(hj, fj));
}

ImfTable fill_empty_bins(const ImfTable& table) {
  std::vector<int> known;
  for (int z = 0; z < kBins; ++z) {
    if (table.defined[static_cast<std::size_t>(z)]) known.push_back(z);
  }
  if (known.empty()) throw validation_error("IMF channel has no defined bins");

  ImfTable out = table;
  const auto value = [&](int z) { return table.lambda[static_cast<std::size_t>(z)]; };
  for (int z = 0; z < known.front(); ++z) out.lambda[static_cast<std::size_t>(z)] = value(known.front());
  for (int z = known.back() + 1; z < kBins; ++z) out.lambda[static_cast<std::size_t>(z)] = value(known.back());
  for (std::size_t n = 0; n + 1 < known.size(); ++n) {
    const int a = known[n];
    const int b = known[n + 1];
    for (int z = a + 1; z < b; ++z) {
      const double t = static_cast<double>(z - a) / static_cast<double>(b - a);
      out.lambda[static_cast<std::size_t>(z)] = value(a) + t * (value(b) - value(a));
    }
  }
  out.defined.fill(true);
  return out;
}

Imf fill_empty_bins(const Imf& imf) {
  Imf out;
  for (std::size_t c = 0; c < out.channels.size(); ++c) out.channels[c] = fill_empty_bins(imf.channels[c]);
  return out;
}

std::pair<Imf, Imf> estimate_imf_pair(const LdrImage& a, const LdrImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw validation_error("IMF estimation needs two images of the same size");
  }
  if (a.empty()) throw validation_error("IMF estimation needs non-empty images");
  Imf forward;
  Imf backward;
  for (int c = 0; c < kRgbChannels; ++c) {
    const Histogram256 ha = histogram(a, c);
    const Histogram256 hb = histogram(b, c);
    forward.channels[static_cast<std::size_t>(c)] = fill_empty_bins(build_imf(ha, hb));
    backward.channels[static_cast<std::size_t>(c)] = fill_empty_bins(build_imf(hb, ha));
  }
  return {forward, backward};
}

double evaluate(const ImfTable& table, double z) noexcept {
  const double clamped = std::clamp(z, 0.0, static_cast<double>(kBins - 1));
  const int k = static_cast<int>(std::floor(clamped));
  if (k >= kBins - 1) return table.lambda[kBins - 1];
  const double t = clamped - k;
  const double lo = table.lambda[static_cast<std::size_t>(k)];
  const double hi = table.lambda[static_cast<std::size_t>(k + 1)];
  return lo + t * (hi - lo);
}

ImfTable compose_imf(const ImfTable& first, const ImfTable& second) {
  if (!first.fully_defined() || !second.fully_defined()) {
    throw validation_error("compose_imf needs fully defined tables");
  }
  ImfTable out;
  for (std::size_t z = 0; z < kBins; ++z) out.lambda[z] = evaluate(second, first.lambda[z]);
  out.defined.fill(true);
  return out;
}

Imf compose_imf(const Imf& first, const Imf& second) {
  Imf out;
  for (std::size_t c = 0; c < out.channels.size(); ++c) {
    out.channels[c] = compose_imf(first.channels[c], second.channels[c]);
  }
  return out;
}

FloatImage apply_imf(const Imf& imf, const LdrImage& image) {
  if (!imf.fully_defined()) throw validation_error("apply_imf needs a fully defined IMF");
  FloatImage out(image.width(), image.height(), kRgbChannels);
  const auto src = image.data();
  auto dst = out.data();
  for (std::size_t i = 0; i < src.size(); ++i) {
    dst[i] = imf.channels[i % kRgbChannels].lambda[src[i]];
  }
  return out;
}

}  // namespace hdrstitch::wha
