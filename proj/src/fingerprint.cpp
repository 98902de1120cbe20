#include "qwalk/fingerprint.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <thread>

namespace qwalk {

Provenance provenance_of(const Graph &g, const WalkSpec &spec) {
  return {content_hash(g), spec.particles, spec.statistics, spec.time};
}

Fingerprint::Fingerprint(std::vector<FingerprintBin> bins, double bin_width,
                         Provenance provenance)
    : bins_(std::move(bins)), bin_width_(bin_width), provenance_(provenance) {
  if (!(bin_width_ > 0))
    throw std::invalid_argument("bin width must be positive");
  for (std::size_t i = 0; i < bins_.size(); ++i) {
    if (bins_[i].multiplicity == 0)
      throw std::invalid_argument("fingerprint bin with zero multiplicity");
    if (bins_[i].index < 0)
      throw std::invalid_argument("negative fingerprint bin index");
    if (i > 0 && bins_[i].index <= bins_[i - 1].index)
      throw std::invalid_argument("fingerprint bins must be strictly increasing");
    total_ += bins_[i].multiplicity;
  }
}

double Fingerprint::value(std::size_t i) const {
  return std::min((static_cast<double>(bins_[i].index) + 0.5) * bin_width_, 1.0);
}

MagnitudeHistogram::MagnitudeHistogram(double bin_width) : width_(bin_width) {
  if (!(bin_width > 0))
    throw std::invalid_argument("bin width must be positive");
}

void MagnitudeHistogram::merge(const MagnitudeHistogram &other) {
  if (other.width_ != width_)
    throw std::invalid_argument("cannot merge histograms with different bin widths");
  for (const auto &[bin, count] : other.counts_)
    counts_[bin] += count;
}

Fingerprint MagnitudeHistogram::seal(const Provenance &provenance) const {
  std::vector<FingerprintBin> bins;
  bins.reserve(counts_.size());
  for (const auto &[bin, count] : counts_)
    bins.push_back({bin, count});
  std::sort(bins.begin(), bins.end(),
            [](const FingerprintBin &a, const FingerprintBin &b) { return a.index < b.index; });
  return Fingerprint(std::move(bins), width_, provenance);
}

Fingerprint build_fingerprint(const Graph &g, const WalkSpec &spec, double bin_width,
                              int workers) {
  if (!(bin_width >= kMinBinWidth && bin_width <= kMaxBinWidth))
    throw std::invalid_argument("bin width must lie in [1e-12, 1e-2]");
  const std::size_t rows = basis_dimension(g.n(), spec);
  workers = std::clamp<int>(workers, 1, static_cast<int>(std::max<std::size_t>(rows, 1)));

  std::vector<MagnitudeHistogram> partial(workers, MagnitudeHistogram(bin_width));
  auto run = [&](int w) {
    const std::size_t begin = rows * w / workers;
    const std::size_t end = rows * (w + 1) / workers;
    MagnitudeHistogram &h = partial[w];
    stream_green_rows(g, spec, begin, end, [&h](std::size_t, std::span<const double> row) {
      for (double v : row)
        h.add(v);
    });
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w)
      pool.emplace_back(run, w);
    for (auto &t : pool)
      t.join();
  }
  for (int w = 1; w < workers; ++w)
    partial[0].merge(partial[w]);
  return partial[0].seal(provenance_of(g, spec));
}

double delta(const Fingerprint &a, const Fingerprint &b) {
  if (a.total_elements() != b.total_elements())
    throw std::invalid_argument("fingerprints have different element counts");
  if (a.bin_width() != b.bin_width())
    throw std::invalid_argument("fingerprints use different bin widths");

  const auto &ba = a.bins();
  const auto &bb = b.bins();
  std::size_t i = 0, j = 0;
  std::uint64_t left_a = ba.empty() ? 0 : ba[0].multiplicity;
  std::uint64_t left_b = bb.empty() ? 0 : bb[0].multiplicity;
  double sum = 0;
  while (i < ba.size() && j < bb.size()) {
    const std::uint64_t run = std::min(left_a, left_b);
    if (ba[i].index != bb[j].index)
      sum += static_cast<double>(run) * std::abs(a.value(i) - b.value(j));
    left_a -= run;
    left_b -= run;
    if (left_a == 0 && ++i < ba.size())
      left_a = ba[i].multiplicity;
    if (left_b == 0 && ++j < bb.size())
      left_b = bb[j].multiplicity;
  }
  return sum;
}

ComparisonReport compare(const Graph &a, const Graph &b, const WalkSpec &spec,
                         double bin_width, double threshold, int workers) {
  const auto start = std::chrono::steady_clock::now();
  ComparisonReport r;
  r.graph_a = encode_graph6(a);
  r.graph_b = encode_graph6(b);
  r.spec = spec;
  r.bin_width = bin_width;
  r.threshold = threshold;
  r.provenance_a = provenance_of(a, spec);
  r.provenance_b = provenance_of(b, spec);
  if (a.n() != b.n()) {
    r.comparable = false;
  } else {
    const Fingerprint fa = build_fingerprint(a, spec, bin_width, workers);
    const Fingerprint fb = build_fingerprint(b, spec, bin_width, workers);
    r.delta = delta(fa, fb);
    r.distinguished = r.delta > threshold;
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::vector<std::pair<double, std::size_t>> bin_sweep(const Graph &g, const WalkSpec &spec,
                                                      const std::vector<double> &widths) {
  for (std::size_t i = 0; i < widths.size(); ++i) {
    if (!(widths[i] > 0))
      throw std::invalid_argument("bin widths must be positive");
    if (i > 0 && widths[i] < widths[i - 1])
      throw std::invalid_argument("bin widths must be sorted ascending");
  }
  std::vector<MagnitudeHistogram> hists;
  hists.reserve(widths.size());
  for (double w : widths)
    hists.emplace_back(w);
  stream_green_magnitudes(g, spec, [&](double v) {
    for (auto &h : hists)
      h.add(v);
  });
  std::vector<std::pair<double, std::size_t>> out;
  for (std::size_t i = 0; i < widths.size(); ++i)
    out.emplace_back(widths[i], hists[i].size());
  return out;
}

std::vector<double> log_spaced_widths(int lo_exponent, int hi_exponent, int per_decade) {
  if (hi_exponent < lo_exponent || per_decade < 1)
    throw std::invalid_argument("invalid width range");
  std::vector<double> out;
  const int steps = (hi_exponent - lo_exponent) * per_decade;
  for (int s = 0; s <= steps; ++s)
    out.push_back(std::pow(10.0, lo_exponent + static_cast<double>(s) / per_decade));
  return out;
}

} // namespace qwalk
