#ifndef QWALK_FINGERPRINT_HPP
#define QWALK_FINGERPRINT_HPP

#include "qwalk/graph.hpp"
#include "qwalk/walk.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace qwalk {

inline constexpr double kDefaultBinWidth = 1e-6;
inline constexpr double kDefaultThreshold = 1e-6;
inline constexpr double kMinBinWidth = 1e-12;
inline constexpr double kMaxBinWidth = 1e-2;

struct Provenance {
  std::uint64_t graph_hash = 0;
  int particles = 0;
  Statistics statistics = Statistics::boson;
  double time = 1.0;

  bool operator==(const Provenance &) const = default;
};

Provenance provenance_of(const Graph &g, const WalkSpec &spec);

struct FingerprintBin {
  std::int64_t index = 0;
  std::uint64_t multiplicity = 0;

  bool operator==(const FingerprintBin &) const = default;
};

/// Run-length encoded sorted list of |U| element values after snapping each
/// value to bin floor(value / bin_width).
class Fingerprint {
public:
  Fingerprint(std::vector<FingerprintBin> bins, double bin_width, Provenance provenance);

  const std::vector<FingerprintBin> &bins() const { return bins_; }
  double bin_width() const { return bin_width_; }
  std::uint64_t total_elements() const { return total_; }
  const Provenance &provenance() const { return provenance_; }
  std::size_t distinct_values() const { return bins_.size(); }

  /// Bin centre, clamped to the unit interval.
  double value(std::size_t i) const;

  bool operator==(const Fingerprint &) const = default;

private:
  std::vector<FingerprintBin> bins_;
  double bin_width_;
  std::uint64_t total_ = 0;
  Provenance provenance_;
};

/// Bin-index -> count map. Accumulation is a commutative monoid, so partial
/// histograms merge to the same result in any order.
class MagnitudeHistogram {
public:
  explicit MagnitudeHistogram(double bin_width);

  void add(double magnitude) { ++counts_[bin_of(magnitude)]; }
  void add(double magnitude, std::uint64_t count) { counts_[bin_of(magnitude)] += count; }
  void merge(const MagnitudeHistogram &other);

  std::int64_t bin_of(double magnitude) const {
    return static_cast<std::int64_t>(std::floor(magnitude / width_));
  }
  double bin_width() const { return width_; }
  std::size_t size() const { return counts_.size(); }

  Fingerprint seal(const Provenance &provenance) const;

private:
  double width_;
  std::unordered_map<std::int64_t, std::uint64_t> counts_;
};

/// Streams every Green's function magnitude into a histogram. Bra rows are
/// split across `workers` threads; the result does not depend on `workers`.
Fingerprint build_fingerprint(const Graph &g, const WalkSpec &spec,
                              double bin_width = kDefaultBinWidth, int workers = 1);

/// Sum over the expanded sorted lists of |a[i] - b[i]|, computed by a merge
/// over runs. Throws std::invalid_argument for incomparable fingerprints.
double delta(const Fingerprint &a, const Fingerprint &b);

struct ComparisonReport {
  std::string graph_a;
  std::string graph_b;
  WalkSpec spec;
  double bin_width = kDefaultBinWidth;
  double threshold = kDefaultThreshold;
  bool comparable = true;
  double delta = 0;
  bool distinguished = false;
  Provenance provenance_a;
  Provenance provenance_b;
  double seconds = 0;
};

ComparisonReport compare(const Graph &a, const Graph &b, const WalkSpec &spec,
                         double bin_width = kDefaultBinWidth,
                         double threshold = kDefaultThreshold, int workers = 1);

/// Distinct-bin counts of one walk at each width, from a single streaming pass.
std::vector<std::pair<double, std::size_t>> bin_sweep(const Graph &g, const WalkSpec &spec,
                                                      const std::vector<double> &widths);

/// `per_decade` logarithmically spaced widths from 10^lo to 10^hi inclusive.
std::vector<double> log_spaced_widths(int lo_exponent, int hi_exponent, int per_decade);

} // namespace qwalk

#endif // QWALK_FINGERPRINT_HPP
