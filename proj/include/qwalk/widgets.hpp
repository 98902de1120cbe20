#ifndef QWALK_WIDGETS_HPP
#define QWALK_WIDGETS_HPP

#include "qwalk/graph.hpp"
#include "qwalk/srg_algebra.hpp"
#include "qwalk/walk.hpp"

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace qwalk {

/// How a bra vertex relates to a ket vertex.
enum class Relation : std::uint8_t { edge = 0, same = 1, neither = 2 };

/// Equivalence class of Green's functions: a p x p matrix of relations
/// between bra slots (rows) and ket slots (columns). Bra-bra and ket-ket
/// adjacency is not represented.
class Widget {
public:
  Widget(int particles, std::vector<Relation> relations);

  /// Grid of E/S/N characters, one row per bra vertex, rows separated by
  /// '/', ',' or newlines. Also accepts the presets "empty2", "empty3",
  /// "complete3".
  static Widget parse(std::string_view text);

  int particles() const { return p_; }
  Relation at(int bra, int ket) const { return rel_[bra * p_ + ket]; }
  const std::vector<Relation> &relations() const { return rel_; }

  /// Lexicographically smallest relation matrix under independent bra-slot
  /// and ket-slot permutations.
  Widget canonical() const;

  /// Number of (bra permutation, ket permutation) pairs fixing the matrix.
  std::uint64_t stabilizer_order() const;

  std::string to_string() const;

  bool operator==(const Widget &) const = default;
  auto operator<=>(const Widget &) const = default;

private:
  int p_;
  std::vector<Relation> rel_;
};

/// Green's function value on any SRG of the family: each entry becomes
/// alpha+beta (same), beta+gamma (edge) or beta (neither), then the
/// permanent (bosons) or determinant of the conjugate (fermions) is taken.
std::complex<double> widget_value(const Widget &w, const PropagatorCoefficients &coeffs,
                                  Statistics statistics);

struct WidgetCount {
  Widget widget;
  std::uint64_t multiplicity = 0;
};

inline constexpr int kMaxCountedWidgetParticles = 4;

/// Number of (unordered bra set, unordered ket set) placements realizing w.
/// Throws std::invalid_argument for p > 4.
WidgetCount count_widget(const Graph &g, const Widget &w, int workers = 1);

/// Every placement of p distinct bra and p distinct ket vertices, bucketed by
/// canonical widget. Keyed by canonical widget.
std::map<Widget, std::uint64_t> widget_census(const Graph &g, int particles);

/// Closed-form count of the empty two-particle widget on an SRG.
std::uint64_t two_particle_empty_count(const SrgParams &params);

/// Histogram: common-neighbour count -> number of mutually non-adjacent triples.
std::map<int, std::uint64_t> triple_neighbor_census(const Graph &g);

} // namespace qwalk

#endif // QWALK_WIDGETS_HPP
