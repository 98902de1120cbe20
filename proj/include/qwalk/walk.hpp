#ifndef QWALK_WALK_HPP
#define QWALK_WALK_HPP

#include "qwalk/graph.hpp"

#include <Eigen/Core>

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

namespace qwalk {

enum class Statistics { boson, fermion };

std::string_view to_string(Statistics s);
Statistics parse_statistics(std::string_view text);

/// Particle count, exchange statistics and evolution time (hbar = 1).
struct WalkSpec {
  int particles = 1;
  Statistics statistics = Statistics::boson;
  double time = 1.0;

  /// Throws std::invalid_argument if the walk is not defined on n vertices.
  void validate(int n) const;
};

/// Sorted vertex multiset (bosons) or set (fermions) of occupied vertices.
class OccupationState {
public:
  OccupationState(std::vector<Vertex> vertices, Statistics statistics);

  int particles() const { return static_cast<int>(vertices_.size()); }
  const std::vector<Vertex> &vertices() const { return vertices_; }

  /// Product of factorials of the occupation numbers.
  std::uint64_t occupation_factorial() const;

  bool operator==(const OccupationState &) const = default;
  auto operator<=>(const OccupationState &) const = default;

private:
  std::vector<Vertex> vertices_;
};

/// C(n+p-1, p) for bosons, C(n, p) for fermions.
std::uint64_t basis_dimension(int n, const WalkSpec &spec);

/// Lexicographically ordered particles-on-vertices basis.
std::vector<OccupationState> enumerate_basis(int n, const WalkSpec &spec);

struct Propagator1P {
  Eigen::MatrixXcd matrix;
  double t = 0;
};

/// U = exp(iAt) via the eigendecomposition of the symmetric adjacency matrix.
Propagator1P single_particle_propagator(const Graph &g, double t);

/// Amplitude for arbitrary (unsorted) vertex lists. Fermions use det of the
/// conj(U) submatrix; bosons use the permanent of the U submatrix divided by
/// sqrt of the occupation factorials of bra and ket.
std::complex<double> raw_amplitude(const Propagator1P &u1, std::span<const Vertex> bra,
                                   std::span<const Vertex> ket, Statistics statistics);

/// Green's function <bra| U_p |ket> in the canonical (sorted) basis.
std::complex<double> greens_function(const Propagator1P &u1, const OccupationState &bra,
                                     const OccupationState &ket, Statistics statistics);

struct ManyBodyOperator {
  std::vector<OccupationState> basis;
  Eigen::MatrixXcd matrix;
};

inline constexpr std::size_t kDefaultOracleCap = 5000;

/// Many-body Hamiltonian in the particles-on-vertices basis: -A^(+)p for
/// bosons, +A^(+)p for fermions, built from hopping operators.
Eigen::MatrixXd many_body_hamiltonian(const Graph &g, const WalkSpec &spec,
                                      const std::vector<OccupationState> &basis);

/// exp(-itH) by dense Hermitian eigendecomposition. Validation oracle only;
/// throws std::length_error when the basis exceeds `cap`.
ManyBodyOperator direct_evolution_operator(const Graph &g, const WalkSpec &spec,
                                           std::size_t cap = kDefaultOracleCap);

/// Receives the magnitudes of one bra row of the many-body operator, in
/// lexicographic ket order.
using RowConsumer = std::function<void(std::size_t bra_index, std::span<const double> magnitudes)>;

/// Streams |G| for bra rows [bra_begin, bra_end); returns the element count.
std::uint64_t stream_green_rows(const Graph &g, const WalkSpec &spec, std::size_t bra_begin,
                                std::size_t bra_end, const RowConsumer &consumer);

/// Invokes consumer(|G|) for every ordered (bra, ket) pair, row-major over the
/// lexicographic basis. Returns the number of invocations.
template <typename Consumer>
std::uint64_t stream_green_magnitudes(const Graph &g, const WalkSpec &spec, Consumer &&consumer) {
  return stream_green_rows(g, spec, 0, basis_dimension(g.n(), spec),
                           [&](std::size_t, std::span<const double> row) {
                             for (double v : row)
                               consumer(v);
                           });
}

} // namespace qwalk

#endif // QWALK_WALK_HPP
