#ifndef QWALK_GRAPH_HPP
#define QWALK_GRAPH_HPP

#include <Eigen/Core>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace qwalk {

using Vertex = int;

/// Integer adjacency matrix; entries are 0 or 1.
using AdjacencyMatrix = Eigen::Matrix<int, Eigen::Dynamic, Eigen::Dynamic>;

/// Simple undirected graph on vertices 0..n-1.
///
/// Immutable once built. The constructor rejects asymmetric matrices,
/// nonzero diagonals and entries other than 0/1.
class Graph {
public:
  explicit Graph(AdjacencyMatrix adjacency);

  static Graph empty(int n);
  static Graph from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges);

  int n() const { return static_cast<int>(adjacency_.rows()); }
  bool adjacent(Vertex u, Vertex v) const { return adjacency_(u, v) != 0; }
  int degree(Vertex v) const { return adjacency_.row(v).sum(); }
  std::size_t edge_count() const;

  const AdjacencyMatrix &adjacency() const { return adjacency_; }

  /// Adjacency matrix converted to an arbitrary scalar type.
  template <typename Scalar>
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency_as() const {
    return adjacency_.cast<Scalar>();
  }

  /// Bitset rows: bit v of word v/64 in row u is set iff u ~ v.
  const std::vector<std::uint64_t> &neighbor_words(Vertex u) const { return rows_[u]; }
  std::size_t words_per_row() const { return words_; }

  bool operator==(const Graph &other) const { return adjacency_ == other.adjacency_; }

private:
  AdjacencyMatrix adjacency_;
  std::size_t words_ = 0;
  std::vector<std::vector<std::uint64_t>> rows_;
};

/// Bijection on {0..n-1}; image(i) is where vertex i is sent.
class VertexPermutation {
public:
  explicit VertexPermutation(std::vector<Vertex> mapping);

  static VertexPermutation identity(int n);

  int size() const { return static_cast<int>(mapping_.size()); }
  Vertex image(Vertex v) const { return mapping_[v]; }
  const std::vector<Vertex> &mapping() const { return mapping_; }

  VertexPermutation inverse() const;

private:
  std::vector<Vertex> mapping_;
};

struct SrgParams {
  int n = 0;
  int k = 0;
  int lambda = 0;
  int mu = 0;

  bool operator==(const SrgParams &) const = default;
};

std::string to_string(const SrgParams &p);

/// Error raised while decoding graph6 text; offset() is the byte position.
class Graph6Error : public std::runtime_error {
public:
  Graph6Error(std::string reason, std::size_t offset);
  std::size_t offset() const { return offset_; }
  const std::string &reason() const { return reason_; }

private:
  std::string reason_;
  std::size_t offset_;
};

inline constexpr int kGraph6MaxVertices = 258047;

Graph decode_graph6(std::string_view text);
std::string encode_graph6(const Graph &g);

/// Reads every record of a graph6 file. Blank lines and a leading
/// ">>graph6<<" header are skipped.
std::vector<Graph> read_graph6_file(const std::string &path);
std::vector<Graph> parse_graph6_lines(std::string_view text);

/// Returns the SRG parameters iff g is strongly regular. Complete and
/// edgeless graphs are not reported as SRGs.
std::optional<SrgParams> detect_srg(const Graph &g);

/// Checks A^2 == (k-mu) I + mu J + (lambda-mu) A in integer arithmetic.
bool satisfies_srg_identity(const Graph &g, const SrgParams &p);

/// Relabels g so that vertex v of g becomes vertex perm.image(v).
Graph apply_permutation(const Graph &g, const VertexPermutation &perm);

/// Number of vertices adjacent to every member of `vertices`.
int common_neighbors(const Graph &g, std::span<const Vertex> vertices);

/// 64-bit FNV-1a over the graph6 encoding. Relabelled graphs hash differently.
std::uint64_t content_hash(const Graph &g);

} // namespace qwalk

#endif // QWALK_GRAPH_HPP
