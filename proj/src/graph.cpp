#include "qwalk/graph.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace qwalk {

Graph::Graph(AdjacencyMatrix adjacency) : adjacency_(std::move(adjacency)) {
  const auto n = adjacency_.rows();
  if (n < 1 || adjacency_.cols() != n)
    throw std::invalid_argument("adjacency matrix must be square with n >= 1");
  for (Eigen::Index i = 0; i < n; ++i) {
    if (adjacency_(i, i) != 0)
      throw std::invalid_argument("self-loop at vertex " + std::to_string(i));
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const int a = adjacency_(i, j);
      if ((a != 0 && a != 1) || a != adjacency_(j, i))
        throw std::invalid_argument("adjacency must be symmetric 0/1");
    }
  }
  words_ = (static_cast<std::size_t>(n) + 63) / 64;
  rows_.assign(n, std::vector<std::uint64_t>(words_, 0));
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j)
      if (adjacency_(i, j))
        rows_[i][j / 64] |= std::uint64_t{1} << (j % 64);
}

Graph Graph::empty(int n) { return Graph(AdjacencyMatrix::Zero(n, n)); }

Graph Graph::from_edges(int n, std::span<const std::pair<Vertex, Vertex>> edges) {
  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  for (auto [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n || u == v)
      throw std::invalid_argument("invalid edge");
    a(u, v) = a(v, u) = 1;
  }
  return Graph(std::move(a));
}

std::size_t Graph::edge_count() const {
  return static_cast<std::size_t>(adjacency_.sum()) / 2;
}

VertexPermutation::VertexPermutation(std::vector<Vertex> mapping)
    : mapping_(std::move(mapping)) {
  std::vector<bool> seen(mapping_.size(), false);
  for (Vertex v : mapping_) {
    if (v < 0 || static_cast<std::size_t>(v) >= mapping_.size() || seen[v])
      throw std::invalid_argument("mapping is not a bijection");
    seen[v] = true;
  }
}

VertexPermutation VertexPermutation::identity(int n) {
  std::vector<Vertex> m(n);
  std::iota(m.begin(), m.end(), 0);
  return VertexPermutation(std::move(m));
}

VertexPermutation VertexPermutation::inverse() const {
  std::vector<Vertex> inv(mapping_.size());
  for (std::size_t i = 0; i < mapping_.size(); ++i)
    inv[mapping_[i]] = static_cast<Vertex>(i);
  return VertexPermutation(std::move(inv));
}

std::string to_string(const SrgParams &p) {
  return "(" + std::to_string(p.n) + "," + std::to_string(p.k) + "," +
         std::to_string(p.lambda) + "," + std::to_string(p.mu) + ")";
}

std::optional<SrgParams> detect_srg(const Graph &g) {
  const int n = g.n();
  if (n < 2)
    return std::nullopt;
  const int k = g.degree(0);
  for (Vertex v = 1; v < n; ++v)
    if (g.degree(v) != k)
      return std::nullopt;
  if (k == 0 || k == n - 1)
    return std::nullopt;

  const AdjacencyMatrix a2 = g.adjacency() * g.adjacency();
  std::optional<int> lambda, mu;
  for (Vertex i = 0; i < n; ++i) {
    for (Vertex j = i + 1; j < n; ++j) {
      auto &slot = g.adjacent(i, j) ? lambda : mu;
      if (!slot)
        slot = a2(i, j);
      else if (*slot != a2(i, j))
        return std::nullopt;
    }
  }
  if (!lambda || !mu)
    return std::nullopt;
  return SrgParams{n, k, *lambda, *mu};
}

bool satisfies_srg_identity(const Graph &g, const SrgParams &p) {
  const int n = g.n();
  if (n != p.n)
    return false;
  const AdjacencyMatrix &a = g.adjacency();
  const AdjacencyMatrix lhs = a * a;
  const AdjacencyMatrix rhs = (p.k - p.mu) * AdjacencyMatrix::Identity(n, n) +
                              AdjacencyMatrix::Constant(n, n, p.mu) +
                              (p.lambda - p.mu) * a;
  return lhs == rhs;
}

Graph apply_permutation(const Graph &g, const VertexPermutation &perm) {
  const int n = g.n();
  if (perm.size() != n)
    throw std::invalid_argument("permutation size does not match graph");
  AdjacencyMatrix b = AdjacencyMatrix::Zero(n, n);
  for (Vertex i = 0; i < n; ++i)
    for (Vertex j = 0; j < n; ++j)
      b(perm.image(i), perm.image(j)) = g.adjacency()(i, j);
  return Graph(std::move(b));
}

int common_neighbors(const Graph &g, std::span<const Vertex> vertices) {
  if (vertices.empty())
    throw std::invalid_argument("vertex set must be nonempty");
  for (Vertex v : vertices)
    if (v < 0 || v >= g.n())
      throw std::out_of_range("vertex id " + std::to_string(v) + " out of range");
  std::vector<std::uint64_t> acc = g.neighbor_words(vertices[0]);
  for (Vertex v : vertices.subspan(1)) {
    const auto &row = g.neighbor_words(v);
    for (std::size_t w = 0; w < acc.size(); ++w)
      acc[w] &= row[w];
  }
  int count = 0;
  for (auto w : acc)
    count += std::popcount(w);
  return count;
}

std::uint64_t content_hash(const Graph &g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : encode_graph6(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

} // namespace qwalk
