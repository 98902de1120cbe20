#ifndef QWALK_TESTS_SUPPORT_HPP
#define QWALK_TESTS_SUPPORT_HPP

#include "qwalk/graph.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace qwalk::test {

inline std::string data_file(const std::string &name) { return std::string(QWALK_DATA_DIR) + "/" + name; }

inline std::vector<Graph> family(const std::string &name) { return read_graph6_file(data_file(name)); }

inline const std::vector<std::string> &bundled_families() {
  static const std::vector<std::string> names = {
      "srg_10_3_0_1.g6",  "srg_13_6_2_3.g6",  "srg_16_5_0_2.g6",  "srg_16_6_2_2.g6",
      "srg_16_9_4_6.g6",  "srg_25_12_5_6.g6", "srg_26_10_3_4.g6", "srg_28_12_6_4.g6"};
  return names;
}

inline Graph petersen() { return decode_graph6("IheA@GUAo"); }

inline Graph cycle(int n) {
  std::vector<std::pair<Vertex, Vertex>> e;
  for (int i = 0; i < n; ++i)
    e.emplace_back(i, (i + 1) % n);
  return Graph::from_edges(n, e);
}

inline Graph random_graph(int n, double density, std::mt19937_64 &rng) {
  std::bernoulli_distribution coin(density);
  AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (coin(rng))
        a(i, j) = a(j, i) = 1;
  return Graph(a);
}

inline VertexPermutation random_permutation(int n, std::mt19937_64 &rng) {
  std::vector<Vertex> m(n);
  std::iota(m.begin(), m.end(), 0);
  std::shuffle(m.begin(), m.end(), rng);
  return VertexPermutation(m);
}

} // namespace qwalk::test

#endif
