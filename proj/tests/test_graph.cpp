#include "support.hpp"

#include <doctest.h>

using namespace qwalk;

TEST_CASE("graph6 reference records") {
  const Graph one = decode_graph6("@");
  CHECK(one.n() == 1);
  CHECK(one.edge_count() == 0);
  CHECK(encode_graph6(Graph::empty(1)) == "@");

  const Graph k2 = decode_graph6("A_");
  CHECK(k2.n() == 2);
  CHECK(k2.adjacent(0, 1));
  CHECK(encode_graph6(k2) == "A_");

  const Graph p = test::petersen();
  CHECK(p.n() == 10);
  CHECK(p.edge_count() == 15);
  for (Vertex v = 0; v < 10; ++v)
    CHECK(p.degree(v) == 3);
  CHECK(p.adjacent(0, 1));
  CHECK(p.adjacent(5, 7));
  CHECK_FALSE(p.adjacent(5, 6));

  CHECK(encode_graph6(test::cycle(6)) == "EhEG");
}

TEST_CASE("graph6 header and line endings") {
  CHECK(decode_graph6(">>graph6<<IheA@GUAo") == test::petersen());
  CHECK(decode_graph6("IheA@GUAo\r\n") == test::petersen());
  const auto gs = parse_graph6_lines(">>graph6<<@\n\nA_\r\nIheA@GUAo");
  REQUIRE(gs.size() == 3);
  CHECK(gs[2] == test::petersen());
}

TEST_CASE("graph6 round trip") {
  std::mt19937_64 rng(7);
  for (int n : {1, 2, 3, 5, 6, 7, 12, 62, 63, 64, 100}) {
    for (double d : {0.0, 0.3, 0.5, 1.0}) {
      const Graph g = test::random_graph(n, d, rng);
      const std::string s = encode_graph6(g);
      CHECK(decode_graph6(s) == g);
      if (n >= 63)
        CHECK(s[0] == '~');
    }
  }
}

TEST_CASE("graph6 errors carry byte offsets") {
  auto offset_of = [](std::string_view s) -> long {
    try {
      decode_graph6(s);
    } catch (const Graph6Error &e) {
      return static_cast<long>(e.offset());
    }
    return -1;
  };
  CHECK(offset_of("") == 0);
  CHECK(offset_of("A") == 1);     // truncated body
  CHECK(offset_of("A_?") == 2);   // trailing byte
  CHECK(offset_of("A`") == 1);    // padding bit set
  CHECK(offset_of("A ") == 1);    // below the printable range
  CHECK(offset_of("~~??????") == 1);
  CHECK(offset_of("~??^") == 1);  // extended size below 63

  try {
    parse_graph6_lines("@\nA_\nA`");
    FAIL("expected an error");
  } catch (const Graph6Error &e) {
    CHECK(e.offset() == 6);
    CHECK(e.reason().find("record 3") != std::string::npos);
  }
}

TEST_CASE("graph construction is validated") {
  AdjacencyMatrix a = AdjacencyMatrix::Zero(3, 3);
  a(0, 1) = 1;
  CHECK_THROWS_AS(Graph{a}, std::invalid_argument);
  a(1, 0) = 1;
  a(2, 2) = 1;
  CHECK_THROWS_AS(Graph{a}, std::invalid_argument);
  CHECK_THROWS_AS(VertexPermutation({0, 0, 1}), std::invalid_argument);
}

TEST_CASE("detect_srg") {
  CHECK(detect_srg(test::petersen()) == SrgParams{10, 3, 0, 1});
  for (const auto &g : test::family("srg_16_6_2_2.g6"))
    CHECK(detect_srg(g) == SrgParams{16, 6, 2, 2});
  CHECK_FALSE(detect_srg(test::cycle(6)).has_value());
  CHECK(detect_srg(test::cycle(5)) == SrgParams{5, 2, 0, 1});
  CHECK_FALSE(detect_srg(Graph::empty(4)).has_value());
}

TEST_CASE("every bundled graph is a certified SRG of its file's family") {
  for (const auto &name : test::bundled_families()) {
    const auto gs = test::family(name);
    REQUIRE_FALSE(gs.empty());
    const auto p = detect_srg(gs.front());
    REQUIRE(p.has_value());
    CHECK(name == "srg_" + std::to_string(p->n) + "_" + std::to_string(p->k) + "_" +
                      std::to_string(p->lambda) + "_" + std::to_string(p->mu) + ".g6");
    for (const auto &g : gs) {
      CHECK(detect_srg(g) == p);
      CHECK(satisfies_srg_identity(g, *p));
    }
  }
}

TEST_CASE("permutations") {
  std::mt19937_64 rng(11);
  const Graph p = test::petersen();
  CHECK(apply_permutation(p, VertexPermutation::identity(10)) == p);
  for (int i = 0; i < 20; ++i) {
    const auto perm = test::random_permutation(10, rng);
    const Graph q = apply_permutation(p, perm);
    CHECK(apply_permutation(q, perm.inverse()) == p);
    CHECK(detect_srg(q) == SrgParams{10, 3, 0, 1});
    for (Vertex u = 0; u < 10; ++u)
      for (Vertex v = 0; v < 10; ++v)
        CHECK(q.adjacent(perm.image(u), perm.image(v)) == p.adjacent(u, v));
  }
  CHECK_THROWS_AS(apply_permutation(p, VertexPermutation::identity(9)), std::invalid_argument);
}

TEST_CASE("common_neighbors") {
  const Graph p = test::petersen();
  const Vertex one[] = {0, 2, 6};
  const Vertex zero[] = {0, 2, 8};
  CHECK(common_neighbors(p, one) == 1);
  CHECK(common_neighbors(p, zero) == 0);

  for (const auto &g : test::family("srg_26_10_3_4.g6"))
    for (Vertex u = 0; u < g.n(); ++u)
      for (Vertex v = u + 1; v < g.n(); ++v) {
        const Vertex pair[] = {u, v};
        CHECK(common_neighbors(g, pair) == (g.adjacent(u, v) ? 3 : 4));
      }

  const Vertex bad[] = {0, 10};
  CHECK_THROWS_AS(common_neighbors(p, bad), std::out_of_range);
}

TEST_CASE("content hash separates relabellings") {
  std::mt19937_64 rng(3);
  const Graph g = test::family("srg_16_6_2_2.g6").front();
  CHECK(content_hash(g) == content_hash(decode_graph6(encode_graph6(g))));
  const Graph h = apply_permutation(g, test::random_permutation(16, rng));
  CHECK(content_hash(g) != content_hash(h));
}
