#include "qwalk/linalg.hpp"
#include "qwalk/srg_algebra.hpp"
#include "qwalk/walk.hpp"
#include "support.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace qwalk;

namespace {

const Statistics kBoth[] = {Statistics::boson, Statistics::fermion};

double max_dev_from_identity(const Eigen::MatrixXcd &u) {
  const auto n = u.rows();
  return (u * u.adjoint() - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
}

} // namespace

TEST_CASE("basis dimensions") {
  CHECK(enumerate_basis(16, {3, Statistics::fermion}).size() == 560);
  CHECK(enumerate_basis(16, {3, Statistics::boson}).size() == 816);
  CHECK(enumerate_basis(40, {4, Statistics::fermion}).size() == 91390);
  CHECK(basis_dimension(40, {4, Statistics::fermion}) == 91390);
  CHECK(basis_dimension(26, {4, Statistics::boson}) == 23751);
  CHECK_THROWS_AS(enumerate_basis(3, {4, Statistics::fermion}), std::invalid_argument);
  CHECK_NOTHROW(enumerate_basis(3, {4, Statistics::boson}));
}

TEST_CASE("basis is lexicographic and canonical") {
  for (auto st : kBoth) {
    const auto basis = enumerate_basis(6, {3, st});
    CHECK(std::is_sorted(basis.begin(), basis.end()));
    CHECK(std::adjacent_find(basis.begin(), basis.end()) == basis.end());
    for (const auto &s : basis)
      CHECK(std::is_sorted(s.vertices().begin(), s.vertices().end()));
  }
}

TEST_CASE("occupation states") {
  CHECK_THROWS_AS(OccupationState({1, 1}, Statistics::fermion), std::invalid_argument);
  const OccupationState s({4, 1, 4, 4}, Statistics::boson);
  CHECK(s.vertices() == std::vector<Vertex>{1, 4, 4, 4});
  CHECK(s.occupation_factorial() == 6);
  CHECK(parse_statistics("fermions") == Statistics::fermion);
  CHECK(parse_statistics("b") == Statistics::boson);
  CHECK_THROWS_AS(parse_statistics("anyon"), std::invalid_argument);
}

TEST_CASE("single particle propagator") {
  const Graph p = test::petersen();
  const auto u0 = single_particle_propagator(p, 0.0);
  CHECK((u0.matrix - Eigen::MatrixXcd::Identity(10, 10)).cwiseAbs().maxCoeff() < 1e-12);

  const auto k2 = single_particle_propagator(decode_graph6("A_"), 1.0);
  CHECK(std::abs(k2.matrix(0, 0) - std::cos(1.0)) < 1e-14);
  CHECK(std::abs(k2.matrix(1, 1) - std::cos(1.0)) < 1e-14);
  CHECK(std::abs(k2.matrix(0, 1) - std::complex<double>(0, std::sin(1.0))) < 1e-14);

  for (const auto &name : test::bundled_families()) {
    for (const auto &g : test::family(name)) {
      const auto u = single_particle_propagator(g, 1.0);
      CHECK(max_dev_from_identity(u.matrix) < 1e-10);
      const auto c = propagator_coefficients(*detect_srg(g), 1.0);
      CHECK((u.matrix - c.reconstruct(g)).cwiseAbs().maxCoeff() < 1e-10);
    }
  }
}

TEST_CASE("one-particle Green's functions are propagator entries") {
  const Graph g = test::petersen();
  const auto u = single_particle_propagator(g, 0.8);
  for (Vertex i = 0; i < 10; ++i)
    for (Vertex j = 0; j < 10; ++j) {
      const OccupationState bi({i}, Statistics::boson), kj({j}, Statistics::boson);
      CHECK(std::abs(greens_function(u, bi, kj, Statistics::boson) - u.matrix(i, j)) < 1e-15);
      CHECK(std::abs(greens_function(u, bi, kj, Statistics::fermion) - std::conj(u.matrix(i, j))) <
            1e-15);
    }
  CHECK_THROWS_AS(greens_function(u, OccupationState({1}, Statistics::boson),
                                  OccupationState({1, 2}, Statistics::boson), Statistics::boson),
                  std::invalid_argument);
}

TEST_CASE("many-body Hamiltonian is exactly symmetric") {
  std::mt19937_64 rng(5);
  for (auto st : kBoth) {
    const Graph g = test::random_graph(7, 0.5, rng);
    const WalkSpec spec{3, st};
    const auto h = many_body_hamiltonian(g, spec, enumerate_basis(7, spec));
    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("direct oracle reductions") {
  const Graph g = test::petersen();
  const auto u = single_particle_propagator(g, 1.0);
  for (auto st : kBoth) {
    const auto op = direct_evolution_operator(g, {1, st});
    CHECK((op.matrix.cwiseAbs() - u.matrix.cwiseAbs()).cwiseAbs().maxCoeff() < 1e-12);
    const auto op3 = direct_evolution_operator(g, {3, st});
    CHECK(max_dev_from_identity(op3.matrix) < 1e-8);
  }
  CHECK_THROWS_AS(direct_evolution_operator(g, {4, Statistics::boson}, 100), std::length_error);
}

TEST_CASE("Green's functions reproduce the direct oracle") {
  std::mt19937_64 rng(2024);
  int cases = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 3 + trial % 6;
    const Graph g = test::random_graph(n, 0.45, rng);
    const double t = 0.4 + 0.3 * trial;
    const auto u = single_particle_propagator(g, t);
    for (auto st : kBoth)
      for (int p = 1; p <= 3; ++p) {
        const WalkSpec spec{p, st, t};
        if (st == Statistics::fermion && p > n)
          continue;
        const auto op = direct_evolution_operator(g, spec);
        double err = 0;
        for (std::size_t a = 0; a < op.basis.size(); ++a)
          for (std::size_t b = 0; b < op.basis.size(); ++b)
            err = std::max(err, std::abs(op.matrix(a, b) - greens_function(u, op.basis[a], op.basis[b], st)));
        CHECK(err < 1e-8);
        ++cases;
      }
  }
  CHECK(cases > 60);
}

TEST_CASE("three bosons on the 4-cycle") {
  const Graph c4 = test::cycle(4);
  const WalkSpec spec{3, Statistics::boson};
  const auto op = direct_evolution_operator(c4, spec);
  const auto u = single_particle_propagator(c4, 1.0);
  CHECK(op.basis.size() == 20);
  for (std::size_t a = 0; a < op.basis.size(); ++a)
    for (std::size_t b = 0; b < op.basis.size(); ++b)
      CHECK(std::abs(std::abs(op.matrix(a, b)) -
                     std::abs(greens_function(u, op.basis[a], op.basis[b], Statistics::boson))) < 1e-8);
}

TEST_CASE("exchange symmetry of raw amplitudes") {
  const Graph g = test::family("srg_16_6_2_2.g6").front();
  const auto u = single_particle_propagator(g, 1.0);
  const Vertex bra[] = {0, 5, 9};
  const Vertex ket[] = {2, 3, 14};
  const Vertex swapped[] = {5, 0, 9};
  CHECK(std::abs(raw_amplitude(u, swapped, ket, Statistics::boson) - raw_amplitude(u, bra, ket, Statistics::boson)) <
        1e-14);
  CHECK(std::abs(raw_amplitude(u, swapped, ket, Statistics::fermion) +
                 raw_amplitude(u, bra, ket, Statistics::fermion)) < 1e-14);
  const Vertex doubled[] = {4, 4, 9};
  CHECK(std::abs(raw_amplitude(u, doubled, ket, Statistics::fermion)) < 1e-14);
}

TEST_CASE("Green's functions are relabelling equivariant") {
  std::mt19937_64 rng(99);
  const Graph g = test::random_graph(8, 0.5, rng);
  const auto perm = test::random_permutation(8, rng);
  const Graph h = apply_permutation(g, perm);
  const auto ug = single_particle_propagator(g, 1.0);
  const auto uh = single_particle_propagator(h, 1.0);
  for (auto st : kBoth) {
    for (const auto &bra : enumerate_basis(8, {2, st}))
      for (const auto &ket : enumerate_basis(8, {2, st})) {
        auto map = [&](const OccupationState &s) {
          std::vector<Vertex> v;
          for (Vertex x : s.vertices())
            v.push_back(perm.image(x));
          return OccupationState(v, st);
        };
        CHECK(std::abs(std::abs(greens_function(uh, map(bra), map(ket), st)) -
                       std::abs(greens_function(ug, bra, ket, st))) < 1e-12);
      }
  }
}

TEST_CASE("streamed rows") {
  const Graph g = test::family("srg_16_6_2_2.g6").front();
  for (auto st : kBoth) {
    const WalkSpec spec{3, st};
    double worst = 0;
    const std::uint64_t count =
        stream_green_rows(g, spec, 0, basis_dimension(16, spec), [&](std::size_t, std::span<const double> row) {
          double sum = 0;
          for (double v : row)
            sum += v * v;
          worst = std::max(worst, std::abs(sum - 1.0));
        });
    CHECK(worst < 1e-8);
    CHECK(count == (st == Statistics::fermion ? 313600u : 816u * 816u));
  }

  // A sub-range sees the same rows as the full stream.
  const WalkSpec spec{2, Statistics::boson};
  std::vector<double> full, part;
  stream_green_rows(g, spec, 0, basis_dimension(16, spec), [&](std::size_t i, std::span<const double> row) {
    if (i >= 40 && i < 50)
      full.insert(full.end(), row.begin(), row.end());
  });
  stream_green_rows(g, spec, 40, 50,
                    [&](std::size_t, std::span<const double> row) { part.insert(part.end(), row.begin(), row.end()); });
  CHECK(full == part);
}

TEST_CASE("streamed magnitudes equal the oracle multiset") {
  const Graph g = test::petersen();
  for (auto st : kBoth) {
    const WalkSpec spec{2, st};
    std::vector<double> streamed;
    stream_green_magnitudes(g, spec, [&](double v) { streamed.push_back(v); });
    const auto op = direct_evolution_operator(g, spec);
    std::vector<double> oracle;
    for (Eigen::Index i = 0; i < op.matrix.size(); ++i)
      oracle.push_back(std::abs(op.matrix.data()[i]));
    REQUIRE(streamed.size() == oracle.size());
    std::sort(streamed.begin(), streamed.end());
    std::sort(oracle.begin(), oracle.end());
    double err = 0;
    for (std::size_t i = 0; i < oracle.size(); ++i)
      err = std::max(err, std::abs(streamed[i] - oracle[i]));
    CHECK(err < 1e-10);
  }
}

TEST_CASE("four-particle streaming on a small graph matches the oracle") {
  std::mt19937_64 rng(17);
  const Graph g = test::random_graph(7, 0.5, rng);
  for (auto st : kBoth)
    for (int p : {4, 5}) {
      const WalkSpec spec{p, st, 0.9};
      const auto op = direct_evolution_operator(g, spec);
      std::vector<double> streamed;
      stream_green_magnitudes(g, spec, [&](double v) { streamed.push_back(v); });
      REQUIRE(streamed.size() == static_cast<std::size_t>(op.matrix.size()));
      const auto n = op.matrix.rows();
      double err = 0;
      for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
          err = std::max(err, std::abs(streamed[a * n + b] - std::abs(op.matrix(a, b))));
      CHECK(err < 1e-8);
    }
}

TEST_CASE("fermion conjugation convention leaves magnitudes unchanged") {
  std::mt19937_64 rng(31);
  const Graph g = test::random_graph(9, 0.5, rng);
  const auto u = single_particle_propagator(g, 1.3);
  for (const auto &bra : enumerate_basis(9, {3, Statistics::fermion}))
    for (const auto &ket : enumerate_basis(9, {3, Statistics::fermion})) {
      Eigen::Matrix3cd sub;
      for (int x = 0; x < 3; ++x)
        for (int y = 0; y < 3; ++y)
          sub(x, y) = u.matrix(bra.vertices()[x], ket.vertices()[y]);
      const auto amp = greens_function(u, bra, ket, Statistics::fermion);
      CHECK(std::abs(amp - std::conj(determinant(sub))) < 1e-13);
      CHECK(std::abs(std::abs(amp) - std::abs(determinant(sub))) < 1e-13);
    }
}
