// Acceptance runner: one PASS/FAIL line per criterion.
//   acceptance          criteria 1-11
//   acceptance --slow   criterion 12 (four-fermion spot check)
//   acceptance --all    everything

#include "qwalk/bounds.hpp"
#include "qwalk/fingerprint.hpp"
#include "qwalk/widgets.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

using namespace qwalk;

namespace {

std::vector<Graph> family(const std::string &name) {
  return read_graph6_file(std::string(QWALK_DATA_DIR) + "/" + name);
}

const std::vector<std::string> kFamilies = {"srg_10_3_0_1.g6",  "srg_13_6_2_3.g6",  "srg_16_5_0_2.g6",
                                            "srg_16_6_2_2.g6",  "srg_16_9_4_6.g6",  "srg_25_12_5_6.g6",
                                            "srg_26_10_3_4.g6", "srg_28_12_6_4.g6"};

const Statistics kBoth[] = {Statistics::boson, Statistics::fermion};

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char *f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

// Failures (undistinguished pairs) of a family for one walk.
std::vector<std::pair<int, int>> failing_pairs(const std::vector<Graph> &gs, const WalkSpec &spec) {
  std::vector<Fingerprint> fps;
  for (const auto &g : gs)
    fps.push_back(build_fingerprint(g, spec));
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < gs.size(); ++i)
    for (std::size_t j = i + 1; j < gs.size(); ++j)
      if (delta(fps[i], fps[j]) <= kDefaultThreshold)
        out.emplace_back(static_cast<int>(i), static_cast<int>(j));
  return out;
}

Outcome two_particle_nullity() {
  double worst = 0;
  int pairs = 0;
  for (const auto &name : kFamilies) {
    const auto gs = family(name);
    if (gs.size() < 2 || gs.front().n() > 29)
      continue;
    for (auto st : kBoth) {
      std::vector<Fingerprint> fps;
      for (const auto &g : gs)
        fps.push_back(build_fingerprint(g, {2, st}));
      for (std::size_t i = 0; i < fps.size(); ++i)
        for (std::size_t j = i + 1; j < fps.size(); ++j) {
          worst = std::max(worst, delta(fps[i], fps[j]));
          ++pairs;
        }
    }
  }
  return {worst <= 1e-6, fmt("%d pair walks, max delta %.3g", pairs, worst)};
}

Outcome three_particle_success() {
  const auto gs = family("srg_16_6_2_2.g6");
  const auto b = compare(gs[0], gs[1], {3, Statistics::boson});
  const auto f = compare(gs[0], gs[1], {3, Statistics::fermion});
  return {b.delta > 1e-6 && f.delta > 1e-6, fmt("boson delta %.4g, fermion delta %.4g", b.delta, f.delta)};
}

Outcome table_row_26() {
  const auto gs = family("srg_26_10_3_4.g6");
  const auto fb = failing_pairs(gs, {3, Statistics::boson});
  const auto ff = failing_pairs(gs, {3, Statistics::fermion});
  const std::size_t comparisons = gs.size() * (gs.size() - 1) / 2;
  return {gs.size() == 10 && comparisons == 45 && fb.size() == 1 && ff.size() == 1,
          fmt("%zu graphs, %zu comparisons, boson failures %zu, fermion failures %zu", gs.size(), comparisons,
              fb.size(), ff.size())};
}

Outcome empty_widget_counts() {
  const auto gs = family("srg_16_6_2_2.g6");
  const Widget w = Widget::parse("empty3");
  std::multiset<std::uint64_t> counts;
  for (const auto &g : gs)
    counts.insert(count_widget(g, w).multiplicity);
  std::string seen;
  for (auto c : counts)
    seen += (seen.empty() ? "" : ", ") + std::to_string(c);
  return {counts == std::multiset<std::uint64_t>{512, 608}, "counts {" + seen + "}"};
}

Outcome two_particle_closed_form() {
  int graphs = 0, families = 0, mismatches = 0;
  const Widget w = Widget::parse("empty2");
  for (const auto &name : kFamilies) {
    ++families;
    for (const auto &g : family(name)) {
      ++graphs;
      const auto params = detect_srg(g);
      if (!params || count_widget(g, w).multiplicity != two_particle_empty_count(*params))
        ++mismatches;
    }
  }
  return {mismatches == 0 && families >= 5,
          fmt("%d graphs in %d families, %d mismatches", graphs, families, mismatches)};
}

Outcome petersen_triples() {
  const Graph p = decode_graph6("IheA@GUAo");
  const auto census = triple_neighbor_census(p);
  auto at = [&](int k) { return census.count(k) ? census.at(k) : 0; };
  return {at(0) > 0 && at(1) > 0,
          fmt("triples with 0 common neighbours: %llu, with 1: %llu", static_cast<unsigned long long>(at(0)),
              static_cast<unsigned long long>(at(1)))};
}

Outcome oracle_equivalence() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> size(5, 8);
  std::bernoulli_distribution coin(0.5);
  double worst = 0;
  int walks = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = size(rng);
    AdjacencyMatrix a = AdjacencyMatrix::Zero(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (coin(rng))
          a(i, j) = a(j, i) = 1;
    const Graph g(a);
    const auto u = single_particle_propagator(g, 1.0);
    for (auto st : kBoth)
      for (int p = 1; p <= n || st == Statistics::boson; ++p) {
        const WalkSpec spec{p, st};
        if (basis_dimension(n, spec) > 500)
          break;
        const auto op = direct_evolution_operator(g, spec);
        for (std::size_t r = 0; r < op.basis.size(); ++r)
          for (std::size_t c = 0; c < op.basis.size(); ++c)
            worst = std::max(worst, std::abs(std::abs(op.matrix(r, c)) -
                                             std::abs(greens_function(u, op.basis[r], op.basis[c], st))));
        ++walks;
      }
  }
  return {worst <= 1e-8, fmt("50 graphs, %d walks, max |difference| %.3g", walks, worst)};
}

Outcome noise_floor() {
  std::vector<Graph> graphs;
  for (const auto &name : kFamilies)
    graphs.push_back(family(name).front());
  graphs.push_back(family("srg_16_6_2_2.g6").back());
  graphs.push_back(family("srg_26_10_3_4.g6").back());
  std::mt19937_64 rng(77);
  double worst = 0;
  int comparisons = 0;
  for (const auto &g : graphs) {
    for (int k = 0; k < 10; ++k) {
      std::vector<Vertex> m(g.n());
      std::iota(m.begin(), m.end(), 0);
      std::shuffle(m.begin(), m.end(), rng);
      const Graph h = apply_permutation(g, VertexPermutation(m));
      const WalkSpec spec{1 + k % 3, kBoth[k % 2]};
      worst = std::max(worst, compare(g, h, spec).delta);
      ++comparisons;
    }
  }
  return {worst <= 1e-6, fmt("%d relabellings of %zu graphs, max delta %.3g", comparisons, graphs.size(), worst)};
}

Outcome bin_plateau() {
  const auto widths = log_spaced_widths(-7, -4, 2);
  bool ok = true;
  std::string detail;
  for (const auto &g : family("srg_16_6_2_2.g6")) {
    std::string counts;
    for (const auto &[w, c] : bin_sweep(g, {3, Statistics::fermion}, widths)) {
      ok = ok && std::abs(static_cast<double>(c) - 150.0) <= 0.05 * 150.0;
      counts += (counts.empty() ? "" : ",") + std::to_string(c);
    }
    detail += (detail.empty() ? "" : "; ") + std::string("distinct bins ") + counts;
  }
  return {ok, detail + " over widths 1e-7..1e-4 (target 150 +/- 5%)"};
}

Outcome dimension_check() {
  const auto n = enumerate_basis(40, {4, Statistics::fermion}).size();
  return {n == 91390, fmt("%zu states", n)};
}

Outcome bound_divergence() {
  std::int64_t crossover = 0;
  double previous = -INFINITY;
  bool monotone = true;
  double last = 0;
  for (std::int64_t s = 2; s * s <= 1000000; ++s) {
    const double v = ratio_lower_bound_log(3, s * s).log_R_lower;
    if (crossover == 0 && v > 0)
      crossover = s * s;
    if (crossover != 0 && !(v > 0 && v > previous))
      monotone = false;
    previous = last = v;
  }
  return {crossover != 0 && monotone,
          fmt("crossover at N=%lld, log R at N=1e6 is %.4g", static_cast<long long>(crossover), last)};
}

Outcome four_fermion_spot_check() {
  const auto gs = family("srg_26_10_3_4.g6");
  const auto fb = failing_pairs(gs, {3, Statistics::boson});
  const auto ff = failing_pairs(gs, {3, Statistics::fermion});
  std::set<std::pair<int, int>> hard(fb.begin(), fb.end());
  hard.insert(ff.begin(), ff.end());
  if (hard.size() != 1)
    return {false, fmt("expected one hard pair, found %zu", hard.size())};
  const auto [i, j] = *hard.begin();
  const auto r = compare(gs[i], gs[j], {4, Statistics::fermion});
  return {r.distinguished, fmt("pair (%d,%d), four-fermion delta %.4g", i, j, r.delta)};
}

} // namespace

int main(int argc, char **argv) {
  bool fast = true, slow = false;
  for (int i = 1; i < argc; ++i) {
    const std::string a = argv[i];
    if (a == "--slow") {
      fast = false;
      slow = true;
    } else if (a == "--all") {
      slow = true;
    } else {
      std::fprintf(stderr, "usage: acceptance [--slow | --all]\n");
      return 2;
    }
  }

  struct Criterion {
    int id;
    const char *name;
    std::function<Outcome()> run;
    bool is_slow;
  };
  const std::vector<Criterion> criteria = {
      {1, "two-particle walks do not separate same-family SRGs", two_particle_nullity, false},
      {2, "three-particle walks separate the (16,6,2,2) pair", three_particle_success, false},
      {3, "(26,10,3,4) family row at p=3", table_row_26, false},
      {4, "empty 3-widget counts on the (16,6,2,2) pair", empty_widget_counts, false},
      {5, "two-particle empty widget closed form", two_particle_closed_form, false},
      {6, "Petersen independent-triple witnesses", petersen_triples, false},
      {7, "Green's functions match the direct oracle", oracle_equivalence, false},
      {8, "relabelling noise floor", noise_floor, false},
      {9, "3-fermion bin-width plateau near 150", bin_plateau, false},
      {10, "4 fermions on 40 vertices basis size", dimension_check, false},
      {11, "ratio bound diverges for p=3", bound_divergence, false},
      {12, "4-fermion walk separates the p=3 failure", four_fermion_spot_check, true},
  };

  int failed = 0;
  for (const auto &c : criteria) {
    if ((c.is_slow && !slow) || (!c.is_slow && !fast))
      continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception &e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2d  %-52s %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
