#include "qwalk/widgets.hpp"

#include "qwalk/linalg.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace qwalk {

namespace {

constexpr int kMaxCanonicalParticles = 6;

std::vector<std::vector<int>> all_permutations(int p) {
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

std::vector<Relation> permuted(const std::vector<Relation> &rel, int p, const std::vector<int> &rows,
                               const std::vector<int> &cols) {
  std::vector<Relation> out(rel.size());
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y)
      out[x * p + y] = rel[rows[x] * p + cols[y]];
  return out;
}

} // namespace

Widget::Widget(int particles, std::vector<Relation> relations)
    : p_(particles), rel_(std::move(relations)) {
  if (p_ < 1)
    throw std::invalid_argument("widget needs at least one particle");
  if (rel_.size() != static_cast<std::size_t>(p_) * p_)
    throw std::invalid_argument("widget relation matrix must be p x p");
  for (int x = 0; x < p_; ++x) {
    int row_same = 0, col_same = 0;
    for (int y = 0; y < p_; ++y) {
      row_same += at(x, y) == Relation::same;
      col_same += at(y, x) == Relation::same;
    }
    if (row_same > 1 || col_same > 1)
      throw std::invalid_argument("SAME relations must form a partial matching");
  }
}

Widget Widget::parse(std::string_view text) {
  if (text == "empty2")
    return Widget(2, std::vector<Relation>(4, Relation::neither));
  if (text == "empty3")
    return Widget(3, std::vector<Relation>(9, Relation::neither));
  if (text == "complete3")
    return Widget(3, std::vector<Relation>(9, Relation::edge));

  std::vector<std::string> rows(1);
  for (char c : text) {
    if (c == '/' || c == ',' || c == '\n' || c == ';') {
      rows.emplace_back();
    } else if (c != ' ' && c != '\r') {
      rows.back().push_back(c);
    }
  }
  std::erase_if(rows, [](const std::string &r) { return r.empty(); });
  const int p = static_cast<int>(rows.size());
  std::vector<Relation> rel;
  for (const auto &row : rows) {
    if (static_cast<int>(row.size()) != p)
      throw std::invalid_argument("widget grid must be square: '" + std::string(text) + "'");
    for (char c : row) {
      switch (c) {
      case 'E':
      case 'e':
        rel.push_back(Relation::edge);
        break;
      case 'S':
      case 's':
        rel.push_back(Relation::same);
        break;
      case 'N':
      case 'n':
        rel.push_back(Relation::neither);
        break;
      default:
        throw std::invalid_argument(std::string("unknown widget relation '") + c + "'");
      }
    }
  }
  return Widget(p, std::move(rel));
}

Widget Widget::canonical() const {
  if (p_ > kMaxCanonicalParticles)
    throw std::invalid_argument("widget canonicalisation limited to p <= 6");
  const auto perms = all_permutations(p_);
  std::vector<Relation> best = rel_;
  for (const auto &rows : perms)
    for (const auto &cols : perms) {
      auto cand = permuted(rel_, p_, rows, cols);
      if (cand < best)
        best = std::move(cand);
    }
  return Widget(p_, std::move(best));
}

std::uint64_t Widget::stabilizer_order() const {
  if (p_ > kMaxCanonicalParticles)
    throw std::invalid_argument("widget stabilizer limited to p <= 6");
  const auto perms = all_permutations(p_);
  std::uint64_t count = 0;
  for (const auto &rows : perms)
    for (const auto &cols : perms)
      count += permuted(rel_, p_, rows, cols) == rel_;
  return count;
}

std::string Widget::to_string() const {
  std::string out;
  for (int x = 0; x < p_; ++x) {
    if (x > 0)
      out.push_back('/');
    for (int y = 0; y < p_; ++y)
      out.push_back("ESN"[static_cast<int>(at(x, y))]);
  }
  return out;
}

std::complex<double> widget_value(const Widget &w, const PropagatorCoefficients &c,
                                  Statistics statistics) {
  const int p = w.particles();
  Eigen::MatrixXcd m(p, p);
  for (int x = 0; x < p; ++x)
    for (int y = 0; y < p; ++y) {
      switch (w.at(x, y)) {
      case Relation::same:
        m(x, y) = c.alpha + c.beta;
        break;
      case Relation::edge:
        m(x, y) = c.beta + c.gamma;
        break;
      case Relation::neither:
        m(x, y) = c.beta;
        break;
      }
    }
  return statistics == Statistics::fermion ? determinant(m.conjugate()) : permanent(m);
}

namespace {

using Words = std::vector<std::uint64_t>;

struct PlacementCounter {
  const Graph &g;
  const Widget &w;
  int p;
  std::size_t words;
  std::vector<Vertex> bra;

  Words all_vertices() const {
    Words a(words, ~std::uint64_t{0});
    const int extra = static_cast<int>(words * 64) - g.n();
    if (extra > 0)
      a.back() >>= extra;
    return a;
  }

  Words relation_set(Vertex v, Relation r) const {
    const Words &nb = g.neighbor_words(v);
    Words out(words, 0);
    switch (r) {
    case Relation::edge:
      out = nb;
      break;
    case Relation::same:
      out[v / 64] = std::uint64_t{1} << (v % 64);
      break;
    case Relation::neither: {
      out = all_vertices();
      for (std::size_t i = 0; i < words; ++i)
        out[i] &= ~nb[i];
      out[v / 64] &= ~(std::uint64_t{1} << (v % 64));
      break;
    }
    }
    return out;
  }

  // Ordered ket tuples of distinct vertices consistent with the current bra.
  std::uint64_t count_kets(int slot, Words &used) const {
    Words cand = all_vertices();
    for (int x = 0; x < p; ++x) {
      const Words s = relation_set(bra[x], w.at(x, slot));
      for (std::size_t i = 0; i < words; ++i)
        cand[i] &= s[i];
    }
    for (std::size_t i = 0; i < words; ++i)
      cand[i] &= ~used[i];
    if (slot == p - 1) {
      std::uint64_t c = 0;
      for (auto word : cand)
        c += std::popcount(word);
      return c;
    }
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < words; ++i) {
      std::uint64_t word = cand[i];
      while (word) {
        const int b = std::countr_zero(word);
        word &= word - 1;
        used[i] |= std::uint64_t{1} << b;
        total += count_kets(slot + 1, used);
        used[i] &= ~(std::uint64_t{1} << b);
      }
    }
    return total;
  }

  std::uint64_t count_bras(int slot) {
    if (slot == p) {
      Words used(words, 0);
      return count_kets(0, used);
    }
    std::uint64_t total = 0;
    for (Vertex v = 0; v < g.n(); ++v) {
      if (std::find(bra.begin(), bra.begin() + slot, v) != bra.begin() + slot)
        continue;
      bra[slot] = v;
      total += count_bras(slot + 1);
    }
    return total;
  }
};

} // namespace

WidgetCount count_widget(const Graph &g, const Widget &w, int workers) {
  const int p = w.particles();
  if (p > kMaxCountedWidgetParticles)
    throw std::invalid_argument("brute-force widget counting limited to p <= 4");
  if (p > g.n())
    return {w, 0};

  const int n = g.n();
  workers = std::clamp(workers, 1, n);
  std::vector<std::uint64_t> partial(workers, 0);
  auto run = [&](int id) {
    PlacementCounter pc{g, w, p, g.words_per_row(), std::vector<Vertex>(p)};
    for (Vertex v = id; v < n; v += workers) {
      pc.bra[0] = v;
      partial[id] += pc.count_bras(1);
    }
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::thread> pool;
    for (int id = 0; id < workers; ++id)
      pool.emplace_back(run, id);
    for (auto &t : pool)
      t.join();
  }
  const std::uint64_t ordered = std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
  const std::uint64_t stab = w.stabilizer_order();
  if (ordered % stab != 0)
    throw std::logic_error("ordered placement count not divisible by stabilizer order");
  return {w, ordered / stab};
}

std::map<Widget, std::uint64_t> widget_census(const Graph &g, int particles) {
  if (particles < 1 || particles > 3)
    throw std::invalid_argument("widget census limited to 1 <= p <= 3");
  const int n = g.n();
  const int p = particles;
  if (p > n)
    return {};

  const auto perms = all_permutations(p);
  std::vector<std::vector<int>> subsets;
  std::vector<int> cur(p);
  std::iota(cur.begin(), cur.end(), 0);
  while (true) {
    subsets.push_back(cur);
    int i = p - 1;
    while (i >= 0 && cur[i] == n - p + i)
      --i;
    if (i < 0)
      break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j)
      cur[j] = cur[j - 1] + 1;
  }

  std::map<std::uint64_t, std::uint64_t> by_code;
  std::vector<Relation> rel(p * p);
  for (const auto &bra : subsets) {
    for (const auto &ket : subsets) {
      for (int x = 0; x < p; ++x)
        for (int y = 0; y < p; ++y)
          rel[x * p + y] = bra[x] == ket[y]           ? Relation::same
                           : g.adjacent(bra[x], ket[y]) ? Relation::edge
                                                        : Relation::neither;
      std::uint64_t best = UINT64_MAX;
      for (const auto &rows : perms)
        for (const auto &cols : perms) {
          std::uint64_t code = 0;
          for (int x = 0; x < p; ++x)
            for (int y = 0; y < p; ++y)
              code = code * 3 + static_cast<std::uint64_t>(rel[rows[x] * p + cols[y]]);
          best = std::min(best, code);
        }
      ++by_code[best];
    }
  }

  std::map<Widget, std::uint64_t> out;
  for (const auto &[key, count] : by_code) {
    std::uint64_t code = key;
    std::vector<Relation> r(p * p);
    for (int i = p * p - 1; i >= 0; --i) {
      r[i] = static_cast<Relation>(code % 3);
      code /= 3;
    }
    out.emplace(Widget(p, std::move(r)), count);
  }
  return out;
}

std::uint64_t two_particle_empty_count(const SrgParams &s) {
  auto choose2 = [](std::int64_t m) -> std::uint64_t {
    return m < 2 ? 0 : static_cast<std::uint64_t>(m * (m - 1) / 2);
  };
  const std::uint64_t adjacent_pairs = static_cast<std::uint64_t>(s.n) * s.k / 2;
  const std::uint64_t all_pairs = static_cast<std::uint64_t>(s.n) * (s.n - 1) / 2;
  return adjacent_pairs * choose2(s.n - 2 * s.k + s.lambda) +
         (all_pairs - adjacent_pairs) * choose2(s.n - 2 - 2 * s.k + s.mu);
}

std::map<int, std::uint64_t> triple_neighbor_census(const Graph &g) {
  std::map<int, std::uint64_t> out;
  const int n = g.n();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = a + 1; b < n; ++b) {
      if (g.adjacent(a, b))
        continue;
      for (Vertex c = b + 1; c < n; ++c) {
        if (g.adjacent(a, c) || g.adjacent(b, c))
          continue;
        const Vertex triple[] = {a, b, c};
        ++out[common_neighbors(g, triple)];
      }
    }
  return out;
}

} // namespace qwalk
