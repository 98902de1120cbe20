#include "qwalk/walk.hpp"

#include "qwalk/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace qwalk {

std::string_view to_string(Statistics s) {
  return s == Statistics::boson ? "boson" : "fermion";
}

Statistics parse_statistics(std::string_view text) {
  if (text == "boson" || text == "bosons" || text == "b")
    return Statistics::boson;
  if (text == "fermion" || text == "fermions" || text == "f")
    return Statistics::fermion;
  throw std::invalid_argument("unknown statistics '" + std::string(text) + "'");
}

void WalkSpec::validate(int n) const {
  if (particles < 1)
    throw std::invalid_argument("particle count must be >= 1");
  if (statistics == Statistics::fermion && particles > n)
    throw std::invalid_argument("cannot place " + std::to_string(particles) +
                                " fermions on " + std::to_string(n) + " vertices");
  if (!std::isfinite(time))
    throw std::invalid_argument("evolution time must be finite");
}

OccupationState::OccupationState(std::vector<Vertex> vertices, Statistics statistics)
    : vertices_(std::move(vertices)) {
  if (vertices_.empty())
    throw std::invalid_argument("occupation state needs at least one particle");
  std::sort(vertices_.begin(), vertices_.end());
  if (vertices_.front() < 0)
    throw std::invalid_argument("negative vertex id");
  if (statistics == Statistics::fermion &&
      std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw std::invalid_argument("fermion state with a doubly occupied vertex");
}

std::uint64_t OccupationState::occupation_factorial() const {
  std::uint64_t f = 1;
  std::uint64_t run = 1;
  for (std::size_t i = 1; i < vertices_.size(); ++i) {
    run = vertices_[i] == vertices_[i - 1] ? run + 1 : 1;
    f *= run;
  }
  return f;
}

namespace {

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n)
    return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX)
      throw std::overflow_error("binomial coefficient overflows uint64");
  }
  return static_cast<std::uint64_t>(r);
}

// Basis stored as a flat array of `p` vertex ids per state, lexicographic.
struct FlatBasis {
  int p = 0;
  std::size_t size = 0;
  std::vector<Vertex> ids;
  std::vector<double> inv_norm; // 1/sqrt(occupation factorial)

  const Vertex *state(std::size_t i) const { return ids.data() + i * p; }
};

FlatBasis flat_basis(int n, const WalkSpec &spec) {
  spec.validate(n);
  FlatBasis b;
  b.p = spec.particles;
  b.size = basis_dimension(n, spec);
  b.ids.reserve(b.size * b.p);
  b.inv_norm.reserve(b.size);
  const bool fermion = spec.statistics == Statistics::fermion;
  const int p = spec.particles;

  std::vector<Vertex> cur(p);
  for (int i = 0; i < p; ++i)
    cur[i] = fermion ? i : 0;
  while (true) {
    b.ids.insert(b.ids.end(), cur.begin(), cur.end());
    std::uint64_t f = 1, run = 1;
    for (int i = 1; i < p; ++i) {
      run = cur[i] == cur[i - 1] ? run + 1 : 1;
      f *= run;
    }
    b.inv_norm.push_back(1.0 / std::sqrt(static_cast<double>(f)));

    // Advance to the next tuple in lexicographic order.
    int i = p - 1;
    while (i >= 0 && cur[i] == (fermion ? n - p + i : n - 1))
      --i;
    if (i < 0)
      break;
    ++cur[i];
    for (int j = i + 1; j < p; ++j)
      cur[j] = fermion ? cur[j - 1] + 1 : cur[i];
  }
  return b;
}

// Gathers the p x p submatrix for one ket from the bra rows.
template <int P>
using Small = Eigen::Matrix<std::complex<double>, P, P>;

template <int P, bool Fermion>
void fill_row_fixed(const Eigen::MatrixXcd &bra_rows, const FlatBasis &basis, double bra_norm,
                    double *out) {
  Small<P> m;
  for (std::size_t k = 0; k < basis.size; ++k) {
    const Vertex *ket = basis.state(k);
    for (int c = 0; c < P; ++c)
      m.col(c) = bra_rows.col(ket[c]);
    const std::complex<double> a = Fermion ? determinant(m) : permanent(m);
    const double scale = Fermion ? 1.0 : bra_norm * basis.inv_norm[k];
    out[k] = std::sqrt(std::norm(a)) * scale;
  }
}

template <bool Fermion>
void fill_row_dynamic(const Eigen::MatrixXcd &bra_rows, const FlatBasis &basis, double bra_norm,
                      double *out) {
  const int p = basis.p;
  Eigen::MatrixXcd m(p, p);
  for (std::size_t k = 0; k < basis.size; ++k) {
    const Vertex *ket = basis.state(k);
    for (int c = 0; c < p; ++c)
      m.col(c) = bra_rows.col(ket[c]);
    const std::complex<double> a = Fermion ? determinant(m) : permanent(m);
    const double scale = Fermion ? 1.0 : bra_norm * basis.inv_norm[k];
    out[k] = std::abs(a) * scale;
  }
}

template <bool Fermion>
void fill_row(const Eigen::MatrixXcd &bra_rows, const FlatBasis &basis, double bra_norm,
              double *out) {
  switch (basis.p) {
  case 1:
    return fill_row_fixed<1, Fermion>(bra_rows, basis, bra_norm, out);
  case 2:
    return fill_row_fixed<2, Fermion>(bra_rows, basis, bra_norm, out);
  case 3:
    return fill_row_fixed<3, Fermion>(bra_rows, basis, bra_norm, out);
  case 4:
    return fill_row_fixed<4, Fermion>(bra_rows, basis, bra_norm, out);
  default:
    return fill_row_dynamic<Fermion>(bra_rows, basis, bra_norm, out);
  }
}

} // namespace

std::uint64_t basis_dimension(int n, const WalkSpec &spec) {
  spec.validate(n);
  return spec.statistics == Statistics::boson ? binomial(n + spec.particles - 1, spec.particles)
                                              : binomial(n, spec.particles);
}

std::vector<OccupationState> enumerate_basis(int n, const WalkSpec &spec) {
  const FlatBasis b = flat_basis(n, spec);
  std::vector<OccupationState> out;
  out.reserve(b.size);
  for (std::size_t i = 0; i < b.size; ++i)
    out.emplace_back(std::vector<Vertex>(b.state(i), b.state(i) + b.p), spec.statistics);
  return out;
}

Propagator1P single_particle_propagator(const Graph &g, double t) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g.adjacency_as<double>());
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of the adjacency matrix failed");
  const Eigen::VectorXcd phases =
      (std::complex<double>(0, t) * es.eigenvalues().cast<std::complex<double>>()).array().exp();
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  return {v * phases.asDiagonal() * v.transpose(), t};
}

std::complex<double> raw_amplitude(const Propagator1P &u1, std::span<const Vertex> bra,
                                   std::span<const Vertex> ket, Statistics statistics) {
  if (bra.size() != ket.size())
    throw std::invalid_argument("bra and ket particle counts differ");
  const auto p = static_cast<Eigen::Index>(bra.size());
  Eigen::MatrixXcd m(p, p);
  for (Eigen::Index r = 0; r < p; ++r)
    for (Eigen::Index c = 0; c < p; ++c)
      m(r, c) = u1.matrix(bra[r], ket[c]);
  if (statistics == Statistics::fermion)
    return determinant(m.conjugate());

  auto occupation = [](std::span<const Vertex> s) {
    std::vector<Vertex> v(s.begin(), s.end());
    std::sort(v.begin(), v.end());
    double f = 1, run = 1;
    for (std::size_t i = 1; i < v.size(); ++i) {
      run = v[i] == v[i - 1] ? run + 1 : 1;
      f *= run;
    }
    return f;
  };
  return permanent(m) / std::sqrt(occupation(bra) * occupation(ket));
}

std::complex<double> greens_function(const Propagator1P &u1, const OccupationState &bra,
                                     const OccupationState &ket, Statistics statistics) {
  return raw_amplitude(u1, bra.vertices(), ket.vertices(), statistics);
}

Eigen::MatrixXd many_body_hamiltonian(const Graph &g, const WalkSpec &spec,
                                      const std::vector<OccupationState> &basis) {
  const int n = g.n();
  std::map<std::vector<Vertex>, Eigen::Index> index;
  for (std::size_t i = 0; i < basis.size(); ++i)
    index.emplace(basis[i].vertices(), static_cast<Eigen::Index>(i));

  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const bool fermion = spec.statistics == Statistics::fermion;

  for (Eigen::Index col = 0; col < dim; ++col) {
    std::vector<int> occ(n, 0);
    for (Vertex v : basis[col].vertices())
      ++occ[v];
    // Sum over A_ij c_i^dagger c_j applied to the occupation vector.
    for (Vertex j = 0; j < n; ++j) {
      if (occ[j] == 0)
        continue;
      for (Vertex i = 0; i < n; ++i) {
        if (!g.adjacent(i, j))
          continue;
        double amp;
        std::vector<int> next = occ;
        if (fermion) {
          if (occ[i])
            continue;
          int below_j = 0;
          for (Vertex v = 0; v < j; ++v)
            below_j += occ[v];
          next[j] = 0;
          int below_i = 0;
          for (Vertex v = 0; v < i; ++v)
            below_i += next[v];
          next[i] = 1;
          amp = ((below_i + below_j) % 2 == 0) ? 1.0 : -1.0;
        } else {
          amp = std::sqrt(static_cast<double>(occ[j]) * (occ[i] + 1));
          --next[j];
          ++next[i];
        }
        std::vector<Vertex> state;
        for (Vertex v = 0; v < n; ++v)
          state.insert(state.end(), next[v], v);
        const Eigen::Index row = index.at(state);
        h(row, col) += fermion ? amp : -amp;
      }
    }
  }
  return h;
}

ManyBodyOperator direct_evolution_operator(const Graph &g, const WalkSpec &spec,
                                           std::size_t cap) {
  const std::uint64_t dim = basis_dimension(g.n(), spec);
  if (dim > cap)
    throw std::length_error("basis dimension " + std::to_string(dim) +
                            " exceeds oracle cap " + std::to_string(cap));
  ManyBodyOperator op;
  op.basis = enumerate_basis(g.n(), spec);
  const Eigen::MatrixXd h = many_body_hamiltonian(g, spec, op.basis);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eigendecomposition of the many-body Hamiltonian failed");
  const Eigen::VectorXcd phases =
      (std::complex<double>(0, -spec.time) * es.eigenvalues().cast<std::complex<double>>())
          .array()
          .exp();
  const Eigen::MatrixXcd v = es.eigenvectors().cast<std::complex<double>>();
  op.matrix = v * phases.asDiagonal() * v.transpose();
  return op;
}

std::uint64_t stream_green_rows(const Graph &g, const WalkSpec &spec, std::size_t bra_begin,
                                std::size_t bra_end, const RowConsumer &consumer) {
  const FlatBasis basis = flat_basis(g.n(), spec);
  bra_end = std::min(bra_end, basis.size);
  if (bra_begin >= bra_end)
    return 0;

  const Propagator1P u1 = single_particle_propagator(g, spec.time);
  const bool fermion = spec.statistics == Statistics::fermion;
  const Eigen::MatrixXcd src = fermion ? Eigen::MatrixXcd(u1.matrix.conjugate()) : u1.matrix;

  const int p = basis.p;
  Eigen::MatrixXcd bra_rows(p, g.n());
  std::vector<double> row(basis.size);
  for (std::size_t b = bra_begin; b < bra_end; ++b) {
    const Vertex *bra = basis.state(b);
    for (int r = 0; r < p; ++r)
      bra_rows.row(r) = src.row(bra[r]);
    if (fermion)
      fill_row<true>(bra_rows, basis, 1.0, row.data());
    else
      fill_row<false>(bra_rows, basis, basis.inv_norm[b], row.data());
    consumer(b, row);
  }
  return static_cast<std::uint64_t>(bra_end - bra_begin) * basis.size;
}

} // namespace qwalk
