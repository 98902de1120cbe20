#include "qwalk/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace qwalk {

BigInt binomial_exact(std::int64_t n, std::int64_t k) {
  if (k < 0 || n < 0 || k > n)
    return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

double log_factorial(std::int64_t n) {
  if (n < 0)
    throw std::invalid_argument("factorial of a negative number");
  if (n <= 20) {
    std::uint64_t f = 1;
    for (std::int64_t i = 2; i <= n; ++i)
      f *= static_cast<std::uint64_t>(i);
    return std::log(static_cast<double>(f));
  }
  return std::lgamma(static_cast<double>(n) + 1.0);
}

BigInt evolution_operator_element_count(int particles, std::int64_t vertices) {
  if (particles < 1 || vertices < 1)
    throw std::invalid_argument("need p >= 1 and N >= 1");
  const BigInt dim = binomial_exact(vertices + particles - 1, particles);
  return dim * dim;
}

BigInt fingerprint_count(const BigInt &x_p, const BigInt &y) {
  if (x_p < 1 || y < 1)
    throw std::invalid_argument("need x_p >= 1 and y >= 1");
  const BigInt terms = std::min<BigInt>(x_p - 1, y);
  if (terms > kMaxExactFingerprintTerms)
    throw std::overflow_error("fingerprint count too large for exact evaluation");
  const BigInt top = x_p + y - 1;
  const auto k = terms.convert_to<std::int64_t>();
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    r *= top - k + i;
    r /= i;
  }
  return r;
}

double fingerprint_count_log(double x_p, double y) {
  if (x_p < 1 || y < 1)
    throw std::invalid_argument("need x_p >= 1 and y >= 1");
  return std::lgamma(x_p + y) - std::lgamma(x_p) - std::lgamma(y + 1);
}

double latin_square_srg_lower_bound_log(std::int64_t vertices) {
  const auto side = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(vertices))));
  if (vertices < 4 || side * side != vertices)
    throw std::invalid_argument("N must be a perfect square >= 4");
  const double n = static_cast<double>(vertices);
  return (2.0 * side - 3.0) * log_factorial(side) - 0.5 * n * std::log(n) - std::log(6.0);
}

WidgetClassBounds widget_class_count_bounds(int particles) {
  if (particles < 1)
    throw std::invalid_argument("need p >= 1");
  BigInt fact = 1;
  for (int i = 2; i <= particles; ++i)
    fact *= i;
  const BigInt num = BigInt(1) << (particles * particles);
  const BigInt den = 2 * fact * fact;
  WidgetClassBounds b;
  b.lower = (num + den - 1) / den;
  b.upper_log2 = static_cast<double>(particles) * particles;
  return b;
}

BoundReport ratio_lower_bound_log(int particles, std::int64_t vertices, std::optional<double> x_p) {
  BoundReport r;
  r.particles = particles;
  r.vertices = vertices;
  r.log_S_lower = latin_square_srg_lower_bound_log(vertices);
  if (x_p) {
    if (!(*x_p >= 1))
      throw std::invalid_argument("x_p must be >= 1");
    r.x_p_used = *x_p;
    r.x_p_is_lower_bound = false;
  } else {
    r.x_p_used = widget_class_count_bounds(particles).lower.convert_to<double>();
  }
  r.log_Z_upper = 2.0 * r.x_p_used * (particles + 1) * std::log(static_cast<double>(vertices));
  r.log_R_lower = r.log_S_lower - r.log_Z_upper;
  return r;
}

namespace {

// The group generated by row permutations, column permutations and transpose,
// as permutations of the p*p cell indices.
std::vector<std::vector<int>> cell_group(int p) {
  std::vector<int> perm(p);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> perms;
  do {
    perms.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  std::vector<std::vector<int>> group;
  for (const auto &rows : perms)
    for (const auto &cols : perms)
      for (int transpose = 0; transpose < 2; ++transpose) {
        std::vector<int> f(p * p);
        for (int r = 0; r < p; ++r)
          for (int c = 0; c < p; ++c)
            f[r * p + c] = transpose ? cols[c] * p + rows[r] : rows[r] * p + cols[c];
        group.push_back(std::move(f));
      }
  return group;
}

} // namespace

BigInt edge_pattern_orbits_by_enumeration(int particles) {
  if (particles < 1 || particles > 4)
    throw std::invalid_argument("orbit enumeration limited to 1 <= p <= 4");
  const int cells = particles * particles;
  const auto group = cell_group(particles);
  std::vector<bool> seen(std::size_t{1} << cells, false);
  std::uint64_t orbits = 0;
  for (std::uint32_t a = 0; a < (1u << cells); ++a) {
    if (seen[a])
      continue;
    ++orbits;
    for (const auto &f : group) {
      std::uint32_t img = 0;
      for (int i = 0; i < cells; ++i)
        if ((a >> i) & 1)
          img |= 1u << f[i];
      seen[img] = true;
    }
  }
  return orbits;
}

BigInt edge_pattern_orbits_by_burnside(int particles) {
  if (particles < 1 || particles > 6)
    throw std::invalid_argument("Burnside count limited to 1 <= p <= 6");
  const int cells = particles * particles;
  const auto group = cell_group(particles);
  BigInt fixed_total = 0;
  std::vector<bool> visited(cells);
  for (const auto &f : group) {
    std::fill(visited.begin(), visited.end(), false);
    int cycles = 0;
    for (int i = 0; i < cells; ++i) {
      if (visited[i])
        continue;
      ++cycles;
      for (int j = i; !visited[j]; j = f[j])
        visited[j] = true;
    }
    fixed_total += BigInt(1) << cycles;
  }
  return fixed_total / group.size();
}

BigInt distinct_edge_pattern_count(int particles) {
  const BigInt a = edge_pattern_orbits_by_enumeration(particles);
  const BigInt b = edge_pattern_orbits_by_burnside(particles);
  if (a != b)
    throw std::logic_error("orbit enumeration and Burnside count disagree");
  return a;
}

} // namespace qwalk
