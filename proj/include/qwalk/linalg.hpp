#ifndef QWALK_LINALG_HPP
#define QWALK_LINALG_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <stdexcept>

namespace qwalk {

/// Matrix permanent. Explicit expansion up to 3x3, Ryser's formula with a
/// Gray-code column walk above that (O(2^n n)).
template <typename Derived>
typename Derived::Scalar permanent(const Eigen::MatrixBase<Derived> &m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  if (m.cols() != n)
    throw std::invalid_argument("permanent of a non-square matrix");
  switch (n) {
  case 0:
    return Scalar(1);
  case 1:
    return m(0, 0);
  case 2:
    return m(0, 0) * m(1, 1) + m(0, 1) * m(1, 0);
  case 3:
    return m(0, 0) * (m(1, 1) * m(2, 2) + m(1, 2) * m(2, 1)) +
           m(0, 1) * (m(1, 0) * m(2, 2) + m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) + m(1, 1) * m(2, 0));
  default:
    break;
  }
  if (n > 30)
    throw std::invalid_argument("permanent size too large");

  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> rowsum = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::Zero(n);
  Scalar total(0);
  std::uint64_t gray = 0;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t step = 1; step < limit; ++step) {
    const int bit = __builtin_ctzll(step);
    const std::uint64_t mask = std::uint64_t{1} << bit;
    if (gray & mask)
      rowsum -= m.col(bit);
    else
      rowsum += m.col(bit);
    gray ^= mask;
    Scalar prod = rowsum.prod();
    if ((__builtin_popcountll(gray) & 1) == (n & 1))
      total += prod;
    else
      total -= prod;
  }
  return total;
}

/// Determinant with explicit cofactor formulas for small sizes.
template <typename Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived> &m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = m.rows();
  if (m.cols() != n)
    throw std::invalid_argument("determinant of a non-square matrix");
  switch (n) {
  case 0:
    return Scalar(1);
  case 1:
    return m(0, 0);
  case 2:
    return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
  case 3:
    return m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1)) -
           m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0)) +
           m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0));
  case 4: {
    Eigen::Matrix<Scalar, 4, 4> f;
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        f(r, c) = m(r, c);
    return f.determinant();
  }
  default:
    return Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>(m).partialPivLu().determinant();
  }
}

} // namespace qwalk

#endif // QWALK_LINALG_HPP
