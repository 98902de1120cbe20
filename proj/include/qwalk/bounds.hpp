#ifndef QWALK_BOUNDS_HPP
#define QWALK_BOUNDS_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>

namespace qwalk {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial_exact(std::int64_t n, std::int64_t k);

/// log(n!): exact product for n <= 20, lgamma above.
double log_factorial(std::int64_t n);

/// Y_{p,N} = C(N+p-1, p)^2, the element count of the p-boson evolution operator.
BigInt evolution_operator_element_count(int particles, std::int64_t vertices);

inline constexpr std::int64_t kMaxExactFingerprintTerms = 200000;

/// Z = C(x_p + y - 1, x_p - 1): multisets of size y over x_p values.
/// Throws std::overflow_error when the exact value is too large to form;
/// use fingerprint_count_log instead.
BigInt fingerprint_count(const BigInt &x_p, const BigInt &y);
double fingerprint_count_log(double x_p, double y);

/// log of (1/6) (sqrt(N)!)^(2 sqrt(N) - 3) N^(-N/2). N must be a perfect square >= 4.
double latin_square_srg_lower_bound_log(std::int64_t vertices);

struct BoundReport {
  int particles = 0;
  std::int64_t vertices = 0;
  double log_S_lower = 0;
  double log_Z_upper = 0;
  double log_R_lower = 0;
  double x_p_used = 0;
  /// True when x_p came from the Burnside lower bound rather than the
  /// caller. A lower bound on x_p overstates log R.
  bool x_p_is_lower_bound = true;
};

/// log R >= log S - 2 x_p (p+1) log N. Uses the widget-class lower bound
/// for x_p unless one is supplied.
BoundReport ratio_lower_bound_log(int particles, std::int64_t vertices,
                                  std::optional<double> x_p = std::nullopt);

struct WidgetClassBounds {
  BigInt lower;           ///< ceil(2^(p^2) / (2 (p!)^2))
  double upper_log2 = 0;  ///< p^2, leading term only
  bool upper_has_unbounded_correction = true; ///< O(p^(2/3)) term is non-constructive
};

WidgetClassBounds widget_class_count_bounds(int particles);

/// Classes of p x p binary arrays under row permutations, column
/// permutations and transposition, by orbit enumeration (p <= 4).
BigInt edge_pattern_orbits_by_enumeration(int particles);

/// Same count by Burnside's lemma (p <= 6).
BigInt edge_pattern_orbits_by_burnside(int particles);

/// Both routes; throws std::logic_error if they disagree.
BigInt distinct_edge_pattern_count(int particles);

} // namespace qwalk

#endif // QWALK_BOUNDS_HPP
