#pragma once

// Intervals of equality, the sign partition S+/S-, the pair count delta and
// its Cesaro averages over finite horizons.
//
// delta(f, t) is taken right-continuous at breakpoints; integrals do not see
// the difference. The integers M+ and M- are reported as nonnegative, since
// M+ = 0 occurs for the constructed family.

#include "pgn/template_core.hpp"

#include <cstddef>
#include <utility>
#include <vector>

namespace pgn {

/// (p, q] with f_p < f_{p+1} = ... = f_q < f_{q+1} on a piece (f_0 = -inf,
/// f_{d+1} = +inf).
struct EqualityInterval {
  int p;
  int q;
  friend bool operator==(const EqualityInterval&, const EqualityInterval&) = default;
};

struct SignPartition {
  std::vector<int> plus;   ///< S+, ascending, 1-based
  std::vector<int> minus;  ///< S-, ascending, 1-based
};

/// Partition of {1..d} into intervals of equality on piece `piece`
/// (between breakpoints piece and piece+1), decided exactly at the midpoint.
/// Throws DomainError for an out-of-range piece, InvalidTemplateError if two
/// adjacent components cross inside the piece.
std::vector<EqualityInterval> equality_intervals(const PiecewisePath& path, std::size_t piece);

/// (M+, M-) solving M+ + M- = q - p and M+/m - M-/n = sum_{p<i<=q} f_i'.
/// Throws InvalidTemplateError unless the solution is a pair of nonnegative
/// integers.
std::pair<int, int> m_plus_minus(const PiecewisePath& path, std::size_t piece, const EqualityInterval& interval);

/// S+ = union of (p, p + M+] over the intervals of equality; S- the rest.
SignPartition s_plus(const PiecewisePath& path, std::size_t piece);

/// #{(i+, i-) in S+ x S- : i+ < i-}.
int count_delta_pairs(const SignPartition& partition);

int delta_on_piece(const PiecewisePath& path, std::size_t piece);

/// delta_{m,n} = mn - mn/(m+n).
Rational closed_form_delta(const Dims& dims);

/// (1/T) * integral over [0, T] of delta(f, t). Throws DomainError unless
/// 0 < T <= end of the path.
Rational average_delta(const PiecewisePath& path, const Rational& horizon);

/// integral over [0, t_i] of delta for every breakpoint t_i (first entry 0).
std::vector<Rational> delta_integral_prefix(const PiecewisePath& path);

struct ScoreSegment {
  Rational t_start;
  Rational t_end;
  std::vector<EqualityInterval> intervals;
  std::vector<std::pair<int, int>> m_values;  ///< (M+, M-) per interval
  SignPartition partition;
  int delta = 0;
};

struct ScoreReport {
  Dims dims;
  Rational horizon;
  std::vector<ScoreSegment> segments;  ///< pieces clipped to [0, horizon]
  Rational average;                    ///< (1/T) integral_0^T delta
  Rational target;                     ///< delta_{m,n}
  /// Smallest running average at segment ends inside the last half of the
  /// horizon. A finite-horizon estimate of the liminf, not a certificate.
  Rational liminf_estimate;
};

ScoreReport score_template(const PiecewisePath& path, const Rational& horizon);

}  // namespace pgn
