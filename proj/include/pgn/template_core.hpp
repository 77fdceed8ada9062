#pragma once

// Exact piecewise-linear paths [0,T] -> Q^d and the template axioms.

#include "pgn/rational.hpp"

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace pgn {

/// Flow signature: m expanding and n contracting directions, d = m + n.
class Dims {
public:
  /// Throws DomainError unless m >= 1 and n >= 1.
  Dims(int m, int n);

  int m() const { return m_; }
  int n() const { return n_; }
  int d() const { return m_ + n_; }

  friend bool operator==(const Dims&, const Dims&) = default;

private:
  int m_;
  int n_;
};

/// Continuous piecewise-linear map [0, T] -> Q^d given by its breakpoints.
/// The path is affine between consecutive breakpoints. Immutable.
class PiecewisePath {
public:
  /// `values` is row-major: one row of d entries per breakpoint.
  /// Throws DomainError if the first time is not 0, times are not strictly
  /// increasing, fewer than two breakpoints are given, or the value count
  /// does not match.
  PiecewisePath(Dims dims, std::vector<Rational> times, std::vector<Rational> values);

  const Dims& dims() const { return dims_; }
  int d() const { return dims_.d(); }

  std::size_t breakpoint_count() const { return times_.size(); }
  std::size_t piece_count() const { return times_.size() - 1; }

  const std::vector<Rational>& times() const { return times_; }
  const Rational& time(std::size_t i) const { return times_[i]; }
  std::span<const Rational> value(std::size_t i) const;
  const Rational& value(std::size_t i, int component) const;

  const Rational& end() const { return times_.back(); }

  /// Slope of `component` (0-based) on piece [t_piece, t_piece+1].
  Rational slope(std::size_t piece, int component) const;

  /// Index of the piece containing t, preferring the piece that starts at t
  /// (right-continuous convention); the last piece owns the end point.
  std::size_t piece_at(const Rational& t) const;

  /// Value at time t. Throws DomainError if t is outside [0, end()].
  std::vector<Rational> eval(const Rational& t) const;
  Rational eval(const Rational& t, int component) const;

  /// The same path restricted to [0, horizon]. Throws DomainError unless
  /// 0 < horizon <= end().
  PiecewisePath truncated(const Rational& horizon) const;

  friend bool operator==(const PiecewisePath&, const PiecewisePath&) = default;

private:
  Dims dims_;
  std::vector<Rational> times_;
  std::vector<Rational> values_;
};

/// Z(j) = { L+/m - L-/n : 0 <= L+ <= m, 0 <= L- <= n, L+ + L- = j }, sorted
/// ascending. Throws DomainError unless 0 <= j <= d.
std::vector<Rational> slope_set(int j, const Dims& dims);

enum class Axiom {
  Ordering,           ///< (a) f_1 <= ... <= f_d
  SlopeBound,         ///< (b) -1/n <= f_i' <= 1/m
  PartialSumConvexity ///< (c) sum_{i<=j} f_i convex with slopes in Z(j) where f_j < f_{j+1}
};

std::string axiom_name(Axiom axiom);

/// One failed axiom check. `component` is 1-based: for Ordering it is the j
/// with f_j > f_{j+1} somewhere in (from, to); for SlopeBound the offending
/// component; for PartialSumConvexity the partial-sum index j.
struct AxiomViolation {
  Axiom axiom;
  int component = 0;
  Rational from;
  Rational to;
  std::optional<Rational> slope;
  std::string detail;
};

struct ValidationReport {
  bool ordering_ok = true;
  bool slopes_ok = true;
  bool convexity_ok = true;
  std::vector<AxiomViolation> violations;

  bool passed() const { return ordering_ok && slopes_ok && convexity_ok; }
  bool failed(Axiom axiom) const;
};

/// Checks the three template axioms with exact comparisons. Never throws for
/// a well-formed path; failures are returned as report entries.
ValidationReport validate_template(const PiecewisePath& path);

/// A path certified to satisfy the template axioms.
class Template {
public:
  /// Throws InvalidTemplateError (listing the failed axioms) if the path is
  /// not a template.
  explicit Template(PiecewisePath path);

  const PiecewisePath& path() const { return path_; }
  const ValidationReport& report() const { return report_; }
  const Dims& dims() const { return path_.dims(); }

private:
  PiecewisePath path_;
  ValidationReport report_;
};

/// Template with anchor times 0 = b_1 < b_2 < ... at which it vanishes.
class LinkedTemplate {
public:
  /// Throws DomainError if anchors do not start at 0, are not strictly
  /// increasing, leave the domain, or the template is nonzero at an anchor.
  LinkedTemplate(Template tmpl, std::vector<Rational> anchors);

  const Template& templ() const { return template_; }
  const PiecewisePath& path() const { return template_.path(); }
  const std::vector<Rational>& anchors() const { return anchors_; }
  const Dims& dims() const { return template_.dims(); }

  /// Restriction to [0, horizon]; anchors beyond the horizon are dropped.
  LinkedTemplate truncated(const Rational& horizon) const;

private:
  Template template_;
  std::vector<Rational> anchors_;
};

/// Exact sup over [from, to] of max_i |f_i(t) - g_i(t)|. Throws DomainError if
/// the window is empty or reversed, leaves either domain, or d differs.
Rational sup_distance(const PiecewisePath& f, const PiecewisePath& g,
                      const Rational& from, const Rational& to);

}  // namespace pgn
