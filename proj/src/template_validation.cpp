#include "pgn/errors.hpp"
#include "pgn/template_core.hpp"

#include <algorithm>

namespace pgn {

namespace {

// A maximal open interval on which an affine-per-piece function h is strictly
// positive, split into the pieces it touches.
struct PositiveRun {
  struct Segment {
    std::size_t piece;
    Rational from;
    Rational to;
  };
  std::vector<Segment> segments;
  Rational from() const { return segments.front().from; }
  Rational to() const { return segments.back().to; }
};

// h is given by its values at the path breakpoints. A run continues across a
// breakpoint exactly when h is strictly positive there.
std::vector<PositiveRun> positive_runs(const std::vector<Rational>& times, const std::vector<Rational>& h) {
  std::vector<PositiveRun> runs;
  bool open = false;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const Rational& ha = h[k];
    const Rational& hb = h[k + 1];
    if (ha <= 0 && hb <= 0) {
      open = false;
      continue;
    }
    Rational from = times[k];
    Rational to = times[k + 1];
    if (ha <= 0 || hb <= 0) {
      Rational root = times[k] + ha * (times[k + 1] - times[k]) / (ha - hb);
      (ha <= 0 ? from : to) = root;
    }
    if (!open || ha <= 0) {
      runs.emplace_back();
    }
    runs.back().segments.push_back({k, from, to});
    open = hb > 0;
  }
  return runs;
}

struct Slopes {
  std::size_t pieces;
  int d;
  std::vector<Rational> data;
  const Rational& at(std::size_t k, int c) const { return data[k * d + c]; }
};

Slopes all_slopes(const PiecewisePath& path) {
  Slopes s{path.piece_count(), path.d(), {}};
  s.data.reserve(s.pieces * s.d);
  for (std::size_t k = 0; k < s.pieces; ++k) {
    Rational dt = path.time(k + 1) - path.time(k);
    for (int c = 0; c < s.d; ++c) s.data.push_back((path.value(k + 1, c) - path.value(k, c)) / dt);
  }
  return s;
}

void check_ordering(const PiecewisePath& path, ValidationReport& report) {
  const int d = path.d();
  std::vector<Rational> h(path.breakpoint_count());
  for (int j = 0; j + 1 < d; ++j) {
    for (std::size_t i = 0; i < h.size(); ++i) h[i] = path.value(i, j) - path.value(i, j + 1);
    for (const auto& run : positive_runs(path.times(), h)) {
      report.ordering_ok = false;
      report.violations.push_back({Axiom::Ordering, j + 1, run.from(), run.to(), std::nullopt,
                                   "f_" + std::to_string(j + 1) + " > f_" + std::to_string(j + 2)});
    }
  }
}

void check_slopes(const PiecewisePath& path, const Slopes& slopes, ValidationReport& report) {
  const Dims& dims = path.dims();
  const Rational lo = make_rational(-1, dims.n());
  const Rational hi = make_rational(1, dims.m());
  for (std::size_t k = 0; k < slopes.pieces; ++k) {
    for (int c = 0; c < slopes.d; ++c) {
      const Rational& s = slopes.at(k, c);
      if (s < lo || s > hi) {
        report.slopes_ok = false;
        report.violations.push_back({Axiom::SlopeBound, c + 1, path.time(k), path.time(k + 1), s,
                                     "slope " + format_rational(s) + " of f_" + std::to_string(c + 1) +
                                         " outside [-1/n, 1/m]"});
      }
    }
  }
}

void check_partial_sums(const PiecewisePath& path, const Slopes& slopes, ValidationReport& report) {
  const Dims& dims = path.dims();
  const int d = dims.d();
  const std::size_t pieces = slopes.pieces;

  // prefix[k * (d+1) + j] = slope of f_1 + ... + f_j on piece k.
  std::vector<Rational> prefix(pieces * (d + 1));
  for (std::size_t k = 0; k < pieces; ++k) {
    for (int j = 1; j <= d; ++j) prefix[k * (d + 1) + j] = prefix[k * (d + 1) + j - 1] + slopes.at(k, j - 1);
  }

  auto check_run = [&](int j, const std::vector<Rational>& allowed, const PositiveRun& run) {
    const Rational* previous = nullptr;
    for (const auto& seg : run.segments) {
      const Rational& s = prefix[seg.piece * (d + 1) + j];
      if (!std::binary_search(allowed.begin(), allowed.end(), s)) {
        report.convexity_ok = false;
        report.violations.push_back({Axiom::PartialSumConvexity, j, seg.from, seg.to, s,
                                     "slope " + format_rational(s) + " of partial sum " + std::to_string(j) +
                                         " not in Z(" + std::to_string(j) + ")"});
      }
      if (previous && s < *previous) {
        report.convexity_ok = false;
        report.violations.push_back({Axiom::PartialSumConvexity, j, seg.from, seg.to, s,
                                     "partial sum " + std::to_string(j) + " not convex: slope drops from " +
                                         format_rational(*previous) + " to " + format_rational(s)});
      }
      previous = &s;
    }
  };

  // j = 0 is vacuous (empty sum). 1 <= j < d uses the gap f_{j+1} - f_j;
  // j = d is always strict because f_{d+1} = +infinity.
  std::vector<Rational> gap(path.breakpoint_count());
  for (int j = 1; j < d; ++j) {
    auto allowed = slope_set(j, dims);
    for (std::size_t i = 0; i < gap.size(); ++i) gap[i] = path.value(i, j) - path.value(i, j - 1);
    for (const auto& run : positive_runs(path.times(), gap)) check_run(j, allowed, run);
  }
  PositiveRun whole;
  for (std::size_t k = 0; k < pieces; ++k) whole.segments.push_back({k, path.time(k), path.time(k + 1)});
  check_run(d, slope_set(d, dims), whole);
}

}  // namespace

std::string axiom_name(Axiom axiom) {
  switch (axiom) {
    case Axiom::Ordering:
      return "a";
    case Axiom::SlopeBound:
      return "b";
    case Axiom::PartialSumConvexity:
      return "c";
  }
  return "?";
}

bool ValidationReport::failed(Axiom axiom) const {
  switch (axiom) {
    case Axiom::Ordering:
      return !ordering_ok;
    case Axiom::SlopeBound:
      return !slopes_ok;
    case Axiom::PartialSumConvexity:
      return !convexity_ok;
  }
  return false;
}

ValidationReport validate_template(const PiecewisePath& path) {
  ValidationReport report;
  Slopes slopes = all_slopes(path);
  check_ordering(path, report);
  check_slopes(path, slopes, report);
  check_partial_sums(path, slopes, report);
  return report;
}

Template::Template(PiecewisePath path) : path_(std::move(path)), report_(validate_template(path_)) {
  if (!report_.passed()) {
    std::string failed;
    for (Axiom a : {Axiom::Ordering, Axiom::SlopeBound, Axiom::PartialSumConvexity}) {
      if (report_.failed(a)) failed += (failed.empty() ? "" : ", ") + axiom_name(a);
    }
    const auto& first = report_.violations.front();
    throw InvalidTemplateError("path violates template axiom(s) " + failed + "; first witness on [" +
                               format_rational(first.from) + ", " + format_rational(first.to) + "]: " + first.detail);
  }
}

LinkedTemplate::LinkedTemplate(Template tmpl, std::vector<Rational> anchors)
    : template_(std::move(tmpl)), anchors_(std::move(anchors)) {
  if (anchors_.empty() || anchors_.front() != 0) throw DomainError("anchors must start at 0");
  const auto& path = template_.path();
  for (std::size_t p = 0; p < anchors_.size(); ++p) {
    if (p > 0 && !(anchors_[p - 1] < anchors_[p])) throw DomainError("anchors must be strictly increasing");
    if (anchors_[p] > path.end()) {
      throw DomainError("anchor " + format_rational(anchors_[p]) + " beyond template domain");
    }
    for (int c = 0; c < path.d(); ++c) {
      if (path.eval(anchors_[p], c) != 0) {
        throw DomainError("template is nonzero at anchor " + format_rational(anchors_[p]));
      }
    }
  }
}

LinkedTemplate LinkedTemplate::truncated(const Rational& horizon) const {
  std::vector<Rational> kept;
  for (const auto& a : anchors_) {
    if (a <= horizon) kept.push_back(a);
  }
  return LinkedTemplate(Template(path().truncated(horizon)), std::move(kept));
}

}  // namespace pgn
