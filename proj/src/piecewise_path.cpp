#include "pgn/errors.hpp"
#include "pgn/template_core.hpp"

#include <algorithm>

namespace pgn {

Dims::Dims(int m, int n) : m_(m), n_(n) {
  if (m < 1) throw DomainError("m must be >= 1 (got " + std::to_string(m) + ")");
  if (n < 1) throw DomainError("n must be >= 1 (got " + std::to_string(n) + ")");
}

PiecewisePath::PiecewisePath(Dims dims, std::vector<Rational> times, std::vector<Rational> values)
    : dims_(dims), times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() < 2) throw DomainError("a path needs at least two breakpoints");
  if (times_.front() != 0) throw DomainError("first breakpoint must be 0, got " + format_rational(times_.front()));
  for (std::size_t i = 1; i < times_.size(); ++i) {
    if (!(times_[i - 1] < times_[i])) {
      throw DomainError("breakpoints must be strictly increasing (index " + std::to_string(i) + ", time " +
                        format_rational(times_[i]) + ")");
    }
  }
  if (values_.size() != times_.size() * static_cast<std::size_t>(d())) {
    throw DomainError("expected " + std::to_string(times_.size() * d()) + " values, got " +
                      std::to_string(values_.size()));
  }
}

std::span<const Rational> PiecewisePath::value(std::size_t i) const {
  return {values_.data() + i * d(), static_cast<std::size_t>(d())};
}

const Rational& PiecewisePath::value(std::size_t i, int component) const { return values_[i * d() + component]; }

Rational PiecewisePath::slope(std::size_t piece, int component) const {
  return (value(piece + 1, component) - value(piece, component)) / (times_[piece + 1] - times_[piece]);
}

std::size_t PiecewisePath::piece_at(const Rational& t) const {
  if (t < 0 || t > end()) {
    throw DomainError("time " + format_rational(t) + " outside path domain [0, " + format_rational(end()) + "]");
  }
  auto it = std::upper_bound(times_.begin(), times_.end(), t);
  std::size_t idx = static_cast<std::size_t>(it - times_.begin());
  // idx is the first breakpoint strictly after t; the owning piece starts one before.
  return std::min(idx - 1, piece_count() - 1);
}

Rational PiecewisePath::eval(const Rational& t, int component) const {
  std::size_t k = piece_at(t);
  if (t == times_[k]) return value(k, component);
  if (t == times_[k + 1]) return value(k + 1, component);
  const Rational& a = times_[k];
  const Rational& b = times_[k + 1];
  Rational w = (t - a) / (b - a);
  return value(k, component) + w * (value(k + 1, component) - value(k, component));
}

std::vector<Rational> PiecewisePath::eval(const Rational& t) const {
  std::vector<Rational> out(d());
  std::size_t k = piece_at(t);
  if (t == times_[k]) {
    auto v = value(k);
    return {v.begin(), v.end()};
  }
  Rational w = (t - times_[k]) / (times_[k + 1] - times_[k]);
  for (int c = 0; c < d(); ++c) out[c] = value(k, c) + w * (value(k + 1, c) - value(k, c));
  return out;
}

PiecewisePath PiecewisePath::truncated(const Rational& horizon) const {
  if (horizon <= 0 || horizon > end()) {
    throw DomainError("truncation horizon " + format_rational(horizon) + " outside (0, " + format_rational(end()) +
                      "]");
  }
  std::vector<Rational> times;
  std::vector<Rational> values;
  for (std::size_t i = 0; i < times_.size() && times_[i] < horizon; ++i) {
    times.push_back(times_[i]);
    auto v = value(i);
    values.insert(values.end(), v.begin(), v.end());
  }
  auto last = eval(horizon);
  times.push_back(horizon);
  values.insert(values.end(), last.begin(), last.end());
  return PiecewisePath(dims_, std::move(times), std::move(values));
}

std::vector<Rational> slope_set(int j, const Dims& dims) {
  if (j < 0 || j > dims.d()) {
    throw DomainError("slope set index " + std::to_string(j) + " outside [0, " + std::to_string(dims.d()) + "]");
  }
  std::vector<Rational> out;
  for (int lp = std::max(0, j - dims.n()); lp <= std::min(dims.m(), j); ++lp) {
    int lm = j - lp;
    out.push_back(make_rational(lp, dims.m()) - make_rational(lm, dims.n()));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Rational sup_distance(const PiecewisePath& f, const PiecewisePath& g, const Rational& from, const Rational& to) {
  if (f.d() != g.d()) throw DomainError("sup_distance: paths have different dimension");
  if (from > to) throw DomainError("sup_distance: window start after window end");
  if (from < 0 || to > f.end() || to > g.end()) {
    throw DomainError("sup_distance: window [" + format_rational(from) + ", " + format_rational(to) +
                      "] outside a path domain");
  }
  // Both paths are affine between merged breakpoints, so the sup is attained
  // at one of them.
  std::vector<Rational> probe{from, to};
  for (const auto* p : {&f, &g}) {
    for (const auto& t : p->times()) {
      if (t > from && t < to) probe.push_back(t);
    }
  }
  std::sort(probe.begin(), probe.end());
  probe.erase(std::unique(probe.begin(), probe.end()), probe.end());
  Rational best = 0;
  for (const auto& t : probe) {
    auto fv = f.eval(t);
    auto gv = g.eval(t);
    for (int c = 0; c < f.d(); ++c) {
      Rational diff = abs(fv[c] - gv[c]);
      if (diff > best) best = diff;
    }
  }
  return best;
}

}  // namespace pgn
