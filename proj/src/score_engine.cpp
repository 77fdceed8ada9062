#include "pgn/score_engine.hpp"

#include "pgn/errors.hpp"

namespace pgn {

namespace {

void require_piece(const PiecewisePath& path, std::size_t piece) {
  if (piece >= path.piece_count()) {
    throw DomainError("piece " + std::to_string(piece) + " outside [0, " + std::to_string(path.piece_count()) + ")");
  }
}

}  // namespace

std::vector<EqualityInterval> equality_intervals(const PiecewisePath& path, std::size_t piece) {
  require_piece(path, piece);
  const int d = path.d();
  // Affine on the piece: equal on the open piece iff equal at the midpoint
  // with equal slopes.
  std::vector<Rational> mid(d);
  std::vector<Rational> slope(d);
  for (int c = 0; c < d; ++c) {
    mid[c] = (path.value(piece, c) + path.value(piece + 1, c)) / 2;
    slope[c] = path.slope(piece, c);
  }
  std::vector<EqualityInterval> out;
  int p = 0;
  for (int c = 1; c < d; ++c) {
    if (mid[c - 1] == mid[c]) {
      if (slope[c - 1] != slope[c]) {
        throw InvalidTemplateError("components " + std::to_string(c) + " and " + std::to_string(c + 1) +
                                   " cross inside piece starting at " + format_rational(path.time(piece)));
      }
      continue;
    }
    if (mid[c - 1] > mid[c]) {
      throw InvalidTemplateError("ordering violated inside piece starting at " + format_rational(path.time(piece)));
    }
    out.push_back({p, c});
    p = c;
  }
  out.push_back({p, d});
  return out;
}

std::pair<int, int> m_plus_minus(const PiecewisePath& path, std::size_t piece, const EqualityInterval& interval) {
  require_piece(path, piece);
  const Dims& dims = path.dims();
  if (interval.p < 0 || interval.q > dims.d() || interval.p >= interval.q) {
    throw DomainError("malformed equality interval");
  }
  Rational sum = 0;
  for (int i = interval.p; i < interval.q; ++i) sum += path.slope(piece, i);
  const int width = interval.q - interval.p;
  // From M+ + M- = w and M+/m - M-/n = s: M+ = m (n s + w) / (m + n).
  Rational mp = Rational(dims.m()) * (Rational(dims.n()) * sum + width) / dims.d();
  mp.canonicalize();
  if (mp.get_den() != 1 || mp < 0 || mp > width) {
    throw InvalidTemplateError("M+ = " + format_rational(mp) + " on (" + std::to_string(interval.p) + ", " +
                               std::to_string(interval.q) + "] at piece starting " +
                               format_rational(path.time(piece)) + " is not an integer in [0, q - p]");
  }
  int plus = static_cast<int>(mp.get_num().get_si());
  return {plus, width - plus};
}

SignPartition s_plus(const PiecewisePath& path, std::size_t piece) {
  const int d = path.d();
  std::vector<bool> in_plus(d + 1, false);
  for (const auto& iv : equality_intervals(path, piece)) {
    auto [mp, mm] = m_plus_minus(path, piece, iv);
    (void)mm;
    for (int i = iv.p + 1; i <= iv.p + mp; ++i) in_plus[i] = true;
  }
  SignPartition out;
  for (int i = 1; i <= d; ++i) (in_plus[i] ? out.plus : out.minus).push_back(i);
  return out;
}

int count_delta_pairs(const SignPartition& partition) {
  int count = 0;
  for (int ip : partition.plus) {
    for (int im : partition.minus) {
      if (ip < im) ++count;
    }
  }
  return count;
}

int delta_on_piece(const PiecewisePath& path, std::size_t piece) { return count_delta_pairs(s_plus(path, piece)); }

Rational closed_form_delta(const Dims& dims) {
  const long mn = static_cast<long>(dims.m()) * dims.n();
  return Rational(mn) - make_rational(mn, dims.d());
}

std::vector<Rational> delta_integral_prefix(const PiecewisePath& path) {
  std::vector<Rational> prefix(path.breakpoint_count());
  for (std::size_t k = 0; k < path.piece_count(); ++k) {
    prefix[k + 1] = prefix[k] + (path.time(k + 1) - path.time(k)) * delta_on_piece(path, k);
  }
  return prefix;
}

Rational average_delta(const PiecewisePath& path, const Rational& horizon) {
  if (horizon <= 0 || horizon > path.end()) {
    throw DomainError("averaging horizon " + format_rational(horizon) + " outside (0, " + format_rational(path.end()) +
                      "]");
  }
  Rational integral = 0;
  for (std::size_t k = 0; k < path.piece_count() && path.time(k) < horizon; ++k) {
    Rational right = path.time(k + 1) < horizon ? path.time(k + 1) : horizon;
    integral += (right - path.time(k)) * delta_on_piece(path, k);
  }
  return integral / horizon;
}

ScoreReport score_template(const PiecewisePath& path, const Rational& horizon) {
  if (horizon <= 0 || horizon > path.end()) {
    throw DomainError("score horizon " + format_rational(horizon) + " outside (0, " + format_rational(path.end()) +
                      "]");
  }
  ScoreReport report{path.dims(), horizon, {}, 0, closed_form_delta(path.dims()), 0};
  Rational integral = 0;
  Rational half = horizon / 2;
  bool have_estimate = false;
  for (std::size_t k = 0; k < path.piece_count() && path.time(k) < horizon; ++k) {
    ScoreSegment seg;
    seg.t_start = path.time(k);
    seg.t_end = path.time(k + 1) < horizon ? path.time(k + 1) : horizon;
    seg.intervals = equality_intervals(path, k);
    for (const auto& iv : seg.intervals) seg.m_values.push_back(m_plus_minus(path, k, iv));
    seg.partition = s_plus(path, k);
    seg.delta = count_delta_pairs(seg.partition);
    integral += (seg.t_end - seg.t_start) * seg.delta;
    if (seg.t_end >= half) {
      Rational running = integral / seg.t_end;
      if (!have_estimate || running < report.liminf_estimate) report.liminf_estimate = running;
      have_estimate = true;
    }
    report.segments.push_back(std::move(seg));
  }
  report.average = integral / horizon;
  return report;
}

}  // namespace pgn
