#include "pgn/template_builders.hpp"

#include "pgn/errors.hpp"

namespace pgn {

namespace {

// Accumulates breakpoints left to right, cutting everything at the horizon.
class PathWriter {
public:
  PathWriter(const Dims& dims, Rational horizon) : dims_(dims), horizon_(std::move(horizon)) {}

  bool full() const { return !times_.empty() && times_.back() == horizon_; }

  // Appends (t, v); the segment from the previous point is clipped at the
  // horizon. Points at or before the current end are ignored.
  void push(const Rational& t, const std::vector<Rational>& v) {
    if (full()) return;
    if (!times_.empty() && t <= times_.back()) return;
    if (t <= horizon_ || times_.empty()) {
      times_.push_back(t);
      values_.insert(values_.end(), v.begin(), v.end());
      return;
    }
    const Rational& t0 = times_.back();
    Rational w = (horizon_ - t0) / (t - t0);
    std::size_t base = values_.size() - dims_.d();
    std::vector<Rational> cut(dims_.d());
    for (int c = 0; c < dims_.d(); ++c) cut[c] = values_[base + c] + w * (v[c] - values_[base + c]);
    times_.push_back(horizon_);
    values_.insert(values_.end(), cut.begin(), cut.end());
  }

  PiecewisePath finish() && { return PiecewisePath(dims_, std::move(times_), std::move(values_)); }

private:
  Dims dims_;
  Rational horizon_;
  std::vector<Rational> times_;
  std::vector<Rational> values_;
};

// Value of g at its interior breakpoint t = n.
std::vector<Rational> block_peak(const Dims& dims) {
  std::vector<Rational> v(dims.d(), make_rational(1, dims.d() - 1));
  v[0] = -1;
  return v;
}

void require_positive(const Rational& horizon) {
  if (horizon <= 0) throw DomainError("horizon must be positive, got " + format_rational(horizon));
}

}  // namespace

Template standard_block(const Dims& dims) {
  const int d = dims.d();
  std::vector<Rational> zero(d);
  std::vector<Rational> times{0, dims.n(), d};
  std::vector<Rational> values;
  for (const auto& row : {zero, block_peak(dims), zero}) values.insert(values.end(), row.begin(), row.end());
  return Template(PiecewisePath(dims, std::move(times), std::move(values)));
}

LinkedTemplate build_f1(const Dims& dims, const Rational& horizon) {
  require_positive(horizon);
  const int d = dims.d();
  const std::vector<Rational> zero(d);
  const std::vector<Rational> peak = block_peak(dims);
  PathWriter writer(dims, horizon);
  std::vector<Rational> anchors{0};
  writer.push(0, zero);
  Rational start = 0;
  for (long p = 1; !writer.full(); ++p) {
    std::vector<Rational> scaled(peak);
    for (auto& x : scaled) x *= p;
    writer.push(start + p * dims.n(), scaled);
    Rational next = start + p * d;
    writer.push(next, zero);
    if (next <= horizon) anchors.push_back(next);
    start = next;
  }
  return LinkedTemplate(Template(std::move(writer).finish()), std::move(anchors));
}

LinkedTemplate phi(const LinkedTemplate& source, const Rational& horizon) {
  require_positive(horizon);
  const auto& src = source.path();
  const auto& src_anchors = source.anchors();
  const Dims& dims = source.dims();
  PathWriter writer(dims, horizon);
  std::vector<Rational> anchors{0};
  writer.push(0, std::vector<Rational>(dims.d()));
  Rational c = 0;
  for (std::size_t q = 1;; ++q) {
    // J_q replays the source on [0, b_{q+1}]; b_{q+1} is the (q+1)-th anchor.
    const bool has_end = q < src_anchors.size();
    Rational remaining = horizon - c;
    Rational length = has_end && src_anchors[q] < remaining ? src_anchors[q] : remaining;
    if (length > src.end()) {
      throw DomainError("phi: source covers [0, " + format_rational(src.end()) + "] but the replay needs [0, " +
                        format_rational(length) + "]");
    }
    for (std::size_t i = 1; i < src.breakpoint_count() && src.time(i) < length; ++i) {
      auto v = src.value(i);
      writer.push(c + src.time(i), {v.begin(), v.end()});
    }
    writer.push(c + length, src.eval(length));
    if (!has_end || src_anchors[q] > remaining) break;
    c += src_anchors[q];
    anchors.push_back(c);
    if (c == horizon) break;
  }
  return LinkedTemplate(Template(std::move(writer).finish()), std::move(anchors));
}

LinkedTemplate phi(const LinkedGenerator& source, const Rational& horizon) {
  require_positive(horizon);
  // Every replayed window [0, min(b_{q+1}, T - c_q)] lies inside [0, T], and
  // any anchor b_{q+1} that matters is <= T, so [0, T] of the source suffices.
  return phi(source(horizon), horizon);
}

LinkedGenerator fk_generator(const Dims& dims, int iterates) {
  if (iterates < 0) throw DomainError("iterate count must be >= 0");
  if (iterates == 0) return [dims](const Rational& t) { return build_f1(dims, t); };
  LinkedGenerator inner = fk_generator(dims, iterates - 1);
  return [inner](const Rational& t) { return phi(inner, t); };
}

LinkedTemplate build_fk(const Dims& dims, int iterates, const Rational& horizon) {
  require_positive(horizon);
  return fk_generator(dims, iterates)(horizon);
}

std::vector<Rational> fk_anchors(const Dims& dims, int iterates, std::size_t count) {
  if (iterates < 0) throw DomainError("iterate count must be >= 0");
  // c_1 = 0 and c_{q+1} = c_q + b_{q+1}: N source anchors give N new ones.
  const std::size_t need = count;
  std::vector<Rational> anchors;
  anchors.reserve(need);
  const int d = dims.d();
  for (std::size_t p = 1; p <= need; ++p) {
    mpz_class pp(static_cast<unsigned long>(p));
    anchors.emplace_back(mpz_class(d * pp * (pp - 1) / 2));
  }
  for (int level = 0; level < iterates; ++level) {
    std::vector<Rational> next{0};
    for (std::size_t q = 1; q < anchors.size(); ++q) next.push_back(next.back() + anchors[q]);
    anchors = std::move(next);
  }
  return anchors;
}

}  // namespace pgn
