#include "pgn/minima.hpp"

#include "pgn/errors.hpp"
#include "reduction.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pgn {

namespace {

using boost::multiprecision::abs;

// Margin on the feasible coefficient range, against rounding in the double
// copy of the basis.
constexpr double kSlack = 1e-9;
// Norms this close count as ties. The oracle ranks ties by their exact norm.
constexpr double kTie = 1e-12;
constexpr double kMaxCoefficient = 0x1.0p52;

HighReal hp_norm(const HpMatrix& r, const std::vector<double>& c) {
  HighReal best = 0;
  for (int row = 0; row < r.rows; ++row) {
    HighReal s = 0;
    for (int j = 0; j < r.cols; ++j) {
      if (c[j] != 0) s += HighReal(c[j]) * r(row, j);
    }
    s = abs(s);
    if (s > best) best = s;
  }
  return best;
}

Matrix<double> to_double(const HpMatrix& m) {
  Matrix<double> out(m.rows, m.cols);
  for (std::size_t i = 0; i < m.a.size(); ++i) out.a[i] = m.a[i].convert_to<double>();
  return out;
}

// Dual certificates for min_z ||x + W_l z||_inf, W_l = columns 0..l-1: every
// y with y^T W_l = 0 and ||y||_1 = 1 gives |y . x| as a lower bound, and the
// circuits (cofactor vectors of (l+1)-row subsets) attain the minimum.
std::vector<std::vector<std::vector<double>>> level_circuits(const HpMatrix& r) {
  const int d = r.rows;
  std::vector<std::vector<std::vector<double>>> out(d);
  for (int k = 0; k < d; ++k) {
    std::vector<double> e(d, 0.0);
    e[k] = 1.0;
    out[0].push_back(std::move(e));
  }
  for (int l = 1; l < d; ++l) {
    HpMatrix w(d, l);
    for (int j = 0; j < l; ++j) {
      HighReal scale = 0;
      for (int i = 0; i < d; ++i) scale = std::max(scale, abs(r(i, j)));
      for (int i = 0; i < d; ++i) w(i, j) = r(i, j) / scale;
    }
    for (unsigned mask = 0; mask < (1u << d); ++mask) {
      if (__builtin_popcount(mask) != l + 1) continue;
      std::vector<int> rows;
      for (int i = 0; i < d; ++i) {
        if (mask & (1u << i)) rows.push_back(i);
      }
      std::vector<HighReal> y(d);
      HighReal total = 0;
      for (int k = 0; k <= l; ++k) {
        HpMatrix minor(l, l);
        for (int a = 0, row = 0; a <= l; ++a) {
          if (a == k) continue;
          for (int j = 0; j < l; ++j) minor(row, j) = w(rows[a], j);
          ++row;
        }
        HighReal c = determinant(minor);
        y[rows[k]] = k % 2 == 0 ? c : HighReal(-c);
        total += abs(c);
      }
      if (total < HighReal(1e-60)) continue;
      std::vector<double> yd(d);
      for (int i = 0; i < d; ++i) yd[i] = (y[i] / total).convert_to<double>();
      out[l].push_back(std::move(yd));
    }
  }
  return out;
}

double dot(const std::vector<double>& y, const std::vector<double>& x) {
  double s = 0;
  for (std::size_t i = 0; i < y.size(); ++i) s += y[i] * x[i];
  return s;
}

// Shortest vector whose coefficients on columns outer..d-1 are not all zero.
class Search {
public:
  Search(const HpMatrix& hp, int outer, std::uint64_t budget)
      : r_(to_double(hp)), circuits_(level_circuits(hp)), d_(hp.rows), outer_(outer), budget_(budget) {}

  std::vector<double> run() {
    // Incumbent: the shortest outer column.
    for (int j = outer_; j < d_; ++j) {
      std::vector<double> c(d_, 0.0);
      c[j] = 1;
      double norm = 0;
      for (int i = 0; i < d_; ++i) norm = std::max(norm, std::fabs(r_(i, j)));
      if (best_c_.empty() || norm < best_) {
        best_ = norm;
        best_c_ = c;
      }
    }
    coeff_.assign(d_, 0.0);
    descend(d_ - 1, std::vector<double>(d_, 0.0), true);
    return best_c_;
  }

private:
  struct Line {
    std::vector<double> a;
    std::vector<double> b;
    double phi(double c) const {
      double v = 0;
      for (std::size_t k = 0; k < a.size(); ++k) v = std::max(v, std::fabs(a[k] + c * b[k]));
      return v;
    }
  };

  // A subtree is worth visiting only if it could beat the incumbent by more
  // than rounding; exact ties (common on flowed lattices) are not explored.
  double bound() const { return best_ * (1 - kTie); }

  void descend(int level, const std::vector<double>& partial, bool zero_above) {
    std::vector<double> col(d_);
    for (int i = 0; i < d_; ++i) col[i] = r_(i, level);
    Line line;
    for (const auto& y : circuits_[level]) {
      line.a.push_back(dot(y, partial));
      line.b.push_back(dot(y, col));
    }
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    const double limit = best_ * (1 + kSlack);
    for (std::size_t k = 0; k < line.a.size(); ++k) {
      double a = line.a[k];
      double b = line.b[k];
      if (b == 0) {
        if (std::fabs(a) > limit) return;
        continue;
      }
      double x1 = (-limit - a) / b;
      double x2 = (limit - a) / b;
      if (x1 > x2) std::swap(x1, x2);
      lo = std::max(lo, x1);
      hi = std::min(hi, x2);
    }
    lo = std::ceil(std::max(lo, -kMaxCoefficient));
    hi = std::floor(std::min(hi, kMaxCoefficient));
    if (level >= outer_ && zero_above) lo = std::max(lo, level == outer_ ? 1.0 : 0.0);
    if (lo > hi) return;
    // phi is convex in c: bisect on its forward difference for the minimizer.
    double left = lo;
    double right = hi;
    while (left < right) {
      double mid = std::floor((left + right) / 2);
      if (line.phi(mid + 1) - line.phi(mid) >= 0) {
        right = mid;
      } else {
        left = mid + 1;
      }
    }
    if (std::fabs(left) >= kMaxCoefficient) {
      throw BudgetError("successive minima: coefficient exceeds 2^52 at level " + std::to_string(level));
    }
    double up = left;
    double down = left - 1;
    bool up_open = true;
    bool down_open = down >= lo;
    while (up_open || down_open) {
      double pu = up_open ? line.phi(up) : 0;
      double pd = down_open ? line.phi(down) : 0;
      bool take_up = up_open && (!down_open || pu <= pd);
      double c = take_up ? up : down;
      double value = take_up ? pu : pd;
      if (value >= bound()) {
        (take_up ? up_open : down_open) = false;
        continue;
      }
      visit(level, partial, col, c, zero_above, value);
      if (take_up) {
        up += 1;
        up_open = up <= hi;
      } else {
        down -= 1;
        down_open = down >= lo;
      }
    }
  }

  void visit(int level, const std::vector<double>& partial, const std::vector<double>& col, double c, bool zero_above,
             double value) {
    if (++nodes_ > budget_) {
      throw BudgetError("successive minima: search exceeded the budget of " + std::to_string(budget_) + " nodes");
    }
    coeff_[level] = c;
    if (level == 0) {
      consider_leaf(value);
    } else {
      std::vector<double> next(partial);
      for (int i = 0; i < d_; ++i) next[i] += c * col[i];
      descend(level - 1, next, zero_above && c == 0);
    }
    coeff_[level] = 0;
  }

  void consider_leaf(double norm) {
    best_ = norm;
    best_c_ = coeff_;
  }

  Matrix<double> r_;
  std::vector<std::vector<std::vector<double>>> circuits_;
  int d_;
  int outer_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  double best_ = 0;
  std::vector<double> best_c_;
  std::vector<double> coeff_;
};

// Replaces columns outer..d-1 by a basis of the same span whose column
// `outer` is sum_j c_j b_j / gcd, so the first outer + 1 columns span the
// saturation of the old span plus the new vector.
void saturate(HpMatrix& r, const std::vector<double>& c, int outer) {
  const int d = r.cols;
  std::vector<long long> u(c.begin(), c.end());
  for (;;) {
    int a = -1;
    for (int j = outer; j < d; ++j) {
      if (u[j] != 0 && (a < 0 || std::llabs(u[j]) < std::llabs(u[a]))) a = j;
    }
    bool done = true;
    for (int b = outer; b < d; ++b) {
      if (b == a || u[b] == 0) continue;
      long long q = u[b] / u[a];
      u[b] -= q * u[a];
      // u_a b_a + u_b b_b = u_a (b_a + q b_b) + (u_b - q u_a) b_b
      detail::add_column(r, a, b, HighReal(q));
      if (u[b] != 0) done = false;
    }
    if (done) {
      if (u[a] < 0) {
        for (int i = 0; i < r.rows; ++i) r(i, a) = -r(i, a);
      }
      detail::swap_columns(r, a, outer);
      return;
    }
  }
}

std::vector<double> minima_of_reduced(HpMatrix r, const MinimaOptions& options) {
  const int d = r.cols;
  std::vector<double> values;
  for (int i = 0; i < d; ++i) {
    if (i > 0) detail::lll_reduce(r, i);
    std::vector<double> c = Search(r, i, options.node_budget).run();
    values.push_back(hp_norm(r, c).convert_to<double>());
    if (i + 1 < d) saturate(r, c, i);
  }
  return values;
}

bool independent(std::vector<std::vector<long long>> rows) {
  // Fraction-free elimination; entries stay bounded by minors of the input.
  const std::size_t k = rows.size();
  const std::size_t d = rows[0].size();
  std::vector<std::vector<__int128>> m(k, std::vector<__int128>(d));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < d; ++j) m[i][j] = rows[i][j];
  }
  __int128 prev = 1;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < d && rank < k; ++col) {
    std::size_t piv = rank;
    while (piv < k && m[piv][col] == 0) ++piv;
    if (piv == k) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t i = rank + 1; i < k; ++i) {
      for (std::size_t j = col + 1; j < d; ++j) m[i][j] = (m[rank][col] * m[i][j] - m[i][col] * m[rank][j]) / prev;
      m[i][col] = 0;
    }
    prev = m[rank][col];
    ++rank;
  }
  return rank == k;
}

}  // namespace

std::vector<double> successive_minima(const Lattice& x, const MinimaOptions& options) {
  HpMatrix r = x.basis();
  detail::lll_reduce(r);
  return minima_of_reduced(std::move(r), options);
}

std::vector<double> successive_minima_oracle(const Lattice& x, long bound) {
  if (bound < 1) throw DomainError("oracle coefficient bound must be >= 1");
  const int d = x.d();
  const Matrix<double> b = to_double(x.basis());
  // lambda_d never exceeds the longest basis vector.
  double cap = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) cap = std::max(cap, std::fabs(b(i, j)));
  }
  cap *= 1 + kSlack;

  struct Candidate {
    double norm;
    std::vector<long long> c;
  };
  std::vector<Candidate> cands;
  std::vector<long long> c(d, -bound);
  for (;;) {
    // Keep one of each +-c pair: first nonzero coefficient positive.
    int first = 0;
    while (first < d && c[first] == 0) ++first;
    if (first < d && c[first] > 0) {
      double norm = 0;
      for (int i = 0; i < d; ++i) {
        double s = 0;
        for (int j = 0; j < d; ++j) s += b(i, j) * static_cast<double>(c[j]);
        norm = std::max(norm, std::fabs(s));
      }
      if (norm <= cap) cands.push_back({norm, c});
    }
    int k = d - 1;
    while (k >= 0 && c[k] == bound) c[k--] = -bound;
    if (k < 0) break;
    ++c[k];
  }
  std::sort(cands.begin(), cands.end(), [](const Candidate& p, const Candidate& q) {
    return p.norm != q.norm ? p.norm < q.norm : p.c < q.c;
  });

  auto exact = [&](const std::vector<long long>& v) {
    return hp_norm(x.basis(), std::vector<double>(v.begin(), v.end()));
  };
  std::vector<std::vector<long long>> chosen;
  std::vector<double> values;
  std::vector<bool> used(cands.size(), false);
  std::size_t start = 0;
  while (static_cast<int>(chosen.size()) < d) {
    std::size_t lead = start;
    auto try_add = [&](std::size_t idx) {
      auto rows = chosen;
      rows.push_back(cands[idx].c);
      return independent(std::move(rows));
    };
    while (lead < cands.size() && (used[lead] || !try_add(lead))) ++lead;
    if (lead == cands.size()) break;
    // Among independent near-ties, the exact norm decides.
    std::size_t pick = lead;
    HighReal pick_norm = exact(cands[lead].c);
    for (std::size_t j = lead + 1; j < cands.size() && cands[j].norm <= cands[lead].norm * (1 + kTie); ++j) {
      if (used[j] || !try_add(j)) continue;
      HighReal e = exact(cands[j].c);
      if (e < pick_norm) {
        pick = j;
        pick_norm = e;
      }
    }
    used[pick] = true;
    chosen.push_back(cands[pick].c);
    values.push_back(pick_norm.convert_to<double>());
    start = lead;
  }
  if (static_cast<int>(values.size()) < d) {
    throw DomainError("oracle box [-" + std::to_string(bound) + ", " + std::to_string(bound) +
                      "]^d holds no d independent vectors");
  }
  return values;
}

long oracle_sufficient_bound(const Lattice& x) {
  const HpMatrix inv = inverse(x.basis());
  const int d = x.d();
  HighReal longest = 0;
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) longest = std::max(longest, abs(x.basis()(i, j)));
  }
  HighReal bound = floor(operator_norm_inf(inv) * longest);
  return std::max(1L, bound.convert_to<long>());
}

MinimaTracker::MinimaTracker(const Lattice& x, MinimaOptions options)
    : dims_(x.dims()), reduced_(x.basis()), options_(options) {
  detail::lll_reduce(reduced_);
}

std::vector<double> MinimaTracker::at(double t) {
  if (!std::isfinite(t) || std::fabs(t) > flow_time_limit(dims_)) {
    throw RangeError("flow time " + std::to_string(t) + " outside the safe range |t| <= " +
                     std::to_string(flow_time_limit(dims_)));
  }
  if (t != t_) {
    const HighReal step = HighReal(t) - HighReal(t_);
    const HighReal up = exp(step / dims_.m());
    const HighReal down = exp(-step / dims_.n());
    for (int i = 0; i < dims_.d(); ++i) {
      const HighReal& s = i < dims_.m() ? up : down;
      for (int j = 0; j < dims_.d(); ++j) reduced_(i, j) *= s;
    }
    t_ = t;
    detail::lll_reduce(reduced_);
  }
  return minima_of_reduced(reduced_, options_);
}

}  // namespace pgn
