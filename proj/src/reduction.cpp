#include "reduction.hpp"

#include "pgn/errors.hpp"

namespace pgn::detail {

namespace {

constexpr long kMaxIterations = 1'000'000;

struct GramSchmidt {
  Matrix<HighReal> mu;
  std::vector<HighReal> norm2;  ///< |b*_i|^2
};

GramSchmidt gram_schmidt(const HpMatrix& b) {
  const int d = b.cols;
  const int rows = b.rows;
  GramSchmidt gs{Matrix<HighReal>(d, d), std::vector<HighReal>(d)};
  HpMatrix star(rows, d);
  for (int i = 0; i < d; ++i) {
    for (int r = 0; r < rows; ++r) star(r, i) = b(r, i);
    for (int j = 0; j < i; ++j) {
      HighReal dot = 0;
      for (int r = 0; r < rows; ++r) dot += b(r, i) * star(r, j);
      gs.mu(i, j) = dot / gs.norm2[j];
      for (int r = 0; r < rows; ++r) star(r, i) -= gs.mu(i, j) * star(r, j);
    }
    HighReal n2 = 0;
    for (int r = 0; r < rows; ++r) n2 += star(r, i) * star(r, i);
    if (n2 == 0) throw InvariantError("lattice basis is linearly dependent");
    gs.norm2[i] = n2;
  }
  return gs;
}

}  // namespace

void add_column(HpMatrix& b, int dst, int src, const HighReal& q) {
  for (int r = 0; r < b.rows; ++r) b(r, dst) += q * b(r, src);
}

void swap_columns(HpMatrix& b, int i, int j) {
  for (int r = 0; r < b.rows; ++r) std::swap(b(r, i), b(r, j));
}

void lll_reduce(HpMatrix& b, int barrier) {
  const int d = b.cols;
  if (d < 2) return;
  const HighReal delta("0.99");
  GramSchmidt gs = gram_schmidt(b);
  int k = 1;
  for (long iter = 0; k < d; ++iter) {
    if (iter > kMaxIterations) throw Error("lattice reduction did not terminate");
    for (int j = k - 1; j >= 0; --j) {
      HighReal q = round(gs.mu(k, j));
      if (q == 0) continue;
      add_column(b, k, j, -q);
      for (int i = 0; i < j; ++i) gs.mu(k, i) -= q * gs.mu(j, i);
      gs.mu(k, j) -= q;
    }
    const HighReal& mu = gs.mu(k, k - 1);
    if (k == barrier || gs.norm2[k] >= (delta - mu * mu) * gs.norm2[k - 1]) {
      ++k;
      continue;
    }
    swap_columns(b, k, k - 1);
    gs = gram_schmidt(b);
    k = std::max(k - 1, 1);
  }
}

}  // namespace pgn::detail
