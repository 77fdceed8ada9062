#pragma once

#include "pgn/lattice.hpp"

namespace pgn::detail {

/// LLL reduction (Euclidean, delta = 0.99) of the columns of b, in place.
/// With barrier = s > 0, columns s - 1 and s are never swapped, so the span of
/// the first s columns is preserved.
void lll_reduce(HpMatrix& b, int barrier = 0);

/// b_dst += q * b_src.
void add_column(HpMatrix& b, int dst, int src, const HighReal& q);

void swap_columns(HpMatrix& b, int i, int j);

}  // namespace pgn::detail
