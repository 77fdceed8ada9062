#pragma once

// Successive minima in the sup norm.
//
// The fast path LLL-reduces the basis (Euclidean, working precision) and then
// finds lambda_1, lambda_2, ... one at a time. For lambda_i the first i - 1
// basis columns span the saturated sublattice of the vectors already found;
// a branch and bound over the remaining coefficients picks each coefficient
// near the minimizer of an LP lower bound, so skewed lattices with huge
// numbers of near-ties are never enumerated point by point.

#include "pgn/lattice.hpp"

#include <cstdint>
#include <vector>

namespace pgn {

struct MinimaOptions {
  std::uint64_t node_budget = 10'000'000;
};

/// lambda_1 <= ... <= lambda_d. Throws BudgetError if the search exceeds
/// the node budget.
std::vector<double> successive_minima(const Lattice& x, const MinimaOptions& options = {});

/// Brute force over the coefficient box [-bound, bound]^d: candidates sorted
/// by norm, picked greedily when independent of those already picked.
/// Throws DomainError if bound < 1.
std::vector<double> successive_minima_oracle(const Lattice& x, long bound);

/// A box size for which the oracle is exact:
/// floor(max_j ||row_j(B^-1)||_1 * max_i ||b_i||_inf). Any vector of norm at
/// most lambda_d <= max_i ||b_i|| has coefficients inside it.
long oracle_sufficient_bound(const Lattice& x);

/// Reuses the reduced basis between nearby flow times.
class MinimaTracker {
public:
  MinimaTracker(const Lattice& x, MinimaOptions options = {});

  /// Successive minima of a_t x. Throws RangeError for t past the flow limit.
  std::vector<double> at(double t);

private:
  Dims dims_;
  HpMatrix reduced_;  ///< reduced basis of a_{t_} x
  double t_ = 0;
  MinimaOptions options_;
};

}  // namespace pgn
