#pragma once

// Finite-horizon diagnostics: time spent above a height threshold, the
// singularity quantity Q^{1/m} min <q theta>, and the weak-stable gap bound.

#include "pgn/minima.hpp"

#include <cstdint>
#include <vector>

namespace pgn {

struct OccupationProfile {
  double threshold;  ///< M, compared against log lambda_1
  double horizon;    ///< T
  double dt;
  std::size_t samples;
  std::size_t hits;
  double fraction;  ///< hits / samples
};

/// Left Riemann sum: samples t_i = i dt for i < N = round(T / dt), counting
/// those with log lambda_1(a_t x) >= M. Throws DomainError unless T > 0,
/// dt > 0 and N >= 1.
OccupationProfile occupation_fraction(const Lattice& x, double horizon, double threshold, double dt,
                                      const MinimaOptions& options = {});

struct ProbeSample {
  std::uint64_t q;
  double s;  ///< Q^{1/m} min_{q <= Q} <q theta>
};

struct ProbeResult {
  std::vector<ProbeSample> samples;  ///< on the geometric grid
  double min_s;                      ///< minimum of S(Q) over every Q <= Q_max
  std::uint64_t argmin_q;
};

/// <q theta> is the sup-norm distance from q theta to Z^m. The grid holds
/// round(10^(k / per_decade)) for k >= 0, deduplicated, plus Q_max.
/// Throws DomainError if theta is empty, Q_max < 1 or per_decade < 1.
ProbeResult singularity_probe(const std::vector<HighReal>& theta, std::uint64_t q_max, int per_decade = 4);

/// kappa(h) = ||h||_op * ||h^-1||_op in the sup operator norm. For h in
/// H^- H^0 and t >= 0, |log lambda_i(a_t h x) - log lambda_i(a_t x)| <= log kappa(h).
double weak_stable_kappa(const HpMatrix& h);

}  // namespace pgn
