#include "pgn/diagnostics.hpp"

#include "pgn/errors.hpp"

#include <cmath>

namespace pgn {

OccupationProfile occupation_fraction(const Lattice& x, double horizon, double threshold, double dt,
                                      const MinimaOptions& options) {
  if (!(horizon > 0) || !std::isfinite(horizon)) throw DomainError("horizon T must be > 0");
  if (!(dt > 0) || !std::isfinite(dt)) throw DomainError("time step dt must be > 0");
  if (!std::isfinite(threshold)) throw DomainError("threshold M must be finite");
  const double count = std::round(horizon / dt);
  if (count < 1) throw DomainError("T / dt rounds to zero samples");
  if (count > 1e8) throw DomainError("T / dt exceeds 1e8 samples");
  OccupationProfile out{threshold, horizon, dt, static_cast<std::size_t>(count), 0, 0};
  MinimaTracker tracker(x, options);
  for (std::size_t i = 0; i < out.samples; ++i) {
    if (std::log(tracker.at(static_cast<double>(i) * dt)[0]) >= threshold) ++out.hits;
  }
  out.fraction = static_cast<double>(out.hits) / static_cast<double>(out.samples);
  return out;
}

ProbeResult singularity_probe(const std::vector<HighReal>& theta, std::uint64_t q_max, int per_decade) {
  if (theta.empty()) throw DomainError("theta must have at least one coordinate");
  if (q_max < 1) throw DomainError("Q_max must be >= 1");
  if (per_decade < 1) throw DomainError("grid density must be >= 1 point per decade");
  const double inv_m = 1.0 / static_cast<double>(theta.size());

  std::vector<std::uint64_t> grid;
  for (int k = 0;; ++k) {
    double q = std::round(std::pow(10.0, static_cast<double>(k) / per_decade));
    if (q > static_cast<double>(q_max)) break;
    auto qi = static_cast<std::uint64_t>(q);
    if (grid.empty() || grid.back() != qi) grid.push_back(qi);
  }
  if (grid.back() != q_max) grid.push_back(q_max);

  std::vector<HighReal> frac(theta.size());
  std::vector<HighReal> step(theta.size());
  for (std::size_t k = 0; k < theta.size(); ++k) step[k] = theta[k] - floor(theta[k]);
  HighReal best_dist = 1;
  ProbeResult out{{}, 0, 1};
  std::size_t next = 0;
  for (std::uint64_t q = 1; q <= q_max; ++q) {
    HighReal dist = 0;
    for (std::size_t k = 0; k < theta.size(); ++k) {
      frac[k] += step[k];
      if (frac[k] >= 1) frac[k] -= 1;
      HighReal e = frac[k] < HighReal(0.5) ? frac[k] : HighReal(1 - frac[k]);
      if (e > dist) dist = e;
    }
    if (dist < best_dist) best_dist = dist;
    const double s = std::pow(static_cast<double>(q), inv_m) * best_dist.convert_to<double>();
    if (q == 1 || s < out.min_s) {
      out.min_s = s;
      out.argmin_q = q;
    }
    if (next < grid.size() && grid[next] == q) {
      out.samples.push_back({q, s});
      ++next;
    }
  }
  return out;
}

double weak_stable_kappa(const HpMatrix& h) {
  return (operator_norm_inf(h) * operator_norm_inf(inverse(h))).convert_to<double>();
}

}  // namespace pgn
