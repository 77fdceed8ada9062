#pragma once

// Log-minima traces t -> (log lambda_1(a_t x), ..., log lambda_d(a_t x)) and
// their comparison with templates.

#include "pgn/minima.hpp"
#include "pgn/template_core.hpp"

#include <string>
#include <vector>

namespace pgn {

struct MinimaTrace {
  int d = 0;
  std::vector<double> times;
  std::vector<std::vector<double>> minima;
  std::vector<std::vector<double>> log_minima;
};

/// 0, dt, 2 dt, ..., N dt with N = round(t_max / dt). Throws DomainError
/// unless dt > 0 and t_max >= 0.
std::vector<double> uniform_grid(double t_max, double dt);

/// Throws DomainError if the grid is empty or not strictly increasing;
/// InvariantError if a sample breaks 1/d! <= prod lambda_i <= 1 beyond a
/// relative 1e-6; BudgetError / RangeError name the failing t.
MinimaTrace log_minima_trace(const Lattice& x, const std::vector<double>& grid, const MinimaOptions& options = {});

/// Minkowski's bounds for a covolume-1 lattice in the sup norm.
void check_minkowski(const std::vector<double>& minima, double t);

std::string trace_to_csv(const MinimaTrace& trace);

/// Throws ParseError on a malformed header or row.
MinimaTrace trace_from_csv(const std::string& text);

/// Linear interpolation of the log-minima, with every double converted
/// exactly to a rational. Throws DomainError unless the first time is 0.
PiecewisePath trace_as_template(const MinimaTrace& trace, const Dims& dims);

struct WindowSup {
  double t_start;
  double t_end;
  double sup;
};

struct TraceComparison {
  double sup_dist = 0;
  std::vector<WindowSup> windows;
};

/// max over samples and coordinates of |log lambda_i(t) - f_i(t)|, overall
/// and per window [k w, (k+1) w); the last window is closed. Growing window sups are evidence against
/// f ~ f_x, bounded ones evidence for it; neither is a proof.
/// Throws DomainError if d differs, window <= 0, or a sample lies outside
/// the template domain.
TraceComparison compare_trace_to_template(const MinimaTrace& trace, const PiecewisePath& f, double window);

}  // namespace pgn
