#include "pgn/trace.hpp"

#include "pgn/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace pgn {

namespace {

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string header(int d) {
  std::string h = "t";
  for (int i = 1; i <= d; ++i) h += ",lambda_" + std::to_string(i);
  for (int i = 1; i <= d; ++i) h += ",log_lambda_" + std::to_string(i);
  return h;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_double(const std::string& s, std::size_t line_no) {
  const char* begin = s.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (s.empty() || end != begin + s.size()) {
    throw ParseError("trace CSV line " + std::to_string(line_no) + ": not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

std::vector<double> uniform_grid(double t_max, double dt) {
  if (!(dt > 0) || !std::isfinite(dt)) throw DomainError("time step dt must be > 0");
  if (!(t_max >= 0) || !std::isfinite(t_max)) throw DomainError("t_max must be >= 0");
  const double count = std::round(t_max / dt);
  if (count > 1e8) throw DomainError("grid would hold more than 1e8 samples");
  std::vector<double> grid;
  for (long i = 0; i <= static_cast<long>(count); ++i) grid.push_back(static_cast<double>(i) * dt);
  return grid;
}

void check_minkowski(const std::vector<double>& minima, double t) {
  double prod = 1;
  double factorial = 1;
  for (std::size_t i = 0; i < minima.size(); ++i) {
    prod *= minima[i];
    factorial *= static_cast<double>(i + 1);
  }
  const double tol = 1e-6;
  if (prod < (1 / factorial) * (1 - tol) || prod > 1 + tol) {
    throw InvariantError("Minkowski bounds violated at t = " + g17(t) + ": product of minima " + g17(prod) +
                         " outside [1/d!, 1]");
  }
  for (std::size_t i = 1; i < minima.size(); ++i) {
    if (minima[i] < minima[i - 1]) throw InvariantError("successive minima out of order at t = " + g17(t));
  }
}

MinimaTrace log_minima_trace(const Lattice& x, const std::vector<double>& grid, const MinimaOptions& options) {
  if (grid.empty()) throw DomainError("time grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw DomainError("time grid must be strictly increasing");
  }
  MinimaTrace trace;
  trace.d = x.d();
  MinimaTracker tracker(x, options);
  for (double t : grid) {
    std::vector<double> lambda;
    try {
      lambda = tracker.at(t);
    } catch (const BudgetError& e) {
      throw BudgetError(std::string(e.what()) + " (at t = " + g17(t) + ")");
    }
    check_minkowski(lambda, t);
    std::vector<double> logs;
    for (double v : lambda) logs.push_back(std::log(v));
    trace.times.push_back(t);
    trace.minima.push_back(std::move(lambda));
    trace.log_minima.push_back(std::move(logs));
  }
  return trace;
}

std::string trace_to_csv(const MinimaTrace& trace) {
  std::string out = header(trace.d) + "\n";
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    out += g17(trace.times[s]);
    for (double v : trace.minima[s]) out += "," + g17(v);
    for (double v : trace.log_minima[s]) out += "," + g17(v);
    out += "\n";
  }
  return out;
}

MinimaTrace trace_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw ParseError("trace CSV is empty");
  auto cols = split(line);
  if (cols.size() < 3 || cols.size() % 2 == 0) throw ParseError("trace CSV: unexpected header '" + line + "'");
  MinimaTrace trace;
  trace.d = static_cast<int>((cols.size() - 1) / 2);
  if (line != header(trace.d)) throw ParseError("trace CSV: expected header '" + header(trace.d) + "'");
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    auto cells = split(line);
    if (cells.size() != cols.size()) {
      throw ParseError("trace CSV line " + std::to_string(line_no) + ": expected " + std::to_string(cols.size()) +
                       " fields");
    }
    trace.times.push_back(parse_double(cells[0], line_no));
    std::vector<double> lambda;
    std::vector<double> logs;
    for (int i = 0; i < trace.d; ++i) {
      lambda.push_back(parse_double(cells[1 + i], line_no));
      logs.push_back(parse_double(cells[1 + trace.d + i], line_no));
    }
    trace.minima.push_back(std::move(lambda));
    trace.log_minima.push_back(std::move(logs));
  }
  return trace;
}

PiecewisePath trace_as_template(const MinimaTrace& trace, const Dims& dims) {
  if (trace.d != dims.d()) {
    throw DomainError("trace has d = " + std::to_string(trace.d) + " but (m, n) gives d = " +
                      std::to_string(dims.d()));
  }
  if (trace.times.size() < 2) throw DomainError("a template needs at least two trace samples");
  std::vector<Rational> times;
  std::vector<Rational> values;
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    times.push_back(rational_from_double(trace.times[s]));
    for (double v : trace.log_minima[s]) values.push_back(rational_from_double(v));
  }
  return PiecewisePath(dims, std::move(times), std::move(values));
}

TraceComparison compare_trace_to_template(const MinimaTrace& trace, const PiecewisePath& f, double window) {
  if (trace.d != f.d()) {
    throw DomainError("trace has d = " + std::to_string(trace.d) + " but the template has d = " +
                      std::to_string(f.d()));
  }
  if (!(window > 0) || !std::isfinite(window)) throw DomainError("window width must be > 0");
  const double end = to_double(f.end());
  TraceComparison out;
  for (std::size_t s = 0; s < trace.times.size(); ++s) {
    const double t = trace.times[s];
    const Rational tr = rational_from_double(t);
    if (tr < 0 || tr > f.end()) {
      throw DomainError("trace time " + g17(t) + " outside the template domain [0, " + g17(end) + "]");
    }
    std::vector<Rational> v = f.eval(tr);
    double gap = 0;
    for (int i = 0; i < trace.d; ++i) gap = std::max(gap, std::fabs(trace.log_minima[s][i] - to_double(v[i])));
    out.sup_dist = std::max(out.sup_dist, gap);
    double k = std::floor(t / window);
    // A last sample on a window boundary closes the previous window.
    if (s + 1 == trace.times.size() && k > 0 && k * window == t) k -= 1;
    if (out.windows.empty() || out.windows.back().t_start != k * window) {
      out.windows.push_back({k * window, (k + 1) * window, gap});
    } else {
      out.windows.back().sup = std::max(out.windows.back().sup, gap);
    }
  }
  return out;
}

}  // namespace pgn
