#include "pgn/pgn.h"

#include "pgn/diagnostics.hpp"
#include "pgn/errors.hpp"
#include "pgn/score_engine.hpp"
#include "pgn/template_builders.hpp"
#include "pgn/template_io.hpp"
#include "pgn/trace.hpp"

#include <cstdlib>
#include <cstring>
#include <new>

using nlohmann::json;

struct pgn_template {
  pgn::PiecewisePath path;
  std::vector<pgn::Rational> anchors;
  json provenance;
};

struct pgn_lattice {
  pgn::Lattice lattice;
};

struct pgn_trace {
  pgn::MinimaTrace trace;
};

namespace {

thread_local std::string last_error;

class ArgumentError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

template <class F>
pgn_status guarded(F&& body) {
  try {
    body();
    return PGN_OK;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return PGN_ERR_INVALID_ARGUMENT;
  } catch (const pgn::DomainError& e) {
    last_error = e.what();
    return PGN_ERR_DOMAIN;
  } catch (const pgn::InvalidTemplateError& e) {
    last_error = e.what();
    return PGN_ERR_INVALID_TEMPLATE;
  } catch (const pgn::BudgetError& e) {
    last_error = e.what();
    return PGN_ERR_BUDGET;
  } catch (const pgn::RangeError& e) {
    last_error = e.what();
    return PGN_ERR_RANGE;
  } catch (const pgn::InvariantError& e) {
    last_error = e.what();
    return PGN_ERR_INVARIANT;
  } catch (const pgn::ParseError& e) {
    last_error = e.what();
    return PGN_ERR_PARSE;
  } catch (const json::exception& e) {
    last_error = std::string("JSON: ") + e.what();
    return PGN_ERR_PARSE;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return PGN_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return PGN_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown failure";
    return PGN_ERR_INTERNAL;
  }
}

template <class T>
const T& need(const T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
  return *p;
}

void need_out(const void* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

std::string str_arg(const char* s, const char* what) {
  if (s == nullptr) throw ArgumentError(std::string(what) + " is null");
  return s;
}

pgn::Rational rational_arg(const char* s, const char* what) { return pgn::parse_rational(str_arg(s, what)); }

pgn::HpMatrix matrix_arg(const double* data, int rows, int cols, const char* what) {
  if (rows * cols > 0 && data == nullptr) throw ArgumentError(std::string(what) + " is null");
  pgn::HpMatrix m(rows, cols);
  for (int i = 0; i < rows * cols; ++i) {
    if (!std::isfinite(data[i])) throw pgn::DomainError(std::string(what) + " has a non-finite entry");
    m.a[i] = data[i];
  }
  return m;
}

json segment_json(const pgn::ScoreSegment& seg) {
  json intervals = json::array();
  for (std::size_t k = 0; k < seg.intervals.size(); ++k) {
    intervals.push_back({{"p", seg.intervals[k].p},
                         {"q", seg.intervals[k].q},
                         {"M_plus", seg.m_values[k].first},
                         {"M_minus", seg.m_values[k].second}});
  }
  return {{"t_start", pgn::format_rational(seg.t_start)},
          {"t_end", pgn::format_rational(seg.t_end)},
          {"intervals", std::move(intervals)},
          {"S_plus", seg.partition.plus},
          {"delta", seg.delta}};
}

json score_json(const pgn::ScoreReport& r) {
  json segments = json::array();
  for (const auto& seg : r.segments) segments.push_back(segment_json(seg));
  pgn::Rational err = abs(r.average - r.target);
  return {{"m", r.dims.m()},
          {"n", r.dims.n()},
          {"horizon", pgn::format_rational(r.horizon)},
          {"segments", std::move(segments)},
          {"average", pgn::format_rational(r.average)},
          {"target", pgn::format_rational(r.target)},
          {"abs_error", pgn::format_rational(err)},
          {"average_float", pgn::to_double(r.average)},
          {"liminf_estimate", pgn::format_rational(r.liminf_estimate)},
          {"liminf_label", "finite-horizon estimate: least running average over the last half of the horizon"}};
}

json validation_json(const pgn::ValidationReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json item = {{"axiom", pgn::axiom_name(v.axiom)},
                 {"component", v.component},
                 {"from", pgn::format_rational(v.from)},
                 {"to", pgn::format_rational(v.to)},
                 {"detail", v.detail}};
    if (v.slope) item["slope"] = pgn::format_rational(*v.slope);
    violations.push_back(std::move(item));
  }
  return {{"valid", r.passed()},
          {"ordering_ok", r.ordering_ok},
          {"slopes_ok", r.slopes_ok},
          {"convexity_ok", r.convexity_ok},
          {"violations", std::move(violations)}};
}

constexpr const char* kDiagnosticLabel = "finite-horizon diagnostic";

}  // namespace

extern "C" {

const char* pgn_version(void) { return "1.0.0"; }

const char* pgn_status_name(pgn_status status) {
  switch (status) {
    case PGN_OK: return "ok";
    case PGN_ERR_INVALID_ARGUMENT: return "invalid argument";
    case PGN_ERR_DOMAIN: return "domain error";
    case PGN_ERR_INVALID_TEMPLATE: return "invalid template";
    case PGN_ERR_BUDGET: return "budget exceeded";
    case PGN_ERR_RANGE: return "range error";
    case PGN_ERR_INVARIANT: return "invariant violated";
    case PGN_ERR_PARSE: return "parse error";
    case PGN_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* pgn_last_error(void) { return last_error.c_str(); }

void pgn_string_free(char* s) { std::free(s); }

pgn_status pgn_template_build(int m, int n, int iterates, const char* horizon, pgn_template** out) {
  return guarded([&] {
    need_out(out, "out");
    pgn::Dims dims(m, n);
    pgn::Rational h = rational_arg(horizon, "horizon");
    auto lt = pgn::build_fk(dims, iterates, h);
    json prov = {{"family", iterates == 0 ? "f1" : "phi_iterate"},
                 {"iterates", iterates},
                 {"horizon", pgn::format_rational(h)}};
    *out = new pgn_template{lt.path(), lt.anchors(), std::move(prov)};
  });
}

pgn_status pgn_template_standard_block(int m, int n, pgn_template** out) {
  return guarded([&] {
    need_out(out, "out");
    auto g = pgn::standard_block(pgn::Dims(m, n));
    *out = new pgn_template{g.path(), {}, json{{"family", "standard_block"}}};
  });
}

pgn_status pgn_template_from_json(const char* text, pgn_template** out) {
  return guarded([&] {
    need_out(out, "out");
    auto doc = pgn::parse_template(str_arg(text, "text"));
    *out = new pgn_template{std::move(doc.path), std::move(doc.anchors), std::move(doc.provenance)};
  });
}

pgn_status pgn_template_to_json(const pgn_template* t, char** out) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(out, "out");
    *out = copy_string(pgn::dump_template(tt.path, tt.anchors, tt.provenance));
  });
}

pgn_status pgn_template_to_csv(const pgn_template* t, char** out) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(out, "out");
    *out = copy_string(pgn::template_breakpoints_csv(tt.path));
  });
}

pgn_status pgn_template_dims(const pgn_template* t, int* m, int* n) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(m, "m");
    need_out(n, "n");
    *m = tt.path.dims().m();
    *n = tt.path.dims().n();
  });
}

pgn_status pgn_template_end(const pgn_template* t, char** rational) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(rational, "out");
    *rational = copy_string(pgn::format_rational(tt.path.end()));
  });
}

pgn_status pgn_template_eval(const pgn_template* t, const char* time, double* values) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(values, "values");
    auto v = tt.path.eval(rational_arg(time, "time"));
    for (std::size_t i = 0; i < v.size(); ++i) values[i] = pgn::to_double(v[i]);
  });
}

pgn_status pgn_template_validate(const pgn_template* t, int* passed, char** report) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(passed, "passed");
    auto r = pgn::validate_template(tt.path);
    if (report != nullptr) *report = copy_string(validation_json(r).dump(2) + "\n");
    *passed = r.passed() ? 1 : 0;
  });
}

pgn_status pgn_template_score(const pgn_template* t, const char* horizon, char** report) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(report, "report");
    pgn::Rational h = horizon == nullptr ? tt.path.end() : pgn::parse_rational(horizon);
    pgn::Template checked(tt.path);  // scores are only defined for templates
    *report = copy_string(score_json(pgn::score_template(checked.path(), h)).dump(2) + "\n");
  });
}

pgn_status pgn_template_average_delta(const pgn_template* t, const char* horizon, char** rational) {
  return guarded([&] {
    const auto& tt = need(t, "template");
    need_out(rational, "out");
    *rational = copy_string(pgn::format_rational(pgn::average_delta(tt.path, rational_arg(horizon, "horizon"))));
  });
}

pgn_status pgn_closed_form_delta(int m, int n, char** rational) {
  return guarded([&] {
    need_out(rational, "out");
    *rational = copy_string(pgn::format_rational(pgn::closed_form_delta(pgn::Dims(m, n))));
  });
}

void pgn_template_free(pgn_template* t) { delete t; }

pgn_status pgn_lattice_identity(int m, int n, pgn_lattice** out) {
  return guarded([&] {
    need_out(out, "out");
    *out = new pgn_lattice{pgn::identity_lattice(pgn::Dims(m, n))};
  });
}

pgn_status pgn_lattice_from_basis(int m, int n, const double* basis, pgn_lattice** out) {
  return guarded([&] {
    need_out(out, "out");
    pgn::Dims dims(m, n);
    *out = new pgn_lattice{pgn::Lattice(dims, matrix_arg(basis, dims.d(), dims.d(), "basis"))};
  });
}

pgn_status pgn_lattice_from_A(int m, int n, const char* const* entries, pgn_lattice** out) {
  return guarded([&] {
    need_out(out, "out");
    need_out(entries, "entries");
    pgn::Dims dims(m, n);
    pgn::HpMatrix a(m, n);
    for (int i = 0; i < m * n; ++i) a.a[i] = pgn::parse_high_real(str_arg(entries[i], "entry"));
    *out = new pgn_lattice{pgn::make_lattice_from_A(dims, a)};
  });
}

pgn_status pgn_lattice_random(int m, int n, uint64_t seed, pgn_lattice** out) {
  return guarded([&] {
    need_out(out, "out");
    *out = new pgn_lattice{pgn::random_lattice(pgn::Dims(m, n), seed)};
  });
}

pgn_status pgn_lattice_from_json(const char* text, pgn_lattice** out) {
  return guarded([&] {
    need_out(out, "out");
    json doc;
    try {
      doc = json::parse(str_arg(text, "text"));
    } catch (const json::parse_error& e) {
      throw pgn::ParseError(std::string("lattice JSON: ") + e.what());
    }
    *out = new pgn_lattice{pgn::lattice_from_json(doc)};
  });
}

pgn_status pgn_lattice_to_json(const pgn_lattice* x, char** out) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(out, "out");
    *out = copy_string(pgn::lattice_to_json(xx.lattice).dump(2) + "\n");
  });
}

pgn_status pgn_lattice_dims(const pgn_lattice* x, int* m, int* n) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(m, "m");
    need_out(n, "n");
    *m = xx.lattice.dims().m();
    *n = xx.lattice.dims().n();
  });
}

pgn_status pgn_lattice_flow(const pgn_lattice* x, double t, pgn_lattice** out) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(out, "out");
    *out = new pgn_lattice{pgn::apply_flow(xx.lattice, t)};
  });
}

pgn_status pgn_lattice_perturb(const pgn_lattice* x, const double* h, const double* a, const double* b,
                               pgn_lattice** out) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(out, "out");
    const int m = xx.lattice.dims().m();
    const int n = xx.lattice.dims().n();
    *out = new pgn_lattice{pgn::weak_stable_perturb(xx.lattice, matrix_arg(h, n, m, "h"), matrix_arg(a, m, m, "a"),
                                                    matrix_arg(b, n, n, "b"))};
  });
}

pgn_status pgn_lattice_minima(const pgn_lattice* x, double* lambda) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(lambda, "lambda");
    auto v = pgn::successive_minima(xx.lattice);
    std::copy(v.begin(), v.end(), lambda);
  });
}

pgn_status pgn_lattice_minima_oracle(const pgn_lattice* x, long bound, double* lambda) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(lambda, "lambda");
    long b = bound > 0 ? bound : pgn::oracle_sufficient_bound(xx.lattice);
    auto v = pgn::successive_minima_oracle(xx.lattice, b);
    std::copy(v.begin(), v.end(), lambda);
  });
}

void pgn_lattice_free(pgn_lattice* x) { delete x; }

pgn_status pgn_trace_simulate(const pgn_lattice* x, double t_max, double dt, pgn_trace** out) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(out, "out");
    *out = new pgn_trace{pgn::log_minima_trace(xx.lattice, pgn::uniform_grid(t_max, dt))};
  });
}

pgn_status pgn_trace_from_csv(const char* text, pgn_trace** out) {
  return guarded([&] {
    need_out(out, "out");
    *out = new pgn_trace{pgn::trace_from_csv(str_arg(text, "text"))};
  });
}

pgn_status pgn_trace_to_csv(const pgn_trace* tr, char** out) {
  return guarded([&] {
    const auto& t = need(tr, "trace");
    need_out(out, "out");
    *out = copy_string(pgn::trace_to_csv(t.trace));
  });
}

pgn_status pgn_trace_size(const pgn_trace* tr, size_t* samples, int* d) {
  return guarded([&] {
    const auto& t = need(tr, "trace");
    need_out(samples, "samples");
    need_out(d, "d");
    *samples = t.trace.times.size();
    *d = t.trace.d;
  });
}

pgn_status pgn_trace_sample(const pgn_trace* tr, size_t index, double* t, double* log_minima) {
  return guarded([&] {
    const auto& tt = need(tr, "trace");
    need_out(t, "t");
    need_out(log_minima, "log_minima");
    if (index >= tt.trace.times.size()) throw pgn::DomainError("sample index out of range");
    *t = tt.trace.times[index];
    const auto& v = tt.trace.log_minima[index];
    std::copy(v.begin(), v.end(), log_minima);
  });
}

pgn_status pgn_trace_as_template(const pgn_trace* tr, int m, int n, pgn_template** out) {
  return guarded([&] {
    const auto& t = need(tr, "trace");
    need_out(out, "out");
    *out = new pgn_template{pgn::trace_as_template(t.trace, pgn::Dims(m, n)), {}, json{{"family", "trace"}}};
  });
}

pgn_status pgn_trace_compare(const pgn_trace* tr, const pgn_template* f, double window, char** report) {
  return guarded([&] {
    const auto& t = need(tr, "trace");
    const auto& ff = need(f, "template");
    need_out(report, "report");
    auto cmp = pgn::compare_trace_to_template(t.trace, ff.path, window);
    json windows = json::array();
    for (const auto& w : cmp.windows) windows.push_back({{"t_start", w.t_start}, {"t_end", w.t_end}, {"sup", w.sup}});
    json doc = {{"sup_dist", cmp.sup_dist},
                {"window", window},
                {"window_sups", std::move(windows)},
                {"label", kDiagnosticLabel}};
    *report = copy_string(doc.dump(2) + "\n");
  });
}

void pgn_trace_free(pgn_trace* tr) { delete tr; }

pgn_status pgn_occupation(const pgn_lattice* x, double horizon, double threshold, double dt, char** report) {
  return guarded([&] {
    const auto& xx = need(x, "lattice");
    need_out(report, "report");
    auto p = pgn::occupation_fraction(xx.lattice, horizon, threshold, dt);
    json doc = {{"threshold", p.threshold}, {"horizon", p.horizon}, {"dt", p.dt},
                {"samples", p.samples},     {"hits", p.hits},       {"fraction", p.fraction},
                {"label", kDiagnosticLabel}};
    *report = copy_string(doc.dump(2) + "\n");
  });
}

pgn_status pgn_probe_singular(const char* const* theta, size_t m, uint64_t q_max, int per_decade, char** report) {
  return guarded([&] {
    need_out(theta, "theta");
    need_out(report, "report");
    std::vector<pgn::HighReal> th;
    for (size_t i = 0; i < m; ++i) th.push_back(pgn::parse_high_real(str_arg(theta[i], "theta entry")));
    auto r = pgn::singularity_probe(th, q_max, per_decade);
    json samples = json::array();
    for (const auto& s : r.samples) samples.push_back({{"Q", s.q}, {"S", s.s}});
    json doc = {{"Q_max", q_max},
                {"samples", std::move(samples)},
                {"min_S", r.min_s},
                {"argmin_Q", r.argmin_q},
                {"label", kDiagnosticLabel}};
    *report = copy_string(doc.dump(2) + "\n");
  });
}

}  // extern "C"
