// pgn: command-line front end. Talks to the library only through pgn.h.
//
// Exit codes: 0 success, 1 internal error, 2 usage or precondition failure.

#include "pgn/pgn.h"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

struct Failure {
  int code;
  std::string message;
};

int exit_code(pgn_status s) {
  switch (s) {
    case PGN_OK: return 0;
    case PGN_ERR_INVARIANT:
    case PGN_ERR_INTERNAL: return 1;
    default: return 2;
  }
}

void check(pgn_status s, const std::string& what) {
  if (s != PGN_OK) throw Failure{exit_code(s), what + ": " + pgn_status_name(s) + ": " + pgn_last_error()};
}

// Bad input files are a usage problem whatever the library calls them.
void check_input(pgn_status s, const std::string& what) {
  if (s != PGN_OK) throw Failure{2, what + ": " + pgn_status_name(s) + ": " + pgn_last_error()};
}

struct TemplateFree {
  void operator()(pgn_template* p) const { pgn_template_free(p); }
};
struct LatticeFree {
  void operator()(pgn_lattice* p) const { pgn_lattice_free(p); }
};
struct TraceFree {
  void operator()(pgn_trace* p) const { pgn_trace_free(p); }
};
struct StringFree {
  void operator()(char* p) const { pgn_string_free(p); }
};
using TemplatePtr = std::unique_ptr<pgn_template, TemplateFree>;
using LatticePtr = std::unique_ptr<pgn_lattice, LatticeFree>;
using TracePtr = std::unique_ptr<pgn_trace, TraceFree>;

std::string take(char* s) {
  std::unique_ptr<char, StringFree> guard(s);
  return s == nullptr ? std::string() : std::string(s);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{2, "cannot open '" + path + "'"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Failure{2, "cannot write '" + path + "'"};
  out << text;
  if (!out) throw Failure{2, "write to '" + path + "' failed"};
}

struct Global {
  std::string out;
  std::string format;
  std::uint64_t seed = 0;
};

void emit(const Global& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
  } else {
    write_file(g.out, text);
  }
}

// Where a lattice comes from: exactly one source must be given.
struct LatticeSource {
  int m = 1;
  int n = 1;
  std::string file;
  std::vector<std::string> theta;
  std::string theta_cf;
  bool identity = false;
  bool random = false;

  void attach(CLI::App* cmd) {
    cmd->add_option("--m", m, "Expanding dimension m")->check(CLI::PositiveNumber);
    cmd->add_option("--n", n, "Contracting dimension n")->check(CLI::PositiveNumber);
    cmd->add_option("--lattice", file, "Lattice JSON file");
    cmd->add_option("--theta", theta,
                    "Entries of the m x n matrix A, row-major (decimal, p/q, golden, cf:a0,a1,..., pow2:N)");
    cmd->add_option("--theta-cf", theta_cf, "Continued fraction a0,a1,a2,... of theta (m = n = 1)");
    cmd->add_flag("--identity", identity, "The lattice Z^d");
    cmd->add_flag("--random", random, "Seeded random lattice (see --seed)");
  }

  LatticePtr make(const Global& g) const {
    int given = !file.empty() + !theta.empty() + !theta_cf.empty() + identity + random;
    if (given != 1) {
      throw Failure{2, "give exactly one of --lattice, --theta, --theta-cf, --identity, --random"};
    }
    pgn_lattice* x = nullptr;
    if (!file.empty()) {
      check_input(pgn_lattice_from_json(read_file(file).c_str(), &x), "reading " + file);
    } else if (identity) {
      check(pgn_lattice_identity(m, n, &x), "identity lattice");
    } else if (random) {
      check(pgn_lattice_random(m, n, g.seed, &x), "random lattice");
    } else {
      std::vector<std::string> entries = theta;
      if (!theta_cf.empty()) entries = {"cf:" + theta_cf};
      if (static_cast<long>(entries.size()) != static_cast<long>(m) * n) {
        throw Failure{2, "A needs m * n = " + std::to_string(m * n) + " entries, got " +
                             std::to_string(entries.size())};
      }
      std::vector<const char*> ptrs;
      for (const auto& e : entries) ptrs.push_back(e.c_str());
      check(pgn_lattice_from_A(m, n, ptrs.data(), &x), "building x_A");
    }
    return LatticePtr(x);
  }
};

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parametric geometry of numbers: templates, scores, log-minima traces"};
  app.require_subcommand(1);
  app.fallthrough();
  Global g;
  app.add_option("--out", g.out, "Write output to this file instead of standard output");
  app.add_option("--format", g.format, "Output format: json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--seed", g.seed, "Seed for --random lattices");

  // template build | validate | score
  auto* tmpl = app.add_subcommand("template", "Build, validate and score templates");
  tmpl->require_subcommand(1);
  int bm = 0, bn = 0, bk = 0;
  std::string horizon;
  std::string emit_csv;
  auto* build = tmpl->add_subcommand("build", "Materialize Phi^k(f^(1)) on [0, horizon]");
  build->add_option("--m", bm, "Expanding dimension m")->required();
  build->add_option("--n", bn, "Contracting dimension n")->required();
  build->add_option("--k", bk, "Number of Phi iterates (0 gives f^(1))");
  build->add_option("--horizon", horizon, "Horizon T (rational)")->required();
  build->add_option("--emit-csv", emit_csv, "Also write the breakpoints as CSV to this file");

  std::string template_file;
  auto* validate = tmpl->add_subcommand("validate", "Check the three template axioms");
  validate->add_option("template", template_file, "Template JSON file")->required();

  std::string score_horizon;
  auto* score = tmpl->add_subcommand("score", "Exact delta pieces and Cesaro average");
  score->add_option("template", template_file, "Template JSON file")->required();
  score->add_option("--horizon,-T", score_horizon, "Averaging horizon (default: whole domain)");

  LatticeSource sim_src;
  double t_max = 50;
  double dt = 0.05;
  auto* simulate = app.add_subcommand("simulate", "Log-minima trace of a_t x as CSV");
  sim_src.attach(simulate);
  simulate->add_option("--t-max", t_max, "Last flow time");
  simulate->add_option("--dt", dt, "Time step");

  std::string trace_file;
  std::string cmp_template;
  double window = 5;
  auto* compare = app.add_subcommand("compare", "Distance between a trace and a template");
  compare->add_option("trace", trace_file, "Trace CSV file")->required();
  compare->add_option("template", cmp_template, "Template JSON file")->required();
  compare->add_option("--window", window, "Window width for the per-window sups");

  LatticeSource occ_src;
  double occ_t = 10;
  double occ_m = -1;
  double occ_dt = 0.01;
  auto* occupation = app.add_subcommand("occupation", "Fraction of [0, T] with log lambda_1 >= M");
  occ_src.attach(occupation);
  occupation->add_option("--T", occ_t, "Horizon");
  occupation->add_option("--M", occ_m, "Threshold on log lambda_1");
  occupation->add_option("--dt", occ_dt, "Time step");

  std::vector<std::string> probe_theta;
  std::string probe_cf;
  std::uint64_t q_max = 100000;
  int per_decade = 4;
  auto* probe = app.add_subcommand("probe-singular", "S(Q) = Q^(1/m) min <q theta> on a geometric grid");
  probe->add_option("--theta", probe_theta, "Coordinates of theta (decimal, p/q, golden, cf:..., pow2:N)");
  probe->add_option("--theta-cf", probe_cf, "Continued fraction a0,a1,a2,... of a scalar theta");
  probe->add_option("--q-max", q_max, "Largest Q");
  probe->add_option("--per-decade", per_decade, "Grid points per factor of ten");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (g.format == "csv" && !build->parsed() && !simulate->parsed()) {
      throw Failure{2, "--format csv applies to 'template build' and 'simulate' only"};
    }
    if (build->parsed()) {
      pgn_template* t = nullptr;
      check(pgn_template_build(bm, bn, bk, horizon.c_str(), &t), "template build");
      TemplatePtr tp(t);
      char* text = nullptr;
      if (g.format == "csv") {
        check(pgn_template_to_csv(tp.get(), &text), "template build");
      } else {
        check(pgn_template_to_json(tp.get(), &text), "template build");
      }
      emit(g, take(text));
      if (!emit_csv.empty()) {
        char* csv = nullptr;
        check(pgn_template_to_csv(tp.get(), &csv), "template build");
        write_file(emit_csv, take(csv));
      }
    } else if (validate->parsed() || score->parsed()) {
      pgn_template* t = nullptr;
      check_input(pgn_template_from_json(read_file(template_file).c_str(), &t), "reading " + template_file);
      TemplatePtr tp(t);
      char* report = nullptr;
      if (validate->parsed()) {
        int passed = 0;
        check(pgn_template_validate(tp.get(), &passed, &report), "validate");
      } else {
        check(pgn_template_score(tp.get(), score_horizon.empty() ? nullptr : score_horizon.c_str(), &report),
              "score");
      }
      emit(g, take(report));
    } else if (simulate->parsed()) {
      if (!(dt > 0)) throw Failure{2, "--dt must be > 0"};
      if (!(t_max >= 0)) throw Failure{2, "--t-max must be >= 0"};
      LatticePtr x = sim_src.make(g);
      pgn_trace* tr = nullptr;
      check(pgn_trace_simulate(x.get(), t_max, dt, &tr), "simulate");
      TracePtr tp(tr);
      if (g.format == "json") {
        std::size_t samples = 0;
        int d = 0;
        check(pgn_trace_size(tp.get(), &samples, &d), "simulate");
        std::string out = "{\n  \"d\": " + std::to_string(d) + ",\n  \"samples\": [\n";
        std::vector<double> logs(d);
        for (std::size_t i = 0; i < samples; ++i) {
          double t = 0;
          check(pgn_trace_sample(tp.get(), i, &t, logs.data()), "simulate");
          out += "    {\"t\": " + format_double(t) + ", \"log_minima\": [";
          for (int k = 0; k < d; ++k) out += (k ? ", " : "") + format_double(logs[k]);
          out += i + 1 < samples ? "]},\n" : "]}\n";
        }
        out += "  ]\n}\n";
        emit(g, out);
      } else {
        char* csv = nullptr;
        check(pgn_trace_to_csv(tp.get(), &csv), "simulate");
        emit(g, take(csv));
      }
    } else if (compare->parsed()) {
      pgn_trace* tr = nullptr;
      check_input(pgn_trace_from_csv(read_file(trace_file).c_str(), &tr), "reading " + trace_file);
      TracePtr tp(tr);
      pgn_template* t = nullptr;
      check_input(pgn_template_from_json(read_file(cmp_template).c_str(), &t), "reading " + cmp_template);
      TemplatePtr fp(t);
      char* report = nullptr;
      check(pgn_trace_compare(tp.get(), fp.get(), window, &report), "compare");
      emit(g, take(report));
    } else if (occupation->parsed()) {
      LatticePtr x = occ_src.make(g);
      char* report = nullptr;
      check(pgn_occupation(x.get(), occ_t, occ_m, occ_dt, &report), "occupation");
      emit(g, take(report));
    } else if (probe->parsed()) {
      std::vector<std::string> theta = probe_theta;
      if (!probe_cf.empty()) {
        if (!theta.empty()) throw Failure{2, "give --theta or --theta-cf, not both"};
        theta = {"cf:" + probe_cf};
      }
      if (theta.empty()) throw Failure{2, "probe-singular needs --theta or --theta-cf"};
      std::vector<const char*> ptrs;
      for (const auto& s : theta) ptrs.push_back(s.c_str());
      char* report = nullptr;
      check(pgn_probe_singular(ptrs.data(), ptrs.size(), q_max, per_decade, &report), "probe-singular");
      emit(g, take(report));
    }
  } catch (const Failure& f) {
    std::cerr << "pgn: " << f.message << "\n";
    return f.code;
  } catch (const std::exception& e) {
    std::cerr << "pgn: internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
