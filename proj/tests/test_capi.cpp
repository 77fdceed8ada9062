#include "pgn/pgn.h"

#include <doctest.h>
#include <json.hpp>

#include <cmath>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

// Takes ownership of a string returned through the C API.
std::string take(char* s) {
  std::string out = s == nullptr ? std::string() : std::string(s);
  pgn_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("status names and version") {
  CHECK(std::string(pgn_version()) == "1.0.0");
  CHECK(std::string(pgn_status_name(PGN_OK)) == "ok");
  CHECK(std::string(pgn_status_name(PGN_ERR_PARSE)) == "parse error");
  CHECK(std::string(pgn_status_name(static_cast<pgn_status>(42))) == "unknown status");
}

TEST_CASE("template lifecycle") {
  pgn_template* t = nullptr;
  REQUIRE(pgn_template_build(2, 1, 1, "30", &t) == PGN_OK);
  int m = 0, n = 0;
  CHECK(pgn_template_dims(t, &m, &n) == PGN_OK);
  CHECK(m == 2);
  CHECK(n == 1);

  char* s = nullptr;
  CHECK(pgn_template_end(t, &s) == PGN_OK);
  CHECK(take(s) == "30/1");

  double v[3];
  CHECK(pgn_template_eval(t, "1", v) == PGN_OK);
  CHECK(v[0] == -1);
  CHECK(v[1] == 0.5);

  CHECK(pgn_template_to_json(t, &s) == PGN_OK);
  std::string text = take(s);
  auto doc = json::parse(text);
  CHECK(doc["anchors"] == json({"0/1", "3/1", "12/1", "30/1"}));
  CHECK(doc["provenance"]["family"] == "phi_iterate");
  CHECK(doc["provenance"]["iterates"] == 1);

  pgn_template* back = nullptr;
  REQUIRE(pgn_template_from_json(text.c_str(), &back) == PGN_OK);
  CHECK(pgn_template_to_json(back, &s) == PGN_OK);
  CHECK(take(s) == text);

  int passed = 0;
  CHECK(pgn_template_validate(back, &passed, &s) == PGN_OK);
  CHECK(passed == 1);
  CHECK(json::parse(take(s))["violations"].empty());

  CHECK(pgn_template_average_delta(t, "12", &s) == PGN_OK);
  CHECK(take(s) == "4/3");
  CHECK(pgn_template_score(t, nullptr, &s) == PGN_OK);
  auto score = json::parse(take(s));
  CHECK(score["average"] == "4/3");
  CHECK(score["abs_error"] == "0/1");
  CHECK(score["horizon"] == "30/1");
  CHECK(score["segments"][0]["S_plus"] == json::array({2, 3}));

  CHECK(pgn_template_to_csv(t, &s) == PGN_OK);
  CHECK(take(s).rfind("t,f_1,f_2,f_3\n0,0,0,0\n", 0) == 0);

  pgn_template_free(back);
  pgn_template_free(t);
  pgn_template_free(nullptr);
}

TEST_CASE("template errors map to status codes") {
  pgn_template* t = nullptr;
  CHECK(pgn_template_build(0, 1, 0, "10", &t) == PGN_ERR_DOMAIN);
  CHECK(std::string(pgn_last_error()).find("m") != std::string::npos);
  CHECK(pgn_template_build(1, 1, 0, "ten", &t) == PGN_ERR_PARSE);
  CHECK(pgn_template_build(1, 1, 0, "10", nullptr) == PGN_ERR_INVALID_ARGUMENT);
  CHECK(pgn_template_build(1, 1, 0, nullptr, &t) == PGN_ERR_INVALID_ARGUMENT);
  CHECK(pgn_template_from_json("{}", &t) == PGN_ERR_PARSE);
  CHECK(t == nullptr);

  // Loading does not validate; validation and scoring report the problem.
  const char* bad = R"({"format":"pgn-template-v1","m":1,"n":1,"breakpoints":["0","1"],"values":[["0","1"],["1/2","1"]]})";
  REQUIRE(pgn_template_from_json(bad, &t) == PGN_OK);
  char* report = nullptr;
  int passed = 1;
  CHECK(pgn_template_validate(t, &passed, &report) == PGN_OK);
  CHECK(passed == 0);
  CHECK(json::parse(take(report))["violations"][0]["axiom"] == "c");
  CHECK(pgn_template_score(t, nullptr, &report) == PGN_ERR_INVALID_TEMPLATE);
  pgn_template_free(t);

  REQUIRE(pgn_template_standard_block(1, 1, &t) == PGN_OK);
  char* s = nullptr;
  CHECK(pgn_template_average_delta(t, "3", &s) == PGN_ERR_DOMAIN);
  double v[2];
  CHECK(pgn_template_eval(t, "5", v) == PGN_ERR_DOMAIN);
  pgn_template_free(t);

  CHECK(pgn_closed_form_delta(3, 2, &s) == PGN_OK);
  CHECK(take(s) == "24/5");
}

TEST_CASE("lattice lifecycle") {
  pgn_lattice* x = nullptr;
  REQUIRE(pgn_lattice_identity(2, 1, &x) == PGN_OK);
  pgn_lattice* y = nullptr;
  REQUIRE(pgn_lattice_flow(x, 4, &y) == PGN_OK);
  double lam[3];
  CHECK(pgn_lattice_minima(y, lam) == PGN_OK);
  CHECK(std::fabs(std::log(lam[0]) + 4) < 1e-12);
  CHECK(std::fabs(std::log(lam[2]) - 2) < 1e-12);
  pgn_lattice_free(y);

  double big = 1e6;
  CHECK(pgn_lattice_flow(x, big, &y) == PGN_ERR_RANGE);
  pgn_lattice_free(x);

  const double basis[4] = {1, 0.5, 0, 1};
  REQUIRE(pgn_lattice_from_basis(1, 1, basis, &x) == PGN_OK);
  double l2[2];
  CHECK(pgn_lattice_minima(x, l2) == PGN_OK);
  CHECK(l2[0] == 1);
  CHECK(l2[1] == 1);
  const double h[1] = {0.75}, a[1] = {2}, b[1] = {0.5}, one[1] = {1};
  CHECK(pgn_lattice_perturb(x, h, a, b, &y) == PGN_OK);
  pgn_lattice_free(y);
  CHECK(pgn_lattice_perturb(x, h, a, one, &y) == PGN_ERR_INVARIANT);
  pgn_lattice_free(x);

  const double singular[4] = {2, 0, 0, 2};
  CHECK(pgn_lattice_from_basis(1, 1, singular, &x) == PGN_ERR_INVARIANT);

  const char* theta[] = {"golden"};
  REQUIRE(pgn_lattice_from_A(1, 1, theta, &x) == PGN_OK);
  char* s = nullptr;
  CHECK(pgn_lattice_to_json(x, &s) == PGN_OK);
  std::string text = take(s);
  pgn_lattice* back = nullptr;
  REQUIRE(pgn_lattice_from_json(text.c_str(), &back) == PGN_OK);
  int m = 0, n = 0;
  CHECK(pgn_lattice_dims(back, &m, &n) == PGN_OK);
  CHECK(m + n == 2);
  pgn_lattice_free(back);
  pgn_lattice_free(x);

  REQUIRE(pgn_lattice_random(1, 2, 17, &x) == PGN_OK);
  double fast[3], slow[3];
  CHECK(pgn_lattice_minima(x, fast) == PGN_OK);
  CHECK(pgn_lattice_minima_oracle(x, 0, slow) == PGN_OK);
  for (int i = 0; i < 3; ++i) CHECK(fast[i] == slow[i]);
  pgn_lattice_free(x);

  const char* nonsense[] = {"banana"};
  CHECK(pgn_lattice_from_A(1, 1, nonsense, &x) == PGN_ERR_PARSE);
  CHECK(pgn_lattice_minima(nullptr, fast) == PGN_ERR_INVALID_ARGUMENT);
}

TEST_CASE("traces and diagnostics") {
  pgn_lattice* x = nullptr;
  REQUIRE(pgn_lattice_identity(1, 1, &x) == PGN_OK);
  pgn_trace* tr = nullptr;
  REQUIRE(pgn_trace_simulate(x, 2, 0.5, &tr) == PGN_OK);
  size_t samples = 0;
  int d = 0;
  CHECK(pgn_trace_size(tr, &samples, &d) == PGN_OK);
  CHECK(samples == 5);
  CHECK(d == 2);
  double t = 0, lm[2];
  CHECK(pgn_trace_sample(tr, 4, &t, lm) == PGN_OK);
  CHECK(t == 2);
  CHECK(lm[0] == doctest::Approx(-2));
  CHECK(pgn_trace_sample(tr, 5, &t, lm) == PGN_ERR_DOMAIN);

  char* s = nullptr;
  CHECK(pgn_trace_to_csv(tr, &s) == PGN_OK);
  std::string csv = take(s);
  pgn_trace* back = nullptr;
  REQUIRE(pgn_trace_from_csv(csv.c_str(), &back) == PGN_OK);
  pgn_template* f = nullptr;
  REQUIRE(pgn_trace_as_template(back, 1, 1, &f) == PGN_OK);
  CHECK(pgn_trace_compare(tr, f, 1, &s) == PGN_OK);
  auto cmp = json::parse(take(s));
  CHECK(cmp["sup_dist"] == 0.0);
  CHECK(cmp["label"] == "finite-horizon diagnostic");
  CHECK(pgn_trace_compare(tr, f, -1, &s) == PGN_ERR_DOMAIN);
  pgn_template* wrong = nullptr;
  CHECK(pgn_trace_as_template(back, 2, 1, &wrong) == PGN_ERR_DOMAIN);
  pgn_template_free(f);
  pgn_trace_free(back);
  pgn_trace_free(tr);

  CHECK(pgn_trace_simulate(x, 2, 0, &tr) == PGN_ERR_DOMAIN);
  CHECK(pgn_trace_from_csv("nonsense", &tr) == PGN_ERR_PARSE);

  CHECK(pgn_occupation(x, 10, -1, 0.01, &s) == PGN_OK);
  auto occ = json::parse(take(s));
  CHECK(occ["hits"] == 101);
  CHECK(occ["samples"] == 1000);
  pgn_lattice_free(x);

  const char* theta[] = {"1/2"};
  CHECK(pgn_probe_singular(theta, 1, 100, 4, &s) == PGN_OK);
  auto probe = json::parse(take(s));
  CHECK(probe["min_S"] == 0.0);
  CHECK(probe["argmin_Q"] == 2);
  CHECK(pgn_probe_singular(theta, 0, 100, 4, &s) == PGN_ERR_DOMAIN);
}
