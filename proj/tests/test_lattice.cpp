#include "oracles.hpp"

#include "pgn/diagnostics.hpp"
#include "pgn/errors.hpp"
#include "pgn/minima.hpp"
#include "pgn/template_builders.hpp"
#include "pgn/trace.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace pgn;

namespace {

HpMatrix rows(int d, std::initializer_list<double> xs) {
  HpMatrix b(d, d);
  std::size_t i = 0;
  for (double x : xs) b.a[i++] = x;
  return b;
}

HpMatrix mat(int r, int c, std::initializer_list<double> xs) {
  HpMatrix b(r, c);
  std::size_t i = 0;
  for (double x : xs) b.a[i++] = x;
  return b;
}

std::vector<std::vector<long double>> to_ld(const Lattice& x) {
  std::vector<std::vector<long double>> out(x.d(), std::vector<long double>(x.d()));
  for (int i = 0; i < x.d(); ++i) {
    for (int j = 0; j < x.d(); ++j) out[i][j] = x.basis()(i, j).convert_to<long double>();
  }
  return out;
}

void check_close(const std::vector<double>& a, const std::vector<double>& b, double rel) {
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::fabs(a[i] - b[i]) <= rel * std::fabs(b[i]));
}

}  // namespace

TEST_CASE("identity lattice has all minima 1") {
  for (int m = 1; m <= 3; ++m) {
    for (int n = 1; n <= 3; ++n) {
      auto lam = successive_minima(identity_lattice(Dims(m, n)));
      CHECK(lam == std::vector<double>(m + n, 1.0));
    }
  }
}

TEST_CASE("small explicit lattices") {
  Lattice sheared(Dims(1, 1), rows(2, {1, 0.5, 0, 1}));
  CHECK(successive_minima(sheared) == std::vector<double>{1, 1});
  Lattice diag(Dims(1, 1), rows(2, {0.5, 0, 0, 2}));
  CHECK(successive_minima(diag) == std::vector<double>{0.5, 2});
  CHECK_THROWS_AS(Lattice(Dims(1, 1), rows(2, {2, 0, 0, 2})), InvariantError);
  CHECK_THROWS_AS(Lattice(Dims(1, 1), HpMatrix(3, 3)), DomainError);
}

TEST_CASE("flow on Z^3 with (m, n) = (2, 1)") {
  auto z = identity_lattice(Dims(2, 1));
  for (double t : {0.0, 0.5, 1.0, 3.0, 7.5, 10.0}) {
    auto lam = successive_minima(apply_flow(z, t));
    CHECK(std::fabs(std::log(lam[0]) + t) < 1e-12);
    CHECK(std::fabs(std::log(lam[1]) - t / 2) < 1e-12);
    CHECK(std::fabs(std::log(lam[2]) - t / 2) < 1e-12);
  }
}

TEST_CASE("flow group law") {
  auto x = random_lattice(Dims(2, 2), 11);
  auto a = apply_flow(apply_flow(x, 1.25), 2.5);
  auto b = apply_flow(x, 3.75);
  for (std::size_t i = 0; i < a.basis().a.size(); ++i) {
    HighReal diff = abs(a.basis().a[i] - b.basis().a[i]);
    CHECK(diff <= HighReal(1e-30) * (1 + abs(b.basis().a[i])));
  }
  auto back = apply_flow(apply_flow(x, 4), -4);
  for (std::size_t i = 0; i < x.basis().a.size(); ++i) {
    CHECK(abs(back.basis().a[i] - x.basis().a[i]) <= HighReal(1e-30));
  }
}

TEST_CASE("flow range guard") {
  Dims dims(1, 1);
  CHECK(flow_time_limit(dims) == doctest::Approx(75));
  CHECK_NOTHROW(apply_flow(identity_lattice(dims), 75));
  CHECK_THROWS_AS(apply_flow(identity_lattice(dims), 75.5), RangeError);
  CHECK_THROWS_AS(apply_flow(identity_lattice(dims), -80), RangeError);
}

TEST_CASE("fast minima match the box oracle on random lattices") {
  for (int d = 2; d <= 4; ++d) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      auto x = random_lattice(Dims(1, d - 1), seed * 97 + d);
      long bound = oracle_sufficient_bound(x);
      CHECK(successive_minima(x) == successive_minima_oracle(x, bound));
    }
  }
}

TEST_CASE("box oracle agrees with an independent long-double search") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    auto x = random_lattice(Dims(1, 2), seed);
    long bound = std::min<long>(oracle_sufficient_bound(x), 6);
    auto mine = successive_minima_oracle(x, bound);
    auto ref = oracle::minima_box(to_ld(x), bound);
    REQUIRE(ref.size() == mine.size());
    for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::fabs(mine[i] - static_cast<double>(ref[i])) < 1e-15);
  }
  CHECK_THROWS_AS(successive_minima_oracle(identity_lattice(Dims(1, 1)), 0), DomainError);
}

TEST_CASE("fast minima match the oracle on flowed planar lattices") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto x = random_lattice(Dims(1, 1), seed);
    for (double t : {0.5, 1.5, 2.5}) {
      auto y = apply_flow(x, t);
      CHECK(successive_minima(y) == successive_minima_oracle(y, oracle_sufficient_bound(y)));
    }
  }
}

TEST_CASE("minima do not depend on the chosen basis") {
  std::mt19937_64 rng(5);
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    auto x = random_lattice(Dims(2, 1), seed);
    auto ref = successive_minima(x);
    HpMatrix b = x.basis();
    for (int step = 0; step < 12; ++step) {
      int i = static_cast<int>(rng() % 3);
      int j = static_cast<int>(rng() % 3);
      if (i == j) continue;
      long c = static_cast<long>(rng() % 7) - 3;
      for (int r = 0; r < 3; ++r) b(r, i) += c * b(r, j);
    }
    for (int r = 0; r < 3; ++r) {
      std::swap(b(r, 0), b(r, 2));
      b(r, 1) = -b(r, 1);
    }
    check_close(successive_minima(Lattice(x.dims(), b)), ref, 1e-14);
    // Permuting coordinates preserves the sup norm.
    HpMatrix p = x.basis();
    for (int c = 0; c < 3; ++c) std::swap(p(0, c), p(2, c));
    check_close(successive_minima(Lattice(x.dims(), p)), ref, 1e-14);
  }
}

TEST_CASE("tracker agrees with fresh computation") {
  auto x = random_lattice(Dims(2, 2), 42);
  MinimaTracker tracker(x);
  for (double t = 0; t <= 12; t += 0.75) {
    CHECK(tracker.at(t) == successive_minima(apply_flow(x, t)));
  }
  CHECK(tracker.at(3) == successive_minima(apply_flow(x, 3)));
}

TEST_CASE("random lattices are reproducible and unimodular") {
  auto a = random_lattice(Dims(2, 3), 7);
  auto b = random_lattice(Dims(2, 3), 7);
  auto c = random_lattice(Dims(2, 3), 8);
  CHECK(a.basis().a == b.basis().a);
  CHECK(a.basis().a != c.basis().a);
  CHECK(abs(abs(determinant(a.basis())) - 1) < HighReal(1e-30));
  CHECK(unit_uniform(0) == 0.0);
  CHECK(unit_uniform(~std::uint64_t{0}) < 1.0);
}

TEST_CASE("matrix helpers") {
  auto m = rows(2, {2, 1, 1, 1});
  CHECK(determinant(m) == 1);
  auto inv = inverse(m);
  CHECK(inv.a == rows(2, {1, -1, -1, 2}).a);
  CHECK(operator_norm_inf(m) == 3);
  CHECK(multiply(m, inv).a == HpMatrix::identity(2).a);
  CHECK_THROWS_AS(inverse(rows(2, {1, 2, 2, 4})), DomainError);
}

TEST_CASE("real-number syntax") {
  CHECK(abs(parse_high_real("1/3") * 3 - 1) < HighReal(1e-35));
  CHECK(parse_high_real("-0.25") == HighReal(-0.25));
  CHECK(abs(parse_high_real("golden") - (1 + sqrt(HighReal(5))) / 2) < HighReal(1e-35));
  CHECK(abs(parse_high_real("pow2:3") - HighReal(9) / 13) < HighReal(1e-35));
  CHECK(parse_high_real("cf:0,1,2,4") == parse_high_real("pow2:3"));
  CHECK(parse_high_real("cf:0;1;2;4") == parse_high_real("pow2:3"));
  CHECK(powers_of_two_theta(1) == 1);
  CHECK_THROWS_AS(parse_high_real("pi"), ParseError);
  CHECK_THROWS_AS(parse_high_real("1/0"), ParseError);
  CHECK_THROWS_AS(parse_high_real("cf:1,x"), ParseError);
  CHECK_THROWS_AS(powers_of_two_theta(0), DomainError);
  auto g = golden_ratio();
  CHECK(parse_high_real(format_high_real(g)) == g);
}

TEST_CASE("x_A construction") {
  auto a = mat(1, 1, {0.5});
  auto x = make_lattice_from_A(Dims(1, 1), a);
  CHECK(x.basis().a == rows(2, {1, 0.5, 0, 1}).a);
  // theta = 1/2 is rational: (0, 2) lies in x_A and shrinks to 2 e^{-t}.
  auto lam = successive_minima(apply_flow(x, 10));
  CHECK(std::fabs(std::log(lam[0]) - (std::log(2.0) - 10)) < 1e-9);
}

TEST_CASE("golden trace stays bounded") {
  auto x = make_lattice_from_A(Dims(1, 1), HpMatrix(1, 1));
  HpMatrix a(1, 1);
  a(0, 0) = golden_ratio();
  auto golden = make_lattice_from_A(Dims(1, 1), a);
  auto tr = log_minima_trace(golden, uniform_grid(40, 0.25));
  double lowest = 0;
  for (const auto& row : tr.log_minima) lowest = std::min(lowest, row[0]);
  CHECK(lowest >= -1.005);
  auto flat = log_minima_trace(x, uniform_grid(4, 1));
  CHECK(flat.log_minima.back()[0] == doctest::Approx(-4).epsilon(1e-12));
}

TEST_CASE("weak-stable perturbations") {
  Dims dims(1, 1);
  auto h = mat(1, 1, {0.75});
  auto a = mat(1, 1, {2});
  auto b = mat(1, 1, {0.5});
  auto g = weak_stable_element(dims, h, a, b);
  CHECK(g.a == rows(2, {2, 0, 0.75, 0.5}).a);
  // g^-1 = [[1/2, 0], [-3/4, 2]]: ||g|| = 2, ||g^-1|| = 11/4.
  CHECK(weak_stable_kappa(g) == doctest::Approx(5.5));
  CHECK(weak_stable_kappa(HpMatrix::identity(3)) == 1);
  CHECK_THROWS_AS(weak_stable_perturb(identity_lattice(dims), h, a, mat(1, 1, {1})), InvariantError);

  auto x = random_lattice(dims, 3);
  auto y = weak_stable_perturb(x, h, a, b);
  const double bound = std::log(5.5);
  for (double t = 0; t <= 15; t += 1) {
    auto lx = successive_minima(apply_flow(x, t));
    auto ly = successive_minima(apply_flow(y, t));
    for (int i = 0; i < 2; ++i) CHECK(std::fabs(std::log(ly[i]) - std::log(lx[i])) <= bound + 1e-12);
  }
}

TEST_CASE("Minkowski checks") {
  CHECK_NOTHROW(check_minkowski({1, 1}, 0));
  CHECK_NOTHROW(check_minkowski({0.5, 1.0}, 0));
  CHECK_THROWS_AS(check_minkowski({2, 2}, 0), InvariantError);
  CHECK_THROWS_AS(check_minkowski({0.1, 0.1}, 0), InvariantError);
  CHECK_THROWS_AS(check_minkowski({1.5, 0.6}, 0), InvariantError);
}

TEST_CASE("grids") {
  CHECK(uniform_grid(1, 0.25) == std::vector<double>{0, 0.25, 0.5, 0.75, 1});
  CHECK(uniform_grid(0, 1) == std::vector<double>{0});
  CHECK(uniform_grid(1, 0.3).size() == 4);
  CHECK_THROWS_AS(uniform_grid(1, 0), DomainError);
  CHECK_THROWS_AS(uniform_grid(-1, 1), DomainError);
  CHECK_THROWS_AS(log_minima_trace(identity_lattice(Dims(1, 1)), {0, 1, 1}), DomainError);
}

TEST_CASE("trace CSV round trip and self comparison") {
  auto x = random_lattice(Dims(2, 1), 9);
  auto tr = log_minima_trace(x, uniform_grid(5, 0.5));
  CHECK(tr.times.size() == 11);
  auto back = trace_from_csv(trace_to_csv(tr));
  CHECK(back.d == 3);
  CHECK(back.times == tr.times);
  CHECK(back.minima == tr.minima);
  CHECK(back.log_minima == tr.log_minima);
  CHECK(trace_to_csv(back) == trace_to_csv(tr));

  auto f = trace_as_template(tr, Dims(2, 1));
  CHECK(f.breakpoint_count() == 11);
  auto cmp = compare_trace_to_template(tr, f, 2);
  CHECK(cmp.sup_dist == 0);
  CHECK(cmp.windows.size() == 3);
  CHECK_THROWS_AS(trace_as_template(tr, Dims(1, 1)), DomainError);
  CHECK_THROWS_AS(compare_trace_to_template(tr, f, 0), DomainError);
  auto other = trace_as_template(log_minima_trace(identity_lattice(Dims(1, 1)), uniform_grid(5, 1)), Dims(1, 1));
  CHECK_THROWS_AS(compare_trace_to_template(tr, other, 1), DomainError);

  CHECK_THROWS_AS(trace_from_csv(""), ParseError);
  CHECK_THROWS_AS(trace_from_csv("t,x\n0,1\n"), ParseError);
  CHECK_THROWS_AS(trace_from_csv("t,lambda_1,lambda_2,log_lambda_1,log_lambda_2\n0,1,1,0\n"), ParseError);
}

TEST_CASE("Z^3 trace matches the diagonal template") {
  auto tr = log_minima_trace(identity_lattice(Dims(2, 1)), uniform_grid(10, 0.5));
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    const double t = tr.times[k];
    CHECK(std::fabs(tr.log_minima[k][0] + t) <= 1e-9);
    CHECK(std::fabs(tr.log_minima[k][1] - t / 2) <= 1e-9);
    CHECK(std::fabs(tr.log_minima[k][2] - t / 2) <= 1e-9);
  }
}

TEST_CASE("lattice JSON round trip") {
  auto x = random_lattice(Dims(1, 2), 4);
  auto back = lattice_from_json(lattice_to_json(x));
  CHECK(back.dims() == x.dims());
  CHECK(successive_minima(back) == successive_minima(x));
  auto z = identity_lattice(Dims(1, 1));
  auto j = lattice_to_json(z);
  CHECK(j["basis"][0][0] == 1.0);
  CHECK(lattice_from_json(j).basis().a == z.basis().a);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"m":1,"n":1,"basis":[[1,0]]})")), ParseError);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"format":"x","m":1,"n":1,"basis":[[1,0],[0,1]]})")),
                  ParseError);
  CHECK_NOTHROW(lattice_from_json(nlohmann::json::parse(R"({"m":1,"n":1,"basis":[[1,"0.5"],[0,1]]})")));
  auto flat = lattice_from_json(nlohmann::json::parse(R"({"m":1,"n":1,"basis":[1,"1/2",0,1]})"));
  CHECK(flat.basis().a == rows(2, {1, 0.5, 0, 1}).a);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"m":1,"n":1,"basis":[1,0,1]})")), ParseError);
  CHECK_THROWS_AS(lattice_from_json(nlohmann::json::parse(R"({"m":1,"n":1,"basis":[[1,0],[0,null]]})")), ParseError);
}

TEST_CASE("occupation on Z^2") {
  auto prof = occupation_fraction(identity_lattice(Dims(1, 1)), 10, -1, 0.01);
  CHECK(prof.samples == 1000);
  CHECK(prof.hits == 101);
  CHECK(prof.fraction == doctest::Approx(0.101));
  CHECK_THROWS_AS(occupation_fraction(identity_lattice(Dims(1, 1)), 0, -1, 0.01), DomainError);
  CHECK_THROWS_AS(occupation_fraction(identity_lattice(Dims(1, 1)), 1, -1, 0), DomainError);
}

TEST_CASE("singularity probe") {
  auto half = singularity_probe({HighReal(0.5)}, 1000);
  CHECK(half.min_s == 0);
  CHECK(half.argmin_q == 2);

  auto golden = singularity_probe({golden_ratio()}, 100000);
  CHECK(golden.min_s >= 0.27);
  CHECK(golden.samples.back().q == 100000);
  for (const auto& s : golden.samples) {
    CHECK(s.s == doctest::Approx(static_cast<double>(oracle::probe_scalar(1.6180339887498948482L, s.q))).epsilon(1e-9));
  }

  auto pow2 = singularity_probe({powers_of_two_theta(20)}, 10000);
  for (const auto& s : pow2.samples) {
    double ref = static_cast<double>(oracle::probe_scalar(powers_of_two_theta(20).convert_to<long double>(), s.q));
    CHECK(s.s == doctest::Approx(ref).epsilon(1e-9));
  }

  auto grid = singularity_probe({golden_ratio()}, 100, 2);
  std::vector<std::uint64_t> qs;
  for (const auto& s : grid.samples) qs.push_back(s.q);
  CHECK(qs == std::vector<std::uint64_t>{1, 3, 10, 32, 100});

  CHECK_THROWS_AS(singularity_probe({}, 10), DomainError);
  CHECK_THROWS_AS(singularity_probe({golden_ratio()}, 0), DomainError);
  CHECK_THROWS_AS(singularity_probe({golden_ratio()}, 10, 0), DomainError);
}

TEST_CASE("x_A for (2,1) and the zero matrix") {
  HpMatrix a(2, 1);
  a(0, 0) = HighReal(1) / 3;
  a(1, 0) = golden_ratio();
  auto x = make_lattice_from_A(Dims(2, 1), a);
  CHECK(x.basis()(0, 2) == a(0, 0));
  CHECK(x.basis()(1, 2) == a(1, 0));
  CHECK(x.basis()(2, 2) == 1);
  CHECK(x.basis()(2, 0) == 0);
  CHECK(determinant(x.basis()) == 1);
  auto z = make_lattice_from_A(Dims(2, 2), HpMatrix(2, 2));
  CHECK(z.basis().a == HpMatrix::identity(4).a);
}

TEST_CASE("flow examples") {
  auto x = random_lattice(Dims(1, 2), 2);
  CHECK(apply_flow(x, 0).basis().a == x.basis().a);
  auto z2 = identity_lattice(Dims(1, 1));
  for (double t : {0.0, 1.0, 2.5, 20.0}) {
    auto lam = successive_minima(apply_flow(z2, t));
    CHECK(lam[0] == doctest::Approx(std::exp(-t)).epsilon(1e-14));
    CHECK(lam[1] == doctest::Approx(std::exp(t)).epsilon(1e-14));
  }
  auto z3 = apply_flow(identity_lattice(Dims(2, 1)), 1);
  auto fast = successive_minima(z3);
  CHECK(fast == successive_minima_oracle(z3, oracle_sufficient_bound(z3)));
  CHECK(fast[0] == doctest::Approx(std::exp(-1.0)));
  CHECK(fast[2] == doctest::Approx(std::exp(0.5)));
}

TEST_CASE("oracle small cases") {
  CHECK(successive_minima_oracle(identity_lattice(Dims(1, 1)), 1) == std::vector<double>{1, 1});
  Lattice diag(Dims(1, 1), rows(2, {0.5, 0, 0, 2}));
  CHECK(successive_minima_oracle(diag, 2) == std::vector<double>{0.5, 2});
  Lattice sheared(Dims(1, 1), rows(2, {1, 0.5, 0, 1}));
  CHECK(successive_minima_oracle(sheared, 3) == std::vector<double>{1, 1});
}

TEST_CASE("integer unimodular bases of Z^2") {
  std::mt19937_64 rng(99);
  for (int c = 0; c < 100; ++c) {
    // Entries stay within 10, so the inverse does too and bound 10 suffices.
    long b[4];
    do {
      b[0] = 1, b[1] = 0, b[2] = 0, b[3] = 1;
      for (int step = 0; step < 5; ++step) {
        long k = static_cast<long>(rng() % 5) - 2;
        int col = static_cast<int>(rng() % 2);
        b[col] += k * b[1 - col];
        b[2 + col] += k * b[2 + (1 - col)];
      }
    } while (std::max({std::abs(b[0]), std::abs(b[1]), std::abs(b[2]), std::abs(b[3])}) > 10);
    Lattice x(Dims(1, 1), rows(2, {double(b[0]), double(b[1]), double(b[2]), double(b[3])}));
    CHECK(successive_minima_oracle(x, 10) == successive_minima(x));
  }
}

TEST_CASE("trace examples") {
  auto tr = log_minima_trace(identity_lattice(Dims(1, 1)), {0, 1, 2});
  for (int k = 0; k < 3; ++k) {
    CHECK(tr.log_minima[k][0] == doctest::Approx(-k));
    CHECK(tr.log_minima[k][1] == doctest::Approx(k));
  }
  auto x = random_lattice(Dims(2, 2), 31);
  CHECK(log_minima_trace(x, {0}).minima[0] == successive_minima(x));

  HpMatrix a(1, 1);
  a(0, 0) = golden_ratio();
  auto golden = make_lattice_from_A(Dims(1, 1), a);
  auto g = log_minima_trace(golden, uniform_grid(30, 0.1));
  double lowest = 0;
  for (const auto& row : g.log_minima) lowest = std::min(lowest, row[0]);
  CHECK(lowest >= std::log(1 / std::sqrt(5.0)) - 0.2);
}

TEST_CASE("golden trace drifts away from f1") {
  HpMatrix a(1, 1);
  a(0, 0) = golden_ratio();
  auto tr = log_minima_trace(make_lattice_from_A(Dims(1, 1), a), uniform_grid(30, 0.1));
  auto f = build_f1(Dims(1, 1), 30);
  auto cmp = compare_trace_to_template(tr, f.path(), 5);
  REQUIRE(cmp.windows.size() == 6);
  CHECK(cmp.windows.back().t_end == 30);
  // Block p of f1 dips to -p while the trace stays bounded.
  CHECK(cmp.windows[4].sup > cmp.windows[0].sup + 2);
  CHECK(cmp.windows[4].sup > cmp.windows[1].sup + 1);
}

TEST_CASE("occupation examples") {
  auto z = identity_lattice(Dims(1, 1));
  CHECK(occupation_fraction(z, 5, -100, 0.1).fraction == 1);
  HpMatrix a(1, 1);
  a(0, 0) = powers_of_two_theta(24);
  auto x = make_lattice_from_A(Dims(1, 1), a);
  CHECK(occupation_fraction(x, 50, -2, 0.01).fraction < occupation_fraction(x, 10, -2, 0.01).fraction);
}

TEST_CASE("perturbation examples") {
  Dims dims(1, 1);
  auto x = random_lattice(dims, 12);
  auto same = weak_stable_perturb(x, HpMatrix(1, 1), HpMatrix::identity(1), HpMatrix::identity(1));
  CHECK(same.basis().a == x.basis().a);
  auto y = weak_stable_perturb(x, mat(1, 1, {0.3}), mat(1, 1, {-4}), mat(1, 1, {-0.25}));
  CHECK(abs(determinant(y.basis()) - determinant(x.basis())) < HighReal(1e-30));

  auto z = identity_lattice(dims);
  auto hz = weak_stable_perturb(z, mat(1, 1, {0.5}), HpMatrix::identity(1), HpMatrix::identity(1));
  double previous = 1e9;
  for (double t : {0.0, 5.0, 10.0}) {
    double gap = std::fabs(std::log(successive_minima(apply_flow(hz, t))[0]) -
                           std::log(successive_minima(apply_flow(z, t))[0]));
    CHECK(gap <= previous);
    previous = gap;
  }
}

TEST_CASE("probe examples") {
  auto half = singularity_probe({HighReal(1) / 2}, 100000);
  for (const auto& s : half.samples) {
    if (s.q >= 2) CHECK(s.s == 0);
  }
  auto pow2 = singularity_probe({powers_of_two_theta(20)}, 10000, 1);
  double s100 = -1, s10k = -1;
  for (const auto& s : pow2.samples) {
    if (s.q == 100) s100 = s.s;
    if (s.q == 10000) s10k = s.s;
  }
  REQUIRE(s100 > 0);
  CHECK(s10k < s100);
}
