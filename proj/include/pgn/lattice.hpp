#pragma once

// Unimodular lattices in R^d, d = m + n, and the diagonal flow
//   a_t = diag(e^{t/m} (m times), e^{-t/n} (n times)).
//
// Bases are held in 120-digit binary floating point. Double precision is not
// enough once a_t has stretched a lattice by e^{30} or so: the short vectors
// then come from cancellations that binary64 cannot resolve.

#include "pgn/template_core.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

namespace pgn {

using HighReal = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<120>,
                                               boost::multiprecision::et_off>;

/// Dense row-major matrix.
template <class T>
struct Matrix {
  int rows = 0;
  int cols = 0;
  std::vector<T> a;

  Matrix() = default;
  Matrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {}

  T& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * cols + j]; }
  const T& operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * cols + j]; }

  static Matrix identity(int d) {
    Matrix out(d, d);
    for (int i = 0; i < d; ++i) out(i, i) = 1;
    return out;
  }
};

using HpMatrix = Matrix<HighReal>;

HighReal determinant(HpMatrix m);
HpMatrix multiply(const HpMatrix& x, const HpMatrix& y);

/// Maximum absolute row sum, the operator norm induced by the sup norm.
HighReal operator_norm_inf(const HpMatrix& m);

/// Throws DomainError if singular.
HpMatrix inverse(HpMatrix m);

class Lattice {
public:
  /// Columns of `basis` generate the lattice. Throws InvariantError unless
  /// basis is d x d with |det| within 1e-9 of 1.
  Lattice(Dims dims, HpMatrix basis);

  const Dims& dims() const { return dims_; }
  int d() const { return dims_.d(); }
  const HpMatrix& basis() const { return basis_; }

private:
  Dims dims_;
  HpMatrix basis_;
};

/// x_A = u_A Z^d with u_A = [[I_m, A], [0, I_n]]; `a` is m x n.
Lattice make_lattice_from_A(const Dims& dims, const HpMatrix& a);

Lattice identity_lattice(const Dims& dims);

/// Flow times with |t| (1/m + 1/n) above this are refused.
double flow_time_limit(const Dims& dims);

/// a_t x. Throws RangeError if |t| exceeds flow_time_limit.
Lattice apply_flow(const Lattice& x, double t);

/// Premultiplies the basis by [[a, 0], [h, b]] with a m x m, b n x n and h
/// n x m. Throws InvariantError unless |det a * det b| is within 1e-9 of 1.
Lattice weak_stable_perturb(const Lattice& x, const HpMatrix& h, const HpMatrix& a, const HpMatrix& b);

/// The block-lower-triangular matrix used by weak_stable_perturb.
HpMatrix weak_stable_element(const Dims& dims, const HpMatrix& h, const HpMatrix& a, const HpMatrix& b);

/// Seeded random lattice: entries uniform in [-1, 1] (rejecting |det| < 1/4),
/// rescaled to covolume 1. Identical seeds give identical bases everywhere.
Lattice random_lattice(const Dims& dims, std::uint64_t seed);

/// Uniform double in [0, 1) from the top 53 bits of a 64-bit draw.
double unit_uniform(std::uint64_t bits);

HighReal golden_ratio();

/// [a_0; a_1, a_2, ...] evaluated in working precision.
HighReal continued_fraction_value(const std::vector<std::uint64_t>& quotients);

/// [0; 1, 2, 4, ..., 2^(terms-1)].
HighReal powers_of_two_theta(int terms);

/// Decimal, "p/q", "golden", "cf:a0,a1,a2,..." (a continued fraction) or
/// "pow2:N" (the same as powers_of_two_theta(N)).
HighReal parse_high_real(const std::string& text);

/// Scientific notation with enough digits to read back the same value.
std::string format_high_real(const HighReal& x);

inline constexpr const char* kLatticeFormat = "pgn-lattice-v1";

/// {format, m, n, basis}: basis as d rows. Entries that are not exact
/// doubles are written as strings.
nlohmann::json lattice_to_json(const Lattice& x);
/// Accepts basis as d rows or as one flat row-major list; entries are numbers
/// or strings in parse_high_real syntax. "format" is optional. Throws
/// ParseError on malformed documents, InvariantError if |det| is not 1.
Lattice lattice_from_json(const nlohmann::json& doc);

}  // namespace pgn
