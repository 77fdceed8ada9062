#include "pgn/lattice.hpp"

#include "pgn/errors.hpp"

#include <cmath>
#include <limits>
#include <random>

namespace pgn {

namespace {

using boost::multiprecision::abs;

void require_shape(const HpMatrix& m, int rows, int cols, const char* what) {
  if (m.rows != rows || m.cols != cols) {
    throw DomainError(std::string(what) + " must be " + std::to_string(rows) + "x" + std::to_string(cols) + ", got " +
                      std::to_string(m.rows) + "x" + std::to_string(m.cols));
  }
}

bool all_of_class(const std::string& s, const char* allowed) {
  return !s.empty() && s.find_first_not_of(allowed) == std::string::npos;
}

HighReal parse_decimal(const std::string& s) {
  if (!all_of_class(s, "0123456789+-.eE") || s.find_first_of("0123456789") == std::string::npos) {
    throw ParseError("not a real number: '" + s + "'");
  }
  try {
    return HighReal(s);
  } catch (const std::exception&) {
    throw ParseError("not a real number: '" + s + "'");
  }
}

}  // namespace

HighReal determinant(HpMatrix m) {
  if (m.rows != m.cols) throw DomainError("determinant of a non-square matrix");
  const int d = m.rows;
  HighReal det = 1;
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int r = col + 1; r < d; ++r) {
      if (abs(m(r, col)) > abs(m(pivot, col))) pivot = r;
    }
    if (m(pivot, col) == 0) return 0;
    if (pivot != col) {
      for (int c = 0; c < d; ++c) std::swap(m(pivot, c), m(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < d; ++r) {
      HighReal f = m(r, col) / m(col, col);
      if (f == 0) continue;
      for (int c = col; c < d; ++c) m(r, c) -= f * m(col, c);
    }
  }
  return det;
}

HpMatrix multiply(const HpMatrix& x, const HpMatrix& y) {
  if (x.cols != y.rows) throw DomainError("matrix product: inner dimensions differ");
  HpMatrix out(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i) {
    for (int k = 0; k < x.cols; ++k) {
      if (x(i, k) == 0) continue;
      for (int j = 0; j < y.cols; ++j) out(i, j) += x(i, k) * y(k, j);
    }
  }
  return out;
}

HighReal operator_norm_inf(const HpMatrix& m) {
  HighReal best = 0;
  for (int i = 0; i < m.rows; ++i) {
    HighReal row = 0;
    for (int j = 0; j < m.cols; ++j) row += abs(m(i, j));
    if (row > best) best = row;
  }
  return best;
}

HpMatrix inverse(HpMatrix m) {
  if (m.rows != m.cols) throw DomainError("inverse of a non-square matrix");
  const int d = m.rows;
  HpMatrix inv = HpMatrix::identity(d);
  for (int col = 0; col < d; ++col) {
    int pivot = col;
    for (int r = col + 1; r < d; ++r) {
      if (abs(m(r, col)) > abs(m(pivot, col))) pivot = r;
    }
    if (m(pivot, col) == 0) throw DomainError("matrix is singular");
    for (int c = 0; c < d; ++c) {
      std::swap(m(pivot, c), m(col, c));
      std::swap(inv(pivot, c), inv(col, c));
    }
    HighReal p = m(col, col);
    for (int c = 0; c < d; ++c) {
      m(col, c) /= p;
      inv(col, c) /= p;
    }
    for (int r = 0; r < d; ++r) {
      if (r == col || m(r, col) == 0) continue;
      HighReal f = m(r, col);
      for (int c = 0; c < d; ++c) {
        m(r, c) -= f * m(col, c);
        inv(r, c) -= f * inv(col, c);
      }
    }
  }
  return inv;
}

Lattice::Lattice(Dims dims, HpMatrix basis) : dims_(dims), basis_(std::move(basis)) {
  require_shape(basis_, dims_.d(), dims_.d(), "lattice basis");
  HighReal det = abs(determinant(basis_));
  if (abs(det - 1) > HighReal(1e-9)) {
    throw InvariantError("lattice basis must have |det| = 1 within 1e-9, got " +
                         std::to_string(det.convert_to<double>()));
  }
}

Lattice make_lattice_from_A(const Dims& dims, const HpMatrix& a) {
  require_shape(a, dims.m(), dims.n(), "A");
  HpMatrix u = HpMatrix::identity(dims.d());
  for (int i = 0; i < dims.m(); ++i) {
    for (int j = 0; j < dims.n(); ++j) u(i, dims.m() + j) = a(i, j);
  }
  return Lattice(dims, std::move(u));
}

Lattice identity_lattice(const Dims& dims) { return Lattice(dims, HpMatrix::identity(dims.d())); }

double flow_time_limit(const Dims& dims) { return 150.0 / (1.0 / dims.m() + 1.0 / dims.n()); }

Lattice apply_flow(const Lattice& x, double t) {
  const Dims& dims = x.dims();
  if (!std::isfinite(t) || std::fabs(t) > flow_time_limit(dims)) {
    throw RangeError("flow time " + std::to_string(t) + " outside the safe range |t| <= " +
                     std::to_string(flow_time_limit(dims)) + " for (m, n) = (" + std::to_string(dims.m()) + ", " +
                     std::to_string(dims.n()) + ")");
  }
  const HighReal tt(t);
  const HighReal up = exp(tt / dims.m());
  const HighReal down = exp(-tt / dims.n());
  HpMatrix b = x.basis();
  for (int i = 0; i < dims.d(); ++i) {
    const HighReal& s = i < dims.m() ? up : down;
    for (int j = 0; j < dims.d(); ++j) b(i, j) *= s;
  }
  return Lattice(dims, std::move(b));
}

HpMatrix weak_stable_element(const Dims& dims, const HpMatrix& h, const HpMatrix& a, const HpMatrix& b) {
  const int m = dims.m();
  const int n = dims.n();
  require_shape(h, n, m, "h_minus");
  require_shape(a, m, m, "h_zero first block");
  require_shape(b, n, n, "h_zero second block");
  HighReal det = abs(determinant(a) * determinant(b));
  if (abs(det - 1) > HighReal(1e-9)) {
    throw InvariantError("h_zero blocks must have |det A * det B| = 1 within 1e-9, got " +
                         std::to_string(det.convert_to<double>()));
  }
  HpMatrix g(m + n, m + n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < m; ++j) g(i, j) = a(i, j);
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) g(m + i, j) = h(i, j);
    for (int j = 0; j < n; ++j) g(m + i, m + j) = b(i, j);
  }
  return g;
}

Lattice weak_stable_perturb(const Lattice& x, const HpMatrix& h, const HpMatrix& a, const HpMatrix& b) {
  return Lattice(x.dims(), multiply(weak_stable_element(x.dims(), h, a, b), x.basis()));
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

Lattice random_lattice(const Dims& dims, std::uint64_t seed) {
  const int d = dims.d();
  std::mt19937_64 rng(seed);
  for (;;) {
    HpMatrix b(d, d);
    for (auto& x : b.a) x = 2 * unit_uniform(rng()) - 1;
    HighReal det = abs(determinant(b));
    if (det < HighReal(0.25)) continue;
    HighReal scale = pow(det, HighReal(-1) / d);
    for (auto& x : b.a) x *= scale;
    return Lattice(dims, std::move(b));
  }
}

HighReal golden_ratio() { return (1 + sqrt(HighReal(5))) / 2; }

HighReal continued_fraction_value(const std::vector<std::uint64_t>& quotients) {
  if (quotients.empty()) throw DomainError("continued fraction needs at least one term");
  for (std::size_t i = 1; i < quotients.size(); ++i) {
    if (quotients[i] == 0) throw DomainError("partial quotients after the first must be positive");
  }
  HighReal x = HighReal(quotients.back());
  for (std::size_t i = quotients.size() - 1; i-- > 0;) x = HighReal(quotients[i]) + 1 / x;
  return x;
}

HighReal powers_of_two_theta(int terms) {
  if (terms < 1 || terms > 60) throw DomainError("powers-of-two continued fraction: terms must be in [1, 60]");
  std::vector<std::uint64_t> q{0};
  for (int j = 0; j < terms; ++j) q.push_back(std::uint64_t{1} << j);
  return continued_fraction_value(q);
}

HighReal parse_high_real(const std::string& text) {
  if (text == "golden") return golden_ratio();
  if (text.rfind("pow2:", 0) == 0) {
    std::string terms = text.substr(5);
    if (!all_of_class(terms, "0123456789") || terms.size() > 2) throw ParseError("bad term count in '" + text + "'");
    return powers_of_two_theta(std::stoi(terms));
  }
  if (text.rfind("cf:", 0) == 0) {
    std::vector<std::uint64_t> q;
    std::string body = text.substr(3);
    std::size_t pos = 0;
    while (pos <= body.size()) {
      std::size_t next = body.find_first_of(",;", pos);
      std::string item = body.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
      if (!all_of_class(item, "0123456789") || item.size() > 18) {
        throw ParseError("bad partial quotient '" + item + "' in '" + text + "'");
      }
      q.push_back(std::stoull(item));
      if (next == std::string::npos) break;
      pos = next + 1;
    }
    return continued_fraction_value(q);
  }
  auto slash = text.find('/');
  if (slash == std::string::npos) return parse_decimal(text);
  std::string num = text.substr(0, slash);
  std::string den = text.substr(slash + 1);
  if (!all_of_class(num, "+-0123456789") || !all_of_class(den, "0123456789")) {
    throw ParseError("not a rational number: '" + text + "'");
  }
  HighReal q = parse_decimal(den);
  if (q == 0) throw ParseError("zero denominator in '" + text + "'");
  return parse_decimal(num) / q;
}

std::string format_high_real(const HighReal& x) {
  return x.str(std::numeric_limits<HighReal>::max_digits10, std::ios_base::scientific);
}

nlohmann::json lattice_to_json(const Lattice& x) {
  nlohmann::json rows = nlohmann::json::array();
  for (int i = 0; i < x.d(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (int j = 0; j < x.d(); ++j) {
      const HighReal& v = x.basis()(i, j);
      double dv = v.convert_to<double>();
      if (HighReal(dv) == v) {
        row.push_back(dv);
      } else {
        row.push_back(format_high_real(v));
      }
    }
    rows.push_back(std::move(row));
  }
  return {{"format", kLatticeFormat}, {"m", x.dims().m()}, {"n", x.dims().n()}, {"basis", std::move(rows)}};
}

Lattice lattice_from_json(const nlohmann::json& doc) {
  if (!doc.is_object()) throw ParseError("lattice document must be a JSON object");
  if (doc.contains("format") && doc["format"] != kLatticeFormat) {
    throw ParseError(std::string("lattice document: format must be \"") + kLatticeFormat + "\"");
  }
  for (const char* key : {"m", "n"}) {
    if (!doc.contains(key) || !doc[key].is_number_integer()) {
      throw ParseError(std::string("lattice document: missing integer field '") + key + "'");
    }
  }
  Dims dims(doc["m"].get<int>(), doc["n"].get<int>());
  const int d = dims.d();
  if (!doc.contains("basis") || !doc["basis"].is_array()) {
    throw ParseError("lattice document: 'basis' must be an array");
  }
  const auto& basis = doc["basis"];
  auto entry = [](const nlohmann::json& v) -> HighReal {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_high_real(v.get<std::string>());
    throw ParseError("lattice document: basis entries must be numbers or decimal strings");
  };
  HpMatrix b(d, d);
  // Either d rows of d entries or one flat row-major list of d * d.
  if (basis.size() == static_cast<std::size_t>(d) * d && (basis.empty() || !basis[0].is_array())) {
    for (int i = 0; i < d * d; ++i) b.a[i] = entry(basis[i]);
    return Lattice(dims, std::move(b));
  }
  if (basis.size() != static_cast<std::size_t>(d)) {
    throw ParseError("lattice document: 'basis' must hold d rows or d * d entries");
  }
  for (int i = 0; i < d; ++i) {
    const auto& row = basis[i];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(d)) {
      throw ParseError("lattice document: basis row " + std::to_string(i) + " must have d entries");
    }
    for (int j = 0; j < d; ++j) b(i, j) = entry(row[j]);
  }
  return Lattice(dims, std::move(b));
}

}  // namespace pgn
