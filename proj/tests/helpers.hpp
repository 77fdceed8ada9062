#pragma once

#include "pgn/template_core.hpp"

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

inline pgn::Rational q(const char* s) { return pgn::parse_rational(s); }

// Path from rows {time, {values...}} written as rational literals.
inline pgn::PiecewisePath make_path(int m, int n,
                                    std::initializer_list<std::pair<const char*, std::vector<const char*>>> rows) {
  std::vector<pgn::Rational> times;
  std::vector<pgn::Rational> values;
  for (const auto& [t, v] : rows) {
    times.push_back(q(t));
    for (const char* x : v) values.push_back(q(x));
  }
  return pgn::PiecewisePath(pgn::Dims(m, n), std::move(times), std::move(values));
}
