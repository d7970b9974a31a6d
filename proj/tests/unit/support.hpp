#pragma once

#include "boettcher/germ.hpp"

#include <initializer_list>
#include <utility>
#include <vector>

namespace testing {

using boettcher::Complex;
using boettcher::Germ;
using boettcher::Monomial;

// {n, m} pairs with unit coefficient.
inline std::vector<Monomial> unit_terms(std::initializer_list<std::pair<int, int>> nm) {
  std::vector<Monomial> out;
  for (auto [n, m] : nm) out.push_back({Complex(1.0, 0.0), n, m});
  return out;
}

inline Germ skew(int delta, std::initializer_list<std::pair<int, int>> q) {
  return Germ::skew(delta, {}, unit_terms(q));
}

inline double rel_err(Complex got, Complex want) { return std::abs(got - want) / std::abs(want); }

}  // namespace testing
