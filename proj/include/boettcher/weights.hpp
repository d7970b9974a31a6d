#pragma once

// Exact weight analysis: triviality, m_f, the interval I_f of admissible
// weights, the weight alpha, and the admissibility verdict for the
// conjugacy theorems. No floating point is used in this module.

#include "boettcher/germ.hpp"
#include "boettcher/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace boettcher {

/// Exponent data that the weight computations depend on.
struct ExponentData {
  int delta = 2;
  int gamma = 0;
  int d = 1;
  /// (n_j, m_j) of every non-leading q term.
  std::vector<std::pair<int, int>> others;
  /// Set for general germs: the weight is restricted to a >= 0.
  bool general = false;
};

ExponentData exponent_data(const Germ& f);
/// Exponent data of the skew product with first component z^delta + ... and
/// second component given by q_terms.
ExponentData exponent_data(int delta, std::span<const Monomial> q_terms);

struct IntervalReport {
  ExtendedRational lower = ExtendedRational::neg_inf();
  ExtendedRational upper = ExtendedRational::pos_inf();
  bool lower_closed = false;
  bool upper_closed = false;
  bool empty = false;

  bool contains(const Rational& a) const;
  std::string str() const;
  friend bool operator==(const IntervalReport&, const IntervalReport&) = default;
};

enum class Admissibility { admissible_d_ge2, admissible_d_eq1, inadmissible_d_eq1_boundary, alpha_undefined };

std::string to_string(Admissibility a);

struct WeightReport {
  bool trivial = false;
  ExtendedRational m_f = ExtendedRational::neg_inf();
  /// (delta - d)/gamma; absent when gamma = 0.
  std::optional<Rational> alpha_0;
  IntervalReport interval;
  std::optional<Rational> alpha;
  Admissibility admissibility = Admissibility::alpha_undefined;
  /// Which cell of the classification tables produced the interval.
  std::string table_cell;
  std::vector<std::string> notes;
};

bool is_trivial(const ExponentData& e);
ExtendedRational compute_m_f(const ExponentData& e);
IntervalReport compute_interval(const ExponentData& e);
/// Table cell label, e.g. "non-trivial, delta>d, gamma!=0".
std::string table_cell(const ExponentData& e);
std::optional<Rational> compute_alpha(const ExponentData& e);
Admissibility admissibility(const ExponentData& e, const std::optional<Rational>& alpha);

inline bool is_trivial(const Germ& f) { return is_trivial(exponent_data(f)); }
inline ExtendedRational compute_m_f(const Germ& f) { return compute_m_f(exponent_data(f)); }
inline IntervalReport compute_interval(const Germ& f) { return compute_interval(exponent_data(f)); }
inline std::optional<Rational> compute_alpha(const Germ& f) { return compute_alpha(exponent_data(f)); }
inline Admissibility admissibility(const Germ& f, const std::optional<Rational>& alpha) {
  return admissibility(exponent_data(f), alpha);
}

WeightReport weight_report(const Germ& f);

}  // namespace boettcher
