#include "boettcher/weights.hpp"

#include <stdexcept>

namespace boettcher {

ExponentData exponent_data(int delta, std::span<const Monomial> q_terms) {
  const LeadingTerm lead = leading_exponents(q_terms);
  ExponentData e;
  e.delta = delta;
  e.gamma = lead.gamma;
  e.d = lead.d;
  for (const auto& t : q_terms)
    if (t.n != lead.gamma || t.m != lead.d) e.others.emplace_back(t.n, t.m);
  return e;
}

ExponentData exponent_data(const Germ& f) {
  ExponentData e = exponent_data(f.delta(), f.q_terms());
  e.general = f.is_general();
  return e;
}

bool IntervalReport::contains(const Rational& a) const {
  if (empty) return false;
  const ExtendedRational x(a);
  if (lower_closed ? x < lower : x <= lower) return false;
  if (upper_closed ? x > upper : x >= upper) return false;
  return true;
}

std::string IntervalReport::str() const {
  if (empty) return "empty";
  if (lower == upper) return "{" + lower.str() + "}";
  return std::string(lower_closed ? "[" : "(") + lower.str() + ", " + upper.str() + (upper_closed ? "]" : ")");
}

std::string to_string(Admissibility a) {
  switch (a) {
    case Admissibility::admissible_d_ge2: return "Admissible_dGe2";
    case Admissibility::admissible_d_eq1: return "Admissible_dEq1";
    case Admissibility::inadmissible_d_eq1_boundary: return "Inadmissible_dEq1_boundary";
    case Admissibility::alpha_undefined: return "AlphaUndefined";
  }
  return "unknown";
}

bool is_trivial(const ExponentData& e) {
  for (const auto& [n, m] : e.others)
    if (m < e.d) return false;
  return true;
}

ExtendedRational compute_m_f(const ExponentData& e) {
  ExtendedRational best = ExtendedRational::neg_inf();
  for (const auto& [n, m] : e.others) {
    if (n <= e.gamma) continue;
    const ExtendedRational r(Rational(BigInt(e.d - m), BigInt(n - e.gamma)));
    if (r > best) best = r;
  }
  return best;
}

namespace {

std::string compare_label(int delta, int d) {
  if (delta > d) return "delta>d";
  if (delta == d) return "delta=d";
  return "delta<d";
}

IntervalReport empty_interval() {
  IntervalReport r;
  r.empty = true;
  return r;
}

IntervalReport closed(const ExtendedRational& lo, const ExtendedRational& hi) {
  IntervalReport r;
  r.lower = lo;
  r.upper = hi;
  r.lower_closed = lo.is_finite();
  r.upper_closed = hi.is_finite();
  r.empty = hi < lo;
  return r;
}

}  // namespace

std::string table_cell(const ExponentData& e) {
  std::string s = is_trivial(e) ? "trivial" : "non-trivial";
  s += ", " + compare_label(e.delta, e.d);
  s += e.gamma == 0 ? ", gamma=0" : ", gamma!=0";
  return s;
}

IntervalReport compute_interval(const ExponentData& e) {
  const bool trivial = is_trivial(e);
  const ExtendedRational m_f = compute_m_f(e);
  const ExtendedRational zero(Rational(0));
  const auto inf = ExtendedRational::pos_inf();

  IntervalReport r;
  if (e.gamma == 0) {
    // a (d - delta) <= 0 and a >= m_f
    if (e.delta > e.d)
      r = trivial ? closed(zero, inf) : closed(m_f, inf);
    else if (e.delta == e.d)
      r = closed(m_f, inf);
    else
      r = trivial ? closed(m_f, zero) : empty_interval();
  } else {
    // a gamma (a - alpha_0) <= 0 and a >= m_f
    const ExtendedRational alpha_0(Rational(BigInt(e.delta - e.d), BigInt(e.gamma)));
    if (e.delta > e.d) {
      if (trivial)
        r = closed(zero, alpha_0);
      else
        r = m_f <= alpha_0 ? closed(m_f, alpha_0) : empty_interval();
    } else if (e.delta == e.d) {
      r = trivial ? closed(zero, zero) : empty_interval();
    } else {
      r = trivial ? closed(m_f > alpha_0 ? m_f : alpha_0, zero) : empty_interval();
    }
  }

  if (e.general && !r.empty) {
    // general germs: weights restricted to a >= 0
    if (r.upper < zero) return empty_interval();
    if (r.lower < zero) {
      r.lower = zero;
      r.lower_closed = true;
    }
  }
  return r;
}

std::optional<Rational> compute_alpha(const ExponentData& e) {
  if (is_trivial(e)) return Rational(0);
  const IntervalReport r = compute_interval(e);
  if (r.empty) return std::nullopt;
  // non-trivial germs have m_f > 0, so the lower end is finite and positive
  return max(r.lower.value(), Rational(0));
}

Admissibility admissibility(const ExponentData& e, const std::optional<Rational>& alpha) {
  if (!alpha) return Admissibility::alpha_undefined;
  if (e.d >= 2) return Admissibility::admissible_d_ge2;
  if (e.gamma == 0) return Admissibility::admissible_d_eq1;  // not reachable for valid germs
  const Rational bound(BigInt(e.delta - 1), BigInt(e.gamma));
  // alpha <= (delta - 1)/gamma whenever alpha is defined; equality is the refused case
  return *alpha < bound ? Admissibility::admissible_d_eq1 : Admissibility::inadmissible_d_eq1_boundary;
}

WeightReport weight_report(const Germ& f) {
  const ExponentData e = exponent_data(f);
  WeightReport r;
  r.trivial = is_trivial(e);
  r.m_f = compute_m_f(e);
  if (e.gamma != 0) r.alpha_0 = Rational(BigInt(e.delta - e.d), BigInt(e.gamma));
  r.interval = compute_interval(e);
  r.alpha = compute_alpha(e);
  r.admissibility = admissibility(e, r.alpha);
  r.table_cell = table_cell(e);
  if (e.general) r.notes.push_back("general germ: interval restricted to non-negative weights");
  if (e.d == 1 && e.gamma == 0)
    r.notes.push_back("d = 1 with gamma = 0: the bound alpha < (delta-1)/gamma is vacuous");
  if (r.admissibility == Admissibility::inadmissible_d_eq1_boundary)
    r.notes.push_back("alpha = (delta-1)/gamma: the d = 1 conjugacy hypothesis fails");
  return r;
}

}  // namespace boettcher
