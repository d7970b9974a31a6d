#include "boettcher/germ.hpp"

#include "boettcher/simd/series.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <utility>

namespace boettcher {

namespace {

bool finite(Complex c) { return std::isfinite(c.real()) && std::isfinite(c.imag()); }

Complex ipow(Complex base, int e) {
  Complex result(1.0, 0.0);
  while (e > 0) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

void check_series(const std::vector<Monomial>& terms, const char* which) {
  std::set<std::pair<int, int>> seen;
  for (const auto& t : terms) {
    if (t.n < 0 || t.m < 0) throw GermError(std::string(which) + ": exponents must be non-negative");
    if (!finite(t.coeff)) throw GermError(std::string(which) + ": coefficient is not finite");
    if (t.coeff == Complex(0.0, 0.0)) throw GermError(std::string(which) + ": stored coefficients must be nonzero");
    if (!seen.insert({t.n, t.m}).second)
      throw GermError(std::string(which) + ": duplicate exponent (" + std::to_string(t.n) + "," +
                      std::to_string(t.m) + ")");
  }
}

LeadingTerm validate_q(const std::vector<Monomial>& q) {
  if (q.empty()) throw GermError("q: at least one term is required");
  check_series(q, "q");
  // A linear z term keeps Df(0) nilpotent, which the construction allows; a
  // constant or linear w term does not.
  for (const auto& t : q)
    if (t.n == 0 && t.m <= 1)
      throw GermError("q: term z^0 w^" + std::to_string(t.m) + " is not allowed (Df(0) must be nilpotent)");
  LeadingTerm lead = leading_exponents(q);
  if (lead.d == 0) throw GermError("q: leading exponent d = 0 is not supported (d must be >= 1)");
  return lead;
}

void sort_terms(std::vector<Monomial>& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const Monomial& a, const Monomial& b) { return std::pair(a.n, a.m) < std::pair(b.n, b.m); });
}

Complex eval_series(const std::vector<Monomial>& terms, Complex z, Complex w) {
  Complex acc(0.0, 0.0);
  for (const auto& t : terms) acc += t.coeff * ipow(z, t.n) * ipow(w, t.m);
  return acc;
}

}  // namespace

LeadingTerm leading_exponents(std::span<const Monomial> q_terms) {
  if (q_terms.empty()) throw std::invalid_argument("leading_exponents: empty term list");
  const Monomial* best = &q_terms.front();
  for (const auto& t : q_terms)
    if (std::pair(t.n, t.m) < std::pair(best->n, best->m)) best = &t;
  return {best->n, best->m, best->coeff};
}

Germ Germ::skew(int delta, std::vector<Monomial> p_tail, std::vector<Monomial> q_terms) {
  if (delta < 2) throw GermError("delta must be >= 2");
  check_series(p_tail, "p_tail");
  for (const auto& t : p_tail) {
    if (t.m != 0) throw GermError("p_tail: skew product first component cannot depend on w");
    if (t.n < delta + 1) throw GermError("p_tail: terms must have n >= delta + 1");
  }
  Germ g;
  g.kind_ = GermKind::skew;
  g.delta_ = delta;
  g.lead_ = validate_q(q_terms);
  sort_terms(p_tail);
  sort_terms(q_terms);
  g.p_terms_ = std::move(p_tail);
  g.q_terms_ = std::move(q_terms);
  return g;
}

Germ Germ::general(int delta, std::vector<Monomial> ptilde_terms, std::vector<Monomial> q_terms) {
  if (delta < 2) throw GermError("delta must be >= 2");
  check_series(ptilde_terms, "p_general");
  for (const auto& t : ptilde_terms) {
    if (t.n < delta) throw GermError("p_general: terms must have n >= delta");
    if (t.n == delta && t.m < 1) throw GermError("p_general: a term with n = delta must have m >= 1");
  }
  Germ g;
  g.kind_ = GermKind::general;
  g.delta_ = delta;
  g.lead_ = validate_q(q_terms);
  sort_terms(ptilde_terms);
  sort_terms(q_terms);
  g.p_terms_ = std::move(ptilde_terms);
  g.q_terms_ = std::move(q_terms);
  return g;
}

std::vector<Monomial> Germ::q_others() const {
  std::vector<Monomial> out;
  for (const auto& t : q_terms_)
    if (t.n != lead_.gamma || t.m != lead_.d) out.push_back(t);
  return out;
}

Point Germ::eval(Point x) const {
  const Complex p = ipow(x.z, delta_) + eval_series(p_terms_, x.z, x.w);
  const Complex q = eval_series(q_terms_, x.z, x.w);
  if (!finite(p) || !finite(q)) throw std::range_error("germ evaluation overflowed");
  return {p, q};
}

Germ Germ::monomial_model() const {
  return Germ::skew(delta_, {}, {Monomial{lead_.b, lead_.gamma, lead_.d}});
}

Germ Germ::skew_truncation() const {
  if (kind_ == GermKind::skew) return *this;
  std::vector<Monomial> tail;
  for (const auto& t : p_terms_)
    if (t.m == 0) tail.push_back(t);
  return Germ::skew(delta_, std::move(tail), q_terms_);
}

Orbit iterate(const Germ& f, Point seed, int n, int max_n) {
  if (n < 0) throw std::invalid_argument("iterate: n must be >= 0");
  if (n > max_n) throw std::invalid_argument("iterate: n exceeds the configured maximum");
  Orbit orbit;
  orbit.points.reserve(static_cast<std::size_t>(n) + 1);
  orbit.points.push_back(seed);
  for (int k = 0; k < n; ++k) orbit.points.push_back(f.eval(orbit.points.back()));
  return orbit;
}

std::vector<Point> eval_batch(const Germ& f, std::span<const Point> points) {
  std::vector<simd::SeriesTerm> p_series{{1.0, 0.0, f.delta(), 0}};
  for (const auto& t : f.p_terms()) p_series.push_back({t.coeff.real(), t.coeff.imag(), t.n, t.m});
  std::vector<simd::SeriesTerm> q_series;
  for (const auto& t : f.q_terms()) q_series.push_back({t.coeff.real(), t.coeff.imag(), t.n, t.m});

  simd::PointsSoA soa;
  soa.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    soa.z_re[i] = points[i].z.real();
    soa.z_im[i] = points[i].z.imag();
    soa.w_re[i] = points[i].w.real();
    soa.w_im[i] = points[i].w.imag();
  }
  simd::ValuesSoA pv, qv;
  simd::eval_series(p_series, soa, pv);
  simd::eval_series(q_series, soa, qv);

  std::vector<Point> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    out[i] = {{pv.re[i], pv.im[i]}, {qv.re[i], qv.im[i]}};
    if (!finite(out[i].z) || !finite(out[i].w)) throw std::range_error("germ evaluation overflowed");
  }
  return out;
}

Expansion substitute_expand(std::span<const Monomial> q_terms, std::span<const Monomial> v_terms,
                            int max_total_degree) {
  int q_degree = 0;
  for (const auto& t : q_terms) q_degree = std::max(q_degree, t.n + t.m);
  if (max_total_degree < q_degree)
    throw std::invalid_argument("substitute_expand: degree budget below the degree of q");
  for (const auto& t : v_terms)
    if (t.n + t.m == 0) throw std::invalid_argument("substitute_expand: v must vanish at the origin");

  using Key = std::pair<int, int>;
  Expansion result;
  std::map<Key, Complex> acc;
  for (const auto& term : q_terms) {
    const int budget = max_total_degree - (term.n + term.m);
    // (1 + v)^n truncated to total degree <= budget
    std::map<Key, Complex> power{{{0, 0}, Complex(1.0, 0.0)}};
    for (int k = 0; k < term.n; ++k) {
      std::map<Key, Complex> next = power;
      for (const auto& [key, c] : power) {
        for (const auto& v : v_terms) {
          const Key e{key.first + v.n, key.second + v.m};
          if (e.first + e.second > budget) {
            result.truncated = true;
            continue;
          }
          next[e] += c * v.coeff;
        }
      }
      power = std::move(next);
    }
    for (const auto& [key, c] : power) acc[{key.first + term.n, key.second + term.m}] += term.coeff * c;
  }
  for (const auto& [key, c] : acc)
    if (c != Complex(0.0, 0.0)) result.terms.push_back({c, key.first, key.second});
  return result;
}

NormalizedGerm normalize_b(const Germ& f) {
  if (f.d() < 2) throw std::invalid_argument("normalize_b: requires d >= 2");
  if (f.b() == Complex(1.0, 0.0)) return {f, Complex(1.0, 0.0)};
  const Complex lambda = std::exp(std::log(f.b()) / static_cast<double>(f.d() - 1));
  std::vector<Monomial> q;
  for (const auto& t : f.q_terms()) {
    if (t.n == f.gamma() && t.m == f.d())
      q.push_back({Complex(1.0, 0.0), t.n, t.m});
    else
      q.push_back({t.coeff * std::pow(lambda, 1 - t.m), t.n, t.m});
  }
  std::vector<Monomial> p;
  for (const auto& t : f.p_terms()) p.push_back({t.coeff * std::pow(lambda, -t.m), t.n, t.m});
  Germ g = f.is_general() ? Germ::general(f.delta(), std::move(p), std::move(q))
                          : Germ::skew(f.delta(), std::move(p), std::move(q));
  return {std::move(g), lambda};
}

namespace {

std::string format_coeff(Complex c, bool leading_unit_ok) {
  std::ostringstream os;
  os.precision(6);
  if (c.imag() == 0.0) {
    if (leading_unit_ok && c.real() == 1.0) return "";
    os << c.real();
  } else if (c.real() == 0.0) {
    os << c.imag() << "i";
  } else {
    os << "(" << c.real() << (c.imag() < 0 ? "-" : "+") << std::abs(c.imag()) << "i)";
  }
  return os.str();
}

std::string format_monomial(const Monomial& t) {
  std::string s = format_coeff(t.coeff, t.n + t.m > 0);
  auto var = [&](const char* v, int e) {
    if (e == 0) return;
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  var("z", t.n);
  var("w", t.m);
  return s.empty() ? "1" : s;
}

}  // namespace

std::string describe(const Germ& f) {
  std::string first = "z^" + std::to_string(f.delta());
  for (const auto& t : f.p_terms()) first += " + " + format_monomial(t);
  std::string second;
  // leading term first
  second = format_monomial({f.b(), f.gamma(), f.d()});
  for (const auto& t : f.q_others()) second += " + " + format_monomial(t);
  return "(" + first + ", " + second + ")";
}

}  // namespace boettcher
