#include "boettcher/oracle.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace boettcher {

double escape_radius(const MonicPerturbedPower& g) {
  return 4.0 * std::pow(std::max(1.0, std::abs(g.c)), 1.0 / (g.d - 1));
}

Complex boettcher_1d(const MonicPerturbedPower& g, Complex w, double tol) {
  if (g.d < 2) throw std::invalid_argument("boettcher_1d: d must be >= 2");
  if (!(std::abs(w) > escape_radius(g))) throw std::domain_error("boettcher_1d: |w| must exceed the escape radius");
  Complex log_sum(0.0, 0.0);
  Complex u = w;
  double scale = 1.0;
  for (int j = 1; j <= 64; ++j) {
    scale /= g.d;
    // g(u)/u^d = 1 + c/u^d
    const Complex ratio = g.c / std::pow(u, g.d);
    const Complex term = scale * std::log(1.0 + ratio);
    log_sum += term;
    if (std::abs(term) < tol || ratio == Complex(0.0, 0.0)) break;
    u = std::pow(u, g.d) + g.c;
    if (!std::isfinite(std::abs(u))) throw std::range_error("boettcher_1d: orbit overflowed before convergence");
  }
  return w * std::exp(log_sum);
}

SemiconjugateFamily::SemiconjugateFamily(int d_, Complex c_, Rational l_) : d(d_), c(c_), l(std::move(l_)) {
  if (d < 2) throw std::invalid_argument("semiconjugate family: d must be >= 2");
  if (!l.is_positive()) throw std::invalid_argument("semiconjugate family: l must be positive");
  if (BigInt(d) % l.den() != 0) throw std::invalid_argument("semiconjugate family: denominator of l must divide d");
}

Germ SemiconjugateFamily::germ() const {
  const int k = static_cast<int>((l * Rational(d)).num());
  std::vector<Monomial> q{{Complex(1.0, 0.0), 0, d}};
  if (c != Complex(0.0, 0.0)) q.push_back({c, k, 0});
  return Germ::skew(d, {}, std::move(q));
}

ClosedFormEval closed_form_phi(const SemiconjugateFamily& family, Point x) {
  if (x.z == Complex(0.0, 0.0)) throw std::domain_error("closed_form_phi: z must be nonzero");
  const double l = family.l.to_double();
  const Complex zl = std::exp(l * std::log(x.z));
  const MonicPerturbedPower g{family.d, family.c};
  if (!(std::abs(x.w) > escape_radius(g) * std::abs(zl)))
    throw std::domain_error("closed_form_phi: requires |w| > R |z|^l");
  ClosedFormEval out;
  out.branch_warning = !family.l.is_integer() && std::abs(std::abs(std::arg(x.z)) - std::numbers::pi) < 1e-6;
  out.value = {x.z, zl * boettcher_1d(g, x.w / zl)};
  return out;
}

Point affine_oracle_d1(Complex b, Point x) {
  if (b == Complex(1.0, 0.0))
    throw std::domain_error("affine_oracle_d1: b = 1 admits no conjugacy to the monomial model");
  return {x.z, x.w + x.z / (1.0 - b)};
}

std::optional<SemiconjugateFamily> match_semiconjugate(const Germ& f) {
  if (f.is_general() || !f.p_terms().empty()) return std::nullopt;
  const int d = f.delta();
  if (f.gamma() != 0 || f.d() != d || f.b() != Complex(1.0, 0.0)) return std::nullopt;
  const auto others = f.q_others();
  if (others.size() > 1) return std::nullopt;
  if (others.empty()) return SemiconjugateFamily(d, Complex(0.0, 0.0), Rational(1));
  const Monomial& t = others.front();
  if (t.m != 0 || t.n < 1) return std::nullopt;
  return SemiconjugateFamily(d, t.coeff, Rational(BigInt(t.n), BigInt(d)));
}

std::optional<Complex> match_affine_d1(const Germ& f) {
  if (f.is_general() || !f.p_terms().empty() || f.delta() != 2) return std::nullopt;
  if (f.gamma() != 1 || f.d() != 1 || f.b() == Complex(1.0, 0.0)) return std::nullopt;
  const auto others = f.q_others();
  if (others.size() != 1) return std::nullopt;
  const Monomial& t = others.front();
  if (t.n != 2 || t.m != 0 || t.coeff != Complex(1.0, 0.0)) return std::nullopt;
  return f.b();
}

}  // namespace boettcher
