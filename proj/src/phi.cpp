#include "boettcher/phi.hpp"

#include "boettcher/simd/series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace boettcher {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Complex reduce_phase(Complex x) { return {x.real(), std::remainder(x.imag(), kTwoPi)}; }

BigInt ipow(long base, int e) {
  BigInt r = 1;
  for (int k = 0; k < e; ++k) r *= base;
  return r;
}

}  // namespace

LogPoint to_log(Point x) {
  if (!(std::abs(x.z) >= kAxisFloor) || !(std::abs(x.w) >= kAxisFloor))
    throw AxisError("point lies on or too close to a coordinate axis");
  return {std::log(x.z), std::log(x.w)};
}

Point from_log(const LogPoint& x) { return {std::exp(x.z), std::exp(x.w)}; }

PerturbationSeries::PerturbationSeries(const Germ& f) {
  for (const auto& t : f.p_terms()) zeta_.push_back({t.coeff, t.n - f.delta(), t.m});
  for (const auto& t : f.q_others()) eta_.push_back({t.coeff / f.b(), t.n - f.gamma(), t.m - f.d()});
}

Perturbation PerturbationSeries::at(const LogPoint& x) const {
  auto sum = [&](const std::vector<Term>& terms) {
    Complex acc(0.0, 0.0);
    for (const auto& t : terms) acc += t.coeff * std::exp(static_cast<double>(t.dz) * x.z + static_cast<double>(t.dw) * x.w);
    return acc;
  };
  return {sum(zeta_), sum(eta_)};
}

std::vector<Perturbation> PerturbationSeries::at(std::span<const Point> points) const {
  auto to_series = [](const std::vector<Term>& terms) {
    std::vector<simd::SeriesTerm> s;
    for (const auto& t : terms) s.push_back({t.coeff.real(), t.coeff.imag(), t.dz, t.dw});
    return s;
  };
  simd::PointsSoA soa;
  soa.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    soa.z_re[i] = points[i].z.real();
    soa.z_im[i] = points[i].z.imag();
    soa.w_re[i] = points[i].w.real();
    soa.w_im[i] = points[i].w.imag();
  }
  simd::ValuesSoA zv, ev;
  simd::eval_series(to_series(zeta_), soa, zv);
  simd::eval_series(to_series(eta_), soa, ev);
  std::vector<Perturbation> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = {{zv.re[i], zv.im[i]}, {ev.re[i], ev.im[i]}};
  return out;
}

Perturbation zeta_eta(const Germ& f, Point x) { return PerturbationSeries(f).at(to_log(x)); }

LogPoint lift_step(const Germ& f, const LogPoint& x, const Perturbation& pert) {
  const Complex z = static_cast<double>(f.delta()) * x.z + std::log(1.0 + pert.zeta);
  const Complex w = static_cast<double>(f.gamma()) * x.z + static_cast<double>(f.d()) * x.w + std::log(f.b()) +
                    std::log(1.0 + pert.eta);
  return {reduce_phase(z), reduce_phase(w)};
}

BigInt gamma_n(int delta, int d, int gamma, int n) {
  if (n < 1) throw std::invalid_argument("gamma_n: n must be >= 1");
  if (delta == d) return BigInt(n) * ipow(d, n - 1) * gamma;
  return (ipow(delta, n) - ipow(d, n)) * gamma / (delta - d);
}

BoettcherMap::BoettcherMap(const Germ& f, int max_n) : f_(f), series_(f), max_n_(max_n) {
  if (max_n < 0) throw std::invalid_argument("max_n must be >= 0");
  const std::size_t size = static_cast<std::size_t>(max_n) + 1;
  inv_delta_pow_.assign(size, 1.0);
  inv_d_pow_.assign(size, 1.0);
  cross_.assign(size, 0.0);
  for (int j = 1; j <= max_n; ++j) {
    const BigInt dj = ipow(f.delta(), j);
    const BigInt ddj = ipow(f.d(), j);
    inv_delta_pow_[j] = Rational(BigInt(1), dj).to_double();
    inv_d_pow_[j] = Rational(BigInt(1), ddj).to_double();
    cross_[j] = Rational(gamma_n(f.delta(), f.d(), f.gamma(), j), dj * ddj).to_double();
  }
}

namespace {

// Log-increments of factor j along the orbit point x.
struct Step {
  Complex dz;
  Complex dw;
};

Step factor(const Perturbation& p, double inv_delta_j, double inv_d_j, double cross_j, int index) {
  if (!(std::abs(p.zeta) < 1.0) || !(std::abs(p.eta) < 1.0))
    throw BranchError(index, "principal branch violated at orbit index " + std::to_string(index) +
                                 " (|zeta| or |eta| >= 1)");
  const Complex lz = std::log(1.0 + p.zeta);
  const Complex le = std::log(1.0 + p.eta);
  return {inv_delta_j * lz, inv_d_j * le - cross_j * lz};
}

}  // namespace

Point BoettcherMap::phi_n(Point x, int n) const {
  if (n < 0 || n > max_n_) throw std::invalid_argument("phi_n: n out of range");
  if (n == 0) return x;
  LogPoint orbit = to_log(x);
  Complex lz(0.0, 0.0), lw(0.0, 0.0);
  for (int j = 1; j <= n; ++j) {
    const Perturbation p = series_.at(orbit);
    const Step s = factor(p, inv_delta_pow_[j], inv_d_pow_[j], cross_[j], j - 1);
    lz += s.dz;
    lw += s.dw;
    if (j < n) orbit = lift_step(f_, orbit, p);
  }
  return {x.z * std::exp(lz), x.w * std::exp(lw)};
}

PhiEval BoettcherMap::phi(Point x, double tol) const {
  if (!(tol > 0.0)) throw std::invalid_argument("phi: tolerance must be positive");
  LogPoint orbit = to_log(x);
  PhiEval out;
  for (int j = 1; j <= max_n_; ++j) {
    const Perturbation p = series_.at(orbit);
    const Step s = factor(p, inv_delta_pow_[j], inv_d_pow_[j], cross_[j], j - 1);
    out.lift_z += s.dz;
    out.lift_w += s.dw;
    out.n_used = j;
    out.last_increment = std::max(std::abs(s.dz), std::abs(s.dw));
    if (out.last_increment <= tol) {
      out.converged = true;
      break;
    }
    orbit = lift_step(f_, orbit, p);
  }
  out.value = {x.z * std::exp(out.lift_z), x.w * std::exp(out.lift_w)};
  return out;
}

Point phi_n(const Germ& f, Point x, int n) { return BoettcherMap(f, std::max(n, 0)).phi_n(x, n); }

PhiEval phi(const Germ& f, Point x, double tol, int max_n) { return BoettcherMap(f, max_n).phi(x, tol); }

double lift_constant_C(int delta, int d, int gamma) {
  if (d < 2) throw std::invalid_argument("lift_constant_C: requires d >= 2");
  const double first = 1.0 / (delta - 1);
  double second;
  if (delta == d)
    second = 1.0 / (d - 1) + static_cast<double>(gamma) / ((d - 1.0) * (d - 1.0));
  else
    second = 1.0 / (d - 1) + static_cast<double>(gamma) / (delta - d) * (1.0 / (d - 1) - 1.0 / (delta - 1));
  return std::max(first, second);
}

LiftBounds epsilon_sup(const Germ& f, const WeightedDomain& domain, int n_samples, const SampleOptions& options) {
  const auto points = sample_domain(domain, n_samples, options);
  const auto perts = PerturbationSeries(f).at(points);
  LiftBounds out;
  if (f.d() >= 2) out.C = lift_constant_C(f.delta(), f.d(), f.gamma());
  out.samples = n_samples;
  for (const auto& p : perts) {
    const double az = std::abs(p.zeta);
    const double ae = std::abs(p.eta);
    if (!(az < 1.0) || !(ae < 1.0)) {
      ++out.rejected;
      continue;
    }
    out.epsilon = std::max({out.epsilon, az, ae});
    out.epsilon_lift = std::max({out.epsilon_lift, std::abs(std::log(1.0 + p.zeta)), std::abs(std::log(1.0 + p.eta))});
  }
  if (10 * out.rejected > n_samples)
    throw std::runtime_error("epsilon_sup: domain too large (" + std::to_string(out.rejected) + " of " +
                             std::to_string(n_samples) + " samples outside the branch domain)");
  out.epsilon_tilde = std::max(std::log1p(out.epsilon), out.epsilon_lift);
  return out;
}

ShrunkenDomain shrunken_domain(const WeightedDomain& domain, const LiftBounds& bounds, const Rational& alpha,
                               ShrinkMode mode) {
  if (!alpha.is_positive()) throw std::invalid_argument("shrunken_domain: requires alpha > 0");
  if (!bounds.C) throw std::invalid_argument("shrunken_domain: lift constant C unavailable (d = 1)");
  const double a = alpha.to_double();
  const double lift_bound = *bounds.C * bounds.epsilon_tilde;  // ||Phi - id|| < C eps~
  ShrunkenDomain out;
  out.alpha = alpha;
  if (mode == ShrinkMode::skew) {
    out.shrink_constant = 2.0 * *bounds.C;
    out.slanted_shift = 2.0 * lift_bound;
  } else {
    out.shrink_constant = (1.0 + a) / a * 2.0;
    out.slanted_shift = (1.0 + a) / a * 2.0 * lift_bound;
  }
  out.straight_shift = 2.0 * lift_bound;
  // log r1'/alpha = log r1/alpha - slanted_shift
  out.r1_prime = domain.r1 * std::exp(-a * out.slanted_shift);
  out.r2_prime = domain.r2 * std::exp(-out.straight_shift);
  return out;
}

}  // namespace boettcher
