#include "oscphase/oscillatory.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>

#include "oscphase/errors.hpp"
#include "oscphase/ibp.hpp"
#include "oscphase/quadrature.hpp"

namespace oscphase {

namespace {

// Hard ceiling on the tail depth; the cutoff derivatives grow like (j!)^2.
constexpr int kMaxTailDepth = 40;

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " must be > 0");
}

EngineOptions engine_options(const QuadratureConfig& cfg) {
  return {cfg.rel_tol, cfg.abs_tol, cfg.max_nodes, cfg.filon_period_threshold};
}

// Smallest X >= lo with bound(X) <= tol for a decreasing bound; +inf if none.
template <class Fn>
double solve_decreasing(Fn&& bound, double lo, double tol) {
  if (bound(lo) <= tol) return lo;
  double hi = lo;
  while (bound(hi) > tol) {
    hi *= 2.0;
    if (hi > 1e300) return std::numeric_limits<double>::infinity();
  }
  double a = std::max(lo, 0.5 * hi);
  for (int it = 0; it < 80 && hi - a > 1e-13 * hi; ++it) {
    const double mid = std::sqrt(a * hi);
    if (bound(mid) <= tol) {
      hi = mid;
    } else {
      a = mid;
    }
  }
  return hi;
}

struct TailTerms {
  std::vector<double> k;     // |C_{l,j}| S_j 2^{max(e_j,0)/2}
  std::vector<double> beta;  // exponent of the envelope of term j
  double pref = 0.0;         // |(i/(lambda p))^l|

  // int_X^inf of the envelope of |L*^l(...)|.
  double operator()(double x) const {
    const double lx = std::log(x);
    double s = 0.0;
    for (std::size_t j = 0; j < k.size(); ++j) {
      if (k[j] == 0.0) continue;
      s += k[j] * std::exp((beta[j] + 1.0) * lx) / (-beta[j] - 1.0);
    }
    return pref * s;
  }
};

TailTerms tail_terms(double p, double q, double lambda, const Amplitude& a, int l) {
  const auto table = ibp_coefficients(p, q, l);
  TailTerms t;
  t.pref = std::pow(1.0 / (lambda * p), l);
  const auto row = table->row(l);
  for (int j = 0; j <= l; ++j) {
    const double e = a.tau() + a.delta() * j;
    const double env = std::abs(row[static_cast<std::size_t>(j)]) * a.order_bound(j) *
                       std::pow(2.0, 0.5 * std::max(e, 0.0));
    t.k.push_back(env);
    t.beta.push_back(table->exponent(l, j) + e);
  }
  return t;
}

Complex neville_zero(std::span<const double> t, std::span<const Complex> y) {
  std::vector<Complex> p(y.begin(), y.end());
  const std::size_t n = p.size();
  for (std::size_t m = 1; m < n; ++m) {
    for (std::size_t i = 0; i + m < n; ++i) {
      p[i] = (t[i + m] * p[i] - t[i] * p[i + 1]) / (t[i + m] - t[i]);
    }
  }
  return p[0];
}

}  // namespace

void QuadratureConfig::validate() const {
  check_positive(rel_tol, "rel_tol");
  check_positive(abs_tol, "abs_tol");
  check_positive(tail_truncation_tol, "tail_truncation_tol");
  check_positive(phase_cap, "phase_cap");
  check_positive(filon_period_threshold, "filon_period_threshold");
  if (!(cutoff_radius > 1.0) || !std::isfinite(cutoff_radius)) {
    throw DomainError("cutoff_radius must be > 1");
  }
  if (max_nodes <= 0) throw DomainError("max_nodes must be > 0");
  if (ibp_depth_override && *ibp_depth_override < 0) {
    throw DomainError("ibp_depth_override must be >= 0");
  }
}

TailPlan plan_tail(double p, double q, double lambda, const Amplitude& a,
                   const QuadratureConfig& cfg) {
  const DepthParams d = ibp_depth(p, q, a.tau(), a.delta());
  const double gap = p - 1.0 - a.delta();
  const double r = cfg.cutoff_radius;
  auto beta_max = [&](int l) { return q - 1.0 + a.tau() - gap * l; };
  auto make = [&](int l) {
    const TailTerms terms = tail_terms(p, q, lambda, a, l);
    TailPlan plan{l, solve_decreasing(terms, r, cfg.tail_truncation_tol), 0.0};
    plan.bound = std::isfinite(plan.cut) ? terms(plan.cut) : std::numeric_limits<double>::infinity();
    return plan;
  };

  if (cfg.ibp_depth_override) {
    const int l = *cfg.ibp_depth_override;
    if (!(beta_max(l) < -1.0)) {
      throw DomainError("ibp depth " + std::to_string(l) +
                        " leaves a tail integrand that is not absolutely integrable");
    }
    if (l > a.max_order()) {
      throw OrderError("ibp depth " + std::to_string(l) + " exceeds amplitude max_order");
    }
    TailPlan plan = make(l);
    if (!std::isfinite(plan.cut)) throw ConvergenceError("tail truncation abscissa not found");
    return plan;
  }

  const int l_decay = static_cast<int>(std::ceil((q - 1.0 + a.tau() + 1.5) / gap - 1e-12));
  const int l_min = std::max(d.l_pq, l_decay);
  if (l_min > a.max_order()) {
    throw OrderError("tail depth " + std::to_string(l_min) + " exceeds amplitude max_order " +
                     std::to_string(a.max_order()));
  }
  const int l_max = std::min(a.max_order(), kMaxTailDepth);
  TailPlan best;
  double best_phase = std::numeric_limits<double>::infinity();
  for (int l = l_min; l <= std::max(l_min, l_max); ++l) {
    TailPlan plan = make(l);
    const double ph = lambda * std::pow(plan.cut, p);
    if (ph <= cfg.phase_cap) return plan;
    if (ph < best_phase) {
      best_phase = ph;
      best = plan;
    }
  }
  if (!std::isfinite(best_phase)) throw ConvergenceError("tail truncation abscissa not found");
  return best;
}

QuadratureReport os_integral_halfline(double p, double q, Sign sign, double lambda,
                                      const Amplitude& a, const QuadratureConfig& cfg) {
  cfg.validate();
  check_positive(p, "p");
  check_positive(q, "q");
  check_positive(lambda, "lambda");
  const TailPlan plan = plan_tail(p, q, lambda, a, cfg);
  const Cutoff cut(cfg.cutoff_radius);
  const double r = cut.r();

  EngineOptions eo = engine_options(cfg);
  PhaseIntegrand compact{p, sign, lambda, q, [&](double x) { return a(x) * cut.phi(x); }};
  const double bp_compact[] = {0.0, 1.0, r};
  const EngineResult inner = integrate_phase(compact, bp_compact, eo);

  const auto table = ibp_coefficients(p, q, plan.depth);
  const IbpIntegrand parts{a, cut, std::nullopt, 0.0};
  const Complex pref = ibp_prefactor(p, lambda, plan.depth, sign);
  PhaseIntegrand tail{p, sign, lambda, 1.0,
                      [&](double x) { return ibp_density(*table, parts, x); }};
  EngineOptions eo_tail = eo;
  eo_tail.abs_tol = std::max(cfg.abs_tol, 0.5 * cfg.rel_tol * std::abs(inner.value)) / std::abs(pref);
  eo_tail.max_nodes = std::max(1L, cfg.max_nodes - inner.nodes);
  std::vector<double> bp_tail = {1.0, r};
  if (plan.cut > r) bp_tail.push_back(plan.cut);
  const EngineResult outer = integrate_phase(tail, bp_tail, eo_tail);

  QuadratureReport rep;
  rep.value = inner.value + pref * outer.value;
  rep.truncation_bound = plan.bound;
  rep.est_error = inner.error + std::abs(pref) * outer.error + plan.bound;
  rep.nodes_used = inner.nodes + outer.nodes;
  rep.ibp_depth_used = plan.depth;
  rep.tail_cut = std::max(plan.cut, r);
  return rep;
}

QuadratureReport os_integral_fullline(int m, Sign sign, double lambda, const Amplitude& a,
                                      const QuadratureConfig& cfg) {
  if (m < 1) throw DomainError("m must be a positive integer");
  const QuadratureReport right = os_integral_halfline(m, 1.0, sign, lambda, a, cfg);
  const QuadratureReport left =
      os_integral_halfline(m, 1.0, times_parity(sign, m), lambda, a.reflected(), cfg);
  QuadratureReport rep;
  rep.value = right.value + left.value;
  rep.est_error = right.est_error + left.est_error;
  rep.nodes_used = right.nodes_used + left.nodes_used;
  rep.ibp_depth_used = std::max(right.ibp_depth_used, left.ibp_depth_used);
  rep.tail_cut = std::max(right.tail_cut, left.tail_cut);
  rep.truncation_bound = right.truncation_bound + left.truncation_bound;
  return rep;
}

QuadratureReport os_integral_reduced(double p, double q, Sign sign, double lambda,
                                     const Amplitude& a, int l, const QuadratureConfig& cfg) {
  check_positive(p, "p");
  check_positive(q, "q");
  check_positive(lambda, "lambda");
  const DepthParams d = ibp_depth(p, q, a.tau(), a.delta());
  if (l < 0 || l > d.l0) {
    throw DomainError("reduction without cutoff needs 0 <= l <= l0 = " + std::to_string(d.l0));
  }
  if (l > a.max_order()) throw OrderError("reduction depth exceeds amplitude max_order");
  const auto table = ibp_coefficients(p, q, l);
  const Complex pref = ibp_prefactor(p, lambda, l, sign);
  QuadratureReport rep;
  const auto row = table->row(l);
  for (int j = 0; j <= l; ++j) {
    const double c = row[static_cast<std::size_t>(j)];
    if (c == 0.0) continue;
    const QuadratureReport part =
        os_integral_halfline(p, table->exponent(l, j) + 1.0, sign, lambda, a.derivative(j), cfg);
    rep.value += c * part.value;
    rep.est_error += std::abs(c) * part.est_error;
    rep.nodes_used += part.nodes_used;
    rep.ibp_depth_used = std::max(rep.ibp_depth_used, part.ibp_depth_used);
    rep.tail_cut = std::max(rep.tail_cut, part.tail_cut);
    rep.truncation_bound += std::abs(c) * part.truncation_bound;
  }
  rep.value *= pref;
  rep.est_error *= std::abs(pref);
  rep.truncation_bound *= std::abs(pref);
  return rep;
}

std::vector<double> default_eps_ladder() {
  return {1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5), 1e-3};
}

EpsilonReport epsilon_regularized_detailed(double p, double q, Sign sign, double lambda,
                                           const Amplitude& a, const Regularizer& chi,
                                           std::span<const double> eps_ladder,
                                           const QuadratureConfig& cfg) {
  cfg.validate();
  check_positive(p, "p");
  check_positive(q, "q");
  check_positive(lambda, "lambda");
  if (eps_ladder.size() < 2) throw DomainError("eps ladder needs at least two values");
  for (std::size_t i = 0; i < eps_ladder.size(); ++i) {
    if (!(eps_ladder[i] > 0.0 && eps_ladder[i] < 1.0)) {
      throw DomainError("eps ladder values must lie in (0, 1)");
    }
    if (i > 0 && !(eps_ladder[i] < eps_ladder[i - 1])) {
      throw DomainError("eps ladder must be strictly decreasing");
    }
  }

  // For x >= 1: x^{q-1} |a(x)| <= c0 x^m.
  const double m = q - 1.0 + a.tau();
  const double c0 = a.order_bound(0) * std::pow(2.0, 0.5 * std::max(a.tau(), 0.0)) *
                    chi.decay_constant();
  const EngineOptions eo = engine_options(cfg);

  EpsilonReport rep;
  for (const double eps : eps_ladder) {
    double cut = 0.0;
    if (chi.decay_class() == DecayClass::gaussian) {
      const double e2 = eps * eps;
      const double lo = std::max(1.0, 1.01 * std::sqrt(std::max(m, 0.0) / (2.0 * e2)) + 1e-9);
      auto bound = [&](double x) {
        const double kappa = 2.0 * e2 * x - std::max(m, 0.0) / x;
        return c0 * std::exp(m * std::log(x) - e2 * x * x) / kappa;
      };
      cut = solve_decreasing(bound, lo, cfg.tail_truncation_tol);
    } else {
      const double s = chi.decay_power();
      if (!(s > m + 1.0)) {
        throw DomainError("regularizer decay too slow for this q and amplitude class");
      }
      const double rhs = cfg.tail_truncation_tol * (s - m - 1.0) * std::pow(eps, s) / c0;
      cut = std::max(1.0, std::pow(rhs, 1.0 / (m - s + 1.0)));
    }
    if (!std::isfinite(cut)) throw ConvergenceError("eps truncation abscissa not found");
    PhaseIntegrand in{p, sign, lambda, q, [&](double x) { return a(x) * chi.chi(eps * x); }};
    std::vector<double> bp = {0.0};
    if (cut > 1.0) bp.push_back(1.0);
    bp.push_back(cut);
    const EngineResult r = integrate_phase(in, bp, eo);
    rep.eps.push_back(eps);
    rep.values.push_back(r.value);
    rep.nodes_used += r.nodes;
  }

  // Smallest eps first; the limit is taken in t = eps^2.
  const std::size_t n = rep.eps.size();
  std::vector<double> t(n);
  std::vector<Complex> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    t[i] = rep.eps[n - 1 - i] * rep.eps[n - 1 - i];
    y[i] = rep.values[n - 1 - i];
  }
  const std::size_t deg = std::min<std::size_t>(4, n - 1);
  const Complex high = neville_zero(std::span(t).first(deg + 1), std::span(y).first(deg + 1));
  const Complex low = neville_zero(std::span(t).first(deg), std::span(y).first(deg));
  rep.value = high;
  rep.spread = std::abs(high - low);
  if (rep.spread > 1e2 * cfg.rel_tol * std::max(1.0, std::abs(high))) {
    char msg[160];
    std::snprintf(msg, sizeof msg, "eps extrapolation did not settle: spread %.3g", rep.spread);
    throw ConvergenceError(msg);
  }
  return rep;
}

Complex epsilon_regularized(double p, double q, Sign sign, double lambda, const Amplitude& a,
                            const Regularizer& chi, std::span<const double> eps_ladder,
                            const QuadratureConfig& cfg) {
  return epsilon_regularized_detailed(p, q, sign, lambda, a, chi, eps_ladder, cfg).value;
}

Complex rotated_contour_reference(double p, double q, Sign sign) {
  check_positive(p, "p");
  check_positive(q, "q");
  const double s = q / p - 1.0;
  boost::math::quadrature::exp_sinh<double> integrator;
  const double integral =
      integrator.integrate(
      [s](double t) {
        if (!std::isfinite(t)) return 0.0;
        return std::exp(s * std::log(t) - t);
      },
      1e-14);
  return std::polar(1.0, to_double(sign) * kPi * q / (2.0 * p)) * (integral / p);
}

}  // namespace oscphase
