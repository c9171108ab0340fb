#include "oscphase/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/bessel.hpp>

#include "oscphase/errors.hpp"

namespace oscphase {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 21>;
using GL10 = boost::math::quadrature::gauss<double, 10>;
using GL20 = boost::math::quadrature::gauss<double, 20>;

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr int kFilonOrder = 20;
constexpr double kTwoPi = 2.0 * kPi;
// Periods resolved by Gauss-Kronrod next to x = 0 before a Filon segment starts.
constexpr double kNearZeroPeriods = 16.0;

enum class Kind { gk_x, gk_subst, filon };

struct Piece {
  Kind kind;
  double lo;  // in x for gk_x, u = x^q for gk_subst, u = x^p for filon
  double hi;
  Complex value;
  double err = 0.0;
  bool at_floor = false;
};

// Legendre coefficient weights: L[k][i] = (2k+1)/2 w_i P_k(t_i) on the 20 Gauss nodes.
struct FilonBasis {
  std::array<double, kFilonOrder> t{};
  std::array<std::array<double, kFilonOrder>, kFilonOrder> L{};

  FilonBasis() {
    const auto& a = GL20::abscissa();
    const auto& w = GL20::weights();
    std::array<double, kFilonOrder> wt{};
    for (std::size_t i = 0; i < a.size(); ++i) {
      t[i] = -a[i];
      wt[i] = w[i];
      t[kFilonOrder - 1 - i] = a[i];
      wt[kFilonOrder - 1 - i] = w[i];
    }
    for (int i = 0; i < kFilonOrder; ++i) {
      double pm1 = 1.0;
      double pk = t[i];
      L[0][i] = 0.5 * wt[i];
      L[1][i] = 1.5 * wt[i] * pk;
      for (int k = 1; k + 1 < kFilonOrder; ++k) {
        const double next = ((2.0 * k + 1.0) * t[i] * pk - k * pm1) / (k + 1.0);
        pm1 = pk;
        pk = next;
        L[k + 1][i] = (2.0 * k + 3.0) / 2.0 * wt[i] * pk;
      }
    }
  }
};

const FilonBasis& filon_basis() {
  static const FilonBasis basis;
  return basis;
}

class Engine {
 public:
  Engine(const PhaseIntegrand& in, const EngineOptions& opts) : in_(in), opts_(opts) {
    sigma_ = to_double(in.sign);
  }

  EngineResult run(std::span<const double> bp) {
    for (std::size_t s = 0; s + 1 < bp.size(); ++s) {
      if (bp[s + 1] > bp[s]) seed_segment(bp[s], bp[s + 1]);
    }
    refine();
    return collect();
  }

 private:
  double phase(double x) const { return in_.lambda * std::pow(x, in_.p); }

  void count(long n) {
    nodes_ += n;
    if (nodes_ > opts_.max_nodes) {
      throw BudgetError("quadrature: node budget of " + std::to_string(opts_.max_nodes) +
                        " exceeded");
    }
  }

  void seed_segment(double a, double b) {
    const double ua = std::pow(a, in_.p);
    const double ub = std::pow(b, in_.p);
    const double periods = in_.lambda * (ub - ua) / kTwoPi;
    if (periods <= opts_.filon_period_threshold) {
      seed_gk(a, b, periods);
      return;
    }
    double start = a;
    if (in_.lambda * ua / kTwoPi < kNearZeroPeriods) {
      start = std::pow(ua + kTwoPi * kNearZeroPeriods / in_.lambda, 1.0 / in_.p);
      seed_gk(a, start, kNearZeroPeriods);
    }
    double u = std::pow(start, in_.p);
    while (u < ub) {
      const double next = (2.0 * u >= ub * (1.0 - 1e-12)) ? ub : 2.0 * u;
      add(eval_filon(u, next));
      u = next;
    }
  }

  // One piece per phase period, boundaries at x_k^p = a^p + 2 pi k / lambda.
  void seed_gk(double a, double b, double periods) {
    const double ua = std::pow(a, in_.p);
    const long n = std::max(1L, static_cast<long>(std::ceil(periods - 1e-9)));
    double lo = a;
    for (long k = 1; k <= n; ++k) {
      const double hi = (k == n) ? b : std::pow(ua + kTwoPi * static_cast<double>(k) / in_.lambda,
                                                1.0 / in_.p);
      if (hi <= lo) continue;
      if (lo == 0.0 && in_.q_power < 1.0) {
        add(eval_subst(0.0, std::pow(hi, in_.q_power)));
      } else {
        add(eval_gk_x(lo, hi));
      }
      lo = hi;
    }
  }

  void add(Piece p) {
    total_err_ += p.err;
    if (p.at_floor) floor_err_ += p.err;
    running_ += p.value;
    pieces_.push_back(p);
    if (!p.at_floor) heap_.push({p.err, pieces_.size() - 1});
  }

  template <class Fn>
  Piece gk(Kind kind, double lo, double hi, double phase_max, Fn&& g) {
    const auto& xk = GK::abscissa();
    const auto& wk = GK::weights();
    const auto& wg = GL10::weights();
    const double c = 0.5 * (lo + hi);
    const double hl = 0.5 * (hi - lo);
    std::array<Complex, 21> fv;
    fv[0] = g(c);
    for (std::size_t i = 1; i < xk.size(); ++i) {
      fv[2 * i - 1] = g(c - hl * xk[i]);
      fv[2 * i] = g(c + hl * xk[i]);
    }
    count(21);
    Complex resk = wk[0] * fv[0];
    Complex resg(0.0, 0.0);
    double resabs = wk[0] * std::abs(fv[0]);
    for (std::size_t i = 1; i < xk.size(); ++i) {
      const Complex pair = fv[2 * i - 1] + fv[2 * i];
      resk += wk[i] * pair;
      resabs += wk[i] * (std::abs(fv[2 * i - 1]) + std::abs(fv[2 * i]));
      if (i % 2 == 1) resg += wg[i / 2] * pair;
    }
    const Complex reskh = 0.5 * resk;
    double resasc = wk[0] * std::abs(fv[0] - reskh);
    for (std::size_t i = 1; i < xk.size(); ++i) {
      resasc += wk[i] * (std::abs(fv[2 * i - 1] - reskh) + std::abs(fv[2 * i] - reskh));
    }
    Piece p{kind, lo, hi, resk * hl};
    double err = std::abs(resk - resg) * hl;
    resasc *= hl;
    resabs *= hl;
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double floor = kEps * (50.0 + phase_max) * resabs;
    p.at_floor = err <= floor || hl <= 4.0 * kEps * std::max(std::abs(lo), std::abs(hi)) ||
                 hi <= 1e-250;
    p.err = std::max(err, floor);
    return p;
  }

  Complex weighted(double x, double theta) const {
    const double w = (in_.q_power == 1.0) ? 1.0 : std::pow(x, in_.q_power - 1.0);
    return std::polar(w * in_.f(x), sigma_ * theta);
  }

  Piece eval_gk_x(double lo, double hi) {
    return gk(Kind::gk_x, lo, hi, phase(hi), [&](double x) {
      if (x <= 0.0 && in_.q_power < 1.0) return Complex(0.0, 0.0);
      return weighted(x, phase(x));
    });
  }

  // x = u^{1/q}: dx x^{q-1} = du / q.
  Piece eval_subst(double ulo, double uhi) {
    const double inv_q = 1.0 / in_.q_power;
    const double ratio = in_.p / in_.q_power;
    return gk(Kind::gk_subst, ulo, uhi, in_.lambda * std::pow(uhi, ratio), [&](double u) {
      if (u <= 0.0) return Complex(in_.f(0.0) * inv_q, 0.0);
      const double x = std::pow(u, inv_q);
      return std::polar(inv_q * in_.f(x), sigma_ * in_.lambda * std::pow(u, ratio));
    });
  }

  // Legendre expansion of g(u) = u^{q/p - 1} f(u^{1/p}) / p integrated exactly against e^{i sigma lambda u}.
  Piece eval_filon(double ulo, double uhi) {
    const auto& basis = filon_basis();
    const double c = 0.5 * (ulo + uhi);
    const double hl = 0.5 * (uhi - ulo);
    const double inv_p = 1.0 / in_.p;
    const double gpow = in_.q_power / in_.p - 1.0;
    std::array<double, kFilonOrder> g{};
    double mag = 0.0;
    for (int i = 0; i < kFilonOrder; ++i) {
      const double u = c + hl * basis.t[i];
      g[i] = inv_p * std::pow(u, gpow) * in_.f(std::pow(u, inv_p));
      mag += std::abs(g[i]) * basis.L[0][i] * 2.0;
    }
    count(kFilonOrder);
    std::array<double, kFilonOrder> a{};
    for (int k = 0; k < kFilonOrder; ++k) {
      double s = 0.0;
      for (int i = 0; i < kFilonOrder; ++i) s += basis.L[k][i] * g[i];
      a[k] = s;
    }
    const double omega = sigma_ * in_.lambda * hl;
    std::array<Complex, kFilonOrder> mom{};
    legendre_fourier_moments(omega, mom);
    Complex sum(0.0, 0.0);
    for (int k = 0; k < kFilonOrder; ++k) sum += a[k] * mom[k];
    Piece p{Kind::filon, ulo, uhi, hl * std::polar(1.0, sigma_ * in_.lambda * c) * sum};
    const double tail = std::abs(a[kFilonOrder - 1]) + std::abs(a[kFilonOrder - 2]) +
                        std::abs(a[kFilonOrder - 3]);
    const double err = hl * 2.0 * tail * std::min(1.0, 4.0 / std::abs(omega));
    // The centre phase lambda*c is rounded once for the whole panel, so its error
    // scales with the panel value; the rest is ordinary summation roundoff.
    double coeff_abs = 0.0;
    for (int k = 0; k < kFilonOrder; ++k) coeff_abs += std::abs(a[k]);
    const double floor = kEps * ((50.0 + in_.lambda * uhi) * std::abs(p.value) +
                                 50.0 * hl * std::min(mag, 2.0 * coeff_abs));
    p.at_floor = err <= floor || hl <= 4.0 * kEps * uhi;
    p.err = std::max(err, floor);
    return p;
  }

  Piece split_eval(Kind kind, double lo, double hi) {
    switch (kind) {
      case Kind::gk_x: return eval_gk_x(lo, hi);
      case Kind::gk_subst: return eval_subst(lo, hi);
      case Kind::filon: return eval_filon(lo, hi);
    }
    return eval_gk_x(lo, hi);
  }

  double tolerance() const { return std::max(opts_.abs_tol, opts_.rel_tol * std::abs(running_)); }

  void refine() {
    long since_resum = 0;
    // Error held by pieces at their rounding floor cannot be reduced any further.
    while (!heap_.empty()) {
      if (total_err_ - floor_err_ <= tolerance()) {
        resum();
        if (total_err_ - floor_err_ <= tolerance()) break;
      }
      const auto [err, idx] = heap_.top();
      heap_.pop();
      const Piece parent = pieces_[idx];
      const double mid = 0.5 * (parent.lo + parent.hi);
      Piece left = split_eval(parent.kind, parent.lo, mid);
      Piece right = split_eval(parent.kind, mid, parent.hi);
      total_err_ += left.err + right.err - parent.err;
      if (left.at_floor) floor_err_ += left.err;
      if (right.at_floor) floor_err_ += right.err;
      running_ += left.value + right.value - parent.value;
      pieces_[idx] = left;
      if (!left.at_floor) heap_.push({left.err, idx});
      pieces_.push_back(right);
      if (!right.at_floor) heap_.push({right.err, pieces_.size() - 1});
      if (++since_resum == 256) {
        resum();
        since_resum = 0;
      }
    }
    resum();
  }

  void resum() {
    total_err_ = 0.0;
    floor_err_ = 0.0;
    running_ = Complex(0.0, 0.0);
    for (const auto& p : pieces_) {
      total_err_ += p.err;
      if (p.at_floor) floor_err_ += p.err;
      running_ += p.value;
    }
  }

  double start_x(const Piece& p) const {
    switch (p.kind) {
      case Kind::gk_x: return p.lo;
      case Kind::gk_subst: return std::pow(p.lo, 1.0 / in_.q_power);
      case Kind::filon: return std::pow(p.lo, 1.0 / in_.p);
    }
    return p.lo;
  }

  EngineResult collect() {
    std::vector<std::pair<double, std::size_t>> order;
    order.reserve(pieces_.size());
    for (std::size_t i = 0; i < pieces_.size(); ++i) order.emplace_back(start_x(pieces_[i]), i);
    std::sort(order.begin(), order.end());
    EngineResult r;
    for (const auto& [x, i] : order) {
      r.value += pieces_[i].value;
      r.error += pieces_[i].err;
    }
    r.nodes = nodes_;
    r.pieces = static_cast<int>(pieces_.size());
    return r;
  }

  const PhaseIntegrand& in_;
  const EngineOptions& opts_;
  double sigma_ = 1.0;
  std::vector<Piece> pieces_;
  std::priority_queue<std::pair<double, std::size_t>> heap_;
  double total_err_ = 0.0;
  double floor_err_ = 0.0;
  Complex running_{0.0, 0.0};
  long nodes_ = 0;
};

}  // namespace

void legendre_fourier_moments(double omega, std::span<Complex> out) {
  const std::size_t n = out.size();
  if (n == 0) return;
  const double w = std::abs(omega);
  std::vector<double> j(n, 0.0);
  if (w == 0.0) {
    j[0] = 1.0;
  } else if (w > static_cast<double>(n)) {
    // Upward recurrence is stable once the argument exceeds the order.
    j[0] = std::sin(w) / w;
    if (n > 1) j[1] = std::sin(w) / (w * w) - std::cos(w) / w;
    for (std::size_t k = 1; k + 1 < n; ++k) {
      j[k + 1] = (2.0 * static_cast<double>(k) + 1.0) / w * j[k] - j[k - 1];
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) j[k] = boost::math::sph_bessel(static_cast<unsigned>(k), w);
  }
  // i^k, and j_k(-w) = (-1)^k j_k(w).
  static constexpr std::array<Complex, 4> ipow = {Complex(1, 0), Complex(0, 1), Complex(-1, 0),
                                                  Complex(0, -1)};
  for (std::size_t k = 0; k < n; ++k) {
    const double s = (omega < 0.0 && k % 2 == 1) ? -1.0 : 1.0;
    out[k] = 2.0 * s * j[k] * ipow[k % 4];
  }
}

RuleResult gauss_kronrod_21(const std::function<double(double)>& f, double a, double b) {
  const auto& xk = GK::abscissa();
  const auto& wk = GK::weights();
  const auto& wg = GL10::weights();
  const double c = 0.5 * (a + b);
  const double hl = 0.5 * (b - a);
  RuleResult r;
  r.kronrod = wk[0] * f(c);
  for (std::size_t i = 1; i < xk.size(); ++i) {
    const double pair = f(c - hl * xk[i]) + f(c + hl * xk[i]);
    r.kronrod += wk[i] * pair;
    if (i % 2 == 1) r.gauss += wg[i / 2] * pair;
  }
  r.kronrod *= hl;
  r.gauss *= hl;
  return r;
}

EngineResult integrate_phase(const PhaseIntegrand& integrand, std::span<const double> bp,
                             const EngineOptions& opts) {
  if (!integrand.f) throw DomainError("integrate_phase: missing integrand");
  if (!(integrand.p > 0.0) || !(integrand.lambda > 0.0) || !(integrand.q_power > 0.0)) {
    throw DomainError("integrate_phase: p, lambda and q_power must be > 0");
  }
  if (bp.size() < 2 || bp.front() < 0.0 || !std::is_sorted(bp.begin(), bp.end())) {
    throw DomainError("integrate_phase: breakpoints must be sorted and start at x >= 0");
  }
  if (!std::isfinite(bp.back())) throw DomainError("integrate_phase: upper limit must be finite");
  Engine engine(integrand, opts);
  return engine.run(bp);
}

}  // namespace oscphase
