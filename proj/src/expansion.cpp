#include "oscphase/expansion.hpp"

#include <cmath>
#include <string>

#include "oscphase/errors.hpp"
#include "oscphase/fresnel.hpp"
#include "oscphase/parallel.hpp"

namespace oscphase {

namespace {

std::vector<double> taylor_at_zero(const Amplitude& a, int count) {
  std::vector<double> d(static_cast<std::size_t>(count));
  if (count > 0) a.derivatives(0.0, d);
  return d;
}

void require_order(const Amplitude& a, int order) {
  if (a.max_order() < order) {
    throw OrderError("amplitude '" + a.name() + "' supplies derivatives up to " +
                     std::to_string(a.max_order()) + ", need " + std::to_string(order));
  }
}

void check_grid(std::span<const double> lambdas) {
  if (lambdas.size() < 4) throw DomainError("lambda grid needs at least four points");
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    if (!(lambdas[i] >= 1.0) || !std::isfinite(lambdas[i])) {
      throw DomainError("lambda grid values must be >= 1");
    }
    if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
      throw DomainError("lambda grid must be strictly increasing");
    }
  }
}

}  // namespace

const char* variant_name(ExpansionVariant v) {
  switch (v) {
    case ExpansionVariant::halfline: return "halfline";
    case ExpansionVariant::fullline: return "fullline";
    case ExpansionVariant::stationary_quadratic: return "stationary_quadratic";
  }
  return "unknown";
}

ExpansionResult expand_halfline(double p, Sign sign, const Amplitude& a, int N) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("expand_halfline: p must be > 0");
  if (!(N >= p + 1.0)) throw DomainError("expand_halfline: need N >= p + 1");
  require_order(a, N);
  const int count = N - static_cast<int>(std::floor(p));
  const auto d = taylor_at_zero(a, count);
  ExpansionResult res{ExpansionVariant::halfline, p, sign, N, {}, -(N - p + 1.0) / p};
  double fact = 1.0;
  for (int k = 0; k < count; ++k) {
    if (k > 1) fact *= k;
    const Complex c = generalized_fresnel(p, k + 1.0, sign).value * (d[static_cast<std::size_t>(k)] / fact);
    res.terms.push_back({k, c, -(k + 1.0) / p, k});
  }
  return res;
}

ExpansionResult expand_fullline(int m, Sign sign, const Amplitude& a, int N) {
  if (m < 1) throw DomainError("expand_fullline: m must be >= 1");
  if (N <= m) throw DomainError("expand_fullline: need N > m");
  require_order(a, N);
  const int count = N - m;
  const auto d = taylor_at_zero(a, count);
  ExpansionResult res{ExpansionVariant::fullline, static_cast<double>(m), sign, N, {},
                      -(N - m + 1.0) / m};
  double fact = 1.0;
  for (int k = 0; k < count; ++k) {
    if (k > 1) fact *= k;
    const Complex c = c_tilde(m, k, sign) * (d[static_cast<std::size_t>(k)] / fact);
    res.terms.push_back({k, c, -(k + 1.0) / m, k});
  }
  return res;
}

ExpansionResult stationary_phase_quadratic(Sign sign, const Amplitude& a, int N) {
  if (N < 1) throw DomainError("stationary_phase_quadratic: N must be >= 1");
  require_order(a, 2 * N);
  const auto d = taylor_at_zero(a, 2 * N - 1);
  ExpansionResult res{ExpansionVariant::stationary_quadratic, 2.0, sign, N, {},
                      -static_cast<double>(N)};
  const double root_pi = std::sqrt(kPi);
  double scale = 1.0;  // 4^k k!
  for (int k = 0; k < N; ++k) {
    if (k > 0) scale *= 4.0 * k;
    const Complex phase = std::polar(1.0, to_double(sign) * kPi * (k + 0.5) / 2.0);
    const Complex c = root_pi * phase * (d[static_cast<std::size_t>(2 * k)] / scale);
    res.terms.push_back({k, c, -(k + 0.5), 2 * k});
  }
  return res;
}

Complex evaluate_expansion(const ExpansionResult& res, double lambda) {
  if (!(lambda >= 1.0) || !std::isfinite(lambda)) {
    throw DomainError("evaluate_expansion: lambda must be >= 1");
  }
  Complex s(0.0, 0.0);
  for (const auto& t : res.terms) s += t.coeff * std::pow(lambda, t.exponent);
  return s;
}

SlopeFit fit_loglog_slope(std::span<const double> lambdas, std::span<const double> residuals,
                          double floor) {
  check_grid(lambdas);
  if (residuals.size() != lambdas.size()) throw DomainError("residuals and lambdas differ in size");
  SlopeFit fit;
  fit.lambdas.assign(lambdas.begin(), lambdas.end());
  fit.residual_norms.assign(residuals.begin(), residuals.end());
  std::vector<double> xs;
  std::vector<double> ys;
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const bool ok = residuals[i] >= floor && std::isfinite(residuals[i]);
    fit.used.push_back(ok);
    if (!ok) continue;
    xs.push_back(std::log(lambdas[i]));
    ys.push_back(std::log(residuals[i]));
  }
  fit.points_used = static_cast<int>(xs.size());
  if (xs.size() < 4) {
    throw NoiseFloorError("only " + std::to_string(xs.size()) +
                          " remainder samples above the noise floor; need 4");
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  double syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.fitted_slope = sxy / sxx;
  fit.intercept = my - fit.fitted_slope * mx;
  double ss_res = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double e = ys[i] - (fit.intercept + fit.fitted_slope * xs[i]);
    ss_res += e * e;
  }
  fit.r_squared = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

SlopeFit remainder_slope(const ExpansionResult& res, std::span<const double> lambdas,
                         const std::function<Complex(double)>& direct) {
  check_grid(lambdas);
  std::vector<double> resid(lambdas.size());
  parallel_for(lambdas.size(), [&](std::size_t i) {
    resid[i] = std::abs(direct(lambdas[i]) - evaluate_expansion(res, lambdas[i]));
  });
  return fit_loglog_slope(lambdas, resid);
}

SlopeFit remainder_slope(ExpansionVariant variant, double p_or_m, Sign sign, const Amplitude& a,
                         int N, std::span<const double> lambdas, const QuadratureConfig& cfg) {
  ExpansionResult res;
  std::function<Complex(double)> direct;
  switch (variant) {
    case ExpansionVariant::halfline:
      res = expand_halfline(p_or_m, sign, a, N);
      direct = [&](double l) { return os_integral_halfline(p_or_m, 1.0, sign, l, a, cfg).value; };
      break;
    case ExpansionVariant::fullline:
    case ExpansionVariant::stationary_quadratic: {
      const int m = static_cast<int>(std::lround(p_or_m));
      if (std::abs(p_or_m - m) > 0.0 || m < 1) throw DomainError("full line needs an integer m >= 1");
      res = variant == ExpansionVariant::fullline ? expand_fullline(m, sign, a, N)
                                                  : stationary_phase_quadratic(sign, a, N);
      if (variant == ExpansionVariant::stationary_quadratic && m != 2) {
        throw DomainError("stationary_quadratic is the m = 2 case");
      }
      direct = [&, m](double l) { return os_integral_fullline(m, sign, l, a, cfg).value; };
      break;
    }
  }
  return remainder_slope(res, lambdas, direct);
}

}  // namespace oscphase
