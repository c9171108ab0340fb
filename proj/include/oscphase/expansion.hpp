#pragma once

#include <functional>
#include <span>
#include <vector>

#include "oscphase/amplitude.hpp"
#include "oscphase/oscillatory.hpp"
#include "oscphase/types.hpp"

namespace oscphase {

enum class ExpansionVariant { halfline, fullline, stationary_quadratic };

const char* variant_name(ExpansionVariant v);

struct ExpansionTerm {
  int k = 0;
  Complex coeff;
  double exponent = 0.0;     // power of lambda
  int derivative_order = 0;  // which a^{(j)}(0) the coefficient uses
};

struct ExpansionResult {
  ExpansionVariant variant = ExpansionVariant::halfline;
  double p = 1.0;  // p for the half line, m otherwise
  Sign sign = Sign::plus;
  int N = 0;
  std::vector<ExpansionTerm> terms;
  double declared_remainder_exponent = 0.0;
};

// Terms k = 0 .. N - [p] - 1 of I_{p,k+1} a^{(k)}(0)/k! lambda^{-(k+1)/p};
// remainder exponent -(N - p + 1)/p. DomainError if N < p + 1.
ExpansionResult expand_halfline(double p, Sign sign, const Amplitude& a, int N);

// Terms k = 0 .. N - m - 1 of c~_k a^{(k)}(0)/k! lambda^{-(k+1)/m};
// remainder exponent -(N - m + 1)/m. DomainError unless N > m.
ExpansionResult expand_fullline(int m, Sign sign, const Amplitude& a, int N);

// sqrt(pi) e^{sign i pi (k + 1/2)/2} a^{(2k)}(0) / (4^k k!) lambda^{-k-1/2}, k < N.
ExpansionResult stationary_phase_quadratic(Sign sign, const Amplitude& a, int N);

// sum_k coeff_k lambda^{exponent_k}; lambda >= 1.
Complex evaluate_expansion(const ExpansionResult& res, double lambda);

struct SlopeFit {
  std::vector<double> lambdas;
  std::vector<double> residual_norms;
  std::vector<bool> used;
  double fitted_slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  int points_used = 0;
};

// Residuals below this are treated as rounding noise and left out of the fit.
inline constexpr double kNoiseFloor = 1e-13;

// Least squares log|residual| against log lambda. NoiseFloorError with fewer
// than four residuals at or above the floor.
SlopeFit fit_loglog_slope(std::span<const double> lambdas, std::span<const double> residuals,
                          double floor = kNoiseFloor);

// |direct(lambda) - partial sum| over the grid, then fit_loglog_slope.
SlopeFit remainder_slope(const ExpansionResult& res, std::span<const double> lambdas,
                         const std::function<Complex(double)>& direct);

// Direct values from os_integral_halfline (q = 1) or os_integral_fullline.
SlopeFit remainder_slope(ExpansionVariant variant, double p_or_m, Sign sign, const Amplitude& a,
                         int N, std::span<const double> lambdas, const QuadratureConfig& cfg = {});

}  // namespace oscphase
