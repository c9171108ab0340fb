#pragma once

#include <optional>
#include <span>
#include <vector>

#include "oscphase/amplitude.hpp"
#include "oscphase/types.hpp"

namespace oscphase {

struct QuadratureConfig {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double cutoff_radius = 2.0;
  std::optional<int> ibp_depth_override;
  double tail_truncation_tol = 1e-14;
  long max_nodes = 2'000'000;
  double filon_period_threshold = 1e4;
  // Largest lambda X^p accepted when picking the tail depth; beyond it the
  // rounding of the phase itself starts to show.
  double phase_cap = 1e12;

  void validate() const;
};

struct QuadratureReport {
  Complex value;
  double est_error = 0.0;
  long nodes_used = 0;
  int ibp_depth_used = 0;
  double tail_cut = 0.0;     // truncation abscissa X
  double truncation_bound = 0.0;
};

// Os-int_0^inf e^{sign i lambda x^p} x^{q-1} a(x) dx: the compact part
// x^{q-1} a phi on [0, r] directly, the tail through L*^l on [1, X] with X from
// the certified envelope bound.
QuadratureReport os_integral_halfline(double p, double q, Sign sign, double lambda,
                                      const Amplitude& a, const QuadratureConfig& cfg = {});

// Os-int_{-inf}^{inf} e^{sign i lambda x^m} a(x) dx as two half lines, the
// reflected one with sign (-1)^m and amplitude a(-x).
QuadratureReport os_integral_fullline(int m, Sign sign, double lambda, const Amplitude& a,
                                      const QuadratureConfig& cfg = {});

// Half-line integral without a cutoff: L*^l applied on all of (0, inf), which
// needs l <= l0 = [q/p). Each resulting term is again a half-line integral.
QuadratureReport os_integral_reduced(double p, double q, Sign sign, double lambda,
                                     const Amplitude& a, int l, const QuadratureConfig& cfg = {});

// Tail depth and truncation abscissa os_integral_halfline would use.
struct TailPlan {
  int depth = 0;
  double cut = 0.0;
  double bound = 0.0;
};
TailPlan plan_tail(double p, double q, double lambda, const Amplitude& a,
                   const QuadratureConfig& cfg);

struct EpsilonReport {
  Complex value;
  double spread = 0.0;
  std::vector<double> eps;
  std::vector<Complex> values;
  long nodes_used = 0;
};

// Default eps ladder 1e-1 ... 1e-3 in half decades.
std::vector<double> default_eps_ladder();

// int_0^inf e^{sign i lambda x^p} x^{q-1} a(x) chi(eps x) dx per eps, then
// polynomial extrapolation in eps^2 to eps = 0. ConvergenceError when the two
// highest extrapolants differ by more than 1e2 rel_tol.
EpsilonReport epsilon_regularized_detailed(double p, double q, Sign sign, double lambda,
                                           const Amplitude& a, const Regularizer& chi,
                                           std::span<const double> eps_ladder,
                                           const QuadratureConfig& cfg = {});

Complex epsilon_regularized(double p, double q, Sign sign, double lambda, const Amplitude& a,
                            const Regularizer& chi, std::span<const double> eps_ladder,
                            const QuadratureConfig& cfg = {});

// e^{sign i pi q/(2p)} int_0^inf e^{-r^p} r^{q-1} dr, the integral done
// numerically after t = r^p.
Complex rotated_contour_reference(double p, double q, Sign sign);

}  // namespace oscphase
