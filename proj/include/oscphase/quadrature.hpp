#pragma once

#include <functional>
#include <span>

#include "oscphase/types.hpp"

namespace oscphase {

// int e^{sign i lambda x^p} x^{q_power - 1} f(x) dx with f real on x >= 0.
struct PhaseIntegrand {
  double p = 1.0;
  Sign sign = Sign::plus;
  double lambda = 1.0;
  double q_power = 1.0;
  std::function<double(double)> f;
};

struct EngineOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  long max_nodes = 2'000'000;
  // Segments spanning more phase periods than this go to Filon panels in u = x^p.
  double filon_period_threshold = 1e4;
};

struct EngineResult {
  Complex value;
  double error = 0.0;
  long nodes = 0;
  int pieces = 0;
};

// Globally adaptive integration over [bp.front(), bp.back()] with bp sorted and
// bp.front() >= 0. Interior breakpoints are kept as piece boundaries.
// Near x = 0 with q_power < 1 the substitution x = u^{1/q_power} removes the
// endpoint singularity. Throws BudgetError beyond max_nodes.
EngineResult integrate_phase(const PhaseIntegrand& integrand, std::span<const double> bp,
                             const EngineOptions& opts);

// Plain 21-point Kronrod and embedded 10-point Gauss rule of real f on [a, b].
struct RuleResult {
  double kronrod = 0.0;
  double gauss = 0.0;
};
RuleResult gauss_kronrod_21(const std::function<double(double)>& f, double a, double b);

// int_{-1}^{1} e^{i omega t} P_k(t) dt = 2 i^k j_k(omega), for k < out.size().
void legendre_fourier_moments(double omega, std::span<Complex> out);

}  // namespace oscphase
