#pragma once

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "oscphase/jet.hpp"

namespace oscphase {

// Smooth a with |a^{(k)}(x)| <= S_k <x>^{tau + delta k} for k <= max_order.
class Amplitude {
 public:
  // Writes a^{(k)}(x) into out[k] for k < out.size().
  using DerivFn = std::function<void(double, std::span<double>)>;
  // S_k, a bound for sup_x <x>^{-tau-delta k} |a^{(k)}(x)|.
  using BoundFn = std::function<double(int)>;

  Amplitude(std::string name, DerivFn derivs, BoundFn order_bound, double tau, double delta,
            int max_order);

  const std::string& name() const { return name_; }
  double tau() const { return tau_; }
  double delta() const { return delta_; }
  int max_order() const { return max_order_; }

  double operator()(double x) const { return deriv(0, x); }
  double deriv(int k, double x) const;
  // out.size() - 1 must not exceed max_order.
  void derivatives(double x, std::span<double> out) const;

  double order_bound(int k) const;
  // max_{k <= l} S_k, an upper bound for the class seminorm of order l.
  double seminorm_bound(int l) const;

  // x -> a(-x); same class.
  Amplitude reflected() const;
  // a^{(j)}, certified in the class (tau + delta j, delta).
  Amplitude derivative(int j) const;

 private:
  void check_order(int k) const;

  std::string name_;
  std::shared_ptr<const DerivFn> derivs_;
  std::shared_ptr<const BoundFn> bound_;
  double tau_;
  double delta_;
  int max_order_;
};

// Derivative order available from the built-in catalogue.
inline constexpr int kBuiltinMaxOrder = 64;

// gaussian, constant_one, rational_decay:s, polynomial_gaussian:c0,c1,...
// The parenthesised spellings rational_decay(s) and polynomial_gaussian(c0,...)
// are accepted too. Throws UnknownAmplitude.
Amplitude builtin(std::string_view name);

Amplitude gaussian_amplitude();
Amplitude constant_one_amplitude();
Amplitude rational_decay_amplitude(double s);
Amplitude polynomial_gaussian_amplitude(std::vector<double> coeffs);

// Smooth plateau: phi = 1 on |x| <= 1, phi = 0 on |x| >= r, e^{-1/t} transition.
class Cutoff {
 public:
  explicit Cutoff(double r);

  double r() const { return r_; }
  double phi(double x) const;
  double psi(double x) const { return 1.0 - phi(x); }
  double phi_deriv(int k, double x) const;
  void phi_derivatives(double x, std::span<double> out) const;
  void psi_derivatives(double x, std::span<double> out) const;

  // Taylor jets of phi and psi at x with n coefficients.
  Jet phi_jet(double x, std::size_t n) const;
  Jet psi_jet(double x, std::size_t n) const;

 private:
  double r_;
};

using CutoffSpec = Cutoff;

Cutoff default_cutoff(double r);

// Decay of chi at infinity, used for certified truncation of eps-regularized integrals.
enum class DecayClass { gaussian, algebraic };

// chi in the Schwartz class with chi(0) = 1.
class Regularizer {
 public:
  using JetFn = std::function<Jet(const Jet&)>;

  // For DecayClass::algebraic, |chi(y)| <= decay_constant |y|^{-decay_power}.
  Regularizer(std::string name, JetFn chi, DecayClass decay, double decay_power = 0.0,
              double decay_constant = 1.0);

  const std::string& name() const { return name_; }
  DecayClass decay_class() const { return decay_; }
  double decay_power() const { return decay_power_; }
  double decay_constant() const { return decay_constant_; }

  double chi(double y) const;
  double chi_deriv(int k, double y) const;
  // Jet of x -> chi(eps x) at x.
  Jet scaled_jet(double x, double eps, std::size_t n) const;

 private:
  std::string name_;
  std::shared_ptr<const JetFn> chi_;
  DecayClass decay_;
  double decay_power_;
  double decay_constant_;
};

using RegularizerSpec = Regularizer;

// chi(y) = e^{-y^2}.
Regularizer default_regularizer();
// chi(y) = (1 + y^2)^{-2}.
Regularizer algebraic_regularizer();

}  // namespace oscphase
