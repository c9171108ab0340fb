#pragma once

#include <variant>

#include "oscphase/types.hpp"

namespace oscphase {

// Regularized value of Os-int_0^inf e^{sign i x^p} x^{q-1} dx together with
// the arguments it was computed from.
struct FresnelValue {
  Complex value;
  Complex p;
  Complex q;
  Sign sign = Sign::plus;

  // Re-evaluates the closed form from the stored fields.
  Complex recompute() const;
};

// Simple pole of the continued integral in the q-variable, p held fixed.
struct PoleReport {
  Complex location;  // q = -p j
  int order = 1;
  Complex residue;
  int j = 0;
};

using ContinuedFresnel = std::variant<FresnelValue, PoleReport>;

// p^{-1} e^{sign i pi q / (2p)} Gamma(q/p); DomainError unless p, q > 0.
FresnelValue generalized_fresnel(double p, double q, Sign sign);

// Same formula continued to complex p != 0 and q. A PoleReport is returned when
// q/p sits on a non-positive integer (q = 0 included).
ContinuedFresnel generalized_fresnel_continued(Complex p, Complex q, Sign sign);

// m^{-1} e^{sign (-1)^m i pi k / (2m)} Gamma(k/m).
Complex signed_fresnel_m(int m, int k, Sign sign);

// Full-line expansion coefficient: I_{m,k+1}^{sign} + (-1)^k I_{m,k+1}^{sign (-1)^m}.
Complex c_tilde(int m, int k, Sign sign);

// e^{-sign i pi/2 (q1/p1 + q2/p2 - q3/p3)} (p1 p2 / p3) I1 I2 / I3.
// PoleError when any of the three factors sits on a pole.
Complex generalized_beta(double p1, double p2, double p3, Complex q1, Complex q2, Complex q3,
                         Sign sign);

}  // namespace oscphase
