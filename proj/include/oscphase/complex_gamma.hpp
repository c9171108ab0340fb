#pragma once

#include "oscphase/types.hpp"

namespace oscphase {

// Absolute distance to a non-positive integer below which gamma() reports a pole.
inline constexpr double kGammaPoleTolerance = 1e-12;

// Gamma(z) for complex z. Lanczos (g = 7, 9 terms) on Re z >= 1/2 and the
// reflection formula below that.
// Throws PoleError within kGammaPoleTolerance of {0, -1, -2, ...} and
// OverflowError when the result is not finite.
Complex gamma(Complex z);

// Residue of Gamma at z = -j, i.e. (-1)^j / j!.
double gamma_residue(int j);

// sin(pi z) with the integer part of Re z removed before scaling by pi.
Complex sin_pi(Complex z);

// Index j >= 0 when z is within tol of -j, otherwise -1.
int nonpositive_integer_index(Complex z, double tol = kGammaPoleTolerance);

}  // namespace oscphase
