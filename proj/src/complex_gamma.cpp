#include "oscphase/complex_gamma.hpp"

#include <array>
#include <cmath>
#include <string>

#include "oscphase/errors.hpp"

namespace oscphase {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

const double kHalfLog2Pi = 0.5 * std::log(2.0 * kPi);

// Gamma on Re z >= 1/2, evaluated as a single exponential of log-terms.
Complex lanczos(Complex z) {
  const Complex zm1 = z - 1.0;
  Complex series = kLanczosCoeffs[0];
  for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
    series += kLanczosCoeffs[i] / (zm1 + static_cast<double>(i));
  }
  const Complex t = zm1 + kLanczosG + 0.5;
  return std::exp(kHalfLog2Pi + (zm1 + 0.5) * std::log(t) - t + std::log(series));
}

}  // namespace

int nonpositive_integer_index(Complex z, double tol) {
  const double n = std::round(z.real());
  if (n > 0.0) return -1;
  if (std::abs(z - Complex(n, 0.0)) > tol) return -1;
  return static_cast<int>(-n);
}

Complex sin_pi(Complex z) {
  const double n = std::round(z.real());
  const double a = kPi * (z.real() - n);
  const double b = kPi * z.imag();
  const double parity = (static_cast<long long>(n) % 2 == 0) ? 1.0 : -1.0;
  return parity * Complex(std::sin(a) * std::cosh(b), std::cos(a) * std::sinh(b));
}

Complex gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("gamma: non-finite argument");
  }
  if (const int j = nonpositive_integer_index(z); j >= 0) {
    throw PoleError("gamma: pole at z = -" + std::to_string(j));
  }
  Complex result;
  if (z.real() < 0.5) {
    result = kPi / (sin_pi(z) * lanczos(1.0 - z));
  } else {
    result = lanczos(z);
  }
  if (!std::isfinite(result.real()) || !std::isfinite(result.imag())) {
    throw OverflowError("gamma: result overflows double precision");
  }
  return result;
}

double gamma_residue(int j) {
  if (j < 0) throw DomainError("gamma_residue: j must be non-negative");
  double value = 1.0;
  for (int k = 1; k <= j; ++k) value /= static_cast<double>(k);
  return (j % 2 == 0) ? value : -value;
}

}  // namespace oscphase
