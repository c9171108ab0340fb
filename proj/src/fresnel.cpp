#include "oscphase/fresnel.hpp"

#include <cmath>
#include <string>

#include "oscphase/complex_gamma.hpp"
#include "oscphase/errors.hpp"

namespace oscphase {

namespace {

constexpr Complex kI{0.0, 1.0};

Complex closed_form(Complex p, Complex q, Sign sign) {
  const Complex ratio = q / p;
  return std::exp(to_double(sign) * kI * (kPi / 2.0) * ratio) * gamma(ratio) / p;
}

// Fresnel factor; a pole becomes PoleError carrying the label.
Complex factor_or_throw(double p, Complex q, Sign sign, const char* label) {
  auto r = generalized_fresnel_continued(Complex(p, 0.0), q, sign);
  if (const auto* pole = std::get_if<PoleReport>(&r)) {
    throw PoleError(std::string("generalized_beta: ") + label + " hits the pole q = -" +
                    std::to_string(pole->j) + "p");
  }
  return std::get<FresnelValue>(r).value;
}

}  // namespace

Complex FresnelValue::recompute() const { return closed_form(p, q, sign); }

FresnelValue generalized_fresnel(double p, double q, Sign sign) {
  if (!(p > 0.0) || !std::isfinite(p)) throw DomainError("generalized_fresnel: p must be > 0");
  if (!(q > 0.0) || !std::isfinite(q)) {
    throw DomainError("generalized_fresnel: q must be > 0 (use the continued form)");
  }
  FresnelValue v{{}, Complex(p, 0.0), Complex(q, 0.0), sign};
  v.value = v.recompute();
  return v;
}

ContinuedFresnel generalized_fresnel_continued(Complex p, Complex q, Sign sign) {
  if (p == Complex(0.0, 0.0)) throw DomainError("generalized_fresnel_continued: p must be non-zero");
  if (const int j = nonpositive_integer_index(q / p); j >= 0) {
    // Gamma(q/p) ~ p (-1)^j/j! / (q + p j); the 1/p prefactor cancels the p.
    const Complex phase = std::exp(-to_double(sign) * kI * (kPi / 2.0) * static_cast<double>(j));
    return PoleReport{-p * static_cast<double>(j), 1, phase * gamma_residue(j), j};
  }
  FresnelValue v{{}, p, q, sign};
  v.value = v.recompute();
  return v;
}

Complex signed_fresnel_m(int m, int k, Sign sign) {
  if (m < 1 || k < 1) throw DomainError("signed_fresnel_m: m and k must be >= 1");
  return closed_form(Complex(m, 0.0), Complex(k, 0.0), times_parity(sign, m));
}

Complex c_tilde(int m, int k, Sign sign) {
  if (m < 1 || k < 0) throw DomainError("c_tilde: need m >= 1 and k >= 0");
  const Complex first = closed_form(Complex(m, 0.0), Complex(k + 1, 0.0), sign);
  const Complex second = signed_fresnel_m(m, k + 1, sign);
  return (k % 2 == 0) ? first + second : first - second;
}

Complex generalized_beta(double p1, double p2, double p3, Complex q1, Complex q2, Complex q3,
                         Sign sign) {
  if (!(p1 > 0.0) || !(p2 > 0.0) || !(p3 > 0.0)) {
    throw DomainError("generalized_beta: p1, p2, p3 must be > 0");
  }
  const Complex i1 = factor_or_throw(p1, q1, sign, "q1");
  const Complex i2 = factor_or_throw(p2, q2, sign, "q2");
  const Complex i3 = factor_or_throw(p3, q3, sign, "q3");
  const Complex twist =
      std::exp(-to_double(sign) * kI * (kPi / 2.0) * (q1 / p1 + q2 / p2 - q3 / p3));
  return twist * (p1 * p2 / p3) * i1 * i2 / i3;
}

}  // namespace oscphase
