#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace oscphase {

// Truncated Taylor series f(x0 + h) = sum_k c[k] h^k, k < size().
// Arithmetic follows the usual power series recurrences, so derivatives of any
// order come out without differencing.
class Jet {
 public:
  Jet() = default;
  Jet(std::size_t n, double value);  // constant
  static Jet variable(std::size_t n, double x0, double slope = 1.0);

  std::size_t size() const { return c_.size(); }
  double operator[](std::size_t k) const { return c_[k]; }
  double& operator[](std::size_t k) { return c_[k]; }
  double value() const { return c_.empty() ? 0.0 : c_[0]; }

  // k-th derivative, k! c[k].
  double derivative(std::size_t k) const;
  void derivatives(std::span<double> out) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator*=(double s);
  Jet& operator+=(double s);

 private:
  std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator-(Jet a);
Jet operator*(const Jet& a, const Jet& b);
Jet operator*(Jet a, double s);
Jet operator*(double s, Jet a);
Jet operator+(Jet a, double s);
Jet operator+(double s, Jet a);
Jet operator-(double s, const Jet& a);
Jet operator/(const Jet& a, const Jet& b);

Jet reciprocal(const Jet& a);
Jet exp(const Jet& a);
// a^alpha for a[0] > 0.
Jet pow(const Jet& a, double alpha);

}  // namespace oscphase
