#include "oscphase/jet.hpp"

#include <cmath>
#include <stdexcept>

#include "oscphase/errors.hpp"

namespace oscphase {

namespace {

void check_sizes(const Jet& a, const Jet& b) {
  if (a.size() != b.size()) throw std::invalid_argument("Jet: size mismatch");
}

}  // namespace

Jet::Jet(std::size_t n, double value) : c_(n, 0.0) {
  if (n > 0) c_[0] = value;
}

Jet Jet::variable(std::size_t n, double x0, double slope) {
  Jet j(n, x0);
  if (n > 1) j.c_[1] = slope;
  return j;
}

double Jet::derivative(std::size_t k) const {
  double f = 1.0;
  for (std::size_t i = 2; i <= k; ++i) f *= static_cast<double>(i);
  return f * c_[k];
}

void Jet::derivatives(std::span<double> out) const {
  double f = 1.0;
  for (std::size_t k = 0; k < out.size(); ++k) {
    if (k > 1) f *= static_cast<double>(k);
    out[k] = k < c_.size() ? f * c_[k] : 0.0;
  }
}

Jet& Jet::operator+=(const Jet& o) {
  check_sizes(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_sizes(*this, o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

Jet& Jet::operator*=(double s) {
  for (auto& v : c_) v *= s;
  return *this;
}

Jet& Jet::operator+=(double s) {
  if (!c_.empty()) c_[0] += s;
  return *this;
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator*(Jet a, double s) { return a *= s; }
Jet operator*(double s, Jet a) { return a *= s; }
Jet operator+(Jet a, double s) { return a += s; }
Jet operator+(double s, Jet a) { return a += s; }
Jet operator-(double s, const Jet& a) { return (-a) += s; }

Jet operator*(const Jet& a, const Jet& b) {
  check_sizes(a, b);
  const std::size_t n = a.size();
  Jet r(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i <= k; ++i) s += a[i] * b[k - i];
    r[k] = s;
  }
  return r;
}

Jet reciprocal(const Jet& a) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  if (a[0] == 0.0) throw DomainError("Jet: reciprocal of a series with zero constant term");
  Jet r(n, 1.0 / a[0]);
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 1; i <= k; ++i) s += a[i] * r[k - i];
    r[k] = -s / a[0];
  }
  return r;
}

Jet operator/(const Jet& a, const Jet& b) {
  check_sizes(a, b);
  const std::size_t n = a.size();
  if (n == 0) return a;
  if (b[0] == 0.0) throw DomainError("Jet: division by a series with zero constant term");
  Jet r(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    double s = a[k];
    for (std::size_t i = 1; i <= k; ++i) s -= b[i] * r[k - i];
    r[k] = s / b[0];
  }
  return r;
}

// e = exp(a): k e_k = sum_{j=1}^k j a_j e_{k-j}.
Jet exp(const Jet& a) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  Jet e(n, std::exp(a[0]));
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) s += static_cast<double>(j) * a[j] * e[k - j];
    e[k] = s / static_cast<double>(k);
  }
  return e;
}

// w = a^alpha: a w' = alpha a' w, coefficientwise.
Jet pow(const Jet& a, double alpha) {
  const std::size_t n = a.size();
  if (n == 0) return a;
  if (!(a[0] > 0.0)) throw DomainError("Jet: pow needs a positive constant term");
  Jet w(n, std::pow(a[0], alpha));
  for (std::size_t k = 1; k < n; ++k) {
    double s = 0.0;
    for (std::size_t j = 1; j <= k; ++j) {
      s += (alpha * static_cast<double>(j) - static_cast<double>(k - j)) * a[j] * w[k - j];
    }
    w[k] = s / (static_cast<double>(k) * a[0]);
  }
  return w;
}

}  // namespace oscphase
