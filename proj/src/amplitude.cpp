#include "oscphase/amplitude.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "oscphase/errors.hpp"

namespace oscphase {

namespace {

using JetFn = std::function<Jet(const Jet&)>;

Amplitude::DerivFn from_jet(JetFn f) {
  return [f = std::move(f)](double x, std::span<double> out) {
    if (out.empty()) return;
    f(Jet::variable(out.size(), x)).derivatives(out);
  };
}

// Cramer's inequality: |H_n(x)| e^{-x^2/2} <= K 2^{n/2} sqrt(n!).
constexpr double kCramer = 1.0865;

double hermite_envelope(int n) {
  return kCramer * std::exp(0.5 * n * std::log(2.0) + 0.5 * std::lgamma(n + 1.0));
}

// sup_{x} <x>^e e^{-x^2/2}.
double bracket_gauss_sup(double e) {
  if (e < 1.0) return 1.0;
  return std::exp(0.5 * e * std::log(e) - 0.5 * (e - 1.0));
}

double binomial(int n, int k) {
  return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0));
}

double falling(int n, int i) {
  double f = 1.0;
  for (int s = 0; s < i; ++s) f *= static_cast<double>(n - s);
  return f;
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::vector<double> parse_numbers(const std::string& text, std::string_view full) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    if (comma == std::string::npos) comma = text.size();
    const std::string item = trim(std::string_view(text).substr(pos, comma - pos));
    char* end = nullptr;
    const double v = std::strtod(item.c_str(), &end);
    if (item.empty() || end != item.c_str() + item.size() || !std::isfinite(v)) {
      throw UnknownAmplitude("amplitude: bad parameter list in '" + std::string(full) + "'");
    }
    out.push_back(v);
    pos = comma + 1;
  }
  return out;
}

}  // namespace

Amplitude::Amplitude(std::string name, DerivFn derivs, BoundFn order_bound, double tau,
                     double delta, int max_order)
    : name_(std::move(name)),
      derivs_(std::make_shared<const DerivFn>(std::move(derivs))),
      bound_(std::make_shared<const BoundFn>(std::move(order_bound))),
      tau_(tau),
      delta_(delta),
      max_order_(max_order) {
  if (!(delta >= -1.0)) throw DomainError("Amplitude: delta must be >= -1");
  if (max_order < 0) throw DomainError("Amplitude: max_order must be >= 0");
}

void Amplitude::check_order(int k) const {
  if (k < 0 || k > max_order_) {
    throw OrderError("amplitude '" + name_ + "': derivative order " + std::to_string(k) +
                     " exceeds max_order " + std::to_string(max_order_));
  }
}

double Amplitude::deriv(int k, double x) const {
  check_order(k);
  std::vector<double> buf(static_cast<std::size_t>(k) + 1);
  (*derivs_)(x, buf);
  return buf[static_cast<std::size_t>(k)];
}

void Amplitude::derivatives(double x, std::span<double> out) const {
  if (out.empty()) return;
  check_order(static_cast<int>(out.size()) - 1);
  (*derivs_)(x, out);
}

double Amplitude::order_bound(int k) const {
  check_order(k);
  return (*bound_)(k);
}

double Amplitude::seminorm_bound(int l) const {
  double m = 0.0;
  for (int k = 0; k <= l; ++k) m = std::max(m, order_bound(k));
  return m;
}

Amplitude Amplitude::reflected() const {
  auto base = derivs_;
  DerivFn d = [base](double x, std::span<double> out) {
    (*base)(-x, out);
    for (std::size_t k = 1; k < out.size(); k += 2) out[k] = -out[k];
  };
  auto bound = bound_;
  return Amplitude(name_ + "(-x)", std::move(d), [bound](int k) { return (*bound)(k); }, tau_,
                   delta_, max_order_);
}

Amplitude Amplitude::derivative(int j) const {
  check_order(j);
  if (j == 0) return *this;
  auto base = derivs_;
  const auto sj = static_cast<std::size_t>(j);
  DerivFn d = [base, sj](double x, std::span<double> out) {
    std::vector<double> buf(out.size() + sj);
    (*base)(x, buf);
    std::copy(buf.begin() + static_cast<std::ptrdiff_t>(sj), buf.end(), out.begin());
  };
  auto bound = bound_;
  return Amplitude(name_ + "^(" + std::to_string(j) + ")", std::move(d),
                   [bound, j](int k) { return (*bound)(k + j); }, tau_ + delta_ * j, delta_,
                   max_order_ - j);
}

Amplitude gaussian_amplitude() {
  return Amplitude(
      "gaussian", from_jet([](const Jet& x) { return exp(-(x * x)); }),
      [](int k) { return hermite_envelope(k) * bracket_gauss_sup(k); }, 0.0, -1.0,
      kBuiltinMaxOrder);
}

Amplitude constant_one_amplitude() {
  return Amplitude(
      "constant_one",
      [](double, std::span<double> out) {
        std::fill(out.begin(), out.end(), 0.0);
        if (!out.empty()) out[0] = 1.0;
      },
      [](int k) { return k == 0 ? 1.0 : 0.0; }, 0.0, -1.0, kBuiltinMaxOrder);
}

// Cauchy estimate on the disc of radius <x>/2 around x, where |1 + z^2| >= <x>^2/4.
Amplitude rational_decay_amplitude(double s) {
  if (!(s > 0.0) || !std::isfinite(s)) {
    throw UnknownAmplitude("rational_decay: exponent s must be a positive number");
  }
  char label[64];
  std::snprintf(label, sizeof label, "rational_decay:%.17g", s);
  return Amplitude(
      label, from_jet([s](const Jet& x) { return pow(1.0 + x * x, -s); }),
      [s](int k) { return std::exp(std::lgamma(k + 1.0) + (k + 2.0 * s) * std::log(2.0)); },
      -2.0 * s, -1.0, kBuiltinMaxOrder);
}

Amplitude polynomial_gaussian_amplitude(std::vector<double> coeffs) {
  if (coeffs.empty()) throw UnknownAmplitude("polynomial_gaussian: needs at least one coefficient");
  std::string label = "polynomial_gaussian:";
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%.17g", i ? "," : "", coeffs[i]);
    label += buf;
  }
  auto shared = std::make_shared<const std::vector<double>>(std::move(coeffs));
  JetFn f = [shared](const Jet& x) {
    const auto& c = *shared;
    Jet poly(x.size(), c.back());
    for (std::size_t i = c.size() - 1; i-- > 0;) poly = poly * x + c[i];
    return poly * exp(-(x * x));
  };
  auto bound = [shared](int k) {
    const auto& c = *shared;
    const int d = static_cast<int>(c.size()) - 1;
    double total = 0.0;
    for (int i = 0; i <= std::min(k, d); ++i) {
      for (int n = i; n <= d; ++n) {
        if (c[static_cast<std::size_t>(n)] == 0.0) continue;
        total += binomial(k, i) * std::abs(c[static_cast<std::size_t>(n)]) * falling(n, i) *
                 hermite_envelope(k - i) * bracket_gauss_sup(k + n - i);
      }
    }
    return total;
  };
  return Amplitude(label, from_jet(std::move(f)), std::move(bound), 0.0, -1.0, kBuiltinMaxOrder);
}

Amplitude builtin(std::string_view name) {
  const std::string full = trim(name);
  std::string head = full;
  std::string args;
  bool has_args = false;
  if (const auto colon = full.find(':'); colon != std::string::npos) {
    head = trim(std::string_view(full).substr(0, colon));
    args = full.substr(colon + 1);
    has_args = true;
  } else if (const auto open = full.find('('); open != std::string::npos) {
    if (full.back() != ')') throw UnknownAmplitude("amplitude: unbalanced parentheses in '" + full + "'");
    head = trim(std::string_view(full).substr(0, open));
    args = full.substr(open + 1, full.size() - open - 2);
    has_args = true;
  }

  if (head == "gaussian" && !has_args) return gaussian_amplitude();
  if (head == "constant_one" && !has_args) return constant_one_amplitude();
  if (head == "rational_decay" && has_args) {
    const auto v = parse_numbers(args, full);
    if (v.size() != 1) throw UnknownAmplitude("rational_decay: expects exactly one exponent");
    return rational_decay_amplitude(v[0]);
  }
  if (head == "polynomial_gaussian" && has_args) {
    return polynomial_gaussian_amplitude(parse_numbers(args, full));
  }
  throw UnknownAmplitude("unknown amplitude '" + full + "'");
}

Cutoff::Cutoff(double r) : r_(r) {
  if (!(r > 1.0) || !std::isfinite(r)) throw DomainError("cutoff: radius r must be > 1");
}

Cutoff default_cutoff(double r) { return Cutoff(r); }

// s(t) = f(t) / (f(t) + f(1-t)), f(t) = e^{-1/t}, written as 1/(1 + e^{g}) with
// g = 1/t - 1/(1-t) so neither branch overflows.
Jet Cutoff::psi_jet(double x, std::size_t n) const {
  const double ax = std::abs(x);
  if (ax <= 1.0) return Jet(n, 0.0);
  if (ax >= r_) return Jet(n, 1.0);
  const double slope = (x < 0.0 ? -1.0 : 1.0) / (r_ - 1.0);
  const Jet t = Jet::variable(n, (ax - 1.0) / (r_ - 1.0), slope);
  const Jet g = reciprocal(t) - reciprocal(1.0 - t);
  if (g.value() >= 0.0) {
    const Jet e = exp(-g);
    return e / (1.0 + e);
  }
  return reciprocal(1.0 + exp(g));
}

Jet Cutoff::phi_jet(double x, std::size_t n) const { return 1.0 - psi_jet(x, n); }

double Cutoff::phi(double x) const {
  const double ax = std::abs(x);
  if (ax <= 1.0) return 1.0;
  if (ax >= r_) return 0.0;
  return phi_jet(x, 1).value();
}

double Cutoff::phi_deriv(int k, double x) const {
  if (k < 0) throw DomainError("cutoff: negative derivative order");
  return phi_jet(x, static_cast<std::size_t>(k) + 1).derivative(static_cast<std::size_t>(k));
}

void Cutoff::phi_derivatives(double x, std::span<double> out) const {
  phi_jet(x, out.size()).derivatives(out);
}

void Cutoff::psi_derivatives(double x, std::span<double> out) const {
  psi_jet(x, out.size()).derivatives(out);
}

Regularizer::Regularizer(std::string name, JetFn chi, DecayClass decay, double decay_power,
                         double decay_constant)
    : name_(std::move(name)),
      chi_(std::make_shared<const JetFn>(std::move(chi))),
      decay_(decay),
      decay_power_(decay_power),
      decay_constant_(decay_constant) {}

double Regularizer::chi(double y) const { return (*chi_)(Jet(1, y)).value(); }

double Regularizer::chi_deriv(int k, double y) const {
  if (k < 0) throw DomainError("regularizer: negative derivative order");
  const auto n = static_cast<std::size_t>(k) + 1;
  return (*chi_)(Jet::variable(n, y)).derivative(static_cast<std::size_t>(k));
}

Jet Regularizer::scaled_jet(double x, double eps, std::size_t n) const {
  return (*chi_)(Jet::variable(n, eps * x, eps));
}

Regularizer default_regularizer() {
  return Regularizer("gaussian", [](const Jet& y) { return exp(-(y * y)); }, DecayClass::gaussian);
}

Regularizer algebraic_regularizer() {
  return Regularizer(
      "rational", [](const Jet& y) { return pow(1.0 + y * y, -2.0); }, DecayClass::algebraic, 4.0,
      1.0);
}

}  // namespace oscphase
