#include "oscphase/verify.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "oscphase/errors.hpp"
#include "oscphase/expansion.hpp"
#include "oscphase/fresnel.hpp"
#include "oscphase/oscillatory.hpp"

namespace oscphase {

namespace {

std::string label(const char* fmt, double a, double b = 0.0) {
  char buf[96];
  std::snprintf(buf, sizeof buf, fmt, a, b);
  return buf;
}

void below(std::vector<VerifyCase>& out, const char* suite, std::string name, double measured,
           double limit) {
  out.push_back({suite, std::move(name), measured, limit, measured < limit});
}

void at_most(std::vector<VerifyCase>& out, const char* suite, std::string name, double measured,
             double limit) {
  out.push_back({suite, std::move(name), measured, limit, measured <= limit});
}

Complex classical_fresnel(Sign s) {
  return 0.5 * std::sqrt(kPi) * std::polar(1.0, to_double(s) * kPi / 4.0);
}

void suite_fresnel(std::vector<VerifyCase>& out) {
  const Amplitude one = constant_one_amplitude();
  for (Sign s : {Sign::plus, Sign::minus}) {
    const char* tag = s == Sign::plus ? "+" : "-";
    const Complex exact = classical_fresnel(s);
    const Complex closed = generalized_fresnel(2.0, 1.0, s).value;
    below(out, "fresnel", std::string("closed_form_rel ") + tag, std::abs(closed - exact) / std::abs(exact),
          1e-14);
    const Complex quad = os_integral_halfline(2.0, 1.0, s, 1.0, one).value;
    below(out, "fresnel", std::string("halfline ") + tag, std::abs(quad - exact), 1e-8);
    const auto ladder = default_eps_ladder();
    const Complex eps = epsilon_regularized(2.0, 1.0, s, 1.0, one, default_regularizer(), ladder);
    below(out, "fresnel", std::string("eps_regularized ") + tag, std::abs(eps - exact), 1e-4);
  }
}

void suite_three_path(std::vector<VerifyCase>& out) {
  const Amplitude one = constant_one_amplitude();
  for (double p : {0.7, 1.0, 1.5, 2.0, 3.0}) {
    for (double q : {0.3, p == 1.0 ? 0.6 : 1.0, p, p + 0.5, p + 2.0}) {
      const Complex closed = generalized_fresnel(p, q, Sign::plus).value;
      const Complex quad = os_integral_halfline(p, q, Sign::plus, 1.0, one).value;
      const Complex contour = rotated_contour_reference(p, q, Sign::plus);
      below(out, "three_path", label("halfline p=%g q=%g", p, q), std::abs(quad - closed), 1e-6);
      below(out, "three_path", label("contour p=%g q=%g", p, q), std::abs(contour - closed), 1e-9);
    }
  }
}

void suite_gamma_p1(std::vector<VerifyCase>& out) {
  const Amplitude one = constant_one_amplitude();
  const auto ladder = default_eps_ladder();
  for (double q : {0.5, 1.0, 1.5, 2.5}) {
    const Complex expected = std::polar(std::tgamma(q), kPi * q / 2.0);
    const Complex eps = epsilon_regularized(1.0, q, Sign::plus, 1.0, one, default_regularizer(), ladder);
    below(out, "gamma_p1", label("eps p=1 q=%g", q), std::abs(eps - expected), 1e-4);
  }
}

void suite_beta(std::vector<VerifyCase>& out) {
  for (auto [q1, q2] : {std::pair{2.0, 3.0}, std::pair{0.5, 0.5}, std::pair{1.3, 2.7}}) {
    const Complex b = generalized_beta(1.0, 1.0, 1.0, q1, q2, q1 + q2, Sign::plus);
    const double expected = std::tgamma(q1) * std::tgamma(q2) / std::tgamma(q1 + q2);
    below(out, "beta", label("B(%g,%g)", q1, q2), std::abs(b - expected), 1e-10);
  }
}

// (q + p j) I_{p,q} sampled at q = -p j + h and extrapolated to h = 0.
Complex residue_limit(double p, int j) {
  const double hs[] = {1e-2, -1e-2, 5e-3, -5e-3};
  Complex v[4];
  for (int i = 0; i < 4; ++i) {
    const double q = -p * j + hs[i];
    const auto r = generalized_fresnel_continued(p, q, Sign::plus);
    v[i] = hs[i] * std::get<FresnelValue>(r).value;
  }
  for (int m = 1; m < 4; ++m) {
    for (int i = 0; i + m < 4; ++i) v[i] = (hs[i + m] * v[i] - hs[i] * v[i + 1]) / (hs[i + m] - hs[i]);
  }
  return v[0];
}

void suite_continuation(std::vector<VerifyCase>& out) {
  for (auto [p, j] : {std::pair{1.0, 1}, std::pair{2.0, 1}, std::pair{2.0, 2}}) {
    double fact = 1.0;
    for (int k = 2; k <= j; ++k) fact *= k;
    const Complex expected =
        std::polar(1.0, -kPi * j / 2.0) * ((j % 2 == 0 ? 1.0 : -1.0) / fact);
    below(out, "continuation", label("limit p=%g j=%g", p, j), std::abs(residue_limit(p, j) - expected),
          1e-6);
    const auto r = generalized_fresnel_continued(p, -p * j, Sign::plus);
    const auto* pole = std::get_if<PoleReport>(&r);
    const double delta = pole ? std::abs(pole->residue - expected) : INFINITY;
    below(out, "continuation", label("pole_report p=%g j=%g", p, j), delta, 1e-14);
  }
}

void suite_remainder(std::vector<VerifyCase>& out) {
  QuadratureConfig cfg;
  cfg.rel_tol = 1e-13;
  cfg.abs_tol = 1e-16;
  const Amplitude g = gaussian_amplitude();
  const std::vector<double> grid = {10, 31.6, 100, 316, 1000, 1e4};
  for (int n : {3, 4, 5}) {
    const auto fit = remainder_slope(ExpansionVariant::fullline, 2, Sign::plus, g, n, grid, cfg);
    at_most(out, "remainder", label("fullline m=2 N=%g", n), fit.fitted_slope,
            -(n - 2.0 + 1.0) / 2.0 + 0.15);
  }
  const auto half = remainder_slope(ExpansionVariant::halfline, 2.5, Sign::plus, g, 5, grid, cfg);
  at_most(out, "remainder", "halfline p=2.5 N=5", half.fitted_slope, -(5 - 2.5 + 1.0) / 2.5 + 0.2);
  const std::vector<double> fast = {5, 6, 7, 8, 9, 10, 12, 15, 20, 30, 40, 50};
  const auto m1 = remainder_slope(ExpansionVariant::fullline, 1, Sign::plus, g, 3, fast, cfg);
  at_most(out, "remainder", "fullline m=1", m1.fitted_slope, -6.0);
}

using SuiteFn = void (*)(std::vector<VerifyCase>&);

const std::map<std::string, SuiteFn, std::less<>>& suites() {
  static const std::map<std::string, SuiteFn, std::less<>> s = {
      {"fresnel", suite_fresnel},       {"three_path", suite_three_path},
      {"gamma_p1", suite_gamma_p1}, {"beta", suite_beta},
      {"continuation", suite_continuation},     {"remainder", suite_remainder}};
  return s;
}

}  // namespace

bool VerifyReport::passed() const {
  for (const auto& c : cases) {
    if (!c.passed) return false;
  }
  return true;
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"fresnel",      "three_path", "gamma_p1", "beta",
                                                 "continuation", "remainder",  "all"};
  return names;
}

VerifyReport run_verify_suite(std::string_view name) {
  VerifyReport rep{std::string(name), {}};
  if (name == "all") {
    for (const auto& n : verify_suite_names()) {
      if (n != "all") suites().find(n)->second(rep.cases);
    }
    return rep;
  }
  const auto it = suites().find(name);
  if (it == suites().end()) throw DomainError("unknown verify suite '" + std::string(name) + "'");
  it->second(rep.cases);
  return rep;
}

}  // namespace oscphase
