#include <doctest.h>

#include <cmath>
#include <vector>

#include "oscphase/errors.hpp"
#include "oscphase/quadrature.hpp"

using namespace oscphase;

TEST_SUITE("quadrature_engine") {
  TEST_CASE("Kronrod rule exact to degree 31, Gauss rule to degree 19") {
    const double a = -0.5, b = 1.5;
    for (int d = 0; d <= 31; ++d) {
      const double exact = (std::pow(b, d + 1) - std::pow(a, d + 1)) / (d + 1);
      const RuleResult r = gauss_kronrod_21([d](double x) { return std::pow(x, d); }, a, b);
      CAPTURE(d);
      if (d <= 31) CHECK(std::abs(r.kronrod - exact) <= 1e-14 * std::abs(exact));
      if (d <= 19) CHECK(std::abs(r.gauss - exact) <= 1e-14 * std::abs(exact));
      if (d >= 20) CHECK(std::abs(r.gauss - exact) > 1e-14 * std::abs(exact));
    }
  }

  TEST_CASE("Legendre-Fourier moments") {
    std::vector<Complex> m(20);
    legendre_fourier_moments(0.0, m);
    CHECK(std::abs(m[0] - 2.0) < 1e-15);
    for (std::size_t k = 1; k < m.size(); ++k) CHECK(std::abs(m[k]) < 1e-15);

    // P_0, P_1, P_2 in closed form
    for (double w : {0.3, 2.0, 17.0, 250.0, 1e4}) {
      legendre_fourier_moments(w, m);
      const double s = std::sin(w), c = std::cos(w);
      const Complex m0 = 2 * s / w;
      const Complex m1 = Complex(0, 2) * (s / (w * w) - c / w);
      const Complex m2 = -2.0 * ((3 / (w * w) - 1) * s / w - 3 * c / (w * w));
      CAPTURE(w);
      CHECK(std::abs(m[0] - m0) < 1e-14);
      CHECK(std::abs(m[1] - m1) < 1e-14);
      CHECK(std::abs(m[2] - m2) < 1e-14);
    }
  }

  TEST_CASE("plain exponential, easy to Filon range") {
    // int_0^b e^{i lambda x} dx
    for (double lambda : {1.0, 30.0, 1e3, 1e5, 1e7}) {
      const double b = 2.0;
      PhaseIntegrand f{1.0, Sign::plus, lambda, 1.0, [](double) { return 1.0; }};
      const std::vector<double> bp = {0.0, b};
      const EngineResult r = integrate_phase(f, bp, {});
      const Complex exact = (std::polar(1.0, lambda * b) - 1.0) / Complex(0, lambda);
      CAPTURE(lambda);
      CHECK(std::abs(r.value - exact) <= 1e-10 * std::abs(exact) + 1e-12);
      CHECK(r.error >= 0.0);
      CHECK(r.nodes > 0);
    }
  }

  TEST_CASE("endpoint singularity and a non-trivial phase") {
    {
      PhaseIntegrand f{1.0, Sign::plus, 5.0, 0.5, [](double) { return 1.0; }};
      const std::vector<double> bp = {0.0, 1.0};
      const Complex ref(0.368199299470068360651756450184, 0.522319599346036594599137641686);
      CHECK(std::abs(integrate_phase(f, bp, {}).value - ref) < 1e-10);
    }
    {
      PhaseIntegrand f{1.5, Sign::plus, 40.0, 0.7, [](double x) { return std::exp(-x); }};
      const std::vector<double> bp = {0.0, 1.0, 3.0};
      const Complex ref(0.169886454812119817662766221909, 0.141839577637832233756739530555);
      const EngineResult r = integrate_phase(f, bp, {});
      CHECK(std::abs(r.value - ref) < 1e-10);
      f.sign = Sign::minus;
      CHECK(std::abs(integrate_phase(f, bp, {}).value - std::conj(ref)) < 1e-10);
    }
  }

  TEST_CASE("node budget") {
    PhaseIntegrand f{2.0, Sign::plus, 1e4, 1.0, [](double x) { return std::exp(-x); }};
    const std::vector<double> bp = {0.0, 3.0};
    EngineOptions opts;
    opts.max_nodes = 100;
    CHECK_THROWS_AS(integrate_phase(f, bp, opts), BudgetError);
  }

  TEST_CASE("breakpoint validation") {
    PhaseIntegrand f{2.0, Sign::plus, 1.0, 1.0, [](double) { return 1.0; }};
    const std::vector<double> bad = {1.0, 0.5};
    CHECK_THROWS_AS(integrate_phase(f, bad, {}), DomainError);
    const std::vector<double> neg = {-1.0, 0.5};
    CHECK_THROWS_AS(integrate_phase(f, neg, {}), DomainError);
  }
}
