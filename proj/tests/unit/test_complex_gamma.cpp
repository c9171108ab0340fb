#include <doctest.h>

#include <cmath>
#include <limits>

#include "../support/generators.hpp"
#include "oscphase/complex_gamma.hpp"
#include "oscphase/errors.hpp"

using oscphase::Complex;
using oscphase::gamma;

namespace {

struct OracleRow {
  Complex z;
  Complex value;
};

// 40-digit mpmath values, rounded to 20 digits.
const OracleRow kOracle[] = {
    {{0.5, 0}, {1.7724538509055160273, 0.0}},
    {{1, 0}, {1.0, 0.0}},
    {{5, 0}, {2.4e+1, 0.0}},
    {{0.1, 0}, {9.5135076986687312858, 0.0}},
    {{-0.5, 0}, {-3.5449077018110320546, 0.0}},
    {{-2.5, 0}, {-9.4530872048294188123e-1, 0.0}},
    {{3.7, 2.1}, {-1.8598252959665196133, 1.1623401526968617731}},
    {{0.3, -4.2}, {1.3452432440323596641e-4, -2.5634599330710979302e-3}},
    {{-4.6, 1.3}, {4.986387419003272641e-4, -1.9611726289174247875e-3}},
    {{-9.3, -7.7}, {4.3679987960644078141e-15, -1.4288557860801326326e-16}},
    {{12.5, 9.9}, {3.054523504550079884e+6, 1.3531246952254856919e+6}},
    {{0.001, 0.001}, {4.9942377338913425254e+2, -4.9999901275699936157e+2}},
    {{-0.999, 0.0005}, {-8.0042419655407070137e+2, 3.9999929357342883809e+2}},
    {{20, 0}, {1.21645100408832e+17, 0.0}},
    {{0.25, 30}, {-2.9982178447538134558e-21, 2.1092029539842322324e-21}},
};

double rel(Complex a, Complex b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_SUITE("complex_gamma") {
  TEST_CASE("matches high precision reference values") {
    for (const auto& row : kOracle) {
      CAPTURE(row.z);
      // far up the imaginary axis the condition number |z psi(z)| passes 100
      const double tol = std::abs(row.z.imag()) <= 10 ? 1e-13 : 5e-13;
      CHECK(rel(gamma(row.z), row.value) < tol);
    }
  }

  TEST_CASE("real axis agrees with std::tgamma") {
    for (double x = -7.75; x < 30; x += 0.5) {
      CAPTURE(x);
      CHECK(rel(gamma(Complex(x, 0)), Complex(std::tgamma(x), 0)) < 1e-13);
    }
  }

  TEST_CASE("functional equation on random sample") {
    testgen::Gen g(101);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = g.gamma_argument(-10, 10, 10, 1e-3);
      CAPTURE(z);
      const Complex gz1 = gamma(z + 1.0);
      CHECK(std::abs(gz1 - z * gamma(z)) / std::abs(gz1) <= 1e-12);
    }
  }

  TEST_CASE("reflection formula on random sample") {
    testgen::Gen g(202);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = g.gamma_argument(-10, 10, 10, 1e-3);
      const Complex w = 1.0 - z;
      // 1 - z must stay clear of the poles as well
      if (w.real() <= 0.5 && std::abs(w - std::round(w.real())) < 1e-3) continue;
      CAPTURE(z);
      const Complex r = gamma(z) * gamma(w) * oscphase::sin_pi(z) / oscphase::kPi;
      CHECK(std::abs(r - 1.0) <= 1e-11);
    }
  }

  TEST_CASE("conjugate symmetry") {
    testgen::Gen g(303);
    for (int i = 0; i < 1000; ++i) {
      const Complex z = g.gamma_argument(-10, 10, 10, 1e-3);
      CAPTURE(z);
      const Complex a = gamma(std::conj(z));
      const Complex b = std::conj(gamma(z));
      CHECK(std::abs(a - b) <= 1e-13 * std::abs(b));
    }
  }

  TEST_CASE("poles are classified, near misses are not") {
    for (int j = 0; j <= 6; ++j) {
      CHECK_THROWS_AS(gamma(Complex(-j, 0)), oscphase::PoleError);
      CHECK_THROWS_AS(gamma(Complex(-j + 5e-13, -5e-13)), oscphase::PoleError);
      CHECK(oscphase::nonpositive_integer_index(Complex(-j, 0)) == j);
      CHECK_NOTHROW(gamma(Complex(-j + 1e-9, 0)));
    }
    CHECK(oscphase::nonpositive_integer_index(Complex(1, 0)) == -1);
    CHECK(oscphase::nonpositive_integer_index(Complex(-2.5, 0)) == -1);
  }

  TEST_CASE("residues") {
    CHECK(oscphase::gamma_residue(0) == doctest::Approx(1.0));
    CHECK(oscphase::gamma_residue(1) == doctest::Approx(-1.0));
    CHECK(oscphase::gamma_residue(2) == doctest::Approx(0.5));
    CHECK(oscphase::gamma_residue(3) == doctest::Approx(-1.0 / 6));
    // h Gamma(-j + h) -> residue
    for (int j = 0; j < 5; ++j) {
      const double h = 1e-7;
      CHECK(std::abs(h * gamma(Complex(-j + h, 0)).real() - oscphase::gamma_residue(j)) < 1e-5);
    }
  }

  TEST_CASE("non-finite input and overflow") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(gamma(Complex(nan, 0)), oscphase::DomainError);
    CHECK_THROWS_AS(gamma(Complex(INFINITY, 0)), oscphase::DomainError);
    CHECK_THROWS_AS(gamma(Complex(200, 0)), oscphase::OverflowError);
  }

  TEST_CASE("sin_pi is exact at integers and half integers") {
    CHECK(oscphase::sin_pi(Complex(1e6, 0)) == Complex(0, 0));
    CHECK(std::abs(oscphase::sin_pi(Complex(1e6 + 0.5, 0)) - 1.0) < 1e-15);
    CHECK(std::abs(oscphase::sin_pi(Complex(-3.5, 0)) - 1.0) < 1e-15);
  }
}
