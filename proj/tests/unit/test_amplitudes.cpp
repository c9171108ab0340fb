#include <doctest.h>

#include <cmath>
#include <vector>

#include "oscphase/amplitude.hpp"
#include "oscphase/errors.hpp"
#include "oscphase/jet.hpp"

using namespace oscphase;

namespace {

double bracket(double x) { return std::sqrt(1.0 + x * x); }

}  // namespace

TEST_SUITE("jet") {
  TEST_CASE("exp, pow and reciprocal derivatives") {
    const double x0 = 0.7;
    const Jet x = Jet::variable(6, x0);
    const Jet e = exp(2.0 * x);
    for (std::size_t k = 0; k < 6; ++k) CHECK(e.derivative(k) == doctest::Approx(std::pow(2.0, k) * std::exp(2 * x0)));

    const Jet pw = pow(x, 2.5);
    double coef = 1.0;
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(pw.derivative(k) == doctest::Approx(coef * std::pow(x0, 2.5 - k)).epsilon(1e-13));
      coef *= 2.5 - static_cast<double>(k);
    }

    const Jet r = reciprocal(x);
    double f = 1.0;
    for (std::size_t k = 0; k < 6; ++k) {
      CHECK(r.derivative(k) == doctest::Approx(((k % 2) ? -1.0 : 1.0) * f / std::pow(x0, k + 1.0)));
      f *= static_cast<double>(k + 1);
    }
  }

  TEST_CASE("product and quotient rules") {
    const Jet x = Jet::variable(5, 1.3);
    const Jet s = x * x * x;
    const Jet q = s / (1.0 + x * x);
    // x^3 / (1 + x^2) = x - x / (1 + x^2)
    const Jet alt = x - x / (1.0 + x * x);
    for (std::size_t k = 0; k < 5; ++k) CHECK(q.derivative(k) == doctest::Approx(alt.derivative(k)).epsilon(1e-13));
    CHECK(s.derivative(3) == doctest::Approx(6.0));
    CHECK(s.derivative(4) == doctest::Approx(0.0));
  }

  TEST_CASE("chain through a slope") {
    const Jet y = Jet::variable(4, 0.5, 3.0);  // y = 3 (h) + 0.5
    const Jet e = exp(-(y * y));
    // d/dh e^{-(0.5+3h)^2} at h = 0 is -2 * 0.5 * 3 e^{-0.25}
    CHECK(e.derivative(1) == doctest::Approx(-3.0 * std::exp(-0.25)));
  }
}

TEST_SUITE("amplitudes") {
  TEST_CASE("catalogue lookup") {
    CHECK(builtin("gaussian").name() == "gaussian");
    CHECK(builtin("constant_one").name() == "constant_one");
    CHECK(builtin("rational_decay:2")(1.0) == doctest::Approx(0.25));
    CHECK(builtin("rational_decay(1.5)").tau() == doctest::Approx(-3.0));
    CHECK(builtin("polynomial_gaussian:1,0,2")(1.0) == doctest::Approx(3.0 * std::exp(-1.0)));
    CHECK(builtin(" gaussian ").name() == "gaussian");
    CHECK_THROWS_AS(builtin("sinc"), UnknownAmplitude);
    CHECK_THROWS_AS(builtin("rational_decay:0"), UnknownAmplitude);
    CHECK_THROWS_AS(builtin("rational_decay:-1"), UnknownAmplitude);
    CHECK_THROWS_AS(builtin("rational_decay:1,2"), UnknownAmplitude);
    CHECK_THROWS_AS(builtin("rational_decay(2"), UnknownAmplitude);
    CHECK_THROWS_AS(builtin("polynomial_gaussian:"), UnknownAmplitude);
  }

  TEST_CASE("gaussian derivatives in closed form") {
    const Amplitude g = gaussian_amplitude();
    for (double x : {-2.0, -0.3, 0.0, 0.9, 3.0}) {
      const double e = std::exp(-x * x);
      CHECK(g.deriv(0, x) == doctest::Approx(e));
      CHECK(g.deriv(1, x) == doctest::Approx(-2 * x * e));
      CHECK(g.deriv(2, x) == doctest::Approx((4 * x * x - 2) * e));
      CHECK(g.deriv(3, x) == doctest::Approx((-8 * x * x * x + 12 * x) * e));
    }
    // a^{(2k)}(0) = (-1)^k (2k)! / k!
    CHECK(g.deriv(4, 0.0) == doctest::Approx(12.0));
    CHECK(g.deriv(6, 0.0) == doctest::Approx(-120.0));
  }

  TEST_CASE("class parameters") {
    CHECK(gaussian_amplitude().tau() == 0.0);
    CHECK(gaussian_amplitude().delta() == -1.0);
    CHECK(constant_one_amplitude().delta() == -1.0);
    CHECK(rational_decay_amplitude(1).tau() == -2.0);
    CHECK(constant_one_amplitude().order_bound(0) == 1.0);
    CHECK(constant_one_amplitude().order_bound(3) == 0.0);
    CHECK(constant_one_amplitude().deriv(2, 5.0) == 0.0);
  }

  TEST_CASE("envelope certification by dense sampling") {
    const std::vector<Amplitude> amps = {gaussian_amplitude(), constant_one_amplitude(),
                                         rational_decay_amplitude(0.5), rational_decay_amplitude(1.0),
                                         rational_decay_amplitude(3.0),
                                         polynomial_gaussian_amplitude({1.0, -2.0, 0.5}),
                                         polynomial_gaussian_amplitude({0.0, 0.0, 0.0, 4.0})};
    std::vector<double> d(9);
    for (const auto& a : amps) {
      for (int i = 0; i <= 20000; ++i) {
        const double x = -50.0 + 0.005 * i;
        a.derivatives(x, d);
        for (int k = 0; k <= 8; ++k) {
          const double env = std::pow(bracket(x), a.tau() + a.delta() * k);
          const double v = std::abs(d[static_cast<std::size_t>(k)]);
          if (v > a.order_bound(k) * env || v > a.seminorm_bound(k) * env) {
            FAIL_CHECK(a.name() << " k=" << k << " x=" << x << " |a^(k)|=" << v);
          }
        }
      }
    }
  }

  TEST_CASE("seminorm bound is monotone in the order") {
    const Amplitude a = rational_decay_amplitude(2);
    for (int l = 1; l < 20; ++l) CHECK(a.seminorm_bound(l) >= a.seminorm_bound(l - 1));
  }

  TEST_CASE("order limit") {
    const Amplitude a = gaussian_amplitude();
    std::vector<double> d(static_cast<std::size_t>(kBuiltinMaxOrder) + 2);
    CHECK_THROWS_AS(a.derivatives(0.0, d), OrderError);
    CHECK_THROWS_AS(a.deriv(kBuiltinMaxOrder + 1, 0.0), OrderError);
    CHECK_NOTHROW(a.deriv(kBuiltinMaxOrder, 0.0));
  }

  TEST_CASE("reflection and derivative amplitudes") {
    const Amplitude a = polynomial_gaussian_amplitude({0.3, 1.0, 0.0, -0.5});
    const Amplitude r = a.reflected();
    const Amplitude d2 = a.derivative(2);
    for (double x : {-1.5, 0.2, 2.0}) {
      for (int k = 0; k < 5; ++k) {
        const double sgn = (k % 2) ? -1.0 : 1.0;
        CHECK(r.deriv(k, x) == doctest::Approx(sgn * a.deriv(k, -x)));
        CHECK(d2.deriv(k, x) == doctest::Approx(a.deriv(k + 2, x)));
      }
    }
    CHECK(d2.tau() == doctest::Approx(a.tau() + 2 * a.delta()));
    CHECK(d2.max_order() == a.max_order() - 2);
  }
}

TEST_SUITE("cutoff") {
  TEST_CASE("plateau, support and partition of unity") {
    for (double r : {1.5, 2.0, 3.0}) {
      const Cutoff c(r);
      double prev = 1.0;
      for (int i = -4000; i <= 4000; ++i) {
        const double x = i * 1e-3;
        const double phi = c.phi(x);
        CHECK(phi + c.psi(x) == 1.0);
        if (std::abs(x) <= 1.0) CHECK(phi == 1.0);
        if (std::abs(x) >= r) CHECK(phi == 0.0);
        if (x > 0) {
          CHECK(phi <= prev);
          prev = phi;
        }
      }
      CHECK(c.phi(0.5 * (1 + r)) == doctest::Approx(0.5));
    }
    CHECK_THROWS_AS(Cutoff(1.0), DomainError);
    CHECK_THROWS_AS(Cutoff(0.5), DomainError);
  }

  TEST_CASE("derivatives agree with differences and vanish off the transition") {
    const Cutoff c(2.0);
    std::vector<double> d(4);
    for (double x : {1.2, 1.5, 1.8, -1.4}) {
      c.phi_derivatives(x, d);
      const double h = 1e-5;
      CHECK(d[1] == doctest::Approx((c.phi(x + h) - c.phi(x - h)) / (2 * h)).epsilon(1e-6));
      const double fd2 = (c.phi(x + h) - 2 * c.phi(x) + c.phi(x - h)) / (h * h);
      CHECK(std::abs(d[2] - fd2) < 1e-3 * std::max(1.0, std::abs(fd2)));
      CHECK(c.phi_deriv(1, x) == doctest::Approx(d[1]));
    }
    c.phi_derivatives(0.5, d);
    for (std::size_t k = 1; k < 4; ++k) CHECK(d[k] == 0.0);
    c.phi_derivatives(2.5, d);
    for (std::size_t k = 0; k < 4; ++k) CHECK(d[k] == 0.0);
    c.psi_derivatives(1.5, d);
    CHECK(d[1] == doctest::Approx(-c.phi_deriv(1, 1.5)));
    // smooth at the junctions: high derivatives tend to zero
    CHECK(std::abs(c.phi_deriv(3, 1.0 + 1e-3)) < 1e-100);
    CHECK(std::abs(c.phi_deriv(3, 2.0 - 1e-3)) < 1e-100);
  }
}

TEST_SUITE("regularizer") {
  TEST_CASE("chi(eps x) tends to one on compacts") {
    for (const Regularizer& chi : {default_regularizer(), algebraic_regularizer()}) {
      CHECK(chi.chi(0.0) == 1.0);
      double prev = INFINITY;
      for (double eps : {1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6}) {
        double worst = 0.0;
        for (int i = -200; i <= 200; ++i) worst = std::max(worst, std::abs(chi.chi(eps * i * 0.05) - 1.0));
        CHECK(worst < prev);
        CHECK(worst <= 2.0 * 100.0 * eps * eps + 1e-16);
        prev = worst;
      }
      CHECK(prev < 1e-9);
    }
  }

  TEST_CASE("scaled jet follows the chain rule") {
    const Regularizer chi = default_regularizer();
    const double eps = 0.3, x = 1.7;
    const Jet j = chi.scaled_jet(x, eps, 4);
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(j.derivative(k) == doctest::Approx(std::pow(eps, k) * chi.chi_deriv(static_cast<int>(k), eps * x)));
    }
    const double y = eps * x;
    CHECK(chi.chi_deriv(1, y) == doctest::Approx(-2 * y * std::exp(-y * y)));
  }

  TEST_CASE("algebraic decay constant is honest") {
    const Regularizer chi = algebraic_regularizer();
    CHECK(chi.decay_class() == DecayClass::algebraic);
    for (double y = 0.5; y < 1e4; y *= 1.3) {
      CHECK(chi.chi(y) <= chi.decay_constant() * std::pow(y, -chi.decay_power()));
    }
    CHECK(default_regularizer().decay_class() == DecayClass::gaussian);
  }
}
