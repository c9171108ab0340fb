#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <thread>
#include <utility>
#include <vector>

#include "../support/generators.hpp"
#include "../support/symbolic_ibp.hpp"
#include "oscphase/amplitude.hpp"
#include "oscphase/errors.hpp"
#include "oscphase/ibp.hpp"
#include "oscphase/jet.hpp"

using namespace oscphase;
using testgen::Rational;
using testgen::SymbolicTerms;
using testgen::apply_dual_once;

namespace {

Rational random_rational(testgen::Gen& g, int num_max, int den_max) {
  return Rational(g.integer(1, num_max)) / Rational(g.integer(1, den_max));
}

// Jet version of the same operator, applied numerically at a point.
Jet apply_dual_jet(const Jet& g, double p, double x0) {
  const Jet w = g * pow(Jet::variable(g.size(), x0), 1.0 - p);
  Jet d(w.size() - 1, 0.0);
  for (std::size_t k = 0; k + 1 < w.size(); ++k) d[k] = static_cast<double>(k + 1) * w[k + 1];
  return d;
}

}  // namespace

TEST_SUITE("ibp_operator") {
  TEST_CASE("recurrence equals brute-force symbolic application, exactly") {
    testgen::Gen g(2024);
    for (int sample = 0; sample < 100; ++sample) {
      const Rational p = random_rational(g, 30, 12);
      const Rational q = random_rational(g, 30, 12);
      CAPTURE(p.str());
      CAPTURE(q.str());
      const auto rows = ibp_recurrence<Rational>(p, q, 8);
      SymbolicTerms t{{{q - 1, 0}, Rational(1)}};
      for (int l = 1; l <= 8; ++l) {
        t = apply_dual_once(t, p);
        SymbolicTerms expected;
        for (int j = 0; j <= l; ++j) {
          const Rational& c = rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)];
          if (c != 0) expected[{q - 1 - p * l + j, j}] = c;
        }
        CHECK(t == expected);
      }
    }
  }

  TEST_CASE("double table matches the rational recurrence") {
    const Rational p(5, 2), q(7, 3);
    const auto rows = ibp_recurrence<Rational>(p, q, 8);
    const IbpTable t(2.5, 7.0 / 3.0, 8);
    for (int l = 0; l <= 8; ++l) {
      for (int j = 0; j <= l; ++j) {
        const double exact = static_cast<double>(rows[static_cast<std::size_t>(l)][static_cast<std::size_t>(j)]);
        CHECK(t(l, j) == doctest::Approx(exact).epsilon(1e-14));
      }
    }
  }

  TEST_CASE("boundary coefficients in closed form") {
    testgen::Gen g(77);
    for (int sample = 0; sample < 100; ++sample) {
      const double p = g.uniform(0.1, 6), q = g.uniform(0.1, 12);
      const IbpTable t(p, q, 20);
      double prod = 1.0;
      for (int l = 1; l <= 20; ++l) {
        prod *= q - p * l;
        CHECK(t(l, l) == 1.0);
        CHECK(std::abs(t(l, 0) - prod) <= 1e-12 * std::abs(prod));
      }
    }
  }

  TEST_CASE("exponent bookkeeping") {
    const IbpTable t(1.7, 0.4, 6);
    for (int l = 0; l <= 6; ++l) {
      for (int j = 0; j <= l; ++j) {
        CHECK(t.exponent(l, j) == doctest::Approx(0.4 - 1 - 1.7 * l + j));
        CHECK(t.exponent(l, j) == doctest::Approx((0.4 - 1) - (1.7 - 1) * l - (l - j)));
      }
    }
  }

  TEST_CASE("example rows") {
    // p = 2, q = 1: L* x^0 f -> (i/(2 lambda)) (-x^{-2} f + x^{-1} f')
    const IbpTable t(2, 1, 2);
    CHECK(t(1, 0) == -1.0);
    CHECK(t(1, 1) == 1.0);
    CHECK(t(2, 0) == 3.0);   // (1 - 4)(-1)
    CHECK(t(2, 1) == -3.0);  // (1 - 4 + 1)(1) + (-1)
    CHECK(t(2, 2) == 1.0);
    CHECK_THROWS_AS(t(3, 0), DomainError);
    CHECK_THROWS_AS(IbpTable(2, 1, -1), DomainError);
  }

  TEST_CASE("memoized tables are shared and thread safe") {
    const auto a = ibp_coefficients(1.25, 3.5, 7);
    const auto b = ibp_coefficients(1.25, 3.5, 7);
    CHECK(a.get() == b.get());
    std::vector<std::shared_ptr<const IbpTable>> got(8);
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < got.size(); ++i) {
      pool.emplace_back([&got, i] { got[i] = ibp_coefficients(0.9 + 0.01 * static_cast<double>(i % 2), 2.0, 5); });
    }
    for (auto& th : pool) th.join();
    for (std::size_t i = 2; i < got.size(); ++i) CHECK(got[i].get() == got[i % 2].get());
    CHECK((*got[0])(5, 2) == IbpTable(0.9, 2.0, 5)(5, 2));
  }

  TEST_CASE("depth parameters") {
    const DepthParams a = ibp_depth(2, 1, 0, -1);
    CHECK(a.l0 == 0);
    CHECK(a.l_pq == 1);
    const DepthParams b = ibp_depth(1, 2, 0, -1);
    CHECK(b.l0 == 1);
    CHECK(b.l_pq == 3);
    const DepthParams c = ibp_depth(0.5, 1.2, 0.0, -1.0);
    CHECK(c.l0 == 2);
    CHECK(c.l_pq == 3);  // floor(1.2 / 0.5) + 1
    CHECK_THROWS_AS(ibp_depth(1, 1, 0, 0), ClassError);
    CHECK_THROWS_AS(ibp_depth(0.5, 1, 0, -0.5), ClassError);
    CHECK_THROWS_AS(ibp_depth(0, 1, 0, -1), DomainError);
    CHECK(floor_strict(3.0) == 2);
    CHECK(floor_strict(3.0 + 1e-13) == 2);
    CHECK(floor_strict(2.5) == 2);
    CHECK(floor_strict(0.3) == 0);
    CHECK(floor_snapped(2.9999999999999) == 3);
    CHECK(floor_snapped(2.9) == 2);
  }

  TEST_CASE("prefactor") {
    CHECK(std::abs(ibp_prefactor(2, 5, 1, Sign::plus) - Complex(0, 0.1)) < 1e-17);
    CHECK(std::abs(ibp_prefactor(2, 5, 2, Sign::minus) - Complex(-0.01, 0)) < 1e-17);
    CHECK(ibp_prefactor(3, 1, 0, Sign::plus) == Complex(1, 0));
  }

  TEST_CASE("apply_ibp against jet differentiation") {
    const double p = 1.6, q = 0.8, lambda = 3.0;
    const Amplitude g = gaussian_amplitude();
    const Cutoff cut(2.0);
    for (int l = 1; l <= 5; ++l) {
      const auto table = ibp_coefficients(p, q, l);
      for (double x : {0.4, 1.3, 1.7, 2.5}) {
        for (bool with_cut : {false, true}) {
          const auto n = static_cast<std::size_t>(l) + 1;
          const Jet X = Jet::variable(n, x);
          Jet h = pow(X, q - 1) * exp(-(X * X));
          if (with_cut) h = h * cut.psi_jet(x, n);
          for (int s = 0; s < l; ++s) h = apply_dual_jet(h, p, x);
          const Complex expected = std::pow(Complex(0, 1.0 / (lambda * p)), l) * h.value();
          IbpIntegrand parts{g, std::nullopt, std::nullopt, 0.0};
          if (with_cut) parts.cutoff = cut;
          const Complex got = apply_ibp(*table, lambda, parts, x);
          CAPTURE(l);
          CAPTURE(x);
          CHECK(std::abs(got - expected) <= 1e-12 * std::max(1e-300, std::abs(expected)) + 1e-300);
          CHECK(apply_ibp(*table, lambda, parts, x, Sign::minus) == std::conj(got));
        }
      }
    }
  }

  TEST_CASE("apply_ibp decays at the certified rate") {
    const double p = 2.5, q = 1.5;
    for (const Amplitude& a : {rational_decay_amplitude(0.5), polynomial_gaussian_amplitude({1, 1}),
                               constant_one_amplitude()}) {
      for (int l = 1; l <= 6; ++l) {
        const auto table = ibp_coefficients(p, q, l);
        double envelope_const = 0.0;
        for (int j = 0; j <= l; ++j) envelope_const += std::abs((*table)(l, j)) * a.order_bound(j);
        for (double x = 1.0; x < 1e4; x *= 1.7) {
          const double v = std::abs(apply_ibp(*table, 1.0, {a, std::nullopt, std::nullopt, 0.0}, x));
          const double env = std::pow(x, q - 1 - (p - 1 - a.delta()) * l) * std::pow(std::sqrt(1 + x * x), a.tau()) *
                             std::pow(1 / p, l) * envelope_const * std::pow(std::sqrt(2.0), std::max(-a.tau(), 0.0));
          CHECK(v <= env * (1 + 1e-12));
        }
      }
    }
  }

  TEST_CASE("apply_ibp guards") {
    const auto table = ibp_coefficients(2, 1, 2);
    CHECK_THROWS_AS(apply_ibp(*table, 1.0, {gaussian_amplitude(), std::nullopt, std::nullopt, 0.0}, 0.0),
                    DomainError);
    CHECK_THROWS_AS(apply_ibp(*table, 0.0, {gaussian_amplitude(), std::nullopt, std::nullopt, 0.0}, 1.0),
                    DomainError);
    const auto deep = ibp_coefficients(2, 1, kBuiltinMaxOrder + 1);
    CHECK_THROWS_AS(apply_ibp(*deep, 1.0, {gaussian_amplitude(), std::nullopt, std::nullopt, 0.0}, 1.0),
                    OrderError);
  }
}
