#pragma once

#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "oscphase/amplitude.hpp"
#include "oscphase/types.hpp"

namespace oscphase {

// C_{l,j} from C_{l,j} = (q - p l + j) C_{l-1,j} + C_{l-1,j-1}, C_{0,0} = 1.
// Generic in the scalar so tests can run it in exact rational arithmetic.
template <class T>
std::vector<std::vector<T>> ibp_recurrence(const T& p, const T& q, int l) {
  std::vector<std::vector<T>> rows;
  rows.reserve(static_cast<std::size_t>(l) + 1);
  rows.push_back({T(1)});
  for (int lp = 1; lp <= l; ++lp) {
    const auto& prev = rows.back();
    std::vector<T> row(static_cast<std::size_t>(lp) + 1, T(0));
    for (int j = 0; j <= lp; ++j) {
      const auto sj = static_cast<std::size_t>(j);
      if (j < lp) row[sj] = (q - p * T(lp) + T(j)) * prev[sj];
      if (j > 0) row[sj] = row[sj] + prev[sj - 1];
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Coefficients of L*^{l'} (x^{q-1} f) = (sign i/(lambda p))^{l'} sum_j C_{l',j} x^{q-1-pl'+j} f^{(j)}
// for every l' <= l. Independent of lambda and of the sign.
class IbpTable {
 public:
  IbpTable(double p, double q, int l);

  double p() const { return p_; }
  double q() const { return q_; }
  int l() const { return l_; }
  double operator()(int lp, int j) const;
  std::span<const double> row(int lp) const;
  // Power of x multiplying f^{(j)} at depth lp.
  double exponent(int lp, int j) const { return q_ - 1.0 - p_ * lp + j; }

 private:
  double p_;
  double q_;
  int l_;
  std::vector<std::vector<double>> rows_;
};

// Memoized per (p, q, l); safe to call from several threads.
std::shared_ptr<const IbpTable> ibp_coefficients(double p, double q, int l);

struct DepthParams {
  int l0 = 0;    // greatest integer strictly below q/p
  int l_pq = 1;  // floor((q + tau)^+ / (p - 1 - delta)) + 1
  double tau = 0.0;
  double delta = 0.0;
};

// ClassError when delta >= p - 1.
DepthParams ibp_depth(double p, double q, double tau, double delta);

// Greatest integer strictly below v; values within 1e-12 of an integer snap to it.
int floor_strict(double v);
// floor(v) with the same snapping.
int floor_snapped(double v);

// (sign i / (lambda p))^l.
Complex ibp_prefactor(double p, double lambda, int l, Sign sign);

// The factors multiplying x^{q-1}: a, optionally psi = 1 - phi and chi(eps x).
struct IbpIntegrand {
  Amplitude amplitude;
  std::optional<Cutoff> cutoff;
  std::optional<Regularizer> regularizer;
  double eps = 0.0;
};

// sum_j C_{l,j} x^{q-1-pl+j} (a psi chi_eps)^{(j)}(x) at the table's full depth,
// i.e. L*^l without its prefactor. Real for real amplitudes.
double ibp_density(const IbpTable& table, const IbpIntegrand& parts, double x);

// L*^l (x^{q-1} a psi chi_eps) at x > 0. OrderError when the amplitude cannot
// supply l derivatives.
Complex apply_ibp(const IbpTable& table, double lambda, const IbpIntegrand& parts, double x,
                  Sign sign = Sign::plus);

}  // namespace oscphase
