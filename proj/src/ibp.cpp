#include "oscphase/ibp.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <tuple>

#include "oscphase/errors.hpp"

namespace oscphase {

namespace {

constexpr double kSnap = 1e-12;

using CacheKey = std::tuple<std::uint64_t, std::uint64_t, int>;

struct TableCache {
  std::shared_mutex mutex;
  std::map<CacheKey, std::shared_ptr<const IbpTable>> tables;
};

TableCache& cache() {
  static TableCache c;
  return c;
}

}  // namespace

IbpTable::IbpTable(double p, double q, int l) : p_(p), q_(q), l_(l) {
  if (l < 0) throw DomainError("ibp_coefficients: l must be >= 0");
  rows_ = ibp_recurrence<double>(p, q, l);
}

double IbpTable::operator()(int lp, int j) const {
  if (lp < 0 || lp > l_ || j < 0 || j > lp) throw DomainError("IbpTable: index out of range");
  return rows_[static_cast<std::size_t>(lp)][static_cast<std::size_t>(j)];
}

std::span<const double> IbpTable::row(int lp) const {
  if (lp < 0 || lp > l_) throw DomainError("IbpTable: row out of range");
  return rows_[static_cast<std::size_t>(lp)];
}

std::shared_ptr<const IbpTable> ibp_coefficients(double p, double q, int l) {
  const CacheKey key{std::bit_cast<std::uint64_t>(p), std::bit_cast<std::uint64_t>(q), l};
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    if (auto it = c.tables.find(key); it != c.tables.end()) return it->second;
  }
  auto table = std::make_shared<const IbpTable>(p, q, l);
  std::unique_lock lock(c.mutex);
  return c.tables.emplace(key, std::move(table)).first->second;
}

int floor_snapped(double v) {
  const double n = std::round(v);
  if (std::abs(v - n) <= kSnap * std::max(1.0, std::abs(v))) return static_cast<int>(n);
  return static_cast<int>(std::floor(v));
}

int floor_strict(double v) {
  const double n = std::round(v);
  if (std::abs(v - n) <= kSnap * std::max(1.0, std::abs(v))) return static_cast<int>(n) - 1;
  return static_cast<int>(std::floor(v));
}

DepthParams ibp_depth(double p, double q, double tau, double delta) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("ibp_depth: p and q must be > 0");
  const double gap = p - 1.0 - delta;
  if (!(gap > 0.0)) {
    throw ClassError("ibp_depth: amplitude class delta must be < p - 1");
  }
  DepthParams d;
  d.tau = tau;
  d.delta = delta;
  d.l0 = std::max(0, floor_strict(q / p));
  d.l_pq = floor_snapped(std::max(q + tau, 0.0) / gap) + 1;
  return d;
}

Complex ibp_prefactor(double p, double lambda, int l, Sign sign) {
  const Complex base(0.0, to_double(sign) / (lambda * p));
  Complex r(1.0, 0.0);
  for (int i = 0; i < l; ++i) r *= base;
  return r;
}

double ibp_density(const IbpTable& table, const IbpIntegrand& parts, double x) {
  if (!(x > 0.0)) throw DomainError("apply_ibp: x must be > 0");
  const int l = table.l();
  const auto n = static_cast<std::size_t>(l) + 1;
  std::vector<double> d(n);
  parts.amplitude.derivatives(x, d);

  const bool plain_cutoff = !parts.cutoff || std::abs(x) >= parts.cutoff->r();
  if (!plain_cutoff || parts.regularizer) {
    Jet prod(n, 0.0);
    double fact = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 1) fact *= static_cast<double>(k);
      prod[k] = d[k] / fact;
    }
    if (!plain_cutoff) prod = prod * parts.cutoff->psi_jet(x, n);
    if (parts.regularizer) prod = prod * parts.regularizer->scaled_jet(x, parts.eps, n);
    prod.derivatives(d);
  }

  const auto row = table.row(l);
  double sum = 0.0;
  for (int j = 0; j <= l; ++j) {
    const auto sj = static_cast<std::size_t>(j);
    if (row[sj] == 0.0 || d[sj] == 0.0) continue;
    sum += row[sj] * std::pow(x, table.exponent(l, j)) * d[sj];
  }
  return sum;
}

Complex apply_ibp(const IbpTable& table, double lambda, const IbpIntegrand& parts, double x,
                  Sign sign) {
  if (!(lambda > 0.0)) throw DomainError("apply_ibp: lambda must be > 0");
  return ibp_prefactor(table.p(), lambda, table.l(), sign) * ibp_density(table, parts, x);
}

}  // namespace oscphase
