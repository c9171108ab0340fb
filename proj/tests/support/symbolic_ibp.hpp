#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <iterator>
#include <map>
#include <utility>

namespace testgen {

using Rational = boost::multiprecision::cpp_rational;

// Sum of c x^e f^{(j)} keyed by (e, j).
using SymbolicTerms = std::map<std::pair<Rational, int>, Rational>;

// g -> d/dx (x^{1-p} g), i.e. L* without its constant factor i/(lambda p),
// applied term by term with the product rule.
inline SymbolicTerms apply_dual_once(const SymbolicTerms& in, const Rational& p) {
  SymbolicTerms out;
  for (const auto& [key, c] : in) {
    const Rational e = key.first + 1 - p;
    const int j = key.second;
    if (e != 0) out[{e - 1, j}] += c * e;
    out[{e, j + 1}] += c;
  }
  for (auto it = out.begin(); it != out.end();) it = (it->second == 0) ? out.erase(it) : std::next(it);
  return out;
}

}  // namespace testgen
