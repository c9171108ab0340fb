#pragma once

#include <complex>
#include <numbers>

namespace oscphase {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;

// Sign of the phase: e^{+i lambda x^p} or e^{-i lambda x^p}.
enum class Sign : int { plus = 1, minus = -1 };

constexpr double to_double(Sign s) { return static_cast<double>(static_cast<int>(s)); }

constexpr Sign flip(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

// (+1)/(-1) raised to an integer power applied to a sign.
constexpr Sign times_parity(Sign s, int power) { return (power % 2 == 0) ? s : flip(s); }

constexpr char sign_token(Sign s) { return s == Sign::plus ? '+' : '-'; }

// Phase e^{sign * i * lambda * x^p}.
struct PhaseSpec {
  double p = 1.0;
  Sign sign = Sign::plus;
  double lambda = 1.0;
};

}  // namespace oscphase
