#pragma once

#include <cmath>
#include <stdexcept>

#include "cotype/rational.hpp"

namespace cotype {

inline constexpr int kPInfinity = 0;  // sentinel for the sup norm

// ell_p^d norm raised to the q-th power. Exact evaluation is possible only when
// ||v||_p^q is rational for every rational v: p in {1,inf} with integer q, or
// p = 2 with even q. Everything else runs in float mode.
struct NormSpec {
  int p = 2;
  double q = 2.0;

  NormSpec() = default;
  NormSpec(int p_, double q_) : p(p_), q(q_) {
    if (p != kPInfinity && p < 1) throw std::invalid_argument("NormSpec: p must be >= 1 or infinity");
    if (!(q >= 1.0)) throw std::invalid_argument("NormSpec: q must be >= 1");
  }

  bool q_integral() const { return q == static_cast<double>(static_cast<long>(q)); }
  long q_int() const {
    if (!q_integral()) throw std::domain_error("NormSpec: q is not an integer");
    return static_cast<long>(q);
  }
  bool exact_available() const {
    if (!q_integral()) return false;
    if (p == 1 || p == kPInfinity) return true;
    return p == 2 && q_int() % 2 == 0;
  }
};

inline Rational norm_q_power(const Rational* v, int d, const NormSpec& spec) {
  if (!spec.exact_available())
    throw std::domain_error("norm_q_power: (p,q) not exactly representable; use float mode");
  long q = spec.q_int();
  if (spec.p == 2) {
    Rational s = 0;
    for (int i = 0; i < d; ++i) s += v[i] * v[i];
    return rational_pow(s, q / 2);
  }
  Rational base = 0;
  if (spec.p == 1) {
    for (int i = 0; i < d; ++i) base += abs(v[i]);
  } else {  // sup norm
    for (int i = 0; i < d; ++i) {
      Rational a = abs(v[i]);
      if (a > base) base = a;
    }
  }
  return rational_pow(base, q);
}

inline double norm_q_power(const double* v, int d, const NormSpec& spec) {
  double base = 0.0;
  if (spec.p == 1) {
    for (int i = 0; i < d; ++i) base += std::fabs(v[i]);
  } else if (spec.p == kPInfinity) {
    for (int i = 0; i < d; ++i) base = std::max(base, std::fabs(v[i]));
  } else if (spec.p == 2) {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += v[i] * v[i];
    base = std::sqrt(s);
  } else {
    double s = 0.0;
    for (int i = 0; i < d; ++i) s += std::pow(std::fabs(v[i]), spec.p);
    base = std::pow(s, 1.0 / spec.p);
  }
  return std::pow(base, spec.q);
}

}  // namespace cotype
