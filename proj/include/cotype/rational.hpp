#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace cotype {

// Exact arithmetic scalar. mpq_class keeps values canonical (reduced, den > 0),
// which is exactly the invariant the serialization layer relies on.
using Rational = mpq_class;
using Integer = mpz_class;

// Always "num/den", canonical form, den > 0 (integers render as "5/1").
inline std::string to_fraction_string(const Rational& v) {
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// Accepts "num/den" or a bare integer string.
inline Rational rational_from_string(const std::string& s) {
  Rational v;
  if (v.set_str(s, 10) != 0)
    throw std::invalid_argument("not a rational: '" + s + "'");
  v.canonicalize();
  if (v.get_den() <= 0) throw std::invalid_argument("zero denominator: '" + s + "'");
  return v;
}

inline Rational rational_pow(const Rational& base, long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rational_pow: negative power of zero");
    return 1 / rational_pow(base, -e);
  }
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), base.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(out.get_den_mpz_t(), base.get_den_mpz_t(), static_cast<unsigned long>(e));
  return out;  // base canonical => powers canonical
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

inline Integer factorial(unsigned long n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline double to_double(const Rational& v) { return v.get_d(); }

// Scalar adapters shared by the exact/float instantiations of the measurement code.
template <class S>
inline S scalar_from_rational(const Rational& v);
template <>
inline Rational scalar_from_rational<Rational>(const Rational& v) { return v; }
template <>
inline double scalar_from_rational<double>(const Rational& v) { return v.get_d(); }

template <class S>
inline S scalar_from_count(std::uint64_t c) { return S(static_cast<double>(c)); }
template <>
inline Rational scalar_from_count<Rational>(std::uint64_t c) {
  Rational v;
  mpz_set_ui(v.get_num_mpz_t(), static_cast<unsigned long>(c));
  return v;
}

template <class S>
inline S scalar_abs(const S& v) { return v < 0 ? -v : v; }

template <class S>
inline S scalar_pow(const S& base, long e);
template <>
inline Rational scalar_pow<Rational>(const Rational& base, long e) { return rational_pow(base, e); }
template <>
inline double scalar_pow<double>(const double& base, long e) {
  if (e < 0) return 1.0 / scalar_pow<double>(base, -e);
  double out = 1.0, b = base;
  long n = e;
  for (; n > 0; n >>= 1, b *= b)
    if (n & 1) out *= b;
  return out;
}

}  // namespace cotype
