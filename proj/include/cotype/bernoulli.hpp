#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cotype/rational.hpp"

namespace cotype {

// Table of the two-index Bernoulli numbers B_{r,s}: coefficients of
// F(x,y) = (x-y) e^{x+y} / (e^x - e^y) with B_{r,s} = r! s! [x^r y^s] F.
struct BernoulliTable {
  int N = 0;
  std::vector<Rational> entries;  // (N+1) x (N+1), row-major in r

  const Rational& at(int r, int s) const {
    return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(N + 1) +
                   static_cast<std::size_t>(s)];
  }
  Rational& at(int r, int s) {
    return entries[static_cast<std::size_t>(r) * static_cast<std::size_t>(N + 1) +
                   static_cast<std::size_t>(s)];
  }
};

// Classical Bernoulli numbers. The two sign conventions differ only at index 1;
// both are exposed to keep the convention explicit at call sites.
std::vector<Rational> classical_bernoulli(int N);        // B_1 = +1/2, satisfies r = sum_{a<r} C(r,a) B_a
std::vector<Rational> classical_bernoulli_minus(int N);  // B_1 = -1/2, EGF u/(e^u - 1)

// Closed-form construction: factor F(x,y) = e^x * G(x-y) with G(u) = u/(e^u-1),
// giving B_{r,s} = r! s! (-1)^s sum_{t=s}^{r+s} Bminus_t C(t,s) / (t! (r+s-t)!).
BernoulliTable bivariate_bernoulli(int N);

// Independent route: the defining recursion
//   r - s = sum_{a<r} B_{a,s} C(r,a) - sum_{b<s} B_{r,b} C(s,b)
// checked for every (r,s) in the table.
struct RecursionCheck {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string first_failure;
};
RecursionCheck verify_bivariate_recursion(const BernoulliTable& table);

// max over the table of |B_{r,s}| 2^(r+s) / (r! s!).
Rational bernoulli_bound_ratio(const BernoulliTable& table);

// Header row/column of indices, entries as "num/den". Byte-stable.
std::string bernoulli_csv(const BernoulliTable& table);

// h_{alpha,beta} = B_{alpha-beta, beta}, the weights of the count expansion.
Rational expansion_coefficient(const BernoulliTable& table, int alpha, int beta);

// Float cross-check of the generating function against the truncated series.
double generating_function_value(double x, double y);
double truncated_series_value(const BernoulliTable& table, double x, double y);

}  // namespace cotype
