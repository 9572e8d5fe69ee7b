#include "cotype/bernoulli.hpp"

#include <cmath>
#include <sstream>

namespace cotype {

std::vector<Rational> classical_bernoulli_minus(int N) {
  if (N < 0) throw std::invalid_argument("classical_bernoulli_minus: N must be >= 0");
  std::vector<Rational> b(static_cast<std::size_t>(N) + 1);
  b[0] = 1;
  for (int t = 1; t <= N; ++t) {
    Rational s = 0;  // sum_{j<t} C(t+1,j) B_j = -C(t+1,t) B_t
    for (int j = 0; j < t; ++j) s += Rational(binomial(static_cast<unsigned long>(t) + 1,
                                                       static_cast<unsigned long>(j))) *
                                     b[static_cast<std::size_t>(j)];
    b[static_cast<std::size_t>(t)] = -s / Rational(static_cast<long>(t) + 1);
  }
  return b;
}

std::vector<Rational> classical_bernoulli(int N) {
  // first convention: only index 1 flips sign
  std::vector<Rational> b = classical_bernoulli_minus(N);
  if (N >= 1) b[1] = -b[1];
  return b;
}

BernoulliTable bivariate_bernoulli(int N) {
  if (N < 0) throw std::invalid_argument("bivariate_bernoulli: N must be >= 0");
  std::vector<Rational> bm = classical_bernoulli_minus(2 * N);
  BernoulliTable table;
  table.N = N;
  table.entries.assign(static_cast<std::size_t>(N + 1) * static_cast<std::size_t>(N + 1), Rational(0));
  for (int r = 0; r <= N; ++r) {
    for (int s = 0; s <= N; ++s) {
      Rational sum = 0;
      for (int t = s; t <= r + s; ++t) {
        Rational term = bm[static_cast<std::size_t>(t)] *
                        Rational(binomial(static_cast<unsigned long>(t), static_cast<unsigned long>(s)));
        term /= Rational(factorial(static_cast<unsigned long>(t)));
        term /= Rational(factorial(static_cast<unsigned long>(r + s - t)));
        sum += term;
      }
      Rational value = Rational(factorial(static_cast<unsigned long>(r))) *
                       Rational(factorial(static_cast<unsigned long>(s))) * sum;
      if (s % 2 != 0) value = -value;
      table.at(r, s) = value;
    }
  }
  return table;
}

RecursionCheck verify_bivariate_recursion(const BernoulliTable& table) {
  RecursionCheck check;
  for (int r = 0; r <= table.N; ++r) {
    for (int s = 0; s <= table.N; ++s) {
      Rational rhs = 0;
      for (int a = 0; a < r; ++a)
        rhs += table.at(a, s) * Rational(binomial(static_cast<unsigned long>(r),
                                                  static_cast<unsigned long>(a)));
      for (int b = 0; b < s; ++b)
        rhs -= table.at(r, b) * Rational(binomial(static_cast<unsigned long>(s),
                                                  static_cast<unsigned long>(b)));
      ++check.checked;
      if (rhs != Rational(r - s)) {
        check.ok = false;
        if (check.first_failure.empty()) {
          std::ostringstream os;
          os << "(r,s)=(" << r << "," << s << "): got " << to_fraction_string(rhs)
             << ", want " << (r - s);
          check.first_failure = os.str();
        }
      }
    }
  }
  return check;
}

Rational bernoulli_bound_ratio(const BernoulliTable& table) {
  Rational best = 0;
  for (int r = 0; r <= table.N; ++r) {
    for (int s = 0; s <= table.N; ++s) {
      Rational v = abs(table.at(r, s)) * rational_pow(Rational(2), r + s);
      v /= Rational(factorial(static_cast<unsigned long>(r)));
      v /= Rational(factorial(static_cast<unsigned long>(s)));
      if (v > best) best = v;
    }
  }
  return best;
}

std::string bernoulli_csv(const BernoulliTable& table) {
  std::ostringstream os;
  os << "r\\s";
  for (int s = 0; s <= table.N; ++s) os << "," << s;
  os << "\n";
  for (int r = 0; r <= table.N; ++r) {
    os << r;
    for (int s = 0; s <= table.N; ++s) os << "," << to_fraction_string(table.at(r, s));
    os << "\n";
  }
  return os.str();
}

Rational expansion_coefficient(const BernoulliTable& table, int alpha, int beta) {
  if (beta < 0 || beta > alpha || alpha - beta > table.N || beta > table.N)
    throw std::invalid_argument("expansion_coefficient: index out of table range");
  return table.at(alpha - beta, beta);
}

double generating_function_value(double x, double y) {
  if (x == y) throw std::invalid_argument("generating_function_value: x == y hits the removable singularity");
  return (x - y) * std::exp(x + y) / (std::exp(x) - std::exp(y));
}

double truncated_series_value(const BernoulliTable& table, double x, double y) {
  double sum = 0.0;
  double rfac = 1.0;  // r!
  for (int r = 0; r <= table.N; ++r) {
    if (r > 0) rfac *= r;
    double sfac = 1.0;  // s!
    for (int s = 0; s <= table.N; ++s) {
      if (s > 0) sfac *= s;
      sum += table.at(r, s).get_d() * std::pow(x, r) * std::pow(y, s) / (rfac * sfac);
    }
  }
  return sum;
}

}  // namespace cotype
