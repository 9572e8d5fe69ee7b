#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cotype/bernoulli.hpp"
#include "cotype/kernels.hpp"

namespace cotype {

// Coordinate counts of y ⊙ eps at the two extreme residues ±k.
struct KCounts {
  int pk = 0;  // coordinates == +k (mod m)
  int mk = 0;  // coordinates == -k (mod m)
  int pmk() const { return pk + mk; }
  int pMmk() const { return pk - mk; }
};

KCounts k_counts(const TorusShape& shape, long k, const long* y, const int* eps);

// All coordinates odd with |signed rep| <= k; (k+1)^n such points.
bool in_odd_box(const TorusShape& shape, long k, const long* z);

// b_{i,j}(z, eps): signed count over subsets S of size i and corner signs
// delta in {-1,1}^S with exactly j disagreements against eps on S of
//   1[z in delta*k + eps_{S^c} + L_{S^c}] - 1[z in delta*k - eps_{S^c} + L_{S^c}].
int b_bruteforce(const TorusShape& shape, long k, const long* z, const int* eps, int i, int j);

// a(z, eps) = sum_j eps_j (1[z in e_j + S(j,k)] - 1[z in -e_j + S(j,k)]).
int a_bruteforce(const TorusShape& shape, long k, const long* z, const int* eps);

// Closed form, valid on the odd box when i < pmk:
//   C(pmk - j, i - j)        if mk == j,
//   -C(pmk - (i-j), j)       if pk == i - j,
//   0                        otherwise.
int b_closed_form(const KCounts& counts, int i, int j);

struct IdentityReport {
  std::string identity;
  std::string domain;
  std::string mode;  // "exhaustive" or "sampled(seed=..,count=..)"
  std::uint64_t checked = 0;
  std::uint64_t failure_count = 0;
  std::vector<std::string> failures;  // first few, for the report
  bool ok() const { return failure_count == 0; }
};

// The box memberships only read signed representatives in [-k, k], so they are
// wraparound-free exactly when m >= 2k + 2 (m even).
void require_identity_domain(const SchemeParams& params);

// b == 0 whenever z is outside the odd box or i >= pmk; a == 0 off the box.
IdentityReport verify_vanishing(const SchemeParams& params, std::uint64_t budget, std::uint64_t seed);

// On the odd box: b matches the closed form for i < pmk, and a == pk - mk.
IdentityReport verify_closed_form(const SchemeParams& params, std::uint64_t budget, std::uint64_t seed);

// On the odd box: pk - mk == sum_{beta<=alpha<=n} h_{alpha,beta} b_{alpha,beta}
// with h drawn from the two-index Bernoulli table (needs table.N >= n).
IdentityReport verify_expansion(const SchemeParams& params, const BernoulliTable& table,
                                std::uint64_t budget, std::uint64_t seed);

// Precomputed integer tables of b, a and pk-mk for every (z, eps), shared
// across the per-function weighted-sum checks.
struct IdentityTables {
  SchemeParams params;
  std::vector<std::size_t> box_indices;  // odd-box points as torus indices
  std::vector<std::uint8_t> box_mark;    // [z]
  int pair_count;                        // number of (i,j) pairs, j <= i <= n
  std::vector<int> b;                    // [(mask * V + z) * pair_count + pair]
  std::vector<int> a;                    // [mask * V + z]
  std::vector<int> pm;                   // [mask * V + z], pk - mk of z ⊙ eps

  static int pair_index(int i, int j) { return i * (i + 1) / 2 + j; }
};

IdentityTables build_identity_tables(const SchemeParams& params);

// The three weighted-sum identities for a given exact function f:
//   "weighted-kernel":  sum_y a(y-x,eps) f(y) = k(k+1)^(n-1) sum_j eps_j (E_j f(x+e_j) - E_j f(x-e_j))
//   "weighted-count":   same right side against sum over x + box of (pk-mk)((y-x) ⊙ eps) f(y)
//   "weighted-b":       sum_y b_{i,j}(y-x,eps) f(y) = k^(n-i) sum_{S,delta} [D_B f(x+delta*k+eps') - D_B f(x+delta*k-eps')]
//   "box-restriction":  b and a vanish off the box, so sums restricted to x + box lose nothing
std::vector<IdentityReport> verify_weighted_sums(const IdentityTables& tables,
                                                 const TorusFunction<Rational>& f,
                                                 std::uint64_t budget, std::uint64_t seed);

std::vector<IdentityReport> verify_weighted_sums(const SchemeParams& params,
                                                 const TorusFunction<Rational>& f,
                                                 std::uint64_t budget, std::uint64_t seed);

}  // namespace cotype
