#pragma once

#include <cstdint>
#include <vector>

#include "cotype/cotype_metrics.hpp"
#include "cotype/kernels.hpp"
#include "cotype/torus_function.hpp"

namespace cotype {

// 12s-periodic plateau wave: 0 on [-s, s], slope 1 up to height s, flat at s
// until the descent to the wrap. 1-Lipschitz on the cycle whenever 12s | m.
long jigsaw_value(long t, long s);

bool jigsaw_periodic(long m, long s);

// x -> (g_s(x_1), ..., g_s(x_n)) into R^n (use with the sup norm).
TorusFunction<Rational> jigsaw_function(const TorusShape& shape, long s);

// Projection of a kernel onto one axis: mass per canonical residue (length m).
std::vector<Rational> axis_marginal(const Kernel& kernel, int axis);

// (1/n) sum_j sum_z |P_j(z+1) - P_j(z-1)| over the j-th kernel's j-th marginal.
// Point mass -> 2; uniform on the cycle -> 0.
Rational marginal_variation(const std::vector<Kernel>& family);

// (1/n) sum_j P_j(|z| > s), signed representatives.
Rational tail_mass(const std::vector<Kernel>& family, long s);

// Smoothing numerator of the scaled point mass x -> m^n 1_{y=x} viewed in
// L_1(Z_m^n, uniform): E_eps [ ( sum_z | sum_j eps_j (nu_j(z+e_j) - nu_j(z-e_j)) | )^q ].
// Independent of the base point, so computed once.
Rational delta_smoothing_value(const std::vector<Kernel>& family, int q);

// Moments of Z = sum_j sign(y_j) 1_{|y_j|=k} with y uniform on the odd box:
// each coordinate contributes -1/0/+1 with weights 1/(k-1)/1 over k+1.
struct MomentReport {
  int n;
  long k;
  Rational p;         // 2/(k+1), the per-coordinate hit probability
  Rational abs_mean;  // E|Z|
  Rational second;    // E[Z^2] = n p
  Rational fourth;    // E[Z^4] = n p + 3 n (n-1) p^2
};

MomentReport abs_sum_moments(int n, long k);      // O(n^2) coordinate DP
MomentReport abs_sum_enumeration(int n, long k);  // brute force over the box

Rational moment2_closed_form(int n, long k);
Rational moment4_closed_form(int n, long k);

// min(sqrt(np), np)/2 <= E|Z| <= min(sqrt(np), np), verified with squared
// comparisons so everything stays rational.
struct BandCheck {
  bool lower_ok = false;
  bool upper_ok = false;
};
BandCheck moment_band_check(const MomentReport& report);

// Pushforward of a kernel under y -> y^{pi^-1}, i.e. atom coordinates move as
// c'_{pi[i]} = c_i.
Kernel permute_kernel(const Kernel& kernel, const std::vector<int>& pi);

// nu_bar_j = (1/n!) sum_pi (nu_{pi[j]})^{pi^-1}; the box smoothing family is a
// fixed point of this averaging.
std::vector<Kernel> symmetrize(const std::vector<Kernel>& family);

// Seeded family of n probability kernels with `atoms` random atoms each and
// random positive rational weights (normalized). No product structure.
std::vector<Kernel> random_kernel_family(const TorusShape& shape, std::uint64_t seed, int atoms = 4);

// The two structural properties of a symmetrized family, verified exactly:
// swapping axes j and h maps nu_bar_h to nu_bar_j, and the marginals of
// nu_bar_i on any two axes other than i agree.
bool symmetrized_transposition_covariant(const std::vector<Kernel>& symmetrized);
bool symmetrized_marginals_equal(const std::vector<Kernel>& symmetrized);

// f^pi(x) = f(x^pi) with (x^pi)_i = x_{pi[i]}.
template <class S>
TorusFunction<S> permute_function(const TorusFunction<S>& f, const std::vector<int>& pi) {
  if (static_cast<int>(pi.size()) != f.shape.n)
    throw std::invalid_argument("permute_function: permutation size mismatch");
  TorusFunction<S> out(f.shape, f.d);
  const int n = f.shape.n;
  const int d = f.d;
  std::vector<long> c(static_cast<std::size_t>(n)), pc(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < f.shape.size(); ++x) {
    f.shape.decode(x, c.data());
    for (int i = 0; i < n; ++i) pc[static_cast<std::size_t>(i)] = c[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])];
    const S* src = f.at(f.shape.encode(pc.data()));
    S* dst = out.at(x);
    for (int i = 0; i < d; ++i) dst[i] = src[i];
  }
  return out;
}

// (1/n) sum_j mean ||f * nu_j - f||^q for an arbitrary kernel family.
template <class S>
S family_approx_numerator(const TorusFunction<S>& f, const std::vector<Kernel>& family,
                          const NormSpec& spec) {
  if (family.empty()) throw std::invalid_argument("family_approx_numerator: empty family");
  S total{};
  for (const Kernel& nu : family) {
    TorusFunction<S> g = nu.is_product() ? convolve_product(f, nu) : convolve(f, nu);
    total += mean_norm_q_difference(g, f, spec);
  }
  return total / scalar_from_count<S>(family.size());
}

}  // namespace cotype
