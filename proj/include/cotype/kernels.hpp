#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "cotype/torus_function.hpp"

namespace cotype {

// Parameter pack for the smoothing scheme on Z_m^n: side m (even), kernel
// radius k (odd, k < m/2), exponent q (integer >= 1 so every weight and every
// norm power stays rational).
struct SchemeParams {
  int n;
  long m;
  long k;
  int q;

  SchemeParams(int n_, long m_, long k_, int q_) : n(n_), m(m_), k(k_), q(q_) {
    if (n < 1) throw std::invalid_argument("SchemeParams: n must be >= 1");
    if (m < 2 || m % 2 != 0) throw std::invalid_argument("SchemeParams: m must be even and >= 2");
    if (k < 1 || k % 2 == 0) throw std::invalid_argument("SchemeParams: k must be odd and >= 1");
    if (2 * k >= m) throw std::invalid_argument("SchemeParams: k must satisfy k < m/2");
    if (q < 1) throw std::invalid_argument("SchemeParams: q must be >= 1");
  }

  TorusShape shape() const { return TorusShape(n, m); }
};

// Finitely supported probability measure on Z_m^n. Atoms are kept sorted by
// index. Uniform product-box kernels additionally carry their per-axis offset
// lists, which enables the separable convolution path.
struct Kernel {
  TorusShape shape{1, 2};
  std::vector<std::pair<std::size_t, Rational>> atoms;
  std::vector<std::vector<long>> axis_offsets;  // nonempty iff uniform product box

  bool is_product() const { return !axis_offsets.empty(); }

  Rational mass() const {
    Rational s = 0;
    for (const auto& a : atoms) s += a.second;
    return s;
  }

  Rational at(std::size_t index) const {
    auto it = std::lower_bound(atoms.begin(), atoms.end(), index,
                               [](const auto& a, std::size_t v) { return a.first < v; });
    if (it != atoms.end() && it->first == index) return it->second;
    return Rational(0);
  }
};

// Uniform probability measure on the product box prod_t (offsets[t]).
Kernel kernel_from_box(const TorusShape& shape, std::vector<std::vector<long>> axis_offsets);

// Even residues in [-(k-1), k-1] (k of them) and odd residues in [-k, k]
// (k+1 of them) -- the two coordinate alphabets of the scheme's kernels.
std::vector<long> even_offsets(long k);
std::vector<long> odd_offsets(long k);

// Uniform kernel on {y in [-k,k]^n : y_j even, y_t odd for t != j};
// support size k * (k+1)^(n-1).
Kernel smoothing_kernel(const SchemeParams& params, int j);

// Uniform kernel on {y : y_t even, |y_t| < k for t in B, y_t = 0 otherwise};
// support size k^|B|. B is a bit mask over the axes.
Kernel cube_average_kernel(const SchemeParams& params, std::uint32_t b_mask);

Kernel point_mass_kernel(const TorusShape& shape, const long* coords);

std::vector<Kernel> scheme_kernels(const SchemeParams& params);

// Dense table of a kernel (index -> weight), for equality tests.
std::vector<Rational> kernel_dense(const Kernel& kernel);

// (f * nu)(x) = sum_y nu(y) f(x - y), atom by atom.
template <class S>
TorusFunction<S> convolve(const TorusFunction<S>& f, const Kernel& kernel) {
  if (!(f.shape == kernel.shape)) throw std::invalid_argument("convolve: shape mismatch");
  TorusFunction<S> out(f.shape, f.d);
  const int d = f.d;
  chunked_mapreduce(
      f.shape.size(), 0,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
          S* ox = out.at(x);
          for (const auto& [y, w] : kernel.atoms) {
            const S* fy = f.at(f.shape.sub(x, y));
            S ws = scalar_from_rational<S>(w);
            for (int i = 0; i < d; ++i) ox[i] += ws * fy[i];
          }
        }
        return 0;
      },
      [](int a, int) { return a; });
  return out;
}

// Separable path for uniform product-box kernels: one averaging pass per axis.
// Exact arithmetic makes it equal to `convolve` atom re-association and all.
template <class S>
TorusFunction<S> convolve_product(const TorusFunction<S>& f, const Kernel& kernel) {
  if (!kernel.is_product()) throw std::invalid_argument("convolve_product: kernel has no product form");
  if (!(f.shape == kernel.shape)) throw std::invalid_argument("convolve_product: shape mismatch");
  const int d = f.d;
  TorusFunction<S> cur = f;
  for (int axis = 0; axis < f.shape.n; ++axis) {
    const auto& offs = kernel.axis_offsets[static_cast<std::size_t>(axis)];
    if (offs.size() == 1 && offs[0] == 0) continue;
    TorusFunction<S> next(f.shape, d);
    S inv = scalar_from_rational<S>(Rational(1) / Rational(static_cast<long>(offs.size())));
    chunked_mapreduce(
        f.shape.size(), 0,
        [&](std::size_t b, std::size_t e) {
          for (std::size_t x = b; x < e; ++x) {
            S* nx = next.at(x);
            for (long off : offs) {
              const S* cy = cur.at(f.shape.shift(x, axis, -off));
              for (int i = 0; i < d; ++i) nx[i] += cy[i];
            }
            for (int i = 0; i < d; ++i) nx[i] *= inv;
          }
          return 0;
        },
        [](int a, int) { return a; });
    cur = std::move(next);
  }
  return cur;
}

// E_j f: average of f over the translated box x + S(j,k).
template <class S>
TorusFunction<S> smooth(const TorusFunction<S>& f, const SchemeParams& params, int j) {
  return convolve_product(f, smoothing_kernel(params, j));
}

// Delta_B f: average of f over the translated cube x + L_B.
template <class S>
TorusFunction<S> cube_average(const TorusFunction<S>& f, const SchemeParams& params, std::uint32_t b_mask) {
  return convolve_product(f, cube_average_kernel(params, b_mask));
}

// Measure on ordered pairs (x, x+delta), delta in {-1,0,1}^n, with weight
// independent of x (all the edge measures used here are translation invariant).
struct EdgeMeasure {
  TorusShape shape{1, 2};
  std::function<Rational(const int* delta)> weight;
};

// Half uniform-on-{-1,1}^n-difference pairs, half uniform on the 2n m^n
// coordinate edges (x, x +- e_j).
EdgeMeasure diagonal_edge_measure(const TorusShape& shape);

// Normalizer Z = sum_{l=0}^{n} (n/k)^{q l}.
Rational edge_normalizer(int n, long k, int q);

// Weight (1/Z) (n/k)^{q z} / (2^(n-z) m^n C(n,z)) on an ordered pair whose
// difference has z zero coordinates (the diagonal included in the mass).
EdgeMeasure graded_edge_measure(const SchemeParams& params);

EdgeMeasure mixture_measure(const EdgeMeasure& a, const EdgeMeasure& b);

// Total mass m^n sum_delta w(delta) (diagonal included).
Rational edge_measure_mass(const EdgeMeasure& measure);

// sum over ordered pairs of w * ||f(x+delta) - f(x)||^q.
template <class S>
S edge_energy(const TorusFunction<S>& f, const EdgeMeasure& measure, const NormSpec& spec) {
  if (!(f.shape == measure.shape)) throw std::invalid_argument("edge_energy: shape mismatch");
  const TorusShape& shape = f.shape;
  std::size_t deltas = 1;
  for (int i = 0; i < shape.n; ++i) deltas *= 3;
  std::vector<int> eps(static_cast<std::size_t>(shape.n));
  std::vector<long> dc(static_cast<std::size_t>(shape.n));
  S total{};
  for (std::size_t di = 0; di < deltas; ++di) {
    decode_mixed_signs(di, shape.n, eps.data());
    bool zero = true;
    for (int t = 0; t < shape.n; ++t) {
      zero = zero && eps[static_cast<std::size_t>(t)] == 0;
      dc[static_cast<std::size_t>(t)] = eps[static_cast<std::size_t>(t)];
    }
    if (zero) continue;  // diagonal contributes no energy
    Rational w = measure.weight(eps.data());
    if (w == 0) continue;
    std::size_t h = shape.encode(dc.data());
    S sum_x = chunked_mapreduce(
        shape.size(), S{},
        [&](std::size_t b, std::size_t e) {
          S acc{};
          std::vector<S> diff(static_cast<std::size_t>(f.d));
          for (std::size_t x = b; x < e; ++x) {
            const S* fy = f.at(shape.add(x, h));
            const S* fx = f.at(x);
            for (int i = 0; i < f.d; ++i) diff[static_cast<std::size_t>(i)] = fy[i] - fx[i];
            acc += norm_q_power(diff.data(), f.d, spec);
          }
          return acc;
        },
        [](S a, S b) { a += b; return a; });
    total += scalar_from_rational<S>(w) * sum_x;
  }
  return total;
}

}  // namespace cotype
