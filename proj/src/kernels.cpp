#include "cotype/kernels.hpp"

#include <map>

namespace cotype {

std::vector<long> even_offsets(long k) {
  std::vector<long> out;
  for (long v = -(k - 1); v <= k - 1; v += 2) out.push_back(v);
  return out;  // k values
}

std::vector<long> odd_offsets(long k) {
  std::vector<long> out;
  for (long v = -k; v <= k; v += 2) out.push_back(v);
  return out;  // k+1 values
}

Kernel kernel_from_box(const TorusShape& shape, std::vector<std::vector<long>> axis_offsets) {
  if (axis_offsets.size() != static_cast<std::size_t>(shape.n))
    throw std::invalid_argument("kernel_from_box: need one offset list per axis");
  std::size_t support = 1;
  for (const auto& offs : axis_offsets) {
    if (offs.empty()) throw std::invalid_argument("kernel_from_box: empty axis alphabet");
    support *= offs.size();
  }
  Kernel kernel;
  kernel.shape = shape;
  kernel.axis_offsets = std::move(axis_offsets);
  Rational w = Rational(1) / Rational(static_cast<long>(support));
  std::vector<std::size_t> idx(static_cast<std::size_t>(shape.n), 0);
  std::vector<long> coords(static_cast<std::size_t>(shape.n));
  kernel.atoms.reserve(support);
  for (;;) {
    for (int t = 0; t < shape.n; ++t)
      coords[static_cast<std::size_t>(t)] =
          kernel.axis_offsets[static_cast<std::size_t>(t)][idx[static_cast<std::size_t>(t)]];
    kernel.atoms.emplace_back(shape.encode(coords.data()), w);
    int t = shape.n - 1;
    while (t >= 0 && ++idx[static_cast<std::size_t>(t)] == kernel.axis_offsets[static_cast<std::size_t>(t)].size()) {
      idx[static_cast<std::size_t>(t)] = 0;
      --t;
    }
    if (t < 0) break;
  }
  std::sort(kernel.atoms.begin(), kernel.atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  return kernel;
}

Kernel smoothing_kernel(const SchemeParams& params, int j) {
  if (j < 0 || j >= params.n) throw std::invalid_argument("smoothing_kernel: axis out of range");
  std::vector<std::vector<long>> offs(static_cast<std::size_t>(params.n));
  for (int t = 0; t < params.n; ++t)
    offs[static_cast<std::size_t>(t)] = (t == j) ? even_offsets(params.k) : odd_offsets(params.k);
  return kernel_from_box(params.shape(), std::move(offs));
}

Kernel cube_average_kernel(const SchemeParams& params, std::uint32_t b_mask) {
  std::vector<std::vector<long>> offs(static_cast<std::size_t>(params.n));
  for (int t = 0; t < params.n; ++t)
    offs[static_cast<std::size_t>(t)] =
        (b_mask >> t) & 1u ? even_offsets(params.k) : std::vector<long>{0};
  return kernel_from_box(params.shape(), std::move(offs));
}

Kernel point_mass_kernel(const TorusShape& shape, const long* coords) {
  Kernel kernel;
  kernel.shape = shape;
  kernel.atoms.emplace_back(shape.encode(coords), Rational(1));
  std::vector<std::vector<long>> offs(static_cast<std::size_t>(shape.n));
  for (int t = 0; t < shape.n; ++t) offs[static_cast<std::size_t>(t)] = {coords[t]};
  kernel.axis_offsets = std::move(offs);
  return kernel;
}

std::vector<Kernel> scheme_kernels(const SchemeParams& params) {
  std::vector<Kernel> family;
  family.reserve(static_cast<std::size_t>(params.n));
  for (int j = 0; j < params.n; ++j) family.push_back(smoothing_kernel(params, j));
  return family;
}

std::vector<Rational> kernel_dense(const Kernel& kernel) {
  std::vector<Rational> table(kernel.shape.size(), Rational(0));
  for (const auto& [y, w] : kernel.atoms) table[y] += w;
  return table;
}

EdgeMeasure diagonal_edge_measure(const TorusShape& shape) {
  const int n = shape.n;
  Rational points = rational_pow(Rational(shape.m), n);
  Rational w_diag = Rational(1) / (rational_pow(Rational(2), n) * points) / 2;  // {-1,1}^n differences
  Rational w_axis = Rational(1) / (Rational(2 * n) * points) / 2;               // coordinate edges
  EdgeMeasure measure;
  measure.shape = shape;
  measure.weight = [n, w_diag, w_axis](const int* delta) {
    int nonzero = 0, last = -1;
    bool all_pm = true;
    for (int t = 0; t < n; ++t) {
      if (delta[t] == 0) {
        all_pm = false;
      } else {
        ++nonzero;
        last = t;
      }
    }
    Rational w = 0;
    if (all_pm) w += w_diag;
    if (nonzero == 1 && last >= 0) w += w_axis;
    return w;
  };
  return measure;
}

Rational edge_normalizer(int n, long k, int q) {
  Rational z = 0;
  Rational r = Rational(n) / Rational(k);
  for (int l = 0; l <= n; ++l) z += rational_pow(r, static_cast<long>(q) * l);
  return z;
}

EdgeMeasure graded_edge_measure(const SchemeParams& params) {
  const int n = params.n;
  Rational points = rational_pow(Rational(params.m), n);
  Rational z_norm = edge_normalizer(n, params.k, params.q);
  Rational ratio = Rational(n) / Rational(params.k);
  std::vector<Rational> by_zeros(static_cast<std::size_t>(n) + 1);
  for (int z = 0; z <= n; ++z) {
    Rational denom = rational_pow(Rational(2), n - z) * points * Rational(binomial(n, z));
    by_zeros[static_cast<std::size_t>(z)] =
        rational_pow(ratio, static_cast<long>(params.q) * z) / (z_norm * denom);
  }
  EdgeMeasure measure;
  measure.shape = params.shape();
  measure.weight = [n, by_zeros](const int* delta) {
    int zeros = 0;
    for (int t = 0; t < n; ++t) zeros += delta[t] == 0;
    return by_zeros[static_cast<std::size_t>(zeros)];
  };
  return measure;
}

EdgeMeasure mixture_measure(const EdgeMeasure& a, const EdgeMeasure& b) {
  if (!(a.shape == b.shape)) throw std::invalid_argument("mixture_measure: shape mismatch");
  EdgeMeasure measure;
  measure.shape = a.shape;
  auto wa = a.weight, wb = b.weight;
  measure.weight = [wa, wb](const int* delta) -> Rational {
    return Rational((wa(delta) + wb(delta)) / 2);
  };
  return measure;
}

Rational edge_measure_mass(const EdgeMeasure& measure) {
  const int n = measure.shape.n;
  std::size_t deltas = 1;
  for (int i = 0; i < n; ++i) deltas *= 3;
  std::vector<int> eps(static_cast<std::size_t>(n));
  Rational per_point = 0;
  for (std::size_t di = 0; di < deltas; ++di) {
    decode_mixed_signs(di, n, eps.data());
    per_point += measure.weight(eps.data());
  }
  return per_point * rational_pow(Rational(measure.shape.m), n);
}

}  // namespace cotype
