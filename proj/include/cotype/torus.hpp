#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace cotype {

// Canonical representative in [0, m).
inline long mod_reduce(long v, long m) {
  long r = v % m;
  return r < 0 ? r + m : r;
}

// Signed representative in [-floor(m/2), ceil(m/2) - 1].
inline long signed_rep(long v, long m) {
  long r = mod_reduce(v, m);
  return r >= (m + 1) / 2 ? r - m : r;
}

// Distance to 0 on the cycle: min(r, m - r).
inline long torus_abs(long v, long m) {
  long r = mod_reduce(v, m);
  return r <= m - r ? r : m - r;
}

// Index layout for Z_m^n: row-major, coordinate 0 most significant, so
// index = sum_i x_i * m^(n-1-i) with canonical representatives.
struct TorusShape {
  int n = 1;
  long m = 2;
  std::size_t volume = 2;

  TorusShape() = default;
  TorusShape(int n_, long m_) : n(n_), m(m_) {
    if (n < 1) throw std::invalid_argument("TorusShape: n must be >= 1");
    if (m < 1) throw std::invalid_argument("TorusShape: m must be >= 1");
    volume = 1;
    for (int i = 0; i < n; ++i) {
      if (volume > (static_cast<std::size_t>(1) << 62) / static_cast<std::size_t>(m))
        throw std::invalid_argument("TorusShape: m^n overflows the index space");
      volume *= static_cast<std::size_t>(m);
    }
  }

  std::size_t size() const { return volume; }
  bool operator==(const TorusShape& o) const { return n == o.n && m == o.m; }

  void decode(std::size_t index, long* coords) const {
    for (int i = n - 1; i >= 0; --i) {
      coords[i] = static_cast<long>(index % static_cast<std::size_t>(m));
      index /= static_cast<std::size_t>(m);
    }
  }

  std::size_t encode(const long* coords) const {
    std::size_t index = 0;
    for (int i = 0; i < n; ++i)
      index = index * static_cast<std::size_t>(m) + static_cast<std::size_t>(mod_reduce(coords[i], m));
    return index;
  }

  long coord(std::size_t index, int axis) const {
    std::size_t s = stride(axis);
    return static_cast<long>((index / s) % static_cast<std::size_t>(m));
  }

  std::size_t stride(int axis) const {
    std::size_t s = 1;
    for (int i = axis + 1; i < n; ++i) s *= static_cast<std::size_t>(m);
    return s;
  }

  // index of x + delta * e_axis
  std::size_t shift(std::size_t index, int axis, long delta) const {
    std::size_t s = stride(axis);
    long c = static_cast<long>((index / s) % static_cast<std::size_t>(m));
    long nc = mod_reduce(c + delta, m);
    return index + (static_cast<std::size_t>(nc) - static_cast<std::size_t>(c)) * s;
  }

  // pointwise sum / difference of two points given by index
  std::size_t add(std::size_t a, std::size_t b) const {
    std::size_t out = 0, mm = static_cast<std::size_t>(m);
    std::size_t place = 1;
    for (int i = 0; i < n; ++i) place *= mm;
    for (int i = 0; i < n; ++i) {
      place /= mm;
      std::size_t da = (a / place) % mm, db = (b / place) % mm;
      std::size_t dc = da + db;
      if (dc >= mm) dc -= mm;
      out = out * mm + dc;
    }
    return out;
  }

  std::size_t sub(std::size_t a, std::size_t b) const {
    std::size_t out = 0, mm = static_cast<std::size_t>(m);
    std::size_t place = 1;
    for (int i = 0; i < n; ++i) place *= mm;
    for (int i = 0; i < n; ++i) {
      place /= mm;
      std::size_t da = (a / place) % mm, db = (b / place) % mm;
      std::size_t dc = da + mm - db;
      if (dc >= mm) dc -= mm;
      out = out * mm + dc;
    }
    return out;
  }

  std::size_t negate(std::size_t a) const { return sub(0, a); }
};

// Sign vector eps in {-1,1}^n encoded as a bit mask (bit t set -> eps_t = -1).
inline int sign_at(std::uint32_t mask, int t) { return (mask >> t) & 1u ? -1 : 1; }

inline void decode_signs(std::uint32_t mask, int n, int* eps) {
  for (int t = 0; t < n; ++t) eps[t] = sign_at(mask, t);
}

// Mixed sign vector in {-1,0,1}^n from a base-3 index (digit 0/1/2 -> -1/0/+1).
inline void decode_mixed_signs(std::size_t index, int n, int* eps) {
  for (int t = n - 1; t >= 0; --t) {
    eps[t] = static_cast<int>(index % 3) - 1;
    index /= 3;
  }
}

// Coordinatewise product of signed representatives with a sign vector.
inline std::vector<long> odot(const TorusShape& shape, const long* x, const int* eps) {
  std::vector<long> out(static_cast<std::size_t>(shape.n));
  for (int t = 0; t < shape.n; ++t) out[static_cast<std::size_t>(t)] = signed_rep(x[t], shape.m) * eps[t];
  return out;
}

inline std::vector<int> identity_permutation(int n) {
  std::vector<int> pi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = i;
  return pi;
}

inline std::vector<int> inverse_permutation(const std::vector<int>& pi) {
  std::vector<int> inv(pi.size());
  for (std::size_t i = 0; i < pi.size(); ++i) inv[static_cast<std::size_t>(pi[i])] = static_cast<int>(i);
  return inv;
}

}  // namespace cotype
