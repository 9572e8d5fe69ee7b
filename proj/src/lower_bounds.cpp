#include "cotype/lower_bounds.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace cotype {

long jigsaw_value(long t, long s) {
  if (s < 1) throw std::invalid_argument("jigsaw_value: s must be >= 1");
  long period = 12 * s;
  long r = mod_reduce(t, period);
  if (r >= 6 * s) r -= period;  // representative in [-6s, 6s)
  long a = (r < 0 ? -r : r) - s;
  return std::clamp(a, 0L, s);
}

bool jigsaw_periodic(long m, long s) { return m % (12 * s) == 0; }

TorusFunction<Rational> jigsaw_function(const TorusShape& shape, long s) {
  if (s < 1) throw std::invalid_argument("jigsaw_function: s must be >= 1");
  if (!jigsaw_periodic(shape.m, s))
    throw std::invalid_argument("jigsaw_function: needs 12 s | m to close up on the cycle");
  TorusFunction<Rational> f(shape, shape.n);
  std::vector<long> c(static_cast<std::size_t>(shape.n));
  for (std::size_t x = 0; x < shape.size(); ++x) {
    shape.decode(x, c.data());
    Rational* fx = f.at(x);
    for (int j = 0; j < shape.n; ++j)
      fx[j] = Rational(jigsaw_value(c[static_cast<std::size_t>(j)], s));
  }
  return f;
}

std::vector<Rational> axis_marginal(const Kernel& kernel, int axis) {
  if (axis < 0 || axis >= kernel.shape.n) throw std::invalid_argument("axis_marginal: bad axis");
  std::vector<Rational> marginal(static_cast<std::size_t>(kernel.shape.m), Rational(0));
  for (const auto& [idx, w] : kernel.atoms)
    marginal[static_cast<std::size_t>(kernel.shape.coord(idx, axis))] += w;
  return marginal;
}

namespace {

void require_family(const std::vector<Kernel>& family) {
  if (family.empty()) throw std::invalid_argument("kernel family is empty");
  const TorusShape& shape = family[0].shape;
  if (static_cast<int>(family.size()) != shape.n)
    throw std::invalid_argument("kernel family must have one kernel per axis");
  for (const Kernel& nu : family)
    if (!(nu.shape == shape)) throw std::invalid_argument("kernel family on mixed shapes");
}

}  // namespace

Rational marginal_variation(const std::vector<Kernel>& family) {
  require_family(family);
  const long m = family[0].shape.m;
  Rational total = 0;
  for (int j = 0; j < static_cast<int>(family.size()); ++j) {
    std::vector<Rational> p = axis_marginal(family[static_cast<std::size_t>(j)], j);
    for (long z = 0; z < m; ++z)
      total += abs(p[static_cast<std::size_t>(mod_reduce(z + 1, m))] -
                   p[static_cast<std::size_t>(mod_reduce(z - 1, m))]);
  }
  return total / Rational(static_cast<long>(family.size()));
}

Rational tail_mass(const std::vector<Kernel>& family, long s) {
  require_family(family);
  const long m = family[0].shape.m;
  Rational total = 0;
  for (int j = 0; j < static_cast<int>(family.size()); ++j) {
    std::vector<Rational> p = axis_marginal(family[static_cast<std::size_t>(j)], j);
    for (long z = 0; z < m; ++z) {
      long r = signed_rep(z, m);
      if (r > s || r < -s) total += p[static_cast<std::size_t>(z)];
    }
  }
  return total / Rational(static_cast<long>(family.size()));
}

Rational delta_smoothing_value(const std::vector<Kernel>& family, int q) {
  require_family(family);
  if (q < 1) throw std::invalid_argument("delta_smoothing_value: q must be >= 1");
  const TorusShape& shape = family[0].shape;
  const int n = shape.n;
  const std::uint32_t masks = 1u << n;
  Rational total = 0;
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    std::map<std::size_t, Rational> field;
    for (int j = 0; j < n; ++j) {
      Rational sgn(sign_at(mask, j));
      for (const auto& [idx, w] : family[static_cast<std::size_t>(j)].atoms) {
        field[shape.shift(idx, j, -1)] += sgn * w;  // nu_j(z + e_j) term
        field[shape.shift(idx, j, 1)] -= sgn * w;   // nu_j(z - e_j) term
      }
    }
    Rational sum = 0;
    for (const auto& [idx, v] : field) sum += abs(v);
    total += rational_pow(sum, q);
  }
  return total / Rational(static_cast<long>(masks));
}

namespace {

MomentReport report_from_counts(int n, long k, const std::vector<Integer>& counts) {
  Integer den;
  mpz_ui_pow_ui(den.get_mpz_t(), static_cast<unsigned long>(k + 1), static_cast<unsigned long>(n));
  Integer abs_sum = 0, second_sum = 0, fourth_sum = 0;
  for (int s = -n; s <= n; ++s) {
    const Integer& c = counts[static_cast<std::size_t>(s + n)];
    if (c == 0) continue;
    Integer a(s < 0 ? -s : s);
    abs_sum += a * c;
    second_sum += a * a * c;
    fourth_sum += a * a * a * a * c;
  }
  auto ratio = [&](const Integer& num) {
    Rational r(num, den);
    r.canonicalize();
    return r;
  };
  MomentReport report;
  report.n = n;
  report.k = k;
  report.p = Rational(2, k + 1);
  report.p.canonicalize();
  report.abs_mean = ratio(abs_sum);
  report.second = ratio(second_sum);
  report.fourth = ratio(fourth_sum);
  return report;
}

}  // namespace

MomentReport abs_sum_moments(int n, long k) {
  if (n < 1) throw std::invalid_argument("abs_sum_moments: n must be >= 1");
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("abs_sum_moments: k must be odd and >= 1");
  std::vector<Integer> counts(static_cast<std::size_t>(2 * n + 1), Integer(0));
  counts[static_cast<std::size_t>(n)] = 1;
  Integer middle(k - 1);
  for (int coord = 0; coord < n; ++coord) {
    std::vector<Integer> next(counts.size(), Integer(0));
    for (int s = -coord; s <= coord; ++s) {
      const Integer& c = counts[static_cast<std::size_t>(s + n)];
      if (c == 0) continue;
      next[static_cast<std::size_t>(s - 1 + n)] += c;
      next[static_cast<std::size_t>(s + n)] += c * middle;
      next[static_cast<std::size_t>(s + 1 + n)] += c;
    }
    counts = std::move(next);
  }
  return report_from_counts(n, k, counts);
}

MomentReport abs_sum_enumeration(int n, long k) {
  if (n < 1) throw std::invalid_argument("abs_sum_enumeration: n must be >= 1");
  if (k < 1 || k % 2 == 0) throw std::invalid_argument("abs_sum_enumeration: k must be odd");
  std::vector<long> odd = odd_offsets(k);
  std::size_t box = 1;
  for (int i = 0; i < n; ++i) box *= odd.size();
  std::vector<Integer> counts(static_cast<std::size_t>(2 * n + 1), Integer(0));
  for (std::size_t idx = 0; idx < box; ++idx) {
    std::size_t rest = idx;
    int s = 0;
    for (int j = 0; j < n; ++j) {
      long y = odd[rest % odd.size()];
      rest /= odd.size();
      if (y == k) ++s;
      if (y == -k) --s;
    }
    counts[static_cast<std::size_t>(s + n)] += 1;
  }
  return report_from_counts(n, k, counts);
}

Rational moment2_closed_form(int n, long k) {
  Rational p(2, k + 1);
  p.canonicalize();
  return Rational(n) * p;
}

Rational moment4_closed_form(int n, long k) {
  Rational p(2, k + 1);
  p.canonicalize();
  return Rational(n) * p + Rational(3) * Rational(n) * Rational(n - 1) * p * p;
}

BandCheck moment_band_check(const MomentReport& report) {
  const Rational np = report.second;  // E[Z^2] = n p exactly
  const Rational& e = report.abs_mean;
  BandCheck out;
  if (np <= 1) {  // min(sqrt(np), np) = np
    out.lower_ok = 2 * e >= np;
    out.upper_ok = e <= np;
  } else {  // min = sqrt(np); compare squares to stay rational
    out.lower_ok = 4 * e * e >= np;
    out.upper_ok = e * e <= np;
  }
  return out;
}

Kernel permute_kernel(const Kernel& kernel, const std::vector<int>& pi) {
  if (static_cast<int>(pi.size()) != kernel.shape.n)
    throw std::invalid_argument("permute_kernel: permutation size mismatch");
  const int n = kernel.shape.n;
  Kernel out;
  out.shape = kernel.shape;
  std::vector<long> c(static_cast<std::size_t>(n)), pc(static_cast<std::size_t>(n));
  out.atoms.reserve(kernel.atoms.size());
  for (const auto& [idx, w] : kernel.atoms) {
    kernel.shape.decode(idx, c.data());
    for (int i = 0; i < n; ++i) pc[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] = c[static_cast<std::size_t>(i)];
    out.atoms.emplace_back(kernel.shape.encode(pc.data()), w);
  }
  std::sort(out.atoms.begin(), out.atoms.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  if (kernel.is_product()) {
    out.axis_offsets.resize(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      out.axis_offsets[static_cast<std::size_t>(pi[static_cast<std::size_t>(i)])] =
          kernel.axis_offsets[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Kernel> symmetrize(const std::vector<Kernel>& family) {
  require_family(family);
  const TorusShape& shape = family[0].shape;
  const int n = shape.n;
  std::vector<std::map<std::size_t, Rational>> sums(static_cast<std::size_t>(n));
  std::vector<int> pi = identity_permutation(n);
  long permutations = 0;
  do {
    ++permutations;
    std::vector<int> inv = inverse_permutation(pi);
    for (int j = 0; j < n; ++j) {
      Kernel moved = permute_kernel(family[static_cast<std::size_t>(pi[static_cast<std::size_t>(j)])], inv);
      for (const auto& [idx, w] : moved.atoms) sums[static_cast<std::size_t>(j)][idx] += w;
    }
  } while (std::next_permutation(pi.begin(), pi.end()));

  std::vector<Kernel> out(static_cast<std::size_t>(n));
  Rational inv_count = Rational(1) / Rational(permutations);
  for (int j = 0; j < n; ++j) {
    out[static_cast<std::size_t>(j)].shape = shape;
    for (const auto& [idx, w] : sums[static_cast<std::size_t>(j)]) {
      Rational v = w * inv_count;
      if (v != 0) out[static_cast<std::size_t>(j)].atoms.emplace_back(idx, v);
    }
  }
  return out;
}

std::vector<Kernel> random_kernel_family(const TorusShape& shape, std::uint64_t seed, int atoms) {
  if (atoms < 1) throw std::invalid_argument("random_kernel_family: atoms must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<Kernel> family(static_cast<std::size_t>(shape.n));
  for (Kernel& nu : family) {
    nu.shape = shape;
    std::map<std::size_t, long> counts;
    long total = 0;
    for (int a = 0; a < atoms; ++a) {
      std::size_t site = static_cast<std::size_t>(draw_int(rng, 0, static_cast<long>(shape.size()) - 1));
      long w = draw_int(rng, 1, 9);
      counts[site] += w;
      total += w;
    }
    for (const auto& [idx, w] : counts) {
      Rational v(w, total);
      v.canonicalize();
      nu.atoms.emplace_back(idx, v);
    }
  }
  return family;
}

bool symmetrized_transposition_covariant(const std::vector<Kernel>& symmetrized) {
  require_family(symmetrized);
  const int n = symmetrized[0].shape.n;
  for (int j = 0; j < n; ++j) {
    for (int h = 0; h < n; ++h) {
      if (h == j) continue;
      std::vector<int> swap_jh = identity_permutation(n);
      std::swap(swap_jh[static_cast<std::size_t>(j)], swap_jh[static_cast<std::size_t>(h)]);
      Kernel moved = permute_kernel(symmetrized[static_cast<std::size_t>(h)], swap_jh);
      if (!(moved.atoms == symmetrized[static_cast<std::size_t>(j)].atoms)) return false;
    }
  }
  return true;
}

bool symmetrized_marginals_equal(const std::vector<Kernel>& symmetrized) {
  require_family(symmetrized);
  const int n = symmetrized[0].shape.n;
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> reference;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Rational> marginal = axis_marginal(symmetrized[static_cast<std::size_t>(i)], j);
      if (reference.empty())
        reference = std::move(marginal);
      else if (marginal != reference)
        return false;
    }
  }
  return true;
}

}  // namespace cotype
