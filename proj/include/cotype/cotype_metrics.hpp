#pragma once

#include <cstdint>
#include <string>
#include <type_traits>
#include <vector>

#include "cotype/kernels.hpp"
#include "cotype/torus_function.hpp"

namespace cotype {

template <class S>
struct RatioReport {
  S lhs{};
  S rhs{};
  bool ratio_defined = false;
  S ratio{};
};

template <class S>
RatioReport<S> make_ratio(S lhs, S rhs) {
  RatioReport<S> r;
  r.lhs = std::move(lhs);
  r.rhs = std::move(rhs);
  if (!(r.rhs == S{})) {
    r.ratio_defined = true;
    r.ratio = r.lhs / r.rhs;
  }
  return r;
}

namespace detail {

// base^e with e = spec.q or spec.q - 1; exact instantiations require integral q.
template <class S>
S power_of_count(std::uint64_t base, const NormSpec& spec, double shift) {
  if constexpr (std::is_same_v<S, Rational>) {
    return scalar_pow<Rational>(scalar_from_count<Rational>(base),
                                spec.q_int() + static_cast<long>(shift));
  } else {
    return std::pow(static_cast<double>(base), spec.q + shift);
  }
}

// a <= b, with relative slack in float mode so roundoff cannot flip a true
// inequality into a failure.
template <class S>
bool leq(const S& a, const S& b) {
  if constexpr (std::is_same_v<S, Rational>) {
    return a <= b;
  } else {
    return a <= b + 1e-9 * (1.0 + std::fabs(b));
  }
}

}  // namespace detail

// lhs: sum_j mean_x ||f(x + (m/2) e_j) - f(x)||^q
// rhs: m^q * mean over {-1,0,1}^n x Z_m^n of ||f(x + eps) - f(x)||^q
template <class S>
RatioReport<S> metric_cotype_ratio(const TorusFunction<S>& f, const NormSpec& spec) {
  const TorusShape& shape = f.shape;
  if (shape.m % 2 != 0) throw std::invalid_argument("metric_cotype_ratio: m must be even");
  std::vector<long> h(static_cast<std::size_t>(shape.n), 0);
  S lhs{};
  for (int j = 0; j < shape.n; ++j) {
    std::fill(h.begin(), h.end(), 0L);
    h[static_cast<std::size_t>(j)] = shape.m / 2;
    lhs += shifted_difference_energy(f, shape.encode(h.data()), spec);
  }
  S rhs = mean_over_sigma<S>(shape.n, [&](const int* eps) {
    for (int t = 0; t < shape.n; ++t) h[static_cast<std::size_t>(t)] = eps[t];
    return shifted_difference_energy(f, shape.encode(h.data()), spec);
  });
  rhs *= detail::power_of_count<S>(static_cast<std::uint64_t>(shape.m), spec, 0.0);
  return make_ratio(std::move(lhs), std::move(rhs));
}

// lhs: sum_j ||x_j||^q          rhs: E_tau || sum_j eps_j x_j ||^q
template <class S>
RatioReport<S> rademacher_cotype_ratio(const std::vector<std::vector<S>>& vectors,
                                       const NormSpec& spec) {
  if (vectors.empty()) throw std::invalid_argument("rademacher_cotype_ratio: no vectors");
  const int n = static_cast<int>(vectors.size());
  const int d = static_cast<int>(vectors[0].size());
  for (const auto& v : vectors)
    if (static_cast<int>(v.size()) != d)
      throw std::invalid_argument("rademacher_cotype_ratio: mixed dimensions");
  S lhs{};
  for (const auto& v : vectors) lhs += norm_q_power(v.data(), d, spec);
  std::vector<S> sum(static_cast<std::size_t>(d));
  S rhs = mean_over_tau<S>(n, [&](const int* eps) {
    std::fill(sum.begin(), sum.end(), S{});
    for (int j = 0; j < n; ++j) {
      const S sgn = scalar_from_rational<S>(Rational(eps[j]));
      for (int i = 0; i < d; ++i) sum[static_cast<std::size_t>(i)] += sgn * vectors[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    }
    return norm_q_power(sum.data(), d, spec);
  });
  return make_ratio(std::move(lhs), std::move(rhs));
}

// lhs: E_tau || sum_j eps_j x_j ||^q          rhs: sum_j ||x_j||^q
template <class S>
RatioReport<S> rademacher_type_ratio(const std::vector<std::vector<S>>& vectors,
                                     const NormSpec& spec) {
  RatioReport<S> c = rademacher_cotype_ratio(vectors, spec);
  return make_ratio(std::move(c.rhs), std::move(c.lhs));
}

// D_j f(x) = E_j f(x + e_j) - E_j f(x - e_j), from the already smoothed field.
template <class S>
TorusFunction<S> directional_difference(const TorusFunction<S>& smoothed, int axis) {
  TorusFunction<S> out(smoothed.shape, smoothed.d);
  const int d = smoothed.d;
  chunked_mapreduce(
      smoothed.shape.size(), 0,
      [&](std::size_t b, std::size_t e) {
        for (std::size_t x = b; x < e; ++x) {
          const S* up = smoothed.at(smoothed.shape.shift(x, axis, 1));
          const S* dn = smoothed.at(smoothed.shape.shift(x, axis, -1));
          S* ox = out.at(x);
          for (int i = 0; i < d; ++i) ox[i] = up[i] - dn[i];
        }
        return 0;
      },
      [](int a, int) { return a; });
  return out;
}

// mean_x ||g(x)||^q
template <class S>
S mean_norm_q(const TorusFunction<S>& g, const NormSpec& spec) {
  S total = chunked_mapreduce(
      g.shape.size(), S{},
      [&](std::size_t b, std::size_t e) {
        S acc{};
        for (std::size_t x = b; x < e; ++x) acc += norm_q_power(g.at(x), g.d, spec);
        return acc;
      },
      [](S a, S b) { a += b; return a; });
  return total / scalar_from_count<S>(g.shape.size());
}

template <class S>
S mean_norm_q_difference(const TorusFunction<S>& g, const TorusFunction<S>& f,
                         const NormSpec& spec) {
  if (!(g.shape == f.shape) || g.d != f.d)
    throw std::invalid_argument("mean_norm_q_difference: mismatched functions");
  const int d = g.d;
  S total = chunked_mapreduce(
      g.shape.size(), S{},
      [&](std::size_t b, std::size_t e) {
        S acc{};
        std::vector<S> diff(static_cast<std::size_t>(d));
        for (std::size_t x = b; x < e; ++x) {
          const S* gx = g.at(x);
          const S* fx = f.at(x);
          for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = gx[i] - fx[i];
          acc += norm_q_power(diff.data(), d, spec);
        }
        return acc;
      },
      [](S a, S b) { a += b; return a; });
  return total / scalar_from_count<S>(g.shape.size());
}

// The two empirical scheme constants of a single function: how well the
// smoothed field approximates f (against the diagonal edge measure) and how
// small its signed directional derivative is (against the graded edge measure).
template <class S>
struct SchemeConstants {
  S approx_numerator{};    // (1/n) sum_j mean ||E_j f - f||^q
  S smooth_numerator{};    // mean over (x, eps) of || sum_j eps_j D_j f(x) ||^q
  S energy_beta1{};
  S energy_beta2{};
  bool a_defined = false;
  S a_emp_q{};             // approx_numerator / energy_beta1
  bool s_defined = false;
  S s_emp_q{};             // smooth_numerator / energy_beta2
};

template <class S>
SchemeConstants<S> scheme_constants(const TorusFunction<S>& f, const SchemeParams& params,
                                    const NormSpec& spec) {
  if (!(f.shape == params.shape())) throw std::invalid_argument("scheme_constants: shape mismatch");
  const int n = params.n;
  const int d = f.d;

  std::vector<TorusFunction<S>> smoothed;
  smoothed.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) smoothed.push_back(smooth(f, params, j));

  SchemeConstants<S> out;
  for (int j = 0; j < n; ++j)
    out.approx_numerator += mean_norm_q_difference(smoothed[static_cast<std::size_t>(j)], f, spec);
  out.approx_numerator /= scalar_from_count<S>(static_cast<std::uint64_t>(n));

  std::vector<TorusFunction<S>> dir;
  dir.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) dir.push_back(directional_difference(smoothed[static_cast<std::size_t>(j)], j));

  S total = chunked_mapreduce(
      f.shape.size(), S{},
      [&](std::size_t b, std::size_t e) {
        S acc{};
        std::vector<S> sum(static_cast<std::size_t>(d));
        for (std::size_t x = b; x < e; ++x) {
          acc += mean_over_tau<S>(n, [&](const int* eps) {
            std::fill(sum.begin(), sum.end(), S{});
            for (int j = 0; j < n; ++j) {
              const S* dv = dir[static_cast<std::size_t>(j)].at(x);
              if (eps[j] > 0)
                for (int i = 0; i < d; ++i) sum[static_cast<std::size_t>(i)] += dv[i];
              else
                for (int i = 0; i < d; ++i) sum[static_cast<std::size_t>(i)] -= dv[i];
            }
            return norm_q_power(sum.data(), d, spec);
          });
        }
        return acc;
      },
      [](S a, S b) { a += b; return a; });
  out.smooth_numerator = total / scalar_from_count<S>(f.shape.size());

  out.energy_beta1 = edge_energy(f, diagonal_edge_measure(f.shape), spec);
  out.energy_beta2 = edge_energy(f, graded_edge_measure(params), spec);
  if (!(out.energy_beta1 == S{})) {
    out.a_defined = true;
    out.a_emp_q = out.approx_numerator / out.energy_beta1;
  }
  if (!(out.energy_beta2 == S{})) {
    out.s_defined = true;
    out.s_emp_q = out.smooth_numerator / out.energy_beta2;
  }
  return out;
}

// Chain of inequalities carrying a half-period difference down to smoothed
// directional differences, plus the coordinate-to-mixed-sign edge comparison.
template <class S>
struct PipelineChecks {
  bool triangle_ok = true;    // pointwise: half-period vs the three-term split
  bool telescope_ok = true;   // pointwise: smoothed half-period vs m/4 steps
  bool integrated_ok = true;  // averaged: lhs <= 3^q approx + m^q smooth
  bool ell1_ok = true;        // coordinate edges vs mixed-sign edges
  std::uint64_t triangle_checked = 0;
  std::uint64_t telescope_checked = 0;
  S lhs_total{};           // sum_j mean ||f(x + (m/2) e_j) - f(x)||^q
  S approx_total{};        // sum_j mean ||E_j f - f||^q
  S smooth_directional{};  // sum_j mean ||D_j f||^q
  S ell1_lhs{};            // (1/n) sum_j mean ||f(x + e_j) - f(x)||^q
  S sigma_mean{};          // mean over {-1,0,1}^n x Z_m^n of ||f(x+eps) - f(x)||^q
  std::string first_failure;
};

template <class S>
PipelineChecks<S> verify_pipeline(const TorusFunction<S>& f, const SchemeParams& params,
                                  const NormSpec& spec, const Rational& ell1_constant) {
  if (!(f.shape == params.shape())) throw std::invalid_argument("verify_pipeline: shape mismatch");
  if (params.m % 4 != 0) throw std::invalid_argument("verify_pipeline: m must be divisible by 4");
  const TorusShape shape = f.shape;
  const int n = params.n;
  const int d = f.d;
  const long half = params.m / 2;
  const long steps = params.m / 4;

  std::vector<TorusFunction<S>> smoothed;
  std::vector<TorusFunction<S>> dir;
  for (int j = 0; j < n; ++j) {
    smoothed.push_back(smooth(f, params, j));
    dir.push_back(directional_difference(smoothed.back(), j));
  }

  const S three_pow_qm1 = detail::power_of_count<S>(3, spec, -1.0);
  const S steps_pow_qm1 = detail::power_of_count<S>(static_cast<std::uint64_t>(steps), spec, -1.0);

  PipelineChecks<S> out;

  struct Part {
    bool triangle_ok = true;
    bool telescope_ok = true;
    std::uint64_t triangle_checked = 0;
    std::uint64_t telescope_checked = 0;
    std::string first_failure;
  };
  for (int j = 0; j < n; ++j) {
    const TorusFunction<S>& ef = smoothed[static_cast<std::size_t>(j)];
    const TorusFunction<S>& dj = dir[static_cast<std::size_t>(j)];
    Part part = chunked_mapreduce(
        shape.size(), Part{},
        [&](std::size_t b, std::size_t e) {
          Part p;
          std::vector<S> diff(static_cast<std::size_t>(d));
          auto norm_between = [&](const S* u, const S* v) {
            for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = u[i] - v[i];
            return norm_q_power(diff.data(), d, spec);
          };
          for (std::size_t x = b; x < e; ++x) {
            std::size_t xh = shape.shift(x, j, half);
            S a = norm_between(f.at(xh), f.at(x));
            S t1 = norm_between(ef.at(x), f.at(x));
            S t2 = norm_between(ef.at(xh), f.at(xh));
            S mid = norm_between(ef.at(xh), ef.at(x));
            ++p.triangle_checked;
            if (!detail::leq(a, S(three_pow_qm1 * (t1 + t2 + mid)))) {
              p.triangle_ok = false;
              if (p.first_failure.empty())
                p.first_failure = "triangle split fails at axis " + std::to_string(j) +
                                  ", point index " + std::to_string(x);
            }
            S rungs{};
            for (long t = 1; t <= steps; ++t)
              rungs += norm_q_power(dj.at(shape.shift(x, j, 2 * t - 1)), d, spec);
            ++p.telescope_checked;
            if (!detail::leq(mid, S(steps_pow_qm1 * rungs))) {
              p.telescope_ok = false;
              if (p.first_failure.empty())
                p.first_failure = "telescope fails at axis " + std::to_string(j) +
                                  ", point index " + std::to_string(x);
            }
          }
          return p;
        },
        [](Part acc, const Part& b) {
          acc.triangle_ok = acc.triangle_ok && b.triangle_ok;
          acc.telescope_ok = acc.telescope_ok && b.telescope_ok;
          acc.triangle_checked += b.triangle_checked;
          acc.telescope_checked += b.telescope_checked;
          if (acc.first_failure.empty()) acc.first_failure = b.first_failure;
          return acc;
        });
    out.triangle_ok = out.triangle_ok && part.triangle_ok;
    out.telescope_ok = out.telescope_ok && part.telescope_ok;
    out.triangle_checked += part.triangle_checked;
    out.telescope_checked += part.telescope_checked;
    if (out.first_failure.empty()) out.first_failure = part.first_failure;
  }

  std::vector<long> h(static_cast<std::size_t>(n), 0);
  for (int j = 0; j < n; ++j) {
    std::fill(h.begin(), h.end(), 0L);
    h[static_cast<std::size_t>(j)] = half;
    out.lhs_total += shifted_difference_energy(f, shape.encode(h.data()), spec);
    out.approx_total += mean_norm_q_difference(smoothed[static_cast<std::size_t>(j)], f, spec);
    out.smooth_directional += mean_norm_q(dir[static_cast<std::size_t>(j)], spec);
    std::fill(h.begin(), h.end(), 0L);
    h[static_cast<std::size_t>(j)] = 1;
    out.ell1_lhs += shifted_difference_energy(f, shape.encode(h.data()), spec);
  }
  out.ell1_lhs /= scalar_from_count<S>(static_cast<std::uint64_t>(n));
  out.sigma_mean = mean_over_sigma<S>(n, [&](const int* eps) {
    for (int t = 0; t < n; ++t) h[static_cast<std::size_t>(t)] = eps[t];
    return shifted_difference_energy(f, shape.encode(h.data()), spec);
  });

  const S three_pow_q = detail::power_of_count<S>(3, spec, 0.0);
  const S m_pow_q = detail::power_of_count<S>(static_cast<std::uint64_t>(params.m), spec, 0.0);
  if (!detail::leq(out.lhs_total,
                   S(three_pow_q * out.approx_total + m_pow_q * out.smooth_directional))) {
    out.integrated_ok = false;
    if (out.first_failure.empty()) out.first_failure = "integrated bound fails";
  }
  const S two_pow_q = detail::power_of_count<S>(2, spec, 0.0);
  if (!detail::leq(out.ell1_lhs,
                   S(scalar_from_rational<S>(ell1_constant) * two_pow_q * out.sigma_mean))) {
    out.ell1_ok = false;
    if (out.first_failure.empty()) out.first_failure = "coordinate-edge comparison fails";
  }
  return out;
}

}  // namespace cotype
