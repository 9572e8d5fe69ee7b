#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cotype/norms.hpp"
#include "cotype/parallel.hpp"
#include "cotype/rational.hpp"
#include "cotype/torus.hpp"

namespace cotype {

// Dense function Z_m^n -> R^d (exact rational or double), values row-major in
// the point index with the d components of each point contiguous.
template <class S>
struct TorusFunction {
  TorusShape shape{1, 2};
  int d = 1;
  std::vector<S> values;

  TorusFunction() = default;
  TorusFunction(TorusShape sh, int d_) : shape(sh), d(d_) {
    if (d < 1) throw std::invalid_argument("TorusFunction: d must be >= 1");
    values.assign(shape.size() * static_cast<std::size_t>(d), S{});
  }

  const S* at(std::size_t index) const { return values.data() + index * static_cast<std::size_t>(d); }
  S* at(std::size_t index) { return values.data() + index * static_cast<std::size_t>(d); }

  bool operator==(const TorusFunction& o) const {
    return shape == o.shape && d == o.d && values == o.values;
  }
};

inline TorusFunction<double> to_float_function(const TorusFunction<Rational>& f) {
  TorusFunction<double> out(f.shape, f.d);
  for (std::size_t i = 0; i < f.values.size(); ++i) out.values[i] = f.values[i].get_d();
  return out;
}

// f(x) = sum_j |x_j| with the cycle distance; scalar-valued.
template <class S = Rational>
TorusFunction<S> torus_abs_function(const TorusShape& shape) {
  TorusFunction<S> f(shape, 1);
  std::vector<long> c(static_cast<std::size_t>(shape.n));
  for (std::size_t x = 0; x < shape.size(); ++x) {
    shape.decode(x, c.data());
    long s = 0;
    for (int t = 0; t < shape.n; ++t) s += torus_abs(c[static_cast<std::size_t>(t)], shape.m);
    f.values[x] = scalar_from_rational<S>(Rational(s));
  }
  return f;
}

// ||f(x+h) - f(x)||^q averaged over x; h given as an index offset.
template <class S>
S shifted_difference_energy(const TorusFunction<S>& f, std::size_t h, const NormSpec& spec) {
  const int d = f.d;
  S total = chunked_mapreduce(
      f.shape.size(), S{},
      [&](std::size_t b, std::size_t e) {
        S acc{};
        std::vector<S> diff(static_cast<std::size_t>(d));
        for (std::size_t x = b; x < e; ++x) {
          std::size_t y = f.shape.add(x, h);
          const S* fy = f.at(y);
          const S* fx = f.at(x);
          for (int i = 0; i < d; ++i) diff[static_cast<std::size_t>(i)] = fy[i] - fx[i];
          acc += norm_q_power(diff.data(), d, spec);
        }
        return acc;
      },
      [](S a, S b) { a += b; return a; });
  return total / scalar_from_count<S>(f.shape.size());
}

// Uniform averages over the three probability spaces used throughout:
// mu = uniform on Z_m^n, tau = uniform on {-1,1}^n, sigma = uniform on {-1,0,1}^n.
template <class S, class G>
S mean_over_mu(const TorusShape& shape, G&& g) {
  S total = chunked_sum<S>(shape.size(), [&](std::size_t x) { return g(x); });
  return total / scalar_from_count<S>(shape.size());
}

template <class S, class G>
S mean_over_tau(int n, G&& g) {
  if (n < 1 || n > 24) throw std::invalid_argument("mean_over_tau: n out of range (1..24)");
  std::uint32_t count = 1u << n;
  S total{};
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < count; ++mask) {
    decode_signs(mask, n, eps.data());
    total += g(static_cast<const int*>(eps.data()));
  }
  return total / scalar_from_count<S>(count);
}

template <class S, class G>
S mean_over_sigma(int n, G&& g) {
  if (n < 1 || n > 24) throw std::invalid_argument("mean_over_sigma: n out of range (1..24)");
  std::size_t count = 1;
  for (int i = 0; i < n; ++i) count *= 3;
  S total{};
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (std::size_t idx = 0; idx < count; ++idx) {
    decode_mixed_signs(idx, n, eps.data());
    total += g(static_cast<const int*>(eps.data()));
  }
  return total / scalar_from_count<S>(count);
}

// Deterministic integer draw in [lo, hi]: mt19937_64 output reduced by modulo.
// (std::uniform_int_distribution is implementation-defined; this is not.)
inline long draw_int(std::mt19937_64& rng, long lo, long hi) {
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<long>(rng() % span);
}

// Stream of seeded random integer-valued functions (denominator 1), the test
// family used by every sweep; consuming functions in order keeps any prefix of
// a longer sweep identical to a shorter one with the same seed.
struct RandomFunctionStream {
  TorusShape shape;
  int d;
  long amplitude;
  std::mt19937_64 rng;

  RandomFunctionStream(TorusShape sh, int d_, std::uint64_t seed, long amplitude_ = 100)
      : shape(sh), d(d_), amplitude(amplitude_), rng(seed) {}

  TorusFunction<Rational> next() {
    TorusFunction<Rational> f(shape, d);
    for (auto& v : f.values) v = Rational(draw_int(rng, -amplitude, amplitude));
    return f;
  }
};

// JSON form: {"m","n","d","mode","values"}; values is an m^n-long row-major
// array of d-vectors, rationals as "num/den" strings, floats as numbers.
inline nlohmann::ordered_json to_json(const TorusFunction<Rational>& f) {
  nlohmann::ordered_json j;
  j["m"] = f.shape.m;
  j["n"] = f.shape.n;
  j["d"] = f.d;
  j["mode"] = "exact";
  auto values = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < f.shape.size(); ++x) {
    auto row = nlohmann::ordered_json::array();
    for (int i = 0; i < f.d; ++i) row.push_back(to_fraction_string(f.at(x)[i]));
    values.push_back(std::move(row));
  }
  j["values"] = std::move(values);
  return j;
}

inline nlohmann::ordered_json to_json(const TorusFunction<double>& f) {
  nlohmann::ordered_json j;
  j["m"] = f.shape.m;
  j["n"] = f.shape.n;
  j["d"] = f.d;
  j["mode"] = "float";
  auto values = nlohmann::ordered_json::array();
  for (std::size_t x = 0; x < f.shape.size(); ++x) {
    auto row = nlohmann::ordered_json::array();
    for (int i = 0; i < f.d; ++i) row.push_back(f.at(x)[i]);
    values.push_back(std::move(row));
  }
  j["values"] = std::move(values);
  return j;
}

inline TorusFunction<Rational> rational_function_from_json(const nlohmann::json& j) {
  TorusShape shape(j.at("n").get<int>(), j.at("m").get<long>());
  TorusFunction<Rational> f(shape, j.at("d").get<int>());
  if (j.at("mode").get<std::string>() != "exact")
    throw std::invalid_argument("TorusFunction: expected mode \"exact\"");
  const auto& values = j.at("values");
  if (values.size() != shape.size()) throw std::invalid_argument("TorusFunction: bad values length");
  for (std::size_t x = 0; x < shape.size(); ++x) {
    const auto& row = values.at(x);
    if (row.size() != static_cast<std::size_t>(f.d))
      throw std::invalid_argument("TorusFunction: bad row length");
    for (int i = 0; i < f.d; ++i) {
      const auto& cell = row.at(static_cast<std::size_t>(i));
      f.at(x)[i] = cell.is_string() ? rational_from_string(cell.get<std::string>())
                                    : Rational(cell.get<long>());
    }
  }
  return f;
}

}  // namespace cotype
