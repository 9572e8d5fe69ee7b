#include <doctest.h>

#include <vector>

#include "cotype/kernels.hpp"
#include "cotype/torus_function.hpp"

using namespace cotype;

TEST_CASE("offset alphabets") {
  CHECK_EQ(even_offsets(1), std::vector<long>{0});
  CHECK_EQ(odd_offsets(1), std::vector<long>{-1, 1});
  CHECK_EQ(even_offsets(3), std::vector<long>{-2, 0, 2});
  CHECK_EQ(odd_offsets(3), std::vector<long>{-3, -1, 1, 3});
  CHECK_EQ(even_offsets(5).size(), 5u);
  CHECK_EQ(odd_offsets(5).size(), 6u);
}

TEST_CASE("scheme parameter validation") {
  CHECK_THROWS_AS(SchemeParams(0, 8, 3, 2), std::invalid_argument);   // n < 1
  CHECK_THROWS_AS(SchemeParams(1, 7, 3, 2), std::invalid_argument);   // odd m
  CHECK_THROWS_AS(SchemeParams(1, 8, 2, 2), std::invalid_argument);   // even k
  CHECK_THROWS_AS(SchemeParams(1, 8, 5, 2), std::invalid_argument);   // k >= m/2
  CHECK_THROWS_AS(SchemeParams(1, 8, 3, 0), std::invalid_argument);   // q < 1
  CHECK_NOTHROW(SchemeParams(2, 8, 3, 1));
}

TEST_CASE("smoothing kernel support and mass") {
  SchemeParams params(2, 8, 3, 2);
  for (int j = 0; j < 2; ++j) {
    Kernel nu = smoothing_kernel(params, j);
    CHECK_EQ(nu.atoms.size(), 12u);  // k (k+1)^(n-1)
    CHECK(nu.is_product());
    CHECK_EQ(nu.mass(), Rational(1));
    // axis j carries even residues, the other axis odd ones
    for (const auto& [idx, w] : nu.atoms) {
      CHECK_EQ(w, Rational(1, 12));
      for (int t = 0; t < 2; ++t) {
        long r = signed_rep(params.shape().coord(idx, t), params.m);
        if (t == j) {
          CHECK_EQ(r % 2, 0);
          CHECK(std::abs(r) < 3);
        } else {
          CHECK_EQ(std::abs(r % 2), 1);
          CHECK(std::abs(r) <= 3);
        }
      }
    }
  }
  SchemeParams p3(3, 12, 5, 2);
  CHECK_EQ(smoothing_kernel(p3, 1).atoms.size(), 5u * 6u * 6u);
}

TEST_CASE("cube average kernel support k^|B|") {
  SchemeParams params(2, 8, 3, 2);
  CHECK_EQ(cube_average_kernel(params, 0b00u).atoms.size(), 1u);
  CHECK_EQ(cube_average_kernel(params, 0b01u).atoms.size(), 3u);
  CHECK_EQ(cube_average_kernel(params, 0b10u).atoms.size(), 3u);
  CHECK_EQ(cube_average_kernel(params, 0b11u).atoms.size(), 9u);
  // mask bit t selects axis t; the unselected axis stays pinned at zero
  Kernel one_axis = cube_average_kernel(params, 0b01u);
  for (const auto& [idx, w] : one_axis.atoms) {
    long r = signed_rep(params.shape().coord(idx, 0), 8);
    CHECK_EQ(r % 2, 0);
    CHECK(std::abs(r) <= 2);
    CHECK_EQ(params.shape().coord(idx, 1), 0);
  }
  CHECK_EQ(cube_average_kernel(params, 0b11u).mass(), Rational(1));
}

TEST_CASE("kernel lookup on sorted atoms") {
  SchemeParams params(1, 8, 3, 2);
  Kernel nu = smoothing_kernel(params, 0);  // even offsets -2, 0, 2
  TorusShape shape = params.shape();
  long c;
  c = 0;
  CHECK_EQ(nu.at(shape.encode(&c)), Rational(1, 3));
  c = 2;
  CHECK_EQ(nu.at(shape.encode(&c)), Rational(1, 3));
  c = 6;  // -2 mod 8
  CHECK_EQ(nu.at(shape.encode(&c)), Rational(1, 3));
  c = 1;
  CHECK_EQ(nu.at(shape.encode(&c)), Rational(0));
}

TEST_CASE("smoothing of the cycle distance: frozen profile") {
  SchemeParams params(1, 8, 3, 2);
  TorusFunction<Rational> f = torus_abs_function(params.shape());
  TorusFunction<Rational> ef = smooth(f, params, 0);
  std::vector<Rational> expected = {Rational(4, 3), Rational(5, 3), Rational(2), Rational(7, 3),
                                    Rational(8, 3), Rational(7, 3), Rational(2), Rational(5, 3)};
  for (std::size_t x = 0; x < 8; ++x) CHECK_EQ(*ef.at(x), expected[x]);
}

TEST_CASE("atom-by-atom and separable convolution agree") {
  SchemeParams params(2, 8, 3, 2);
  RandomFunctionStream stream(params.shape(), 2, 11);
  TorusFunction<Rational> f = stream.next();
  for (int j = 0; j < 2; ++j) {
    Kernel nu = smoothing_kernel(params, j);
    CHECK(convolve(f, nu) == convolve_product(f, nu));
  }
  Kernel cube = cube_average_kernel(params, 0b11u);
  CHECK(convolve(f, cube) == convolve_product(f, cube));
}

TEST_CASE("point mass convolution is translation") {
  TorusShape shape(2, 6);
  RandomFunctionStream stream(shape, 1, 5);
  TorusFunction<Rational> f = stream.next();
  std::vector<long> c = {1, 4};
  Kernel delta = point_mass_kernel(shape, c.data());
  TorusFunction<Rational> g = convolve(f, delta);
  std::size_t h = shape.encode(c.data());
  for (std::size_t x = 0; x < shape.size(); ++x) CHECK_EQ(*g.at(x), *f.at(shape.sub(x, h)));
  CHECK(convolve_product(f, delta) == g);
}

TEST_CASE("edge measures have unit mass") {
  SchemeParams params(2, 6, 1, 3);
  CHECK_EQ(edge_measure_mass(diagonal_edge_measure(params.shape())), Rational(1));
  CHECK_EQ(edge_measure_mass(graded_edge_measure(params)), Rational(1));
  CHECK_EQ(edge_measure_mass(mixture_measure(diagonal_edge_measure(params.shape()),
                                             graded_edge_measure(params))),
           Rational(1));
  SchemeParams p3(3, 8, 3, 2);
  CHECK_EQ(edge_measure_mass(graded_edge_measure(p3)), Rational(1));
}

TEST_CASE("edge normalizer closed form") {
  // sum_{l<=n} (n/k)^{ql}
  CHECK_EQ(edge_normalizer(2, 4, 2), Rational(21, 16));
  CHECK_EQ(edge_normalizer(1, 3, 2), Rational(10, 9));
  CHECK_EQ(edge_normalizer(1, 1, 1), Rational(2));
  CHECK_EQ(edge_normalizer(3, 3, 1), Rational(1) + Rational(1) + Rational(1) + Rational(1));
}

TEST_CASE("frozen edge energies of the cycle distance") {
  SchemeParams params(1, 8, 3, 2);
  TorusFunction<Rational> f = torus_abs_function(params.shape());
  NormSpec spec(2, 2.0);
  CHECK_EQ(edge_energy(f, diagonal_edge_measure(params.shape()), spec), Rational(1));
  CHECK_EQ(edge_energy(f, graded_edge_measure(params), spec), Rational(9, 10));
}

TEST_CASE("edge energy is linear in the measure") {
  SchemeParams params(2, 6, 1, 2);
  RandomFunctionStream stream(params.shape(), 2, 77);
  TorusFunction<Rational> f = stream.next();
  NormSpec spec(2, 2.0);
  EdgeMeasure b1 = diagonal_edge_measure(params.shape());
  EdgeMeasure b2 = graded_edge_measure(params);
  Rational e1 = edge_energy(f, b1, spec);
  Rational e2 = edge_energy(f, b2, spec);
  Rational em = edge_energy(f, mixture_measure(b1, b2), spec);
  CHECK_EQ(em, (e1 + e2) / 2);
}

TEST_CASE("edge energy vanishes only on constants") {
  TorusShape shape(1, 4);
  TorusFunction<Rational> c(shape, 1);
  for (std::size_t x = 0; x < 4; ++x) *c.at(x) = Rational(7);
  NormSpec spec(2, 2.0);
  CHECK_EQ(edge_energy(c, diagonal_edge_measure(shape), spec), Rational(0));
  TorusFunction<Rational> f = torus_abs_function(shape);
  CHECK(edge_energy(f, diagonal_edge_measure(shape), spec) > 0);
}
