#include <doctest.h>

#include <cmath>
#include <vector>

#include "cotype/cotype_metrics.hpp"
#include "cotype/lower_bounds.hpp"

using namespace cotype;

TEST_CASE("exact norm powers and their domain") {
  NormSpec l22(2, 2.0);
  NormSpec l14(1, 4.0);
  NormSpec linf3(kPInfinity, 3.0);
  std::vector<Rational> v = {Rational(3, 2), Rational(-2)};
  CHECK_EQ(norm_q_power(v.data(), 2, l22), Rational(9, 4) + Rational(4));
  CHECK_EQ(norm_q_power(v.data(), 2, l14), rational_pow(Rational(7, 2), 4));
  CHECK_EQ(norm_q_power(v.data(), 2, linf3), Rational(8));
  CHECK_FALSE(NormSpec(2, 3.0).exact_available());  // odd q, euclidean norm
  CHECK_THROWS_AS(norm_q_power(v.data(), 2, NormSpec(2, 3.0)), std::domain_error);
  CHECK_FALSE(NormSpec(3, 2.0).exact_available());
  CHECK(NormSpec(2, 4.0).exact_available());
  CHECK_THROWS_AS(NormSpec(2, 0.5), std::invalid_argument);
}

TEST_CASE("ratio bookkeeping") {
  RatioReport<Rational> r = make_ratio(Rational(3), Rational(16));
  CHECK(r.ratio_defined);
  CHECK_EQ(r.ratio, Rational(3, 16));
  RatioReport<Rational> z = make_ratio(Rational(0), Rational(0));
  CHECK_FALSE(z.ratio_defined);
}

TEST_CASE("half-period against mixed-sign edges: frozen cycle instance") {
  TorusShape shape(1, 4);
  TorusFunction<Rational> f = torus_abs_function(shape);
  RatioReport<Rational> r = metric_cotype_ratio(f, NormSpec(2, 2.0));
  CHECK_EQ(r.lhs, Rational(2));
  CHECK_EQ(r.rhs, Rational(32, 3));
  CHECK(r.ratio_defined);
  CHECK_EQ(r.ratio, Rational(3, 16));

  RatioReport<Rational> r1 = metric_cotype_ratio(f, NormSpec(1, 1.0));
  CHECK_EQ(r1.lhs, Rational(1));
  CHECK_EQ(r1.rhs, Rational(8, 3));
  CHECK_EQ(r1.ratio, Rational(3, 8));

  CHECK_THROWS_AS(metric_cotype_ratio(torus_abs_function(TorusShape(1, 5)), NormSpec(2, 2.0)),
                  std::invalid_argument);
}

TEST_CASE("ratio is invariant under translation and scaling") {
  TorusShape shape(2, 8);
  RandomFunctionStream stream(shape, 2, 17);
  TorusFunction<Rational> f = stream.next();
  NormSpec spec(2, 2.0);
  RatioReport<Rational> base = metric_cotype_ratio(f, spec);

  std::vector<long> c = {3, 5};
  TorusFunction<Rational> shifted = convolve(f, point_mass_kernel(shape, c.data()));
  RatioReport<Rational> moved = metric_cotype_ratio(shifted, spec);
  CHECK_EQ(moved.lhs, base.lhs);
  CHECK_EQ(moved.rhs, base.rhs);

  TorusFunction<Rational> doubled = f;
  for (auto& v : doubled.values) v *= 2;
  RatioReport<Rational> scaled = metric_cotype_ratio(doubled, spec);
  CHECK_EQ(scaled.lhs, base.lhs * 4);  // q = 2
  CHECK_EQ(scaled.rhs, base.rhs * 4);
  CHECK_EQ(scaled.ratio, base.ratio);

  TorusFunction<Rational> permuted = permute_function(f, std::vector<int>{1, 0});
  RatioReport<Rational> relabeled = metric_cotype_ratio(permuted, spec);
  CHECK_EQ(relabeled.lhs, base.lhs);
  CHECK_EQ(relabeled.rhs, base.rhs);
}

TEST_CASE("float mode tracks the exact ratio") {
  TorusShape shape(1, 4);
  TorusFunction<double> f = to_float_function(torus_abs_function(shape));
  RatioReport<double> r = metric_cotype_ratio(f, NormSpec(2, 2.0));
  CHECK(std::fabs(r.ratio - 3.0 / 16.0) < 1e-12);
  // non-integral q only exists in float mode
  RatioReport<double> rq = metric_cotype_ratio(f, NormSpec(2, 2.5));
  CHECK(rq.ratio_defined);
  CHECK(rq.ratio > 0.0);
}

TEST_CASE("sign-average ratios for explicit vector systems") {
  NormSpec l22(2, 2.0);
  std::vector<std::vector<Rational>> basis = {{Rational(1), Rational(0)},
                                              {Rational(0), Rational(1)}};
  RatioReport<Rational> cot = rademacher_cotype_ratio(basis, l22);
  CHECK_EQ(cot.lhs, Rational(2));
  CHECK_EQ(cot.rhs, Rational(2));
  CHECK_EQ(cot.ratio, Rational(1));

  std::vector<std::vector<Rational>> collinear = {{Rational(1)}, {Rational(1)}};
  RatioReport<Rational> c2 = rademacher_cotype_ratio(collinear, l22);
  CHECK_EQ(c2.lhs, Rational(2));
  CHECK_EQ(c2.rhs, Rational(2));  // E (e1 + e2)^2 = 2

  NormSpec l11(1, 1.0);
  RatioReport<Rational> type = rademacher_type_ratio(collinear, l11);
  CHECK_EQ(type.lhs, Rational(1));  // E |e1 + e2| = 1
  CHECK_EQ(type.rhs, Rational(2));
  CHECK_EQ(type.ratio, Rational(1, 2));

  CHECK_THROWS_AS(rademacher_cotype_ratio(std::vector<std::vector<Rational>>{}, l22),
                  std::invalid_argument);
}

TEST_CASE("smoothed directional difference: frozen profile") {
  SchemeParams params(1, 8, 3, 2);
  TorusFunction<Rational> f = torus_abs_function(params.shape());
  TorusFunction<Rational> dj = directional_difference(smooth(f, params, 0), 0);
  std::vector<Rational> expected = {Rational(0),      Rational(2, 3),  Rational(2, 3),
                                    Rational(2, 3),   Rational(0),     Rational(-2, 3),
                                    Rational(-2, 3),  Rational(-2, 3)};
  for (std::size_t x = 0; x < 8; ++x) CHECK_EQ(*dj.at(x), expected[x]);
  CHECK_EQ(mean_norm_q(dj, NormSpec(2, 2.0)), Rational(1, 3));
}

TEST_CASE("empirical scheme constants: frozen cycle instance") {
  SchemeParams params(1, 8, 3, 2);
  TorusFunction<Rational> f = torus_abs_function(params.shape());
  SchemeConstants<Rational> c = scheme_constants(f, params, NormSpec(2, 2.0));
  CHECK_EQ(c.approx_numerator, Rational(2, 3));
  CHECK_EQ(c.smooth_numerator, Rational(1, 3));
  CHECK_EQ(c.energy_beta1, Rational(1));
  CHECK_EQ(c.energy_beta2, Rational(9, 10));
  CHECK(c.a_defined);
  CHECK_EQ(c.a_emp_q, Rational(2, 3));
  CHECK(c.s_defined);
  CHECK_EQ(c.s_emp_q, Rational(10, 27));
}

TEST_CASE("constants of a constant function are undefined ratios") {
  SchemeParams params(1, 8, 3, 2);
  TorusFunction<Rational> c(params.shape(), 1);
  for (auto& v : c.values) v = Rational(5);
  SchemeConstants<Rational> sc = scheme_constants(c, params, NormSpec(2, 2.0));
  CHECK_EQ(sc.approx_numerator, Rational(0));
  CHECK_FALSE(sc.a_defined);
  CHECK_FALSE(sc.s_defined);
}

TEST_CASE("inequality pipeline on the frozen cycle instance") {
  SchemeParams params(1, 8, 3, 2);
  TorusFunction<Rational> f = torus_abs_function(params.shape());
  PipelineChecks<Rational> pc = verify_pipeline(f, params, NormSpec(2, 2.0), Rational(3, 2));
  CHECK(pc.triangle_ok);
  CHECK(pc.telescope_ok);
  CHECK(pc.integrated_ok);
  CHECK(pc.ell1_ok);
  CHECK_EQ(pc.first_failure, "");
  CHECK_EQ(pc.triangle_checked, 8u);
  CHECK_EQ(pc.telescope_checked, 8u);
  CHECK_EQ(pc.lhs_total, Rational(6));
  CHECK_EQ(pc.approx_total, Rational(2, 3));
  CHECK_EQ(pc.smooth_directional, Rational(1, 3));
  CHECK_EQ(pc.ell1_lhs, Rational(1));
  CHECK_EQ(pc.sigma_mean, Rational(2, 3));
}

TEST_CASE("pipeline holds for random functions across norms") {
  struct Case {
    int n;
    long m;
    long k;
    int q;
    int p;
    int d;
  };
  for (Case c : {Case{1, 8, 3, 3, 1, 2}, Case{2, 8, 3, 2, 2, 1}, Case{2, 8, 1, 4, 2, 2},
                 Case{2, 12, 3, 2, kPInfinity, 2}}) {
    SchemeParams params(c.n, c.m, c.k, c.q);
    NormSpec spec(c.p, static_cast<double>(c.q));
    RandomFunctionStream stream(params.shape(), c.d, 23);
    for (int t = 0; t < 3; ++t) {
      TorusFunction<Rational> f = stream.next();
      PipelineChecks<Rational> pc = verify_pipeline(f, params, spec, Rational(3, 2));
      bool all_ok = pc.triangle_ok && pc.telescope_ok && pc.integrated_ok && pc.ell1_ok;
      CHECK_MESSAGE(all_ok, "pipeline fails at n=", c.n, " m=", c.m, " k=", c.k, " q=", c.q,
                    " p=", c.p, ": ", pc.first_failure);
      // integrated bound restated from the reported quantities
      Rational bound = rational_pow(Rational(3), c.q) * pc.approx_total +
                       rational_pow(Rational(c.m), c.q) * pc.smooth_directional;
      CHECK(pc.lhs_total <= bound);
    }
  }
  CHECK_THROWS_AS(verify_pipeline(torus_abs_function(TorusShape(1, 10)), SchemeParams(1, 10, 3, 2),
                                  NormSpec(2, 2.0), Rational(3, 2)),
                  std::invalid_argument);
}

TEST_CASE("euclidean q=2: signed smoothing mean equals directional sum") {
  // parallelogram: E_eps || sum_j eps_j v_j ||_2^2 == sum_j ||v_j||_2^2
  SchemeParams params(2, 8, 3, 2);
  NormSpec spec(2, 2.0);
  RandomFunctionStream stream(params.shape(), 3, 41);
  for (int t = 0; t < 2; ++t) {
    TorusFunction<Rational> f = stream.next();
    SchemeConstants<Rational> sc = scheme_constants(f, params, spec);
    PipelineChecks<Rational> pc = verify_pipeline(f, params, spec, Rational(3, 2));
    CHECK_EQ(sc.smooth_numerator, pc.smooth_directional);
  }
}

TEST_CASE("combined estimate at q=2 from the reported pieces") {
  // lhs_total <= 12 (n a_emp + m^2 s_emp) E_mix for the euclidean line
  SchemeParams params(2, 8, 3, 2);
  NormSpec spec(2, 2.0);
  RandomFunctionStream stream(params.shape(), 1, 59);
  for (int t = 0; t < 3; ++t) {
    TorusFunction<Rational> f = stream.next();
    SchemeConstants<Rational> sc = scheme_constants(f, params, spec);
    PipelineChecks<Rational> pc = verify_pipeline(f, params, spec, Rational(3, 2));
    REQUIRE(sc.a_defined);
    REQUIRE(sc.s_defined);
    EdgeMeasure mix = mixture_measure(diagonal_edge_measure(params.shape()),
                                      graded_edge_measure(params));
    Rational e_mix = edge_energy(f, mix, spec);
    Rational budget = Rational(12) *
                      (Rational(params.n) * sc.a_emp_q +
                       Rational(params.m) * Rational(params.m) * sc.s_emp_q) *
                      e_mix;
    CHECK(pc.lhs_total <= budget);
  }
}
