#include "cotype/suite.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <stdexcept>

#include "cotype/bernoulli.hpp"
#include "cotype/cotype_metrics.hpp"
#include "cotype/identities.hpp"
#include "cotype/lower_bounds.hpp"

namespace cotype {

const std::vector<std::string> kSuiteNames = {"bernoulli", "identities",   "cotype",
                                              "scheme",    "lower-bounds", "symmetrize"};

namespace {

int resolved_n(const RunConfig& cfg) { return cfg.n == 0 ? 2 : cfg.n; }

int bernoulli_size(const RunConfig& cfg) { return cfg.n == 0 ? 12 : cfg.n; }

NormSpec parse_norm_spec(const RunConfig& cfg) {
  int p;
  if (cfg.p == "1")
    p = 1;
  else if (cfg.p == "2")
    p = 2;
  else if (cfg.p == "inf")
    p = kPInfinity;
  else
    throw std::invalid_argument("p must be one of: 1, 2, inf");
  return NormSpec(p, cfg.q);
}

long integral_q(const RunConfig& cfg, const char* suite) {
  if (cfg.q != std::floor(cfg.q) || cfg.q < 1.0)
    throw std::invalid_argument(std::string(suite) + " suite needs an integer q >= 1");
  return static_cast<long>(cfg.q);
}

nlohmann::ordered_json base_params(const RunConfig& cfg) {
  nlohmann::ordered_json p;
  p["n"] = resolved_n(cfg);
  p["m"] = cfg.m;
  p["k"] = cfg.k;
  if (cfg.q == std::floor(cfg.q))
    p["q"] = static_cast<long>(cfg.q);
  else
    p["q"] = cfg.q;
  p["p"] = cfg.p;
  p["d"] = cfg.d;
  p["seed"] = cfg.seed;
  p["mode"] = cfg.mode;
  p["budget"] = cfg.budget;
  p["function"] = cfg.function;
  p["functions"] = cfg.functions;
  return p;
}

using RationalFamily = std::vector<std::pair<std::string, TorusFunction<Rational>>>;

RationalFamily function_family(const RunConfig& cfg, const TorusShape& shape) {
  RationalFamily family;
  if (cfg.function == "torus-abs") {
    if (cfg.d != 1) throw std::invalid_argument("function torus-abs is scalar; use --d 1");
    family.emplace_back("torus-abs", torus_abs_function<Rational>(shape));
  } else if (cfg.function == "random") {
    if (cfg.functions < 1) throw std::invalid_argument("functions must be >= 1");
    RandomFunctionStream stream(shape, cfg.d, cfg.seed);
    for (int i = 0; i < cfg.functions; ++i)
      family.emplace_back("random" + std::to_string(i), stream.next());
  } else if (cfg.function.rfind("file:", 0) == 0) {
    const std::string path = cfg.function.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open function file: " + path);
    nlohmann::json j;
    in >> j;
    TorusFunction<Rational> f = rational_function_from_json(j);
    if (!(f.shape == shape))
      throw std::invalid_argument("function file shape does not match --n/--m");
    family.emplace_back("file", std::move(f));
  } else {
    throw std::invalid_argument("unknown function: " + cfg.function +
                                " (expected torus-abs, random, or file:<path>)");
  }
  return family;
}

std::vector<std::pair<std::string, TorusFunction<double>>> to_float_family(const RationalFamily& family) {
  std::vector<std::pair<std::string, TorusFunction<double>>> out;
  out.reserve(family.size());
  for (const auto& [name, f] : family) out.emplace_back(name, to_float_function(f));
  return out;
}

void add_scalar(SuiteReport& report, const std::string& name, const Rational& v) {
  add_quantity(report, name, v);
}
void add_scalar(SuiteReport& report, const std::string& name, double v) {
  add_quantity(report, name, v);
}

bool approx_equal(const Rational& a, const Rational& b) { return a == b; }
bool approx_equal(double a, double b) {
  return std::fabs(a - b) <= 1e-9 * (1.0 + std::max(std::fabs(a), std::fabs(b)));
}

// ---------------------------------------------------------------- bernoulli

SuiteReport bernoulli_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "bernoulli";
  const int N = bernoulli_size(cfg);
  if (N < 1) throw std::invalid_argument("bernoulli suite needs table size n >= 1");
  report.params["N"] = N;
  report.params["mode"] = "exact";

  BernoulliTable table = bivariate_bernoulli(N);
  auto put = [&](int r, int s) {
    if (r <= N && s <= N)
      add_quantity(report, "B[" + std::to_string(r) + "," + std::to_string(s) + "]", table.at(r, s));
  };
  put(1, 1);
  put(2, 1);
  put(2, 2);
  put(3, 3);
  put(12, 0);
  put(12, 12);
  add_quantity(report, "bound_ratio", bernoulli_bound_ratio(table));

  RecursionCheck rec = verify_bivariate_recursion(table);
  add_check(report, "defining-recursion", rec.ok,
            rec.ok ? std::to_string(rec.checked) + " pairs" : rec.first_failure);

  bool symmetric = true;
  for (int r = 0; r <= N && symmetric; ++r)
    for (int s = 0; s <= N && symmetric; ++s) symmetric = table.at(r, s) == table.at(s, r);
  add_check(report, "symmetry", symmetric);

  std::vector<Rational> classical = classical_bernoulli(N);
  bool column = true;
  for (int r = 0; r <= N && column; ++r) column = table.at(r, 0) == classical[static_cast<std::size_t>(r)];
  add_check(report, "classical-column", column);

  if (N >= 10) {
    double reference = generating_function_value(0.5, 0.25);
    double series = truncated_series_value(table, 0.5, 0.25);
    double diff = std::fabs(reference - series);
    add_quantity(report, "series_diff", diff);
    add_check(report, "series-truncation", diff <= 1e-10);
  }

  if (!cfg.csv_out.empty()) {
    std::ofstream out(cfg.csv_out);
    if (!out) throw std::invalid_argument("cannot write csv file: " + cfg.csv_out);
    out << bernoulli_csv(table);
  }
  return report;
}

// ---------------------------------------------------------------- identities

SuiteReport identities_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "identities";
  const int n = resolved_n(cfg);
  SchemeParams params(n, cfg.m, cfg.k, static_cast<int>(integral_q(cfg, "identities")));
  require_identity_domain(params);
  report.params = base_params(cfg);
  report.params["mode"] = "exact";  // these sweeps are exact by construction

  auto push = [&](const IdentityReport& ir) {
    add_identity_report(report, ir);
    std::string detail = ir.ok() ? std::to_string(ir.checked) + " checked, " + ir.mode
                                 : (ir.failures.empty() ? "failed" : ir.failures.front());
    add_check(report, ir.identity, ir.ok(), detail);
  };

  push(verify_vanishing(params, cfg.budget, cfg.seed));
  push(verify_closed_form(params, cfg.budget, cfg.seed));
  BernoulliTable table = bivariate_bernoulli(n);
  push(verify_expansion(params, table, cfg.budget, cfg.seed));

  const std::size_t masks = static_cast<std::size_t>(1) << n;
  const std::size_t volume = params.shape().size();
  const std::size_t pair_count = static_cast<std::size_t>((n + 1) * (n + 2) / 2);
  if (masks * volume * (pair_count + 2) > (static_cast<std::size_t>(1) << 26))
    throw std::invalid_argument("identities sweep tables would be too large; reduce n or m");
  IdentityTables tables = build_identity_tables(params);
  for (const auto& [name, f] : function_family(cfg, params.shape())) {
    for (IdentityReport ir : verify_weighted_sums(tables, f, cfg.budget, cfg.seed)) {
      ir.identity = name + ":" + ir.identity;
      push(ir);
    }
  }
  return report;
}

// ---------------------------------------------------------------- cotype

template <class S>
void cotype_measurements(int n, const NormSpec& spec,
                         const std::vector<std::pair<std::string, TorusFunction<S>>>& family,
                         SuiteReport& report) {
  for (const auto& [name, f] : family) {
    RatioReport<S> r = metric_cotype_ratio(f, spec);
    add_scalar(report, name + ".lhs", r.lhs);
    add_scalar(report, name + ".rhs", r.rhs);
    if (r.ratio_defined)
      add_scalar(report, name + ".ratio", r.ratio);
    else
      add_quantity(report, name + ".ratio", std::string("undefined"));
    bool ok = r.ratio_defined || r.lhs == S{};
    add_check(report, name + ".ratio-defined", ok,
              ok ? "" : "zero right side with nonzero left side");
  }

  std::vector<std::vector<S>> basis(static_cast<std::size_t>(n),
                                    std::vector<S>(static_cast<std::size_t>(n), S{}));
  for (int i = 0; i < n; ++i)
    basis[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
        scalar_from_rational<S>(Rational(1));
  RatioReport<S> rc = rademacher_cotype_ratio(basis, spec);
  RatioReport<S> rt = rademacher_type_ratio(basis, spec);
  add_scalar(report, "rademacher.cotype_basis", rc.ratio);
  add_scalar(report, "rademacher.type_basis", rt.ratio);
  if (spec.p == 2 && spec.q == 2.0) {
    bool ok = rc.ratio_defined && approx_equal(rc.ratio, scalar_from_rational<S>(Rational(1)));
    add_check(report, "orthonormal-parallelogram", ok);
  }
}

SuiteReport cotype_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "cotype";
  const int n = resolved_n(cfg);
  if (cfg.m < 2 || cfg.m % 2 != 0) throw std::invalid_argument("cotype suite needs even m >= 2");
  NormSpec spec = parse_norm_spec(cfg);
  report.params = base_params(cfg);
  TorusShape shape(n, cfg.m);
  RationalFamily family = function_family(cfg, shape);
  if (cfg.mode == "exact") {
    if (!spec.exact_available())
      throw std::invalid_argument("(p,q) has no exact evaluation; rerun with --mode float");
    cotype_measurements<Rational>(n, spec, family, report);
  } else {
    report.tolerance = 1e-9;
    cotype_measurements<double>(n, spec, to_float_family(family), report);
  }
  return report;
}

// ---------------------------------------------------------------- scheme

template <class S>
void scheme_measurements(const SchemeParams& params, const NormSpec& spec,
                         const std::vector<std::pair<std::string, TorusFunction<S>>>& family,
                         SuiteReport& report) {
  const Rational ell1_constant(3, 2);
  const int n = params.n;
  for (const auto& [name, f] : family) {
    SchemeConstants<S> sc = scheme_constants(f, params, spec);
    PipelineChecks<S> pc = verify_pipeline(f, params, spec, ell1_constant);
    add_scalar(report, name + ".approx_numerator", sc.approx_numerator);
    add_scalar(report, name + ".smooth_numerator", sc.smooth_numerator);
    add_scalar(report, name + ".energy_beta1", sc.energy_beta1);
    add_scalar(report, name + ".energy_beta2", sc.energy_beta2);
    if (sc.a_defined)
      add_scalar(report, name + ".a_emp_q", sc.a_emp_q);
    else
      add_quantity(report, name + ".a_emp_q", std::string("undefined"));
    if (sc.s_defined)
      add_scalar(report, name + ".s_emp_q", sc.s_emp_q);
    else
      add_quantity(report, name + ".s_emp_q", std::string("undefined"));
    add_scalar(report, name + ".lhs_total", pc.lhs_total);

    add_check(report, name + ".triangle", pc.triangle_ok,
              pc.triangle_ok ? std::to_string(pc.triangle_checked) + " points" : pc.first_failure);
    add_check(report, name + ".telescope", pc.telescope_ok,
              pc.telescope_ok ? std::to_string(pc.telescope_checked) + " points" : pc.first_failure);
    add_check(report, name + ".integrated", pc.integrated_ok,
              pc.integrated_ok ? "" : pc.first_failure);
    add_check(report, name + ".edge-average", pc.ell1_ok, pc.ell1_ok ? "" : pc.first_failure);

    if (spec.p == 2 && spec.q == 2.0) {
      add_check(report, name + ".parallelogram",
                approx_equal(sc.smooth_numerator, pc.smooth_directional));
      S mix = edge_energy(f, mixture_measure(diagonal_edge_measure(params.shape()),
                                             graded_edge_measure(params)),
                          spec);
      bool combine_ok;
      if (sc.a_defined && sc.s_defined) {
        S m2 = scalar_from_count<S>(static_cast<std::uint64_t>(params.m)) *
               scalar_from_count<S>(static_cast<std::uint64_t>(params.m));
        S bound = scalar_from_count<S>(12) *
                  (scalar_from_count<S>(static_cast<std::uint64_t>(n)) * sc.a_emp_q +
                   m2 * sc.s_emp_q) *
                  mix;
        combine_ok = detail::leq(pc.lhs_total, bound);
      } else {
        combine_ok = pc.lhs_total == S{};
      }
      add_check(report, name + ".combine", combine_ok);
    }
  }
}

SuiteReport scheme_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "scheme";
  const int n = resolved_n(cfg);
  SchemeParams params(n, cfg.m, cfg.k, static_cast<int>(integral_q(cfg, "scheme")));
  if (cfg.m % 4 != 0)
    throw std::invalid_argument("scheme suite needs m divisible by 4 (half-period telescoping)");
  NormSpec spec = parse_norm_spec(cfg);
  report.params = base_params(cfg);
  RationalFamily family = function_family(cfg, params.shape());
  if (cfg.mode == "exact") {
    if (!spec.exact_available())
      throw std::invalid_argument("(p,q) has no exact evaluation; rerun with --mode float");
    scheme_measurements<Rational>(params, spec, family, report);
  } else {
    report.tolerance = 1e-9;
    scheme_measurements<double>(params, spec, to_float_family(family), report);
  }
  return report;
}

// ---------------------------------------------------------------- lower-bounds

SuiteReport lower_bounds_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "lower-bounds";
  const int n = resolved_n(cfg);
  const long q = integral_q(cfg, "lower-bounds");
  SchemeParams params(n, cfg.m, cfg.k, static_cast<int>(q));
  report.params = base_params(cfg);
  report.params["mode"] = "exact";

  std::vector<Kernel> family = scheme_kernels(params);
  Rational variation = marginal_variation(family);
  add_quantity(report, "marginal_variation", variation);
  add_check(report, "marginal-variation-value", variation == Rational(2) / Rational(cfg.k),
            "expected 2/k");

  if (cfg.k % 4 == 3) {
    const long s = (cfg.k - 1) / 2;
    Rational tail = tail_mass(family, s);
    add_quantity(report, "tail_s", Rational(s));
    add_quantity(report, "tail_mass", tail);
    Rational expected = Rational(cfg.k - s) / Rational(cfg.k);
    add_check(report, "tail-mass-value", tail == expected, "expected (k-s)/k");
    add_check(report, "tail-mass-lower", 2 * tail >= 1, "mass beyond s must be at least 1/2");
  }

  Rational delta = delta_smoothing_value(family, static_cast<int>(q));
  add_quantity(report, "delta_value", delta);
  add_check(report, "delta-lower-bound", delta >= rational_pow(variation, q),
            "point-mass witness dominates the variation bound");
  if (n == 1)
    add_check(report, "delta-variation-equality", delta == rational_pow(variation, q));

  MomentReport mom = abs_sum_moments(n, cfg.k);
  add_quantity(report, "moment.p", mom.p);
  add_quantity(report, "moment.abs_mean", mom.abs_mean);
  add_quantity(report, "moment.second", mom.second);
  add_quantity(report, "moment.fourth", mom.fourth);
  add_check(report, "moment-second-closed-form", mom.second == moment2_closed_form(n, cfg.k));
  add_check(report, "moment-fourth-closed-form", mom.fourth == moment4_closed_form(n, cfg.k));
  BandCheck band = moment_band_check(mom);
  add_check(report, "moment-band-lower", band.lower_ok);
  add_check(report, "moment-band-upper", band.upper_ok);
  double box_points = std::pow(static_cast<double>(cfg.k + 1), n);
  if (box_points <= 100000.0) {
    MomentReport enumerated = abs_sum_enumeration(n, cfg.k);
    add_check(report, "moment-enumeration",
              enumerated.abs_mean == mom.abs_mean && enumerated.second == mom.second &&
                  enumerated.fourth == mom.fourth);
  }

  if (cfg.m % 12 == 0) {
    const long s = 1;
    add_quantity(report, "jigsaw_s", Rational(s));
    bool lipschitz = true;
    for (long t = 0; t < cfg.m && lipschitz; ++t) {
      long dv = jigsaw_value(t + 1, s) - jigsaw_value(t, s);
      lipschitz = dv >= -1 && dv <= 1;
    }
    add_check(report, "jigsaw-lipschitz", lipschitz);
    TorusFunction<Rational> jig = jigsaw_function(params.shape(), s);
    Rational approx = family_approx_numerator(jig, family, NormSpec(kPInfinity, 1.0));
    add_quantity(report, "jigsaw_approx", approx);
    add_check(report, "jigsaw-approx-positive", approx > 0);
  }
  return report;
}

// ---------------------------------------------------------------- symmetrize

SuiteReport symmetrize_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "symmetrize";
  const int n = resolved_n(cfg);
  const long q = integral_q(cfg, "symmetrize");
  NormSpec spec = parse_norm_spec(cfg);
  if (!spec.exact_available())
    throw std::invalid_argument("symmetrize suite needs an exactly representable (p,q)");
  SchemeParams params(n, cfg.m, cfg.k, static_cast<int>(q));
  report.params = base_params(cfg);
  report.params["mode"] = "exact";
  const TorusShape shape = params.shape();

  std::vector<Kernel> family = scheme_kernels(params);
  std::vector<Kernel> symmetrized = symmetrize(family);
  bool fixed_point = true;
  bool mass_ok = true;
  for (int j = 0; j < n; ++j) {
    fixed_point = fixed_point && kernel_dense(symmetrized[static_cast<std::size_t>(j)]) ==
                                     kernel_dense(family[static_cast<std::size_t>(j)]);
    mass_ok = mass_ok && symmetrized[static_cast<std::size_t>(j)].mass() == 1;
  }
  add_check(report, "fixed-point", fixed_point, "box family is its own symmetrization");
  add_check(report, "mass-preserved", mass_ok);

  bool covariant = symmetrized_transposition_covariant(symmetrized);
  bool marginals = symmetrized_marginals_equal(symmetrized);
  int random_families = n <= 4 ? 3 : 0;
  for (int r = 0; r < random_families; ++r) {
    std::vector<Kernel> sym = symmetrize(random_kernel_family(shape, cfg.seed + static_cast<std::uint64_t>(r)));
    covariant = covariant && symmetrized_transposition_covariant(sym);
    marginals = marginals && symmetrized_marginals_equal(sym);
  }
  add_check(report, "transposition-covariance", covariant,
            "swapping axes j,h carries nu_bar_h to nu_bar_j");
  add_check(report, "marginal-equality", marginals,
            "off-axis marginals of nu_bar_i agree");

  TorusFunction<Rational> f = function_family(cfg, shape).front().second;
  std::vector<int> pi(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pi[static_cast<std::size_t>(i)] = (i + 1) % n;
  std::vector<int> inv = inverse_permutation(pi);

  TorusFunction<Rational> left = convolve(f, permute_kernel(family[0], pi));
  TorusFunction<Rational> right = permute_function(convolve(permute_function(f, inv), family[0]), pi);
  add_check(report, "convolution-permutation", left == right,
            "f * nu^pi == (f^{pi^-1} * nu)^pi");

  add_check(report, "norm-invariance",
            mean_norm_q(permute_function(f, pi), spec) == mean_norm_q(f, spec));

  if (n <= 5) {
    std::vector<Kernel> skew;
    std::vector<long> c(static_cast<std::size_t>(n), 0);
    for (int j = 0; j < n; ++j) {
      std::fill(c.begin(), c.end(), 0L);
      c[static_cast<std::size_t>(j)] = (j + 1) % cfg.m;
      skew.push_back(point_mass_kernel(shape, c.data()));
    }
    std::vector<Kernel> skew_sym = symmetrize(skew);
    Rational a_sym = family_approx_numerator(f, skew_sym, spec);
    Rational a_avg = 0;
    long permutations = 0;
    std::vector<int> perm = identity_permutation(n);
    do {
      ++permutations;
      std::vector<int> pinv = inverse_permutation(perm);
      std::vector<Kernel> moved;
      for (int j = 0; j < n; ++j)
        moved.push_back(permute_kernel(skew[static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])], pinv));
      a_avg += family_approx_numerator(f, moved, spec);
    } while (std::next_permutation(perm.begin(), perm.end()));
    a_avg /= Rational(permutations);
    add_quantity(report, "skew_A_sym", a_sym);
    add_quantity(report, "skew_A_avg", a_avg);
    add_check(report, "convexity", a_sym <= a_avg,
              "symmetrized family approximates no worse than the permutation average");
  }
  return report;
}

SuiteReport dispatch_suite(const RunConfig& cfg);

SuiteReport all_suite(const RunConfig& cfg) {
  SuiteReport report;
  report.suite = "all";
  report.params = base_params(cfg);
  for (const std::string& name : kSuiteNames) {
    RunConfig sub = cfg;
    sub.suite = name;
    report.subreports.push_back(build_suite_report(sub));
  }
  return report;
}

SuiteReport dispatch_suite(const RunConfig& cfg) {
  if (cfg.suite == "bernoulli") return bernoulli_suite(cfg);
  if (cfg.suite == "identities") return identities_suite(cfg);
  if (cfg.suite == "cotype") return cotype_suite(cfg);
  if (cfg.suite == "scheme") return scheme_suite(cfg);
  if (cfg.suite == "lower-bounds") return lower_bounds_suite(cfg);
  if (cfg.suite == "symmetrize") return symmetrize_suite(cfg);
  if (cfg.suite == "all") return all_suite(cfg);
  throw std::invalid_argument("unknown suite: " + cfg.suite);
}

}  // namespace

SuiteReport build_suite_report(const RunConfig& cfg) {
  if (cfg.mode != "exact" && cfg.mode != "float")
    throw std::invalid_argument("mode must be exact or float");
  auto start = std::chrono::steady_clock::now();
  SuiteReport report = dispatch_suite(cfg);
  auto stop = std::chrono::steady_clock::now();
  report.timing_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  return report;
}

int run_suite(const RunConfig& cfg) {
  SuiteReport report = build_suite_report(cfg);
  std::string text = render_report(report);
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(cfg.out);
    if (!out) throw std::invalid_argument("cannot write report file: " + cfg.out);
    out << text;
  }
  return report.all_ok() ? 0 : 1;
}

}  // namespace cotype
