#include "cotype/identities.hpp"

#include <bit>
#include <random>
#include <sstream>

#include "cotype/parallel.hpp"

namespace cotype {

namespace {

constexpr std::size_t kMaxRecordedFailures = 8;
constexpr std::uint64_t kMaxSampled = 65536;

void record_failure(IdentityReport& report, const std::string& message) {
  ++report.failure_count;
  if (report.failures.size() < kMaxRecordedFailures) report.failures.push_back(message);
}

IdentityReport merge_reports(IdentityReport a, const IdentityReport& b) {
  a.checked += b.checked;
  a.failure_count += b.failure_count;
  for (const auto& f : b.failures)
    if (a.failures.size() < kMaxRecordedFailures) a.failures.push_back(f);
  return a;
}

std::string point_string(const long* c, int n) {
  std::ostringstream os;
  os << "(";
  for (int t = 0; t < n; ++t) os << (t ? "," : "") << c[t];
  os << ")";
  return os.str();
}

std::string signs_string(const int* eps, int n) {
  std::ostringstream os;
  os << "(";
  for (int t = 0; t < n; ++t) os << (t ? "," : "") << eps[t];
  os << ")";
  return os.str();
}

long binomial_long(int n, int k) {
  if (k < 0 || k > n) return 0;
  return static_cast<long>(binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k)).get_si());
}

// Enumeration of the sweep domains: either all of Z_m^n or the odd box.
struct PointDomain {
  const SchemeParams& params;
  bool box_only;
  std::vector<long> odd;  // odd alphabet when box_only
  std::size_t count;

  PointDomain(const SchemeParams& p, bool box) : params(p), box_only(box) {
    if (box_only) {
      odd = odd_offsets(params.k);
      count = 1;
      for (int t = 0; t < params.n; ++t) count *= odd.size();
    } else {
      count = params.shape().size();
    }
  }

  void point(std::size_t index, long* coords) const {
    if (box_only) {
      for (int t = params.n - 1; t >= 0; --t) {
        coords[t] = mod_reduce(odd[index % odd.size()], params.m);
        index /= odd.size();
      }
    } else {
      params.shape().decode(index, coords);
    }
  }

  void random_point(std::mt19937_64& rng, long* coords) const {
    if (box_only) {
      for (int t = 0; t < params.n; ++t)
        coords[t] = mod_reduce(odd[static_cast<std::size_t>(draw_int(rng, 0, static_cast<long>(odd.size()) - 1))],
                               params.m);
    } else {
      for (int t = 0; t < params.n; ++t) coords[t] = draw_int(rng, 0, params.m - 1);
    }
  }
};

// Runs check(z, eps, report) over the (point, sign) domain, exhaustively when
// it fits the budget and by seeded sampling otherwise.
template <class Check>
IdentityReport run_sweep(const SchemeParams& params, const std::string& identity,
                         const std::string& domain, bool box_only, std::uint64_t budget,
                         std::uint64_t seed, Check&& check) {
  require_identity_domain(params);
  PointDomain points(params, box_only);
  const int n = params.n;
  const std::uint64_t masks = std::uint64_t{1} << n;
  const std::uint64_t total = points.count * masks;

  IdentityReport base;
  base.identity = identity;
  base.domain = domain;

  if (total <= budget) {
    base.mode = "exhaustive";
    return chunked_mapreduce(
        static_cast<std::size_t>(total), base,
        [&](std::size_t lo, std::size_t hi) {
          IdentityReport part;
          part.identity = identity;
          part.domain = domain;
          part.mode = "exhaustive";
          std::vector<long> z(static_cast<std::size_t>(n));
          std::vector<int> eps(static_cast<std::size_t>(n));
          for (std::size_t idx = lo; idx < hi; ++idx) {
            points.point(idx >> n, z.data());
            decode_signs(static_cast<std::uint32_t>(idx & (masks - 1)), n, eps.data());
            check(z.data(), eps.data(), part);
          }
          return part;
        },
        merge_reports);
  }

  std::uint64_t samples = std::min<std::uint64_t>(budget, kMaxSampled);
  std::ostringstream mode;
  mode << "sampled(seed=" << seed << ",count=" << samples << ")";
  base.mode = mode.str();
  std::mt19937_64 rng(seed);
  std::vector<long> z(static_cast<std::size_t>(n));
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (std::uint64_t s = 0; s < samples; ++s) {
    points.random_point(rng, z.data());
    decode_signs(static_cast<std::uint32_t>(rng() & (masks - 1)), n, eps.data());
    check(z.data(), eps.data(), base);
  }
  return base;
}

}  // namespace

KCounts k_counts(const TorusShape& shape, long k, const long* y, const int* eps) {
  KCounts counts;
  for (int t = 0; t < shape.n; ++t) {
    long v = signed_rep(y[t], shape.m) * eps[t];
    if (mod_reduce(v - k, shape.m) == 0) ++counts.pk;
    if (mod_reduce(v + k, shape.m) == 0) ++counts.mk;
  }
  return counts;
}

bool in_odd_box(const TorusShape& shape, long k, const long* z) {
  for (int t = 0; t < shape.n; ++t) {
    long r = signed_rep(z[t], shape.m);
    if (r % 2 == 0 || r < -k || r > k) return false;
  }
  return true;
}

int b_bruteforce(const TorusShape& shape, long k, const long* z, const int* eps, int i, int j) {
  const int n = shape.n;
  if (i < 0 || i > n || j < 0 || j > i) throw std::invalid_argument("b_bruteforce: bad (i,j)");
  int total = 0;
  int bits[32];
  int delta[32];
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    if (std::popcount(subset) != i) continue;
    int nb = 0;
    for (int t = 0; t < n; ++t)
      if ((subset >> t) & 1u) bits[nb++] = t;
    for (std::uint32_t corner = 0; corner < (1u << i); ++corner) {
      int disagreements = 0;
      for (int u = 0; u < i; ++u) {
        delta[bits[u]] = (corner >> u) & 1u ? -1 : 1;
        if (delta[bits[u]] != eps[bits[u]]) ++disagreements;
      }
      if (disagreements != j) continue;
      for (int sgn : {1, -1}) {
        bool member = true;
        for (int t = 0; t < n && member; ++t) {
          if ((subset >> t) & 1u) {
            member = mod_reduce(z[t] - delta[t] * k, shape.m) == 0;
          } else {
            long r = signed_rep(z[t] - sgn * eps[t], shape.m);
            member = r % 2 == 0 && r > -k && r < k;
          }
        }
        if (member) total += sgn;
      }
    }
  }
  return total;
}

int a_bruteforce(const TorusShape& shape, long k, const long* z, const int* eps) {
  const int n = shape.n;
  int total = 0;
  for (int j = 0; j < n; ++j) {
    for (int sgn : {1, -1}) {
      bool member = true;
      for (int t = 0; t < n && member; ++t) {
        long r = signed_rep(z[t] - (t == j ? sgn : 0), shape.m);
        if (t == j)
          member = r % 2 == 0 && r >= -(k - 1) && r <= k - 1;
        else
          member = r % 2 != 0 && r >= -k && r <= k;
      }
      if (member) total += sgn * eps[j];
    }
  }
  return total;
}

int b_closed_form(const KCounts& counts, int i, int j) {
  if (counts.mk == j) return static_cast<int>(binomial_long(counts.pmk() - j, i - j));
  if (counts.pk == i - j) return static_cast<int>(-binomial_long(counts.pmk() - (i - j), j));
  return 0;
}

void require_identity_domain(const SchemeParams& params) {
  if (params.m < 2 * params.k + 2)
    throw std::invalid_argument("identity sweep needs m >= 2k + 2 (wraparound-free boxes)");
}

IdentityReport verify_vanishing(const SchemeParams& params, std::uint64_t budget, std::uint64_t seed) {
  const TorusShape shape = params.shape();
  return run_sweep(
      params, "vanishing", "z in Z_m^n, eps in {-1,1}^n, 0<=j<=i<=n", /*box_only=*/false, budget, seed,
      [&](const long* z, const int* eps, IdentityReport& report) {
        bool box = in_odd_box(shape, params.k, z);
        KCounts counts = k_counts(shape, params.k, z, eps);
        for (int i = 0; i <= params.n; ++i) {
          for (int j = 0; j <= i; ++j) {
            if (box && i < counts.pmk()) continue;  // nonzero regime, covered by the closed form
            ++report.checked;
            int b = b_bruteforce(shape, params.k, z, eps, i, j);
            if (b != 0)
              record_failure(report, "b" + std::to_string(i) + "," + std::to_string(j) + " at z=" +
                                         point_string(z, params.n) + " eps=" + signs_string(eps, params.n) +
                                         " = " + std::to_string(b));
          }
        }
        if (!box) {
          ++report.checked;
          int a = a_bruteforce(shape, params.k, z, eps);
          if (a != 0)
            record_failure(report, "a off-box at z=" + point_string(z, params.n) + " eps=" +
                                       signs_string(eps, params.n) + " = " + std::to_string(a));
        }
      });
}

IdentityReport verify_closed_form(const SchemeParams& params, std::uint64_t budget, std::uint64_t seed) {
  const TorusShape shape = params.shape();
  return run_sweep(
      params, "closed-form", "z in odd box, eps in {-1,1}^n, 0<=j<=i<pmk", /*box_only=*/true, budget, seed,
      [&](const long* z, const int* eps, IdentityReport& report) {
        KCounts counts = k_counts(shape, params.k, z, eps);
        for (int i = 0; i < counts.pmk() && i <= params.n; ++i) {
          for (int j = 0; j <= i; ++j) {
            ++report.checked;
            int brute = b_bruteforce(shape, params.k, z, eps, i, j);
            int closed = b_closed_form(counts, i, j);
            if (brute != closed)
              record_failure(report, "b" + std::to_string(i) + "," + std::to_string(j) + " at z=" +
                                         point_string(z, params.n) + " eps=" + signs_string(eps, params.n) +
                                         ": brute " + std::to_string(brute) + " vs closed " +
                                         std::to_string(closed));
          }
        }
        ++report.checked;
        int a = a_bruteforce(shape, params.k, z, eps);
        if (a != counts.pMmk())
          record_failure(report, "a at z=" + point_string(z, params.n) + " eps=" +
                                     signs_string(eps, params.n) + ": " + std::to_string(a) + " vs pk-mk " +
                                     std::to_string(counts.pMmk()));
      });
}

IdentityReport verify_expansion(const SchemeParams& params, const BernoulliTable& table,
                                std::uint64_t budget, std::uint64_t seed) {
  if (table.N < params.n)
    throw std::invalid_argument("verify_expansion: Bernoulli table too small for this n");
  const TorusShape shape = params.shape();
  return run_sweep(
      params, "count-expansion", "y in odd box, eps in {-1,1}^n", /*box_only=*/true, budget, seed,
      [&](const long* z, const int* eps, IdentityReport& report) {
        KCounts counts = k_counts(shape, params.k, z, eps);
        Rational rhs = 0;
        for (int alpha = 0; alpha <= params.n; ++alpha)
          for (int beta = 0; beta <= alpha; ++beta) {
            const Rational& h = expansion_coefficient(table, alpha, beta);
            if (h == 0) continue;
            int b = b_bruteforce(shape, params.k, z, eps, alpha, beta);
            if (b != 0) rhs += h * Rational(b);
          }
        ++report.checked;
        if (rhs != Rational(counts.pMmk()))
          record_failure(report, "expansion at y=" + point_string(z, params.n) + " eps=" +
                                     signs_string(eps, params.n) + ": " + to_fraction_string(rhs) +
                                     " vs " + std::to_string(counts.pMmk()));
      });
}

IdentityTables build_identity_tables(const SchemeParams& params) {
  require_identity_domain(params);
  const TorusShape shape = params.shape();
  const int n = params.n;
  const std::size_t volume = shape.size();
  const std::uint32_t masks = 1u << n;

  IdentityTables tables{params, {}, {}, (n + 1) * (n + 2) / 2, {}, {}, {}};
  tables.box_mark.assign(volume, 0);
  std::vector<long> z(static_cast<std::size_t>(n));
  for (std::size_t x = 0; x < volume; ++x) {
    shape.decode(x, z.data());
    if (in_odd_box(shape, params.k, z.data())) {
      tables.box_mark[x] = 1;
      tables.box_indices.push_back(x);
    }
  }

  const std::size_t pc = static_cast<std::size_t>(tables.pair_count);
  tables.b.assign(static_cast<std::size_t>(masks) * volume * pc, 0);
  tables.a.assign(static_cast<std::size_t>(masks) * volume, 0);
  tables.pm.assign(static_cast<std::size_t>(masks) * volume, 0);

  std::vector<int> eps(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    decode_signs(mask, n, eps.data());
    for (std::size_t x = 0; x < volume; ++x) {
      shape.decode(x, z.data());
      std::size_t cell = static_cast<std::size_t>(mask) * volume + x;
      KCounts counts = k_counts(shape, params.k, z.data(), eps.data());
      tables.pm[cell] = counts.pMmk();
      tables.a[cell] = a_bruteforce(shape, params.k, z.data(), eps.data());
      for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= i; ++j)
          tables.b[cell * pc + static_cast<std::size_t>(IdentityTables::pair_index(i, j))] =
              b_bruteforce(shape, params.k, z.data(), eps.data(), i, j);
    }
  }
  return tables;
}

namespace {

// Right-side descriptor of the subset/corner sum: one entry per admissible
// (S, delta) pair, with the two translation offsets premapped to torus indices.
struct CornerTerm {
  int pair;                    // (|S|, disagreements)
  std::uint32_t cube_mask;     // complement of S
  std::size_t offset_plus;     // delta*k + eps on S^c
  std::size_t offset_minus;    // delta*k - eps on S^c
};

std::vector<CornerTerm> corner_terms(const SchemeParams& params, const int* eps) {
  const TorusShape shape = params.shape();
  const int n = params.n;
  std::vector<CornerTerm> terms;
  std::vector<long> wp(static_cast<std::size_t>(n)), wm(static_cast<std::size_t>(n));
  int bits[32];
  int delta[32];
  for (std::uint32_t subset = 0; subset < (1u << n); ++subset) {
    int i = std::popcount(subset);
    int nb = 0;
    for (int t = 0; t < n; ++t)
      if ((subset >> t) & 1u) bits[nb++] = t;
    for (std::uint32_t corner = 0; corner < (1u << i); ++corner) {
      int disagreements = 0;
      for (int u = 0; u < i; ++u) {
        delta[bits[u]] = (corner >> u) & 1u ? -1 : 1;
        if (delta[bits[u]] != eps[bits[u]]) ++disagreements;
      }
      for (int t = 0; t < n; ++t) {
        if ((subset >> t) & 1u) {
          wp[static_cast<std::size_t>(t)] = delta[t] * params.k;
          wm[static_cast<std::size_t>(t)] = delta[t] * params.k;
        } else {
          wp[static_cast<std::size_t>(t)] = eps[t];
          wm[static_cast<std::size_t>(t)] = -eps[t];
        }
      }
      terms.push_back({IdentityTables::pair_index(i, disagreements), (~subset) & ((1u << n) - 1),
                       shape.encode(wp.data()), shape.encode(wm.data())});
    }
  }
  return terms;
}

}  // namespace

std::vector<IdentityReport> verify_weighted_sums(const IdentityTables& tables,
                                                 const TorusFunction<Rational>& f,
                                                 std::uint64_t budget, std::uint64_t seed) {
  const SchemeParams& params = tables.params;
  const TorusShape shape = params.shape();
  if (!(f.shape == shape)) throw std::invalid_argument("verify_weighted_sums: shape mismatch");
  const int n = params.n;
  const int d = f.d;
  const std::size_t volume = shape.size();
  const std::uint32_t masks = 1u << n;
  const std::size_t pc = static_cast<std::size_t>(tables.pair_count);

  // per-axis smoothing and per-cube averaging of f, shared across the sweep
  std::vector<TorusFunction<Rational>> smoothed;
  smoothed.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) smoothed.push_back(smooth(f, params, j));
  std::vector<TorusFunction<Rational>> cubes;
  cubes.reserve(masks);
  for (std::uint32_t b_mask = 0; b_mask < masks; ++b_mask) cubes.push_back(cube_average(f, params, b_mask));

  std::vector<std::vector<CornerTerm>> terms_by_mask(masks);
  std::vector<int> eps(static_cast<std::size_t>(n));
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    decode_signs(mask, n, eps.data());
    terms_by_mask[mask] = corner_terms(params, eps.data());
  }

  Rational cardinality = Rational(params.k) * rational_pow(Rational(params.k + 1), n - 1);
  std::vector<Rational> kpow(static_cast<std::size_t>(n) + 1);
  for (int i = 0; i <= n; ++i) kpow[static_cast<std::size_t>(i)] = rational_pow(Rational(params.k), n - i);

  IdentityReport kernel_report{"weighted-kernel",
                               "x in Z_m^n, eps in {-1,1}^n", "", 0, 0, {}};
  IdentityReport count_report{"weighted-count", "x in Z_m^n, eps in {-1,1}^n", "", 0, 0, {}};
  IdentityReport b_report{"weighted-b", "x in Z_m^n, eps in {-1,1}^n, 0<=j<=i<=n", "", 0, 0, {}};
  IdentityReport restriction_report{"box-restriction", "z off the odd box, eps in {-1,1}^n", "", 0, 0, {}};

  // table scan: off-box coefficients are identically zero, so restricting the
  // weighted sums to x + box is lossless
  restriction_report.mode = "exhaustive";
  for (std::uint32_t mask = 0; mask < masks; ++mask) {
    for (std::size_t z = 0; z < volume; ++z) {
      if (tables.box_mark[z]) continue;
      std::size_t cell = static_cast<std::size_t>(mask) * volume + z;
      ++restriction_report.checked;
      bool zero = tables.a[cell] == 0;
      for (std::size_t t = 0; t < pc && zero; ++t) zero = tables.b[cell * pc + t] == 0;
      if (!zero) record_failure(restriction_report, "nonzero coefficient off the box");
    }
  }

  const std::uint64_t total = static_cast<std::uint64_t>(volume) * masks;
  const bool exhaustive = total <= budget;
  std::uint64_t samples = exhaustive ? total : std::min<std::uint64_t>(budget, kMaxSampled);
  {
    std::ostringstream mode;
    if (exhaustive)
      mode << "exhaustive";
    else
      mode << "sampled(seed=" << seed << ",count=" << samples << ")";
    kernel_report.mode = count_report.mode = b_report.mode = mode.str();
  }

  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> sampled_cells;
  if (!exhaustive) {
    sampled_cells.reserve(samples);
    for (std::uint64_t s = 0; s < samples; ++s)
      sampled_cells.push_back((rng() % volume) * masks + (rng() & (masks - 1)));
  }

  struct Reports {
    IdentityReport kernel, count, b;
  };
  Reports init{kernel_report, count_report, b_report};

  Reports out = chunked_mapreduce(
      static_cast<std::size_t>(samples), init,
      [&](std::size_t lo, std::size_t hi) {
        Reports part = init;
        std::vector<Rational> lhs_a(static_cast<std::size_t>(d));
        std::vector<Rational> lhs_pm(static_cast<std::size_t>(d));
        std::vector<Rational> rhs_dir(static_cast<std::size_t>(d));
        std::vector<Rational> lhs_pairs(pc * static_cast<std::size_t>(d));
        std::vector<Rational> rhs_pairs(pc * static_cast<std::size_t>(d));
        for (std::size_t s = lo; s < hi; ++s) {
          std::uint64_t cell_id = exhaustive ? s : sampled_cells[s];
          std::size_t x = static_cast<std::size_t>(cell_id / masks);
          std::uint32_t mask = static_cast<std::uint32_t>(cell_id % masks);
          const std::size_t table_base = static_cast<std::size_t>(mask) * volume;

          for (int c = 0; c < d; ++c) {
            lhs_a[static_cast<std::size_t>(c)] = 0;
            lhs_pm[static_cast<std::size_t>(c)] = 0;
            rhs_dir[static_cast<std::size_t>(c)] = 0;
          }
          std::fill(lhs_pairs.begin(), lhs_pairs.end(), Rational(0));
          std::fill(rhs_pairs.begin(), rhs_pairs.end(), Rational(0));

          // left sides: sums over the translated box
          for (std::size_t z : tables.box_indices) {
            std::size_t y = shape.add(x, z);
            const Rational* fy = f.at(y);
            std::size_t cell = table_base + z;
            if (int av = tables.a[cell]; av != 0)
              for (int c = 0; c < d; ++c) lhs_a[static_cast<std::size_t>(c)] += Rational(av) * fy[c];
            if (int pv = tables.pm[cell]; pv != 0)
              for (int c = 0; c < d; ++c) lhs_pm[static_cast<std::size_t>(c)] += Rational(pv) * fy[c];
            const int* brow = &tables.b[cell * pc];
            for (std::size_t t = 0; t < pc; ++t)
              if (brow[t] != 0)
                for (int c = 0; c < d; ++c)
                  lhs_pairs[t * static_cast<std::size_t>(d) + static_cast<std::size_t>(c)] +=
                      Rational(brow[t]) * fy[c];
          }

          // right side of the kernel/count identities
          for (int j = 0; j < n; ++j) {
            int e = sign_at(mask, j);
            const Rational* up = smoothed[static_cast<std::size_t>(j)].at(shape.shift(x, j, 1));
            const Rational* dn = smoothed[static_cast<std::size_t>(j)].at(shape.shift(x, j, -1));
            for (int c = 0; c < d; ++c)
              rhs_dir[static_cast<std::size_t>(c)] += Rational(e) * (up[c] - dn[c]);
          }
          for (int c = 0; c < d; ++c) rhs_dir[static_cast<std::size_t>(c)] *= cardinality;

          ++part.kernel.checked;
          if (lhs_a != rhs_dir)
            record_failure(part.kernel, "kernel identity at x index " + std::to_string(x) +
                                            ", eps mask " + std::to_string(mask));
          ++part.count.checked;
          if (lhs_pm != rhs_dir)
            record_failure(part.count, "count identity at x index " + std::to_string(x) +
                                           ", eps mask " + std::to_string(mask));

          // right side of the subset/corner identities
          for (const CornerTerm& term : terms_by_mask[mask]) {
            const TorusFunction<Rational>& cube = cubes[term.cube_mask];
            const Rational* plus = cube.at(shape.add(x, term.offset_plus));
            const Rational* minus = cube.at(shape.add(x, term.offset_minus));
            for (int c = 0; c < d; ++c)
              rhs_pairs[static_cast<std::size_t>(term.pair) * static_cast<std::size_t>(d) +
                        static_cast<std::size_t>(c)] += plus[c] - minus[c];
          }
          for (int i = 0; i <= n; ++i)
            for (int j = 0; j <= i; ++j) {
              std::size_t t = static_cast<std::size_t>(IdentityTables::pair_index(i, j));
              ++part.b.checked;
              bool same = true;
              for (int c = 0; c < d && same; ++c) {
                std::size_t at = t * static_cast<std::size_t>(d) + static_cast<std::size_t>(c);
                same = lhs_pairs[at] == kpow[static_cast<std::size_t>(i)] * rhs_pairs[at];
              }
              if (!same)
                record_failure(part.b, "subset identity (i,j)=(" + std::to_string(i) + "," +
                                           std::to_string(j) + ") at x index " + std::to_string(x) +
                                           ", eps mask " + std::to_string(mask));
            }
        }
        return part;
      },
      [](Reports a, const Reports& b) {
        a.kernel = merge_reports(std::move(a.kernel), b.kernel);
        a.count = merge_reports(std::move(a.count), b.count);
        a.b = merge_reports(std::move(a.b), b.b);
        return a;
      });

  return {out.kernel, out.count, out.b, restriction_report};
}

std::vector<IdentityReport> verify_weighted_sums(const SchemeParams& params,
                                                 const TorusFunction<Rational>& f,
                                                 std::uint64_t budget, std::uint64_t seed) {
  IdentityTables tables = build_identity_tables(params);
  return verify_weighted_sums(tables, f, budget, seed);
}

}  // namespace cotype
