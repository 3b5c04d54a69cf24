#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "qshuffle/fft.hpp"

namespace qshuffle {

// ---- built-in quiver fixtures ----

inline Quiver fixture_a1(std::vector<int> fk = {}, std::vector<int> fl = {}) {
  return Quiver({"1"}, {}, std::move(fk), std::move(fl));
}
inline Quiver fixture_jordan(std::vector<int> fk = {}, std::vector<int> fl = {}) {
  return Quiver({"1"}, {{"t", "1", "1"}}, std::move(fk), std::move(fl));
}
inline Quiver fixture_a2(std::vector<int> fk = {}, std::vector<int> fl = {}) {
  return Quiver({"1", "2"}, {{"t", "1", "2"}}, std::move(fk), std::move(fl));
}
inline Quiver fixture_kronecker(std::vector<int> fk = {}, std::vector<int> fl = {}) {
  return Quiver({"1", "2"}, {{"t1", "1", "2"}, {"t2", "1", "2"}}, std::move(fk), std::move(fl));
}

inline Quiver fixture(const std::string& name, std::vector<int> fk = {},
                      std::vector<int> fl = {}) {
  if (name == "a1") return fixture_a1(std::move(fk), std::move(fl));
  if (name == "jordan") return fixture_jordan(std::move(fk), std::move(fl));
  if (name == "a2") return fixture_a2(std::move(fk), std::move(fl));
  if (name == "kronecker") return fixture_kronecker(std::move(fk), std::move(fl));
  throw std::invalid_argument("unknown fixture: " + name);
}

// ---- deterministic RNG (splitmix64) ----

class Rng {
 public:
  explicit Rng(uint64_t seed) : s_(seed + 0x9e3779b97f4a7c15ull) {}
  uint64_t next() {
    uint64_t z = (s_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  int below(int n) { return n <= 1 ? 0 : static_cast<int>(next() % static_cast<uint64_t>(n)); }
  int in(int lo, int hi) { return lo + below(hi - lo + 1); }

 private:
  uint64_t s_;
};

// ---- random elements ----

namespace detail {

inline std::vector<std::vector<int>> permutations_of(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i + 1;
  std::vector<std::vector<int>> out;
  do {
    out.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  return out;
}

}  // namespace detail

// orbit sum of p under the per-vertex symmetric groups of n
inline Poly symmetrize(const Quiver& q, const DimVector& n, const Poly& p) {
  std::vector<std::vector<std::vector<int>>> per;
  for (int c : n) per.push_back(detail::permutations_of(c));
  Poly out;
  for (auto& combo : detail::cartesian(per))
    out += substitute(p, detail::relabel_bindings(q, combo));
  return out;
}

// random z-homogeneous color-symmetric Laurent polynomial in z[i, 1..n_i]
inline Poly random_symmetric_g(const Quiver& q, const DimVector& n, Rng& rng, int vdeg_window,
                               int coeff_bound) {
  Monomial m = Monomial::var(sym_q(), rng.in(-1, 1));
  std::vector<Sym> zs;
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int a = 1; a <= n[static_cast<size_t>(i)]; ++a)
      zs.push_back(sym_z(q.vertex_name(i), a));
  for (Sym s : zs) m = m * Monomial::var(s, rng.in(-vdeg_window, vdeg_window));
  int c = rng.in(1, std::max(1, coeff_bound));
  if (rng.below(2)) c = -c;
  Poly g = symmetrize(q, n, Poly::term(c, m));
  // occasionally add a second orbit of the same total z-degree
  if (zs.size() >= 2 && rng.below(2)) {
    Monomial m2 = m * Monomial::var(zs[0]) * Monomial::var(zs[1], -1);
    g += symmetrize(q, n, Poly::term(rng.in(1, std::max(1, coeff_bound)), m2));
  }
  if (g.is_zero()) g = symmetrize(q, n, Poly::term(1, m));
  return g;
}

inline DimVector random_hdeg(const Quiver& q, Rng& rng, int max_total) {
  DimVector n = dim_zero(q);
  int total = rng.in(1, std::max(1, max_total));
  for (int t = 0; t < total; ++t) ++n[static_cast<size_t>(rng.below(q.n_vertices()))];
  return n;
}

inline ShuffleElement random_gen(const Quiver& q, Rng& rng, int max_total_hdeg, int vdeg_window,
                                 int coeff_bound, Side side = Side::Plus) {
  DimVector n = random_hdeg(q, rng, max_total_hdeg);
  Poly g = random_symmetric_g(q, n, rng, vdeg_window, coeff_bound);
  return gen_e(q, n, g, side);
}

// ---- worker pool and reporting ----

struct SuiteConfig {
  std::string suite;
  DimVector d;  // empty means one per vertex
  int max_hdeg = 2;
  int vdeg_window = 1;
  uint64_t seed = 1;
  int coeff_bound = 3;
  int cases = 25;
};

struct CaseResult {
  std::string descriptor;
  bool pass = false;
  std::string witness;
};

struct VerificationReport {
  std::string suite;
  size_t cases = 0, passes = 0;
  std::vector<CaseResult> failures;
  long wall_ms = 0;

  bool all_pass() const { return failures.empty(); }
};

inline std::string format(const VerificationReport& r) {
  std::string out = "suite: " + r.suite + "\n";
  out += "cases: " + std::to_string(r.cases) + "\n";
  out += "passes: " + std::to_string(r.passes) + "\n";
  out += "failures: " + std::to_string(r.failures.size()) + "\n";
  for (auto& f : r.failures) {
    out += "FAIL " + f.descriptor + "\n";
    if (!f.witness.empty()) out += "  witness: " + f.witness + "\n";
  }
  out += "wall_ms: " + std::to_string(r.wall_ms) + "\n";
  return out;
}

inline int worker_count() {
  const char* s = std::getenv("QSHUFFLE_THREADS");
  if (!s) return 1;
  int v = std::atoi(s);
  return v < 1 ? 1 : v;
}

using SuiteCase = std::function<CaseResult()>;

inline std::vector<CaseResult> run_cases(const std::vector<SuiteCase>& tasks) {
  std::vector<CaseResult> out(tasks.size());
  auto run_one = [&](size_t i) {
    try {
      out[i] = tasks[i]();
    } catch (const std::exception& e) {
      out[i].pass = false;
      if (out[i].descriptor.empty()) out[i].descriptor = "case " + std::to_string(i);
      out[i].witness = std::string("exception: ") + e.what();
    }
  };
  int T = std::min<int>(worker_count(), static_cast<int>(tasks.size()));
  if (T <= 1) {
    for (size_t i = 0; i < tasks.size(); ++i) run_one(i);
    return out;
  }
  std::atomic<size_t> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < T; ++t)
    pool.emplace_back([&] {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        run_one(i);
      }
    });
  for (auto& th : pool) th.join();
  return out;
}

// ---- the verification suites ----

namespace detail {

inline SuiteCase mk_case(std::string desc, std::function<bool(std::string&)> body) {
  return [desc = std::move(desc), body = std::move(body)]() {
    CaseResult r;
    r.descriptor = desc;
    r.pass = body(r.witness);
    return r;
  };
}

inline DimVector effective_dim(const Quiver& q, const SuiteConfig& cfg) {
  if (cfg.d.empty()) return DimVector(static_cast<size_t>(q.n_vertices()), 1);
  if (static_cast<int>(cfg.d.size()) != q.n_vertices())
    throw std::invalid_argument("suite: dimension vector size mismatch");
  return cfg.d;
}

inline std::vector<SuiteCase> suite_hom(const Quiver& q, const SuiteConfig& cfg) {
  auto ctx = std::make_shared<CoulombContext>(q, effective_dim(q, cfg));
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  for (int c = 0; c < cfg.cases; ++c) {
    ShuffleElement E = random_gen(q, rng, cfg.max_hdeg, cfg.vdeg_window, cfg.coeff_bound);
    ShuffleElement F = random_gen(q, rng, cfg.max_hdeg, cfg.vdeg_window, cfg.coeff_bound);
    tasks.push_back(mk_case(
        "hom case " + std::to_string(c) + " hdeg " + dim_to_string(q, E.hdeg()) + " x " +
            dim_to_string(q, F.hdeg()),
        [=](std::string& w) {
          DiffOp lhs = phi_residue(*ctx, shuffle_mul(q, E, F));
          DiffOp rhs = dop_mul(phi_residue(*ctx, E), phi_residue(*ctx, F));
          if (dop_eq(lhs, rhs)) return true;
          w = "difference " + to_string(lhs - rhs);
          return false;
        }));
  }
  // must detect a deliberately scaled right-hand side
  ShuffleElement E0 = gen_e(q, dim_unit(q, 0), Poly(1));
  tasks.push_back(mk_case("negative control: scaled homomorphism rhs", [=](std::string& w) {
    DiffOp lhs = phi_residue(*ctx, shuffle_mul(q, E0, E0));
    DiffOp rhs = dop_mul(phi_residue(*ctx, E0), phi_residue(*ctx, E0))
                     .scaled(Rat(Poly::var(sym_q())));
    if (lhs.is_zero()) {
      w = "control image is zero";
      return false;
    }
    if (dop_eq(lhs, rhs)) {
      w = "scaled rhs was not detected";
      return false;
    }
    return true;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_wheel(const Quiver& q, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  for (int c = 0; c < cfg.cases; ++c) {
    int nf = rng.in(1, 3);
    ShuffleElement prod = shuffle_identity(q);
    for (int f = 0; f < nf && dim_total(prod.hdeg()) < 4; ++f)
      prod = shuffle_mul(q, prod, random_gen(q, rng, 2, cfg.vdeg_window, cfg.coeff_bound));
    tasks.push_back(mk_case(
        "wheel case " + std::to_string(c) + " hdeg " + dim_to_string(q, prod.hdeg()),
        [=](std::string& w) {
          IntegralityResult r = is_integral(q, prod);
          if (r.pass) return true;
          w = "partition " + parts_to_string(r.witness.parts) + " remainder " +
              to_string(r.remainder);
          return false;
        }));
  }
  tasks.push_back(mk_case("negative control: constant 1 at unit hdeg", [=](std::string& w) {
    ShuffleElement bad(q, Side::Plus, dim_unit(q, 0), Poly(1));
    IntegralityResult r = is_integral(q, bad);
    if (r.pass) {
      w = "non-integral element passed";
      return false;
    }
    return true;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_commutator(const Quiver& q, const SuiteConfig& cfg) {
  auto ctx = std::make_shared<CoulombContext>(q, effective_dim(q, cfg));
  std::vector<SuiteCase> tasks;
  auto lhs_of = [ctx, &q](int i, int j, int k, int l) {
    DiffOp Ek = phi_residue(*ctx, gen_loc(q, i, k, Side::Plus));
    DiffOp Fl = phi_residue(*ctx, gen_loc(q, j, l, Side::Minus));
    return dop_mul(Ek, Fl) - dop_mul(Fl, Ek);
  };
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int j = 0; j < q.n_vertices(); ++j)
      for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l)
          tasks.push_back(mk_case(
              "commutator i=" + q.vertex_name(i) + " j=" + q.vertex_name(j) +
                  " k=" + std::to_string(k) + " l=" + std::to_string(l),
              [=, &q](std::string& w) {
                DiffOp lhs = lhs_of(i, j, k, l);
                DiffOp rhs = relation_rhs(*ctx, i, j, k, l);
                if (dop_eq(lhs, rhs)) return true;
                w = "lhs " + to_string(lhs) + " rhs " + to_string(rhs);
                return false;
              }));
  tasks.push_back(mk_case("negative control: scaled commutator rhs", [=, &q](std::string& w) {
    for (int i = 0; i < q.n_vertices(); ++i)
      for (int k = -2; k <= 2; ++k)
        for (int l = -2; l <= 2; ++l) {
          DiffOp rhs = relation_rhs(*ctx, i, i, k, l);
          if (rhs.is_zero()) continue;
          if (dop_eq(lhs_of(i, i, k, l), rhs.scaled(Rat(Poly::var(sym_q()))))) {
            w = "scaled rhs was not detected";
            return false;
          }
          return true;
        }
    w = "no nonzero right-hand side in range";
    return false;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_cartan(const Quiver& q, const SuiteConfig& cfg) {
  auto ctx = std::make_shared<CoulombContext>(q, effective_dim(q, cfg));
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  for (int c = 0; c < cfg.cases; ++c) {
    ShuffleElement E = random_gen(q, rng, cfg.max_hdeg, cfg.vdeg_window, cfg.coeff_bound);
    ShuffleElement F =
        random_gen(q, rng, cfg.max_hdeg, cfg.vdeg_window, cfg.coeff_bound, Side::Minus);
    int v = rng.below(q.n_vertices());
    int k = rng.in(1, 2);
    struct Rel {
      int which;
      bool on_E;
      CartanGenerator g;
    };
    std::vector<Rel> rels = {
        {43, true, {CartanKind::Central, v, k}},  {43, false, {CartanKind::Central, v, k}},
        {44, true, {CartanKind::KappaPlus, v, 0}}, {45, false, {CartanKind::KappaPlus, v, 0}},
        {46, true, {CartanKind::KappaMinus, v, 0}}, {47, false, {CartanKind::KappaMinus, v, 0}},
        {48, true, {CartanKind::PowerSum, v, k}},  {49, false, {CartanKind::PowerSum, v, k}},
    };
    for (auto& r : rels) {
      const ShuffleElement& X = r.on_E ? E : F;
      tasks.push_back(mk_case(
          "cartan relation " + std::to_string(r.which) + " case " + std::to_string(c) +
              " vertex " + q.vertex_name(v),
          [=, &q](std::string& w) {
            if (cartan_relation_check(*ctx, r.which, X, r.g)) return true;
            w = "relation failed on hdeg " + dim_to_string(q, X.hdeg());
            return false;
          }));
    }
  }
  tasks.push_back(mk_case("negative control: extra scaling on a kappa relation",
                          [=, &q](std::string& w) {
    ShuffleElement E0 = gen_e(q, dim_unit(q, 0), Poly(1));
    DiffOp A = phi_cartan(*ctx, {CartanKind::KappaPlus, 0, 0});
    DiffOp X = phi_residue(*ctx, E0);
    long p = pairing(q, dim_unit(q, 0), E0.hdeg());
    DiffOp wrong = dop_mul(X, A).scaled(
        Rat(Poly::var(sym_q(), static_cast<int>(-p) + 1)));
    if (X.is_zero()) {
      w = "control image is zero";
      return false;
    }
    if (dop_eq(dop_mul(A, X), wrong)) {
      w = "wrong scaling exponent was not detected";
      return false;
    }
    return true;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_chi(const Quiver&, const SuiteConfig&) {
  std::vector<SuiteCase> tasks;
  for (int k = 1; k <= 5; ++k)
    for (int kp = 1; kp <= 5; ++kp) {
      tasks.push_back(mk_case(
          "chi inequality box k=" + std::to_string(k) + " k'=" + std::to_string(kp),
          [=](std::string& w) {
            for (int l = 0; l <= k; ++l)
              for (int lp = 0; lp <= kp; ++lp)
                for (int c = -6; c <= 6; ++c) {
                  int gap = chi_gap(k, kp, l, lp, c);
                  if (gap < 0 || gap > 1) {
                    w = "gap " + std::to_string(gap) + " at l=" + std::to_string(l) +
                        " l'=" + std::to_string(lp) + " c=" + std::to_string(c);
                    return false;
                  }
                }
            return true;
          }));
      tasks.push_back(mk_case(
          "chi sum identity n=" + std::to_string(k) + " n'=" + std::to_string(kp),
          [=](std::string& w) {
            int sum = 0;
            for (int c = -(k + kp); c <= k + kp; ++c) sum += chi(k, kp, c);
            int want = k * kp - std::min(k, kp);
            if (sum == want) return true;
            w = "sum " + std::to_string(sum) + " expected " + std::to_string(want);
            return false;
          }));
    }
  tasks.push_back(mk_case("negative control: inequality without the cross terms",
                          [](std::string& w) {
    for (int k = 1; k <= 5; ++k)
      for (int kp = 1; kp <= 5; ++kp)
        for (int l = 0; l <= k; ++l)
          for (int lp = 0; lp <= kp; ++lp)
            for (int c = -6; c <= 6; ++c) {
              int rhs = chi_ext(l, lp, c) + chi_ext(k - l, kp - lp, c + l - lp);
              if (rhs < chi_ext(k, kp, c)) return true;  // the weakened bound does fail
            }
    w = "weakened inequality never failed";
    return false;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_xi(const Quiver& q, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  for (int c = 0; c < cfg.cases; ++c) {
    ShuffleElement E = random_gen(q, rng, cfg.max_hdeg, cfg.vdeg_window, cfg.coeff_bound);
    ShuffleElement F = random_gen(q, rng, cfg.max_hdeg, cfg.vdeg_window, cfg.coeff_bound);
    tasks.push_back(mk_case(
        "xi intertwiner case " + std::to_string(c) + " hdeg " + dim_to_string(q, E.hdeg()) +
            " x " + dim_to_string(q, F.hdeg()),
        [=, &q](std::string& w) {
          Rat lhs = xi(q, shuffle_mul(q, E, F));
          BarElement rhs =
              shuffle_mul_bar(q, {E.hdeg(), xi(q, E)}, {F.hdeg(), xi(q, F)});
          if (rat_eq(lhs, rhs.value)) return true;
          w = "lhs " + to_string(lhs) + " rhs " + to_string(rhs.value);
          return false;
        }));
  }
  tasks.push_back(mk_case("negative control: scaled bar product", [=, &q](std::string& w) {
    ShuffleElement E0 = gen_e(q, dim_unit(q, 0), Poly(1));
    Rat lhs = xi(q, shuffle_mul(q, E0, E0));
    BarElement rhs = shuffle_mul_bar(q, {E0.hdeg(), xi(q, E0)}, {E0.hdeg(), xi(q, E0)});
    Rat scaled = rhs.value * Rat(Poly::var(sym_q()));
    if (lhs.is_zero()) {
      w = "control value is zero";
      return false;
    }
    if (rat_eq(lhs, scaled)) {
      w = "scaled product was not detected";
      return false;
    }
    return true;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_psym(const Quiver& q, const SuiteConfig& cfg, int max_total) {
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  std::vector<DimVector> dims;
  {
    std::vector<std::vector<int>> per(static_cast<size_t>(q.n_vertices()));
    for (auto& p : per)
      for (int v = 0; v <= max_total; ++v) p.push_back(v);
    for (auto& d : cartesian(per))
      if (dim_total(d) >= 1 && dim_total(d) <= max_total) dims.push_back(d);
  }
  for (auto& n : dims)
    for (const IPartition& P : partitions_of(n)) {
      IPartition m = transpose(P);
      size_t nrows = 0;
      for (auto& ps : m.parts) nrows = std::max(nrows, ps.size());
      std::vector<Poly> gs;
      for (size_t a = 0; a < nrows; ++a) {
        DimVector ma;
        for (int i = 0; i < q.n_vertices(); ++i)
          ma.push_back(a < m.parts[static_cast<size_t>(i)].size()
                           ? m.parts[static_cast<size_t>(i)][a]
                           : 0);
        gs.push_back(random_symmetric_g(q, ma, rng, cfg.vdeg_window, cfg.coeff_bound));
      }
      tasks.push_back(mk_case(
          "psym partition " + parts_to_string(P.parts),
          [=, &q](std::string& w) {
            ShuffleElement el = psym_product(q, P, gs);
            for (const IPartition& Pp : partitions_of(P.dim())) {
              if (!partition_greater(Pp, P)) continue;
              Poly s = spec_P(q, el, Pp.as_composition());
              if (!s.is_zero()) {
                w = "nonzero specialization at greater partition " +
                    parts_to_string(Pp.parts);
                return false;
              }
            }
            Poly got = spec_P(q, el, P.as_composition());
            Poly want = spec_psym_closed(q, P, gs);
            if (got == want) return true;
            w = "difference " + to_string(got - want);
            return false;
          }));
    }
  tasks.push_back(mk_case("negative control: scaled closed form", [=, &q](std::string& w) {
    IPartition P{std::vector<std::vector<int>>(static_cast<size_t>(q.n_vertices()))};
    P.parts[0] = {1};
    std::vector<Poly> gs{Poly(1)};
    Poly got = spec_P(q, psym_product(q, P, gs), P.as_composition());
    Poly wrong = spec_psym_closed(q, P, gs).mul_term(1, Monomial::var(sym_q()));
    if (got.is_zero()) {
      w = "control specialization is zero";
      return false;
    }
    if (got == wrong) {
      w = "scaled closed form was not detected";
      return false;
    }
    return true;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_phi_consistency(const Quiver& q, const SuiteConfig& cfg) {
  auto ctx = std::make_shared<CoulombContext>(q, effective_dim(q, cfg));
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  std::vector<DimVector> dims;
  {
    std::vector<std::vector<int>> per(static_cast<size_t>(q.n_vertices()));
    for (auto& p : per)
      for (int v = 0; v <= 3; ++v) p.push_back(v);
    for (auto& d : cartesian(per))
      if (dim_total(d) >= 1 && dim_total(d) <= 3) dims.push_back(d);
  }
  for (auto& n : dims) {
    Poly g = random_symmetric_g(q, n, rng, cfg.vdeg_window, cfg.coeff_bound);
    for (Side side : {Side::Plus, Side::Minus}) {
      tasks.push_back(mk_case(
          std::string("phi consistency ") + (side == Side::Plus ? "e" : "f") + " hdeg " +
              dim_to_string(q, n),
          [=, &q](std::string& w) {
            DiffOp res = phi_residue(*ctx, gen_e(q, n, g, side));
            if (dim_leq(n, ctx->d)) {
              DiffOp closed = phi_gen(*ctx, side, n, g);
              if (dop_eq(res, closed)) return true;
              w = "difference " + to_string(res - closed);
              return false;
            }
            if (res.is_zero()) return true;
            w = "nonzero image above the dimension vector: " + to_string(res);
            return false;
          }));
    }
  }
  tasks.push_back(mk_case("negative control: scaled closed form", [=, &q](std::string& w) {
    DimVector n = dim_unit(q, 0);
    DiffOp res = phi_residue(*ctx, gen_e(q, n, Poly(1)));
    DiffOp wrong = phi_gen(*ctx, Side::Plus, n, Poly(1)).scaled(Rat(Poly::var(sym_q())));
    if (res.is_zero()) {
      w = "control image is zero";
      return false;
    }
    if (dop_eq(res, wrong)) {
      w = "scaled closed form was not detected";
      return false;
    }
    return true;
  }));
  return tasks;
}

inline std::vector<SuiteCase> suite_ring_axioms(const Quiver& q, const SuiteConfig& cfg) {
  Rng rng(cfg.seed);
  std::vector<SuiteCase> tasks;
  auto random_poly = [&q](Rng& r, int coeff_bound) {
    Poly p;
    int nt = r.in(1, 4);
    for (int t = 0; t < nt; ++t) {
      Monomial m = Monomial::var(sym_q(), r.in(-2, 2));
      m = m * Monomial::var(sym_z(q.vertex_name(0), 1), r.in(-2, 2));
      m = m * Monomial::var(sym_z(q.vertex_name(0), 2), r.in(-2, 2));
      int c = r.in(1, std::max(1, coeff_bound));
      p.add_term(m, r.below(2) ? c : -c);
    }
    return p;
  };
  for (int c = 0; c < cfg.cases; ++c) {
    Poly a = random_poly(rng, cfg.coeff_bound);
    Poly b = random_poly(rng, cfg.coeff_bound);
    Poly d = random_poly(rng, cfg.coeff_bound);
    tasks.push_back(mk_case("polynomial ring axioms case " + std::to_string(c),
                            [=](std::string& w) {
      if ((a + b) * d != a * d + b * d) { w = "distributivity failed"; return false; }
      if (a * b != b * a) { w = "commutativity failed"; return false; }
      if ((a * b) * d != a * (b * d)) { w = "associativity failed"; return false; }
      if (!(a - a).is_zero()) { w = "additive inverse failed"; return false; }
      if (!d.is_zero()) {
        auto [quo, rem] = divmod_witness(a, d);
        if (a != quo * d + rem) { w = "division witness failed"; return false; }
      }
      return true;
    }));
  }
  for (int c = 0; c < std::max(1, cfg.cases / 5); ++c) {
    ShuffleElement E1 = random_gen(q, rng, 1, cfg.vdeg_window, cfg.coeff_bound);
    ShuffleElement E2 = random_gen(q, rng, 1, cfg.vdeg_window, cfg.coeff_bound);
    ShuffleElement E3 = random_gen(q, rng, 1, cfg.vdeg_window, cfg.coeff_bound);
    tasks.push_back(mk_case("shuffle product axioms case " + std::to_string(c),
                            [=, &q](std::string& w) {
      ShuffleElement lhs = shuffle_mul(q, shuffle_mul(q, E1, E2), E3);
      ShuffleElement rhs = shuffle_mul(q, E1, shuffle_mul(q, E2, E3));
      if (lhs.poly() != rhs.poly()) { w = "shuffle associativity failed"; return false; }
      ShuffleElement idl = shuffle_mul(q, shuffle_identity(q), E1);
      if (idl.poly() != E1.poly()) { w = "left identity failed"; return false; }
      return true;
    }));
  }
  tasks.push_back(mk_case("negative control: dropped distributivity term", [=](std::string& w) {
    Poly a = Poly::var(sym_q());
    Poly b(1);
    Poly d = Poly::var(sym_q(), -1);
    if ((a + b) * d == a * d) {
      w = "dropped term was not detected";
      return false;
    }
    return true;
  }));
  return tasks;
}

}  // namespace detail

inline VerificationReport run_suite(const Quiver& q, const SuiteConfig& cfg) {
  auto start = std::chrono::steady_clock::now();
  std::vector<SuiteCase> tasks;
  if (cfg.suite == "hom")
    tasks = detail::suite_hom(q, cfg);
  else if (cfg.suite == "wheel")
    tasks = detail::suite_wheel(q, cfg);
  else if (cfg.suite == "commutator")
    tasks = detail::suite_commutator(q, cfg);
  else if (cfg.suite == "cartan")
    tasks = detail::suite_cartan(q, cfg);
  else if (cfg.suite == "chi")
    tasks = detail::suite_chi(q, cfg);
  else if (cfg.suite == "xi")
    tasks = detail::suite_xi(q, cfg);
  else if (cfg.suite == "psym")
    tasks = detail::suite_psym(q, cfg, 3);
  else if (cfg.suite == "phi-consistency")
    tasks = detail::suite_phi_consistency(q, cfg);
  else if (cfg.suite == "ring-axioms")
    tasks = detail::suite_ring_axioms(q, cfg);
  else
    throw std::invalid_argument("unknown suite: " + cfg.suite);

  VerificationReport rep;
  rep.suite = cfg.suite;
  for (CaseResult& r : run_cases(tasks)) {
    ++rep.cases;
    if (r.pass)
      ++rep.passes;
    else
      rep.failures.push_back(std::move(r));
  }
  rep.wall_ms = static_cast<long>(std::chrono::duration_cast<std::chrono::milliseconds>(
                                      std::chrono::steady_clock::now() - start)
                                      .count());
  return rep;
}

}  // namespace qshuffle
