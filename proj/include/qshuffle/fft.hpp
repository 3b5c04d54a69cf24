#pragma once

#include "qshuffle/diffop.hpp"
#include "qshuffle/shuffle.hpp"

namespace qshuffle {

struct higher_order_pole : std::runtime_error {
  higher_order_pole(const std::string& what)
      : std::runtime_error("HIGHER-ORDER-POLE: " + what) {}
};

struct CoulombContext {
  Quiver quiver;
  DimVector d;
  Shifts sh;

  CoulombContext(Quiver q, DimVector dim) : quiver(std::move(q)), d(std::move(dim)) {
    if (static_cast<int>(d.size()) != quiver.n_vertices())
      throw std::invalid_argument("CoulombContext: dimension vector size mismatch");
    for (int v : d)
      if (v < 0) throw std::invalid_argument("CoulombContext: negative dimension");
    sh = shifts(quiver, d);
  }
};

namespace detail {

// one multiplicative residue step: substitute target = value (coefficient-1
// monomial) into the factored numerator and denominator, extracting the unique
// vanishing denominator factor. Returns false when the contribution vanishes.
inline bool residue_step(std::vector<Poly>& numf, std::vector<Poly>& den, Sym target,
                         const Monomial& value) {
  std::map<Sym, std::pair<Int, Monomial>> bind{{target, {1, value}}};
  int vanish = -1;
  for (size_t f = 0; f < den.size(); ++f) {
    if (substitute(den[f], bind).is_zero()) {
      if (vanish >= 0)
        throw higher_order_pole("two denominator factors vanish at " + indet(target).name());
      vanish = static_cast<int>(f);
    }
  }
  if (vanish < 0) return false;  // regular point: residue is zero

  const Poly& f = den[static_cast<size_t>(vanish)];
  if (f.n_terms() != 2)
    throw higher_order_pole("vanishing denominator factor is not a binomial");
  auto it = f.terms().begin();
  Monomial m1 = it->first;
  Int c1 = it->second;
  ++it;
  Monomial m2 = it->first;
  Int c2 = it->second;
  int e1 = m1.exp_of(target), e2 = m2.exp_of(target);
  if (e1 < e2) {
    std::swap(m1, m2);
    std::swap(c1, c2);
    std::swap(e1, e2);
  }
  (void)c1;
  // f = T1 + T2 with T1/T2 = -(target/value)^e, e = e1-e2 > 0, so
  // (1 - value/target)/f -> -1/(e * T2|sub) as target -> value
  int e = e1 - e2;
  Poly extracted = Poly::term(-Int(e) * c2, substitute(Poly::term(1, m2), bind).terms().begin()->first);

  bool alive = true;
  for (auto& g : numf) {
    g = substitute(g, bind);
    if (g.is_zero()) alive = false;
  }
  std::vector<Poly> newden;
  newden.reserve(den.size());
  for (size_t g = 0; g < den.size(); ++g) {
    if (static_cast<int>(g) == vanish) continue;
    newden.push_back(substitute(den[g], bind));
  }
  newden.push_back(std::move(extracted));
  den = std::move(newden);
  return alive;
}

}  // namespace detail

// image of a shuffle element under the residue formula: sum over per-vertex
// compositions with d_i slots (zero parts allowed) of iterated residues of
// Xi(E) along q-geometric strings, times the w-factor brackets
inline DiffOp phi_residue(const CoulombContext& ctx, const ShuffleElement& E) {
  const Quiver& q = ctx.quiver;
  const DimVector& n = E.hdeg();
  DiffOp out;
  if (E.poly().is_zero()) return out;

  // numerator kept as a factor list until the very end: the residue chain
  // substitutes into each (small) factor instead of one expanded polynomial
  std::vector<Poly> xi_numf;
  {
    int binom_sum = 0;
    for (int ni : n) binom_sum += ni * (ni - 1) / 2;
    xi_numf.push_back(E.poly().mul_term(1, Monomial::var(sym_q(), binom_sum)));
    for (int i = 0; i < q.n_vertices(); ++i)
      for (int a = 1; a <= n[static_cast<size_t>(i)]; ++a)
        for (int b = 1; b <= n[static_cast<size_t>(i)]; ++b)
          if (a != b) xi_numf.push_back(detail::ratio_binom(q, i, a, b));
  }
  std::vector<Poly> xi_den = xi_den_factors(q, n);
  int total = dim_total(n);

  std::vector<std::vector<std::vector<int>>> per_vertex;
  for (int i = 0; i < q.n_vertices(); ++i)
    per_vertex.push_back(compositions_with_slots(n[static_cast<size_t>(i)],
                                                 ctx.d[static_cast<size_t>(i)]));
  for (auto& comp : detail::cartesian(per_vertex)) {
    std::vector<Poly> numf = xi_numf;
    std::vector<Poly> den = xi_den;
    bool alive = true;

    // iterated residues along each part's q-string
    for (int i = 0; i < q.n_vertices() && alive; ++i) {
      const std::string& vn = q.vertex_name(i);
      int nu = 0;
      for (int part : comp[static_cast<size_t>(i)]) {
        for (int r = 2; r <= part && alive; ++r)
          alive = detail::residue_step(numf, den, sym_z(vn, nu + r),
                                       Monomial::var(sym_z(vn, nu + 1)) *
                                           Monomial::var(sym_q(), r - 1));
        nu += part;
        if (!alive) break;
      }
    }
    if (!alive) continue;

    // anchor substitutions z_{i, nu+1} -> w_{ia} (PLUS) or w_{ia} q^{-part} (MINUS)
    std::map<Sym, std::pair<Int, Monomial>> anchors;
    for (int i = 0; i < q.n_vertices(); ++i) {
      const std::string& vn = q.vertex_name(i);
      int nu = 0;
      for (size_t a = 0; a < comp[static_cast<size_t>(i)].size(); ++a) {
        int part = comp[static_cast<size_t>(i)][a];
        if (part > 0) {
          Monomial w = Monomial::var(sym_w(vn, static_cast<int>(a) + 1));
          if (E.side() == Side::Minus) w = w * Monomial::var(sym_q(), -part);
          anchors[sym_z(vn, nu + 1)] = {1, w};
        }
        nu += part;
      }
    }
    for (auto& g : numf) {
      g = substitute(g, anchors);
      if (g.is_zero()) alive = false;
    }
    if (!alive) continue;
    for (auto& f : den) {
      f = substitute(f, anchors);
      if (f.is_zero()) throw higher_order_pole("denominator vanishes at anchor substitution");
    }

    // prefactor (1-q^{-1})^{-|n|} and the residue normalization brackets
    for (int m = 0; m < total; ++m) den.push_back(one_minus(1, Monomial::var(sym_q(), -1)));
    DMonomial dmono;
    for (int i = 0; i < q.n_vertices(); ++i) {
      const std::string& vn = q.vertex_name(i);
      for (size_t a = 0; a < comp[static_cast<size_t>(i)].size(); ++a) {
        int part = comp[static_cast<size_t>(i)][a];
        if (part == 0) continue;
        for (int m = 1; m <= part - 1; ++m)
          den.push_back(one_minus(1, Monomial::var(sym_q(), -m)));
        for (int al : q.loops_at(i)) {
          for (int m = 0; m < part - 1; ++m)
            den.push_back(one_minus(1, Monomial::var(q.arrow_sym(al))));
          for (int c = 1; c <= part - 1; ++c)
            numf.push_back(one_minus(1, Monomial::var(q.arrow_sym(al)) * Monomial::var(sym_q(), c)));
        }
        // bracketed w-factors of the main formula
        Monomial wia = Monomial::var(sym_w(vn, static_cast<int>(a) + 1));
        for (int c = 0; c < part; ++c) {
          Monomial wqc = wia * Monomial::var(sym_q(), c);
          if (E.side() == Side::Plus) {
            for (int j = 0; j < q.n_vertices(); ++j)
              for (int al : q.arrows_from_to(i, j))
                for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b) {
                  if (j == i && b == static_cast<int>(a) + 1) continue;
                  numf.push_back(one_minus(1, wqc * Monomial::var(q.arrow_sym(al)) *
                                               Monomial::var(sym_w(q.vertex_name(j), b), -1)));
                }
            for (int s = 1; s <= q.framing_k(i); ++s)
              numf.push_back(one_minus(1, wqc * Monomial::var(sym_sigma(vn, s), -1)));
            for (int b = 1; b <= ctx.d[static_cast<size_t>(i)]; ++b) {
              if (b == static_cast<int>(a) + 1) continue;
              den.push_back(one_minus(1, Monomial::var(sym_w(vn, b)) * wqc.inverse()));
            }
          } else {
            for (int j = 0; j < q.n_vertices(); ++j)
              for (int al : q.arrows_from_to(j, i))
                for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b) {
                  if (j == i && b == static_cast<int>(a) + 1) continue;
                  numf.push_back(one_minus(1, Monomial::var(sym_w(q.vertex_name(j), b)) *
                                               Monomial::var(q.arrow_sym(al)) * wqc.inverse()));
                }
            for (int t = 1; t <= q.framing_l(i); ++t)
              numf.push_back(one_minus(1, Monomial::var(sym_tau(vn, t)) * wqc.inverse()));
            for (int b = 1; b <= ctx.d[static_cast<size_t>(i)]; ++b) {
              if (b == static_cast<int>(a) + 1) continue;
              den.push_back(one_minus(1, wqc * Monomial::var(sym_w(vn, b), -1)));
            }
          }
        }
        dmono = dmono * DMonomial::d_power(vn, static_cast<int>(a) + 1,
                                           E.side() == Side::Plus ? part : -part);
      }
    }
    // cancel denominator factors against individual numerator factors while
    // everything is still small, before expanding the numerator product
    std::vector<Poly> keep_den;
    for (auto& f : den) {
      bool hit = false;
      for (auto& g : numf)
        if (auto quo = divexact(g, f)) {
          g = std::move(*quo);
          hit = true;
          break;
        }
      if (!hit) keep_den.push_back(f);
    }
    Poly num(1);
    for (auto& g : numf) num *= g;
    out.add_term(dmono, FRat(std::move(num), std::move(keep_den)));
  }
  return out;
}

// closed-form image of e_{n,g} / f_{n,g}: sum over per-vertex subsets A_i of
// {1..d_i} with |A_i| = n_i
inline DiffOp phi_gen(const CoulombContext& ctx, Side side, const DimVector& n, const Poly& g) {
  const Quiver& q = ctx.quiver;
  // validates symmetry and variable bounds of g
  ShuffleElement check(q, side, n, g);
  DiffOp out;
  if (!dim_leq(n, ctx.d)) return out;

  int binom_sum = 0;
  for (int ni : n) binom_sum += ni * (ni - 1) / 2;

  std::vector<std::vector<std::vector<int>>> per_vertex;
  for (int i = 0; i < q.n_vertices(); ++i)
    per_vertex.push_back(detail::subsets_of(ctx.d[static_cast<size_t>(i)],
                                            n[static_cast<size_t>(i)]));
  for (auto& A : detail::cartesian(per_vertex)) {
    std::map<Sym, std::pair<Int, Monomial>> bind;
    for (int i = 0; i < q.n_vertices(); ++i) {
      const std::string& vn = q.vertex_name(i);
      for (size_t r = 0; r < A[static_cast<size_t>(i)].size(); ++r) {
        Monomial w = Monomial::var(sym_w(vn, A[static_cast<size_t>(i)][r]));
        if (side == Side::Minus) w = w * Monomial::var(sym_q(), -1);
        bind[sym_z(vn, static_cast<int>(r) + 1)] = {1, w};
      }
    }
    Poly num = substitute(g, bind).mul_term(1, Monomial::var(sym_q(), -binom_sum));
    std::vector<Poly> den;
    DMonomial dmono;
    for (int i = 0; i < q.n_vertices(); ++i) {
      const std::string& vn = q.vertex_name(i);
      std::vector<bool> in_A(static_cast<size_t>(ctx.d[static_cast<size_t>(i)]) + 1, false);
      for (int a : A[static_cast<size_t>(i)]) in_A[static_cast<size_t>(a)] = true;
      for (int a : A[static_cast<size_t>(i)]) {
        Monomial wia = Monomial::var(sym_w(vn, a));
        if (side == Side::Plus) {
          for (int j = 0; j < q.n_vertices(); ++j)
            for (int al : q.arrows_from_to(i, j))
              for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b) {
                bool b_in_Aj = false;
                for (int x : A[static_cast<size_t>(j)]) b_in_Aj = b_in_Aj || x == b;
                if (b_in_Aj) continue;
                num *= one_minus(1, wia * Monomial::var(q.arrow_sym(al)) *
                                        Monomial::var(sym_w(q.vertex_name(j), b), -1));
              }
          for (int s = 1; s <= q.framing_k(i); ++s)
            num *= one_minus(1, wia * Monomial::var(sym_sigma(vn, s), -1));
          for (int b = 1; b <= ctx.d[static_cast<size_t>(i)]; ++b)
            if (!in_A[static_cast<size_t>(b)])
              den.push_back(one_minus(1, Monomial::var(sym_w(vn, b)) * wia.inverse()));
          dmono = dmono * DMonomial::d_power(vn, a, 1);
        } else {
          for (int j = 0; j < q.n_vertices(); ++j)
            for (int al : q.arrows_from_to(j, i))
              for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b) {
                bool b_in_Aj = false;
                for (int x : A[static_cast<size_t>(j)]) b_in_Aj = b_in_Aj || x == b;
                if (b_in_Aj) continue;
                num *= one_minus(1, Monomial::var(sym_w(q.vertex_name(j), b)) *
                                        Monomial::var(q.arrow_sym(al)) * wia.inverse());
              }
          for (int t = 1; t <= q.framing_l(i); ++t)
            num *= one_minus(1, Monomial::var(sym_tau(vn, t)) * wia.inverse());
          for (int b = 1; b <= ctx.d[static_cast<size_t>(i)]; ++b)
            if (!in_A[static_cast<size_t>(b)])
              den.push_back(one_minus(1, wia * Monomial::var(sym_w(vn, b), -1)));
          dmono = dmono * DMonomial::d_power(vn, a, -1);
        }
      }
    }
    out.add_term(dmono, FRat(std::move(num), std::move(den)));
  }
  return out;
}

enum class CartanKind { KappaPlus, KappaMinus, PowerSum, Central };

struct CartanGenerator {
  CartanKind kind;
  int vertex = 0;  // vertex ordinal
  int k = 0;       // nonzero for PowerSum / Central
};

inline DiffOp phi_cartan(const CoulombContext& ctx, const CartanGenerator& g) {
  const Quiver& q = ctx.quiver;
  int i = g.vertex;
  const std::string& vn = q.vertex_name(i);
  switch (g.kind) {
    case CartanKind::KappaPlus: {
      Poly num(1), den(1);
      for (int j = 0; j < q.n_vertices(); ++j)
        for (int al : q.arrows_from_to(i, j))
          for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b)
            num *= Poly::term(-1, Monomial::var(q.arrow_sym(al)) *
                                      Monomial::var(sym_w(q.vertex_name(j), b), -1));
      for (int s = 1; s <= q.framing_k(i); ++s)
        num *= Poly::term(-1, Monomial::var(sym_sigma(vn, s), -1));
      for (int b = 1; b <= ctx.d[static_cast<size_t>(i)]; ++b)
        den *= Poly::term(-1, Monomial::var(sym_q()) * Monomial::var(sym_w(vn, b), -1));
      return DiffOp::scalar(Rat(num, den));
    }
    case CartanKind::KappaMinus: {
      Poly num(1), den(1);
      for (int j = 0; j < q.n_vertices(); ++j)
        for (int al : q.arrows_from_to(j, i))
          for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b)
            num *= Poly::term(-1, Monomial::var(sym_w(q.vertex_name(j), b)) *
                                      Monomial::var(q.arrow_sym(al)) * Monomial::var(sym_q(), -1));
      for (int t = 1; t <= q.framing_l(i); ++t)
        num *= Poly::term(-1, Monomial::var(sym_tau(vn, t)) * Monomial::var(sym_q(), -1));
      for (int b = 1; b <= ctx.d[static_cast<size_t>(i)]; ++b)
        den *= Poly::term(-1, Monomial::var(sym_w(vn, b)));
      return DiffOp::scalar(Rat(num, den));
    }
    case CartanKind::PowerSum: {
      if (g.k == 0) throw std::invalid_argument("phi_cartan: power sum index must be nonzero");
      Poly p;
      for (int a = 1; a <= ctx.d[static_cast<size_t>(i)]; ++a)
        p += Poly::var(sym_w(vn, a), g.k);
      return DiffOp::scalar(Rat(p));
    }
    case CartanKind::Central: {
      if (g.k == 0) throw std::invalid_argument("phi_cartan: central index must be nonzero");
      Poly p;
      for (int s = 1; s <= q.framing_k(i); ++s) p += Poly::var(sym_sigma(vn, s), g.k);
      for (int t = 1; t <= q.framing_l(i); ++t) p += Poly::var(sym_tau(vn, t), g.k);
      return DiffOp::scalar(Rat(p));
    }
  }
  return DiffOp();
}

namespace detail {

// the rational function that both Cartan generating series expand into
inline Rat cartan_series_display(const CoulombContext& ctx, int i) {
  const Quiver& q = ctx.quiver;
  const std::string& vn = q.vertex_name(i);
  Sym x = sym_series();
  Poly num(1), den(1);
  for (int j = 0; j < q.n_vertices(); ++j) {
    for (int al : q.arrows_from_to(i, j))
      for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b)
        num *= one_minus(1, Monomial::var(x) * Monomial::var(q.arrow_sym(al)) *
                                Monomial::var(sym_w(q.vertex_name(j), b), -1));
    for (int al : q.arrows_from_to(j, i))
      for (int b = 1; b <= ctx.d[static_cast<size_t>(j)]; ++b)
        num *= one_minus(1, Monomial::var(q.arrow_sym(al)) *
                                Monomial::var(sym_w(q.vertex_name(j), b)) *
                                Monomial::var(x, -1) * Monomial::var(sym_q(), -1));
  }
  for (int s = 1; s <= q.framing_k(i); ++s)
    num *= one_minus(1, Monomial::var(x) * Monomial::var(sym_sigma(vn, s), -1));
  // the tau factors sit at x = tau/q: this placement (and the matching q^-1
  // in the kappa^- image) is pinned by the commutator suite on framed quivers
  for (int t = 1; t <= q.framing_l(i); ++t)
    num *= one_minus(1, Monomial::var(sym_tau(vn, t)) * Monomial::var(x, -1) *
                            Monomial::var(sym_q(), -1));
  for (int a = 1; a <= ctx.d[static_cast<size_t>(i)]; ++a) {
    den *= one_minus(1, Monomial::var(sym_w(vn, a)) * Monomial::var(x, -1));
    den *= one_minus(1, Monomial::var(x) * Monomial::var(sym_q()) *
                            Monomial::var(sym_w(vn, a), -1));
  }
  return Rat(num, den);
}

}  // namespace detail

// image of the m-th coefficient of the Cartan generating series phi_i^{+/-}
inline DiffOp phi_series_coeff(const CoulombContext& ctx, int i, Side sign, int m) {
  if (m < 0) return DiffOp();
  Rat disp = detail::cartan_series_display(ctx, i);
  int shift = sign == Side::Plus ? ctx.sh.a[static_cast<size_t>(i)]
                                 : ctx.sh.b[static_cast<size_t>(i)];
  Rat series(disp.num().mul_term(1, Monomial::var(sym_series(), shift)), disp.den());
  auto coeffs = expand_series(series, sym_series(),
                              sign == Side::Plus ? Regime::AtInfinity : Regime::AtZero, m);
  if (!coeffs) throw std::runtime_error("NO-EXPANSION: Cartan series has no expansion");
  return DiffOp::scalar((*coeffs)[static_cast<size_t>(m)]);
}

// right-hand side of the shifted commutator relation for localized
// generators. The overall factor q (relative to a naive reading of the
// series normalization) is pinned by the commutator test in the suite.
inline DiffOp relation_rhs(const CoulombContext& ctx, int i, int j, int k, int l) {
  if (i != j) return DiffOp();
  DiffOp out;
  int ai = ctx.sh.a[static_cast<size_t>(i)];
  int bi = ctx.sh.b[static_cast<size_t>(i)];
  if (k + l <= bi) out += phi_series_coeff(ctx, i, Side::Minus, -k - l + bi);
  if (k + l >= ai) out -= phi_series_coeff(ctx, i, Side::Plus, k + l - ai);
  return out.scaled(Rat(Poly::var(sym_q()), gamma_factor(ctx.quiver, i)));
}

// relations between Cartan images and shuffle images, numbered as follows:
//   43: central elements commute with everything
//   44/45: kappa^+ against E / F;  46/47: kappa^- against E / F
//   48/49: power sums against E / F
inline bool cartan_relation_check(const CoulombContext& ctx, int which, const ShuffleElement& X,
                                  const CartanGenerator& c) {
  const Quiver& q = ctx.quiver;
  DiffOp A = phi_cartan(ctx, c);
  DiffOp Xop = phi_residue(ctx, X);
  const DimVector& n = X.hdeg();
  DimVector unit = dim_unit(q, c.vertex);
  auto qpow = [&](long e) { return Rat(Poly::var(sym_q(), static_cast<int>(e))); };
  switch (which) {
    case 43:
      return dop_eq(dop_mul(A, Xop), dop_mul(Xop, A));
    case 44:
      return dop_eq(dop_mul(A, Xop), dop_mul(Xop, A).scaled(qpow(-pairing(q, unit, n))));
    case 45:
      return dop_eq(dop_mul(A, Xop), dop_mul(Xop, A).scaled(qpow(pairing(q, unit, n))));
    case 46:
      return dop_eq(dop_mul(A, Xop), dop_mul(Xop, A).scaled(qpow(pairing(q, n, unit))));
    case 47:
      return dop_eq(dop_mul(A, Xop), dop_mul(Xop, A).scaled(qpow(-pairing(q, n, unit))));
    case 48:
    case 49: {
      Poly psum;
      const std::string& vn = q.vertex_name(c.vertex);
      for (int a = 1; a <= n[static_cast<size_t>(c.vertex)]; ++a)
        psum += Poly::var(sym_z(vn, a), c.k);
      DiffOp rhs = phi_residue(ctx, ShuffleElement(q, X.side(), n, psum * X.poly()));
      Poly factor = which == 48 ? one_minus(1, Monomial::var(sym_q(), c.k))     // 1 - q^k
                                : Poly::var(sym_q(), c.k) - Poly(1);            // q^k - 1
      return dop_eq(dop_mul(A, Xop) - dop_mul(Xop, A), rhs.scaled(Rat(factor)));
    }
    default:
      throw std::invalid_argument("cartan_relation_check: unknown relation number");
  }
}

}  // namespace qshuffle
