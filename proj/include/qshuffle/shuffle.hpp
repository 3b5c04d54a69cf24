#pragma once

#include "qshuffle/quiver.hpp"

namespace qshuffle {

enum class Side { Plus, Minus };

// thrown when a symmetrized sum fails to clear its zeta denominators,
// which can only happen through an implementation bug
struct non_polynomial_error : std::logic_error {
  non_polynomial_error(const std::string& what) : std::logic_error("NON-POLYNOMIAL-RESULT: " + what) {}
};

namespace detail {

// sorted n-subsets of {1..N}
inline std::vector<std::vector<int>> subsets_of(int N, int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  std::function<void(int)> rec = [&](int next) {
    if (static_cast<int>(cur.size()) == n) {
      out.push_back(cur);
      return;
    }
    if (N - next + 1 < n - static_cast<int>(cur.size())) return;
    for (int v = next; v <= N; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(1);
  return out;
}

inline std::vector<int> complement_of(int N, const std::vector<int>& sub) {
  std::vector<int> out;
  size_t j = 0;
  for (int v = 1; v <= N; ++v) {
    if (j < sub.size() && sub[j] == v)
      ++j;
    else
      out.push_back(v);
  }
  return out;
}

}  // namespace detail

// Color-symmetric Laurent polynomial with a per-vertex variable budget and a
// side marker. The MINUS side carries the same polynomials; only the
// multiplication order differs.
class ShuffleElement {
 public:
  ShuffleElement(const Quiver& q, Side side, DimVector hdeg, Poly poly)
      : side_(side), hdeg_(std::move(hdeg)), poly_(std::move(poly)) {
    if (static_cast<int>(hdeg_.size()) != q.n_vertices())
      throw std::invalid_argument("ShuffleElement: hdeg size mismatch");
    for (int n : hdeg_)
      if (n < 0) throw std::invalid_argument("ShuffleElement: negative hdeg");
    validate_vars(q);
    validate_symmetry(q);
  }

  Side side() const { return side_; }
  const DimVector& hdeg() const { return hdeg_; }
  const Poly& poly() const { return poly_; }
  bool is_scalar() const { return dim_total(hdeg_) == 0; }

  // total degree in the z variables, if homogeneous
  std::optional<int> vdeg() const {
    std::optional<int> deg;
    for (auto& [m, c] : poly_.terms()) {
      int d = 0;
      for (auto& [s, k] : m.e)
        if (indet(s).kind == VarKind::Z) d += k;
      if (deg && *deg != d) return std::nullopt;
      deg = d;
    }
    return poly_.is_zero() ? std::optional<int>(0) : deg;
  }

 private:
  void validate_vars(const Quiver& q) const {
    for (Sym s : poly_.vars()) {
      const Indet& v = indet(s);
      switch (v.kind) {
        case VarKind::Q:
          break;
        case VarKind::Arrow: {
          bool known = false;
          for (auto& a : q.arrows()) known = known || a.id == v.id;
          if (!known) throw std::invalid_argument("ShuffleElement: unknown arrow parameter " + v.name());
          break;
        }
        case VarKind::Z: {
          int i = q.vertex_index(v.id);
          if (v.index < 1 || v.index > hdeg_[static_cast<size_t>(i)])
            throw std::invalid_argument("ShuffleElement: variable " + v.name() + " out of hdeg range");
          break;
        }
        default:
          throw std::invalid_argument("ShuffleElement: disallowed indeterminate " + v.name());
      }
    }
  }

  void validate_symmetry(const Quiver& q) const {
    // invariance under adjacent transpositions generates the full color-symmetry
    for (int i = 0; i < q.n_vertices(); ++i) {
      const std::string& vn = q.vertex_name(i);
      for (int a = 1; a < hdeg_[static_cast<size_t>(i)]; ++a) {
        std::map<Sym, std::pair<Int, Monomial>> swap_ab{
            {sym_z(vn, a), {1, Monomial::var(sym_z(vn, a + 1))}},
            {sym_z(vn, a + 1), {1, Monomial::var(sym_z(vn, a))}}};
        if (substitute(poly_, swap_ab) != poly_)
          throw std::invalid_argument("ShuffleElement: polynomial is not color-symmetric");
      }
    }
  }

  Side side_;
  DimVector hdeg_;
  Poly poly_;
};

inline ShuffleElement shuffle_identity(const Quiver& q, Side side = Side::Plus) {
  return ShuffleElement(q, side, dim_zero(q), Poly(1));
}

// e_{n,g} = g * prod_i prod_{1<=a,b<=n_i} (1 - z_ia/(z_ib q)); the diagonal
// a = b contributes (1-q^{-1})^{n_i} per vertex
inline ShuffleElement gen_e(const Quiver& q, const DimVector& n, const Poly& g,
                            Side side = Side::Plus) {
  Poly p = g;
  for (int i = 0; i < q.n_vertices(); ++i) {
    const std::string& vn = q.vertex_name(i);
    for (int a = 1; a <= n[static_cast<size_t>(i)]; ++a)
      for (int b = 1; b <= n[static_cast<size_t>(i)]; ++b)
        p *= one_minus(1, Monomial::var(sym_z(vn, a)) * Monomial::var(sym_z(vn, b), -1) *
                              Monomial::var(sym_q(), -1));
  }
  return ShuffleElement(q, side, n, p);
}

inline ShuffleElement gen_f(const Quiver& q, const DimVector& n, const Poly& g) {
  return gen_e(q, n, g, Side::Minus);
}

// localized generator: z_{i1}^k at hdeg = unit vector of i
inline ShuffleElement gen_loc(const Quiver& q, int i, int k, Side side = Side::Plus) {
  return ShuffleElement(q, side, dim_unit(q, i),
                        Poly::var(sym_z(q.vertex_name(i), 1), k));
}

namespace detail {

// zeta numerator factors for the ordered variable pair (z_{iu}, z_{jv})
inline Poly zeta_num_pair(const Quiver& q, int i, int u, int j, int v) {
  const std::string &ni = q.vertex_name(i), &nj = q.vertex_name(j);
  Monomial ratio = Monomial::var(sym_z(ni, u)) * Monomial::var(sym_z(nj, v), -1);
  Poly p(1);
  if (i == j) p *= one_minus(1, ratio * Monomial::var(sym_q(), -1));
  for (int a : q.arrows_from_to(i, j))
    p *= one_minus(1, ratio * Monomial::var(q.arrow_sym(a)));
  for (int a : q.arrows_from_to(j, i))
    p *= one_minus(1, ratio.inverse() * Monomial::var(q.arrow_sym(a)) *
                          Monomial::var(sym_q(), -1));
  return p;
}

// (1 - z_{iu}/z_{iv})
inline Poly ratio_binom(const Quiver& q, int i, int u, int v) {
  const std::string& vn = q.vertex_name(i);
  return one_minus(1, Monomial::var(sym_z(vn, u)) * Monomial::var(sym_z(vn, v), -1));
}

// full same-color denominator prod_i prod_{u != v <= N_i} (1 - z_{iu}/z_{iv})
inline Poly full_ratio_product(const Quiver& q, const DimVector& N) {
  Poly d(1);
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int u = 1; u <= N[static_cast<size_t>(i)]; ++u)
      for (int v = 1; v <= N[static_cast<size_t>(i)]; ++v)
        if (u != v) d *= ratio_binom(q, i, u, v);
  return d;
}

// relabeling z_{i,r} -> z_{i,dest_i[r-1]} for each vertex
inline std::map<Sym, std::pair<Int, Monomial>> relabel_bindings(
    const Quiver& q, const std::vector<std::vector<int>>& dest) {
  std::map<Sym, std::pair<Int, Monomial>> b;
  for (int i = 0; i < q.n_vertices(); ++i) {
    const std::string& vn = q.vertex_name(i);
    for (size_t r = 0; r < dest[static_cast<size_t>(i)].size(); ++r)
      b[sym_z(vn, static_cast<int>(r) + 1)] = {
          1, Monomial::var(sym_z(vn, dest[static_cast<size_t>(i)][r]))};
  }
  return b;
}

}  // namespace detail

// symmetrized zeta-twisted product; the MINUS side is the opposite algebra
inline ShuffleElement shuffle_mul(const Quiver& q, const ShuffleElement& A,
                                  const ShuffleElement& B) {
  if (A.side() != B.side()) throw std::invalid_argument("shuffle_mul: mixed sides");
  const ShuffleElement& L = A.side() == Side::Plus ? A : B;
  const ShuffleElement& R = A.side() == Side::Plus ? B : A;
  DimVector N = dim_add(L.hdeg(), R.hdeg());
  if (L.poly().is_zero() || R.poly().is_zero())
    return ShuffleElement(q, A.side(), N, Poly());
  // hdeg-0 factors are scalars in the parameter ring
  if (L.is_scalar() || R.is_scalar())
    return ShuffleElement(q, A.side(), N, L.poly() * R.poly());

  // per-vertex shuffles: positions of L's variables among 1..N_i
  std::vector<std::vector<std::vector<int>>> choices;
  for (int i = 0; i < q.n_vertices(); ++i)
    choices.push_back(detail::subsets_of(N[static_cast<size_t>(i)],
                                         L.hdeg()[static_cast<size_t>(i)]));
  Poly sum;
  for (auto& pick : detail::cartesian(choices)) {
    std::vector<std::vector<int>> comp;
    for (int i = 0; i < q.n_vertices(); ++i)
      comp.push_back(detail::complement_of(N[static_cast<size_t>(i)],
                                           pick[static_cast<size_t>(i)]));
    Poly term = substitute(L.poly(), detail::relabel_bindings(q, pick));
    if (term.is_zero()) continue;
    term *= substitute(R.poly(), detail::relabel_bindings(q, comp));
    if (term.is_zero()) continue;
    // zeta numerators across the cut
    for (int i = 0; i < q.n_vertices() && !term.is_zero(); ++i)
      for (int j = 0; j < q.n_vertices() && !term.is_zero(); ++j)
        for (int u : pick[static_cast<size_t>(i)])
          for (int v : comp[static_cast<size_t>(j)])
            term *= detail::zeta_num_pair(q, i, u, j, v);
    if (term.is_zero()) continue;
    // cofactor: same-color ratio binomials for every ordered pair except
    // (left-position, right-position), completing the common denominator
    for (int i = 0; i < q.n_vertices(); ++i) {
      std::vector<bool> in_pick(static_cast<size_t>(N[static_cast<size_t>(i)]) + 1, false);
      for (int u : pick[static_cast<size_t>(i)]) in_pick[static_cast<size_t>(u)] = true;
      for (int u = 1; u <= N[static_cast<size_t>(i)]; ++u)
        for (int v = 1; v <= N[static_cast<size_t>(i)]; ++v)
          if (u != v && !(in_pick[static_cast<size_t>(u)] && !in_pick[static_cast<size_t>(v)]))
            term *= detail::ratio_binom(q, i, u, v);
    }
    sum += term;
  }
  auto quot = divexact(sum, detail::full_ratio_product(q, N));
  if (!quot) throw non_polynomial_error("shuffle_mul denominators did not cancel");
  return ShuffleElement(q, A.side(), N, *quot);
}

// Spec_P: substitute q-geometric progressions x_{ia}, x_{ia}q, ... into the
// z variables, part by part
inline Poly spec_P(const Quiver& q, const ShuffleElement& E, const IComposition& P) {
  if (P.dim() != E.hdeg()) throw std::invalid_argument("spec_P: composition size mismatch");
  std::map<Sym, std::pair<Int, Monomial>> bind;
  for (int i = 0; i < q.n_vertices(); ++i) {
    const std::string& vn = q.vertex_name(i);
    int pos = 0;
    for (size_t a = 0; a < P.parts[static_cast<size_t>(i)].size(); ++a)
      for (int c = 0; c < P.parts[static_cast<size_t>(i)][a]; ++c) {
        ++pos;
        bind[sym_z(vn, pos)] = {1, Monomial::var(sym_x(vn, static_cast<int>(a) + 1)) *
                                       Monomial::var(sym_q(), c)};
      }
  }
  return substitute(E.poly(), bind);
}

// divisibility requirement attached to a composition P
inline Poly wheel_divisor(const Quiver& q, const IComposition& P) {
  Poly d(1);
  for (auto& ps : P.parts)
    for (int n : ps)
      for (int m = 1; m <= n; ++m) d *= one_minus(1, Monomial::var(sym_q(), -m));
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int j = 0; j < q.n_vertices(); ++j)
      for (int al : q.arrows_from_to(i, j)) {
        const auto& pi = P.parts[static_cast<size_t>(i)];
        const auto& pj = P.parts[static_cast<size_t>(j)];
        for (size_t a = 0; a < pi.size(); ++a)
          for (size_t b = 0; b < pj.size(); ++b) {
            int bound = pi[a] + pj[b];
            for (int c = -bound; c <= bound; ++c) {
              int e = chi(pi[a], pj[b], c);
              if (e == 0) continue;
              Poly f = one_minus(1, Monomial::var(sym_x(q.vertex_name(i), static_cast<int>(a) + 1)) *
                                        Monomial::var(sym_x(q.vertex_name(j), static_cast<int>(b) + 1), -1) *
                                        Monomial::var(q.arrow_sym(al)) * Monomial::var(sym_q(), -c));
              d *= ipow(f, e);
            }
          }
      }
  return d;
}

struct IntegralityResult {
  bool pass = true;
  IPartition witness;   // offending partition when pass is false
  Poly remainder;       // non-divisible remainder witness
};

// membership in the integral form: divisibility at every I-partition
inline IntegralityResult is_integral(const Quiver& q, const ShuffleElement& E) {
  for (const IPartition& P : partitions_of(E.hdeg())) {
    Poly s = spec_P(q, E, P.as_composition());
    auto [quot, rem] = divmod_witness(s, wheel_divisor(q, P.as_composition()));
    (void)quot;
    if (!rem.is_zero()) return {false, P, rem};
  }
  return {true, {}, Poly()};
}

// localized wheel condition: E at z_{i2} = q z_{i1} is divisible by
// prod (z_{jb} - z_{i1} t_alpha) over the doubled arrows incident to i
// (parameter q/t_beta for a reversed arrow beta: j -> i), with b > 2 when j = i
inline bool localized_wheel_holds(const Quiver& q, const ShuffleElement& E) {
  for (int i = 0; i < q.n_vertices(); ++i) {
    if (E.hdeg()[static_cast<size_t>(i)] < 2) continue;
    const std::string& vn = q.vertex_name(i);
    std::map<Sym, std::pair<Int, Monomial>> bind{
        {sym_z(vn, 2), {1, Monomial::var(sym_z(vn, 1)) * Monomial::var(sym_q())}}};
    Poly spec = substitute(E.poly(), bind);
    Poly div(1);
    for (int j = 0; j < q.n_vertices(); ++j) {
      const std::string& wn = q.vertex_name(j);
      for (int b = 1; b <= E.hdeg()[static_cast<size_t>(j)]; ++b) {
        if (j == i && b <= 2) continue;
        for (int al : q.arrows_from_to(i, j)) {
          Poly f = Poly::var(sym_z(wn, b));
          f -= Poly::term(1, Monomial::var(sym_z(vn, 1)) * Monomial::var(q.arrow_sym(al)));
          div *= f;
        }
        for (int al : q.arrows_from_to(j, i)) {
          Poly f = Poly::var(sym_z(wn, b));
          f -= Poly::term(1, Monomial::var(sym_z(vn, 1)) * Monomial::var(sym_q()) *
                                 Monomial::var(q.arrow_sym(al), -1));
          div *= f;
        }
      }
    }
    if (!divexact(spec, div)) return false;
  }
  return true;
}

// numerator and factored denominator of the Xi image; the q^{sum binom}
// normalization is folded into the numerator as a positive power of q
struct FactoredRat {
  Poly num;
  std::vector<Poly> den;

  Poly den_poly() const {
    Poly d(1);
    for (auto& f : den) d *= f;
    return d;
  }
  Rat to_rat() const { return Rat(num, den_poly()); }
};

inline std::vector<Poly> xi_den_factors(const Quiver& q, const DimVector& n) {
  std::vector<Poly> den;
  for (int i = 0; i < q.n_vertices(); ++i) {
    const std::string& vn = q.vertex_name(i);
    for (int a = 1; a <= n[static_cast<size_t>(i)]; ++a)
      for (int b = 1; b <= n[static_cast<size_t>(i)]; ++b)
        if (a != b)
          den.push_back(one_minus(1, Monomial::var(sym_z(vn, a)) * Monomial::var(sym_q()) *
                                         Monomial::var(sym_z(vn, b), -1)));
  }
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int j = 0; j < q.n_vertices(); ++j)
      for (int al : q.arrows_from_to(i, j))
        for (int a = 1; a <= n[static_cast<size_t>(i)]; ++a)
          for (int b = 1; b <= n[static_cast<size_t>(j)]; ++b) {
            if (i == j && a == b) continue;
            den.push_back(one_minus(1, Monomial::var(sym_z(q.vertex_name(i), a)) *
                                           Monomial::var(q.arrow_sym(al)) *
                                           Monomial::var(sym_z(q.vertex_name(j), b), -1)));
          }
  return den;
}

inline FactoredRat xi_factored(const Quiver& q, const ShuffleElement& E) {
  const DimVector& n = E.hdeg();
  int binom_sum = 0;
  for (int ni : n) binom_sum += ni * (ni - 1) / 2;
  Poly num = E.poly().mul_term(1, Monomial::var(sym_q(), binom_sum));
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int a = 1; a <= n[static_cast<size_t>(i)]; ++a)
      for (int b = 1; b <= n[static_cast<size_t>(i)]; ++b)
        if (a != b) num *= detail::ratio_binom(q, i, a, b);
  return {num, xi_den_factors(q, n)};
}

inline Rat xi(const Quiver& q, const ShuffleElement& E) { return xi_factored(q, E).to_rat(); }

// rational function with a horizontal degree: the shape of Xi images
struct BarElement {
  DimVector hdeg;
  Rat value;
};

// shuffle product computed with the zeta_bar factors; operands must have
// denominators dividing the canonical Xi denominator of their hdeg
inline BarElement shuffle_mul_bar(const Quiver& q, const BarElement& A, const BarElement& B) {
  DimVector N = dim_add(A.hdeg, B.hdeg);
  Poly denA(1), denB(1);
  for (auto& f : xi_den_factors(q, A.hdeg)) denA *= f;
  for (auto& f : xi_den_factors(q, B.hdeg)) denB *= f;
  auto cofA = divexact(denA, A.value.den());
  auto cofB = divexact(denB, B.value.den());
  if (!cofA || !cofB)
    throw std::invalid_argument("shuffle_mul_bar: operand not in the Xi image shape");
  Poly numA = A.value.num() * *cofA;
  Poly numB = B.value.num() * *cofB;

  std::vector<std::vector<std::vector<int>>> choices;
  for (int i = 0; i < q.n_vertices(); ++i)
    choices.push_back(detail::subsets_of(N[static_cast<size_t>(i)],
                                         A.hdeg[static_cast<size_t>(i)]));
  Poly sum;
  for (auto& pick : detail::cartesian(choices)) {
    std::vector<std::vector<int>> comp;
    for (int i = 0; i < q.n_vertices(); ++i)
      comp.push_back(detail::complement_of(N[static_cast<size_t>(i)],
                                           pick[static_cast<size_t>(i)]));
    Poly term = substitute(numA, detail::relabel_bindings(q, pick));
    if (term.is_zero()) continue;
    term *= substitute(numB, detail::relabel_bindings(q, comp));
    if (term.is_zero()) continue;
    // zeta_bar numerators across the cut: pair (u in A-block of color i,
    // v in B-block of color j)
    for (int i = 0; i < q.n_vertices(); ++i)
      for (int j = 0; j < q.n_vertices(); ++j)
        for (int u : pick[static_cast<size_t>(i)])
          for (int v : comp[static_cast<size_t>(j)]) {
            Monomial ratio = Monomial::var(sym_z(q.vertex_name(i), u)) *
                             Monomial::var(sym_z(q.vertex_name(j), v), -1);
            if (i == j) term *= one_minus(1, ratio);
            for (int al : q.arrows_from_to(j, i))
              term *= one_minus(1, ratio.inverse() * Monomial::var(q.arrow_sym(al)) *
                                       Monomial::var(sym_q(), -1));
          }
    if (term.is_zero()) continue;
    // factors of the canonical denominator of hdeg N that the summand's own
    // denominators do not supply
    for (int i = 0; i < q.n_vertices(); ++i)
      for (int u : comp[static_cast<size_t>(i)])
        for (int v : pick[static_cast<size_t>(i)])
          term *= one_minus(1, Monomial::var(sym_z(q.vertex_name(i), u)) * Monomial::var(sym_q()) *
                                   Monomial::var(sym_z(q.vertex_name(i), v), -1));
    for (int i = 0; i < q.n_vertices(); ++i)
      for (int j = 0; j < q.n_vertices(); ++j)
        for (int al : q.arrows_from_to(i, j))
          for (int u : pick[static_cast<size_t>(i)])
            for (int v : comp[static_cast<size_t>(j)])
              term *= one_minus(1, Monomial::var(sym_z(q.vertex_name(i), u)) *
                                       Monomial::var(q.arrow_sym(al)) *
                                       Monomial::var(sym_z(q.vertex_name(j), v), -1));
    sum += term;
  }
  Poly denN(1);
  for (auto& f : xi_den_factors(q, N)) denN *= f;
  return {N, Rat(std::move(sum), std::move(denN))};
}

// partial symmetrization of prod_a e_{m^{(a)}, g_a} with inter-block zeta
// factors; blocks are the rows of transpose(P), gs[a] is color-symmetric in
// z[i, 1..m_i^{(a+1)}]
inline ShuffleElement psym_product(const Quiver& q, const IPartition& P,
                                   const std::vector<Poly>& gs) {
  IPartition m = transpose(P);
  DimVector n = P.dim();
  size_t nrows = 0;
  for (auto& ps : m.parts) nrows = std::max(nrows, ps.size());
  if (gs.size() != nrows)
    throw std::invalid_argument("psym_product: expected " + std::to_string(nrows) +
                                " block polynomials, got " + std::to_string(gs.size()));
  auto row_size = [&](int i, size_t a) -> int {
    return a < m.parts[static_cast<size_t>(i)].size() ? m.parts[static_cast<size_t>(i)][a] : 0;
  };
  auto offset = [&](int i, size_t a) {  // mu_i^{(a)} partial sums
    int o = 0;
    for (size_t b = 0; b < a; ++b) o += row_size(i, b);
    return o;
  };

  // numerator of the pre-symmetrization function
  Poly H(1);
  for (size_t a = 0; a < nrows; ++a) {
    DimVector ma;
    for (int i = 0; i < q.n_vertices(); ++i) ma.push_back(row_size(i, a));
    Poly block = gen_e(q, ma, gs[a]).poly();
    std::vector<std::vector<int>> dest;
    for (int i = 0; i < q.n_vertices(); ++i) {
      std::vector<int> d;
      for (int r = 1; r <= row_size(i, a); ++r) d.push_back(offset(i, a) + r);
      dest.push_back(std::move(d));
    }
    H *= substitute(block, detail::relabel_bindings(q, dest));
  }
  for (size_t a = 0; a < nrows; ++a)
    for (size_t b = a + 1; b < nrows; ++b)
      for (int i = 0; i < q.n_vertices(); ++i)
        for (int j = 0; j < q.n_vertices(); ++j)
          for (int r = 1; r <= row_size(i, a); ++r)
            for (int s = 1; s <= row_size(j, b); ++s)
              H *= detail::zeta_num_pair(q, i, offset(i, a) + r, j, offset(j, b) + s);

  // enumerate ordered block assignments per color: positions for row 0, then
  // row 1 among the rest, etc.
  struct Assign {
    std::vector<std::vector<int>> rows;  // rows[a] = sorted positions of block a
  };
  std::vector<std::vector<Assign>> per_color;
  for (int i = 0; i < q.n_vertices(); ++i) {
    std::vector<Assign> list;
    std::function<void(std::vector<int>&, size_t, Assign&)> rec = [&](std::vector<int>& avail,
                                                                      size_t a, Assign& cur) {
      if (a == nrows) {
        list.push_back(cur);
        return;
      }
      int need = row_size(i, a);
      for (auto& idxs : detail::subsets_of(static_cast<int>(avail.size()), need)) {
        std::vector<int> chosen, rest;
        size_t k = 0;
        for (size_t p = 0; p < avail.size(); ++p) {
          if (k < idxs.size() && static_cast<int>(p) + 1 == idxs[k]) {
            chosen.push_back(avail[p]);
            ++k;
          } else {
            rest.push_back(avail[p]);
          }
        }
        cur.rows.push_back(chosen);
        rec(rest, a + 1, cur);
        cur.rows.pop_back();
      }
    };
    std::vector<int> avail;
    for (int v = 1; v <= n[static_cast<size_t>(i)]; ++v) avail.push_back(v);
    Assign cur;
    rec(avail, 0, cur);
    per_color.push_back(std::move(list));
  }

  Poly sum;
  for (auto& combo : detail::cartesian(per_color)) {
    std::vector<std::vector<int>> dest;  // position mapping per color
    std::vector<std::vector<int>> block_of;
    for (int i = 0; i < q.n_vertices(); ++i) {
      std::vector<int> d(static_cast<size_t>(n[static_cast<size_t>(i)]));
      std::vector<int> blk(static_cast<size_t>(n[static_cast<size_t>(i)]) + 1, -1);
      for (size_t a = 0; a < nrows; ++a)
        for (size_t r = 0; r < combo[static_cast<size_t>(i)].rows[a].size(); ++r) {
          int pos = combo[static_cast<size_t>(i)].rows[a][r];
          d[static_cast<size_t>(offset(i, a)) + r] = pos;
          blk[static_cast<size_t>(pos)] = static_cast<int>(a);
        }
      dest.push_back(std::move(d));
      block_of.push_back(std::move(blk));
    }
    Poly term = substitute(H, detail::relabel_bindings(q, dest));
    if (term.is_zero()) continue;
    // same-color ratio binomials for every ordered pair not running from an
    // earlier block to a later one
    for (int i = 0; i < q.n_vertices(); ++i)
      for (int u = 1; u <= n[static_cast<size_t>(i)]; ++u)
        for (int v = 1; v <= n[static_cast<size_t>(i)]; ++v)
          if (u != v && !(block_of[static_cast<size_t>(i)][static_cast<size_t>(u)] <
                          block_of[static_cast<size_t>(i)][static_cast<size_t>(v)]))
            term *= detail::ratio_binom(q, i, u, v);
    sum += term;
  }
  auto quot = divexact(sum, detail::full_ratio_product(q, n));
  if (!quot) throw non_polynomial_error("psym_product denominators did not cancel");
  return ShuffleElement(q, Side::Plus, n, *quot);
}

struct PsymFactors {
  Poly pi1, pi2, pi3;
};

// the three factor groups of the specialized psym product
inline PsymFactors spec_psym_factors(const Quiver& q, const IPartition& P) {
  PsymFactors f{Poly(1), Poly(1), Poly(1)};
  for (auto& ps : P.parts)
    for (int np : ps)
      for (int mm = 1; mm <= np; ++mm) f.pi1 *= one_minus(1, Monomial::var(sym_q(), -mm));
  for (int i = 0; i < q.n_vertices(); ++i)
    for (int j = 0; j < q.n_vertices(); ++j)
      for (int al : q.arrows_from_to(i, j)) {
        const auto& pi = P.parts[static_cast<size_t>(i)];
        const auto& pj = P.parts[static_cast<size_t>(j)];
        for (size_t a = 0; a < pi.size(); ++a)
          for (size_t b = 0; b < pj.size(); ++b) {
            Monomial ratio = Monomial::var(sym_x(q.vertex_name(i), static_cast<int>(a) + 1)) *
                             Monomial::var(sym_x(q.vertex_name(j), static_cast<int>(b) + 1), -1) *
                             Monomial::var(q.arrow_sym(al));
            for (int r = 0; r < pi[a]; ++r)
              for (int s = 0; s < pj[b]; ++s) {
                if (r < s) f.pi2 *= one_minus(1, ratio * Monomial::var(sym_q(), r - s));
                if (r > s) f.pi2 *= one_minus(1, ratio * Monomial::var(sym_q(), r - s - 1));
              }
          }
      }
  for (int i = 0; i < q.n_vertices(); ++i) {
    const auto& pi = P.parts[static_cast<size_t>(i)];
    for (size_t a = 0; a < pi.size(); ++a)
      for (size_t b = 0; b < pi.size(); ++b) {
        if (a == b) continue;
        for (int s = 1 + std::max(0, pi[a] - pi[b]); s <= pi[a]; ++s)
          f.pi3 *= one_minus(1, Monomial::var(sym_x(q.vertex_name(i), static_cast<int>(b) + 1)) *
                                    Monomial::var(sym_x(q.vertex_name(i), static_cast<int>(a) + 1), -1) *
                                    Monomial::var(sym_q(), -s));
      }
  }
  return f;
}

// closed form of spec_P(psym_product(P, gs)): block polynomial evaluations
// times Pi1 Pi2 Pi3
inline Poly spec_psym_closed(const Quiver& q, const IPartition& P, const std::vector<Poly>& gs) {
  IPartition m = transpose(P);
  auto row_size = [&](int i, size_t a) -> int {
    return a < m.parts[static_cast<size_t>(i)].size() ? m.parts[static_cast<size_t>(i)][a] : 0;
  };
  PsymFactors f = spec_psym_factors(q, P);
  Poly out = f.pi1 * f.pi2 * f.pi3;
  for (size_t a = 0; a < gs.size(); ++a) {
    std::map<Sym, std::pair<Int, Monomial>> bind;
    for (int i = 0; i < q.n_vertices(); ++i) {
      const std::string& vn = q.vertex_name(i);
      for (int r = 1; r <= row_size(i, a); ++r)
        bind[sym_z(vn, r)] = {1, Monomial::var(sym_x(vn, r)) *
                                     Monomial::var(sym_q(), static_cast<int>(a))};
    }
    out *= substitute(gs[a], bind);
  }
  return out;
}

}  // namespace qshuffle
