#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "qshuffle/rational.hpp"

namespace qshuffle {

struct quiver_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arrow {
  std::string id, source, target;
};

class Quiver {
 public:
  Quiver(std::vector<std::string> vertices, std::vector<Arrow> arrows,
         std::vector<int> framing_k = {}, std::vector<int> framing_l = {})
      : vertices_(std::move(vertices)), arrows_(std::move(arrows)) {
    std::set<std::string> seen;
    for (auto& v : vertices_)
      if (!seen.insert(v).second) throw quiver_error("duplicate vertex id: " + v);
    std::set<std::string> aseen;
    for (auto& a : arrows_) {
      if (!aseen.insert(a.id).second) throw quiver_error("duplicate arrow id: " + a.id);
      if (!seen.count(a.source))
        throw quiver_error("arrow " + a.id + ": undeclared source vertex " + a.source);
      if (!seen.count(a.target))
        throw quiver_error("arrow " + a.id + ": undeclared target vertex " + a.target);
    }
    framing_k_ = std::move(framing_k);
    framing_l_ = std::move(framing_l);
    framing_k_.resize(vertices_.size(), 0);
    framing_l_.resize(vertices_.size(), 0);
    for (int f : framing_k_)
      if (f < 0) throw quiver_error("negative framing");
    for (int f : framing_l_)
      if (f < 0) throw quiver_error("negative framing");
  }

  int n_vertices() const { return static_cast<int>(vertices_.size()); }
  const std::string& vertex_name(int i) const { return vertices_[static_cast<size_t>(i)]; }
  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  int framing_k(int i) const { return framing_k_[static_cast<size_t>(i)]; }
  int framing_l(int i) const { return framing_l_[static_cast<size_t>(i)]; }

  int vertex_index(const std::string& name) const {
    for (int i = 0; i < n_vertices(); ++i)
      if (vertices_[static_cast<size_t>(i)] == name) return i;
    throw quiver_error("unknown vertex id: " + name);
  }

  // ordinals of arrows i -> j
  std::vector<int> arrows_from_to(int i, int j) const {
    std::vector<int> out;
    for (size_t a = 0; a < arrows_.size(); ++a)
      if (arrows_[a].source == vertex_name(i) && arrows_[a].target == vertex_name(j))
        out.push_back(static_cast<int>(a));
    return out;
  }
  int arrow_count(int i, int j) const { return static_cast<int>(arrows_from_to(i, j).size()); }
  std::vector<int> loops_at(int i) const { return arrows_from_to(i, i); }

  Sym arrow_sym(int a) const { return sym_arrow(arrows_[static_cast<size_t>(a)].id); }

 private:
  std::vector<std::string> vertices_;
  std::vector<Arrow> arrows_;
  std::vector<int> framing_k_, framing_l_;
};

// dimension vectors are indexed by vertex ordinal
using DimVector = std::vector<int>;

inline DimVector dim_zero(const Quiver& q) { return DimVector(static_cast<size_t>(q.n_vertices()), 0); }
inline DimVector dim_unit(const Quiver& q, int i) {
  DimVector d = dim_zero(q);
  d[static_cast<size_t>(i)] = 1;
  return d;
}
inline DimVector dim_add(const DimVector& a, const DimVector& b) {
  DimVector r = a;
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}
inline bool dim_leq(const DimVector& a, const DimVector& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}
inline int dim_total(const DimVector& d) { return std::accumulate(d.begin(), d.end(), 0); }

inline std::string dim_to_string(const Quiver& q, const DimVector& d) {
  std::string out;
  for (int i = 0; i < q.n_vertices(); ++i) {
    if (i) out += ",";
    out += q.vertex_name(i) + "=" + std::to_string(d[static_cast<size_t>(i)]);
  }
  return out;
}

// per-vertex lists of positive parts summing to a dimension vector
struct IComposition {
  std::vector<std::vector<int>> parts;  // by vertex ordinal
  DimVector dim() const {
    DimVector d;
    for (auto& ps : parts) d.push_back(std::accumulate(ps.begin(), ps.end(), 0));
    return d;
  }
};

struct IPartition {
  std::vector<std::vector<int>> parts;  // weakly decreasing per vertex
  DimVector dim() const {
    DimVector d;
    for (auto& ps : parts) d.push_back(std::accumulate(ps.begin(), ps.end(), 0));
    return d;
  }
  IComposition as_composition() const { return {parts}; }
  friend bool operator==(const IPartition& a, const IPartition& b) { return a.parts == b.parts; }
};

inline std::string parts_to_string(const std::vector<std::vector<int>>& parts) {
  std::string out = "(";
  for (size_t i = 0; i < parts.size(); ++i) {
    if (i) out += " | ";
    for (size_t a = 0; a < parts[i].size(); ++a) {
      if (a) out += ",";
      out += std::to_string(parts[i][a]);
    }
  }
  return out + ")";
}

struct Shifts {
  std::vector<int> a, b;
};

// zeta_ij(x) = ((1-x/q)/(1-x))^{delta_ij} * prod_{al:i->j}(1-x t_al)
//            * prod_{al:j->i}(1-t_al/(xq))
inline Rat zeta(const Quiver& q, int i, int j) {
  Sym x = sym_series();
  Poly num(1), den(1);
  if (i == j) {
    num *= one_minus(1, Monomial::var(x) * Monomial::var(sym_q(), -1));
    den *= one_minus(1, Monomial::var(x));
  }
  for (int a : q.arrows_from_to(i, j))
    num *= one_minus(1, Monomial::var(x) * Monomial::var(q.arrow_sym(a)));
  for (int a : q.arrows_from_to(j, i))
    num *= one_minus(1, Monomial::var(q.arrow_sym(a)) * Monomial::var(x, -1) *
                            Monomial::var(sym_q(), -1));
  return Rat(num, den);
}

// zeta_bar_ij(x) = ((1-x)/(1-xq))^{delta_ij} * prod_{al:j->i}(1-t_al/(xq))/(1-t_al/x)
inline Rat zeta_bar(const Quiver& q, int i, int j) {
  Sym x = sym_series();
  Poly num(1), den(1);
  if (i == j) {
    num *= one_minus(1, Monomial::var(x));
    den *= one_minus(1, Monomial::var(x) * Monomial::var(sym_q()));
  }
  for (int a : q.arrows_from_to(j, i)) {
    num *= one_minus(1, Monomial::var(q.arrow_sym(a)) * Monomial::var(x, -1) *
                            Monomial::var(sym_q(), -1));
    den *= one_minus(1, Monomial::var(q.arrow_sym(a)) * Monomial::var(x, -1));
  }
  return Rat(num, den);
}

// <m, n> = sum_i m_i n_i - sum_{al:i->j} m_i n_j
inline long pairing(const Quiver& q, const DimVector& m, const DimVector& n) {
  long r = 0;
  for (int i = 0; i < q.n_vertices(); ++i)
    r += static_cast<long>(m[static_cast<size_t>(i)]) * n[static_cast<size_t>(i)];
  for (auto& a : q.arrows()) {
    int i = q.vertex_index(a.source), j = q.vertex_index(a.target);
    r -= static_cast<long>(m[static_cast<size_t>(i)]) * n[static_cast<size_t>(j)];
  }
  return r;
}

inline long euler_sym(const Quiver& q, const DimVector& m, const DimVector& n) {
  return pairing(q, m, n) + pairing(q, n, m);
}

inline std::vector<int> dvee(const Quiver& q, const DimVector& d) {
  std::vector<int> r(d.size());
  for (int i = 0; i < q.n_vertices(); ++i) {
    int v = 2 * d[static_cast<size_t>(i)];
    for (int j = 0; j < q.n_vertices(); ++j)
      v -= d[static_cast<size_t>(j)] * (q.arrow_count(i, j) + q.arrow_count(j, i));
    r[static_cast<size_t>(i)] = v;
  }
  return r;
}

// gamma_i = (1-q^{-1}) * prod_{loops al at i} (1-t_al)(1-t_al/q)
inline Poly gamma_factor(const Quiver& q, int i) {
  Poly r = one_minus(1, Monomial::var(sym_q(), -1));
  for (int a : q.loops_at(i)) {
    r *= one_minus(1, Monomial::var(q.arrow_sym(a)));
    r *= one_minus(1, Monomial::var(q.arrow_sym(a)) * Monomial::var(sym_q(), -1));
  }
  return r;
}

// a_i = d_i - sum_j d_j #(i->j) - k_i ;  b_i = -d_i + sum_j d_j #(j->i) + l_i
inline Shifts shifts(const Quiver& q, const DimVector& d) {
  Shifts s;
  s.a.resize(d.size());
  s.b.resize(d.size());
  for (int i = 0; i < q.n_vertices(); ++i) {
    int out = 0, in = 0;
    for (int j = 0; j < q.n_vertices(); ++j) {
      out += d[static_cast<size_t>(j)] * q.arrow_count(i, j);
      in += d[static_cast<size_t>(j)] * q.arrow_count(j, i);
    }
    s.a[static_cast<size_t>(i)] = d[static_cast<size_t>(i)] - out - q.framing_k(i);
    s.b[static_cast<size_t>(i)] = -d[static_cast<size_t>(i)] + in + q.framing_l(i);
  }
  return s;
}

// chi_{n,n'}(c): for c > 0 count pairs (r,s) in [0,n)x[0,n') with s - r = c;
// for c <= 0 count pairs with s + 1 - r = c.
inline int chi(int n, int np, int c) {
  if (n < 1 || np < 1) throw std::invalid_argument("chi: n, n' must be >= 1");
  int count = 0;
  for (int r = 0; r < n; ++r)
    for (int s = 0; s < np; ++s) {
      if (c > 0 ? (s - r == c) : (s + 1 - r == c)) ++count;
    }
  return count;
}

// chi extended by 0 when either index vanishes (empty pair set)
inline int chi_ext(int n, int np, int c) { return (n == 0 || np == 0) ? 0 : chi(n, np, c); }

// RHS - LHS of the splitting inequality
//   chi_{k,k'}(c) <= chi_{l,l'}(c) + chi_{k-l,k'-l'}(c+l-l')
//                    + #{0<=r<l, l'<=s<k' : c = s-r}
//                    + #{l<=r<k, 0<=s<l' : c = s+1-r}
inline int chi_gap(int k, int kp, int l, int lp, int c) {
  if (l < 0 || lp < 0 || l > k || lp > kp)
    throw std::invalid_argument("chi_inequality: need 0 <= l <= k and 0 <= l' <= k'");
  int cross1 = 0, cross2 = 0;
  for (int r = 0; r < l; ++r)
    for (int s = lp; s < kp; ++s)
      if (c == s - r) ++cross1;
  for (int r = l; r < k; ++r)
    for (int s = 0; s < lp; ++s)
      if (c == s + 1 - r) ++cross2;
  int rhs = chi_ext(l, lp, c) + chi_ext(k - l, kp - lp, c + l - lp) + cross1 + cross2;
  return rhs - chi_ext(k, kp, c);
}

inline bool chi_inequality_holds(int k, int kp, int l, int lp, int c) {
  return chi_gap(k, kp, l, lp, c) >= 0;
}

// conjugate partition per vertex: m^{(a)} = #{b : n^{(b)} >= a}
inline IPartition transpose(const IPartition& p) {
  IPartition t;
  for (auto& ps : p.parts) {
    std::vector<int> m;
    int maxp = ps.empty() ? 0 : ps.front();
    for (int a = 1; a <= maxp; ++a) {
      int cnt = 0;
      for (int b : ps)
        if (b >= a) ++cnt;
      m.push_back(cnt);
    }
    t.parts.push_back(std::move(m));
  }
  return t;
}

// product-of-lex strict partial order on I-partitions of the same dimension
inline bool partition_greater(const IPartition& p, const IPartition& pp) {
  if (p.dim() != pp.dim()) throw std::invalid_argument("partition_greater: dimension mismatch");
  bool strict = false;
  for (size_t i = 0; i < p.parts.size(); ++i) {
    const auto& a = p.parts[i];
    const auto& b = pp.parts[i];
    if (a == b) continue;
    if (!std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end())) return false;
    strict = true;
  }
  return strict;
}

namespace detail {

inline void partitions_of_int(int n, int maxpart, std::vector<int>& cur,
                              std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = std::min(n, maxpart); p >= 1; --p) {
    cur.push_back(p);
    partitions_of_int(n - p, p, cur, out);
    cur.pop_back();
  }
}

inline void compositions_of_int(int n, std::vector<int>& cur,
                                std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (int p = n; p >= 1; --p) {
    cur.push_back(p);
    compositions_of_int(n - p, cur, out);
    cur.pop_back();
  }
}

template <typename T>
inline std::vector<std::vector<T>> cartesian(const std::vector<std::vector<T>>& choices) {
  std::vector<std::vector<T>> out{{}};
  for (auto& c : choices) {
    std::vector<std::vector<T>> next;
    next.reserve(out.size() * std::max<size_t>(c.size(), 1));
    for (auto& pre : out)
      for (auto& x : c) {
        auto v = pre;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace detail

inline std::vector<std::vector<int>> partitions_of_int(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  detail::partitions_of_int(n, n, cur, out);
  return out;
}

inline std::vector<IPartition> partitions_of(const DimVector& d) {
  std::vector<std::vector<std::vector<int>>> per;
  for (int n : d) per.push_back(partitions_of_int(n));
  std::vector<IPartition> out;
  for (auto& combo : detail::cartesian(per)) out.push_back({combo});
  return out;
}

inline std::vector<IComposition> compositions_of(const DimVector& d) {
  std::vector<std::vector<std::vector<int>>> per;
  for (int n : d) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    detail::compositions_of_int(n, cur, out);
    per.push_back(std::move(out));
  }
  std::vector<IComposition> out;
  for (auto& combo : detail::cartesian(per)) out.push_back({combo});
  return out;
}

// compositions of n into exactly `slots` parts >= 0 (ordered)
inline std::vector<std::vector<int>> compositions_with_slots(int n, int slots) {
  std::vector<std::vector<int>> out;
  if (slots == 0) {
    if (n == 0) out.push_back({});
    return out;
  }
  std::vector<int> cur(static_cast<size_t>(slots), 0);
  std::function<void(int, int)> rec = [&](int pos, int rem) {
    if (pos == slots - 1) {
      cur[static_cast<size_t>(pos)] = rem;
      out.push_back(cur);
      return;
    }
    for (int p = 0; p <= rem; ++p) {
      cur[static_cast<size_t>(pos)] = p;
      rec(pos + 1, rem - p);
    }
  };
  rec(0, n);
  return out;
}

}  // namespace qshuffle
