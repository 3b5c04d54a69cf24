#pragma once

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qshuffle/indet.hpp"

namespace qshuffle {

using Int = boost::multiprecision::cpp_int;

// Laurent monomial: sorted (symbol, nonzero exponent) pairs.
struct Monomial {
  std::vector<std::pair<Sym, int>> e;

  static Monomial one() { return {}; }
  static Monomial var(Sym s, int exp = 1) {
    Monomial m;
    if (exp != 0) m.e.push_back({s, exp});
    return m;
  }

  bool is_one() const { return e.empty(); }

  int total_degree() const {
    int d = 0;
    for (auto& [s, k] : e) d += k;
    return d;
  }

  int exp_of(Sym s) const {
    for (auto& [t, k] : e)
      if (t == s) return k;
    return 0;
  }

  Monomial operator*(const Monomial& o) const {
    Monomial r;
    r.e.reserve(e.size() + o.e.size());
    size_t i = 0, j = 0;
    while (i < e.size() && j < o.e.size()) {
      if (e[i].first == o.e[j].first) {
        int k = e[i].second + o.e[j].second;
        if (k != 0) r.e.push_back({e[i].first, k});
        ++i, ++j;
      } else if (sym_less(e[i].first, o.e[j].first)) {
        r.e.push_back(e[i++]);
      } else {
        r.e.push_back(o.e[j++]);
      }
    }
    while (i < e.size()) r.e.push_back(e[i++]);
    while (j < o.e.size()) r.e.push_back(o.e[j++]);
    return r;
  }

  Monomial pow(int k) const {
    Monomial r;
    if (k == 0) return r;
    r.e = e;
    for (auto& [s, d] : r.e) d *= k;
    return r;
  }

  Monomial inverse() const { return pow(-1); }

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.e == b.e; }
};

// Graded-lex comparison; "greater" terms print first. Ties on total degree are
// broken by the earliest variable (canonical symbol order) where exponents
// differ, larger exponent first.
inline int mono_cmp(const Monomial& a, const Monomial& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db ? -1 : 1;
  size_t i = 0, j = 0;
  while (i < a.e.size() || j < b.e.size()) {
    if (i < a.e.size() && j < b.e.size()) {
      if (a.e[i].first == b.e[j].first) {
        if (a.e[i].second != b.e[j].second)
          return a.e[i].second < b.e[j].second ? -1 : 1;
        ++i, ++j;
      } else if (sym_less(a.e[i].first, b.e[j].first)) {
        // a has an exponent where b has 0
        return a.e[i].second > 0 ? 1 : -1;
      } else {
        return b.e[j].second > 0 ? -1 : 1;
      }
    } else if (i < a.e.size()) {
      return a.e[i].second > 0 ? 1 : -1;
    } else {
      return b.e[j].second > 0 ? -1 : 1;
    }
  }
  return 0;
}

struct TermGreater {
  bool operator()(const Monomial& a, const Monomial& b) const { return mono_cmp(a, b) > 0; }
};

// Laurent polynomial over Z. Terms are kept in descending graded-lex order,
// which is also the canonical printing order.
class Poly {
 public:
  using Terms = std::map<Monomial, Int, TermGreater>;

  Poly() = default;
  Poly(long v) {
    if (v != 0) t_[Monomial::one()] = v;
  }
  Poly(const Int& v) {
    if (v != 0) t_[Monomial::one()] = v;
  }
  static Poly var(Sym s, int exp = 1) { return term(1, Monomial::var(s, exp)); }
  static Poly term(const Int& c, const Monomial& m) {
    Poly p;
    if (c != 0) p.t_[m] = c;
    return p;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  size_t n_terms() const { return t_.size(); }

  bool is_constant() const {
    return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one());
  }
  Int constant_value() const {
    if (t_.empty()) return 0;
    return t_.begin()->second;
  }

  void add_term(const Monomial& m, const Int& c) {
    if (c == 0) return;
    auto [it, inserted] = t_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) t_.erase(it);
    }
  }

  Poly& operator+=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  Poly operator-() const {
    Poly r = *this;
    for (auto& [m, c] : r.t_) c = -c;
    return r;
  }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r;
    if (a.is_zero() || b.is_zero()) return r;
    for (auto& [ma, ca] : a.t_)
      for (auto& [mb, cb] : b.t_) r.add_term(ma * mb, ca * cb);
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  Poly mul_term(const Int& c, const Monomial& m) const {
    Poly r;
    if (c == 0) return r;
    for (auto& [mm, cc] : t_) r.t_.emplace_hint(r.t_.end(), mm * m, cc * c);
    return r;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.t_.size() != b.t_.size()) return false;
    auto i = a.t_.begin();
    auto j = b.t_.begin();
    for (; i != a.t_.end(); ++i, ++j)
      if (!(i->first == j->first) || i->second != j->second) return false;
    return true;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // gcd of coefficient absolute values (0 for the zero polynomial)
  Int content() const {
    Int g = 0;
    for (auto& [m, c] : t_) {
      g = boost::multiprecision::gcd(g, c);
      if (g == 1) break;
    }
    return g;
  }

  // exact division by an integer; caller guarantees divisibility
  Poly div_int(const Int& d) const {
    Poly r;
    for (auto& [m, c] : t_) r.t_.emplace_hint(r.t_.end(), m, c / d);
    return r;
  }

  std::vector<Sym> vars() const {
    std::vector<Sym> v;
    for (auto& [m, c] : t_)
      for (auto& [s, k] : m.e) v.push_back(s);
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
  }

  int min_exp(Sym s) const {
    int m = 0;
    bool first = true;
    for (auto& [mo, c] : t_) {
      int k = mo.exp_of(s);
      if (first || k < m) m = k, first = false;
    }
    return m;
  }
  int max_exp(Sym s) const {
    int m = 0;
    bool first = true;
    for (auto& [mo, c] : t_) {
      int k = mo.exp_of(s);
      if (first || k > m) m = k, first = false;
    }
    return m;
  }

 private:
  Terms t_;
};

inline Poly ipow(const Poly& p, int k) {
  if (k < 0) throw std::invalid_argument("ipow: negative exponent");
  Poly r(1);
  Poly base = p;
  while (k > 0) {
    if (k & 1) r *= base;
    base = (k >>= 1) ? base * base : base;
  }
  return r;
}

// 1 - c * m, the ubiquitous binomial factor
inline Poly one_minus(const Int& c, const Monomial& m) {
  Poly p(1);
  p.add_term(m, -c);
  return p;
}

// Substitution s -> c * m (simultaneous across all bound variables). Negative
// powers of a bound variable require the bound coefficient to be a unit.
inline Poly substitute(const Poly& p, const std::map<Sym, std::pair<Int, Monomial>>& bind) {
  if (bind.empty()) return p;
  Poly r;
  for (auto& [mo, c] : p.terms()) {
    Int coeff = c;
    Monomial rest;
    Monomial image = Monomial::one();
    bool zero = false;
    for (auto& [s, k] : mo.e) {
      auto it = bind.find(s);
      if (it == bind.end()) {
        rest.e.push_back({s, k});
        continue;
      }
      const Int& bc = it->second.first;
      const Monomial& bm = it->second.second;
      if (k >= 0) {
        if (bc == 0) {
          if (!bm.is_one())
            throw std::invalid_argument("substitute: zero coefficient with nontrivial monomial");
          zero = true;
          break;
        }
        for (int u = 0; u < k; ++u) coeff *= bc;
      } else {
        if (bc != 1 && bc != -1)
          throw std::invalid_argument("substitute: negative power of non-unit binding");
        if (bc == -1 && (k & 1)) coeff = -coeff;
      }
      image = image * bm.pow(k);
    }
    if (zero) continue;
    r.add_term(rest * image, coeff);
  }
  return r;
}

namespace detail {

// Shift p by the per-variable minimum exponents so it becomes an ordinary
// polynomial; returns the inverse-shift monomial needed to undo it.
inline Poly clear_denominators(const Poly& p, Monomial& shift) {
  shift = Monomial::one();
  for (Sym s : p.vars()) {
    int m = p.min_exp(s);
    if (m < 0) shift = shift * Monomial::var(s, -m);
  }
  if (shift.is_one()) return p;
  return p.mul_term(1, shift);
}

}  // namespace detail

// Division with remainder under the graded-lex term order, after shifting both
// operands into the ordinary polynomial ring. Returns (quotient, remainder)
// with p == quotient * d + remainder; remainder == 0 iff d divides p exactly.
inline std::pair<Poly, Poly> divmod_witness(const Poly& p, const Poly& d) {
  if (d.is_zero()) throw std::invalid_argument("divmod: division by zero polynomial");
  if (p.is_zero()) return {Poly(), Poly()};
  Monomial sd;
  Poly D = detail::clear_denominators(d, sd);
  // Shift p far enough that an exact Laurent quotient p/d, which can reach
  // exponents as low as min_p - max_d per variable, clears to an ordinary
  // polynomial: exponent max(0, maxexp_D - minexp_p) per variable suffices.
  Monomial sp;
  {
    std::vector<Sym> vs = p.vars();
    for (Sym s : D.vars()) vs.push_back(s);
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    for (Sym s : vs) {
      int e = std::max(0, D.max_exp(s) - p.min_exp(s));
      if (e > 0) sp = sp * Monomial::var(s, e);
    }
  }
  Poly P = sp.is_one() ? p : p.mul_term(1, sp);
  const Monomial& lmD = D.terms().begin()->first;
  const Int& lcD = D.terms().begin()->second;
  Poly q, rem;
  while (!P.is_zero()) {
    const Monomial& lm = P.terms().begin()->first;
    const Int& lc = P.terms().begin()->second;
    // divisibility of the leading monomial by lmD (natural exponents)
    bool divides = true;
    Monomial quot = lm * lmD.inverse();
    for (auto& [s, k] : quot.e)
      if (k < 0) {
        divides = false;
        break;
      }
    if (divides && lc % lcD == 0) {
      Int qc = lc / lcD;
      q.add_term(quot, qc);
      P -= D.mul_term(qc, quot);
    } else {
      rem.add_term(lm, lc);
      P.add_term(lm, -lc);
    }
  }
  // p*sp == q*(d*sd) + rem  =>  p == (q*sd/sp)*d + rem/sp
  Monomial unshift = sp.inverse();
  return {q.mul_term(1, sd * unshift), rem.mul_term(1, unshift)};
}

namespace detail {
// Cheap divisibility probe: evaluate both operands at a fixed integer point
// (a prime per variable, chosen from the symbol id). An exact quotient is a
// Laurent polynomial with integer coefficients, so its value at the point is
// a rational whose denominator is made of probe primes only.
using ProbeRational = boost::multiprecision::cpp_rational;

inline const int* probe_primes(size_t& n) {
  static const int primes[] = {3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                               43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  n = sizeof(primes) / sizeof(primes[0]);
  return primes;
}

inline Int probe_prime(Sym s, bool flip) {
  size_t np;
  const int* primes = probe_primes(np);
  uint32_t h = static_cast<uint32_t>(s);
  h = flip ? h * 2654435761u + 13u : h * 40503u + 1u;
  return Int(primes[h % np]);
}

inline ProbeRational probe_value(const Poly& p, bool flip) {
  // evaluate over the integers after clearing Laurent exponents per variable,
  // deferring the single rational normalization to the end
  std::map<Sym, int> shift;
  for (auto& [m, c] : p.terms())
    for (auto& [s, e] : m.e)
      if (e < 0) {
        auto [it, _] = shift.emplace(s, 0);
        it->second = std::max(it->second, -e);
      }
  Int sum = 0;
  for (auto& [m, c] : p.terms()) {
    Int v = c;
    for (auto& [s, e] : m.e) {
      Int pr = probe_prime(s, flip);
      auto it = shift.find(s);
      int k = e + (it == shift.end() ? 0 : it->second);
      for (int j = 0; j < k; ++j) v *= pr;
    }
    // terms missing a shifted variable still need its clearing factor
    for (auto& [s, sh] : shift) {
      bool present = false;
      for (auto& [ms, me] : m.e)
        if (ms == s) {
          present = true;
          break;
        }
      if (present) continue;
      Int pr = probe_prime(s, flip);
      for (int j = 0; j < sh; ++j) v *= pr;
    }
    sum += v;
  }
  Int den = 1;
  for (auto& [s, sh] : shift) {
    Int pr = probe_prime(s, flip);
    for (int j = 0; j < sh; ++j) den *= pr;
  }
  return ProbeRational(sum, den);
}

// whether vp/vd could be the probe value of an integer Laurent polynomial
inline bool probe_divisible(const ProbeRational& vp, const ProbeRational& vd) {
  if (vd == 0) return true;  // no information
  ProbeRational r = vp / vd;
  Int den = boost::multiprecision::denominator(r);
  size_t np;
  const int* primes = probe_primes(np);
  for (size_t i = 0; i < np; ++i)
    while (den % primes[i] == 0) den /= primes[i];
  return den == 1;
}
}  // namespace detail

inline std::optional<Poly> divexact(const Poly& p, const Poly& d, bool probe = true) {
  if (probe && !p.is_zero() && !d.is_zero()) {
    for (bool flip : {false, true})
      if (!detail::probe_divisible(detail::probe_value(p, flip), detail::probe_value(d, flip)))
        return std::nullopt;
  }
  auto [q, r] = divmod_witness(p, d);
  if (!r.is_zero()) return std::nullopt;
  return q;
}

inline std::string mono_to_string(const Monomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  bool first = true;
  for (auto& [s, k] : m.e) {
    if (!first) out += "*";
    first = false;
    out += indet(s).name();
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

inline std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : p.terms()) {
    Int a = c;
    if (first) {
      if (a < 0) {
        out += "-";
        a = -a;
      }
    } else {
      out += a < 0 ? " - " : " + ";
      if (a < 0) a = -a;
    }
    first = false;
    if (m.is_one()) {
      out += a.str();
    } else {
      if (a != 1) out += a.str() + "*";
      out += mono_to_string(m);
    }
  }
  return out;
}

}  // namespace qshuffle
