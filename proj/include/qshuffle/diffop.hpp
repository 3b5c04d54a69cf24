#pragma once

#include "qshuffle/rational.hpp"

namespace qshuffle {

// Shift monomial prod D_{ia}^{e}. Keys are the symbols of the matching w
// variables, kept in canonical order.
struct DMonomial {
  std::vector<std::pair<Sym, int>> e;  // sorted, no zero exponents

  static DMonomial one() { return {}; }
  static DMonomial d_power(const std::string& vertex, int a, int exp) {
    DMonomial m;
    if (exp != 0) m.e.push_back({sym_w(vertex, a), exp});
    return m;
  }
  bool is_one() const { return e.empty(); }

  DMonomial operator*(const DMonomial& o) const {
    DMonomial r;
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

  friend bool operator==(const DMonomial& a, const DMonomial& b) { return a.e == b.e; }
};

struct DMonomialLess {
  bool operator()(const DMonomial& a, const DMonomial& b) const {
    size_t i = 0;
    for (; i < a.e.size() && i < b.e.size(); ++i) {
      if (a.e[i].first != b.e[i].first)
        return sym_less(a.e[i].first, b.e[i].first);
      if (a.e[i].second != b.e[i].second) return a.e[i].second < b.e[i].second;
    }
    return a.e.size() < b.e.size();
  }
};

// Rational function kept as numerator over a list of denominator factors.
// Operator coefficients are built from products of small brackets; keeping the
// factors separate lets sums and products cancel exactly without a gcd.
class FRat {
 public:
  FRat() = default;
  FRat(Poly num, std::vector<Poly> den) : num_(std::move(num)), den_(std::move(den)) {
    cancel(true);
  }
  FRat(const Rat& r) : num_(r.num()) {
    if (!(r.den() == Poly(1))) den_.push_back(r.den());
    cancel(true);
  }
  FRat(const Int& c) : num_(c) {}

  const Poly& num() const { return num_; }
  const std::vector<Poly>& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  Rat to_rat() const {
    Poly d(1);
    for (auto& f : den_) d *= f;
    return Rat(num_, d);
  }

  FRat operator-() const {
    FRat r = *this;
    r.num_ = -r.num_;
    return r;
  }

  friend FRat operator*(const FRat& a, const FRat& b) {
    FRat r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    r.den_.insert(r.den_.end(), b.den_.begin(), b.den_.end());
    r.cancel(true);
    return r;
  }

  friend FRat operator+(const FRat& a, const FRat& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    // least common denominator by multiset union of the factor lists
    std::vector<Poly> rest_b = b.den_;
    std::vector<bool> shared_a(a.den_.size(), false);
    for (size_t i = 0; i < a.den_.size(); ++i) {
      for (size_t j = 0; j < rest_b.size(); ++j)
        if (rest_b[j] == a.den_[i]) {
          shared_a[i] = true;
          rest_b.erase(rest_b.begin() + static_cast<long>(j));
          break;
        }
    }
    Poly na = a.num_;
    for (auto& f : rest_b) na *= f;
    Poly nb = b.num_;
    for (size_t i = 0; i < a.den_.size(); ++i)
      if (!shared_a[i]) nb *= a.den_[i];
    FRat r;
    r.num_ = na + nb;
    r.den_ = a.den_;
    r.den_.insert(r.den_.end(), rest_b.begin(), rest_b.end());
    r.cancel(true);
    return r;
  }
  friend FRat operator-(const FRat& a, const FRat& b) { return a + (-b); }
  FRat& operator+=(const FRat& o) { return *this = *this + o; }

  friend bool fr_eq(const FRat& a0, const FRat& b0) {
    // reduce first: shrinking the factor lists keeps the cross-multiplied
    // polynomials below small enough to compare cheaply
    FRat a = a0, b = b0;
    a.cancel(true);
    b.cancel(true);
    std::vector<Poly> rest_b = b.den_;
    std::vector<Poly> rest_a;
    for (auto& f : a.den_) {
      bool shared = false;
      for (size_t j = 0; j < rest_b.size(); ++j)
        if (rest_b[j] == f) {
          shared = true;
          rest_b.erase(rest_b.begin() + static_cast<long>(j));
          break;
        }
      if (!shared) rest_a.push_back(f);
    }
    Poly pa = a.num_;
    for (auto& f : rest_b) pa *= f;
    Poly pb = b.num_;
    for (auto& f : rest_a) pb *= f;
    return pa == pb;
  }

 private:
  // `reduce` additionally attempts exact division of the numerator by each
  // factor; it pays off after sums, but not on freshly built products
  void cancel(bool reduce) {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    std::vector<Poly> kept;
    bool have_vnum = false;
    detail::ProbeRational vnum0, vnum1;
    for (auto& f : den_) {
      if (f.is_zero()) throw std::invalid_argument("FRat: zero denominator factor");
      if (f.n_terms() == 1) {
        // unit monomial factors fold into the (Laurent) numerator
        auto& [m, c] = *f.terms().begin();
        if (c == 1 || c == -1) {
          num_ = num_.mul_term(c, m.inverse());
          continue;
        }
      }
      if (f.is_constant() && f == Poly(1)) continue;
      if (reduce) {
        // probe values of the numerator are cached across the factor loop;
        // only factors that pass the probe pay for an exact division
        if (!have_vnum) {
          vnum0 = detail::probe_value(num_, false);
          vnum1 = detail::probe_value(num_, true);
          have_vnum = true;
        }
        if (detail::probe_divisible(vnum0, detail::probe_value(f, false)) &&
            detail::probe_divisible(vnum1, detail::probe_value(f, true))) {
          if (auto q = divexact(num_, f, false)) {
            num_ = std::move(*q);
            have_vnum = false;
            continue;
          }
        }
      }
      kept.push_back(f);
    }
    den_ = std::move(kept);
  }

  Poly num_;
  std::vector<Poly> den_;
};

inline bool rat_eq(const FRat& a, const FRat& b) { return fr_eq(a, b); }
inline bool rat_eq(const FRat& a, const Rat& b) { return fr_eq(a, FRat(b)); }
inline bool rat_eq(const Rat& a, const FRat& b) { return fr_eq(FRat(a), b); }
inline std::string to_string(const FRat& r) { return to_string(r.to_rat()); }

// conjugation action D^m f D^{-m}: w_{ia} -> q^{m_{ia}} w_{ia}
inline Rat dop_shift(const Rat& f, const DMonomial& m) {
  if (m.is_one()) return f;
  std::map<Sym, std::pair<Int, Monomial>> bind;
  for (auto& [s, k] : m.e)
    bind[s] = {1, Monomial::var(s) * Monomial::var(sym_q(), k)};
  return Rat(substitute(f.num(), bind), substitute(f.den(), bind));
}

inline FRat dop_shift(const FRat& f, const DMonomial& m) {
  if (m.is_one()) return f;
  std::map<Sym, std::pair<Int, Monomial>> bind;
  for (auto& [s, k] : m.e)
    bind[s] = {1, Monomial::var(s) * Monomial::var(sym_q(), k)};
  std::vector<Poly> den;
  den.reserve(f.den().size());
  for (auto& g : f.den()) den.push_back(substitute(g, bind));
  return FRat(substitute(f.num(), bind), std::move(den));
}

// Normal-ordered q-difference operator: rational coefficients in w/sigma/tau
// on the left, shift monomials on the right.
class DiffOp {
 public:
  using Terms = std::map<DMonomial, FRat, DMonomialLess>;

  DiffOp() = default;
  static DiffOp scalar(FRat r) {
    DiffOp o;
    o.add_term(DMonomial::one(), std::move(r));
    return o;
  }
  static DiffOp shift(DMonomial m, FRat coeff = FRat(Int(1))) {
    DiffOp o;
    o.add_term(std::move(m), std::move(coeff));
    return o;
  }

  const Terms& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }

  void add_term(DMonomial m, FRat c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_.emplace(std::move(m), std::move(c));
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  DiffOp& operator+=(const DiffOp& o) {
    for (auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  DiffOp& operator-=(const DiffOp& o) {
    for (auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend DiffOp operator+(DiffOp a, const DiffOp& b) { return a += b; }
  friend DiffOp operator-(DiffOp a, const DiffOp& b) { return a -= b; }

  DiffOp scaled(const FRat& r) const {
    DiffOp o;
    for (auto& [m, c] : t_) o.add_term(m, c * r);
    return o;
  }

 private:
  Terms t_;
};

// (f D^m)(g D^n) = f * (D^m g D^{-m}) * D^{m+n}
inline DiffOp dop_mul(const DiffOp& A, const DiffOp& B) {
  DiffOp out;
  for (auto& [ma, ca] : A.terms())
    for (auto& [mb, cb] : B.terms()) out.add_term(ma * mb, ca * dop_shift(cb, ma));
  return out;
}

inline bool dop_eq(const DiffOp& A, const DiffOp& B) {
  // stored coefficients are nonzero, so the supports must agree
  if (A.terms().size() != B.terms().size()) return false;
  auto i = A.terms().begin();
  auto j = B.terms().begin();
  for (; i != A.terms().end(); ++i, ++j) {
    if (!(i->first == j->first)) return false;
    if (!fr_eq(i->second, j->second)) return false;
  }
  return true;
}

inline std::string to_string(const DMonomial& m) {
  if (m.is_one()) return "1";
  std::string out;
  bool first = true;
  for (auto& [s, k] : m.e) {
    if (!first) out += "*";
    first = false;
    const Indet& v = indet(s);
    out += "D[" + v.id + "," + std::to_string(v.index) + "]";
    if (k != 1) out += "^" + std::to_string(k);
  }
  return out;
}

inline std::string to_string(const DiffOp& op) {
  if (op.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto& [m, c] : op.terms()) {
    if (!first) out += " + ";
    first = false;
    out += to_string(c);
    if (!m.is_one()) out += " * " + to_string(m);
  }
  return out;
}

}  // namespace qshuffle
