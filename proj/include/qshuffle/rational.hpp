#pragma once

#include <optional>
#include <vector>

#include "qshuffle/poly.hpp"

namespace qshuffle {

// Fraction of Laurent polynomials. Not gcd-reduced: only integer content and
// a common monomial shift are stripped, plus a sign convention on the
// denominator's leading coefficient. Equality is semantic (cross products).
class Rat {
 public:
  Rat() : num_(), den_(1) {}
  Rat(long v) : num_(v), den_(1) {}
  Rat(const Int& v) : num_(v), den_(1) {}
  Rat(Poly n) : num_(std::move(n)), den_(1) {}
  Rat(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
    if (den_.is_zero()) throw std::invalid_argument("Rat: zero denominator");
    normalize();
  }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  friend Rat operator+(const Rat& a, const Rat& b) {
    if (a.den_ == b.den_) return Rat(a.num_ + b.num_, a.den_);
    return Rat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend Rat operator-(const Rat& a, const Rat& b) {
    if (a.den_ == b.den_) return Rat(a.num_ - b.num_, a.den_);
    return Rat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  Rat operator-() const {
    Rat r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend Rat operator*(const Rat& a, const Rat& b) {
    return Rat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend Rat operator/(const Rat& a, const Rat& b) {
    if (b.num_.is_zero()) throw std::invalid_argument("Rat: division by zero");
    return Rat(a.num_ * b.den_, a.den_ * b.num_);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  // exact polynomial value if the denominator divides the numerator
  std::optional<Poly> as_poly() const {
    if (num_.is_zero()) return Poly();
    return divexact(num_, den_);
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Poly(1);
      return;
    }
    // common monomial shift
    for (Sym s : den_.vars()) {
      int m = std::min(num_.min_exp(s), den_.min_exp(s));
      if (m != 0) {
        Monomial sh = Monomial::var(s, -m);
        num_ = num_.mul_term(1, sh);
        den_ = den_.mul_term(1, sh);
      }
    }
    // integer content
    Int g = boost::multiprecision::gcd(num_.content(), den_.content());
    if (g > 1) {
      num_ = num_.div_int(g);
      den_ = den_.div_int(g);
    }
    if (den_.terms().begin()->second < 0) {
      num_ = -num_;
      den_ = -den_;
    }
  }

  Poly num_, den_;
};

inline bool rat_eq(const Rat& a, const Rat& b) {
  return a.num() * b.den() == b.num() * a.den();
}

inline std::string to_string(const Rat& r) {
  if (r.den() == Poly(1)) return "[" + to_string(r.num()) + "]";
  return "[" + to_string(r.num()) + "]/[" + to_string(r.den()) + "]";
}

enum class Regime { AtInfinity, AtZero };

// Power-series expansion of r in var^{-1} (AtInfinity) or var (AtZero):
// r = sum_k c_k var^{∓k} + O(var^{∓(order+1)}). Returns nullopt when r has no
// such expansion (the denominator's extreme coefficient cannot be inverted
// before the numerator's, i.e. positive powers of var^{±1} remain).
inline std::optional<std::vector<Rat>> expand_series(const Rat& r, Sym var, Regime regime,
                                                     int order) {
  // decompose by exponent of var
  auto split = [&](const Poly& p) {
    std::map<int, Poly> by_exp;
    for (auto& [m, c] : p.terms()) {
      int k = m.exp_of(var);
      Monomial rest;
      for (auto& [s, e] : m.e)
        if (s != var) rest.e.push_back({s, e});
      by_exp[k].add_term(rest, c);
    }
    return by_exp;
  };
  auto num = split(r.num());
  auto den = split(r.den());
  if (den.empty()) return std::nullopt;

  // base exponent: extreme of den in the expansion direction
  int base;
  if (regime == Regime::AtInfinity)
    base = den.rbegin()->first;  // max exponent
  else
    base = den.begin()->first;  // min exponent

  // coefficient of var^{base ∓ k}
  auto at = [&](const std::map<int, Poly>& m, int k) -> Poly {
    int e = regime == Regime::AtInfinity ? base - k : base + k;
    auto it = m.find(e);
    return it == m.end() ? Poly() : it->second;
  };

  if (!num.empty()) {
    int num_extreme = regime == Regime::AtInfinity ? num.rbegin()->first : num.begin()->first;
    bool too_big = regime == Regime::AtInfinity ? num_extreme > base : num_extreme < base;
    if (too_big) return std::nullopt;  // not a power series in the chosen regime
  }

  Rat d0(at(den, 0));
  std::vector<Rat> out;
  out.reserve(static_cast<size_t>(order) + 1);
  for (int k = 0; k <= order; ++k) {
    Rat acc(at(num, k));
    for (int j = 1; j <= k; ++j) acc -= Rat(at(den, j)) * out[static_cast<size_t>(k - j)];
    out.push_back(acc / d0);
  }
  return out;
}

}  // namespace qshuffle
