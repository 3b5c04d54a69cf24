#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qshuffle/rational.hpp"

using namespace qshuffle;

namespace {
Sym zv(int a) { return sym_z("1", a); }
}

TEST_CASE("monomial arithmetic and ordering") {
  Monomial a = Monomial::var(sym_q(), 2) * Monomial::var(zv(1), -1);
  CHECK(a.exp_of(sym_q()) == 2);
  CHECK(a.exp_of(zv(1)) == -1);
  CHECK(a.total_degree() == 1);
  CHECK((a * a.inverse()).is_one());
  CHECK(a.pow(3).exp_of(sym_q()) == 6);

  // graded-lex: higher total degree first; ties broken at the earliest
  // canonical variable with the larger exponent
  Monomial q2 = Monomial::var(sym_q(), 2);
  Monomial qz = Monomial::var(sym_q()) * Monomial::var(zv(1));
  CHECK(mono_cmp(q2, qz) > 0);
  CHECK(mono_cmp(qz, q2) < 0);
  CHECK(mono_cmp(q2, q2) == 0);
  CHECK(mono_cmp(Monomial::var(zv(1)), Monomial::one()) > 0);
}

TEST_CASE("polynomial products") {
  Sym x = zv(1);
  Poly one_minus_x = one_minus(1, Monomial::var(x));
  Poly one_plus_x = Poly(1) + Poly::var(x);
  CHECK(one_minus_x * one_plus_x == Poly(1) - Poly::var(x, 2));

  Poly p = Poly::var(sym_q()) + Poly(7);
  CHECK(p * Poly(1) == p);

  // (1 - x/q)(1 - xq) = 1 - x(q + 1/q) + x^2
  Poly a = one_minus(1, Monomial::var(x) * Monomial::var(sym_q(), -1));
  Poly b = one_minus(1, Monomial::var(x) * Monomial::var(sym_q()));
  Poly want(1);
  want.add_term(Monomial::var(x) * Monomial::var(sym_q()), -1);
  want.add_term(Monomial::var(x) * Monomial::var(sym_q(), -1), -1);
  want.add_term(Monomial::var(x, 2), 1);
  CHECK(a * b == want);
}

TEST_CASE("canonical printing") {
  // the bit-exact contract example
  Poly p(1);
  p.add_term(Monomial::var(sym_q(), -1) * Monomial::var(sym_z("1", 1)) *
                 Monomial::var(sym_z("1", 2), -1),
             -1);
  CHECK(to_string(p) == "1 - q^-1*z[1,1]*z[1,2]^-1");

  CHECK(to_string(Poly()) == "0");
  CHECK(to_string(Poly(-3)) == "-3");
  Poly m = Poly::var(sym_q(), 2) - Poly::term(2, Monomial::var(zv(1)));
  CHECK(to_string(m) == "q^2 - 2*z[1,1]");
}

TEST_CASE("divexact and divmod witness") {
  Sym x = zv(1);
  Poly num = Poly(1) - Poly::var(x, 2);
  Poly den = one_minus(1, Monomial::var(x));
  auto quo = divexact(num, den);
  REQUIRE(quo);
  CHECK(*quo == Poly(1) + Poly::var(x));

  CHECK(!divexact(den, one_minus(1, Monomial::var(x) * Monomial::var(sym_q(), -1))));
  CHECK(*divexact(Poly(), den) == Poly());

  // monomial (unit) divisors always divide
  auto mq = divexact(den, Poly::var(x, -2));
  REQUIRE(mq);
  CHECK(*mq * Poly::var(x, -2) == den);

  // witness identity p = q*d + r on a non-divisible Laurent pair
  Poly p = Poly::var(x, 3) + Poly::var(sym_q()) + Poly::var(x, -1);
  Poly d = Poly::var(x) - Poly(2);
  auto [q, r] = divmod_witness(p, d);
  CHECK(q * d + r == p);
  CHECK(!r.is_zero());
}

TEST_CASE("substitute") {
  Sym z1 = zv(1), z2 = zv(2);
  CHECK(substitute(Poly::var(z2), {{z2, {1, Monomial::var(sym_q()) * Monomial::var(z1)}}}) ==
        Poly::term(1, Monomial::var(sym_q()) * Monomial::var(z1)));
  Poly z1z2 = Poly::term(1, Monomial::var(z1) * Monomial::var(z2));
  Sym xx = sym_x("1", 1);
  Poly got = substitute(z1z2, {{z1, {1, Monomial::var(xx)}},
                               {z2, {1, Monomial::var(xx) * Monomial::var(sym_q())}}});
  CHECK(got == Poly::term(1, Monomial::var(xx, 2) * Monomial::var(sym_q())));
  CHECK(substitute(z1z2, {}) == z1z2);

  // substitution is a ring homomorphism
  Poly a = Poly::var(z1) + Poly(1);
  Poly b = Poly::var(z1, -1) - Poly::var(sym_q());
  std::map<Sym, std::pair<Int, Monomial>> bind{{z1, {-1, Monomial::var(z2, 2)}}};
  CHECK(substitute(a * b, bind) == substitute(a, bind) * substitute(b, bind));

  // zero-coefficient binding kills terms containing the variable
  CHECK(substitute(a, {{z1, {0, Monomial::one()}}}) == Poly(1));
}

TEST_CASE("rational normalization and equality") {
  Sym x = zv(1);
  Rat a(Poly(1) - Poly::var(x, 2), one_minus(1, Monomial::var(x)));
  Rat b(Poly(1) + Poly::var(x));
  CHECK(rat_eq(a, b));
  CHECK(rat_eq(Rat(Poly(1), Poly::var(x)), Rat(Poly::var(x, -1))));
  CHECK(!rat_eq(Rat(Poly(1), one_minus(1, Monomial::var(x))),
                Rat(Poly(1), one_minus(1, Monomial::var(x) * Monomial::var(sym_q())))));

  // integer content and denominator sign conventions
  Rat c(Poly(-2), Poly(-4));
  CHECK(c.num() == Poly(1));
  CHECK(c.den() == Poly(2));

  auto ap = Rat(Poly(1) - Poly::var(x, 2), Poly(1) - Poly::var(x)).as_poly();
  REQUIRE(ap);
  CHECK(*ap == Poly(1) + Poly::var(x));
}

TEST_CASE("series expansion") {
  Sym x = sym_series();
  Sym w = sym_w("1", 1);
  // 1/(1 - w/x) at infinity: [1, w, w^2]
  Rat r(Poly(1), one_minus(1, Monomial::var(w) * Monomial::var(x, -1)));
  auto cs = expand_series(r, x, Regime::AtInfinity, 2);
  REQUIRE(cs);
  CHECK(rat_eq((*cs)[0], Rat(1)));
  CHECK(rat_eq((*cs)[1], Rat(Poly::var(w))));
  CHECK(rat_eq((*cs)[2], Rat(Poly::var(w, 2))));

  // 1/(1 - x/w) at zero: [1, 1/w, 1/w^2]
  Rat r2(Poly(1), one_minus(1, Monomial::var(x) * Monomial::var(w, -1)));
  auto cs2 = expand_series(r2, x, Regime::AtZero, 2);
  REQUIRE(cs2);
  CHECK(rat_eq((*cs2)[0], Rat(1)));
  CHECK(rat_eq((*cs2)[1], Rat(Poly(1), Poly::var(w))));
  CHECK(rat_eq((*cs2)[2], Rat(Poly(1), Poly::var(w, 2))));

  // finite Laurent case (1 - tau/x) at infinity: [1, -tau]
  Sym tau = sym_tau("1", 1);
  Rat r3(one_minus(1, Monomial::var(tau) * Monomial::var(x, -1)));
  auto cs3 = expand_series(r3, x, Regime::AtInfinity, 1);
  REQUIRE(cs3);
  CHECK(rat_eq((*cs3)[0], Rat(1)));
  CHECK(rat_eq((*cs3)[1], -Rat(Poly::var(tau))));

  // no expansion at infinity when the numerator outruns the denominator
  Rat r4(Poly::var(x, 2), one_minus(1, Monomial::var(x)));
  CHECK(!expand_series(r4, x, Regime::AtInfinity, 1));

  // truncated series times denominator reproduces the numerator mod x^-(n+1)
  Rat r5(one_minus(1, Monomial::var(w) * Monomial::var(sym_q(), -1) * Monomial::var(x, -1)),
         one_minus(1, Monomial::var(w) * Monomial::var(x, -1)));
  auto cs5 = expand_series(r5, x, Regime::AtInfinity, 4);
  REQUIRE(cs5);
  Rat acc;
  for (int k = 0; k <= 4; ++k) acc += (*cs5)[static_cast<size_t>(k)] * Rat(Poly::var(x, -k));
  Rat resid = acc - r5;
  // the residual is O(x^-5): its own expansion vanishes through order 4
  auto rs = expand_series(resid, x, Regime::AtInfinity, 4);
  REQUIRE(rs);
  for (int k = 0; k <= 4; ++k) CHECK((*rs)[static_cast<size_t>(k)].is_zero());
}
