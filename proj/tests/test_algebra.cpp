#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "rtr/fraction.hpp"
#include "rtr/hbar.hpp"
#include "rtr/series.hpp"
#include "rtr/symscalar.hpp"

using namespace rtr;

namespace {

FactoredRational frac(const Poly& n) { return FactoredRational(n); }
Poly Z(int v = 0) { return Poly::variable(v); }
Poly C(long n, long d = 1) { return Poly(rat(n, d)); }

FactoredRational over_atom(const Poly& n, const DenomAtom& a, int p = 1) {
  FactoredRational f(n);
  f.mul_den_atom(a, p);
  return f;
}

}  // namespace

TEST_CASE("rational parsing") {
  CHECK(parse_rational("3/4") == rat(3, 4));
  CHECK(parse_rational("-7") == rat(-7));
  CHECK(parse_rational("6/4") == rat(3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
}

TEST_CASE("generalized binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(-1, 3) == -1);
  CHECK(binomial(-2, 2) == 3);
  CHECK(binomial(4, 0) == 1);
}

TEST_CASE("polynomial arithmetic and division") {
  Poly p = Z() * Z() - C(1);            // z^2 - 1
  Poly d1 = Z() - C(1), d2 = Z() + C(1);
  Poly q;
  REQUIRE(try_divide(p, d1, q));
  CHECK(q == d2);
  REQUIRE(try_divide(p, d2, q));
  CHECK(q == d1);
  CHECK_FALSE(try_divide(p, Z() - C(2), q));

  // multivariate: (z0*z1 - 1) divides z0^2*z1^2 - 1
  Poly m = Z(0) * Z(1) - C(1);
  Poly big = Z(0) * Z(0) * Z(1) * Z(1) - C(1);
  REQUIRE(try_divide(big, m, q));
  CHECK(q == Z(0) * Z(1) + C(1));
}

TEST_CASE("fraction normalization cancels atoms") {
  // (z^2-1) / (z (z-1)) -> (z+1)/z
  FactoredRational f(Z() * Z() - C(1));
  f.mul_den_atom(DenomAtom::linear(0, Rational(0)));
  f.mul_den_atom(DenomAtom::linear(0, Rational(1)));
  f.normalize();
  FactoredRational expect = over_atom(Z() + C(1), DenomAtom::linear(0, Rational(0)));
  CHECK(f.equals(expect));
}

TEST_CASE("fraction field ops") {
  FactoredRational a = over_atom(C(1), DenomAtom::linear(0, Rational(1)));   // 1/(z-1)
  FactoredRational b = over_atom(C(1), DenomAtom::linear(0, Rational(-1)));  // 1/(z+1)
  FactoredRational s = a - b;  // 2/(z^2-1)
  FactoredRational expect(C(2));
  expect.mul_den_atom(DenomAtom::linear(0, Rational(1)));
  expect.mul_den_atom(DenomAtom::linear(0, Rational(-1)));
  CHECK(s.equals(expect));
  CHECK((a * b).equals(expect * rat(1, 2)));
  CHECK(s.eval({rat(3)}) == rat(1, 4));
}

TEST_CASE("fraction derivative") {
  // d/dz 1/(z-1) = -1/(z-1)^2
  FactoredRational a = over_atom(C(1), DenomAtom::linear(0, Rational(1)));
  FactoredRational expect = over_atom(C(-1), DenomAtom::linear(0, Rational(1)), 2);
  CHECK(a.derivative(0).equals(expect));
  // quotient rule on z^2/(z*w-1)
  FactoredRational f = over_atom(Z(0) * Z(0), DenomAtom::prod(0, 1).first);
  FactoredRational df = f.derivative(0);
  // check numerically at (z,w) = (2, 3)
  Rational h = 0;  // exact check instead: df == (2z(zw-1) - z^2 w)/(zw-1)^2
  FactoredRational expect2 =
      over_atom(Z(0) * C(2) * (Z(0) * Z(1) - C(1)) - Z(0) * Z(0) * Z(1),
                DenomAtom::prod(0, 1).first, 2);
  CHECK(df.equals(expect2));
  (void)h;
}

TEST_CASE("substitutions round-trip") {
  FactoredRational f = over_atom(Z() * Z() + C(3), DenomAtom::linear(0, Rational(1)), 2);
  f.mul_den_atom(DenomAtom::linear(0, Rational(0)));
  CHECK(f.subst_inverse(0).subst_inverse(0).equals(f));
  CHECK(f.subst_negate(0).subst_negate(0).equals(f));

  // two-variable: 1/(z0 z1 - 1) under z0 -> 1/z0 becomes z0/(z1 - z0)
  FactoredRational g = over_atom(C(1), DenomAtom::prod(0, 1).first);
  FactoredRational gi = g.subst_inverse(0);
  FactoredRational expect(Z(0) * C(-1));
  expect.mul_den_atom(DenomAtom::diff(0, 1).first);
  CHECK(gi.equals(expect));
  CHECK(gi.subst_inverse(0).equals(g));
}

TEST_CASE("identify diagonal") {
  // 1/(z0 z1 - 1) at z1 = z0: 1/(z0^2-1)
  FactoredRational g = over_atom(C(1), DenomAtom::prod(0, 1).first);
  FactoredRational d = g.identify(1, 0);
  FactoredRational expect(C(1));
  expect.mul_den_atom(DenomAtom::linear(0, Rational(1)));
  expect.mul_den_atom(DenomAtom::linear(0, Rational(-1)));
  CHECK(d.equals(expect));
  // 1/(z0+z1) at z1 = z0: 1/(2 z0)
  FactoredRational h = over_atom(C(1), DenomAtom::sum(0, 1).first);
  FactoredRational expect2 = over_atom(C(1, 2), DenomAtom::linear(0, Rational(0)));
  CHECK(h.identify(1, 0).equals(expect2));
}

TEST_CASE("invert factors over the atom set") {
  // (z^2-1)^2 * z -> 1/(...)
  Poly n = (Z() * Z() - C(1)) * (Z() * Z() - C(1)) * Z() * C(4);
  FactoredRational f(n);
  FactoredRational inv = f.invert();
  CHECK((f * inv).equals(FactoredRational(Rational(1))));
  // univariate rational root: (2z - 3)
  FactoredRational g(Z() * C(2) - C(3));
  CHECK((g * g.invert()).equals(FactoredRational(Rational(1))));
}

TEST_CASE("series: geometric") {
  // 1/(1-z) = -1/(z-1)
  FactoredRational f = over_atom(C(-1), DenomAtom::linear(0, Rational(1)));
  LocalSeries s = series_at(f, 0, Point::finite(0), 3);
  for (int k = 0; k <= 3; ++k) CHECK(s.coeff(k).equals(FactoredRational(Rational(1))));
}

TEST_CASE("series: pure pole") {
  FactoredRational f = over_atom(C(1), DenomAtom::linear(0, Rational(0)), 2);
  LocalSeries s = series_at(f, 0, Point::finite(0), 0);
  CHECK(s.lead == -2);
  CHECK(s.coeff(-2).equals(FactoredRational(Rational(1))));
  CHECK(s.coeff(-1).is_zero());
  CHECK(s.coeff(0).is_zero());
}

TEST_CASE("series at a finite nonzero point") {
  // (z^2+1)/(z(z^2-1)) about z=1: lead coefficient 1/(z-1)
  FactoredRational f(Z() * Z() + C(1));
  f.mul_den_atom(DenomAtom::linear(0, Rational(0)));
  f.mul_den_atom(DenomAtom::linear(0, Rational(1)));
  f.mul_den_atom(DenomAtom::linear(0, Rational(-1)));
  LocalSeries s = series_at(f, 0, Point::finite(1), 1);
  CHECK(s.lead == -1);
  CHECK(s.coeff(-1).equals(FactoredRational(Rational(1))));
  // oracle: shift z = 1+u by hand. f = ((1+u)^2+1)/((1+u)u(2+u)):
  // numerator 2+2u+u^2; denominator u(2+3u+u^2)
  // series: (2+2u+u^2)/(2+3u+u^2) = 1 - u/2 + ... so f = 1/u - 1/2 + ...
  CHECK(s.coeff(0).equals(FactoredRational(rat(-1, 2))));
}

TEST_CASE("residues: simple examples") {
  // dz/z at 0 -> 1
  FactoredRational f = over_atom(C(1), DenomAtom::linear(0, Rational(0)));
  CHECK(residue_at(f, 0, Point::finite(0)).equals(FactoredRational(Rational(1))));

  // (m/2)(1 + 2/z + 1/z^2)dz at 0 -> m, with m = 7/2
  Rational m = rat(7, 2);
  FactoredRational g = over_atom((Z() * Z() + Z() * C(2) + C(1)) * (m / 2),
                                 DenomAtom::linear(0, Rational(0)), 2);
  CHECK(residue_at(g, 0, Point::finite(0)).equals(FactoredRational(m)));
  // and at infinity -> -m (sum of all residues is zero; only poles 0, inf)
  CHECK(residue_at(g, 0, Point::infinity()).equals(FactoredRational(-m)));
}

TEST_CASE("residue at a parametric double pole") {
  // dz/((z w - 1)^2 z) at z = 1/w
  FactoredRational f(C(1));
  f.mul_den_atom(DenomAtom::prod(0, 1).first, 2);
  f.mul_den_atom(DenomAtom::linear(0, Rational(0)));
  FactoredRational r = residue_at(f, 0, Point::param_inv(1));
  // independent route: z = 1/w + u gives (1/w) u^{-2} - u^{-1} + O(1),
  // so the residue is -1; the global residue theorem confirms it:
  // residue at z=0 is 1 and at z=inf is 0.
  CHECK(r.equals(FactoredRational(Rational(-1))));
  FactoredRational r0 = residue_at(f, 0, Point::finite(0));
  CHECK(r0.equals(FactoredRational(Rational(1))));
  FactoredRational rinf = residue_at(f, 0, Point::infinity());
  CHECK((r + r0 + rinf).is_zero());
}

TEST_CASE("residues at negated and identified parametric points") {
  // 1/((z0+z1)^2 (z0 - 3)) dz0 at z0 = -z1
  FactoredRational f(C(1));
  f.mul_den_atom(DenomAtom::sum(0, 1).first, 2);
  f.mul_den_atom(DenomAtom::linear(0, Rational(3)));
  FactoredRational r = residue_at(f, 0, Point::param_neg(1));
  // d/dz0 [1/(z0-3)] at z0=-z1: -1/(z1+3)^2
  FactoredRational expect = over_atom(C(-1), DenomAtom::linear(1, Rational(-3)), 2);
  CHECK(r.equals(expect));
  // global: residue at z0=3 is 1/(3+z1)^2
  FactoredRational r3 = residue_at(f, 0, Point::finite(3));
  CHECK((r + r3).is_zero());

  // 1/((z0-z1) z0) dz0 at z0 = z1 -> 1/z1
  FactoredRational g(C(1));
  g.mul_den_atom(DenomAtom::diff(0, 1).first);
  g.mul_den_atom(DenomAtom::linear(0, Rational(0)));
  CHECK(residue_at(g, 0, Point::param_id(1))
            .equals(over_atom(C(1), DenomAtom::linear(1, Rational(0)))));
}

TEST_CASE("antiderivative basics") {
  // dz/z^2 -> -1/z with no log part
  FactoredRational f = over_atom(C(1), DenomAtom::linear(0, Rational(0)), 2);
  Antiderivative ad = antiderivative(f, 0);
  CHECK(ad.logs.empty());
  CHECK(ad.rational_part.equals(over_atom(C(-1), DenomAtom::linear(0, Rational(0)))));
  // dz/z -> log z
  FactoredRational g = over_atom(C(1), DenomAtom::linear(0, Rational(0)));
  Antiderivative ag = antiderivative(g, 0);
  CHECK(ag.rational_part.is_zero());
  REQUIRE(ag.logs.size() == 1);
  CHECK(ag.logs[0].first == DenomAtom::linear(0, Rational(0)));
  CHECK(ag.logs[0].second.equals(FactoredRational(Rational(1))));
}

TEST_CASE("antiderivative differentiates back") {
  std::mt19937 rng(12345);
  auto rnd = [&](int lo, int hi) { return int(rng() % (hi - lo + 1)) + lo; };
  for (int trial = 0; trial < 25; ++trial) {
    FactoredRational f;
    Poly n;
    for (int t = 0; t < 4; ++t)
      n.add_term(Mono::var(0, rnd(0, 4)) * Mono::var(1, rnd(0, 1)), rat(rnd(-5, 5)));
    if (n.is_zero()) continue;
    f = FactoredRational(n);
    Rational cs[3] = {Rational(0), Rational(1), Rational(-1)};
    for (int a = 0; a < 3; ++a)
      if (rnd(0, 1)) f.mul_den_atom(DenomAtom::linear(0, cs[a]), rnd(1, 3));
    if (rnd(0, 1)) f.mul_den_atom(DenomAtom::prod(0, 1).first, rnd(1, 2));
    Antiderivative ad = antiderivative(f, 0);
    FactoredRational back = ad.rational_part.derivative(0);
    for (auto& [atom, coef] : ad.logs) {
      CHECK_FALSE(coef.involves(0));
      FactoredRational t = coef * FactoredRational(atom.derivative(0));
      t.mul_den_atom(atom);
      back += t;
    }
    CHECK(back.equals(f));
  }
}

TEST_CASE("global residue theorem on random one-forms") {
  std::mt19937 rng(999);
  auto rnd = [&](int lo, int hi) { return int(rng() % (hi - lo + 1)) + lo; };
  for (int trial = 0; trial < 25; ++trial) {
    Poly n;
    for (int t = 0; t < 4; ++t) n.add_term(Mono::var(0, rnd(0, 3)), rat(rnd(-4, 4)));
    if (n.is_zero()) continue;
    FactoredRational f(n);
    std::vector<Rational> pts = {Rational(0), Rational(1), Rational(-1), Rational(2)};
    for (auto& c : pts)
      if (rnd(0, 1)) f.mul_den_atom(DenomAtom::linear(0, c), rnd(1, 2));
    FactoredRational total = residue_at(f, 0, Point::infinity());
    for (auto& c : pts) total += residue_at(f, 0, Point::finite(c));
    CHECK(total.is_zero());
  }
}

TEST_CASE("residue agrees with series coefficient") {
  std::mt19937 rng(777);
  auto rnd = [&](int lo, int hi) { return int(rng() % (hi - lo + 1)) + lo; };
  for (int trial = 0; trial < 20; ++trial) {
    Poly n;
    for (int t = 0; t < 3; ++t) n.add_term(Mono::var(0, rnd(0, 3)), rat(rnd(-4, 4)));
    if (n.is_zero()) continue;
    FactoredRational f(n);
    f.mul_den_atom(DenomAtom::linear(0, Rational(1)), rnd(1, 3));
    f.mul_den_atom(DenomAtom::linear(0, Rational(0)), rnd(1, 2));
    LocalSeries s = series_at(f, 0, Point::finite(1), 0);
    CHECK(residue_at(f, 0, Point::finite(1)).equals(s.coeff(-1)));
  }
}

TEST_CASE("limits at infinity") {
  // 1/(1+z) -> 0
  FactoredRational f = over_atom(C(1), DenomAtom::linear(0, Rational(-1)));
  CHECK(limit_at(f, 0, Point::infinity()).is_zero());
  // z/(z-1) -> 1
  FactoredRational g = over_atom(Z(), DenomAtom::linear(0, Rational(1)));
  CHECK(limit_at(g, 0, Point::infinity()).equals(FactoredRational(Rational(1))));
  // z^2/(z-1) diverges
  FactoredRational h = over_atom(Z() * Z(), DenomAtom::linear(0, Rational(1)));
  CHECK_THROWS_AS(limit_at(h, 0, Point::infinity()), PoleAtEndpoint);
}

TEST_CASE("scale all variables") {
  // 1/(z-1) under z -> 2z: 1/(2z-1) = (1/2)/(z-1/2)
  FactoredRational f = over_atom(C(1), DenomAtom::linear(0, Rational(1)));
  FactoredRational g = f.scale_all(rat(2));
  FactoredRational expect = over_atom(C(1, 2), DenomAtom::linear(0, rat(1, 2)));
  CHECK(g.equals(expect));
  CHECK(g.eval({rat(1)}) == f.eval({rat(2)}));
}

TEST_CASE("symbolic scalars") {
  SymbolicScalar L = SymbolicScalar::sym_L(), P = SymbolicScalar::sym_Pi();
  SymbolicScalar a = L * SymbolicScalar(rat(2)) + P - SymbolicScalar(rat(1, 3));
  SymbolicScalar b = a * a;
  CHECK(b.coeff(2, 0) == rat(4));
  CHECK(b.coeff(1, 1) == rat(4));
  CHECK(b.coeff(0, 0) == rat(1, 9));
  CHECK((a - a).is_zero());
  CHECK(a.has_L());
  CHECK(a.coeff_L(0).has_Pi());
}

TEST_CASE("hbar series ring laws") {
  std::mt19937 rng(4242);
  auto rnds = [&]() {
    SymbolicScalar s(rat(int(rng() % 9) - 4));
    if (rng() % 2) s += SymbolicScalar::sym_L() * rat(int(rng() % 5) - 2);
    return s;
  };
  auto rndser = [&]() {
    HbarSeries h(-1, 4);
    for (int k = -1; k <= 4; ++k) h.c[k + 1] = rnds();
    return h;
  };
  for (int t = 0; t < 10; ++t) {
    HbarSeries a = rndser(), b = rndser(), c = rndser();
    int ord = 2;  // common exact window
    CHECK((a * b).equals_through(b * a, ord));
    CHECK(((a * b) * c).equals_through(a * (b * c), ord));
    CHECK((a * (b + c)).equals_through(a * b + a * c, ord));
    // truncation commutes with multiplication
    CHECK((a.truncated(3) * b.truncated(3)).equals_through((a * b).truncated(2), 2));
  }
}

TEST_CASE("hbar shift: binomial case") {
  // A m^2 shifted by c: A(m0^2 - 2 c m0 h + c^2 h^2)
  Rational A = rat(3), c0 = rat(5, 2), m0 = rat(7);
  std::vector<ClosedTerm> F{{0, A, 2, 0}};
  HbarSeries s = hbar_compose_shift(F, c0, m0, 4);
  CHECK(s.coeff(0).rational_value() == A * m0 * m0);
  CHECK(s.coeff(1).rational_value() == -2 * A * c0 * m0);
  CHECK(s.coeff(2).rational_value() == A * c0 * c0);
  CHECK(s.coeff(3).is_zero());
  // c = 0: identity
  HbarSeries id = hbar_compose_shift(F, Rational(0), m0, 4);
  CHECK(id.coeff(0).rational_value() == A * m0 * m0);
  CHECK(id.coeff(1).is_zero());
}

TEST_CASE("hbar shift: log case against Taylor oracle") {
  // (1/2) m^2 log m shifted by c, orders checked against d^k/dm^k
  // of (1/2) m^2 log m evaluated at m0 times (-c)^k/k!.
  Rational c0 = rat(1, 3), m0 = rat(5);
  std::vector<ClosedTerm> F{{0, rat(1, 2), 2, 1}};
  HbarSeries s = hbar_compose_shift(F, c0, m0, 5);
  // derivatives of (1/2)m^2 log m: m log m + m/2; log m + 3/2; 1/m; -1/m^2; 2/m^3
  auto Lc = [&](const SymbolicScalar& v) { return v.coeff(1, 0); };
  auto Cc = [&](const SymbolicScalar& v) { return v.coeff(0, 0); };
  CHECK(Lc(s.coeff(0)) == m0 * m0 / 2);
  CHECK(Cc(s.coeff(0)) == 0);
  CHECK(Lc(s.coeff(1)) == -c0 * m0);
  CHECK(Cc(s.coeff(1)) == -c0 * m0 / 2);
  CHECK(Lc(s.coeff(2)) == c0 * c0 / 2);
  // order-2: f''(m0) c^2/2 = (L + 3/2) c^2/2
  CHECK(Cc(s.coeff(2)) == c0 * c0 / 2 * rat(3, 2));
  CHECK(Lc(s.coeff(3)) == 0);
  // k=3: f'''(m0) (-c)^3/6 = (1/m0)(-c^3)/6
  CHECK(Cc(s.coeff(3)) == -pow_rat(c0, 3) / (6 * m0));
  // k=4: f''''(m0)(-c)^4/24 = (-1/m0^2)(c^4)/24
  CHECK(Cc(s.coeff(4)) == -pow_rat(c0, 4) / (24 * m0 * m0));
}

TEST_CASE("hbar log helper") {
  // log(m0 + a h): order1 a/m0, order2 -a^2/(2 m0^2)
  Rational a = rat(2, 3), m0 = rat(4);
  HbarSeries s = hbar_log_shift(a, m0, 3);
  CHECK(s.coeff(0) == SymbolicScalar::sym_L());
  CHECK(s.coeff(1).rational_value() == a / m0);
  CHECK(s.coeff(2).rational_value() == -a * a / (2 * m0 * m0));
  CHECK(s.coeff(3).rational_value() == a * a * a / (3 * m0 * m0 * m0));
}
