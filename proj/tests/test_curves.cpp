#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rtr/curves.hpp"

using namespace rtr;

namespace {
CurveParams std_params(CurveName n) {
  CurveParams p;
  p.s = rat(2);
  p.mass = (n == CurveName::Weber) ? rat(3) : rat(5);
  p.mu = rat(1, 3);
  p.nu_plus = rat(3, 5);
  return p;
}
}  // namespace

TEST_CASE("all four curves build and pass construction invariants") {
  for (auto n : {CurveName::Weber, CurveName::Whittaker, CurveName::Airy,
                 CurveName::DegenerateBessel}) {
    CHECK_NOTHROW(build_curve(n, std_params(n)));
  }
  // Weber with unit mass: the defining relation check runs at build time
  CurveParams p;
  p.s = rat(3, 2);
  p.mass = rat(1);
  CHECK_NOTHROW(build_curve(CurveName::Weber, p));
}

TEST_CASE("parameter validation") {
  CurveParams p = std_params(CurveName::Weber);
  p.s = 0;
  CHECK_THROWS_AS(build_curve(CurveName::Weber, p), std::invalid_argument);
  p = std_params(CurveName::Whittaker);
  p.mass = 0;
  CHECK_THROWS_AS(build_curve(CurveName::Whittaker, p), std::invalid_argument);
}

TEST_CASE("pole labels follow the residue sign") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  CHECK(web.pole_plus().loc.kind == Point::Infinity);
  CHECK(web.pole_minus().loc.kind == Point::Finite);
  CHECK(web.pole_minus().loc.a == 0);

  auto whi = build_curve(CurveName::Whittaker, std_params(CurveName::Whittaker));
  CHECK(whi.pole_plus().loc.kind == Point::Finite);
  CHECK(whi.pole_plus().loc.a == 0);
  CHECK(whi.pole_minus().loc.kind == Point::Infinity);

  // residues at the two labeled poles cancel
  for (auto* c : {&web, &whi}) {
    FactoredRational rp = residue_at(c->ydx(0), 0, c->pole_plus().loc);
    FactoredRational rm = residue_at(c->ydx(0), 0, c->pole_minus().loc);
    CHECK((rp + rm).is_zero());
    CHECK(rp.equals(FactoredRational(c->m)));
  }
}

TEST_CASE("eta kernels") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  // at the plus pole (z=inf, sigma -> 0): -dz0/z0
  FactoredRational e = web.eta_at(0, web.pole_plus().loc);
  FactoredRational expect(Rational(-1));
  expect.mul_den_atom(DenomAtom::linear(0, Rational(0)));
  CHECK(e.equals(expect));

  // generic finite point a: 1/(z0-a) - 1/(z0-1/a)
  Rational a = rat(3);
  FactoredRational g = web.eta_at(0, Point::finite(a));
  FactoredRational want(Rational(1));
  want.mul_den_atom(DenomAtom::linear(0, a));
  FactoredRational second(Rational(1));
  second.mul_den_atom(DenomAtom::linear(0, 1 / a));
  want -= second;
  CHECK(g.equals(want));

  // fixed points of sigma: eta vanishes
  CHECK(web.eta_at(0, Point::finite(1)).is_zero());
  CHECK(web.eta_at(0, Point::finite(-1)).is_zero());

  auto airy = build_curve(CurveName::Airy, std_params(CurveName::Airy));
  CHECK(airy.eta_at(0, Point::finite(0)).is_zero());
  // parametric eta for sigma = -z: 1/(z0-z1) - 1/(z0+z1)
  FactoredRational pe = airy.eta_at(0, Point::param_id(1));
  FactoredRational w1(Rational(1));
  w1.mul_den_atom(DenomAtom::diff(0, 1).first);
  FactoredRational w2(Rational(1));
  w2.mul_den_atom(DenomAtom::sum(0, 1).first);
  CHECK(pe.equals(w1 - w2));
}

TEST_CASE("phi primitives") {
  auto airy = build_curve(CurveName::Airy, std_params(CurveName::Airy));
  auto p = airy.phi(0);
  CHECK(p.log_coeff == 0);
  CHECK(p.rational_part.equals(FactoredRational(Poly::variable(0, 3) * rat(2, 3))));

  auto dbes = build_curve(CurveName::DegenerateBessel, std_params(CurveName::DegenerateBessel));
  auto pd = dbes.phi(0);
  CHECK(pd.log_coeff == 0);
  CHECK(pd.rational_part.equals(FactoredRational(Poly::variable(0))));
  CHECK(dbes.ydx(0).equals(FactoredRational(Rational(1))));

  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  CHECK(web.phi(0).log_coeff == -web.m);
  auto whi = build_curve(CurveName::Whittaker, std_params(CurveName::Whittaker));
  CHECK(whi.phi(0).log_coeff == whi.m);
}

TEST_CASE("sigma point map") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  CHECK(web.sigma_point(Point::finite(2)).a == rat(1, 2));
  CHECK(web.sigma_point(Point::finite(0)).kind == Point::Infinity);
  CHECK(web.sigma_point(Point::infinity()).a == 0);
  CHECK(web.sigma_point(Point::param_id(3)).kind == Point::ParamInv);

  auto airy = build_curve(CurveName::Airy, std_params(CurveName::Airy));
  CHECK(airy.sigma_point(Point::finite(2)).a == -2);
  CHECK(airy.sigma_point(Point::infinity()).kind == Point::Infinity);
  CHECK(airy.sigma_point(Point::param_id(3)).kind == Point::ParamNeg);
}

TEST_CASE("derived parameters") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  CHECK(web.m == 9);
  CHECK(web.Q == rat(3, 2));
  CHECK(web.nu == rat(1, 5));
  auto whi = build_curve(CurveName::Whittaker, std_params(CurveName::Whittaker));
  CHECK(whi.m == 5);
}
