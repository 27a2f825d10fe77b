#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "rtr/energies.hpp"

using namespace rtr;

namespace {

CurveParams std_params(CurveName n, Rational s = rat(2)) {
  CurveParams p;
  p.s = s;
  p.mass = (n == CurveName::Weber) ? rat(3) : rat(5);
  p.mu = rat(1, 3);
  p.nu_plus = rat(3, 5);
  return p;
}

}  // namespace

TEST_CASE("unstable closed forms") {
  // weber at unit mass: F_0 = (1/2) L - 3/4
  CurveParams p;
  p.s = rat(2);
  p.mass = rat(1);
  p.mu = rat(1, 3);
  p.nu_plus = rat(3, 5);
  auto web = build_curve(CurveName::Weber, p);
  auto f0 = free_energy_unstable(web, 0);
  CHECK(f0.log_coeff == rat(1, 2));
  CHECK(f0.value == rat(-3, 4));

  // weber at mu = 1: the refined correction to F_1 collapses to -(2-2Q^2)/24
  p.mu = rat(1);
  auto web1 = build_curve(CurveName::Weber, p);
  auto f1 = free_energy_unstable(web1, 2);
  Rational Q = web1.Q;
  CHECK(f1.log_coeff == -(2 - 2 * Q * Q) / 24);
  CHECK(f1.value == 0);

  // whittaker: F_{1/2} / (mu Q) = m L - m
  auto whi = build_curve(CurveName::Whittaker, std_params(CurveName::Whittaker));
  auto fh = free_energy_unstable(whi, 1);
  Rational muQ = whi.params.mu * whi.Q;
  CHECK(fh.log_coeff / muQ == whi.m);
  CHECK(fh.value / muQ == -whi.m);

  auto airy = build_curve(CurveName::Airy, std_params(CurveName::Airy));
  for (int g2 = 0; g2 <= 2; ++g2) {
    auto f = free_energy_unstable(airy, g2);
    CHECK(f.value == 0);
    CHECK(f.log_coeff == 0);
  }
  CHECK_THROWS_AS(free_energy_unstable(web, 3), std::invalid_argument);
}

TEST_CASE("path integrals recover mass derivatives of the unstable energies") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  OmegaTable t(web);
  Rational m0 = web.m, mu = web.params.mu, Q = web.Q;
  // third m-derivative of F_0 = (1/2) m^2 L - (3/4) m^2 is 1/m
  CHECK(alpha_integral(t, 0, 3) == 1 / m0);
  // second m-derivative of F_{1/2} = (1/2) mu Q m (L - 1) is mu Q/(2m)
  CHECK(alpha_integral(t, 1, 2) == mu * Q / (2 * m0));
  // first m-derivative of F_1 = -((2 + (1-3 mu^2) Q^2)/24) L
  CHECK(alpha_integral(t, 2, 1) == -(2 + (1 - 3 * mu * mu) * Q * Q) / (24 * m0));

  auto whi = build_curve(CurveName::Whittaker, std_params(CurveName::Whittaker));
  OmegaTable tw(whi);
  Rational mw = whi.m, Qw = whi.Q;
  CHECK(alpha_integral(tw, 0, 3) == 2 / mw);
  CHECK(alpha_integral(tw, 1, 2) == mu * Qw / mw);
  CHECK(alpha_integral(tw, 2, 1) == -(2 - (2 + 3 * mu * mu) * Qw * Qw) / (12 * mw));

  // the same F_1 seen through the two-slot entry: d^2 F_1/dm^2 = -c/m^2
  // when F_1 = c log m
  Rational c_web = free_energy_unstable(web, 2).log_coeff;
  CHECK(alpha_integral(t, 2, 2) == -c_web / (m0 * m0));
  Rational c_whi = free_energy_unstable(whi, 2).log_coeff;
  CHECK(alpha_integral(tw, 2, 2) == -c_whi / (mw * mw));

  CHECK_THROWS_AS(alpha_integral(t, 0, 2), UnstableRequest);
  auto airy = build_curve(CurveName::Airy, std_params(CurveName::Airy));
  OmegaTable ta(airy);
  CHECK_THROWS_AS(alpha_integral(ta, 0, 3), std::logic_error);
}

TEST_CASE("massless curves have vanishing stable energies") {
  for (auto name : {CurveName::Airy, CurveName::DegenerateBessel}) {
    auto c = build_curve(name, std_params(name));
    OmegaTable t(c);
    for (int g2 = 3; g2 <= 6; ++g2) {
      CAPTURE(curve_name_str(name));
      CAPTURE(g2);
      auto f = free_energy_stable(t, g2);
      CHECK(f.value == 0);
      CHECK(f.log_coeff == 0);
    }
  }
}

TEST_CASE("unrefined weber energy at genus two") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber, rat(1)));
  OmegaTable t(web);
  CHECK(free_energy_stable(t, 3).value == 0);
  CHECK(free_energy_stable(t, 4).value == rat(-1, 240) / (web.m * web.m));
  CHECK(free_energy_stable(t, 5).value == 0);
  CHECK_THROWS_AS(free_energy_stable(t, 2), UnstableRequest);
}

TEST_CASE("variational relation ties the path integral to the energy") {
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  OmegaTable t(web);
  CHECK(variational_check(t, 3));
  CHECK(variational_check(t, 4));
  auto whi = build_curve(CurveName::Whittaker, std_params(CurveName::Whittaker));
  OmegaTable tw(whi);
  CHECK(variational_check(tw, 3));
}

TEST_CASE("mass homogeneity by double evaluation") {
  // F_g scales as t^{2(2-2g)} in the weber uniformizing mass t
  CurveParams p2 = std_params(CurveName::Weber);
  p2.mass = rat(2);
  CurveParams p3 = std_params(CurveName::Weber);
  p3.mass = rat(3);
  OmegaTable t2(build_curve(CurveName::Weber, p2));
  OmegaTable t3(build_curve(CurveName::Weber, p3));
  for (int g2 : {3, 4}) {
    Rational f2 = free_energy_stable(t2, g2).value;
    Rational f3 = free_energy_stable(t3, g2).value;
    CHECK(f3 == f2 * pow_rat(rat(3, 2), 2 * (2 - g2)));
  }
}

TEST_CASE("energy is unchanged by the primitive's additive constant") {
  // shifting the primitive by a constant adds c * Res(omega_{g,1}), which
  // must vanish because the entry is residue-free
  auto web = build_curve(CurveName::Weber, std_params(CurveName::Weber));
  OmegaTable t(web);
  const FactoredRational& w = t.omega(3, 1);
  FactoredRational shift_part;
  for (auto& r : web.R_star) shift_part += residue_at(w * rat(17), 0, Point::finite(r));
  shift_part.normalize();
  CHECK(shift_part.is_zero());
}

TEST_CASE("energies agree under the inversion of the deformation parameter") {
  // s -> -1/s fixes Q, so every F_g is unchanged
  auto a = build_curve(CurveName::Weber, std_params(CurveName::Weber, rat(2)));
  auto b = build_curve(CurveName::Weber, std_params(CurveName::Weber, rat(-1, 2)));
  REQUIRE(a.Q == b.Q);
  OmegaTable ta(a), tb(b);
  for (int g2 : {3, 4, 5})
    CHECK(free_energy_stable(ta, g2).value == free_energy_stable(tb, g2).value);
}
