#include "rtr/energies.hpp"

namespace rtr {

namespace {

Rational as_constant(const FactoredRational& f) {
  if (!f.den.empty() || !f.num.is_constant())
    throw std::logic_error("expected a constant scalar");
  return f.num.constant_value();
}

}  // namespace

FreeEnergyRecord free_energy_stable(OmegaTable& t, int g2) {
  if (g2 < 3) throw UnstableRequest("stable free energy needs 2g >= 3");
  const FactoredRational& w = t.omega(g2, 1);
  auto phi = t.curve.phi(0);
  FactoredRational integrand = phi.rational_part * w;
  integrand.normalize();
  FactoredRational acc;
  for (auto& r : t.curve.R_star) {
    Point pt = Point::finite(r);
    acc += residue_at(integrand, 0, pt);
    if (phi.log_coeff != 0) acc += residue_log_times(w, 0, pt) * phi.log_coeff;
  }
  acc.normalize();
  FreeEnergyRecord out;
  out.g2 = g2;
  out.provenance = FreeEnergyRecord::Provenance::Recursion;
  out.value = as_constant(acc) / (2 - g2);
  out.log_coeff = 0;
  return out;
}

FreeEnergyRecord free_energy_unstable(const CurveModel& c, int g2) {
  if (g2 < 0 || g2 > 2) throw std::invalid_argument("unstable range is 2g in {0,1,2}");
  FreeEnergyRecord out;
  out.g2 = g2;
  out.provenance = FreeEnergyRecord::Provenance::ClosedForm;
  const Rational& m = c.m;
  const Rational& mu = c.params.mu;
  const Rational& Q = c.Q;
  switch (c.name) {
    case CurveName::Airy:
    case CurveName::DegenerateBessel:
      return out;
    case CurveName::Weber:
      if (g2 == 0) {
        out.log_coeff = m * m / 2;
        out.value = -m * m * rat(3, 4);
      } else if (g2 == 1) {
        out.log_coeff = mu * Q * m / 2;
        out.value = -mu * Q * m / 2;
      } else {
        out.log_coeff = -(2 + (1 - 3 * mu * mu) * Q * Q) / 24;
      }
      return out;
    case CurveName::Whittaker:
      if (g2 == 0) {
        out.log_coeff = m * m;
        out.value = -m * m * rat(3, 2);
      } else if (g2 == 1) {
        out.log_coeff = mu * Q * m;
        out.value = -mu * Q * m;
      } else {
        // fixed by the second m-derivative of the genus-one part of the
        // four-term difference equation for F
        out.log_coeff = -(2 - (2 + 3 * mu * mu) * Q * Q) / 12;
      }
      return out;
  }
  throw std::logic_error("bad curve");
}

Rational alpha_integral(OmegaTable& t, int g2, int n) {
  if (g2 + n < 3) throw UnstableRequest("path integral needs 2g + n - 2 >= 1");
  if (t.curve.poles.empty())
    throw std::logic_error("curve has no labeled poles to integrate between");
  Point upper = t.curve.pole_plus().loc;
  Point lower = t.curve.pole_minus().loc;
  FactoredRational f = t.omega(g2, n);
  for (int v = n - 1; v >= 0; --v) {
    Antiderivative ad = antiderivative(f, v);
    for (auto& [a, cf] : ad.logs)
      if (!cf.is_zero())
        throw UnexpectedLogPart("nonzero residue met while integrating slot " +
                                std::to_string(v));
    f = limit_at(ad.rational_part, v, upper) - limit_at(ad.rational_part, v, lower);
    f.normalize();
  }
  return as_constant(f);
}

bool variational_check(OmegaTable& t, int g2) {
  if (g2 < 3) return false;
  FreeEnergyRecord fg = free_energy_stable(t, g2);
  if (fg.log_coeff != 0) return false;
  return alpha_integral(t, g2, 1) == Rational(2 - g2) * fg.value / t.curve.m;
}

}  // namespace rtr
