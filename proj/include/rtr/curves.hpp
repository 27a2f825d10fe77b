#ifndef RTR_CURVES_HPP
#define RTR_CURVES_HPP

#include <string>
#include <vector>

#include "rtr/series.hpp"

namespace rtr {

enum class CurveName { Weber, Whittaker, DegenerateBessel, Airy };

inline std::string curve_name_str(CurveName n) {
  switch (n) {
    case CurveName::Weber: return "weber";
    case CurveName::Whittaker: return "whittaker";
    case CurveName::DegenerateBessel: return "dbessel";
    case CurveName::Airy: return "airy";
  }
  return "?";
}

struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CurveParams {
  Rational s = 1;        // beta = s^2, Q = s - 1/s
  Rational mass = 1;     // t for Weber (m = t^2), m for Whittaker; unused otherwise
  Rational mu = 0;
  Rational nu_plus = 0;  // nu_minus = 1 - nu_plus; nu = nu_plus - nu_minus
};

// Labeled pole of ydx. The sign of the ydx-residue decides which label
// (+m at the plus point, -m at the minus point).
struct LabeledPole {
  Point loc;
  int sign = 0;  // +1 or -1
};

class CurveModel {
 public:
  CurveName name;
  CurveParams params;
  Rational Q;       // s - 1/s
  Rational m;       // t^2 (Weber), m (Whittaker), 0 otherwise
  Rational nu;      // nu_plus - nu_minus = 2 nu_plus - 1
  enum class Sigma { Inverse, Negate } sigma;
  std::vector<Rational> R_star;      // finite effective ramification points
  std::vector<Point> R;              // full ramification set
  std::vector<LabeledPole> poles;    // P, labeled by residue sign; empty for Airy/dBes
  bool has_mu_pole = false;          // P'_+ nonempty (the plus pole carries mu)

  // --- coordinate functions, all as bodies in variable v ---
  FactoredRational x_of(int v) const;
  FactoredRational y_of(int v) const;
  FactoredRational xprime(int v) const;
  FactoredRational ydx(int v) const;         // body of y dx
  FactoredRational kernel_inv(int v) const;  // 1/(2 y dx), exact factored form

  // sigma as a point map and as substitution on expressions
  Point sigma_point(const Point& p) const {
    switch (sigma) {
      case Sigma::Inverse:
        if (p.kind == Point::Finite && p.a == 0) return Point::infinity();
        if (p.kind == Point::Infinity) return Point::finite(0);
        if (p.kind == Point::Finite) return Point::finite(1 / p.a);
        if (p.kind == Point::ParamId) return Point::param_inv(p.j);
        if (p.kind == Point::ParamInv) return Point::param_id(p.j);
        break;
      case Sigma::Negate:
        if (p.kind == Point::Finite) return Point::finite(-p.a);
        if (p.kind == Point::Infinity) return Point::infinity();
        if (p.kind == Point::ParamId) return Point::param_neg(p.j);
        if (p.kind == Point::ParamNeg) return Point::param_id(p.j);
        break;
    }
    throw std::logic_error("sigma of unsupported point");
  }
  FactoredRational subst_sigma(const FactoredRational& f, int v) const {
    return sigma == Sigma::Inverse ? f.subst_inverse(v) : f.subst_negate(v);
  }

  // eta one-form body in v0, for a labeled pole or a parametric point z_j.
  // eta_p(v0) = 1/(v0 - z(p)) - 1/(v0 - z(sigma(p))), with 1/(v0 - inf) := 0.
  FactoredRational eta_at(int v0, const Point& p) const;

  const LabeledPole& pole_plus() const {
    for (auto& lp : poles)
      if (lp.sign == 1) return lp;
    throw std::logic_error("curve has no labeled poles");
  }
  const LabeledPole& pole_minus() const {
    for (auto& lp : poles)
      if (lp.sign == -1) return lp;
    throw std::logic_error("curve has no labeled poles");
  }

  // primitive of ydx: rational part plus logcoeff * log z
  struct Phi {
    FactoredRational rational_part;  // in v
    Rational log_coeff;              // coefficient of log z
  };
  Phi phi(int v) const;
};

inline FactoredRational CurveModel::x_of(int v) const {
  const Rational& t = params.mass;
  FactoredRational r;
  switch (name) {
    case CurveName::Weber:
      r = FactoredRational((Poly::variable(v, 2) + Poly(Rational(1))) * t);
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)));
      return r;
    case CurveName::Whittaker: {
      Poly zm1 = Poly::variable(v) - Poly(Rational(1));
      r = FactoredRational(zm1 * zm1 * t);
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)));
      return r;
    }
    case CurveName::Airy:
    case CurveName::DegenerateBessel:
      return FactoredRational(Poly::variable(v, 2));
  }
  throw std::logic_error("bad curve");
}

inline FactoredRational CurveModel::y_of(int v) const {
  const Rational& t = params.mass;
  FactoredRational r;
  switch (name) {
    case CurveName::Weber:
      r = FactoredRational((Poly::variable(v, 2) - Poly(Rational(1))) * (t / 2));
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)));
      return r;
    case CurveName::Whittaker:
      r = FactoredRational((Poly::variable(v) + Poly(Rational(1))) * rat(1, 2));
      r.mul_den_atom(DenomAtom::linear(v, Rational(1)));
      return r;
    case CurveName::Airy:
      return FactoredRational(Poly::variable(v));
    case CurveName::DegenerateBessel:
      r = FactoredRational(Poly(rat(1, 2)));
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)));
      return r;
  }
  throw std::logic_error("bad curve");
}

inline FactoredRational CurveModel::xprime(int v) const {
  const Rational& t = params.mass;
  FactoredRational r;
  switch (name) {
    case CurveName::Weber:
      r = FactoredRational((Poly::variable(v, 2) - Poly(Rational(1))) * t);
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)), 2);
      return r;
    case CurveName::Whittaker:
      r = FactoredRational((Poly::variable(v, 2) - Poly(Rational(1))) * t);
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)), 2);
      return r;
    case CurveName::Airy:
    case CurveName::DegenerateBessel:
      return FactoredRational(Poly::variable(v) * Rational(2));
  }
  throw std::logic_error("bad curve");
}

inline FactoredRational CurveModel::ydx(int v) const { return y_of(v) * xprime(v); }

inline FactoredRational CurveModel::kernel_inv(int v) const {
  const Rational& t = params.mass;
  FactoredRational r;
  switch (name) {
    case CurveName::Weber:
      // 1/(2 ydx) = z^3 / (t^2 (z-1)^2 (z+1)^2)
      r = FactoredRational(Poly::variable(v, 3) / (t * t));
      r.mul_den_atom(DenomAtom::linear(v, Rational(1)), 2);
      r.mul_den_atom(DenomAtom::linear(v, Rational(-1)), 2);
      return r;
    case CurveName::Whittaker:
      // ydx = m (z+1)^2/(2 z^2); inverse of twice that: z^2/(m (z+1)^2)
      r = FactoredRational(Poly::variable(v, 2) / t);
      r.mul_den_atom(DenomAtom::linear(v, Rational(-1)), 2);
      return r;
    case CurveName::Airy:
      // ydx = 2 z^2
      r = FactoredRational(Poly(rat(1, 4)));
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)), 2);
      return r;
    case CurveName::DegenerateBessel:
      // ydx = 1
      return FactoredRational(rat(1, 2));
  }
  throw std::logic_error("bad curve");
}

inline FactoredRational CurveModel::eta_at(int v0, const Point& p) const {
  auto inv_of = [&](const Point& q) -> FactoredRational {
    // 1/(v0 - q), with 1/(v0 - inf) := 0
    FactoredRational r(Rational(1));
    switch (q.kind) {
      case Point::Infinity:
        return FactoredRational();
      case Point::Finite:
        r.mul_den_atom(DenomAtom::linear(v0, q.a));
        return r;
      case Point::ParamId: {
        auto [at, s] = DenomAtom::diff(v0, q.j);
        r = FactoredRational(Rational(s));
        r.mul_den_atom(at);
        return r;
      }
      case Point::ParamNeg:
        r.mul_den_atom(DenomAtom::sum(v0, q.j).first);
        return r;
      case Point::ParamInv: {
        // 1/(v0 - 1/z_j) = z_j/(v0 z_j - 1)
        r = FactoredRational::variable(q.j);
        r.mul_den_atom(DenomAtom::prod(v0, q.j).first);
        return r;
      }
    }
    throw std::logic_error("bad point");
  };
  return inv_of(p) - inv_of(sigma_point(p));
}

inline CurveModel::Phi CurveModel::phi(int v) const {
  const Rational& t = params.mass;
  Phi p;
  switch (name) {
    case CurveName::Weber: {
      // ydx = (t^2/2)(z - 2/z + 1/z^3) dz
      FactoredRational r(Poly::variable(v, 4) * (t * t / 4) - Poly(t * t / 4));
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)), 2);
      p.rational_part = r;
      p.log_coeff = -t * t;
      return p;
    }
    case CurveName::Whittaker: {
      // ydx = (m/2)(1 + 2/z + 1/z^2) dz
      FactoredRational r(Poly::variable(v, 2) * (t / 2) - Poly(t / 2));
      r.mul_den_atom(DenomAtom::linear(v, Rational(0)));
      p.rational_part = r;
      p.log_coeff = t;
      return p;
    }
    case CurveName::Airy:
      p.rational_part = FactoredRational(Poly::variable(v, 3) * rat(2, 3));
      p.log_coeff = 0;
      return p;
    case CurveName::DegenerateBessel:
      p.rational_part = FactoredRational(Poly::variable(v));
      p.log_coeff = 0;
      return p;
  }
  throw std::logic_error("bad curve");
}

// Build and verify a curve model. Throws InvariantViolation if any of the
// construction-time identities fail.
inline CurveModel build_curve(CurveName name, const CurveParams& params) {
  if (params.s == 0) throw std::invalid_argument("s must be nonzero");
  bool massive = (name == CurveName::Weber || name == CurveName::Whittaker);
  if (massive && params.mass == 0) throw std::invalid_argument("mass must be nonzero");
  if (params.nu_plus + (1 - params.nu_plus) != 1)
    throw std::invalid_argument("nu labels must sum to 1");

  CurveModel c;
  c.name = name;
  c.params = params;
  c.Q = params.s - 1 / params.s;
  c.nu = 2 * params.nu_plus - 1;
  switch (name) {
    case CurveName::Weber:
      c.m = params.mass * params.mass;
      c.sigma = CurveModel::Sigma::Inverse;
      c.R_star = {Rational(1), Rational(-1)};
      c.R = {Point::finite(1), Point::finite(-1)};
      c.poles = {{Point::infinity(), +1}, {Point::finite(0), -1}};
      c.has_mu_pole = true;
      break;
    case CurveName::Whittaker:
      c.m = params.mass;
      c.sigma = CurveModel::Sigma::Inverse;
      c.R_star = {Rational(1), Rational(-1)};
      c.R = {Point::finite(1), Point::finite(-1)};
      c.poles = {{Point::finite(0), +1}, {Point::infinity(), -1}};
      c.has_mu_pole = true;
      break;
    case CurveName::Airy:
    case CurveName::DegenerateBessel:
      c.m = 0;
      c.sigma = CurveModel::Sigma::Negate;
      c.R_star = {Rational(0)};
      c.R = {Point::finite(0), Point::infinity()};
      c.poles = {};
      c.has_mu_pole = false;
      break;
  }

  int v = 0;
  FactoredRational x = c.x_of(v), y = c.y_of(v);

  // involution identities
  if (!c.subst_sigma(x, v).equals(x)) throw InvariantViolation("x not sigma-invariant");
  if (!c.subst_sigma(y, v).equals(-y)) throw InvariantViolation("y not sigma-anti-invariant");

  // x' consistency
  if (!x.derivative(v).equals(c.xprime(v))) throw InvariantViolation("x' mismatch");

  // kernel_inv is exactly 1/(2 ydx)
  if (!(c.kernel_inv(v) * c.ydx(v) * Rational(2)).equals(FactoredRational(Rational(1))))
    throw InvariantViolation("kernel inverse mismatch");

  // defining relation y^2 = Q0(x)
  {
    FactoredRational lhs = y * y;
    FactoredRational q0;
    switch (name) {
      case CurveName::Weber:
        q0 = x * x * rat(1, 4) - FactoredRational(Poly(c.m));
        break;
      case CurveName::Whittaker:
        q0 = FactoredRational(Poly(rat(1, 4))) + x.invert() * c.m;
        break;
      case CurveName::Airy:
        q0 = x;
        break;
      case CurveName::DegenerateBessel:
        q0 = x.invert() * rat(1, 4);
        break;
    }
    if (!lhs.equals(q0)) throw InvariantViolation("defining relation failed");
  }

  // labeled residues of ydx: Res at the plus pole is +m, at the minus -m
  for (auto& lp : c.poles) {
    FactoredRational res = residue_at(c.ydx(v), v, lp.loc);
    if (!res.equals(FactoredRational(lp.sign * c.m)))
      throw InvariantViolation("ydx residue does not match its label");
  }

  // phi is a primitive of ydx
  {
    auto p = c.phi(v);
    FactoredRational d = p.rational_part.derivative(v);
    if (p.log_coeff != 0) {
      FactoredRational lg(p.log_coeff);
      lg.mul_den_atom(DenomAtom::linear(v, Rational(0)));
      d += lg;
    }
    if (!d.equals(c.ydx(v))) throw InvariantViolation("phi primitive mismatch");
  }

  // eta anti-invariance at a parametric point: eta_{sigma(p)} = -eta_p
  {
    int j = 1;
    FactoredRational e = c.eta_at(v, Point::param_id(j));
    FactoredRational es = c.eta_at(v, c.sigma_point(Point::param_id(j)));
    if (!es.equals(-e)) throw InvariantViolation("eta not anti-invariant");
  }

  // eta vanishes at fixed points of sigma (finite ones)
  for (auto& r : c.R_star) {
    Point fp = Point::finite(r);
    Point im = c.sigma_point(fp);
    if (im.kind == Point::Finite && im.a == r) {
      if (!c.eta_at(v, fp).is_zero()) throw InvariantViolation("eta nonzero at a fixed point");
    }
  }

  return c;
}

}  // namespace rtr

#endif
