#include "rtr/wkb.hpp"

namespace rtr {

namespace {

Rational as_constant(const FactoredRational& f) {
  if (!f.den.empty() || !f.num.is_constant())
    throw std::logic_error("expected a constant scalar");
  return f.num.constant_value();
}

// ---- symbolic functions of the mass: Laurent polynomial plus log part ----

using MPoly = std::map<int, Rational>;  // power of m -> coefficient

struct MTerm {
  MPoly plain;
  MPoly logc;  // coefficient of log m, itself a Laurent polynomial in m

  bool is_zero() const {
    for (auto& [p, c] : plain)
      if (c != 0) return false;
    for (auto& [p, c] : logc)
      if (c != 0) return false;
    return true;
  }
};

void add_to(MPoly& a, const MPoly& b, const Rational& f) {
  for (auto& [p, c] : b) a[p] += c * f;
}

MTerm add(const MTerm& a, const MTerm& b, const Rational& f = 1) {
  MTerm r = a;
  add_to(r.plain, b.plain, f);
  add_to(r.logc, b.logc, f);
  return r;
}

MTerm deriv(const MTerm& t) {
  MTerm r;
  for (auto& [p, c] : t.plain)
    if (p != 0) r.plain[p - 1] += c * p;
  for (auto& [p, c] : t.logc) {
    if (p != 0) r.logc[p - 1] += c * p;
    r.plain[p - 1] += c;  // m^p log m differentiates into p m^{p-1} log m + m^{p-1}
  }
  return r;
}

Rational eval_plain(const MPoly& a, const Rational& m) {
  Rational r = 0;
  for (auto& [p, c] : a) r += c * pow_rat(m, p);
  return r;
}

bool logs_clear(const MTerm& t) {
  for (auto& [p, c] : t.logc)
    if (c != 0) return false;
  return true;
}

bool terms_equal(const MTerm& a, const MTerm& b) { return add(a, b, -1).is_zero(); }

// F_g as symbolic functions of the mass, index g2 = 0..Gmax. The closed
// unstable forms and the homogeneity of the stable entries pin the shape
// m^{2-g2} (c0 + cL log m).
std::vector<MTerm> symbolic_energies(OmegaTable& t, int Gmax) {
  const CurveModel& c = t.curve;
  std::vector<MTerm> F(size_t(Gmax) + 1);
  CurveParams unit = c.params;
  unit.mass = 1;
  CurveModel cu = build_curve(c.name, unit);
  for (int g2 = 0; g2 <= std::min(2, Gmax); ++g2) {
    FreeEnergyRecord r = free_energy_unstable(cu, g2);
    F[size_t(g2)].plain[2 - g2] = r.value;
    F[size_t(g2)].logc[2 - g2] = r.log_coeff;
  }
  for (int g2 = 3; g2 <= Gmax; ++g2) {
    Rational v = free_energy_stable(t, g2).value;
    F[size_t(g2)].plain[2 - g2] = v * pow_rat(c.m, g2 - 2);
  }
  return F;
}

// hbar-series with coefficients that are symbolic in the mass; index i
// holds the coefficient of hbar^(i-2).
using HSeries = std::vector<MTerm>;

// Expansion of F(m + a hbar) with F = sum_g hbar^{g2-2} F_g, through
// hbar^(size-3).
HSeries shift_expand(const std::vector<MTerm>& F, const Rational& a, int size) {
  HSeries out(static_cast<size_t>(size));
  for (int g2 = 0; g2 < int(F.size()); ++g2) {
    MTerm d = F[size_t(g2)];
    Rational fact = 1;
    Rational apow = 1;
    for (int j = 0; g2 - 2 + j <= int(out.size()) - 3; ++j) {
      if (j > 0) {
        d = deriv(d);
        fact *= j;
        apow *= a;
      }
      out[size_t(g2 + j)] = add(out[size_t(g2 + j)], d, apow / fact);
    }
  }
  return out;
}

// log(m + c hbar) - log m as an hbar-series (no hbar^0 log part).
MPoly log_shift_coeff(const Rational& c, int k) {
  MPoly r;
  r[-k] = pow_rat(c, k) * ((k % 2 == 0) ? rat(-1) : rat(1)) / k;
  return r;
}

std::vector<Rational> path_voros_at_nu(const CurveModel& c, const Rational& nu, int K) {
  QuantumCurve qc = quantum_curve(c, nu);
  TSeries ts = riccati(qc, c, K);
  return voros_path(t_odd(ts, c), c, K);
}

}  // namespace

QuantumCurve quantum_curve(const CurveModel& c) { return quantum_curve(c, c.nu); }

QuantumCurve quantum_curve(const CurveModel& c, const Rational& nu) {
  QuantumCurve qc;
  qc.nu = nu;
  const Rational& s = c.params.s;
  const Rational& mu = c.params.mu;
  FactoredRational x = c.x_of(0);
  switch (c.name) {
    case CurveName::Weber:
      qc.q0 = x * x * rat(1, 4) - FactoredRational(c.m);
      qc.q1 = FactoredRational((nu / s - c.Q * mu) / 2);
      break;
    case CurveName::Whittaker:
      qc.q0 = FactoredRational(rat(1, 4)) + x.invert() * c.m;
      qc.q1 = x.invert() * ((c.Q * mu - nu / s) / 2);
      qc.q2 = x.invert() * x.invert() * ((c.Q * c.Q - s * s) / 4);
      break;
    case CurveName::Airy:
      qc.q0 = x;
      break;
    case CurveName::DegenerateBessel:
      qc.q0 = x.invert() * rat(1, 4);
      break;
  }
  FactoredRational y = c.y_of(0);
  if (!qc.q0.equals(y * y))
    throw InvariantViolation("semiclassical coefficient must square to y");
  return qc;
}

TSeries riccati(const QuantumCurve& qc, const CurveModel& c, int K) {
  if (K < 1) throw std::invalid_argument("truncation must be at least 1");
  TSeries ts;
  ts.K = K;
  ts.entries.reserve(size_t(K) + 2);
  const Rational s2 = c.params.s * c.params.s;
  FactoredRational xpinv = c.xprime(0).invert();
  FactoredRational half_inv = (c.y_of(0) * (2 / c.params.s)).invert();
  ts.entries.push_back(c.y_of(0) * (1 / c.params.s));  // T_{-1}
  for (int j = 1; j <= K + 1; ++j) {
    // order-j matching: s^2 T_{j-2}' + s^2 sum_{i+k=j-2} T_i T_k = Q_j
    FactoredRational rhs;
    if (j == 1)
      rhs = qc.q1;
    else if (j == 2)
      rhs = qc.q2;
    rhs = rhs * (1 / s2);
    rhs -= ts.at(j - 2).derivative(0) * xpinv;
    for (int i = 0; i <= j - 2; ++i) rhs -= ts.at(i) * ts.at(j - 2 - i);
    FactoredRational tk = rhs * half_inv;
    tk.normalize();
    ts.entries.push_back(std::move(tk));
  }
  return ts;
}

TSeries t_odd(const TSeries& ts, const CurveModel& c) {
  TSeries odd;
  odd.K = ts.K;
  odd.entries.reserve(ts.entries.size());
  for (auto& e : ts.entries) {
    FactoredRational o = (e - c.subst_sigma(e, 0)) * rat(1, 2);
    o.normalize();
    if (!c.subst_sigma(o, 0).equals(-o))
      throw InvariantViolation("odd part must be anti-invariant");
    odd.entries.push_back(std::move(o));
  }
  return odd;
}

std::vector<Rational> voros_path(const TSeries& odd, const CurveModel& c, int K) {
  if (K < 1) throw std::invalid_argument("order must be at least 1");
  if (K > odd.K) throw std::invalid_argument("order exceeds the computed truncation");
  if (c.poles.empty()) throw std::logic_error("curve has no labeled poles to integrate between");
  std::vector<Rational> out;
  FactoredRational xp = c.xprime(0);
  for (int k = 1; k <= K; ++k) {
    FactoredRational form = odd.at(k) * xp;
    form.normalize();
    for (auto& [a, e] : form.den) {
      bool ok = a.kind == DenomAtom::Linear;
      if (ok) {
        ok = false;
        for (auto& r : c.R)
          if (r.kind == Point::Finite && r.a == a.c) ok = true;
      }
      if (!ok) throw NonvanishingResidue("pole away from the ramification locus");
    }
    Antiderivative ad = antiderivative(form, 0);
    for (auto& [a, cf] : ad.logs)
      if (!cf.is_zero())
        throw NonvanishingResidue("nonzero residue at order " + std::to_string(k));
    FactoredRational v = limit_at(ad.rational_part, 0, c.pole_plus().loc) -
                         limit_at(ad.rational_part, 0, c.pole_minus().loc);
    v.normalize();
    out.push_back(as_constant(v));
  }
  return out;
}

CycleLoop voros_cycle(const TSeries& odd, const CurveModel& c) {
  if (c.poles.empty()) throw std::logic_error("no loop on a curve without labeled poles");
  FactoredRational xp = c.xprime(0);
  Point pt = c.pole_minus().loc;
  auto res = [&](const FactoredRational& f) {
    return as_constant(residue_at(f * xp, 0, pt));
  };
  // orientation fixed by demanding the base one-form integrate to 2 Pi m
  Rational r0 = res(c.y_of(0));
  Rational orient = c.m / r0;
  if (orient != 1 && orient != -1) throw std::logic_error("base residue must be +-m");
  CycleLoop v;
  v.hbar_m1_pi = 2 * orient * res(odd.at(-1));
  v.hbar0_pi = 2 * orient * res(odd.at(0));
  for (int k = 1; k <= odd.K; ++k)
    if (res(odd.at(k)) != 0)
      throw NonvanishingResidue("loop coefficient fails to terminate at order " +
                                std::to_string(k));
  return v;
}

bool contiguity_check(const CurveModel& c, int K) {
  if (K < 1) throw std::invalid_argument("order must be at least 1");
  if (c.name != CurveName::Weber && c.name != CurveName::Whittaker)
    throw std::invalid_argument("contiguity needs the two labeled poles");
  const Rational& s = c.params.s;
  const Rational& mu = c.params.mu;
  int Ki = K + 2;
  std::vector<Rational> base = path_voros_at_nu(c, c.nu, Ki);
  std::vector<Rational> shifted;
  std::vector<Rational> cs;  // hbar-coefficients inside the log arguments
  Rational common = c.Q * mu / 2 - c.nu / (2 * s);
  if (c.name == CurveName::Weber) {
    shifted = path_voros_at_nu(c, c.nu + 2 * s * s, Ki);
    cs = {common - s / 2};
  } else {
    shifted = path_voros_at_nu(c, c.nu - 2 * s * s, Ki);
    cs = {common + s / 2 + c.Q / 2, common + s / 2 - c.Q / 2};
  }
  Rational sign = (c.name == CurveName::Weber) ? rat(-1) : rat(1);
  for (int k = 1; k <= K; ++k) {
    Rational lhs = shifted[size_t(k - 1)] - base[size_t(k - 1)];
    Rational rhs = 0;
    for (auto& cc : cs)
      rhs += pow_rat(cc / c.m, k) * ((k % 2 == 0) ? rat(-1) : rat(1)) / k;
    if (lhs != sign * rhs) return false;
  }
  return true;
}

bool difference_relation_check(OmegaTable& t, int K) {
  if (K < 1) throw std::invalid_argument("order must be at least 1");
  const CurveModel& c = t.curve;
  const Rational& s = c.params.s;
  int size = K + 3;  // orders hbar^{-2} .. hbar^{K}
  std::vector<MTerm> F = symbolic_energies(t, K + 1);
  HSeries rhs = shift_expand(F, -(c.nu - 1) / (2 * s), size);
  HSeries neg = shift_expand(F, -(c.nu + 1) / (2 * s), size);
  for (size_t i = 0; i < rhs.size(); ++i) rhs[i] = add(rhs[i], neg[i], -1);
  // explicit low-order subtractions
  MTerm d1 = deriv(F[0]);
  MTerm d2 = deriv(d1);
  rhs[1] = add(rhs[1], d1, -1 / s);                       // hbar^{-1}
  rhs[2] = add(rhs[2], d2, c.nu / (2 * s * s));           // hbar^0
  if (F.size() > 1) rhs[2] = add(rhs[2], deriv(F[1]), -1 / s);
  if (!rhs[0].is_zero() || !rhs[1].is_zero() || !rhs[2].is_zero()) return false;
  std::vector<Rational> V = path_voros_at_nu(c, c.nu, K + 2);
  for (int k = 1; k <= K; ++k) {
    const MTerm& coeff = rhs[size_t(k + 2)];
    if (!logs_clear(coeff)) return false;
    if (eval_plain(coeff.plain, c.m) != V[size_t(k - 1)]) return false;
  }
  return true;
}

bool f_difference_equation_check(OmegaTable& t, int K) {
  if (K < 0) throw std::invalid_argument("order must be nonnegative");
  const CurveModel& c = t.curve;
  const Rational& s = c.params.s;
  if (c.name != CurveName::Weber && c.name != CurveName::Whittaker)
    throw std::invalid_argument("the difference equation needs a mass parameter");
  int size = K + 3;
  std::vector<MTerm> F = symbolic_energies(t, K);
  Rational Qh = c.Q / 2;           // (e1 + e2)/2 per hbar
  Rational Ph = (s + 1 / s) / 2;   // (e1 - e2)/2 per hbar
  HSeries lhs(static_cast<size_t>(size));
  const std::pair<Rational, int> shifts[4] = {{-Qh, -1}, {-Ph, 1}, {Ph, 1}, {Qh, -1}};
  for (auto& [a, sgn] : shifts) {
    HSeries part = shift_expand(F, a, size);
    for (size_t i = 0; i < lhs.size(); ++i) lhs[i] = add(lhs[i], part[i], sgn);
  }
  std::vector<Rational> cs;
  if (c.name == CurveName::Weber)
    cs = {c.params.mu * c.Q / 2};
  else
    cs = {c.params.mu * c.Q / 2 + c.Q / 2, c.params.mu * c.Q / 2 - c.Q / 2};
  for (int k = 0; k <= K; ++k) {
    MTerm expect;
    if (k == 0) {
      expect.logc[0] = Rational(long(cs.size()));
    } else {
      for (auto& cc : cs) add_to(expect.plain, log_shift_coeff(cc, k), 1);
    }
    if (!terms_equal(lhs[size_t(k + 2)], expect)) return false;
  }
  return true;
}

}  // namespace rtr
