#ifndef RTR_SERIES_HPP
#define RTR_SERIES_HPP

#include <optional>
#include <vector>

#include "rtr/fraction.hpp"

namespace rtr {

// Expansion point for a local Laurent series in one variable. Besides
// finite rational points and infinity, a point may be parametric: the
// value 1/z_j, -z_j, or z_j itself, with z_j another live variable. These
// arise when expanding kernels at images of a marked point under the
// deck transformation.
struct Point {
  enum Kind { Finite, Infinity, ParamInv, ParamNeg, ParamId } kind = Finite;
  Rational a;  // Finite only
  int j = -1;  // Param* only

  static Point finite(const Rational& a) { return {Finite, a, -1}; }
  static Point infinity() { return {Infinity, 0, -1}; }
  static Point param_inv(int j) { return {ParamInv, 0, j}; }
  static Point param_neg(int j) { return {ParamNeg, 0, j}; }
  static Point param_id(int j) { return {ParamId, 0, j}; }

  std::string str() const {
    switch (kind) {
      case Finite: return a.str();
      case Infinity: return "inf";
      case ParamInv: return "1/z" + std::to_string(j + 1);
      case ParamNeg: return "-z" + std::to_string(j + 1);
      case ParamId: return "z" + std::to_string(j + 1);
    }
    return "?";
  }
};

// Laurent series sum_{k=lead}^{hi} C*raw[k-lead] u^k, exact through u^hi.
// The common prefactor C stays unexpanded so that extracting a single
// coefficient pays for only one product and normalization.
struct LocalSeries {
  int lead = 0;
  int hi = -1;  // highest exact order; empty if hi < lead
  FactoredRational C{Rational(1)};
  std::vector<FactoredRational> raw;

  bool coeff_is_zero(int k) const {
    if (k > hi) throw std::logic_error("series coefficient beyond truncation");
    if (k < lead || k - lead >= int(raw.size())) return true;
    return raw[k - lead].is_zero();  // C is a nonvanishing factored unit
  }
  FactoredRational coeff(int k) const {
    if (k > hi) throw std::logic_error("series coefficient beyond truncation");
    if (k < lead || k - lead >= int(raw.size())) return FactoredRational();
    FactoredRational v = C * raw[k - lead];
    v.normalize();
    return v;
  }
  void trim() {
    while (!raw.empty() && raw.front().is_zero()) {
      raw.erase(raw.begin());
      ++lead;
    }
  }
};

struct PoleAtEndpoint : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace detail {

// Local data of one denominator atom at an expansion point: the atom,
// restricted to var = point + u, equals b + c_l * u with c_l constant in
// var. When b == 0 the atom contributes a pure power of u; otherwise the
// factor 1/(b + c_l u)^e expands geometrically.
struct AtomLocal {
  bool zero_b = false;
  FactoredRational b_inv;  // 1/b when b != 0
  FactoredRational c_l;    // linear coefficient
};

inline FactoredRational frac_const(const Rational& q) { return FactoredRational(q); }
inline FactoredRational frac_var(int v) { return FactoredRational::variable(v); }
inline FactoredRational frac_inv_var(int v) {
  FactoredRational r(Rational(1));
  r.mul_den_atom(DenomAtom::linear(v, Rational(0)));
  return r;
}
inline FactoredRational frac_inv_linear(int v, const Rational& c) {
  FactoredRational r(Rational(1));
  r.mul_den_atom(DenomAtom::linear(v, c));
  return r;
}

inline AtomLocal atom_local(const DenomAtom& a, int var, const Point& pt) {
  AtomLocal r;
  switch (pt.kind) {
    case Point::Finite: {
      const Rational& p = pt.a;
      switch (a.kind) {
        case DenomAtom::Linear:
          r.c_l = frac_const(1);
          if (p == a.c)
            r.zero_b = true;
          else
            r.b_inv = frac_const(Rational(1) / (p - a.c));
          return r;
        case DenomAtom::ProdMinusOne: {
          int w = a.other(var);
          r.c_l = frac_var(w);
          if (p == 0) {
            r.b_inv = frac_const(-1);
          } else {
            // p*w - 1 = p*(w - 1/p)
            r.b_inv = frac_inv_linear(w, 1 / p) * (1 / p);
          }
          return r;
        }
        case DenomAtom::Sum: {
          int w = a.other(var);
          r.c_l = frac_const(1);
          r.b_inv = frac_inv_linear(w, -p);  // 1/(w + p)
          return r;
        }
        case DenomAtom::Diff: {
          int w = a.other(var);
          r.c_l = frac_const(var == a.v ? 1 : -1);
          // b = +-(p - w)
          r.b_inv = frac_inv_linear(w, p) * Rational(var == a.v ? -1 : 1);
          return r;
        }
      }
      break;
    }
    case Point::ParamInv: {
      int j = pt.j;
      switch (a.kind) {
        case DenomAtom::Linear:
          r.c_l = frac_const(1);
          if (a.c == 0) {
            r.b_inv = frac_var(j);  // b = 1/z_j
          } else {
            // 1/z_j - c = -c (z_j - 1/c) / z_j
            r.b_inv = frac_inv_linear(j, 1 / a.c) * frac_var(j) * (Rational(-1) / a.c);
          }
          return r;
        case DenomAtom::ProdMinusOne: {
          int w = a.other(var);
          r.c_l = frac_var(w);
          if (w == j) {
            r.zero_b = true;
          } else {
            // z_w/z_j - 1 = (z_w - z_j)/z_j
            auto [at, s] = DenomAtom::diff(w, j);
            FactoredRational b_inv = frac_var(j) * Rational(s);
            b_inv.mul_den_atom(at);
            r.b_inv = b_inv;
          }
          return r;
        }
        case DenomAtom::Diff: {
          int w = a.other(var);
          r.c_l = frac_const(var == a.v ? 1 : -1);
          // b = +-(1/z_j - z_w) = -+(z_w z_j - 1)/z_j
          Rational sgn = (var == a.v) ? -1 : 1;
          if (w == j) {
            // (1 - z_j^2)/z_j up to sign: factor (z_j-1)(z_j+1)
            FactoredRational b_inv = frac_var(j) * sgn;
            b_inv.mul_den_atom(DenomAtom::linear(j, Rational(1)));
            b_inv.mul_den_atom(DenomAtom::linear(j, Rational(-1)));
            r.b_inv = b_inv;
          } else {
            FactoredRational b_inv = frac_var(j) * sgn;
            b_inv.mul_den_atom(DenomAtom::prod(w, j).first);
            r.b_inv = b_inv;
          }
          return r;
        }
        case DenomAtom::Sum:
          throw std::domain_error("v+w atom at a reciprocal point");
      }
      break;
    }
    case Point::ParamNeg: {
      int j = pt.j;
      switch (a.kind) {
        case DenomAtom::Linear:
          r.c_l = frac_const(1);
          // b = -z_j - c = -(z_j + c)
          r.b_inv = frac_inv_linear(j, -a.c) * Rational(-1);
          return r;
        case DenomAtom::Sum: {
          int w = a.other(var);
          r.c_l = frac_const(1);
          if (w == j) {
            r.zero_b = true;
          } else {
            // z_w - z_j
            auto [at, s] = DenomAtom::diff(w, j);
            FactoredRational b_inv = frac_const(Rational(s));
            b_inv.mul_den_atom(at);
            r.b_inv = b_inv;
          }
          return r;
        }
        case DenomAtom::Diff: {
          int w = a.other(var);
          r.c_l = frac_const(var == a.v ? 1 : -1);
          // b = +-(-z_j - w) = -+(z_j + z_w)
          Rational sgn = (var == a.v) ? -1 : 1;
          FactoredRational b_inv;
          if (w == j) {
            b_inv = frac_inv_var(j) * (sgn / 2);
          } else {
            b_inv = frac_const(sgn);
            b_inv.mul_den_atom(DenomAtom::sum(j, w).first);
          }
          r.b_inv = b_inv;
          return r;
        }
        case DenomAtom::ProdMinusOne:
          throw std::domain_error("v*w-1 atom at a negated point");
      }
      break;
    }
    case Point::ParamId: {
      int j = pt.j;
      switch (a.kind) {
        case DenomAtom::Linear:
          r.c_l = frac_const(1);
          r.b_inv = frac_inv_linear(j, a.c);
          return r;
        case DenomAtom::ProdMinusOne: {
          int w = a.other(var);
          r.c_l = frac_var(w);
          FactoredRational b_inv = frac_const(1);
          if (w == j) {
            b_inv.mul_den_atom(DenomAtom::linear(j, Rational(1)));
            b_inv.mul_den_atom(DenomAtom::linear(j, Rational(-1)));
          } else {
            b_inv.mul_den_atom(DenomAtom::prod(j, w).first);
          }
          r.b_inv = b_inv;
          return r;
        }
        case DenomAtom::Sum: {
          int w = a.other(var);
          r.c_l = frac_const(1);
          FactoredRational b_inv;
          if (w == j) {
            b_inv = frac_inv_var(j) * Rational(1, 2);
          } else {
            b_inv = frac_const(1);
            b_inv.mul_den_atom(DenomAtom::sum(j, w).first);
          }
          r.b_inv = b_inv;
          return r;
        }
        case DenomAtom::Diff: {
          int w = a.other(var);
          r.c_l = frac_const(var == a.v ? 1 : -1);
          if (w == j) {
            r.zero_b = true;
          } else {
            auto [at, s] = DenomAtom::diff(j, w);
            Rational sgn = Rational(s) * (var == a.v ? 1 : -1);
            FactoredRational b_inv = frac_const(sgn);
            b_inv.mul_den_atom(at);
            r.b_inv = b_inv;
          }
          return r;
        }
      }
      break;
    }
    case Point::Infinity:
      throw std::logic_error("infinity handled by substitution");
  }
  throw std::logic_error("bad atom/point combination");
}

// r^m as a FactoredRational, where r is the parametric value of the point.
inline FactoredRational param_power(const Point& pt, int m) {
  switch (pt.kind) {
    case Point::ParamId:
      return FactoredRational(Poly::variable(pt.j, m));
    case Point::ParamNeg:
      return FactoredRational(Poly::variable(pt.j, m) * Rational(m % 2 ? -1 : 1));
    case Point::ParamInv: {
      FactoredRational r(Rational(1));
      if (m > 0) r.mul_den_atom(DenomAtom::linear(pt.j, Rational(0)), m);
      return r;
    }
    default:
      throw std::logic_error("not a parametric point");
  }
}

}  // namespace detail

// Laurent expansion of f in `var` about `point`, exact through u^hi where
// u is the local coordinate (var - a, var - 1/z_j, etc.; at infinity the
// coordinate is w = 1/var and no measure factor is applied here).
inline LocalSeries series_at(const FactoredRational& f, int var, const Point& pt, int hi) {
  if (f.is_zero()) { LocalSeries s0; s0.hi = hi; return s0; }
  if (pt.kind == Point::Infinity) return series_at(f.subst_inverse(var), var, Point::finite(0), hi);

  // Pull the pure u^{-E} part out of the denominator, collect constant
  // prefactor C and the unit factors to expand.
  int E = 0;
  FactoredRational C(Rational(1));
  std::vector<std::pair<int, FactoredRational>> units;  // (power e, t) for (1+t u)^{-e}
  for (auto& [a, p] : f.den) {
    if (!a.involves(var)) {
      FactoredRational d(Rational(1));
      d.mul_den_atom(a, p);
      C *= d;
      continue;
    }
    auto loc = detail::atom_local(a, var, pt);
    if (loc.zero_b) {
      E += p;
      // (c_l u)^{-p}: c_l is a constant or a bare variable, so invertible
      FactoredRational ci = loc.c_l.invert();
      for (int i = 0; i < p; ++i) C *= ci;
    } else {
      FactoredRational acc(Rational(1));
      for (int i = 0; i < p; ++i) acc *= loc.b_inv;
      C *= acc;
      units.push_back({p, loc.c_l * loc.b_inv});
    }
  }

  int need = hi + E;  // expand the unit-part product through u^need
  if (need < 0) { LocalSeries s0; s0.hi = hi; return s0; }

  // numerator as a u-series (exact; finite)
  std::vector<FactoredRational> numser;
  if (pt.kind == Point::Finite) {
    Poly shifted = f.num.shift_var(var, pt.a, var);
    int d = shifted.degree(var);
    numser.resize(d + 1);
    for (int k = 0; k <= d; ++k) numser[k] = FactoredRational(shifted.coeff_of(var, k));
  } else {
    int d = f.num.degree(var);
    numser.resize(d + 1);
    for (auto& [m, cc] : f.num.terms) {
      int p = m.exp(var);
      Poly rest = Poly::term(cc, m.with_exp(var, 0));
      for (int k = 0; k <= p; ++k) {
        FactoredRational t = detail::param_power(pt, p - k) * FactoredRational(rest) * binomial(p, k);
        numser[k] += t;
      }
    }
  }

  // accumulate product series
  std::vector<FactoredRational> acc(numser.begin(),
                                    numser.begin() + std::min<size_t>(numser.size(), need + 1));
  acc.resize(need + 1);
  for (auto& [e, t] : units) {
    // (1 + t u)^{-e} = sum_k binom(-e,k) t^k u^k
    std::vector<FactoredRational> g(need + 1);
    FactoredRational tk(Rational(1));
    for (int k = 0; k <= need; ++k) {
      g[k] = tk * binomial(-e, k);
      tk *= t;
    }
    std::vector<FactoredRational> out(need + 1);
    for (int i = 0; i <= need; ++i) {
      if (acc[i].is_zero()) continue;
      for (int k = 0; i + k <= need; ++k) {
        if (g[k].is_zero()) continue;
        out[i + k] += acc[i] * g[k];
      }
    }
    acc = std::move(out);
  }

  LocalSeries s;
  s.lead = -E;
  s.hi = hi;
  s.C = std::move(C);
  s.raw = std::move(acc);
  s.trim();
  if (int(s.raw.size()) > s.hi - s.lead + 1) s.raw.resize(s.hi - s.lead + 1);
  return s;
}

// Residue of the one-form f(var) d(var) at the point. At infinity the
// local coordinate is w = 1/var with d(var) = -dw/w^2.
inline FactoredRational residue_at(const FactoredRational& f, int var, const Point& pt) {
  if (pt.kind == Point::Infinity) {
    FactoredRational g = f.subst_inverse(var);
    LocalSeries s = series_at(g, var, Point::finite(0), 1);
    return -s.coeff(1);
  }
  LocalSeries s = series_at(f, var, pt, -1);
  return s.coeff(-1);
}

// Antiderivative of f d(var) in var: a rational part plus log terms
// sum coeff * log(atom). Computed by peeling principal parts at every
// var-pole of f.
struct Antiderivative {
  FactoredRational rational_part;
  std::vector<std::pair<DenomAtom, FactoredRational>> logs;
};

inline Antiderivative antiderivative(const FactoredRational& f0, int var) {
  FactoredRational f = f0;
  f.normalize();
  Antiderivative out;
  FactoredRational remaining = f;

  std::vector<std::pair<DenomAtom, int>> var_atoms;
  for (auto& [a, p] : f.den)
    if (a.involves(var)) var_atoms.push_back({a, p});

  for (auto& [a, e] : var_atoms) {
    Point pt;
    switch (a.kind) {
      case DenomAtom::Linear: pt = Point::finite(a.c); break;
      case DenomAtom::ProdMinusOne: pt = Point::param_inv(a.other(var)); break;
      case DenomAtom::Sum: pt = Point::param_neg(a.other(var)); break;
      case DenomAtom::Diff: pt = Point::param_id(a.other(var)); break;
    }
    // local coordinate u = var - root, atom = alpha * u with alpha constant in var
    FactoredRational alpha = detail::atom_local(a, var, pt).c_l;
    LocalSeries s = series_at(f, var, pt, -1);
    FactoredRational A_frac(a.poly());
    for (int k = e; k >= 1; --k) {
      FactoredRational ck = s.coeff(-k);
      if (ck.is_zero()) continue;
      // principal-part term: ck / (alpha^k) * alpha^k u^k = ck u^{-k}; as
      // a global object: ck * alpha^k / A^k
      FactoredRational alpha_k(Rational(1));
      for (int i = 0; i < k; ++i) alpha_k *= alpha;
      FactoredRational term = ck * alpha_k;
      term.mul_den_atom(a, k);
      remaining -= term;
      if (k == 1) {
        // integral: ck log u = ck log A up to a var-independent constant
        out.logs.push_back({a, ck});
      } else {
        // integral: ck alpha^{k-1} / ((1-k) A^{k-1})
        FactoredRational alpha_km1(Rational(1));
        for (int i = 0; i < k - 1; ++i) alpha_km1 *= alpha;
        FactoredRational intg = ck * alpha_km1 / Rational(1 - k);
        intg.mul_den_atom(a, k - 1);
        out.rational_part += intg;
      }
    }
  }

  remaining.normalize();
  for (auto& [a, p] : remaining.den)
    if (a.involves(var))
      throw std::logic_error("principal-part subtraction left a pole in the variable");
  // remaining is polynomial in var; integrate termwise
  FactoredRational poly_int;
  FactoredRational base(Rational(1));
  base.den = remaining.den;
  Poly n;
  for (auto& [m, c] : remaining.num.terms) {
    int k = m.exp(var);
    n.add_term(m.with_exp(var, k + 1), c / (k + 1));
  }
  FactoredRational pi_part;
  pi_part.num = n;
  pi_part.den = remaining.den;
  out.rational_part += pi_part;
  out.rational_part.normalize();
  for (auto& [a, cf] : out.logs) cf.normalize();
  return out;
}

// Value of f at the point; throws PoleAtEndpoint if f blows up there.
inline FactoredRational limit_at(const FactoredRational& f, int var, const Point& pt) {
  LocalSeries s = series_at(f, var, pt, 0);
  for (int k = s.lead; k < 0 && k <= s.hi; ++k)
    if (!s.coeff_is_zero(k)) throw PoleAtEndpoint("pole at " + pt.str());
  return s.coeff(0);
}

}  // namespace rtr

#endif
