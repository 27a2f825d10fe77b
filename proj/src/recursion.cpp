#include "rtr/recursion.hpp"

#include <set>

namespace rtr {

FactoredRational residue_at_infinity_via_sum(const FactoredRational& f, int var) {
  std::set<std::tuple<int, int>> seen;  // encoded point
  FactoredRational total;
  std::vector<Point> pts;
  auto push = [&](const Point& p, int code, int j) {
    if (seen.insert({code, j}).second) pts.push_back(p);
  };
  std::set<Rational> finites;
  for (auto& [a, e] : f.den) {
    if (!a.involves(var)) continue;
    switch (a.kind) {
      case DenomAtom::Linear:
        if (finites.insert(a.c).second) pts.push_back(Point::finite(a.c));
        break;
      case DenomAtom::ProdMinusOne:
        push(Point::param_inv(a.other(var)), 1, a.other(var));
        break;
      case DenomAtom::Sum:
        push(Point::param_neg(a.other(var)), 2, a.other(var));
        break;
      case DenomAtom::Diff:
        push(Point::param_id(a.other(var)), 3, a.other(var));
        break;
    }
  }
  for (auto& p : pts) total += residue_at(f, var, p);
  return -total;
}

namespace {

// Upper bound on the pole order of f(var) at the point, read off the
// denominator atoms that vanish identically there.
int pole_order_bound(const FactoredRational& f, int var, const Point& pt) {
  int E = 0;
  for (auto& [a, p] : f.den) {
    if (!a.involves(var)) continue;
    bool zero = false;
    switch (pt.kind) {
      case Point::Finite: zero = a.kind == DenomAtom::Linear && a.c == pt.a; break;
      case Point::ParamInv: zero = a.kind == DenomAtom::ProdMinusOne && a.other(var) == pt.j; break;
      case Point::ParamNeg: zero = a.kind == DenomAtom::Sum && a.other(var) == pt.j; break;
      case Point::ParamId: zero = a.kind == DenomAtom::Diff && a.other(var) == pt.j; break;
      case Point::Infinity: throw std::logic_error("order bound at infinity");
    }
    if (zero) E += p;
  }
  return E;
}

// Every pole of the product in var other than infinity, one point per
// location.
std::vector<Point> product_pole_points(const std::vector<const FactoredRational*>& fs, int var) {
  std::set<Rational> finites;
  std::set<std::pair<int, int>> params;
  std::vector<Point> pts;
  for (auto* f : fs)
    for (auto& [a, e] : f->den) {
      if (!a.involves(var)) continue;
      switch (a.kind) {
        case DenomAtom::Linear:
          if (finites.insert(a.c).second) pts.push_back(Point::finite(a.c));
          break;
        case DenomAtom::ProdMinusOne:
          if (params.insert({1, a.other(var)}).second) pts.push_back(Point::param_inv(a.other(var)));
          break;
        case DenomAtom::Sum:
          if (params.insert({2, a.other(var)}).second) pts.push_back(Point::param_neg(a.other(var)));
          break;
        case DenomAtom::Diff:
          if (params.insert({3, a.other(var)}).second) pts.push_back(Point::param_id(a.other(var)));
          break;
      }
    }
  return pts;
}

// Sum of many fractions in one pass: put everything over the union
// denominator once, then merge the adjusted numerators pairwise. Far
// cheaper than a chain of binary additions, which redoes the
// common-denominator expansion at every step.
FactoredRational balanced_sum(std::vector<FactoredRational> parts) {
  if (parts.empty()) return FactoredRational();
  if (parts.size() == 1) return std::move(parts.front());
  FactoredRational r;
  for (auto& p : parts)
    for (auto& [a, e] : p.den) {
      auto it = r.den.find(a);
      if (it == r.den.end())
        r.den[a] = e;
      else
        it->second = std::max(it->second, e);
    }
  std::vector<Poly> nums;
  nums.reserve(parts.size());
  for (auto& p : parts) {
    Poly na = std::move(p.num);
    for (auto& [a, e] : r.den) {
      auto it = p.den.find(a);
      int extra = e - (it == p.den.end() ? 0 : it->second);
      Poly ap = a.poly();
      for (int k = 0; k < extra; ++k) na = na * ap;
    }
    nums.push_back(std::move(na));
  }
  while (nums.size() > 1) {
    std::vector<Poly> next;
    for (size_t i = 0; i + 1 < nums.size(); i += 2) next.push_back(nums[i] + nums[i + 1]);
    if (nums.size() % 2) next.push_back(std::move(nums.back()));
    nums = std::move(next);
  }
  r.num = std::move(nums.front());
  if (r.num.is_zero()) r.den.clear();
  return r;
}

}  // namespace

FactoredRational product_series_coeff(const std::vector<const FactoredRational*>& fs, int var,
                                      const Point& pt, int k) {
  int nf = int(fs.size());
  std::vector<int> Ei(nf);
  int E = 0;
  for (int i = 0; i < nf; ++i) {
    if (fs[i]->is_zero()) return FactoredRational();
    Ei[i] = pole_order_bound(*fs[i], var, pt);
    E += Ei[i];
  }
  if (k < -E) return FactoredRational();
  // suffix pole-order sums, for truncation caps during the convolution
  std::vector<int> Esuf(nf + 1, 0);
  for (int i = nf - 1; i >= 0; --i) Esuf[i] = Esuf[i + 1] + Ei[i];

  FactoredRational C(Rational(1));
  std::vector<FactoredRational> raw{FactoredRational(Rational(1))};
  int lead = 0;
  for (int i = 0; i < nf; ++i) {
    LocalSeries s = series_at(*fs[i], var, pt, k + E - Ei[i]);
    if (s.raw.empty()) return FactoredRational();
    C *= s.C;
    lead += s.lead;
    int cap = k - lead + Esuf[i + 1];  // indices beyond this cannot reach u^k
    if (cap < 0) return FactoredRational();
    std::vector<FactoredRational> out(cap + 1);
    for (int a = 0; a < int(raw.size()); ++a) {
      if (raw[a].is_zero()) continue;
      for (int b = 0; b < int(s.raw.size()) && a + b <= cap; ++b) {
        if (s.raw[b].is_zero()) continue;
        out[a + b] += raw[a] * s.raw[b];
      }
    }
    raw = std::move(out);
  }
  int idx = k - lead;
  if (idx < 0 || idx >= int(raw.size())) return FactoredRational();
  FactoredRational v = C * raw[idx];
  v.normalize();
  return v;
}

FactoredRational product_residue_at(const std::vector<const FactoredRational*>& fs, int var,
                                    const Point& pt) {
  return product_series_coeff(fs, var, pt, -1);
}

FactoredRational product_residue_at_infinity(const std::vector<const FactoredRational*>& fs,
                                             int var, bool can_invert) {
  if (can_invert) {
    std::vector<FactoredRational> subbed;
    subbed.reserve(fs.size());
    for (auto* f : fs) subbed.push_back(f->subst_inverse(var));
    std::vector<const FactoredRational*> ps;
    for (auto& f : subbed) ps.push_back(&f);
    return -product_series_coeff(ps, var, Point::finite(0), 1);
  }
  FactoredRational total;
  for (auto& pt : product_pole_points(fs, var)) total += product_residue_at(fs, var, pt);
  return -total;
}

FactoredRational residue_log_times(const FactoredRational& f, int var, const Point& pt) {
  // log z about the point, constant dropped:
  //   z = r + u  ->  log z ~ sum_{k>=1} (-1)^{k+1} u^k / (k r^k)
  LocalSeries s = series_at(f, var, pt, -1);
  int E = -s.lead;
  FactoredRational out;
  if (E < 2) return out;  // needs at least a double pole to pair with u^k, k>=1
  // 1/r as a FactoredRational
  FactoredRational rinv;
  switch (pt.kind) {
    case Point::Finite:
      if (pt.a == 0) throw std::logic_error("log expansion at the branch point");
      rinv = FactoredRational(1 / pt.a);
      break;
    case Point::ParamId: {
      rinv = FactoredRational(Rational(1));
      rinv.mul_den_atom(DenomAtom::linear(pt.j, Rational(0)));
      break;
    }
    case Point::ParamInv:
      rinv = FactoredRational::variable(pt.j);
      break;
    case Point::ParamNeg: {
      rinv = FactoredRational(Rational(-1));
      rinv.mul_den_atom(DenomAtom::linear(pt.j, Rational(0)));
      break;
    }
    case Point::Infinity:
      throw std::logic_error("log expansion at infinity unsupported");
  }
  FactoredRational rk(Rational(1));
  for (int k = 1; k <= E - 1; ++k) {
    rk *= rinv;
    FactoredRational c = rk * Rational(k % 2 ? 1 : -1, k);
    out += c * s.coeff(-1 - k);
  }
  out.normalize();
  return out;
}

FactoredRational OmegaTable::residue(const FactoredRational& f, int var, const Point& pt) const {
  if (pt.kind == Point::Infinity && curve.sigma == CurveModel::Sigma::Negate)
    return residue_at_infinity_via_sum(f, var);
  return residue_at(f, var, pt);
}

FactoredRational OmegaTable::body_renamed(int g2, int n, const std::vector<int>& vars) {
  const FactoredRational& b = omega(g2, n);
  std::array<int, kMaxVars> perm{};
  for (int i = 0; i < kMaxVars; ++i) perm[i] = i;
  for (int i = 0; i < n; ++i) perm[i] = vars[i];
  return b.rename(perm);
}

FactoredRational OmegaTable::rec_bidiff(int p, int q) const {
  FactoredRational r = curve.xprime(p) * curve.xprime(q);
  switch (curve.name) {
    case CurveName::Weber:
    case CurveName::Whittaker: {
      // x(p)-x(q) = mass (p-q)(pq-1)/(pq)
      const Rational& t = curve.params.mass;
      r *= FactoredRational(Poly::variable(p, 2) * Poly::variable(q, 2) / (t * t));
      r.mul_den_atom(DenomAtom::diff(p, q).first, 2);
      r.mul_den_atom(DenomAtom::prod(p, q).first, 2);
      return r;
    }
    case CurveName::Airy:
    case CurveName::DegenerateBessel:
      // x(p)-x(q) = (p-q)(p+q)
      r.mul_den_atom(DenomAtom::diff(p, q).first, 2);
      r.mul_den_atom(DenomAtom::sum(p, q).first, 2);
      return r;
  }
  throw std::logic_error("bad curve");
}

std::vector<std::vector<FactoredRational>> OmegaTable::rec_products(
    int g2, const std::vector<int>& jvars, int p, int scratch) {
  int n = int(jvars.size());
  std::vector<std::vector<FactoredRational>> prods;

  // pullback-bidifferential terms
  for (int i = 0; i < n; ++i) {
    std::vector<int> rest;
    rest.push_back(p);
    for (int k = 0; k < n; ++k)
      if (k != i) rest.push_back(jvars[k]);
    prods.push_back({rec_bidiff(p, jvars[i]), body_renamed(g2, n, rest)});
  }

  // starred product: all splittings excluding omega_{0,1} factors
  for (int g2a = 0; g2a <= g2; ++g2a) {
    int g2b = g2 - g2a;
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
      int n1 = __builtin_popcount(mask);
      int n2 = n - n1;
      if (g2a == 0 && n1 == 0) continue;  // omega_{0,1} excluded
      if (g2b == 0 && n2 == 0) continue;
      std::vector<int> v1{p}, v2{p};
      for (int k = 0; k < n; ++k) ((mask >> k) & 1u ? v1 : v2).push_back(jvars[k]);
      prods.push_back({body_renamed(g2a, n1 + 1, v1), body_renamed(g2b, n2 + 1, v2)});
    }
  }

  // diagonal term omega_{g-1,n+2}(p,p,J)
  if (g2 >= 2) {
    std::vector<int> v{p, scratch};
    for (int k = 0; k < n; ++k) v.push_back(jvars[k]);
    prods.push_back({body_renamed(g2 - 2, n + 2, v).identify(scratch, p)});
  }

  // Q dx d(omega_{g-1/2,n+1}/dx)
  if (g2 >= 1 && curve.Q != 0) {
    std::vector<int> v{p};
    for (int k = 0; k < n; ++k) v.push_back(jvars[k]);
    FactoredRational h = body_renamed(g2 - 1, n + 1, v);
    FactoredRational xp = curve.xprime(p);
    prods.push_back({xp * (h * xp.invert()).derivative(p) * curve.Q});
  }

  return prods;
}

FactoredRational OmegaTable::rec_term(int g2, const std::vector<int>& jvars, int p, int scratch) {
  FactoredRational rec;
  for (auto& fac : rec_products(g2, jvars, p, scratch)) {
    FactoredRational term(Rational(1));
    for (auto& f : fac) term = term * f;
    rec += term;
  }
  return rec;
}

const FactoredRational& OmegaTable::omega(int g2, int n) {
  auto it = memo.find({g2, n});
  if (it != memo.end()) return it->second;
  FactoredRational b = compute(g2, n);
  b.normalize();
  return memo.emplace(std::make_pair(g2, n), std::move(b)).first->second;
}

FactoredRational OmegaTable::compute(int g2, int n) {
  if (g2 < 0 || n < 1) throw UnstableRequest("invalid indices");
  // base cases
  if (g2 == 0 && n == 1) return curve.ydx(0);
  if (g2 == 0 && n == 2) {
    FactoredRational b(Rational(1));
    if (curve.sigma == CurveModel::Sigma::Inverse)
      b.mul_den_atom(DenomAtom::prod(0, 1).first, 2);
    else
      b.mul_den_atom(DenomAtom::sum(0, 1).first, 2);
    return b;
  }
  if (g2 == 1 && n == 1) {
    FactoredRational y = curve.y_of(0);
    FactoredRational body = -(y.derivative(0) * y.invert());
    if (curve.has_mu_pole) body += curve.eta_at(0, curve.pole_plus().loc) * curve.params.mu;
    return body * (curve.Q / 2);
  }
  if (g2 + n < 3) throw UnstableRequest("entry below the recursion range");

  int p = kWork;
  int nj = n - 1;
  std::vector<int> jvars;
  for (int i = 1; i <= nj; ++i) jvars.push_back(i);
  int scratch = n;  // unused by target variables and p
  // only the diagonal term consumes the scratch slot
  if (g2 >= 2 && scratch >= p) throw std::logic_error("variable budget exhausted");

  FactoredRational kernel = curve.eta_at(0, Point::param_id(p)) * curve.kernel_inv(p);
  kernel.normalize();
  auto prods = rec_products(g2, jvars, p, scratch);

  // residue of kernel * Rec at one point, taken product by product so the
  // factors never get combined over a global common denominator; summed
  // pairwise and normalized to keep the operands small
  auto res_at = [&](const Point& pt) {
    std::vector<FactoredRational> parts;
    for (auto& fac : prods) {
      std::vector<const FactoredRational*> fs{&kernel};
      for (auto& f : fac) fs.push_back(&f);
      if (pt.kind == Point::Infinity)
        parts.push_back(
            product_residue_at_infinity(fs, p, curve.sigma == CurveModel::Sigma::Inverse));
      else
        parts.push_back(product_residue_at(fs, p, pt));
    }
    FactoredRational sum = balanced_sum(std::move(parts));
    sum.normalize();
    return sum;
  };

  std::vector<FactoredRational> contributions;
  // residues at ramification points
  for (auto& r : curve.R) contributions.push_back(res_at(r));
  // residues at sigma of every marked point, p0 included; the integrand is
  // symmetric in the non-distinguished marked variables 1..nj, so those
  // residues are renames of the first one
  auto sp = [&](int i) {
    return curve.sigma == CurveModel::Sigma::Inverse ? Point::param_inv(i)
                                                     : Point::param_neg(i);
  };
  contributions.push_back(res_at(sp(0)));
  if (nj >= 1) {
    FactoredRational r1 = res_at(sp(1));
    for (int i = 2; i <= nj; ++i) {
      std::array<int, kMaxVars> perm{};
      for (int k = 0; k < kMaxVars; ++k) perm[k] = k;
      perm[1] = i;
      perm[i] = 1;
      contributions.push_back(r1.rename(perm));
    }
    contributions.push_back(std::move(r1));
  }
  // residues at the mu-carrying poles
  if (curve.has_mu_pole) contributions.push_back(res_at(curve.pole_plus().loc));
  return -balanced_sum(std::move(contributions));
}

bool loop_eq_check(OmegaTable& t, int g2, int ntot) {
  if (ntot < 2) return false;
  int nj = ntot - 1;
  const FactoredRational& lhs = t.omega(g2, ntot);
  std::vector<int> jvars;
  for (int i = 1; i <= nj; ++i) jvars.push_back(i);
  int scratch = ntot;
  FactoredRational rhs = -(t.rec_term(g2, jvars, 0, scratch) * t.curve.kernel_inv(0));
  for (int i = 1; i <= nj; ++i) {
    std::vector<int> jv;
    for (int k = 1; k <= nj; ++k) jv.push_back(k);
    FactoredRational inner = t.curve.eta_at(0, Point::param_id(i)) * t.curve.kernel_inv(i) *
                             t.body_renamed(g2, nj, jv);
    rhs += inner.derivative(i);
  }
  return (lhs - rhs).is_zero();
}

bool dilaton_check(OmegaTable& t, int g2, int ntot) {
  int factor2 = g2 + ntot - 2;  // 2g + n - 2
  if (ntot < 1 || factor2 < 1) return false;
  const FactoredRational& body = t.omega(g2, ntot);
  // omega_{g,n+1}(p, J) with p = kWork and J = 0..ntot-1
  std::vector<int> v{kWork};
  for (int i = 0; i < ntot; ++i) v.push_back(i);
  FactoredRational big = t.body_renamed(g2, ntot + 1, v);
  auto phi = t.curve.phi(kWork);
  FactoredRational integrand = phi.rational_part * big;
  integrand.normalize();

  FactoredRational rhs;
  for (auto& r : t.curve.R_star) {
    Point pt = Point::finite(r);
    rhs -= residue_at(integrand, kWork, pt);
    if (phi.log_coeff != 0) rhs -= residue_log_times(big, kWork, pt) * phi.log_coeff;
  }
  // big is symmetric in the marked variables 0..ntot-1: the remaining
  // residues are renames of the one at the image of variable 0
  Point p0 = t.curve.sigma == CurveModel::Sigma::Inverse ? Point::param_inv(0)
                                                         : Point::param_neg(0);
  FactoredRational r0 = residue_at(integrand, kWork, p0);
  if (phi.log_coeff != 0) r0 += residue_log_times(big, kWork, p0) * phi.log_coeff;
  for (int i = 0; i < ntot; ++i) {
    std::array<int, kMaxVars> perm{};
    for (int k = 0; k < kMaxVars; ++k) perm[k] = k;
    perm[0] = i;
    perm[i] = 0;
    rhs -= i == 0 ? r0 : r0.rename(perm);
  }
  return (body * Rational(factor2) - rhs).is_zero();
}

bool scaling_check_airy_dbes(OmegaTable& t, int g2, int ntot, const Rational& c) {
  if (c == 0) return false;
  const FactoredRational& body = t.omega(g2, ntot);
  if (t.curve.name == CurveName::Airy) {
    // body(c z) = c^{2 - 3 g2 - 4(ntot-1)} body(z)
    long e = 2 - 3 * g2 - 4 * (ntot - 1);
    return body.scale_all(c).equals(body * pow_rat(c, e));
  }
  if (t.curve.name == CurveName::DegenerateBessel) {
    // body(z/c) = c^{g2 - 2 + 2 ntot} body(z)
    long e = g2 - 2 + 2 * ntot;
    return body.scale_all(1 / c).equals(body * pow_rat(c, e));
  }
  return false;
}

bool symmetry_ok(const FactoredRational& body, int n) {
  for (int i = 1; i < n; ++i) {
    std::array<int, kMaxVars> perm{};
    for (int k = 0; k < kMaxVars; ++k) perm[k] = k;
    perm[0] = i;
    perm[i] = 0;
    if (!body.rename(perm).equals(body)) return false;
  }
  return true;
}

bool pole_locus_ok(const CurveModel& c, const FactoredRational& body) {
  for (auto& [a, e] : body.den) {
    switch (a.kind) {
      case DenomAtom::Linear: {
        bool at_ram = false;
        for (auto& r : c.R_star)
          if (a.c == r) at_ram = true;
        if (!at_ram) return false;
        break;
      }
      case DenomAtom::ProdMinusOne:
        if (c.sigma != CurveModel::Sigma::Inverse) return false;
        break;
      case DenomAtom::Sum:
        if (c.sigma != CurveModel::Sigma::Negate) return false;
        break;
      case DenomAtom::Diff:
        return false;  // a z_i = z_j pole is never allowed
    }
  }
  return true;
}

bool residue_free_ok(const CurveModel& c, const FactoredRational& body, bool symmetric) {
  // enumerate the poles in variable 0 from the denominator atoms; the
  // residue at infinity is minus their sum, so checking each one also
  // covers infinity
  std::set<Rational> finites;
  std::set<std::pair<int, int>> params;
  for (auto& [a, e] : body.den) {
    if (!a.involves(0)) continue;
    switch (a.kind) {
      case DenomAtom::Linear: finites.insert(a.c); break;
      case DenomAtom::ProdMinusOne: params.insert({1, a.other(0)}); break;
      case DenomAtom::Sum: params.insert({2, a.other(0)}); break;
      case DenomAtom::Diff: params.insert({3, a.other(0)}); break;
    }
  }
  if (symmetric) {
    // for a body symmetric in its variables, the residues at parametric
    // points of the same kind are renames of one another
    std::set<std::pair<int, int>> reps;
    std::set<int> kinds;
    for (auto& [k, j] : params)
      if (kinds.insert(k).second) reps.insert({k, j});
    params = reps;
  }
  for (auto& r : finites)
    if (!residue_at(body, 0, Point::finite(r)).is_zero()) return false;
  for (auto& [k, j] : params) {
    Point pt = k == 1 ? Point::param_inv(j) : k == 2 ? Point::param_neg(j) : Point::param_id(j);
    if (!residue_at(body, 0, pt).is_zero()) return false;
  }
  return true;
}

}  // namespace rtr
