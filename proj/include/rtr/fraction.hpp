#ifndef RTR_FRACTION_HPP
#define RTR_FRACTION_HPP

#include <map>
#include <optional>

#include "rtr/atom.hpp"
#include "rtr/poly.hpp"

namespace rtr {

// Rational function with factored denominator: num / prod(atom^power).
// Zero is represented by a zero numerator (denominator irrelevant).
class FactoredRational {
 public:
  Poly num;
  std::map<DenomAtom, int> den;

  FactoredRational() = default;
  explicit FactoredRational(const Rational& c) : num(c) {}
  explicit FactoredRational(const Poly& p) : num(p) {}
  static FactoredRational variable(int v) { return FactoredRational(Poly::variable(v)); }

  bool is_zero() const { return num.is_zero(); }
  bool is_constant() const { return num.is_constant() || num.is_zero(); }

  void mul_den_atom(const DenomAtom& a, int pow = 1) {
    if (num.is_zero()) return;
    den[a] += pow;
    if (den[a] == 0) den.erase(a);
    if (den.count(a) && den[a] < 0) {
      // negative power means numerator factor
      int k = -den[a];
      den.erase(a);
      Poly ap = a.poly();
      for (int i = 0; i < k; ++i) num *= ap;
    }
  }

  // Exact division of a polynomial by a single denominator atom, by
  // synthetic division along the atom's leading variable. Linear in the
  // term count, unlike general multivariate long division.
  static bool try_divide_atom(const Poly& n, const DenomAtom& a, Poly& q) {
    if (n.is_zero()) {
      q = Poly();
      return true;
    }
    int v = a.v;
    int d = n.degree(v);
    if (d < 1) return false;
    std::vector<Poly> A(d + 1);
    for (auto& [m, c] : n.terms) A[m.exp(v)].terms.emplace(m.with_exp(v, 0), c);
    std::vector<Poly> B(d);
    if (a.kind == DenomAtom::ProdMinusOne) {
      // n = (vw - 1) q: build q from the constant side, where the
      // trailing coefficient -1 is a unit
      Poly w = Poly::variable(a.w);
      B[0] = -A[0];
      for (int k = 1; k < d; ++k) B[k] = B[k - 1] * w - A[k];
      if (!(A[d] - B[d - 1] * w).is_zero()) return false;
    } else {
      // divisor v - r with r constant in v
      Poly r;
      switch (a.kind) {
        case DenomAtom::Linear: r = Poly(a.c); break;
        case DenomAtom::Diff: r = Poly::variable(a.w); break;
        case DenomAtom::Sum: r = -Poly::variable(a.w); break;
        default: break;
      }
      B[d - 1] = A[d];
      for (int k = d - 2; k >= 0; --k) B[k] = A[k + 1] + B[k + 1] * r;
      if (!(A[0] + B[0] * r).is_zero()) return false;
    }
    q = Poly();
    for (int k = 0; k < d; ++k)
      for (auto& [m, c] : B[k].terms) q.terms.emplace(m.with_exp(v, k), c);
    return true;
  }

  // One-sided divisibility screen: evaluate the numerator at a fixed point
  // on the atom's zero set. A nonzero value proves the atom is not a
  // factor; zero means the full division is worth attempting. A genuine
  // factor vanishes identically on the zero set, so true cancellations are
  // never screened out.
  static bool may_divide(const Poly& n, const DenomAtom& a) {
    static const Rational pool[kMaxVars] = {rat(7, 3),  rat(-5, 2), rat(9, 4),
                                            rat(11, 5), rat(-13, 7), rat(17, 6),
                                            rat(19, 8), rat(23, 9)};
    std::vector<Rational> pt(pool, pool + kMaxVars);
    switch (a.kind) {
      case DenomAtom::Linear: pt[a.v] = a.c; break;
      case DenomAtom::ProdMinusOne: pt[a.v] = 1 / pt[a.w]; break;
      case DenomAtom::Sum: pt[a.v] = -pt[a.w]; break;
      case DenomAtom::Diff: pt[a.v] = pt[a.w]; break;
    }
    return n.eval(pt) == 0;
  }

  // Cancel denominator atoms that divide the numerator exactly.
  void normalize() {
    if (num.is_zero()) {
      den.clear();
      return;
    }
    for (auto it = den.begin(); it != den.end();) {
      Poly q;
      while (it->second > 0 && may_divide(num, it->first) &&
             try_divide_atom(num, it->first, q)) {
        num = q;
        --it->second;
      }
      if (it->second == 0)
        it = den.erase(it);
      else
        ++it;
    }
  }

  FactoredRational operator-() const {
    FactoredRational r = *this;
    r.num = -r.num;
    return r;
  }

  FactoredRational operator*(const FactoredRational& o) const {
    FactoredRational r;
    if (is_zero() || o.is_zero()) return r;
    r.num = num * o.num;
    r.den = den;
    for (auto& [a, p] : o.den) r.den[a] += p;
    return r;
  }
  FactoredRational& operator*=(const FactoredRational& o) { return *this = *this * o; }
  FactoredRational operator*(const Rational& c) const {
    FactoredRational r;
    if (c == 0) return r;
    r.num = num * c;
    r.den = den;
    return r;
  }
  FactoredRational operator/(const Rational& c) const { return *this * (Rational(1) / c); }

  FactoredRational operator+(const FactoredRational& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    FactoredRational r;
    // common denominator: atom-wise max power
    r.den = den;
    for (auto& [a, p] : o.den) {
      auto it = r.den.find(a);
      if (it == r.den.end())
        r.den[a] = p;
      else
        it->second = std::max(it->second, p);
    }
    Poly na = num, nb = o.num;
    for (auto& [a, p] : r.den) {
      int pa = p, pb = p;
      if (auto it = den.find(a); it != den.end()) pa -= it->second;
      if (auto it = o.den.find(a); it != o.den.end()) pb -= it->second;
      Poly ap = a.poly();
      for (int i = 0; i < pa; ++i) na *= ap;
      for (int i = 0; i < pb; ++i) nb *= ap;
    }
    r.num = na + nb;
    if (r.num.is_zero()) r.den.clear();
    return r;
  }
  FactoredRational operator-(const FactoredRational& o) const { return *this + (-o); }
  FactoredRational& operator+=(const FactoredRational& o) { return *this = *this + o; }
  FactoredRational& operator-=(const FactoredRational& o) { return *this = *this - o; }

  bool equals(const FactoredRational& o) const { return (*this - o).is_zero(); }

  bool involves(int v) const {
    if (num.involves(v)) return true;
    for (auto& [a, p] : den)
      if (a.involves(v)) return true;
    return false;
  }

  // d/dv by the quotient rule over the factored denominator.
  FactoredRational derivative(int v) const {
    FactoredRational r;
    r.num = num.derivative(v);
    r.den = den;
    for (auto& [a, p] : den) {
      Poly da = a.derivative(v);
      if (da.is_zero()) continue;
      FactoredRational t;
      t.num = num * da * Rational(-p);
      t.den = den;
      t.den[a] += 1;
      r += t;
    }
    return r;
  }

  Rational eval(const std::vector<Rational>& point) const {
    Rational n = num.eval(point);
    Rational d = 1;
    for (auto& [a, p] : den) {
      Rational av = a.poly().eval(point);
      if (av == 0) throw std::domain_error("evaluation at a pole");
      d *= pow_rat(av, p);
    }
    return n / d;
  }

  // Multiply by v^k (k may be negative: adds powers of the atom v).
  void mul_var_power(int v, int k) {
    if (num.is_zero()) return;
    if (k > 0)
      num *= Poly::term(1, Mono::var(v, k));
    else if (k < 0)
      mul_den_atom(DenomAtom::linear(v, 0), -k);
  }

  // Injective variable rename v -> perm[v].
  FactoredRational rename(const std::array<int, kMaxVars>& perm) const {
    FactoredRational r;
    r.num = num.rename(perm);
    for (auto& [a, p] : den) {
      DenomAtom na = a;
      int sign = 1;
      if (a.kind == DenomAtom::Linear) {
        na.v = perm[a.v];
      } else {
        int nv = perm[a.v], nw = perm[a.w];
        switch (a.kind) {
          case DenomAtom::ProdMinusOne:
            na = DenomAtom::prod(nv, nw).first;
            break;
          case DenomAtom::Sum:
            na = DenomAtom::sum(nv, nw).first;
            break;
          case DenomAtom::Diff: {
            auto [at, s] = DenomAtom::diff(nv, nw);
            na = at;
            sign = s;
            break;
          }
          default:
            break;
        }
      }
      r.den[na] += p;
      if (sign == -1 && (p % 2)) r.num = -r.num;
    }
    return r;
  }

  // Identify variable v with w (set z_v := z_w).
  FactoredRational identify(int v, int w) const;

  // Substitute every variable x -> c*x simultaneously.
  FactoredRational scale_all(const Rational& c) const;

  // Substitute v -> sigma(v) for sigma(z) = 1/z or sigma(z) = -z.
  FactoredRational subst_inverse(int v) const;
  FactoredRational subst_negate(int v) const;

  // Multiplicative inverse; requires the numerator to factor into atoms
  // and a monomial.
  FactoredRational invert() const;

  std::string str(const std::vector<std::string>& names = {}) const {
    std::string s = "(" + num.str(names) + ")";
    if (!den.empty()) {
      s += " / (";
      bool first = true;
      for (auto& [a, p] : den) {
        if (!first) s += "*";
        first = false;
        s += a.str(names);
        if (p > 1) s += "^" + std::to_string(p);
      }
      s += ")";
    }
    return s;
  }
};

inline FactoredRational FactoredRational::identify(int v, int w) const {
  FactoredRational r;
  r.num = num.identify(v, w);
  for (auto& [a, p] : den) {
    if (!a.involves(v)) {
      r.den[a] += p;
      continue;
    }
    switch (a.kind) {
      case DenomAtom::Linear:
        r.den[DenomAtom::linear(w, a.c)] += p;
        break;
      case DenomAtom::ProdMinusOne:
        if (a.other(v) == w) {
          // w^2 - 1 = (w-1)(w+1)
          r.den[DenomAtom::linear(w, Rational(1))] += p;
          r.den[DenomAtom::linear(w, Rational(-1))] += p;
        } else {
          r.den[DenomAtom::prod(w, a.other(v)).first] += p;
        }
        break;
      case DenomAtom::Sum:
        if (a.other(v) == w) {
          // 2w
          r.den[DenomAtom::linear(w, Rational(0))] += p;
          r.num = r.num / pow_rat(2, p);
        } else {
          r.den[DenomAtom::sum(w, a.other(v)).first] += p;
        }
        break;
      case DenomAtom::Diff: {
        if (a.other(v) == w) throw std::domain_error("identify hits a diagonal pole");
        int lhs = (a.v == v) ? w : a.v;
        int rhs = (a.v == v) ? a.w : w;
        auto [at, s] = DenomAtom::diff(lhs, rhs);
        r.den[at] += p;
        if (s == -1 && (p % 2)) r.num = -r.num;
        break;
      }
    }
  }
  return r;
}

inline FactoredRational FactoredRational::scale_all(const Rational& c) const {
  if (c == 0) throw std::invalid_argument("scale by zero");
  FactoredRational r;
  Poly n;
  for (auto& [m, cc] : num.terms) n.add_term(m, cc * pow_rat(c, m.total_degree()));
  r.num = n;
  for (auto& [a, p] : den) {
    switch (a.kind) {
      case DenomAtom::Linear:
        // c*(v - a.c/c)
        r.den[DenomAtom::linear(a.v, a.c / c)] += p;
        r.num = r.num / pow_rat(c, p);
        break;
      case DenomAtom::Sum:
        r.den[a] += p;
        r.num = r.num / pow_rat(c, p);
        break;
      case DenomAtom::Diff:
        r.den[a] += p;
        r.num = r.num / pow_rat(c, p);
        break;
      case DenomAtom::ProdMinusOne:
        throw std::domain_error("cannot scale a v*w-1 pole locus");
    }
  }
  return r;
}

inline FactoredRational FactoredRational::subst_negate(int v) const {
  FactoredRational r;
  r.num = num.scale_var(v, Rational(-1));
  for (auto& [a, p] : den) {
    if (!a.involves(v)) {
      r.den[a] += p;
      continue;
    }
    int sign = 1;
    DenomAtom na = a;
    switch (a.kind) {
      case DenomAtom::Linear:
        // (-v - c) = -(v + c)
        na = DenomAtom::linear(a.v, -a.c);
        sign = -1;
        break;
      case DenomAtom::Sum: {
        // (-v + w) = -(v - w) if v first; (w - v)... handle via diff
        int u = a.other(v);
        auto [at, s] = DenomAtom::diff(u, v);  // w - v  (or sign-flipped storage)
        na = at;
        sign = s;
        break;
      }
      case DenomAtom::Diff: {
        int u = a.other(v);
        auto [at, s] = DenomAtom::sum(v, u);
        na = at;
        sign = (a.v == v) ? -1 : 1;  // (-v - w) = -(v+w);  (u - (-v)) = (u+v)
        (void)s;
        break;
      }
      case DenomAtom::ProdMinusOne:
        throw std::domain_error("negation does not preserve a v*w-1 pole locus");
    }
    r.den[na] += p;
    if (sign == -1 && (p % 2)) r.num = -r.num;
  }
  return r;
}

inline FactoredRational FactoredRational::subst_inverse(int v) const {
  FactoredRational r;
  int dn = num.degree(v);
  // num(1/v) * v^dn  (reverse coefficients)
  Poly n;
  for (auto& [m, c] : num.terms) n.add_term(m.with_exp(v, dn - m.exp(v)), c);
  r.num = n;
  int vpow = -dn;  // accumulated power of v to multiply at the end
  for (auto& [a, p] : den) {
    if (!a.involves(v)) {
      r.den[a] += p;
      continue;
    }
    switch (a.kind) {
      case DenomAtom::Linear:
        if (a.c == 0) {
          // 1/(1/v) = v
          vpow += p;
        } else {
          // (1/v - c) = -c (v - 1/c) / v
          r.den[DenomAtom::linear(a.v, 1 / a.c)] += p;
          vpow += p;
          r.num = r.num / pow_rat(-a.c, p);
        }
        break;
      case DenomAtom::ProdMinusOne: {
        // (w/v - 1) = (w - v)/v
        int u = a.other(v);
        auto [at, s] = DenomAtom::diff(u, v);
        r.den[at] += p;
        vpow += p;
        if (s == -1 && (p % 2)) r.num = -r.num;
        break;
      }
      case DenomAtom::Diff: {
        int u = a.other(v);
        if (a.v == v) {
          // (1/v - w) = -(vw - 1)/v
          r.den[DenomAtom::prod(v, u).first] += p;
          vpow += p;
          if (p % 2) r.num = -r.num;
        } else {
          // (u - 1/v) = (uv - 1)/v
          r.den[DenomAtom::prod(v, u).first] += p;
          vpow += p;
        }
        break;
      }
      case DenomAtom::Sum:
        throw std::domain_error("inversion does not preserve a v+w pole locus");
    }
  }
  if (vpow >= 0)
    r.num *= Poly::term(1, Mono::var(v, vpow));
  else
    r.den[DenomAtom::linear(v, Rational(0))] += -vpow;
  // clean up v^k common to numerator and the atom v
  r.normalize();
  return r;
}

inline FactoredRational FactoredRational::invert() const {
  if (is_zero()) throw std::domain_error("inverting zero");
  FactoredRational r;
  // new numerator from old denominator
  r.num = Poly(Rational(1));
  for (auto& [a, p] : den) {
    Poly ap = a.poly();
    for (int i = 0; i < p; ++i) r.num *= ap;
  }
  // factor the old numerator into atoms * monomial
  Poly n = num;
  bool progress = true;
  while (progress && !n.is_monomial()) {
    progress = false;
    auto vars = n.variables();
    for (size_t i = 0; i < vars.size() && !progress; ++i) {
      int v = vars[i];
      std::vector<DenomAtom> cands;
      cands.push_back(DenomAtom::linear(v, Rational(0)));
      cands.push_back(DenomAtom::linear(v, Rational(1)));
      cands.push_back(DenomAtom::linear(v, Rational(-1)));
      for (size_t j = 0; j < vars.size(); ++j) {
        if (vars[j] == v) continue;
        cands.push_back(DenomAtom::prod(v, vars[j]).first);
        cands.push_back(DenomAtom::sum(v, vars[j]).first);
        cands.push_back(DenomAtom::diff(v, vars[j]).first);
      }
      // rational-root candidates when n is univariate in v
      if (vars.size() == 1) {
        Poly lo = n.coeff_of(v, 0);
        int dv = n.degree(v);
        Poly hi = n.coeff_of(v, dv);
        if (!lo.is_zero() && lo.is_constant() && hi.is_constant()) {
          Rational root_cand = -lo.constant_value() / hi.constant_value();
          cands.push_back(DenomAtom::linear(v, root_cand));  // degree-1 case and beyond via retry
        }
      }
      for (auto& a : cands) {
        Poly q;
        if (try_divide_atom(n, a, q)) {
          n = q;
          r.mul_den_atom(a);
          progress = true;
          break;
        }
      }
    }
  }
  if (!n.is_monomial())
    throw std::domain_error("numerator does not factor over the atom set: " + n.str());
  auto [m, c] = *n.terms.begin();
  r.num = r.num / c;
  for (int v = 0; v < kMaxVars; ++v)
    if (m.exp(v) > 0) r.mul_den_atom(DenomAtom::linear(v, Rational(0)), m.exp(v));
  return r;
}

}  // namespace rtr

#endif
