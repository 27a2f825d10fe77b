#ifndef RTR_ATOM_HPP
#define RTR_ATOM_HPP

#include <tuple>

#include "rtr/poly.hpp"

namespace rtr {

// Irreducible denominator factor. The recursion's pole locus closes over
// exactly these shapes: v - c (ramification points and labelled poles),
// v*w - 1 and v + w (images under the two involutions z -> 1/z, z -> -z),
// and v - w (diagonals appearing in kernels).
struct DenomAtom {
  enum Kind { Linear, ProdMinusOne, Sum, Diff } kind = Linear;
  int v = 0, w = 0;  // w unused for Linear; v < w for the binary kinds
  Rational c;        // Linear only: the atom is (v - c)

  static DenomAtom linear(int v, const Rational& c) {
    DenomAtom a;
    a.kind = Linear;
    a.v = v;
    a.c = c;
    return a;
  }
  // Binary atoms are stored with v < w; Diff(v,w) means (v - w), and the
  // constructor returns the sign flip needed when the arguments arrive
  // in the other order.
  static std::pair<DenomAtom, int> prod(int v, int w) {
    if (v == w) throw std::invalid_argument("prod atom needs distinct variables");
    DenomAtom a;
    a.kind = ProdMinusOne;
    a.v = std::min(v, w);
    a.w = std::max(v, w);
    return {a, 1};
  }
  static std::pair<DenomAtom, int> sum(int v, int w) {
    if (v == w) throw std::invalid_argument("sum atom needs distinct variables");
    DenomAtom a;
    a.kind = Sum;
    a.v = std::min(v, w);
    a.w = std::max(v, w);
    return {a, 1};
  }
  static std::pair<DenomAtom, int> diff(int v, int w) {
    if (v == w) throw std::invalid_argument("diff atom needs distinct variables");
    DenomAtom a;
    a.kind = Diff;
    a.v = std::min(v, w);
    a.w = std::max(v, w);
    return {a, v < w ? 1 : -1};
  }

  bool involves(int x) const { return x == v || (kind != Linear && x == w); }
  int other(int x) const { return x == v ? w : v; }

  Poly poly() const {
    switch (kind) {
      case Linear:
        return Poly::variable(v) - Poly(c);
      case ProdMinusOne:
        return Poly::variable(v) * Poly::variable(w) - Poly(Rational(1));
      case Sum:
        return Poly::variable(v) + Poly::variable(w);
      case Diff:
        return Poly::variable(v) - Poly::variable(w);
    }
    throw std::logic_error("bad atom kind");
  }

  // d(atom)/d(x) as a polynomial (0, 1, -1, or the partner variable).
  Poly derivative(int x) const {
    if (!involves(x)) return Poly();
    switch (kind) {
      case Linear:
        return Poly(Rational(1));
      case ProdMinusOne:
        return Poly::variable(other(x));
      case Sum:
        return Poly(Rational(1));
      case Diff:
        return Poly(x == v ? Rational(1) : Rational(-1));
    }
    throw std::logic_error("bad atom kind");
  }

  auto key() const { return std::make_tuple(int(kind), v, w, c); }
  bool operator<(const DenomAtom& o) const { return key() < o.key(); }
  bool operator==(const DenomAtom& o) const { return key() == o.key(); }

  std::string str(const std::vector<std::string>& names = {}) const {
    auto nm = [&](int x) {
      return x < int(names.size()) ? names[x] : "z" + std::to_string(x + 1);
    };
    switch (kind) {
      case Linear:
        if (c == 0) return nm(v);
        return "(" + nm(v) + (c < 0 ? "+" + Rational(-c).str() : "-" + c.str()) + ")";
      case ProdMinusOne:
        return "(" + nm(v) + "*" + nm(w) + "-1)";
      case Sum:
        return "(" + nm(v) + "+" + nm(w) + ")";
      case Diff:
        return "(" + nm(v) + "-" + nm(w) + ")";
    }
    return "?";
  }
};

}  // namespace rtr

#endif
