#ifndef RTR_POLY_HPP
#define RTR_POLY_HPP

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "rtr/rational.hpp"

namespace rtr {

// Monomials pack one exponent per byte, so expressions may use at most
// kMaxVars variables and total degree per variable < 256. The recursion
// needs at most seven marked variables plus one working variable.
constexpr int kMaxVars = 8;

struct Mono {
  std::uint64_t bits = 0;

  static Mono var(int v, int e = 1) {
    if (v < 0 || v >= kMaxVars || e < 0 || e > 255)
      throw std::invalid_argument("monomial exponent out of range");
    Mono m;
    m.bits = std::uint64_t(e) << (8 * v);
    return m;
  }
  int exp(int v) const { return int((bits >> (8 * v)) & 0xff); }
  Mono with_exp(int v, int e) const {
    if (e < 0 || e > 255) throw std::overflow_error("monomial exponent overflow");
    Mono m;
    m.bits = (bits & ~(std::uint64_t(0xff) << (8 * v))) | (std::uint64_t(e) << (8 * v));
    return m;
  }
  Mono operator*(const Mono& o) const {
    Mono m;
    m.bits = bits + o.bits;
    for (int v = 0; v < kMaxVars; ++v)
      if (m.exp(v) < exp(v)) throw std::overflow_error("monomial exponent overflow");
    return m;
  }
  int total_degree() const {
    int d = 0;
    for (int v = 0; v < kMaxVars; ++v) d += exp(v);
    return d;
  }
  bool operator==(const Mono& o) const { return bits == o.bits; }
  bool operator<(const Mono& o) const { return bits < o.bits; }
};

// Graded-lex order used by exact division.
inline bool grlex_less(const Mono& a, const Mono& b) {
  int da = a.total_degree(), db = b.total_degree();
  if (da != db) return da < db;
  return a.bits < b.bits;
}

// Sparse multivariate polynomial over Rational. Deterministic term order.
class Poly {
 public:
  std::map<Mono, Rational> terms;

  Poly() = default;
  explicit Poly(const Rational& c) {
    if (c != 0) terms[Mono{}] = c;
  }
  static Poly variable(int v, int e = 1) {
    Poly p;
    p.terms[Mono::var(v, e)] = 1;
    return p;
  }
  static Poly term(const Rational& c, const Mono& m) {
    Poly p;
    if (c != 0) p.terms[m] = c;
    return p;
  }

  bool is_zero() const { return terms.empty(); }
  bool is_constant() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first == Mono{});
  }
  Rational constant_value() const {
    if (terms.empty()) return 0;
    if (!is_constant()) throw std::logic_error("polynomial is not constant");
    return terms.begin()->second;
  }
  bool is_monomial() const { return terms.size() == 1; }

  void add_term(const Mono& m, const Rational& c) {
    if (c == 0) return;
    auto it = terms.find(m);
    if (it == terms.end()) {
      terms.emplace(m, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  // linear ordered merge of the two term maps
  Poly merged(const Poly& o, int sign) const {
    Poly r;
    auto a = terms.begin();
    auto b = o.terms.begin();
    while (a != terms.end() || b != o.terms.end()) {
      if (b == o.terms.end() || (a != terms.end() && a->first < b->first)) {
        r.terms.emplace_hint(r.terms.end(), *a);
        ++a;
      } else if (a == terms.end() || b->first < a->first) {
        r.terms.emplace_hint(r.terms.end(), b->first, sign > 0 ? b->second : -b->second);
        ++b;
      } else {
        Rational c = sign > 0 ? Rational(a->second + b->second)
                              : Rational(a->second - b->second);
        if (c != 0) r.terms.emplace_hint(r.terms.end(), a->first, std::move(c));
        ++a;
        ++b;
      }
    }
    return r;
  }
  Poly& operator+=(const Poly& o) { return *this = merged(o, 1); }
  Poly& operator-=(const Poly& o) { return *this = merged(o, -1); }
  Poly operator+(const Poly& o) const { return merged(o, 1); }
  Poly operator-(const Poly& o) const { return merged(o, -1); }
  Poly operator-() const {
    Poly r;
    for (auto& [m, c] : terms) r.terms.emplace(m, -c);
    return r;
  }
  Poly operator*(const Poly& o) const {
    Poly r;
    if (terms.empty() || o.terms.empty()) return r;
    // single-term factors keep the key order, so the result builds linearly
    if (terms.size() == 1 || o.terms.size() == 1) {
      const auto& single = terms.size() == 1 ? *terms.begin() : *o.terms.begin();
      const auto& many = terms.size() == 1 ? o.terms : terms;
      for (auto& [m, c] : many)
        r.terms.emplace_hint(r.terms.end(), single.first * m, single.second * c);
      return r;
    }
    // few-term factor: scaled ordered merges beat the sort-and-coalesce
    if (terms.size() <= 4 || o.terms.size() <= 4) {
      const Poly& small = terms.size() <= o.terms.size() ? *this : o;
      const Poly& big = terms.size() <= o.terms.size() ? o : *this;
      for (auto& [m, c] : small.terms) {
        Poly part;
        for (auto& [mb, cb] : big.terms)
          part.terms.emplace_hint(part.terms.end(), m * mb, c * cb);
        r += part;
      }
      return r;
    }
    std::vector<std::pair<std::uint64_t, Rational>> prod;
    prod.reserve(terms.size() * o.terms.size());
    for (auto& [ma, ca] : terms)
      for (auto& [mb, cb] : o.terms) prod.emplace_back((ma * mb).bits, ca * cb);
    std::sort(prod.begin(), prod.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (size_t i = 0; i < prod.size();) {
      Rational c = std::move(prod[i].second);
      size_t j = i + 1;
      for (; j < prod.size() && prod[j].first == prod[i].first; ++j) c += prod[j].second;
      if (c != 0) r.terms.emplace_hint(r.terms.end(), Mono{prod[i].first}, std::move(c));
      i = j;
    }
    return r;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  Poly operator*(const Rational& c) const {
    Poly r;
    if (c == 0) return r;
    for (auto& [m, cc] : terms) r.terms.emplace(m, cc * c);
    return r;
  }
  Poly& operator*=(const Rational& c) { return *this = *this * c; }
  Poly operator/(const Rational& c) const {
    if (c == 0) throw std::domain_error("division by zero");
    return *this * (Rational(1) / c);
  }
  bool operator==(const Poly& o) const { return terms == o.terms; }

  int degree(int v) const {
    int d = 0;
    for (auto& [m, c] : terms) d = std::max(d, m.exp(v));
    return d;
  }
  bool involves(int v) const {
    for (auto& [m, c] : terms)
      if (m.exp(v) > 0) return true;
    return false;
  }
  std::vector<int> variables() const {
    std::vector<int> vs;
    for (int v = 0; v < kMaxVars; ++v)
      if (involves(v)) vs.push_back(v);
    return vs;
  }

  // Coefficient of v^k, a polynomial in the remaining variables.
  Poly coeff_of(int v, int k) const {
    Poly r;
    for (auto& [m, c] : terms)
      if (m.exp(v) == k) r.terms.emplace(m.with_exp(v, 0), c);
    return r;
  }

  Poly derivative(int v) const {
    Poly r;
    for (auto& [m, c] : terms) {
      int e = m.exp(v);
      if (e > 0) r.add_term(m.with_exp(v, e - 1), c * e);
    }
    return r;
  }

  // Substitute v -> value (a rational constant).
  Poly eval_var(int v, const Rational& a) const {
    Poly r;
    for (auto& [m, c] : terms) {
      int e = m.exp(v);
      r.add_term(m.with_exp(v, 0), c * pow_rat(a, e));
    }
    return r;
  }

  Rational eval(const std::vector<Rational>& point) const {
    // shared power table: pows[v][e] = point[v]^e
    std::array<std::vector<Rational>, kMaxVars> pows;
    Rational r = 0;
    for (auto& [m, c] : terms) {
      Rational t = c;
      for (int v = 0; v < kMaxVars; ++v) {
        int e = m.exp(v);
        if (e > 0) {
          if (v >= int(point.size())) throw std::invalid_argument("missing evaluation point");
          auto& pw = pows[v];
          if (pw.empty()) pw.push_back(1);
          while (int(pw.size()) <= e) pw.push_back(pw.back() * point[v]);
          t *= pw[e];
        }
      }
      r += t;
    }
    return r;
  }

  // Substitute v -> c*v.
  Poly scale_var(int v, const Rational& c) const {
    Poly r;
    for (auto& [m, cc] : terms) r.add_term(m, cc * pow_rat(c, m.exp(v)));
    return r;
  }

  // Substitute v -> a + u where u is the variable `uvar` (may equal v).
  Poly shift_var(int v, const Rational& a, int uvar) const {
    Poly r;
    for (auto& [m, c] : terms) {
      int e = m.exp(v);
      Mono base = m.with_exp(v, 0);
      // (a+u)^e
      for (int j = 0; j <= e; ++j) {
        Rational coef = c * binomial(e, j) * pow_rat(a, e - j);
        if (coef != 0) r.add_term(base * Mono::var(uvar, j), coef);
      }
    }
    return r;
  }

  // Rename variables: var v -> perm[v] (injective on used variables).
  Poly rename(const std::array<int, kMaxVars>& perm) const {
    Poly r;
    for (auto& [m, c] : terms) {
      Mono nm;
      for (int v = 0; v < kMaxVars; ++v) {
        int e = m.exp(v);
        if (e > 0) nm = nm * Mono::var(perm[v], e);
      }
      r.add_term(nm, c);
    }
    return r;
  }

  // Identify variable v with variable w (v -> w).
  Poly identify(int v, int w) const {
    Poly r;
    for (auto& [m, c] : terms) {
      int e = m.exp(v);
      Mono nm = m.with_exp(v, 0);
      if (e > 0) nm = nm.with_exp(w, nm.exp(w) + e);
      r.add_term(nm, c);
    }
    return r;
  }

  Mono lead_grlex() const {
    if (terms.empty()) throw std::logic_error("lead of zero polynomial");
    auto best = terms.begin();
    for (auto it = terms.begin(); it != terms.end(); ++it)
      if (grlex_less(best->first, it->first)) best = it;
    return best->first;
  }

  std::string str(const std::vector<std::string>& names = {}) const;
};

inline std::string mono_str(const Mono& m, const std::vector<std::string>& names) {
  std::ostringstream os;
  bool first = true;
  for (int v = 0; v < kMaxVars; ++v) {
    int e = m.exp(v);
    if (e == 0) continue;
    if (!first) os << "*";
    first = false;
    if (v < int(names.size()))
      os << names[v];
    else
      os << "z" << (v + 1);
    if (e > 1) os << "^" << e;
  }
  return os.str();
}

inline std::string Poly::str(const std::vector<std::string>& names) const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [m, c] : terms) {
    std::string ms = mono_str(m, names);
    if (first) {
      first = false;
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    Rational a = c < 0 ? Rational(-c) : c;
    if (ms.empty())
      os << a.str();
    else if (a == 1)
      os << ms;
    else
      os << a.str() << "*" << ms;
  }
  return os.str();
}

// Exact division with remainder test: returns true and sets q if d | n.
// d must have an invertible (+-1 rational) graded-lex leading coefficient,
// which holds for every denominator atom.
bool try_divide(const Poly& n, const Poly& d, Poly& q);

}  // namespace rtr

#endif
