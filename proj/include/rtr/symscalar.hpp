#ifndef RTR_SYMSCALAR_HPP
#define RTR_SYMSCALAR_HPP

#include <map>
#include <sstream>
#include <utility>

#include "rtr/rational.hpp"

namespace rtr {

// Element of Q[L, P]: L and P are formal commuting symbols standing for
// log(m0) and pi*i. Keeping them formal preserves exactness; identities
// that require them to cancel are asserted as vanishing coefficients.
struct SymbolicScalar {
  // (L power, P power) -> coefficient
  std::map<std::pair<int, int>, Rational> terms;

  SymbolicScalar() = default;
  explicit SymbolicScalar(const Rational& q) {
    if (q != 0) terms[{0, 0}] = q;
  }
  static SymbolicScalar sym_L() {
    SymbolicScalar s;
    s.terms[{1, 0}] = 1;
    return s;
  }
  static SymbolicScalar sym_Pi() {
    SymbolicScalar s;
    s.terms[{0, 1}] = 1;
    return s;
  }
  static SymbolicScalar monom(int lpow, int ppow, const Rational& q) {
    SymbolicScalar s;
    if (q != 0) s.terms[{lpow, ppow}] = q;
    return s;
  }

  bool is_zero() const { return terms.empty(); }
  Rational coeff(int lpow, int ppow) const {
    auto it = terms.find({lpow, ppow});
    return it == terms.end() ? Rational(0) : it->second;
  }
  bool is_rational() const {
    return terms.empty() || (terms.size() == 1 && terms.begin()->first == std::make_pair(0, 0));
  }
  Rational rational_value() const {
    if (terms.empty()) return 0;
    if (!is_rational()) throw std::logic_error("symbolic scalar is not a plain rational");
    return terms.begin()->second;
  }

  void add(int lpow, int ppow, const Rational& q) {
    if (q == 0) return;
    auto key = std::make_pair(lpow, ppow);
    auto it = terms.find(key);
    if (it == terms.end()) {
      terms.emplace(key, q);
    } else {
      it->second += q;
      if (it->second == 0) terms.erase(it);
    }
  }

  SymbolicScalar operator+(const SymbolicScalar& o) const {
    SymbolicScalar r = *this;
    for (auto& [k, q] : o.terms) r.add(k.first, k.second, q);
    return r;
  }
  SymbolicScalar operator-(const SymbolicScalar& o) const {
    SymbolicScalar r = *this;
    for (auto& [k, q] : o.terms) r.add(k.first, k.second, -q);
    return r;
  }
  SymbolicScalar operator-() const { return SymbolicScalar() - *this; }
  SymbolicScalar& operator+=(const SymbolicScalar& o) { return *this = *this + o; }
  SymbolicScalar& operator-=(const SymbolicScalar& o) { return *this = *this - o; }
  SymbolicScalar operator*(const SymbolicScalar& o) const {
    SymbolicScalar r;
    for (auto& [ka, qa] : terms)
      for (auto& [kb, qb] : o.terms) r.add(ka.first + kb.first, ka.second + kb.second, qa * qb);
    return r;
  }
  SymbolicScalar operator*(const Rational& q) const {
    SymbolicScalar r;
    if (q == 0) return r;
    for (auto& [k, c] : terms) r.terms.emplace(k, c * q);
    return r;
  }
  SymbolicScalar operator/(const Rational& q) const { return *this * (Rational(1) / q); }
  bool operator==(const SymbolicScalar& o) const { return terms == o.terms; }

  // Drop every term containing L (used to check L-cancellation).
  SymbolicScalar coeff_L(int lpow) const {
    SymbolicScalar r;
    for (auto& [k, q] : terms)
      if (k.first == lpow) r.add(0, k.second, q);
    return r;
  }
  bool has_L() const {
    for (auto& [k, q] : terms)
      if (k.first != 0) return true;
    return false;
  }
  bool has_Pi() const {
    for (auto& [k, q] : terms)
      if (k.second != 0) return true;
    return false;
  }

  std::string str() const {
    if (terms.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [k, q] : terms) {
      if (!first) os << " + ";
      first = false;
      os << q.str();
      if (k.first > 0) os << "*L" << (k.first > 1 ? "^" + std::to_string(k.first) : "");
      if (k.second > 0) os << "*Pi" << (k.second > 1 ? "^" + std::to_string(k.second) : "");
    }
    return os.str();
  }
};

}  // namespace rtr

#endif
