#ifndef RTR_HBAR_HPP
#define RTR_HBAR_HPP

#include <vector>

#include "rtr/symscalar.hpp"

namespace rtr {

// Formal series in hbar with SymbolicScalar coefficients, exact through
// hbar^K. The lowest order may be -1 (simple poles in hbar occur in the
// cycle periods and the genus-zero part of free-energy series).
struct HbarSeries {
  int kmin = 0;
  int K = -1;  // highest exact order; empty series if K < kmin
  std::vector<SymbolicScalar> c;

  HbarSeries() = default;
  HbarSeries(int kmin_, int K_) : kmin(kmin_), K(K_) {
    if (K >= kmin) c.resize(K - kmin + 1);
  }

  SymbolicScalar coeff(int k) const {
    if (k > K) throw std::logic_error("hbar coefficient beyond truncation");
    if (k < kmin) return SymbolicScalar();
    return c[k - kmin];
  }
  void add(int k, const SymbolicScalar& v) {
    if (k > K) return;  // beyond truncation: dropped
    if (k < kmin) {
      c.insert(c.begin(), kmin - k, SymbolicScalar());
      kmin = k;
    }
    c[k - kmin] += v;
  }

  HbarSeries truncated(int newK) const {
    HbarSeries r(kmin, std::min(K, newK));
    for (int k = r.kmin; k <= r.K; ++k) r.c[k - r.kmin] = coeff(k);
    return r;
  }

  HbarSeries operator+(const HbarSeries& o) const {
    HbarSeries r(std::min(kmin, o.kmin), std::min(K, o.K));
    for (int k = r.kmin; k <= r.K; ++k) {
      SymbolicScalar v;
      if (k >= kmin && k <= K) v += coeff(k);
      if (k >= o.kmin && k <= o.K) v += o.coeff(k);
      r.c[k - r.kmin] = v;
    }
    return r;
  }
  HbarSeries operator-() const {
    HbarSeries r = *this;
    for (auto& v : r.c) v = -v;
    return r;
  }
  HbarSeries operator-(const HbarSeries& o) const { return *this + (-o); }
  HbarSeries operator*(const HbarSeries& o) const {
    // truncation: product exact through min over cross terms
    int rkmin = kmin + o.kmin;
    int rK = std::min(K + o.kmin, o.K + kmin);
    HbarSeries r(rkmin, rK);
    for (int i = kmin; i <= K; ++i)
      for (int j = o.kmin; j <= o.K; ++j) {
        if (i + j > rK) continue;
        r.c[i + j - rkmin] += coeff(i) * o.coeff(j);
      }
    return r;
  }
  HbarSeries operator*(const SymbolicScalar& s) const {
    HbarSeries r = *this;
    for (auto& v : r.c) v = v * s;
    return r;
  }
  HbarSeries operator*(const Rational& q) const { return *this * SymbolicScalar(q); }

  // hbar^p shift
  HbarSeries shifted(int p) const {
    HbarSeries r = *this;
    r.kmin += p;
    r.K += p;
    return r;
  }

  bool equals_through(const HbarSeries& o, int order) const {
    int lo = std::min(kmin, o.kmin);
    for (int k = lo; k <= order; ++k) {
      SymbolicScalar a = (k <= K) ? coeff(k) : SymbolicScalar();
      SymbolicScalar b = (k <= o.K) ? o.coeff(k) : SymbolicScalar();
      if (!(a == b)) return false;
    }
    return true;
  }

  bool is_zero_through(int order) const {
    for (int k = kmin; k <= std::min(K, order); ++k)
      if (!coeff(k).is_zero()) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (int k = kmin; k <= K; ++k) {
      if (coeff(k).is_zero()) continue;
      if (!s.empty()) s += " + ";
      s += "(" + coeff(k).str() + ")*h^" + std::to_string(k);
    }
    return s.empty() ? "0" : s;
  }
};

// One closed-form term A * hbar^p * m^d * (log m)^logpow, the shape in
// which free energies are known as functions of the mass parameter.
struct ClosedTerm {
  int hbar_pow = 0;
  Rational A;
  long d = 0;      // power of m (may be negative)
  int log_pow = 0; // 0 or 1
};

// Expand sum of terms with m -> m0 - c*hbar as an exact hbar-series
// through order K. log(m0) is carried as the formal symbol L and
// log(1 - c*hbar/m0) as a rational-coefficient series.
inline HbarSeries hbar_compose_shift(const std::vector<ClosedTerm>& F, const Rational& c,
                                     const Rational& m0, int K) {
  if (m0 == 0) throw std::domain_error("mass parameter must be nonzero");
  int kmin = 0;
  for (auto& t : F) kmin = std::min(kmin, t.hbar_pow);
  HbarSeries out(kmin, K);
  Rational u = -c / m0;  // m0 - c*hbar = m0 (1 + u*hbar)
  for (auto& t : F) {
    // (m0 - c h)^d = m0^d sum_k binom(d,k) u^k h^k
    int room = K - t.hbar_pow;
    if (room < 0) continue;
    std::vector<Rational> powser(room + 1);
    Rational uk = 1;
    for (int k = 0; k <= room; ++k) {
      powser[k] = binomial(t.d, k) * uk;
      uk *= u;
    }
    Rational md = pow_rat(m0, t.d);
    if (t.log_pow == 0) {
      for (int k = 0; k <= room; ++k)
        out.add(t.hbar_pow + k, SymbolicScalar(t.A * md * powser[k]));
    } else {
      // log(m0 - c h) = L + log(1 + u h) = L + sum_{j>=1} (-1)^{j+1} u^j h^j / j
      std::vector<SymbolicScalar> logser(room + 1);
      logser[0] = SymbolicScalar::sym_L();
      Rational uj = u;
      for (int j = 1; j <= room; ++j) {
        logser[j] = SymbolicScalar(uj * Rational(j % 2 ? 1 : -1, j));
        uj *= u;
      }
      for (int k = 0; k <= room; ++k)
        for (int j = 0; k + j <= room; ++j)
          out.add(t.hbar_pow + k + j, logser[j] * (t.A * md * powser[k]));
    }
  }
  return out;
}

// Exact hbar-expansion of log(m0 + a*hbar) - has L as its order-0 head.
inline HbarSeries hbar_log_shift(const Rational& a, const Rational& m0, int K) {
  std::vector<ClosedTerm> t{{0, Rational(1), 0, 1}};
  return hbar_compose_shift(t, -a, m0, K);
}

}  // namespace rtr

#endif
