#include "rtr/bps.hpp"

#include <cstdlib>
#include <set>

namespace rtr {

namespace {

// Truncated power series in w, stored as coefficients of w^0..w^K.
using Series = std::vector<Rational>;

Series mul_trunc(const Series& a, const Series& b) {
  size_t K = a.size();
  Series out(K, 0);
  for (size_t i = 0; i < K; ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; i + j < K; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

Series inv_trunc(const Series& a) {
  size_t K = a.size();
  if (a[0] == 0) throw std::invalid_argument("series not invertible");
  Series out(K, 0);
  out[0] = 1 / a[0];
  for (size_t k = 1; k < K; ++k) {
    Rational acc = 0;
    for (size_t j = 1; j <= k; ++j) acc += a[j] * out[k - j];
    out[k] = -acc / a[0];
  }
  return out;
}

Series exp_trunc(const Rational& x, size_t K) {
  Series out(K, 0);
  out[0] = 1;
  for (size_t k = 1; k < K; ++k) out[k] = out[k - 1] * x / long(k);
  return out;
}

Rational symmetrized(const LaurentPolyInt& w, int n) { return rat(w.at(n) + w.at(-n)); }

}  // namespace

Rational bernoulli(int N, int k, const Rational& x, const std::vector<Rational>& a) {
  if (N < 1 || int(a.size()) != N) throw std::invalid_argument("need N periods");
  if (k < 0) throw std::invalid_argument("negative coefficient index");
  for (auto& ai : a)
    if (ai == 0) throw std::invalid_argument("zero period");
  size_t K = size_t(k) + 1;
  // (e^{aw} - 1)/w is a unit; dividing out one factor of w per period
  // cancels the w^N prefactor exactly.
  Series f = exp_trunc(x, K);
  for (auto& ai : a) {
    Series u(K, 0);
    Rational p = 1;  // a^{j+1} / (j+1)!
    for (size_t j = 0; j < K; ++j) {
      p = p * ai / long(j + 1);
      u[j] = p;
    }
    f = mul_trunc(f, inv_trunc(u));
  }
  Rational fact = 1;
  for (int j = 2; j <= k; ++j) fact *= j;
  return f[size_t(k)] * fact;
}

RefinedBPSStructure bps_structure(const CurveModel& c) {
  RefinedBPSStructure b;
  b.s = c.params.s;
  if (c.name == CurveName::Airy || c.name == CurveName::DegenerateBessel) return b;
  b.rank = 1;
  LaurentPolyInt w;
  if (c.name == CurveName::Weber)
    w.coef[0] = 1;
  else {
    w.coef[1] = 1;
    w.coef[-1] = 1;
  }
  Rational zc = c.params.mu * c.Q / 2;
  for (int sign : {1, -1}) {
    BpsClass cl;
    cl.label = sign;
    cl.zhat = sign * c.m;
    cl.zcheck = sign * zc;
    cl.omega = w;  // the invariant is attached to the pair, not reflected
    cl.nu = sign * c.nu;
    cl.pairing = sign;
    b.active.push_back(cl);
  }
  return b;
}

FreeEnergyRecord closed_form_F(const RefinedBPSStructure& b, int g2) {
  if (g2 < 3) throw UnstableRequest("closed form covers 2g >= 3");
  FreeEnergyRecord out;
  out.g2 = g2;
  out.provenance = FreeEnergyRecord::Provenance::BpsFormula;
  Rational Q = b.Q();
  std::vector<Rational> periods{b.s, -1 / b.s};
  Rational denom = rat(2) * g2 * (g2 - 1) * (g2 - 2);
  Rational sign = (g2 % 2 == 0) ? rat(1) : rat(-1);
  Rational acc = 0;
  for (auto& cl : b.active) {
    for (auto& [n, c] : cl.omega.coef) {
      if (c == 0) continue;
      Rational arg = Q / 2 + cl.zcheck + n * Q / 2;
      acc += bernoulli(2, g2, arg, periods) / denom * c * pow_rat(cl.zhat, 2 - g2);
    }
  }
  out.value = sign * acc;
  return out;
}

Rational closed_form_Vk(const RefinedBPSStructure& b, int k) {
  if (k < 1) throw std::invalid_argument("coefficient index starts at 1");
  Rational Q = b.Q();
  std::vector<Rational> periods{b.s};
  Rational sign = (k % 2 == 0) ? rat(-1) : rat(1);
  Rational acc = 0;
  for (auto& cl : b.active) {
    for (auto& [n, c] : cl.omega.coef) {
      if (c == 0) continue;
      Rational arg = b.s / 2 - cl.nu / (2 * b.s) + cl.zcheck + n * Q / 2;
      acc += cl.pairing * c * bernoulli(1, k + 1, arg, periods) / (rat(k) * (k + 1)) *
             pow_rat(cl.zhat, -k);
    }
  }
  return sign / 2 * acc;
}

CycleVoros cycle_voros(const RefinedBPSStructure& b, const CurveModel& c, int label) {
  if (b.rank == 0) throw std::logic_error("no cycle on a massless curve");
  CycleVoros v;
  v.hbar_m1_pi = 2 * c.m / b.s;
  v.hbar0_plain = c.Q * c.params.mu / (2 * b.s);
  v.hbar0_pi = -c.nu / (b.s * b.s);
  return label == 1 ? v : -v;
}

RefinedBPSStructure with_replaced_omega(const RefinedBPSStructure& b, const LaurentPolyInt& rep) {
  RefinedBPSStructure out = b;
  for (auto& cl : out.active) cl.omega = rep;
  return out;
}

bool ambiguity_check(const RefinedBPSStructure& b, const LaurentPolyInt& rep) {
  const LaurentPolyInt& orig = b.plus_class().omega;
  std::set<int> support;
  for (auto& [n, c] : orig.coef) support.insert(std::abs(n));
  for (auto& [n, c] : rep.coef) support.insert(std::abs(n));
  bool sums_match = true;
  for (int n : support)
    if (symmetrized(orig, n) != symmetrized(rep, n)) sums_match = false;
  RefinedBPSStructure rb = with_replaced_omega(b, rep);
  bool energies_match = true;
  for (int g2 = 3; g2 <= 6; ++g2)
    if (closed_form_F(b, g2).value != closed_form_F(rb, g2).value) energies_match = false;
  return sums_match == energies_match;
}

}  // namespace rtr
