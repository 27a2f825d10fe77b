#ifndef RTR_BPS_HPP
#define RTR_BPS_HPP

#include "rtr/energies.hpp"

namespace rtr {

// Finitely supported integer Laurent polynomial, indexed by the power n.
struct LaurentPolyInt {
  std::map<int, long> coef;

  long at(int n) const {
    auto it = coef.find(n);
    return it == coef.end() ? 0 : it->second;
  }
  LaurentPolyInt reflected() const {
    LaurentPolyInt r;
    for (auto& [n, c] : coef) r.coef[-n] = c;
    return r;
  }
  bool operator==(const LaurentPolyInt& o) const { return coef == o.coef; }
};

// One active charge, stored with its central charges reduced by 2*pi*i.
struct BpsClass {
  int label = 1;    // +1 for gamma, -1 for -gamma
  Rational zhat;    // classical central charge / 2 pi i
  Rational zcheck;  // quantum correction / 2 pi i
  LaurentPolyInt omega;
  Rational nu;
  int pairing = 0;  // intersection with the path alpha
};

struct RefinedBPSStructure {
  int rank = 0;
  Rational s = 1;
  std::vector<BpsClass> active;

  Rational Q() const { return s - 1 / s; }
  const BpsClass& plus_class() const {
    for (auto& c : active)
      if (c.label == 1) return c;
    throw std::logic_error("structure has no active classes");
  }
};

RefinedBPSStructure bps_structure(const CurveModel& c);

// Multiple Bernoulli value B_{N,k}(x | a_1..a_N): k! times the w^k
// coefficient of w^N e^{xw} / prod_i (e^{a_i w} - 1).
Rational bernoulli(int N, int k, const Rational& x, const std::vector<Rational>& a);

// Free energy assembled from the charge data; zero for rank 0.
FreeEnergyRecord closed_form_F(const RefinedBPSStructure& b, int g2);

// k-th coefficient of the path Voros series from the charge data.
Rational closed_form_Vk(const RefinedBPSStructure& b, int k);

// The cycle Voros series terminates after the hbar^0 term; Pi stands for
// the formal (pi i) and is kept as a separate coefficient.
struct CycleVoros {
  Rational hbar_m1_pi;  // coefficient of Pi / hbar
  Rational hbar0_plain;
  Rational hbar0_pi;  // coefficient of Pi at hbar^0

  CycleVoros operator-() const { return {-hbar_m1_pi, -hbar0_plain, -hbar0_pi}; }
};

CycleVoros cycle_voros(const RefinedBPSStructure& b, const CurveModel& c, int label = 1);

// Replace omega of both classes by rep. The free energies may only
// depend on omega through the symmetrized values; returns true iff "rep
// preserves Omega_n + Omega_-n for all n" and "closed_form_F unchanged
// for g2 in {3..6}" have the same truth value.
bool ambiguity_check(const RefinedBPSStructure& b, const LaurentPolyInt& rep);

RefinedBPSStructure with_replaced_omega(const RefinedBPSStructure& b, const LaurentPolyInt& rep);

}  // namespace rtr

#endif
