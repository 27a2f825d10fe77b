#ifndef RTR_WKB_HPP
#define RTR_WKB_HPP

#include "rtr/bps.hpp"

namespace rtr {

struct NonvanishingResidue : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Coefficients of the operator (hbar s)^2 d^2/dx^2 - (Q0 + hbar Q1 + hbar^2 Q2),
// composed onto the curve's uniformizing coordinate.
struct QuantumCurve {
  FactoredRational q0, q1, q2;
  Rational nu;
};

QuantumCurve quantum_curve(const CurveModel& c);
QuantumCurve quantum_curve(const CurveModel& c, const Rational& nu);

// Truncated expansion T = sum_{k >= -1} hbar^k T_k(z) of the log-derivative
// of a solution; derivatives are taken in x through the chain rule.
struct TSeries {
  int K = 0;
  std::vector<FactoredRational> entries;  // index k+1 holds T_k
  const FactoredRational& at(int k) const { return entries.at(size_t(k + 1)); }
};

TSeries riccati(const QuantumCurve& qc, const CurveModel& c, int K);

// Entrywise (T_k - T_k o sigma)/2, anti-invariant by construction.
TSeries t_odd(const TSeries& ts, const CurveModel& c);

// Coefficients V_k for k = 1..K of the regularized integral between the
// two labeled poles; [k-1] holds V_k.
std::vector<Rational> voros_path(const TSeries& odd, const CurveModel& c, int K);

// Loop coefficients: every term is a multiple of Pi (pi*i kept formal).
struct CycleLoop {
  Rational hbar_m1_pi;
  Rational hbar0_pi;
};
CycleLoop voros_cycle(const TSeries& odd, const CurveModel& c);

// The shift of the pole weight by twice the squared deformation parameter
// changes the path coefficients by the expansion of an explicit log; exact
// through order K.
bool contiguity_check(const CurveModel& c, int K);

// Path coefficients against the shifted-free-energy combination, exact
// through order K with the log parts cancelling identically.
bool difference_relation_check(OmegaTable& t, int K);

// Four-term mass-shift difference of the total free energy against the
// explicit log right side, exact through order K.
bool f_difference_equation_check(OmegaTable& t, int K);

}  // namespace rtr

#endif
