#ifndef RTR_RECURSION_HPP
#define RTR_RECURSION_HPP

#include <map>

#include "rtr/curves.hpp"

namespace rtr {

struct UnstableRequest : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Working variable used for the residue integrations.
constexpr int kWork = kMaxVars - 1;

// Residue at infinity computed through the global residue theorem: minus
// the sum of residues at every finite/parametric pole. Works even when
// the direct v -> 1/v substitution would leave the denominator atom set
// (v + w atoms).
FactoredRational residue_at_infinity_via_sum(const FactoredRational& f, int var);

// Coefficient of u^k of the product of the factors, each expanded locally
// at the point. Avoids ever combining the factors over a common
// denominator; the factor series are convolved instead.
FactoredRational product_series_coeff(const std::vector<const FactoredRational*>& fs, int var,
                                      const Point& pt, int k);

// Residue of (prod fs) d(var) at a finite or parametric point.
FactoredRational product_residue_at(const std::vector<const FactoredRational*>& fs, int var,
                                    const Point& pt);

// Residue of the product at infinity: through v -> 1/v when every factor
// admits the substitution, otherwise minus the sum over all other poles.
FactoredRational product_residue_at_infinity(const std::vector<const FactoredRational*>& fs,
                                             int var, bool can_invert);

// Residue of (Taylor branch of log z) * f at the point, with the constant
// term of the log expansion dropped. Only valid where dropping it is
// harmless (the caller pairs it with residue-free forms).
FactoredRational residue_log_times(const FactoredRational& f, int var, const Point& pt);

// Memo table of recursion outputs. Bodies are stored in variables
// 0..n-1 with the differentials implicit.
class OmegaTable {
 public:
  explicit OmegaTable(const CurveModel& c) : curve(c) {}

  const CurveModel curve;

  // body of omega_{g,n} with 2g = g2, in variables 0..n-1
  const FactoredRational& omega(int g2, int n);

  bool computed(int g2, int n) const { return memo.count({g2, n}) > 0; }

  // memo body with variable i renamed to vars[i]
  FactoredRational body_renamed(int g2, int n, const std::vector<int>& vars);

  // Rec assembled at integration variable p with marked points jvars;
  // scratch must be a variable unused by p/jvars/results.
  FactoredRational rec_term(int g2, const std::vector<int>& jvars, int p, int scratch);

  // The same sum kept as a list of multiplicative factor groups, so
  // residues can be taken product by product.
  std::vector<std::vector<FactoredRational>> rec_products(int g2, const std::vector<int>& jvars,
                                                          int p, int scratch);

  // pullback bidifferential dx(p)dx(q)/(x(p)-x(q))^2 body
  FactoredRational rec_bidiff(int p, int q) const;

  // residue of the one-form f(var) dvar at pt, routing infinity through
  // the curve-appropriate method
  FactoredRational residue(const FactoredRational& f, int var, const Point& pt) const;

 private:
  std::map<std::pair<int, int>, FactoredRational> memo;
  FactoredRational compute(int g2, int n);
};

// Verifies the global loop equation for the entry (g2, ntot), ntot >= 2.
bool loop_eq_check(OmegaTable& t, int g2, int ntot);

// Verifies the dilaton-type inversion: (2g+n-2) omega_{g,n} recovered
// from Phi-weighted residues of omega_{g,n+1}.
bool dilaton_check(OmegaTable& t, int g2, int ntot);

// Homogeneity law under variable scaling for the two parameter-free
// curves.
bool scaling_check_airy_dbes(OmegaTable& t, int g2, int ntot, const Rational& c);

// Body is symmetric under every transposition of its n variables.
bool symmetry_ok(const FactoredRational& body, int n);

// Denominator atoms lie in the permitted pole locus: effective
// ramification points and images z_i = sigma(z_j).
bool pole_locus_ok(const CurveModel& c, const FactoredRational& body);

// Residue of the body vanishes in the first variable at every pole
// (stable entries only). With symmetric=true the body is assumed
// symmetric in its variables and one parametric point per atom kind is
// checked.
bool residue_free_ok(const CurveModel& c, const FactoredRational& body, bool symmetric = false);

}  // namespace rtr

#endif
