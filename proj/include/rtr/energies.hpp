#ifndef RTR_ENERGIES_HPP
#define RTR_ENERGIES_HPP

#include "rtr/recursion.hpp"

namespace rtr {

// An iterated primitive picked up a genuine log term, i.e. the input had
// a nonzero residue where none is allowed.
struct UnexpectedLogPart : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalar of the form value + log_coeff * log(m0). Stable entries are
// always log-free; the unstable closed forms are not.
struct FreeEnergyRecord {
  enum class Provenance { Recursion, ClosedForm, BpsFormula };
  int g2 = 0;
  Rational value;
  Rational log_coeff;
  Provenance provenance = Provenance::Recursion;

  bool same_scalar(const FreeEnergyRecord& o) const {
    return value == o.value && log_coeff == o.log_coeff;
  }
};

// F_g for 2g = g2 >= 3 from the residue pairing of omega_{g,1} against
// the primitive of y dx.
FreeEnergyRecord free_energy_stable(OmegaTable& t, int g2);

// The closed-form unstable energies, g2 in {0, 1, 2}. Zero for the two
// massless curves.
FreeEnergyRecord free_energy_unstable(const CurveModel& c, int g2);

// Iterated integral of omega_{g,n} along the path between the two
// labeled poles, in every slot. Throws UnexpectedLogPart if any
// intermediate primitive needs a log, PoleAtEndpoint if an endpoint
// limit diverges.
Rational alpha_integral(OmegaTable& t, int g2, int n);

// The n = 1 integral against the mass-degree of F_g: checks
// integral(omega_{g,1}) == (2 - 2g) F_g / m0 exactly.
bool variational_check(OmegaTable& t, int g2);

}  // namespace rtr

#endif
