#include "rtr/poly.hpp"

namespace rtr {

// Long division by graded-lex leading-term reduction. With a single divisor
// the zero-remainder test is exact: d | n iff the remainder vanishes.
bool try_divide(const Poly& n, const Poly& d, Poly& q) {
  if (d.is_zero()) throw std::domain_error("division by zero polynomial");
  q = Poly();
  if (n.is_zero()) return true;
  Mono dl = d.lead_grlex();
  Rational dc = d.terms.at(dl);
  Poly r = n;
  while (!r.is_zero()) {
    Mono rl = r.lead_grlex();
    // divisibility of monomials
    Mono qm;
    bool ok = true;
    std::uint64_t bits = 0;
    for (int v = 0; v < kMaxVars; ++v) {
      int e = rl.exp(v) - dl.exp(v);
      if (e < 0) {
        ok = false;
        break;
      }
      bits |= std::uint64_t(e) << (8 * v);
    }
    if (!ok) return false;
    qm.bits = bits;
    Rational qc = r.terms.at(rl) / dc;
    q.add_term(qm, qc);
    for (auto& [m, c] : d.terms) r.add_term(m * qm, -c * qc);
  }
  return true;
}

}  // namespace rtr
