#include "torelli_lab/ramlocus.hpp"

namespace torelli {

RationalForm ramification_form(const WeierstrassSurface& s) {
  RationalForm w = transvectant_first(s.g4(), s.g6());
  if (w.is_zero()) {
    throw DomainError("isotrivial or degenerate family: the transvectant of "
                      "(g4, g6) vanishes identically");
  }
  return w;
}

RamificationDivisor ramification_divisor(const WeierstrassSurface& s) {
  RamificationDivisor z;
  z.form = ramification_form(s);
  if (z.form.degree() != 10 * s.dL() - 2) {
    throw NumericalError("ramification form has the wrong degree");
  }
  z.divisor = roots_projective(z.form);
  z.total_degree = z.divisor.degree();
  if (z.total_degree != z.form.degree()) {
    throw NumericalError("root multiplicities do not sum to deg W");
  }
  return z;
}

std::vector<std::string> GeneralityReport::failed_clauses() const {
  std::vector<std::string> out;
  if (!all_I1) out.emplace_back("a");
  if (!z_reduced) out.emplace_back("b");
  if (!z_disjoint_from_delta) out.emplace_back("c");
  return out;
}

GeneralityReport is_general(const WeierstrassSurface& s) {
  GeneralityReport r;
  const RationalForm delta =
      power(s.g4(), 3) - ExactRational(27) * power(s.g6(), 2);
  const RationalForm w = transvectant_first(s.g4(), s.g6());
  if (delta.is_zero()) {
    r.warnings.emplace_back("discriminant vanishes identically");
    return r;
  }
  if (w.is_zero()) {
    r.warnings.emplace_back("transvectant vanishes identically (isotrivial)");
    r.all_I1 = form_is_squarefree(delta) && !s.g4().is_zero() &&
               forms_are_coprime(delta, s.g4());
    return r;
  }
  const bool g4_clear = !s.g4().is_zero() && forms_are_coprime(delta, s.g4());
  r.all_I1 = form_is_squarefree(delta) && g4_clear;
  r.z_reduced = form_is_squarefree(w);
  r.z_disjoint_from_delta = forms_are_coprime(w, delta);
  if (!g4_clear && !r.z_disjoint_from_delta) {
    r.warnings.emplace_back(
        "g4 and the discriminant share a zero; multiplicities of Z there are "
        "taken from W and not independently verified");
  }
  return r;
}

SchottkyDegrees schottky_degrees(int h) {
  const int q = 0;
  const int deg_h = h + q - 1;     // hyperplane class L + K_C on C
  const int deg_k = 2 * q - 2;     // K_C
  SchottkyDegrees d;
  d.deg_z = 10 * deg_h - 9 * deg_k;
  d.deg_10L_plus_K = 10 * (h + 1 - q) + deg_k;
  d.ramification_degree = -1;
  return d;
}

bool schottky_degree_check(const WeierstrassSurface& s) {
  SchottkyDegrees d = schottky_degrees(s.h());
  d.ramification_degree = ramification_divisor(s).total_degree;
  return d.consistent() && d.deg_z == invariants(s).N;
}

}  // namespace torelli
