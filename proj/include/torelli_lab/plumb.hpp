#pragma once

// Exact residue calculus for the plumbing deformation: from the jet
// coefficients b_{m,n} of a 3-form (q + v) sum b_{m,n} q^m v^n dq dv dw,
// compute omega(t) = -1/2 (q + v) sum b_{m,n} q^m v^{n-1} with
// v = q (1 - t q^{-2})^{1/2}, split mod t^2 as omega + t eta, and compare with
// the closed forms
//   omega = -sum b_{m,n} q^{m+n},   eta = sum (2n-1)/4 b_{m,n} q^{m+n-2}.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "torelli_lab/scalar_series.hpp"

namespace torelli {

struct JetCoefficients {
  std::map<std::pair<int, int>, ExactRational> b;  // (m, n) -> b_{m,n}
  int max_order = 6;

  ExactRational at(int m, int n) const;
  // Throws DomainError on negative indices or m + n > max_order.
  void set(int m, int n, const ExactRational& value);
  // Scalar multiple c * b (same max_order).
  JetCoefficients scaled(const ExactRational& c) const;
};

// Entries uniform in [-9, 9] for every m + n <= max_order.
JetCoefficients random_jet(std::uint64_t seed, int max_order = 6);

struct ResiduePair {
  JetSeries omega;
  JetSeries eta;
};

// The substitution chain, computed in exact series arithmetic. The series
// window is [-8, 12]; orders that do not leave slack 2 raise WindowError.
ResiduePair residue_pair(const JetCoefficients& b);

struct ClosedForms {
  JetSeries omega;
  JetSeries eta;
};
ClosedForms closed_forms(const JetCoefficients& b);

struct CheckResult {
  bool pass = true;
  std::optional<int> first_discrepant_exponent;
  std::string detail;
};

CheckResult check_closed_forms(const JetCoefficients& b);

// Coefficient of q^{-2} in eta equals 1/4 omega(a) = -1/4 b_{0,0}.
CheckResult check_leading_term(const JetCoefficients& b);

// Coefficient of q^{-1} in eta; equals (b_{0,1} - b_{1,0}) / 4.
ExactRational residue_coefficient(const JetCoefficients& b);
CheckResult check_residue_law(const JetCoefficients& b);

// eta^{(j)} = omega^{(j)}(a) eta_a with omega^{(j)}(a) = -b^{(j)}_{0,0} and a
// common eta_a, checked exactly. eta_a is taken from the first entry with
// b_{0,0} != 0.
struct ProportionalityResult {
  bool pass = true;
  std::vector<ExactRational> ratios;  // -b^{(j)}_{0,0}
  std::string detail;
};
ProportionalityResult check_eta_proportionality(
    const std::vector<JetCoefficients>& b_list);

}  // namespace torelli
