#pragma once

// Ramification divisor Z of the classifying morphism, as the zero divisor of
// the first transvectant W of (g4, g6).

#include <string>
#include <vector>

#include "torelli_lab/surface.hpp"

namespace torelli {

struct RamificationDivisor {
  DivisorP1 divisor;
  RationalForm form;  // W, degree 10 dL - 2
  int total_degree = 0;
};

// W = Jacobian determinant of (g4, g6). Throws DomainError ("isotrivial or
// degenerate family") when W vanishes identically.
RationalForm ramification_form(const WeierstrassSurface& s);

RamificationDivisor ramification_divisor(const WeierstrassSurface& s);

struct GeneralityReport {
  bool all_I1 = false;                // (a)
  bool z_reduced = false;             // (b) W squarefree
  bool z_disjoint_from_delta = false;  // (c) gcd(W, discriminant) constant
  std::vector<std::string> warnings;

  bool general() const { return all_I1 && z_reduced && z_disjoint_from_delta; }
  std::vector<std::string> failed_clauses() const;
};

GeneralityReport is_general(const WeierstrassSurface& s);

struct SchottkyDegrees {
  int deg_z = 0;                // 10 (h - 1) - 9 (2q - 2), class 10H - 9K_C
  int deg_10L_plus_K = 0;       // 10 (h + 1 - q) + 2q - 2
  int ramification_degree = 0;  // degree of W, or -1 when not computed
  bool consistent() const {
    return deg_z == deg_10L_plus_K &&
           (ramification_degree < 0 || ramification_degree == deg_z);
  }
};

// Pure degree bookkeeping on h (q = 0).
SchottkyDegrees schottky_degrees(int h);
bool schottky_degree_check(const WeierstrassSurface& s);

}  // namespace torelli
