#pragma once

// Weierstrass models y^2 = 4x^3 - g4 x - g6 of Jacobian elliptic surfaces
// over P^1, with g4, g6 binary forms of degrees 4 dL and 6 dL.

#include <cstdint>
#include <vector>

#include "torelli_lab/binform.hpp"

namespace torelli {

struct Invariants {
  int h = 0;    // geometric genus
  int q = 0;    // irregularity (genus of the base)
  int chi = 0;  // h + 1 - q = deg L
  int N = 0;    // 10h + 8(1 - q) = deg Z = h^{1,1}_prim
  int c2 = 0;   // 12 chi
  int deg_phi = 0;              // 24 chi
  int deg_canonical_curve = 0;  // h + q - 1
  bool inequality_gate = false;  // 8h > 10(q - 1)
  bool genus_bound = false;      // h >= q + 3

  int h11() const { return N + 2; }
};

Invariants invariants_for(int h, int q = 0);

class WeierstrassSurface {
 public:
  // Throws DomainError unless deg g4 = 4 dL, deg g6 = 6 dL and dL >= 1;
  // q != 0 is rejected as unimplemented.
  WeierstrassSurface(int dL, RationalForm g4, RationalForm g6, int q = 0);

  int q() const { return q_; }
  int dL() const { return dL_; }
  int h() const { return dL_ - 1 + q_; }
  const RationalForm& g4() const { return g4_; }
  const RationalForm& g6() const { return g6_; }

  bool operator==(const WeierstrassSurface&) const = default;

 private:
  int q_;
  int dL_;
  RationalForm g4_;
  RationalForm g6_;
};

Invariants invariants(const WeierstrassSurface& s);

// g4^3 - 27 g6^2, degree 12 dL. Throws DomainError when identically zero.
RationalForm discriminant(const WeierstrassSurface& s);

enum class KodairaKind { I_n, additive_other };

struct FiberEntry {
  ProjectivePointP1 point;
  int delta_val = 0;         // order of vanishing of the discriminant
  bool g4_val_zero = false;  // g4 vanishes at the point
  KodairaKind kodaira = KodairaKind::I_n;
  int n() const { return kodaira == KodairaKind::I_n ? delta_val : 0; }
};

struct FiberReport {
  std::vector<FiberEntry> fibers;
  bool all_I1 = false;
  int I2_count = 0;
  int total_delta() const;
};

FiberReport classify_fibers(const WeierstrassSurface& s);

// Random integer coefficients in [-20, 20] with nonzero top coefficient,
// redrawn until the surface is general (all fibers I1, ramification
// reduced and disjoint from the discriminant). Deterministic in the seed.
WeierstrassSurface make_random_general(int h, std::uint64_t seed);

// Surface with I2 fibers over the given distinct affine points (at most 4):
// local jets a0 = 3s^2, b0 = s^3, b1 = a1 s / 2 at each point, completed by
// Hermite interpolation plus random fill, and redrawn until the
// discriminant vanishes to order exactly 2 at every point.
WeierstrassSurface make_with_I2(int h, const std::vector<ExactRational>& points,
                                std::uint64_t seed);

inline constexpr int kRejectionBudget = 1000;

}  // namespace torelli
