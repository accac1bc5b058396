#pragma once

// Forward model: canonical-curve evaluation vectors x_a and a synthetic
// presentation of the infinitesimal period data as the N-dimensional
// subspace of C^h (x) C^N spanned by lambda_a x_a y_a^T, hidden behind a
// random change of basis.

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "torelli_lab/numlin.hpp"
#include "torelli_lab/surface.hpp"

namespace torelli {

// Unit norm, first nonzero entry real and positive.
CVector normalize_projective(CVector v);

// sin of the principal angle between the lines spanned by a and b.
double chordal_distance(const CVector& a, const CVector& b);

struct EmbeddedPoint {
  ProjectivePointP1 base_point;
  CVector x;  // normalized (Z0^{h-1}, Z0^{h-2} Z1, ..., Z1^{h-1})
};

// Image of a on the rational normal curve of degree h - 1 in P^{h-1}.
EmbeddedPoint canonical_point(const ProjectivePointP1& a, int h);

struct IVHSPresentation {
  int h = 0;
  int N = 0;
  std::vector<CMatrix> basis;  // N matrices, each h x N
  std::optional<CMatrix> gram;  // modeled intersection form on the y-frame
};

struct GroundTruth {
  std::vector<EmbeddedPoint> points;
  CVector lambdas;
  CMatrix y_frame;  // N x N unitary, column k is y_k
  CMatrix mixer;    // N x N invertible
};

struct SynthesisOptions {
  double lambda_min = 0.1;
  double lambda_max = 10.0;
  double mixer_cond = 100.0;
  bool with_gram = true;
  // Seed of the y-frame. synthesize() fixes it from the surface, so that the
  // span depends on the surface alone; unset means "draw from the seed".
  std::optional<std::uint64_t> frame_seed;
};

// basis_j = sum_k mixer(j, k) lambda_k x_k y_k^T.
IVHSPresentation assemble_presentation(const std::vector<CVector>& xs,
                                       const CMatrix& y_frame,
                                       const CVector& lambdas,
                                       const CMatrix& mixer);

// Random lambdas, unitary frame and mixer drawn from the seed, applied to
// the given embedded points.
std::pair<IVHSPresentation, GroundTruth> synthesize_from_points(
    std::vector<EmbeddedPoint> points, int h, std::uint64_t seed,
    const SynthesisOptions& opts = {});

// Requires a general surface (reduced Z of N = 10h + 8 distinct points).
// The y-frame is fixed by the surface unless opts.frame_seed is set; the seed
// drives lambdas and the mixer.
std::pair<IVHSPresentation, GroundTruth> synthesize(
    const WeierstrassSurface& s, std::uint64_t seed,
    const SynthesisOptions& opts = {});

// Stack of flattened basis matrices as columns, (h N) x N.
CMatrix flatten(const IVHSPresentation& w);

// Throws DomainError unless shapes match and the basis is independent
// (sigma_min > 1e-10 sigma_max of the flattened stack).
void validate_presentation(const IVHSPresentation& w);

// sin of the largest principal angle between the two spans.
double subspace_distance(const IVHSPresentation& a, const IVHSPresentation& b);

// Haar-like random unitary and a random matrix with condition number at
// most cond; both deterministic in the generator state.
CMatrix random_unitary(std::uint64_t seed, Eigen::Index n);
CMatrix random_conditioned(std::uint64_t seed, Eigen::Index n, double cond);

}  // namespace torelli
