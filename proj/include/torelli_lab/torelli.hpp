#pragma once

// Recovery of the base curve and ramification divisor from a presentation of
// the infinitesimal period data: extract the rank-one tensors spanning the
// subspace, read off the points x_a in P^{h-1}, and interpolate the quadrics
// through them.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "torelli_lab/ivhs_synth.hpp"

namespace torelli {

struct RankOneFactor {
  CVector x;  // unit, first nonzero entry real-positive
  CVector y;  // unit
  double confidence = 0.0;  // 1 - sigma_2 / sigma_1 of the extracted slice
};

struct ExtractOptions {
  int max_attempts = 10;
  double min_confidence = 0.999;
  double min_relative_gap = 1e-6;  // eigenvalue separation / max |eigenvalue|
  double max_condition = 1e8;      // of the second contraction
};

// Simultaneous diagonalization: contract the h x N x N stack with two random
// covectors on C^h, diagonalize P1 P2^{-1}, and read each rank-one element
// off the inverse eigenvector matrix. Retries with fresh covectors; throws
// NumericalError("degenerate presentation") when attempts run out.
std::vector<RankOneFactor> extract_rank_ones(const IVHSPresentation& w,
                                             std::uint64_t seed,
                                             const ExtractOptions& opts = {});

struct OracleOptions {
  int starts = 200;
  int max_iterations = 60;
  double accept = 1e-8;        // sigma_2 / sigma_1 threshold
  double distinct_tol = 1e-6;  // chordal distance separating solutions
};

// Independent check: Gauss-Newton on the 2x2-minor system of
// sum_j c_j basis_j over random affine charts, from many random starts.
// Limited to matrices with at most 3 rows and at most 6 basis elements.
std::vector<RankOneFactor> rank_one_oracle_bruteforce(
    std::span<const CMatrix> basis, std::uint64_t seed,
    const OracleOptions& opts = {});
std::vector<RankOneFactor> rank_one_oracle_bruteforce(
    const IVHSPresentation& w, std::uint64_t seed = 0x5eed,
    const OracleOptions& opts = {});

// Both sets have the same size and pair up with x and y chordal distances
// below tol.
bool same_factor_set(const std::vector<RankOneFactor>& a,
                     const std::vector<RankOneFactor>& b, double tol);

struct Matching {
  std::vector<int> perm;  // recovered index i matches truth index perm[i]
  double max_chordal = 0.0;
  double mean_chordal = 0.0;
};

// Greedy nearest pairing in chordal distance, refined by pairwise swaps.
Matching match_points(const std::vector<CVector>& recovered,
                      const std::vector<CVector>& truth);

struct RecoveredGeometry {
  std::vector<CVector> z_points;
  std::vector<CMatrix> quadric_basis;  // symmetric h x h
  int quadric_dim = 0;
  double point_residual = 0.0;  // max |x^T Q x| over z_points, ||Q||_F = 1
  std::optional<Matching> match;
};

struct RecoveryOptions {
  double nullspace_tol = 1e-8;
};

inline int expected_quadric_dim(int h) { return (h - 1) * (h - 2) / 2; }

// Degree-2 Veronese evaluations of unit vectors in C^h; monomials x_i x_j
// with i <= j in lexicographic order.
CMatrix veronese2_matrix(const std::vector<CVector>& points);
// x^T Q x / ||Q||_F for unit x.
double quadric_value(const CMatrix& q, const CVector& x);

// Throws StageError("interpolate") when the factor count is not 10h + 8 or
// the quadric space does not have dimension (h-1)(h-2)/2.
RecoveredGeometry recover_geometry(const std::vector<RankOneFactor>& factors,
                                   int h, const RecoveryOptions& opts = {});

struct RoundtripOptions {
  SynthesisOptions synthesis;
  ExtractOptions extract;
  RecoveryOptions recovery;
  double match_threshold = 1e-6;
  int curve_samples = 100;
  bool corrupt_span = false;  // add a random full-rank matrix to basis_0
};

struct RoundtripReport {
  int h = 0;
  int N = 0;
  double max_chordal = 0.0;
  double mean_chordal = 0.0;
  int quadric_dim = 0;
  double residual_max = 0.0;  // recovered quadrics on fresh true-curve samples
  int recovered_deg_L = 0;    // (h - 1) - (2q - 2)
  std::map<std::string, double> stage_timings_ms;
  std::string status = "ok";
  std::vector<CVector> recovered_points;
};

// synthesize -> extract -> interpolate -> match. Stage failures propagate as
// StageError with stage "synthesize", "extract", "interpolate" or "match".
RoundtripReport roundtrip(const WeierstrassSurface& s, std::uint64_t seed,
                          const RoundtripOptions& opts = {});

// Same pipeline starting from an existing presentation and its truth.
RoundtripReport roundtrip_presentation(const IVHSPresentation& w,
                                       const GroundTruth& truth,
                                       std::uint64_t seed,
                                       const RoundtripOptions& opts = {});

}  // namespace torelli
