#include "torelli_lab/torelli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numeric>
#include <random>

namespace torelli {
namespace {

CVector gaussian_vector(std::mt19937_64& rng, Eigen::Index n) {
  std::normal_distribution<double> g(0.0, 1.0);
  CVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Best rank-one fit of m as a factor.
RankOneFactor rank_one_fit(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = dec.singularValues();
  RankOneFactor f;
  f.x = normalize_projective(dec.matrixU().col(0));
  f.y = dec.matrixV().col(0).conjugate();
  f.y /= f.y.norm();
  const double s1 = s(0);
  const double s2 = s.size() > 1 ? s(1) : 0.0;
  f.confidence = s1 > 0.0 ? std::clamp(1.0 - s2 / s1, 0.0, 1.0) : 0.0;
  return f;
}

double sigma_ratio(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> dec(m);
  const RVector& s = dec.singularValues();
  if (s.size() < 2) return 0.0;
  return s(0) > 0.0 ? s(1) / s(0) : 1.0;
}

CMatrix contract(const std::vector<CMatrix>& basis, const CVector& u) {
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index cols = basis.front().cols();
  CMatrix p(n, cols);
  for (Eigen::Index j = 0; j < n; ++j) {
    p.row(j) = u.transpose() * basis[static_cast<std::size_t>(j)];
  }
  return p;
}

}  // namespace

std::vector<RankOneFactor> extract_rank_ones(const IVHSPresentation& w,
                                             std::uint64_t seed,
                                             const ExtractOptions& opts) {
  validate_presentation(w);
  if (w.N < 2) throw DomainError("extract_rank_ones needs N >= 2");
  const Eigen::Index n = w.N;
  std::mt19937_64 rng(seed);
  std::string reason = "no attempt made";

  for (int attempt = 0; attempt < opts.max_attempts; ++attempt) {
    const CVector u1 = gaussian_vector(rng, w.h);
    const CVector u2 = gaussian_vector(rng, w.h);
    const CMatrix p1 = contract(w.basis, u1);
    const CMatrix p2 = contract(w.basis, u2);
    if (condition_number(p2) > opts.max_condition) {
      reason = "second contraction ill-conditioned";
      continue;
    }
    // P1 P2^{-1} = M D1 D2^{-1} M^{-1}: eigenvectors are the mixer columns
    const CMatrix a =
        p2.transpose().partialPivLu().solve(p1.transpose()).transpose();
    EigResult eig;
    try {
      eig = eig_general(a);
    } catch (const EigenError&) {
      reason = "eigensolver failed";
      continue;
    }
    double gap = std::numeric_limits<double>::infinity();
    const double scale = eig.values.cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = i + 1; j < n; ++j) {
        gap = std::min(gap, std::abs(eig.values(i) - eig.values(j)));
      }
    }
    if (eig.defective || !(gap > opts.min_relative_gap * scale)) {
      reason = "eigenvalue gap below threshold";
      continue;
    }
    const CMatrix coeffs = eig.vectors.partialPivLu().inverse();
    std::vector<RankOneFactor> factors;
    factors.reserve(static_cast<std::size_t>(n));
    bool confident = true;
    for (Eigen::Index k = 0; k < n; ++k) {
      CMatrix slice = CMatrix::Zero(w.h, w.N);
      for (Eigen::Index j = 0; j < n; ++j) {
        slice += coeffs(k, j) * w.basis[static_cast<std::size_t>(j)];
      }
      factors.push_back(rank_one_fit(slice));
      if (!(factors.back().confidence > opts.min_confidence)) confident = false;
    }
    if (confident) return factors;
    reason = "extracted slices are not rank one";
  }
  throw NumericalError("degenerate presentation: " + reason);
}

std::vector<RankOneFactor> rank_one_oracle_bruteforce(
    std::span<const CMatrix> basis, std::uint64_t seed,
    const OracleOptions& opts) {
  if (basis.empty()) return {};
  const Eigen::Index rows = basis.front().rows();
  const Eigen::Index cols = basis.front().cols();
  const Eigen::Index n = static_cast<Eigen::Index>(basis.size());
  if (rows > 3 || n > 6) {
    throw DomainError("brute-force oracle is limited to h <= 3 and N <= 6");
  }
  for (const auto& b : basis) {
    if (b.rows() != rows || b.cols() != cols) throw DomainError("basis shape mismatch");
  }

  struct Minor { Eigen::Index i, i2, l, l2; };
  std::vector<Minor> minors;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index i2 = i + 1; i2 < rows; ++i2)
      for (Eigen::Index l = 0; l < cols; ++l)
        for (Eigen::Index l2 = l + 1; l2 < cols; ++l2) minors.push_back({i, i2, l, l2});
  const Eigen::Index m = static_cast<Eigen::Index>(minors.size());

  auto combine = [&](const CVector& c) {
    CMatrix a = CMatrix::Zero(rows, cols);
    for (Eigen::Index j = 0; j < n; ++j) a += c(j) * basis[static_cast<std::size_t>(j)];
    return a;
  };

  std::mt19937_64 rng(seed);
  std::vector<CVector> found_coeffs;
  std::vector<RankOneFactor> found;
  for (int start = 0; start < opts.starts; ++start) {
    const CVector chart = gaussian_vector(rng, n);
    CVector c = gaussian_vector(rng, n);
    c /= (chart.transpose() * c).value();
    for (int iter = 0; iter < opts.max_iterations; ++iter) {
      const CMatrix a = combine(c);
      CVector f(m + 1);
      CMatrix jac(m + 1, n);
      for (Eigen::Index r = 0; r < m; ++r) {
        const auto& mi = minors[static_cast<std::size_t>(r)];
        f(r) = a(mi.i, mi.l) * a(mi.i2, mi.l2) - a(mi.i, mi.l2) * a(mi.i2, mi.l);
        for (Eigen::Index j = 0; j < n; ++j) {
          const CMatrix& b = basis[static_cast<std::size_t>(j)];
          jac(r, j) = b(mi.i, mi.l) * a(mi.i2, mi.l2) + a(mi.i, mi.l) * b(mi.i2, mi.l2) -
                      b(mi.i, mi.l2) * a(mi.i2, mi.l) - a(mi.i, mi.l2) * b(mi.i2, mi.l);
        }
      }
      f(m) = (chart.transpose() * c).value() - 1.0;
      jac.row(m) = chart.transpose();
      const CVector step = lstsq(jac, -f);
      c += step;
      if (!c.allFinite()) break;
      if (step.norm() <= 1e-15 * (1.0 + c.norm())) break;
    }
    if (!c.allFinite()) continue;
    const CMatrix a = combine(c);
    if (a.norm() == 0.0 || !(sigma_ratio(a) < opts.accept)) continue;
    const bool duplicate = std::any_of(found_coeffs.begin(), found_coeffs.end(),
                                       [&](const CVector& other) {
                                         return chordal_distance(other, c) < opts.distinct_tol;
                                       });
    if (duplicate) continue;
    found_coeffs.push_back(c);
    found.push_back(rank_one_fit(a));
  }
  return found;
}

std::vector<RankOneFactor> rank_one_oracle_bruteforce(const IVHSPresentation& w,
                                                      std::uint64_t seed,
                                                      const OracleOptions& opts) {
  return rank_one_oracle_bruteforce(std::span<const CMatrix>(w.basis), seed, opts);
}

bool same_factor_set(const std::vector<RankOneFactor>& a,
                     const std::vector<RankOneFactor>& b, double tol) {
  if (a.size() != b.size()) return false;
  std::vector<bool> used(b.size(), false);
  for (const auto& fa : a) {
    bool matched = false;
    for (std::size_t j = 0; j < b.size(); ++j) {
      if (used[j]) continue;
      if (chordal_distance(fa.x, b[j].x) < tol && chordal_distance(fa.y, b[j].y) < tol) {
        used[j] = matched = true;
        break;
      }
    }
    if (!matched) return false;
  }
  return true;
}

Matching match_points(const std::vector<CVector>& recovered,
                      const std::vector<CVector>& truth) {
  if (recovered.size() != truth.size()) {
    throw DomainError("match_points: point counts differ");
  }
  const std::size_t n = recovered.size();
  std::vector<std::vector<double>> d(n, std::vector<double>(n));
  struct Pair { double dist; std::size_t i, j; };
  std::vector<Pair> pairs;
  pairs.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      d[i][j] = chordal_distance(recovered[i], truth[j]);
      pairs.push_back({d[i][j], i, j});
    }
  }
  // ties resolve by index order
  std::stable_sort(pairs.begin(), pairs.end(),
                   [](const Pair& x, const Pair& y) { return x.dist < y.dist; });
  Matching m;
  m.perm.assign(n, -1);
  std::vector<bool> taken(n, false);
  for (const auto& p : pairs) {
    if (m.perm[p.i] < 0 && !taken[p.j]) {
      m.perm[p.i] = static_cast<int>(p.j);
      taken[p.j] = true;
    }
  }
  for (bool improved = true; improved;) {
    improved = false;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = i + 1; k < n; ++k) {
        const auto pi = static_cast<std::size_t>(m.perm[i]);
        const auto pk = static_cast<std::size_t>(m.perm[k]);
        if (std::max(d[i][pk], d[k][pi]) < std::max(d[i][pi], d[k][pk])) {
          std::swap(m.perm[i], m.perm[k]);
          improved = true;
        }
      }
    }
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double v = d[i][static_cast<std::size_t>(m.perm[i])];
    m.max_chordal = std::max(m.max_chordal, v);
    total += v;
  }
  m.mean_chordal = n ? total / static_cast<double>(n) : 0.0;
  return m;
}

CMatrix veronese2_matrix(const std::vector<CVector>& points) {
  if (points.empty()) return CMatrix(0, 0);
  const Eigen::Index h = points.front().size();
  CMatrix v(static_cast<Eigen::Index>(points.size()), h * (h + 1) / 2);
  for (std::size_t r = 0; r < points.size(); ++r) {
    Eigen::Index col = 0;
    for (Eigen::Index i = 0; i < h; ++i) {
      for (Eigen::Index j = i; j < h; ++j) {
        v(static_cast<Eigen::Index>(r), col++) = points[r](i) * points[r](j);
      }
    }
  }
  return v;
}

double quadric_value(const CMatrix& q, const CVector& x) {
  const CVector u = x / x.norm();
  return std::abs((u.transpose() * q * u)(0)) / q.norm();
}

RecoveredGeometry recover_geometry(const std::vector<RankOneFactor>& factors,
                                   int h, const RecoveryOptions& opts) {
  const int n = 10 * h + 8;
  if (static_cast<int>(factors.size()) != n) {
    throw StageError("interpolate", "expected " + std::to_string(n) +
                                        " factors, got " +
                                        std::to_string(factors.size()));
  }
  RecoveredGeometry g;
  for (const auto& f : factors) {
    if (f.x.size() != h) throw StageError("interpolate", "factor has wrong dimension");
    g.z_points.push_back(normalize_projective(f.x));
  }
  const CMatrix null = nullspace(veronese2_matrix(g.z_points), opts.nullspace_tol);
  g.quadric_dim = static_cast<int>(null.cols());
  for (Eigen::Index c = 0; c < null.cols(); ++c) {
    CMatrix q = CMatrix::Zero(h, h);
    Eigen::Index k = 0;
    for (Eigen::Index i = 0; i < h; ++i) {
      for (Eigen::Index j = i; j < h; ++j, ++k) {
        if (i == j) {
          q(i, i) = null(k, c);
        } else {
          q(i, j) = q(j, i) = 0.5 * null(k, c);
        }
      }
    }
    q /= q.norm();
    for (const auto& z : g.z_points) {
      g.point_residual = std::max(g.point_residual, quadric_value(q, z));
    }
    g.quadric_basis.push_back(std::move(q));
  }
  if (g.quadric_dim != expected_quadric_dim(h)) {
    throw StageError("interpolate",
                     "interpolation dimension mismatch: got " +
                         std::to_string(g.quadric_dim) + ", expected " +
                         std::to_string(expected_quadric_dim(h)));
  }
  return g;
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since) {
  return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

}  // namespace

RoundtripReport roundtrip_presentation(const IVHSPresentation& presentation,
                                       const GroundTruth& truth,
                                       std::uint64_t seed,
                                       const RoundtripOptions& opts) {
  RoundtripReport report;
  report.h = presentation.h;
  report.N = presentation.N;
  report.recovered_deg_L = (presentation.h - 1) - (2 * 0 - 2);

  IVHSPresentation w = presentation;
  std::mt19937_64 rng(splitmix(seed ^ 0xc0ffeeULL));
  if (opts.corrupt_span) {
    std::normal_distribution<double> g(0.0, 1.0);
    CMatrix noise(w.h, w.N);
    for (Eigen::Index i = 0; i < noise.size(); ++i) {
      const double re = g(rng);
      const double im = g(rng);
      noise(i) = Complex(re, im);
    }
    w.basis.front() += noise * (w.basis.front().norm() / noise.norm());
  }

  auto t0 = Clock::now();
  std::vector<RankOneFactor> factors;
  try {
    factors = extract_rank_ones(w, splitmix(seed), opts.extract);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("extract", e.what());
  }
  report.stage_timings_ms["extract"] = elapsed_ms(t0);

  t0 = Clock::now();
  RecoveredGeometry geom;
  try {
    geom = recover_geometry(factors, w.h, opts.recovery);
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError("interpolate", e.what());
  }
  report.stage_timings_ms["interpolate"] = elapsed_ms(t0);
  report.quadric_dim = geom.quadric_dim;

  t0 = Clock::now();
  std::vector<CVector> true_points;
  for (const auto& p : truth.points) true_points.push_back(p.x);
  Matching m;
  try {
    m = match_points(geom.z_points, true_points);
  } catch (const Error& e) {
    throw StageError("match", e.what());
  }
  report.max_chordal = m.max_chordal;
  report.mean_chordal = m.mean_chordal;

  // containment: recovered quadrics on fresh points of the true curve
  std::normal_distribution<double> g(0.0, 1.0);
  for (int k = 0; k < opts.curve_samples; ++k) {
    const double a = g(rng), b = g(rng), c = g(rng), d = g(rng);
    const EmbeddedPoint sample =
        canonical_point(ProjectivePointP1(Complex(a, b), Complex(c, d)), w.h);
    for (const auto& q : geom.quadric_basis) {
      report.residual_max = std::max(report.residual_max, quadric_value(q, sample.x));
    }
  }
  report.stage_timings_ms["match"] = elapsed_ms(t0);
  report.recovered_points = std::move(geom.z_points);
  if (!(m.max_chordal < opts.match_threshold)) report.status = "error:match";
  return report;
}

RoundtripReport roundtrip(const WeierstrassSurface& s, std::uint64_t seed,
                          const RoundtripOptions& opts) {
  const auto t0 = Clock::now();
  std::pair<IVHSPresentation, GroundTruth> synth;
  try {
    synth = synthesize(s, seed, opts.synthesis);
  } catch (const Error& e) {
    throw StageError("synthesize", e.what());
  }
  const double synth_ms = elapsed_ms(t0);
  RoundtripReport r = roundtrip_presentation(synth.first, synth.second, seed, opts);
  r.stage_timings_ms["synthesize"] = synth_ms;
  return r;
}

}  // namespace torelli
