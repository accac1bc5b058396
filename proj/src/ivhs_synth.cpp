#include "torelli_lab/ivhs_synth.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "torelli_lab/ramlocus.hpp"

namespace torelli {

CVector normalize_projective(CVector v) {
  const double n = v.norm();
  if (!(n > 0.0)) throw DomainError("cannot normalize the zero vector");
  v /= n;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) > 0.0) {
      v *= std::conj(v(i)) / std::abs(v(i));
      v(i) = Complex(v(i).real(), 0.0);
      break;
    }
  }
  return v;
}

double chordal_distance(const CVector& a, const CVector& b) {
  const CVector ua = a / a.norm();
  const CVector ub = b / b.norm();
  // component of ub orthogonal to ua; avoids sqrt(1 - cos^2)
  return std::min(1.0, (ub - ua * ua.dot(ub)).norm());
}

EmbeddedPoint canonical_point(const ProjectivePointP1& a, int h) {
  if (h < 2) throw DomainError("canonical_point needs h >= 2");
  CVector x(h);
  for (int k = 0; k < h; ++k) {
    Complex v(1.0);
    for (int i = 0; i < h - 1 - k; ++i) v *= a.z0();
    for (int i = 0; i < k; ++i) v *= a.z1();
    x(k) = v;
  }
  return {a, normalize_projective(std::move(x))};
}

namespace {

CMatrix random_gaussian(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = g(rng);
      const double im = g(rng);
      m(i, j) = Complex(re, im);
    }
  }
  return m;
}

}  // namespace

CMatrix random_unitary(std::uint64_t seed, Eigen::Index n) {
  std::mt19937_64 rng(seed);
  CMatrix g = random_gaussian(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  // fix column phases against R's diagonal so the distribution is Haar
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    if (std::abs(d) > 0.0) q.col(j) *= d / std::abs(d);
  }
  return q;
}

CMatrix random_conditioned(std::uint64_t seed, Eigen::Index n, double cond) {
  if (!(cond >= 1.0)) throw DomainError("condition bound must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  CMatrix u = random_unitary(rng(), n);
  CMatrix v = random_unitary(rng(), n);
  RVector s(n);
  for (Eigen::Index i = 0; i < n; ++i) s(i) = std::pow(cond, -unit(rng));
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

IVHSPresentation assemble_presentation(const std::vector<CVector>& xs,
                                       const CMatrix& y_frame,
                                       const CVector& lambdas,
                                       const CMatrix& mixer) {
  const Eigen::Index n = static_cast<Eigen::Index>(xs.size());
  if (n == 0) throw DomainError("presentation needs at least one point");
  const Eigen::Index h = xs.front().size();
  if (y_frame.cols() != n || lambdas.size() != n || mixer.rows() != mixer.cols() ||
      mixer.cols() != n) {
    throw DomainError("presentation factor shapes disagree");
  }
  IVHSPresentation w;
  w.h = static_cast<int>(h);
  w.N = static_cast<int>(y_frame.rows());
  std::vector<CMatrix> rank_ones;
  rank_ones.reserve(xs.size());
  for (Eigen::Index k = 0; k < n; ++k) {
    rank_ones.push_back(lambdas(k) * xs[k] * y_frame.col(k).transpose());
  }
  for (Eigen::Index j = 0; j < mixer.rows(); ++j) {
    CMatrix b = CMatrix::Zero(h, y_frame.rows());
    for (Eigen::Index k = 0; k < n; ++k) b += mixer(j, k) * rank_ones[k];
    w.basis.push_back(std::move(b));
  }
  return w;
}

std::pair<IVHSPresentation, GroundTruth> synthesize_from_points(
    std::vector<EmbeddedPoint> points, int h, std::uint64_t seed,
    const SynthesisOptions& opts) {
  if (!(opts.lambda_min > 0.0 && opts.lambda_max >= opts.lambda_min)) {
    throw DomainError("lambda window must satisfy 0 < min <= max");
  }
  const Eigen::Index n = static_cast<Eigen::Index>(points.size());
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  GroundTruth truth;
  const std::uint64_t drawn = rng();
  truth.y_frame = random_unitary(opts.frame_seed.value_or(drawn), n);
  truth.mixer = random_conditioned(rng(), n, opts.mixer_cond);
  truth.lambdas.resize(n);
  const double lo = std::log(opts.lambda_min), hi = std::log(opts.lambda_max);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double mag = std::exp(lo + (hi - lo) * unit(rng));
    truth.lambdas(k) = std::polar(mag, 2.0 * std::numbers::pi * unit(rng));
  }
  std::vector<CVector> xs;
  for (const auto& p : points) {
    if (p.x.size() != h) throw DomainError("embedded point has wrong dimension");
    xs.push_back(p.x);
  }
  truth.points = std::move(points);

  IVHSPresentation w = assemble_presentation(xs, truth.y_frame, truth.lambdas,
                                             truth.mixer);
  if (opts.with_gram) {
    // [eta_a]^2 = -2, pairwise orthogonal in the synthetic frame
    w.gram = CMatrix(-2.0 * CMatrix::Identity(n, n));
  }
  return {std::move(w), std::move(truth)};
}

namespace {

// FNV-1a over the canonical coefficient strings.
std::uint64_t surface_fingerprint(const WeierstrassSurface& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&](const std::string& text) {
    for (unsigned char c : text) {
      h ^= c;
      h *= 0x100000001b3ULL;
    }
    h ^= 0xff;
    h *= 0x100000001b3ULL;
  };
  for (const auto& c : s.g4().coeffs()) mix(to_string(c));
  for (const auto& c : s.g6().coeffs()) mix(to_string(c));
  return h;
}

}  // namespace

std::pair<IVHSPresentation, GroundTruth> synthesize(const WeierstrassSurface& s,
                                                    std::uint64_t seed,
                                                    const SynthesisOptions& opts) {
  const GeneralityReport gen = is_general(s);
  if (!gen.z_reduced) throw DomainError("synthesize: ramification divisor is not reduced");
  if (!gen.general()) throw DomainError("synthesize: surface is not general");
  const RamificationDivisor z = ramification_divisor(s);
  const int n = invariants(s).N;
  if (static_cast<int>(z.divisor.points.size()) != n) {
    throw DomainError("synthesize: N differs from the number of distinct Z points");
  }
  std::vector<EmbeddedPoint> points;
  points.reserve(z.divisor.points.size());
  SynthesisOptions o = opts;
  if (!o.frame_seed) o.frame_seed = surface_fingerprint(s);
  for (const auto& dp : z.divisor.points) {
    if (dp.multiplicity != 1) throw DomainError("synthesize: Z is not reduced");
    points.push_back(canonical_point(dp.point, s.h()));
  }
  return synthesize_from_points(std::move(points), s.h(), seed, o);
}

CMatrix flatten(const IVHSPresentation& w) {
  if (w.basis.empty()) return CMatrix(0, 0);
  const Eigen::Index rows = w.basis.front().size();
  CMatrix out(rows, static_cast<Eigen::Index>(w.basis.size()));
  for (std::size_t j = 0; j < w.basis.size(); ++j) {
    out.col(static_cast<Eigen::Index>(j)) =
        w.basis[j].reshaped(rows, 1);
  }
  return out;
}

void validate_presentation(const IVHSPresentation& w) {
  if (w.h < 1 || w.N < 1) throw DomainError("presentation dimensions must be positive");
  if (static_cast<int>(w.basis.size()) != w.N) {
    throw DomainError("presentation must have N basis matrices");
  }
  for (const auto& b : w.basis) {
    if (b.rows() != w.h || b.cols() != w.N) {
      throw DomainError("basis matrices must be h x N");
    }
    require_finite(b, "presentation");
  }
  Eigen::JacobiSVD<CMatrix> dec(flatten(w));
  const RVector& s = dec.singularValues();
  if (!(s(s.size() - 1) > 1e-10 * s(0))) {
    throw DomainError("presentation basis is not linearly independent");
  }
}

double subspace_distance(const IVHSPresentation& a, const IVHSPresentation& b) {
  auto orthonormal = [](const CMatrix& m) {
    Eigen::BDCSVD<CMatrix> dec(m, Eigen::ComputeThinU);
    return CMatrix(dec.matrixU());
  };
  const CMatrix qa = orthonormal(flatten(a));
  const CMatrix qb = orthonormal(flatten(b));
  if (qa.rows() != qb.rows() || qa.cols() != qb.cols()) return 1.0;
  // ||(I - Qa Qa^*) Qb||_2 avoids the cancellation in sqrt(1 - cos^2)
  const CMatrix residual = qb - qa * (qa.adjoint() * qb);
  Eigen::JacobiSVD<CMatrix> dec(residual);
  return std::min(1.0, dec.singularValues()(0));
}

}  // namespace torelli
