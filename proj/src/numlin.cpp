#include "torelli_lab/numlin.hpp"

#include <cmath>
#include <limits>

namespace torelli {

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) {
    throw DomainError(std::string(what) + ": matrix has non-finite entries");
  }
}

SvdResult svd(const CMatrix& a) {
  require_finite(a, "svd");
  Eigen::BDCSVD<CMatrix> dec(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return {dec.matrixU(), dec.singularValues(), dec.matrixV()};
}

CMatrix nullspace(const CMatrix& a, double rel_tol) {
  if (!(rel_tol > 0.0 && rel_tol < 1.0)) {
    throw DomainError("nullspace tolerance must lie in (0, 1)");
  }
  SvdResult s = svd(a);
  const Eigen::Index cols = a.cols();
  const double smax = s.sigma.size() > 0 ? s.sigma(0) : 0.0;
  Eigen::Index first = 0;
  while (first < s.sigma.size() && s.sigma(first) > rel_tol * smax) ++first;
  return s.v.rightCols(cols - first);
}

EigResult eig_general(const CMatrix& a) {
  require_finite(a, "eig_general");
  if (a.rows() != a.cols()) throw DomainError("eig_general needs a square matrix");
  Eigen::ComplexEigenSolver<CMatrix> solver(a, true);
  EigResult r;
  r.values = solver.eigenvalues();
  r.vectors = solver.eigenvectors();
  if (solver.info() != Eigen::Success) {
    throw EigenError("complex eigensolver did not converge", r);
  }
  for (Eigen::Index j = 0; j < r.vectors.cols(); ++j) {
    const double n = r.vectors.col(j).norm();
    if (n > 0.0) r.vectors.col(j) /= n;
  }
  const double scale = std::max(a.norm(), std::numeric_limits<double>::min());
  for (Eigen::Index j = 0; j < r.vectors.cols(); ++j) {
    const double res =
        (a * r.vectors.col(j) - r.values(j) * r.vectors.col(j)).norm() / scale;
    r.max_residual = std::max(r.max_residual, res);
  }
  if (a.rows() > 0) {
    Eigen::JacobiSVD<CMatrix> vs(r.vectors);
    const RVector& sv = vs.singularValues();
    r.defective = !(sv(sv.size() - 1) > 1e-10 * sv(0));
  }
  return r;
}

CMatrix lstsq(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows()) throw DomainError("lstsq: row mismatch");
  require_finite(a, "lstsq");
  require_finite(b, "lstsq");
  Eigen::BDCSVD<CMatrix> dec(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& sigma = dec.singularValues();
  CMatrix x = CMatrix::Zero(a.cols(), b.cols());
  if (sigma.size() == 0 || sigma(0) == 0.0) return x;
  const double cutoff = 1e-12 * sigma(0);
  CMatrix utb = dec.matrixU().adjoint() * b;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) utb.row(i) /= sigma(i);
    else utb.row(i).setZero();
  }
  return dec.matrixV() * utb;
}

double condition_number(const CMatrix& a) {
  if (a.size() == 0) return std::numeric_limits<double>::infinity();
  Eigen::JacobiSVD<CMatrix> dec(a);
  const RVector& s = dec.singularValues();
  const double smin = s(s.size() - 1);
  return smin > 0.0 ? s(0) / smin : std::numeric_limits<double>::infinity();
}

}  // namespace torelli
