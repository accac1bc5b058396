#pragma once

// Dense complex linear algebra sized for N <= 100, backed by Eigen.

#include <Eigen/Dense>

#include <complex>

#include "torelli_lab/error.hpp"

namespace torelli {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Throws DomainError on NaN/Inf entries.
void require_finite(const CMatrix& a, const char* what);

struct SvdResult {
  CMatrix u;      // rows x rows
  RVector sigma;  // min(rows, cols), descending
  CMatrix v;      // cols x cols
};

SvdResult svd(const CMatrix& a);

// Orthonormal basis (as columns) of the right singular vectors whose singular
// value is <= rel_tol * sigma_max; includes the directions beyond the rank
// when cols > rows. A matrix with zero columns means a trivial nullspace.
CMatrix nullspace(const CMatrix& a, double rel_tol);

struct EigResult {
  CVector values;
  CMatrix vectors;        // unit columns
  bool defective = false;  // eigenvector matrix numerically singular
  double max_residual = 0.0;  // max ||A v - lambda v|| / ||A||
};

class EigenError : public NumericalError {
 public:
  EigenError(const std::string& what, EigResult partial)
      : NumericalError(what), partial_(std::move(partial)) {}
  const EigResult& partial() const { return partial_; }

 private:
  EigResult partial_;
};

EigResult eig_general(const CMatrix& a);

// Minimum-norm least-squares solution via SVD, cutoff 1e-12 * sigma_max.
CMatrix lstsq(const CMatrix& a, const CMatrix& b);

// 2-norm condition number (inf for singular or empty input).
double condition_number(const CMatrix& a);

}  // namespace torelli
