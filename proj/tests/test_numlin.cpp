#include <doctest.h>

#include <random>

#include "torelli_lab/numlin.hpp"

using namespace torelli;
using Complex = std::complex<double>;

namespace {

CMatrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::normal_distribution<double> g;
  CMatrix m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const double re = g(rng);
    m(i) = Complex(re, g(rng));
  }
  return m;
}

}  // namespace

TEST_SUITE("numlin") {

TEST_CASE("svd examples") {
  CHECK((svd(CMatrix::Identity(3, 3)).sigma - RVector::Ones(3)).norm() < 1e-14);

  CVector x(3), y(2);
  x << Complex(1, 1), 2.0, Complex(0, -1);
  y << 3.0, Complex(0, 4);
  const SvdResult r = svd(x * y.adjoint());
  CHECK(std::abs(r.sigma(0) - x.norm() * y.norm()) < 1e-12);
  CHECK(r.sigma(1) < 1e-12);

  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 3.0;
  d(1, 1) = 2.0;
  const SvdResult s = svd(d);
  CHECK(std::abs(s.sigma(0) - 3.0) < 1e-14);
  CHECK(std::abs(s.sigma(1) - 2.0) < 1e-14);
}

TEST_CASE("svd reconstruction and orthonormality on random matrices") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> dim(1, 80);
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix a = random_matrix(rng, dim(rng), dim(rng));
    const SvdResult r = svd(a);
    const Eigen::Index k = r.sigma.size();
    const CMatrix rec = r.u.leftCols(k) * r.sigma.cast<Complex>().asDiagonal() *
                        r.v.leftCols(k).adjoint();
    CHECK((rec - a).norm() <= 1e-9 * a.norm());
    CHECK((r.u.adjoint() * r.u - CMatrix::Identity(a.rows(), a.rows())).norm() < 1e-10);
    CHECK((r.v.adjoint() * r.v - CMatrix::Identity(a.cols(), a.cols())).norm() < 1e-10);
    for (Eigen::Index i = 1; i < k; ++i) CHECK(r.sigma(i) <= r.sigma(i - 1));
  }
}

TEST_CASE("nullspace examples") {
  CMatrix ones = CMatrix::Ones(2, 2);
  CMatrix n1 = nullspace(ones, 1e-8);
  REQUIRE(n1.cols() == 1);
  CHECK(std::abs(std::abs(n1(0, 0)) - std::sqrt(0.5)) < 1e-12);
  CHECK(std::abs(n1(0, 0) + n1(1, 0)) < 1e-12);

  CHECK(nullspace(CMatrix::Identity(3, 3), 1e-8).cols() == 0);
  CHECK(nullspace(CMatrix::Zero(2, 3), 1e-8).cols() == 3);
  CHECK_THROWS_AS(nullspace(ones, 1.5), DomainError);
}

TEST_CASE("nullspace columns are annihilated") {
  std::mt19937_64 rng(32);
  for (int trial = 0; trial < 30; ++trial) {
    // rank-deficient by construction
    const CMatrix a = random_matrix(rng, 12, 4) * random_matrix(rng, 4, 9);
    const double tol = 1e-8;
    const CMatrix n = nullspace(a, tol);
    CHECK(n.cols() == 5);
    const double smax = svd(a).sigma(0);
    for (Eigen::Index j = 0; j < n.cols(); ++j) {
      CHECK((a * n.col(j)).norm() <= 10 * tol * smax);
    }
  }
}

TEST_CASE("eig_general examples") {
  CMatrix d = CMatrix::Zero(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 5.0;
  const EigResult r = eig_general(d);
  CHECK_FALSE(r.defective);
  CHECK(r.max_residual < 1e-14);
  std::vector<double> vals{r.values(0).real(), r.values(1).real()};
  std::sort(vals.begin(), vals.end());
  CHECK(vals[0] == doctest::Approx(2.0));
  CHECK(vals[1] == doctest::Approx(5.0));

  CMatrix jordan = CMatrix::Zero(2, 2);
  jordan(0, 1) = 1.0;
  const EigResult j = eig_general(jordan);
  CHECK(std::abs(j.values(0)) < 1e-12);
  CHECK(std::abs(j.values(1)) < 1e-12);
  CHECK(j.defective);

  CHECK_THROWS_AS(eig_general(CMatrix::Zero(2, 3)), DomainError);
}

TEST_CASE("eig_general recovers planted spectra") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 30; ++trial) {
    const Eigen::Index n = 3 + trial % 20;
    const CMatrix p = random_matrix(rng, n, n);
    CVector lambda(n);
    for (Eigen::Index i = 0; i < n; ++i) lambda(i) = Complex(1.0 + i, 0.5 * (i % 3));
    const CMatrix a = p * lambda.asDiagonal() * p.inverse();
    const EigResult r = eig_general(a);
    CHECK(r.max_residual <= 1e-8);
    for (Eigen::Index i = 0; i < n; ++i) {
      double best = 1e300;
      for (Eigen::Index k = 0; k < n; ++k) best = std::min(best, std::abs(r.values(k) - lambda(i)));
      CHECK(best / lambda.cwiseAbs().maxCoeff() < 1e-8);
    }
  }
}

TEST_CASE("lstsq examples") {
  std::mt19937_64 rng(34);
  const CMatrix b = random_matrix(rng, 4, 2);
  CHECK((lstsq(CMatrix::Identity(4, 4), b) - b).norm() < 1e-14);

  const CMatrix a = random_matrix(rng, 10, 4);
  const CMatrix x = random_matrix(rng, 4, 1);
  CHECK((lstsq(a, a * x) - x).norm() < 1e-10);

  CHECK(lstsq(CMatrix::Zero(3, 2), b.topRows(3)).norm() == 0.0);
  CHECK_THROWS_AS(lstsq(CMatrix::Zero(3, 2), b), DomainError);
}

TEST_CASE("non-finite input is rejected") {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(svd(a), DomainError);
  CHECK_THROWS_AS(eig_general(a), DomainError);
}

}  // TEST_SUITE
