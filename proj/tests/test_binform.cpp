#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "torelli_lab/binform.hpp"

using namespace torelli;

namespace {

RationalForm rform(std::vector<long> coeffs) {
  std::vector<ExactRational> c;
  for (long v : coeffs) c.emplace_back(v);
  return RationalForm(std::move(c));
}

RationalForm random_rform(std::mt19937_64& rng, int degree, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> coeff(lo, hi);
  RationalForm f(degree);
  for (int k = 0; k <= degree; ++k) f[k] = coeff(rng);
  return f;
}

// m f g' - n g f' on the affine chart, computed on polynomials directly.
RationalPoly affine_bracket(const RationalForm& f, const RationalForm& g, long mp,
                            long np) {
  RationalPoly pf = affine_poly(f), pg = affine_poly(g);
  return upoly::sub(upoly::scale(upoly::mul(pf, upoly::derivative(pg)), mp),
                    upoly::scale(upoly::mul(pg, upoly::derivative(pf)), np));
}

bool has_point(const DivisorP1& d, const ProjectivePointP1& p, int mult, double tol = 1e-9) {
  for (const auto& dp : d.points) {
    if (chordal_distance(dp.point, p) < tol && dp.multiplicity == mult) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("binform") {

TEST_CASE("eval examples") {
  CHECK(std::abs(eval(rform({0, 1, 0}), ProjectivePointP1(1.0, 0.0))) == 0.0);
  const double s = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(eval(rform({1, 0, 1}), ProjectivePointP1(s, s)) - 1.0) < 1e-15);
  CHECK(eval(RationalForm(5), ProjectivePointP1::affine({0.3, 0.2})) == Complex(0.0));
}

TEST_CASE("projective points are normalized") {
  ProjectivePointP1 p(Complex(0.0, 2.0), Complex(3.0, -1.0));
  CHECK(std::abs(std::norm(p.z0()) + std::norm(p.z1()) - 1.0) < 1e-14);
  CHECK(p.z0().imag() == 0.0);
  CHECK(p.z0().real() > 0.0);
  CHECK(ProjectivePointP1::infinity().z1() == Complex(1.0));
  CHECK_THROWS_AS(ProjectivePointP1(0.0, 0.0), DomainError);
}

TEST_CASE("roots_projective examples") {
  const DivisorP1 d1 = roots_projective(rform({-1, 0, 1}));  // Z1^2 - Z0^2
  CHECK(d1.degree() == 2);
  CHECK(has_point(d1, ProjectivePointP1::affine(1.0), 1));
  CHECK(has_point(d1, ProjectivePointP1::affine(-1.0), 1));

  const DivisorP1 d2 = roots_projective(rform({1, 0, 0, 0}));  // Z0^3
  REQUIRE(d2.points.size() == 1);
  CHECK(d2.points[0].point.is_infinity());
  CHECK(d2.points[0].multiplicity == 3);

  const DivisorP1 d3 = roots_projective(rform({-1, 0, 1, 0}));  // Z0 (Z1^2 - Z0^2)
  CHECK(d3.degree() == 3);
  CHECK(has_point(d3, ProjectivePointP1::infinity(), 1));
  CHECK(has_point(d3, ProjectivePointP1::affine(1.0), 1));
  CHECK(has_point(d3, ProjectivePointP1::affine(-1.0), 1));

  CHECK_THROWS_AS(roots_projective(RationalForm(4)), DomainError);
}

TEST_CASE("exact multiplicities from squarefree decomposition") {
  // (z - 1)^3 (z + 2)^2 z as a degree-8 form: infinity with multiplicity 2
  RationalPoly p{1};
  for (int i = 0; i < 3; ++i) p = upoly::mul(p, {-1, 1});
  for (int i = 0; i < 2; ++i) p = upoly::mul(p, {2, 1});
  p = upoly::mul(p, {0, 1});
  const DivisorP1 d = roots_projective(RationalForm::from_affine(p, 8));
  CHECK(d.degree() == 8);
  CHECK(has_point(d, ProjectivePointP1::affine(1.0), 3));
  CHECK(has_point(d, ProjectivePointP1::affine(-2.0), 2));
  CHECK(has_point(d, ProjectivePointP1::affine(0.0), 1));
  CHECK(has_point(d, ProjectivePointP1::infinity(), 2));
}

TEST_CASE("complex roots are clustered into multiplicities") {
  // (z - 0.5)^2 (z - 2i)
  std::vector<Complex> c{Complex(0, -0.5), Complex(0.25, 2.0), Complex(-1.0, -2.0), 1.0};
  ComplexForm f = ComplexForm::from_affine(c, 4);
  const DivisorP1 d = roots_projective(f);
  CHECK(d.degree() == 4);
  CHECK(has_point(d, ProjectivePointP1::affine(0.5), 2, 1e-7));
  CHECK(has_point(d, ProjectivePointP1::affine(Complex(0.0, 2.0)), 1, 1e-9));
  CHECK(has_point(d, ProjectivePointP1::infinity(), 1));
}

TEST_CASE("root multiplicities sum to the degree for random forms") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> deg(1, 20), pick(0, 3);
  for (int trial = 0; trial < 60; ++trial) {
    const int d = deg(rng);
    RationalForm f = random_rform(rng, d);
    // sometimes force a repeated factor or roots at 0 / infinity
    if (pick(rng) == 0 && d >= 4) {
      RationalForm sq = power(random_rform(rng, 1), 2);
      f = sq * random_rform(rng, d - 2);
    }
    if (f.is_zero()) continue;
    CHECK(roots_projective(f).degree() == d);
  }
}

TEST_CASE("root backward error for simple roots") {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 20; ++trial) {
    RationalForm f = random_rform(rng, 40, -20, 20);
    if (sgn(f[40]) == 0) f[40] = 1;
    if (!form_is_squarefree(f)) continue;
    double scale = 0.0;
    for (const auto& c : f.coeffs()) scale = std::max(scale, std::abs(c.get_d()));
    const RationalPoly p = affine_poly(f);
    for (const auto& dp : roots_projective(f).points) {
      const Complex r = dp.point.affine_coordinate();
      Complex acc = 0.0;
      for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * r + it->get_d();
      const double bound = 1e-9 * scale * std::pow(std::max(1.0, std::abs(r)), 40);
      CHECK(std::abs(acc) <= bound);
    }
  }
}

TEST_CASE("transvectant examples") {
  std::mt19937_64 rng(23);
  RationalForm f = random_rform(rng, 5);
  CHECK(transvectant_first(f, f).is_zero());

  RationalForm z0_4 = rform({1, 0, 0, 0, 0});
  RationalForm z1_6 = rform({0, 0, 0, 0, 0, 0, 1});
  RationalForm w = transvectant_first(z0_4, z1_6);
  CHECK(w.degree() == 8);
  CHECK(w == rform({0, 0, 0, 0, 0, 24, 0, 0, 0}));  // 24 Z0^3 Z1^5

  // affine f = 1 (Z0^4), g = z (Z0^5 Z1): m' f g' - n' g f' = 2 with
  // (m', n') = (2, 3); the Jacobian determinant is hcf(4, 6) = 2 times that.
  RationalForm g = rform({0, 1, 0, 0, 0, 0, 0});
  RationalForm jac = transvectant_first(z0_4, g);
  CHECK(affine_poly(jac) == RationalPoly{4});
  CHECK(affine_bracket(z0_4, g, 2, 3) == RationalPoly{2});
}

TEST_CASE("transvectant is antisymmetric and bilinear") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 30; ++trial) {
    RationalForm f = random_rform(rng, 4), f2 = random_rform(rng, 4);
    RationalForm g = random_rform(rng, 6);
    CHECK((transvectant_first(f, g) + transvectant_first(g, f)).is_zero());
    ExactRational a(3, 7), b(-2);
    CHECK(transvectant_first(a * f + b * f2, g) ==
          a * transvectant_first(f, g) + b * transvectant_first(f2, g));
  }
}

TEST_CASE("homogeneous transvectant is hcf(m,n) times the affine bracket") {
  std::mt19937_64 rng(25);
  std::uniform_int_distribution<int> deg(1, 12);
  for (int trial = 0; trial < 50; ++trial) {
    const int m = deg(rng), n = deg(rng);
    RationalForm f = random_rform(rng, m), g = random_rform(rng, n);
    const long h = std::gcd(m, n);
    const RationalPoly jac = affine_poly(transvectant_first(f, g));
    const RationalPoly bracket = affine_bracket(f, g, m / h, n / h);
    CHECK(jac == upoly::scale(bracket, h));
  }
}

TEST_CASE("squarefree_and_coprime examples") {
  auto [sf1, cp1] = squarefree_and_coprime(rform({-1, 0, 1}), rform({1, 0}));
  CHECK(sf1);
  CHECK(cp1);
  CHECK_FALSE(squarefree_and_coprime(rform({0, 1, 0, 0}), rform({1, 0})).first);
  auto [sf3, cp3] = squarefree_and_coprime(rform({0, 1, 0}), rform({1, 0}));
  CHECK(sf3);
  CHECK_FALSE(cp3);
  CHECK_THROWS_AS(squarefree_and_coprime(RationalForm(2), rform({1, 0})), DomainError);
}

TEST_CASE("modular certificate agrees with exact gcd") {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 40; ++trial) {
    RationalForm a = random_rform(rng, 8), b = random_rform(rng, 6);
    if (trial % 3 == 0) {
      RationalForm common = random_rform(rng, 2);
      a = common * random_rform(rng, 6);
      b = common * random_rform(rng, 4);
    }
    RationalPoly pa = affine_poly(a), pb = affine_poly(b);
    if (pa.empty() || pb.empty()) continue;
    CHECK(upoly::are_coprime(pa, pb) == (upoly::gcd(pa, pb).size() == 1));
  }
}

TEST_CASE("valuation at rational points") {
  RationalPoly p = upoly::mul(upoly::mul({-ExactRational(1, 2), 1}, {-ExactRational(1, 2), 1}),
                              {3, 1});
  CHECK(upoly::valuation_at(p, ExactRational(1, 2)) == 2);
  CHECK(upoly::valuation_at(p, -3) == 1);
  CHECK(upoly::valuation_at(p, 5) == 0);
}

}  // TEST_SUITE
