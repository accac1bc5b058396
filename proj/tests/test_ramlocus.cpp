#include <doctest.h>

#include <random>

#include "torelli_lab/ramlocus.hpp"

using namespace torelli;

namespace {

WeierstrassSurface affine_surface(std::vector<long> g4, std::vector<long> g6, int dL = 1) {
  std::vector<ExactRational> a(g4.begin(), g4.end()), b(g6.begin(), g6.end());
  return WeierstrassSurface(dL, RationalForm::from_affine(a, 4 * dL),
                            RationalForm::from_affine(b, 6 * dL));
}

bool has_clause(const GeneralityReport& r, const std::string& c) {
  const auto f = r.failed_clauses();
  return std::find(f.begin(), f.end(), c) != f.end();
}

}  // namespace

TEST_SUITE("ramlocus") {

TEST_CASE("ramification_divisor of random general surfaces has degree 10h + 8") {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const WeierstrassSurface s = make_random_general(3, seed);
    const RamificationDivisor z = ramification_divisor(s);
    CHECK(z.form.degree() == 38);
    CHECK(z.total_degree == 38);
  }
}

TEST_CASE("constant g4 puts all ramification at infinity") {
  for (int dL : {1, 2}) {
    // affine W = 4 dL * 3 * 1 - 6 dL * z * 0
    const RamificationDivisor z = ramification_divisor(affine_surface({3}, {0, 1}, dL));
    CHECK(affine_poly(z.form) == RationalPoly{12 * dL});
    REQUIRE(z.divisor.points.size() == 1);
    CHECK(z.divisor.points[0].point.is_infinity());
    CHECK(z.divisor.points[0].multiplicity == 10 * dL - 2);
  }
}

TEST_CASE("isotrivial family is rejected") {
  // g4^3 = 27 g6^2 with g4 = 3 z^2, g6 = z^3
  CHECK_THROWS_AS(ramification_divisor(affine_surface({0, 0, 3}, {0, 0, 0, 1})), DomainError);
  // constant j: g4 = 3 (1 + z)^2 and g6 = (1 + z)^3 scaled as a pair
  CHECK_THROWS_AS(ramification_form(affine_surface({0}, {1, 2, 1})), DomainError);
}

TEST_CASE("is_general examples") {
  const GeneralityReport g = is_general(make_random_general(3, 1));
  CHECK(g.general());
  CHECK(g.failed_clauses().empty());

  const GeneralityReport i2 = is_general(make_with_I2(3, {0}, 5));
  CHECK_FALSE(i2.general());
  CHECK(has_clause(i2, "c"));

  const GeneralityReport r = is_general(affine_surface({3}, {1, 0, -1}));
  CHECK_FALSE(r.general());
  CHECK(has_clause(r, "a"));
}

TEST_CASE("simple zero of g4 away from g6 is unramified") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> coeff(-20, 20), point(-5, 5);
  int built = 0;
  while (built < 10) {
    const ExactRational p = point(rng);
    // g4 = (z - p) * r with r(p) != 0, g6(p) != 0
    RationalPoly r(15);
    for (auto& c : r) c = coeff(rng);
    upoly::trim(r);
    RationalPoly g6(25);
    for (auto& c : g6) c = coeff(rng);
    upoly::trim(g6);
    if (r.empty() || g6.empty()) continue;
    if (sgn(upoly::eval(r, p)) == 0 || sgn(upoly::eval(g6, p)) == 0) continue;
    const WeierstrassSurface s(4, RationalForm::from_affine(upoly::mul(r, {-p, 1}), 16),
                               RationalForm::from_affine(g6, 24));
    CHECK(sgn(upoly::eval(affine_poly(ramification_form(s)), p)) != 0);
    ++built;
  }
}

TEST_CASE("prescribed I2 points lie in Z") {
  const std::vector<ExactRational> pts{0, 1, -1};
  const WeierstrassSurface s = make_with_I2(3, pts, 2);
  const RationalPoly w = affine_poly(ramification_form(s));
  for (const auto& p : pts) CHECK(upoly::valuation_at(w, p) >= 1);
}

TEST_CASE("schottky degree bookkeeping") {
  for (auto [h, deg] : {std::pair{3, 38}, {4, 48}, {6, 68}}) {
    const SchottkyDegrees d = schottky_degrees(h);
    CHECK(d.deg_z == deg);
    CHECK(d.deg_10L_plus_K == deg);
    CHECK(d.consistent());
  }
  CHECK(schottky_degree_check(make_random_general(3, 2)));
}

}  // TEST_SUITE
