#include <doctest.h>

#include <map>

#include "torelli_lab/error.hpp"
#include "torelli_lab/plumb.hpp"

using namespace torelli;

namespace {

// Independent first-order expansion: v^k = q^k (1 - t q^{-2})^{k/2}
// = q^k - (k/2) t q^{k-2} mod t^2, multiplied out by hand.
struct Expansion {
  std::map<int, ExactRational> omega, eta;
};

Expansion oracle(const JetCoefficients& b) {
  Expansion e;
  for (const auto& [mn, c] : b.b) {
    const auto [m, n] = mn;
    // -1/2 c q^m (q + v) v^{n-1}; (q + v) v^{n-1} = q v^{n-1} + v^n
    for (auto [shift, k] : {std::pair{1, n - 1}, {0, n}}) {
      e.omega[m + shift + k] += ExactRational(-1, 2) * c;
      e.eta[m + shift + k - 2] += ExactRational(-1, 2) * c * ExactRational(-k, 2);
    }
  }
  return e;
}

bool agrees(const JetSeries& s, const std::map<int, ExactRational>& want) {
  for (int e = s.low_cut(); e <= s.high_cut(); ++e) {
    const auto it = want.find(e);
    const ExactRational w = it == want.end() ? ExactRational(0) : it->second;
    if (s.coefficient(e, 0) != w || sgn(s.coefficient(e, 1)) != 0) return false;
  }
  return true;
}

JetCoefficients jet(std::initializer_list<std::tuple<int, int, long>> entries) {
  JetCoefficients b;
  for (auto [m, n, v] : entries) b.set(m, n, v);
  return b;
}

}  // namespace

TEST_SUITE("plumb") {

TEST_CASE("residue_pair examples") {
  const ResiduePair unit = residue_pair(jet({{0, 0, 1}}));
  CHECK(unit.omega == JetSeries::constant(-1));
  CHECK(unit.eta == JetSeries::monomial(ExactRational(-1, 4), -2, 0));

  const ResiduePair zero = residue_pair(JetCoefficients{});
  CHECK(zero.omega.is_zero());
  CHECK(zero.eta.is_zero());

  for (long c : {1L, -3L, 7L}) {
    const ResiduePair r = residue_pair(jet({{1, 0, c}, {0, 1, c}}));
    CHECK(sgn(r.eta.coefficient(-1, 0)) == 0);
  }
}

TEST_CASE("closed forms examples") {
  CHECK(check_closed_forms(jet({{0, 0, 1}})).pass);
  const JetCoefficients b = jet({{2, 3, 7}});
  CHECK(check_closed_forms(b).pass);
  CHECK(residue_pair(b).eta.coefficient(3, 0) == ExactRational(35, 4));
  CHECK(residue_pair(b).omega.coefficient(5, 0) == -7);
}

TEST_CASE("chain matches an independent expansion") {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const JetCoefficients b = random_jet(seed);
    const ResiduePair r = residue_pair(b);
    const Expansion e = oracle(b);
    CHECK(agrees(r.omega, e.omega));
    CHECK(agrees(r.eta, e.eta));
  }
}

TEST_CASE("random jets satisfy every identity exactly") {
  for (std::uint64_t seed = 1000; seed < 1200; ++seed) {
    const JetCoefficients b = random_jet(seed);
    CHECK(check_closed_forms(b).pass);
    CHECK(check_leading_term(b).pass);
    CHECK(check_residue_law(b).pass);
    CHECK(residue_coefficient(b) == (b.at(0, 1) - b.at(1, 0)) / 4);
  }
}

TEST_CASE("the chain is linear") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const JetCoefficients a = random_jet(seed), b = random_jet(seed + 500);
    JetCoefficients sum = a.scaled(ExactRational(2, 3));
    for (const auto& [mn, c] : b.b) sum.set(mn.first, mn.second, sum.at(mn.first, mn.second) - 5 * c);
    const ResiduePair ra = residue_pair(a), rb = residue_pair(b), rs = residue_pair(sum);
    CHECK(rs.omega == ExactRational(2, 3) * ra.omega - ExactRational(5) * rb.omega);
    CHECK(rs.eta == ExactRational(2, 3) * ra.eta - ExactRational(5) * rb.eta);
  }
}

TEST_CASE("eta proportionality") {
  const JetCoefficients star = random_jet(3);
  REQUIRE(sgn(star.at(0, 0)) != 0);
  const ProportionalityResult r = check_eta_proportionality({star, star.scaled(3)});
  CHECK(r.pass);
  CHECK(residue_pair(star.scaled(3)).eta == ExactRational(3) * residue_pair(star).eta);

  CHECK(check_eta_proportionality({star, JetCoefficients{}}).pass);

  std::vector<JetCoefficients> list{star};
  for (long w : {2L, -1L, 5L, -7L, 4L}) list.push_back(star.scaled(ExactRational(w, 3)));
  const ProportionalityResult p = check_eta_proportionality(list);
  CHECK(p.pass);
  REQUIRE(p.ratios.size() == list.size());
  for (std::size_t j = 0; j < list.size(); ++j) CHECK(p.ratios[j] == -list[j].at(0, 0));

  // a list that is not rank one fails
  CHECK_FALSE(check_eta_proportionality({star, random_jet(4)}).pass);
}

TEST_CASE("set validates indices and the window bounds the order") {
  JetCoefficients b;
  CHECK_THROWS_AS(b.set(-1, 0, 1), DomainError);
  CHECK_THROWS_AS(b.set(4, 3, 1), DomainError);
  CHECK(check_closed_forms(random_jet(1, 10)).pass);
  CHECK_THROWS_AS(residue_pair(random_jet(1, 11)), WindowError);
}

}  // TEST_SUITE
