#include <doctest.h>

#include "torelli_lab/io.hpp"

using namespace torelli;
using io::Json;

TEST_SUITE("io") {

TEST_CASE("surface round trip is exact") {
  const WeierstrassSurface s = make_with_I2(3, {ExactRational(1, 3), -2}, 4);
  const Json j = io::surface_to_json(s);
  CHECK(j["dL"] == 4);
  CHECK(j["g4"].size() == 17);
  CHECK(j["g4"][0].is_string());
  CHECK(io::surface_from_json(j) == s);
  CHECK(io::surface_from_json(Json::parse(j.dump())) == s);
}

TEST_CASE("presentation and truth round trip bit-exactly") {
  const auto [w, t] = synthesize(make_random_general(3, 2), 3);
  const IVHSPresentation w2 = io::presentation_from_json(Json::parse(io::presentation_to_json(w).dump()));
  REQUIRE(w2.basis.size() == w.basis.size());
  for (std::size_t k = 0; k < w.basis.size(); ++k) CHECK((w2.basis[k] - w.basis[k]).norm() == 0.0);
  REQUIRE(w2.gram.has_value());
  const GroundTruth t2 = io::truth_from_json(Json::parse(io::truth_to_json(t).dump()));
  CHECK((t2.mixer - t.mixer).norm() == 0.0);
  CHECK((t2.lambdas - t.lambdas).norm() == 0.0);
  REQUIRE(t2.points.size() == t.points.size());
  for (std::size_t k = 0; k < t.points.size(); ++k) CHECK((t2.points[k].x - t.points[k].x).norm() == 0.0);
}

TEST_CASE("jet round trip") {
  const JetCoefficients b = random_jet(8);
  const JetCoefficients b2 = io::jet_from_json(Json::parse(io::jet_to_json(b).dump()));
  CHECK(b2.b == b.b);
  const JetCoefficients c = io::jet_from_json(Json::parse(R"({"b": [[2, 3, "7"], [0, 0, "-1/2"]]})"));
  CHECK(c.at(2, 3) == 7);
  CHECK(c.at(0, 0) == ExactRational(-1, 2));
}

TEST_CASE("divisor json marks infinity") {
  const WeierstrassSurface s(1, RationalForm::from_affine({3}, 4), RationalForm::from_affine({0, 1}, 6));
  const Json d = io::divisor_to_json(ramification_divisor(s).divisor);
  CHECK(d["degree"] == 8);
  REQUIRE(d["points"].size() == 1);
  CHECK(d["points"][0]["z"] == "inf");
  CHECK(d["points"][0]["mult"] == 8);
}

TEST_CASE("malformed documents raise DomainError") {
  CHECK_THROWS_AS(io::surface_from_json(Json::parse(R"({"dL": 1})")), DomainError);
  CHECK_THROWS_AS(io::surface_from_json(Json::parse(R"({"dL": 1, "g4": ["1"], "g6": ["1"]})")), DomainError);
  CHECK_THROWS_AS(io::surface_from_json(Json::parse(
                      R"({"dL": 1, "g4": ["x","0","0","0","0"], "g6": ["0","0","0","0","0","0","1"]})")),
                  DomainError);
  CHECK_THROWS_AS(io::presentation_from_json(Json::parse(R"({"h": 2, "N": 1, "basis": [[[1, 0]]]})")),
                  DomainError);
  CHECK_THROWS_AS(io::jet_from_json(Json::parse(R"({"b": [[-1, 0, "1"]]})")), DomainError);
  CHECK_THROWS_AS(io::complex_from_json(Json::parse("[1]")), DomainError);
  CHECK_THROWS_AS(io::read_file("/nonexistent/file.json"), DomainError);
}

}  // TEST_SUITE
