#include "comlearn/serialize.hpp"

#include "support.hpp"

#include <doctest.h>

using namespace comlearn;

TEST_CASE("common-belief witness round trip") {
  std::mt19937 rng(53);
  for (int k = 0; k < 200; ++k) {
    auto d = testing::random_cycle_free(rng, 1 + k % 5, k % 6, 2 + k % 3);
    auto w = construct_witness(d);
    auto doc = to_json(d, w);
    auto back = witness_from_json(d, Json::parse(doc.dump()));
    CHECK(back == w);
    CHECK(verify_witness(d, back));
  }
}

TEST_CASE("co-monotone witness round trip") {
  std::mt19937 rng(59);
  for (int k = 0; k < 100; ++k) {
    auto d = testing::random_dataset(rng, 1 + k % 4, k % 5, 2);
    auto w = construct_comonotone_varying(d);
    auto doc = to_json(d, w, k % 2 == 0);
    CHECK(comonotone_witness_from_json(d, Json::parse(doc.dump())) == w);
    if (!find_consecutive_cycle(d)) {
      auto v = construct_comonotone_invariant(d, std::nullopt, k % 3 ? Strength::strict : Strength::weak);
      CHECK(comonotone_witness_from_json(d, to_json(d, v)) == v);
    }
  }
}

TEST_CASE("enumerated joint sums to one") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}});
  auto doc = to_json(d, construct_comonotone_varying(d), true);
  const auto& joint = doc["periods"][0]["experiment"]["joint"];
  CHECK(joint.size() == 28);
  Rational sx = 0, sy = 0;
  for (const auto& row : joint) {
    sx += parse_rational(row["in_x"].get<std::string>());
    sy += parse_rational(row["in_y"].get<std::string>());
  }
  CHECK(sx == 1);
  CHECK(sy == 1);
}

TEST_CASE("malformed witnesses") {
  auto d = testing::binary({"i", "j"}, {{"x", "y"}});
  auto doc = to_json(d, construct_witness(d));
  auto bad = doc;
  bad["agents"][0] = "zz";
  CHECK_THROWS_AS(witness_from_json(d, bad), ParseError);
  bad = doc;
  bad["prior"] = 0.5;
  CHECK_THROWS_AS(witness_from_json(d, bad), ParseError);
  bad = doc;
  bad["periods"][0]["belief"] = "1/0";
  CHECK_THROWS_AS(witness_from_json(d, bad), ParseError);
  bad = doc;
  bad.erase("cutoffs");
  CHECK_THROWS_AS(witness_from_json(d, bad), ParseError);
  CHECK_THROWS_AS(comonotone_witness_from_json(d, doc), ParseError);
}

TEST_CASE("reports are stable") {
  auto d = testing::binary({"i", "j", "k"}, {{"x", "y", "y"}, {"x", "x", "y"}});
  auto a = to_json(d, predict_counterfactuals(d)).dump();
  auto b = to_json(d, predict_counterfactuals(d)).dump();
  CHECK(a == b);
  auto doc = Json::parse(a);
  CHECK(doc["admissible_count"] == "4");
  CHECK(doc["profiles"][1] == Json::array({"x", "x", "y"}));
  CHECK(doc["cutoff_order"] == Json::parse(R"([["i"],["j"],["k"]])"));
}

TEST_CASE("cycle witness names labels") {
  auto d = testing::binary({"i", "j"}, {{"x", "y"}, {"y", "x"}});
  auto doc = to_json(d, *find_cycle(d));
  CHECK(doc["agent_i"] == "i");
  CHECK(doc["period_t2"] == "t2");
  CHECK(doc["choices"]["j"] == Json::array({"y", "x"}));
}
