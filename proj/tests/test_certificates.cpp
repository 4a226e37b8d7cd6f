#include <catch2/catch_amalgamated.hpp>

#include "spikit/certificate.hpp"

using namespace spikit;

namespace {

// perturbs one payoff entry of the embedded game at a cell the certificate's
// claim depends on (perturbations in the eliminated region can legitimately
// leave a certificate valid)
json perturb_cell(json cert, const char* key, std::initializer_list<int> path, const char* value) {
  json* cell = &cert.at(key).at("payoffs");
  for (int idx : path) cell = &cell->at(idx);
  *cell = json::parse(std::string(value));
  return cert;
}

}  // namespace

TEST_CASE("spi certificates verify and reject perturbations") {
  Game g = example_game("negotiation");
  Disarmament d = Disarmament::none(g);
  d.removed[0] = {3, 4, 5};
  Game cand = remove_actions(g, d);
  auto cert = is_spi(g, cand);
  REQUIRE(cert.has_value());
  json j = spi_certificate_to_json(g, cand, *cert);
  CHECK(verify_certificate(j));
  // (l,f)(l,s) sits in the reduced default; (l,nf)(l,c) in the reduced candidate
  CHECK_FALSE(verify_certificate(perturb_cell(j, "default", {3, 0, 0}, "4")));
  CHECK_FALSE(verify_certificate(perturb_cell(j, "candidate", {0, 3, 0}, "5")));

  json disarm_j = disarm_certificate_to_json(g, d, *cert);
  CHECK(verify_certificate(disarm_j));
  CHECK_FALSE(verify_certificate(perturb_cell(disarm_j, "game", {3, 0, 0}, "4")));
  // tampering with the removal set must be caught
  json tampered = disarm_j;
  tampered["removed"][0] = {3, 4};
  CHECK_FALSE(verify_certificate(tampered));
}

TEST_CASE("simple spi certificates verify") {
  Game def;
  def.players = {"P1", "P2"};
  def.actions = {{"r"}, {"c1", "c2"}};
  def.payoffs = {{Rational(2), Rational(2)}, {Rational(1), Rational(2)}};
  Game cand;
  cand.players = {"P1", "P2"};
  cand.actions = {{"r"}, {"c"}};
  cand.payoffs = {{Rational(3), Rational(3)}};
  auto cert = is_spi(def, cand);
  REQUIRE(cert.has_value());
  json j = spi_certificate_to_json(def, cand, *cert);
  CHECK(verify_certificate(j));
  j["witness_source"] = json::array({0, 9});
  CHECK_FALSE(verify_certificate(j));
}

TEST_CASE("token certificates verify and reject perturbations") {
  Game g = example_game("seaway");
  auto spi = correlated_iso_token_spi(g);
  REQUIRE(spi.has_value());
  json j = token_spi_to_json(g, *spi);
  CHECK(verify_certificate(j));
  // (PA,PA) is a reduced payoff: changing it breaks the remapping
  CHECK_FALSE(verify_certificate(perturb_cell(j, "game", {2, 2, 0}, "3")));
  CHECK_FALSE(verify_certificate(perturb_cell(j, "token_game", {0, 0, 0}, "4")));
  json bad_map = j;
  bad_map["map"]["b"][0] = "3";
  CHECK_FALSE(verify_certificate(bad_map));
  json bad_real = j;
  bad_real["realizations"][0]["mix"][0]["prob"] = "1/7";
  CHECK_FALSE(verify_certificate(bad_real));

  Game pd;
  pd.players = {"P1", "P2"};
  pd.actions = {{"C", "D"}, {"C", "D"}};
  pd.payoffs = {{Rational(3), Rational(3)}, {Rational(0), Rational(5)},
                {Rational(5), Rational(0)}, {Rational(1), Rational(1)}};
  auto simple = simple_token_spi(pd, RealizationMode::Pure);
  REQUIRE(simple.has_value());
  json sj = token_spi_to_json(pd, *simple);
  CHECK(verify_certificate(sj));
  CHECK_FALSE(verify_certificate(perturb_cell(sj, "token_game", {0, 0, 0}, "9")));
}

TEST_CASE("omni certificates verify and reject perturbations") {
  Game g = example_game("seaway");
  auto remap = omni_exists(g, RealizationMode::Correlated);
  REQUIRE(remap.has_value());
  json j = omni_remap_to_json(g, *remap);
  CHECK(verify_certificate(j));
  // raising the witness outcome's payoff destroys the weak improvement
  CHECK_FALSE(verify_certificate(perturb_cell(j, "game", {3, 3, 0}, "100")));
  json bad = j;
  bad["witness"] = json::array({0, 0});  // (FA,FA) is not strictly improved
  CHECK_FALSE(verify_certificate(bad));
}

TEST_CASE("uni certificates verify and reject perturbations") {
  Game g = example_game("temptation");
  UniRemap remap{{2, 3}};
  UniVerifyResult res = uni_verify(g, remap);
  REQUIRE(res.cert.has_value());
  json j = uni_remap_to_json(g, remap, res);
  CHECK(verify_certificate(j));
  // perturbing player 2's payoff at (T1,C1) kills every partial isomorphism
  CHECK_FALSE(verify_certificate(perturb_cell(j, "game", {0, 0, 1}, "3")));
  json bad = j;
  bad["psi1"] = std::vector<int>{2, 2};
  CHECK_FALSE(verify_certificate(bad));
}

TEST_CASE("gpr certificates verify and reject perturbations") {
  Graph c5;
  c5.n = 5;
  c5.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  VectorRemapInstance inst = gen_gpr_from_graph(c5);
  auto remap = gpr_decide(inst);
  REQUIRE(remap.has_value());
  json j = gpr_certificate_to_json(inst, *remap);
  CHECK(verify_certificate(j));
  json bad = j;
  bad["map"]["m"][0] = "0";
  CHECK_FALSE(verify_certificate(bad));
  json bad2 = j;
  bad2["assignment"][0]["to"] = bad2["assignment"][0]["from"];
  CHECK_FALSE(verify_certificate(bad2));
}

TEST_CASE("unknown certificate types are rejected loudly") {
  CHECK_THROWS_AS(verify_certificate(json{{"type", "mystery"}}), parse_error);
}
