#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spikit/oracle.hpp"
#include "spikit/spi.hpp"

using namespace spikit;

namespace {

Game two_by(const std::vector<std::vector<std::pair<long, long>>>& rows) {
  Game g;
  g.players = {"P1", "P2"};
  g.actions.assign(2, {});
  for (std::size_t r = 0; r < rows.size(); ++r) g.actions[0].push_back("r" + std::to_string(r + 1));
  for (std::size_t c = 0; c < rows[0].size(); ++c) g.actions[1].push_back("c" + std::to_string(c + 1));
  for (const auto& row : rows)
    for (const auto& [a, b] : row) g.payoffs.push_back({Rational(a), Rational(b)});
  g.validate();
  return g;
}

Game negotiation_minus_f() {
  Game g = example_game("negotiation");
  Disarmament d = Disarmament::none(g);
  d.removed[0] = {3, 4, 5};
  return remove_actions(g, d);
}

}  // namespace

TEST_CASE("the negotiation disarmament is an isomorphism SPI") {
  Game g = example_game("negotiation");
  auto cert = is_spi(g, negotiation_minus_f());
  REQUIRE(cert.has_value());
  CHECK(cert->kind == SpiCertificate::Kind::Isomorphism);
  REQUIRE(cert->iso.has_value());
  CHECK(cert->iso->map.b == std::vector<Rational>{1, 1});
  CHECK(cert->iso->map.m == std::vector<Rational>{1, 1});
  // witness improves strictly under the isomorphism
  const Game& rd = cert->reduced_default.game;
  const Game& rc = cert->reduced_candidate.game;
  CHECK(strictly_improves(rc.payoff(*cert->witness_target), rd.payoff(cert->witness_source)));
}

TEST_CASE("no game is an SPI on itself") {
  for (const char* name : {"seaway", "temptation", "negotiation"}) {
    Game g = example_game(name);
    CHECK_FALSE(is_spi(g, g).has_value());
  }
}

TEST_CASE("simple SPI with an all-dominating candidate") {
  // reduced default payoffs {(2,2),(1,2)}, reduced candidate {(3,3)}
  Game def = two_by({{{2, 2}, {1, 2}}});
  Game cand = two_by({{{3, 3}}});
  CHECK(is_simple_spi(def, cand));
  auto cert = is_spi(def, cand);
  REQUIRE(cert.has_value());
  CHECK(cert->kind == SpiCertificate::Kind::Simple);
  // the witness outcome is strictly improved by every candidate outcome
  for (const auto& t : cert->reduced_candidate.game.payoffs)
    CHECK(strictly_improves(t, cert->reduced_default.game.payoff(cert->witness_source)));
}

TEST_CASE("is_simple_spi rejects the isomorphism-only and identity cases") {
  Game g = example_game("negotiation");
  CHECK_FALSE(is_simple_spi(g, negotiation_minus_f()));
  Game seaway = example_game("seaway");
  CHECK_FALSE(is_simple_spi(seaway, reduce(seaway).game));
  CHECK_FALSE(is_spi(seaway, reduce(seaway).game).has_value());
}

TEST_CASE("player-count mismatch is an error") {
  Game g = example_game("seaway");
  Game one;
  one.players = {"p"};
  one.actions = {{"a", "b"}};
  one.payoffs = {{Rational(0)}, {Rational(1)}};
  CHECK_THROWS_AS(is_spi(g, one), std::invalid_argument);
  CHECK_THROWS_AS(is_simple_spi(g, one), std::invalid_argument);
}

TEST_CASE("outcome correspondences compose") {
  Game seaway = example_game("seaway");
  Game token = example_game("seaway_token");
  ReductionResult r = reduce(seaway);
  auto elim = elimination_correspondence(seaway, r);
  auto iso = find_isomorphisms(r.game, token).front();
  auto pipeline = compose_correspondences(elim, iso_correspondence(r.game, iso));
  // (PA,PA) -> token (PA,PA); eliminated outcomes -> empty
  CHECK(pipeline.at({2, 2}) == std::vector<Outcome>{{0, 0}});
  CHECK(pipeline.at({3, 2}) == std::vector<Outcome>{{1, 0}});
  CHECK(pipeline.at({0, 0}).empty());
  CHECK(pipeline.at({1, 3}).empty());

  // composing with the identity leaves a correspondence unchanged
  auto id = identity_correspondence(seaway);
  auto same = compose_correspondences(id, elim);
  CHECK(same.images == elim.images);

  // composing with all_{A,A'} gives the constant-image map on survivors
  auto all = all_correspondence(r.game, token);
  auto widened = compose_correspondences(elim, all);
  CHECK(widened.at({2, 2}).size() == token.outcome_count());
  CHECK(widened.at({0, 0}).empty());

  OutcomeCorrespondence bad;
  bad.images[{0, 0}] = {{9, 9}};
  CHECK_THROWS_AS(compose_correspondences(bad, all), std::invalid_argument);
}

TEST_CASE("isomorphism certificates imply every reduced isomorphism improves") {
  Game g = example_game("negotiation");
  auto cert = is_spi(g, negotiation_minus_f());
  REQUIRE(cert.has_value());
  REQUIRE(cert->kind == SpiCertificate::Kind::Isomorphism);
  auto all = find_isomorphisms(cert->reduced_default.game, cert->reduced_candidate.game);
  REQUIRE(!all.empty());
  for (const auto& iso : all)
    CHECK(iso_weakly_improving(cert->reduced_default.game, cert->reduced_candidate.game, iso));
}

TEST_CASE("is_spi agrees with the brute-force oracle on random disarmaments") {
  std::mt19937_64 rng(2024);
  int spis = 0;
  for (int t = 0; t < 80; ++t) {
    std::vector<int> actions{2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3)};
    Game g = random_game(2, actions, -4, 4, 7000 + t);
    Disarmament d = Disarmament::none(g);
    for (int i = 0; i < 2; ++i) {
      int na = g.num_actions(i);
      std::uint64_t mask = rng() % (1ull << na);
      if (mask == (1ull << na) - 1) mask = 0;
      for (int a = 0; a < na; ++a)
        if (mask & (1ull << a)) d.removed[i].insert(a);
    }
    Game cand = remove_actions(g, d);
    bool fast = is_spi(g, cand).has_value();
    bool brute = brute_is_spi(g, cand);
    CHECK(fast == brute);
    spis += fast ? 1 : 0;
  }
  CHECK(spis >= 1);  // the batch must exercise both answers
}
