#include <catch2/catch_amalgamated.hpp>

#include "spikit/disarm.hpp"
#include "spikit/oracle.hpp"

using namespace spikit;

TEST_CASE("verify the negotiation loophole disarmament") {
  Game g = example_game("negotiation");
  Disarmament d = Disarmament::none(g);
  d.removed[0] = {3, 4, 5};  // (l,f), (m,f), (h,f)
  auto cert = verify_disarmament(g, d);
  REQUIRE(cert.has_value());
  CHECK(cert->kind == SpiCertificate::Kind::Isomorphism);
  CHECK(cert->iso->map.b == std::vector<Rational>{1, 1});
}

TEST_CASE("seaway disarmaments that are not SPIs") {
  Game g = example_game("seaway");
  {
    Disarmament d = Disarmament::none(g);
    d.removed[0] = {0, 1};  // FA, FN for both
    d.removed[1] = {0, 1};
    // the reduced games coincide, so no strict improvement is possible
    CHECK_FALSE(verify_disarmament(g, d).has_value());
  }
  {
    Disarmament d = Disarmament::none(g);
    d.removed[0] = {0, 1, 3};  // everything but PA
    d.removed[1] = {0, 1, 3};
    // (2,2) does not dominate (0,5)
    CHECK_FALSE(verify_disarmament(g, d).has_value());
  }
  {
    Disarmament d = Disarmament::none(g);
    d.removed[0] = {4};
    CHECK_THROWS_AS(verify_disarmament(g, d), std::invalid_argument);
  }
}

TEST_CASE("unilateral search finds the negotiation disarmament") {
  Game g = example_game("negotiation");
  auto hits = search_disarmament(g, DisarmMode::Unilateral, 0);
  bool found = false;
  for (const auto& h : hits) {
    CHECK(verify_disarmament(g, h.d).has_value());  // every hit re-verifies
    if (h.d.removed[0] == std::set<int>{3, 4, 5} && h.d.removed[1].empty()) found = true;
  }
  CHECK(found);
}

TEST_CASE("search over all players contains every unilateral result") {
  Game g = example_game("seaway");
  auto any = search_disarmament(g, DisarmMode::Any);
  auto key = [](const Disarmament& d) {
    std::vector<std::set<int>> v = d.removed;
    return v;
  };
  for (int player = 0; player < 2; ++player) {
    for (const auto& h : search_disarmament(g, DisarmMode::Unilateral, player)) {
      bool present = false;
      for (const auto& a : any) present = present || key(a.d) == key(h.d);
      CHECK(present);
    }
  }
}

TEST_CASE("search never returns removals inside the eliminated set") {
  Game g = example_game("negotiation");
  ReductionResult r = reduce(g);
  std::vector<std::set<int>> eliminated(2);
  for (int i = 0; i < 2; ++i) {
    std::set<int> kept(r.kept[i].begin(), r.kept[i].end());
    for (int a = 0; a < g.num_actions(i); ++a)
      if (!kept.count(a)) eliminated[i].insert(a);
  }
  for (const auto& h : search_disarmament(g, DisarmMode::Unilateral, 0)) {
    bool inside = true;
    for (int i = 0; i < 2; ++i)
      for (int a : h.d.removed[i])
        if (!eliminated[i].count(a)) inside = false;
    CHECK_FALSE(inside);
  }
}

TEST_CASE("tiny games and size caps") {
  Game one;
  one.players = {"a", "b"};
  one.actions = {{"x"}, {"y"}};
  one.payoffs = {{Rational(0), Rational(0)}};
  CHECK(search_disarmament(one, DisarmMode::Any).empty());

  Game g = example_game("negotiation");
  CHECK_THROWS_AS(search_disarmament(g, DisarmMode::Any, 0, ImprovementKind::Pareto, 16), size_cap_error);
}

TEST_CASE("the candidate cap honors the environment variable") {
  setenv("SPIKIT_MAX_CANDIDATES", "4", 1);
  CHECK(default_search_cap() == 4);
  Game g = example_game("negotiation");
  CHECK_THROWS_AS(search_disarmament(g, DisarmMode::Unilateral, 0), size_cap_error);
  unsetenv("SPIKIT_MAX_CANDIDATES");
  CHECK(default_search_cap() == (1u << 20));
}

TEST_CASE("safe u1 improvements") {
  // disarming row A is guaranteed better for player 1 but hurts player 2
  Game g;
  g.players = {"P1", "P2"};
  g.actions = {{"A", "B"}, {"L", "R"}};
  g.payoffs = {{Rational(1), Rational(5)}, {Rational(10), Rational(0)},
               {Rational(0), Rational(0)}, {Rational(9), Rational(3)}};
  Disarmament d = Disarmament::none(g);
  d.removed[0] = {0};
  CHECK_FALSE(verify_disarmament(g, d, ImprovementKind::Pareto).has_value());
  auto cert = verify_disarmament(g, d, ImprovementKind::PlayerOne);
  REQUIRE(cert.has_value());
  CHECK(cert->improvement == ImprovementKind::PlayerOne);
  auto hits = search_disarmament(g, DisarmMode::Unilateral, 0, ImprovementKind::PlayerOne);
  bool found = false;
  for (const auto& h : hits) found = found || h.d.removed[0] == std::set<int>{0};
  CHECK(found);
}
