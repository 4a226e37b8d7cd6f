#include <catch2/catch_amalgamated.hpp>

#include "spikit/oracle.hpp"
#include "spikit/reduction.hpp"

using namespace spikit;

TEST_CASE("strict dominance on the worked examples") {
  Game seaway = example_game("seaway");
  auto dom = is_strictly_dominated(seaway, 0, 0);  // FA
  REQUIRE(dom.has_value());
  CHECK(seaway.actions[0][*dom] == "PA");
  CHECK(is_strictly_dominated(seaway, 0, 2) == std::nullopt);  // PA undominated

  Game negotiation = example_game("negotiation");
  auto alice = is_strictly_dominated(negotiation, 0, 0);  // (l,nf)
  REQUIRE(alice.has_value());
  CHECK(negotiation.actions[0][*alice] == "l,f");

  Game one;
  one.players = {"p"};
  one.actions = {{"only"}};
  one.payoffs = {{Rational(0)}};
  CHECK(is_strictly_dominated(one, 0, 0) == std::nullopt);

  CHECK_THROWS_AS(is_strictly_dominated(seaway, 2, 0), std::invalid_argument);
  CHECK_THROWS_AS(is_strictly_dominated(seaway, 0, 9), std::invalid_argument);
}

TEST_CASE("reduce the worked examples") {
  Game seaway = example_game("seaway");
  ReductionResult r = reduce(seaway);
  CHECK(r.game.actions[0] == std::vector<std::string>{"PA", "PN"});
  CHECK(r.game.actions[1] == std::vector<std::string>{"PA", "PN"});
  CHECK(r.kept == std::vector<std::vector<int>>{{2, 3}, {2, 3}});

  Game negotiation = example_game("negotiation");
  ReductionResult rn = reduce(negotiation);
  CHECK(rn.game.actions[0] == std::vector<std::string>{"l,f", "m,f", "h,f"});
  CHECK(rn.game.actions[1] == std::vector<std::string>{"l,s", "m,s", "h,s"});

  Game temptation = example_game("temptation");
  ReductionResult rt = reduce(temptation);
  CHECK(rt.game.actions[0] == std::vector<std::string>{"T1", "T2"});
  CHECK(rt.game.actions[1] == std::vector<std::string>{"C1", "C2"});

  Game why_iso = example_game("why_iso");
  ReductionResult rw = reduce(why_iso);
  CHECK(rw.game.actions[0] == std::vector<std::string>{"r3", "r4"});
  CHECK(rw.game.actions[1] == std::vector<std::string>{"c1", "c2", "c3"});
}

TEST_CASE("reduction traces re-verify") {
  for (const char* name : {"seaway", "negotiation", "temptation", "why_iso"}) {
    Game g = example_game(name);
    ReductionResult r = reduce(g);
    CHECK(verify_trace(g, r));
    if (!r.trace.empty()) {
      ReductionResult bad = r;
      bad.trace[0].dominating_action = bad.trace[0].removed_action;
      CHECK_FALSE(verify_trace(g, bad));
    }
  }
}

TEST_CASE("reduction is idempotent and order-independent") {
  for (int t = 0; t < 200; ++t) {
    int players = 2 + static_cast<int>(t % 2);
    std::vector<int> actions(players);
    std::mt19937_64 rng(900 + t);
    for (auto& a : actions) a = 2 + static_cast<int>(rng() % 4);
    Game g = random_game(players, actions, -5, 5, 4000 + t);
    ReductionResult canonical = reduce(g);
    CHECK(reduce(canonical.game).game == canonical.game);  // idempotence
    for (int k = 0; k < 10; ++k) {
      ReductionResult shuffled = reduce_random_order(g, 77 * t + k);
      CHECK(shuffled.kept == canonical.kept);
      CHECK(verify_trace(g, shuffled));
    }
  }
}

TEST_CASE("reduce_players pins the masked player") {
  Game temptation = example_game("temptation");
  // keep only R1, R2 for player 1, then reduce player 2 only
  Disarmament d = Disarmament::none(temptation);
  d.removed[0] = {0, 1};
  Game pinned = remove_actions(temptation, d);
  ReductionResult r = reduce_players(pinned, {false, true});
  CHECK(r.game.actions[0] == std::vector<std::string>{"R1", "R2"});
  CHECK(r.game.actions[1] == std::vector<std::string>{"F1", "F2"});
}
