#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "spikit/iso.hpp"
#include "spikit/oracle.hpp"
#include "spikit/reduction.hpp"

using namespace spikit;

namespace {

Game seaway_reduced() { return reduce(example_game("seaway")).game; }

// relabel + per-player positive affine transform, for constructing isomorphic pairs
Game transformed_copy(const Game& g, std::mt19937_64& rng, AffineUtilityMap* out_map = nullptr) {
  int n = g.num_players();
  std::vector<std::vector<int>> perm(n);  // new index -> old index
  for (int i = 0; i < n; ++i) {
    perm[i].resize(g.num_actions(i));
    std::iota(perm[i].begin(), perm[i].end(), 0);
    std::shuffle(perm[i].begin(), perm[i].end(), rng);
  }
  AffineUtilityMap map;
  for (int i = 0; i < n; ++i) {
    map.m.push_back(make_rational(1 + static_cast<long>(rng() % 3), 1 + static_cast<long>(rng() % 2)));
    map.b.push_back(Rational(static_cast<long>(rng() % 9) - 4));
  }
  Game h;
  h.players = g.players;
  h.actions.resize(n);
  for (int i = 0; i < n; ++i)
    for (int a = 0; a < g.num_actions(i); ++a) h.actions[i].push_back(g.actions[i][perm[i][a]] + "'");
  for (std::size_t idx = 0; idx < g.outcome_count(); ++idx) {
    Outcome o = h.unflatten(idx);
    Outcome src(o.size());
    for (int i = 0; i < n; ++i) src[i] = perm[i][o[i]];
    h.payoffs.push_back(map.apply(g.payoff(src)));
  }
  if (out_map) *out_map = map;
  return h;
}

}  // namespace

TEST_CASE("the seaway quadrant and the token game are isomorphic exactly once") {
  Game q = seaway_reduced();
  Game token = example_game("seaway_token");
  auto isos = find_isomorphisms(q, token);
  REQUIRE(isos.size() == 1);
  const Isomorphism& iso = isos.front();
  CHECK(iso.action_map == std::vector<std::vector<int>>{{0, 1}, {0, 1}});  // PA -> Token PA, PN -> Token PN
  CHECK(iso.map.m == std::vector<Rational>{Rational(3, 5), Rational(3, 5)});
  CHECK(iso.map.b == std::vector<Rational>{Rational(2), Rational(2)});
  CHECK(is_isomorphism(q, token, iso));
}

TEST_CASE("a game is isomorphic to itself via the identity") {
  Game g = example_game("temptation");
  auto isos = find_isomorphisms(g, g);
  bool has_identity = false;
  for (const auto& iso : isos) {
    bool id = iso.map.m == std::vector<Rational>{1, 1} && iso.map.b == std::vector<Rational>{0, 0};
    for (int i = 0; i < 2 && id; ++i)
      for (int a = 0; a < g.num_actions(i) && id; ++a)
        if (iso.action_map[i][a] != a) id = false;
    has_identity = has_identity || id;
    CHECK(is_isomorphism(g, g, iso));
  }
  CHECK(has_identity);
}

TEST_CASE("negotiation quadrants are isomorphic with a unit shift") {
  Game negotiation = example_game("negotiation");
  Game lower_left = subgame(negotiation, {{3, 4, 5}, {0, 1, 2}});
  Game upper_right = subgame(negotiation, {{0, 1, 2}, {3, 4, 5}});
  auto isos = find_isomorphisms(lower_left, upper_right);
  REQUIRE(isos.size() == 1);
  CHECK(isos[0].map.m == std::vector<Rational>{1, 1});
  CHECK(isos[0].map.b == std::vector<Rational>{1, 1});
  // (x,f) -> (x,nf), (y,s) -> (y,c): position-preserving in both quadrants
  CHECK(isos[0].action_map == std::vector<std::vector<int>>{{0, 1, 2}, {0, 1, 2}});
}

TEST_CASE("pareto-improving isomorphism decisions") {
  Game q = seaway_reduced();
  Game token = example_game("seaway_token");
  auto pi = exists_pareto_improving_iso(q, token);
  REQUIRE(pi.has_value());
  CHECK(pi->strict);

  Game g = example_game("temptation");
  auto self = exists_pareto_improving_iso(g, g);
  REQUIRE(self.has_value());
  CHECK_FALSE(self->strict);  // identity improves nothing

  Game negated = q;
  for (auto& u : negated.payoffs)
    for (auto& x : u) x = -x;
  CHECK_FALSE(exists_pareto_improving_iso(q, negated).has_value());
}

TEST_CASE("coefficient-(1,0) isomorphism decisions") {
  Game g = example_game("temptation");
  CHECK(exists_coeff10_iso(g, g));
  Game shifted = g;
  for (auto& u : shifted.payoffs)
    for (auto& x : u) x += 1;
  CHECK_FALSE(exists_coeff10_iso(g, shifted));
  // relabeling: swap player 2's first two actions
  Game relabeled = subgame(g, {{0, 1, 2, 3}, {1, 0, 2, 3}});
  CHECK(exists_coeff10_iso(g, relabeled));
}

TEST_CASE("subgame isomorphisms") {
  Game q = seaway_reduced();
  auto self_embeds = find_subgame_isomorphisms(q, q, SubgameIsoVariant::Any);
  bool has_identity = false;
  for (const auto& s : self_embeds) {
    if (s.subset == std::vector<std::vector<int>>{{0, 1}, {0, 1}} &&
        s.iso.action_map == std::vector<std::vector<int>>{{0, 1}, {0, 1}})
      has_identity = true;
  }
  CHECK(has_identity);

  Game negotiation = example_game("negotiation");
  CHECK(find_subgame_isomorphisms(q, negotiation, SubgameIsoVariant::Any).empty());

  // planted: seaway quadrant inside the full seaway game, coefficients (1,0)
  Game seaway = example_game("seaway");
  auto planted = find_subgame_isomorphisms(q, seaway, SubgameIsoVariant::Coeff10);
  bool found = false;
  for (const auto& s : planted)
    if (s.subset == std::vector<std::vector<int>>{{2, 3}, {2, 3}}) found = true;
  CHECK(found);

  CHECK_THROWS_AS(find_subgame_isomorphisms(q, negotiation, SubgameIsoVariant::Any, 2), size_cap_error);
}

TEST_CASE("partial isomorphisms: the temptation commitment") {
  Game temptation = example_game("temptation");
  Game top_left = subgame(temptation, {{0, 1}, {0, 1}});
  Game bottom_right = subgame(temptation, {{2, 3}, {2, 3}});
  auto isos = find_partial_isomorphisms(top_left, bottom_right, {0, 1});  // T1->R1, T2->R2
  REQUIRE(isos.size() == 1);
  CHECK(isos[0].scope == IsoScope::PlayersMinusOne);
  CHECK(isos[0].action_map[1] == std::vector<int>{0, 1});  // C1->F1, C2->F2
  CHECK(isos[0].map.m[1] == 1);
  CHECK(isos[0].map.b[1] == 1);
}

TEST_CASE("partial isomorphisms: the why-iso counterexample has two") {
  Game why_iso = example_game("why_iso");
  Game reduced = subgame(why_iso, {{2, 3}, {0, 1, 2}});
  Game commit = subgame(why_iso, {{0, 1}, {3, 4, 5}});
  auto isos = find_partial_isomorphisms(reduced, commit, {0, 1});  // r3->r1, r4->r2
  REQUIRE(isos.size() == 2);
  int improving = 0;
  for (const auto& iso : isos)
    if (iso_weakly_improving(reduced, commit, iso)) ++improving;
  CHECK(improving == 1);  // one of the two is not Pareto improving
}

TEST_CASE("partial isomorphisms: identity psi1 on the same game") {
  Game g = seaway_reduced();
  auto isos = find_partial_isomorphisms(g, g, {0, 1});
  bool has_identity = false;
  for (const auto& iso : isos)
    if (iso.action_map[1] == std::vector<int>{0, 1} && iso.map.m[1] == 1 && iso.map.b[1] == 0) has_identity = true;
  CHECK(has_identity);
  CHECK_THROWS_AS(find_partial_isomorphisms(g, g, {0}), std::invalid_argument);
  CHECK_THROWS_AS(find_partial_isomorphisms(g, g, {0, 7}), std::invalid_argument);
}

TEST_CASE("all isomorphisms share one utility map on constructed pairs") {
  std::mt19937_64 rng(123);
  for (int t = 0; t < 120; ++t) {
    std::vector<int> actions{2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3)};
    Game g = random_game(2, actions, -4, 4, 600 + t);
    AffineUtilityMap expected;
    Game h = transformed_copy(g, rng, &expected);
    auto isos = find_isomorphisms(g, h);
    REQUIRE(!isos.empty());
    for (const auto& iso : isos) {
      CHECK(iso.map == isos.front().map);
      CHECK(is_isomorphism(g, h, iso));
    }
    // the forced map agrees with the construction unless a player is constant
    bool constant = false;
    for (int i = 0; i < 2; ++i) {
      bool same = true;
      for (const auto& u : g.payoffs) same = same && u[i] == g.payoffs[0][i];
      constant = constant || same;
    }
    if (!constant) CHECK(isos.front().map == expected);
  }
}

TEST_CASE("three-player isomorphisms") {
  std::mt19937_64 rng(777);
  for (int t = 0; t < 25; ++t) {
    Game g = random_game(3, {2, 2, 2}, -3, 3, 8800 + t);
    AffineUtilityMap expected;
    Game h = transformed_copy(g, rng, &expected);
    auto isos = find_isomorphisms(g, h);
    REQUIRE(!isos.empty());
    for (const auto& iso : isos) CHECK(is_isomorphism(g, h, iso));
    auto brute = brute_all_isomorphisms(g, h);
    CHECK(isos.size() == brute.size());
  }
  // partial isomorphisms constrain players 2 and 3 only
  Game g = random_game(3, {2, 2, 2}, -3, 3, 8899);
  auto partial = find_partial_isomorphisms(g, g, {0, 1});
  bool has_identity = false;
  for (const auto& iso : partial)
    has_identity = has_identity ||
                   (iso.action_map[1] == std::vector<int>{0, 1} && iso.action_map[2] == std::vector<int>{0, 1});
  CHECK(has_identity);
}

TEST_CASE("search matches the brute-force enumeration on small games") {
  std::mt19937_64 rng(321);
  for (int t = 0; t < 60; ++t) {
    std::vector<int> actions{2 + static_cast<int>(rng() % 3), 2 + static_cast<int>(rng() % 3)};
    Game g = random_game(2, actions, -3, 3, 1500 + t);
    Game h = t % 2 == 0 ? transformed_copy(g, rng) : random_game(2, actions, -3, 3, 2500 + t);
    auto fast = find_isomorphisms(g, h);
    auto brute = brute_all_isomorphisms(g, h);
    REQUIRE(fast.size() == brute.size());
    for (std::size_t k = 0; k < fast.size(); ++k) {
      CHECK(fast[k].action_map == brute[k].action_map);
      CHECK(fast[k].map == brute[k].map);
    }
  }
}
