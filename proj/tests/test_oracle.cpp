#include <catch2/catch_amalgamated.hpp>

#include "spikit/default_remap.hpp"
#include "spikit/disarm.hpp"
#include "spikit/json_io.hpp"
#include "spikit/oracle.hpp"

using namespace spikit;

namespace {

// a fully reduced 2-player game in [0,1] (normalized matching pennies)
Game unit_mp() {
  Game g;
  g.players = {"P1", "P2"};
  g.actions = {{"H", "T"}, {"H", "T"}};
  g.payoffs = {{Rational(1), Rational(0)}, {Rational(0), Rational(1)},
               {Rational(0), Rational(1)}, {Rational(1), Rational(0)}};
  return g;
}

// unit_mp planted at the top-left of a reduced 3x3 game
Game unit_mp_padded() {
  Game g;
  g.players = {"P1", "P2"};
  g.actions = {{"H", "T", "X"}, {"H", "T", "X"}};
  auto r = [](long a, long d) { return Rational(a, d); };
  g.payoffs = {{r(1, 1), r(0, 1)}, {r(0, 1), r(1, 1)}, {r(0, 1), r(1, 2)},
               {r(0, 1), r(1, 1)}, {r(1, 1), r(0, 1)}, {r(1, 1), r(1, 2)},
               {r(1, 2), r(0, 1)}, {r(1, 2), r(1, 1)}, {r(1, 2), r(1, 2)}};
  return g;
}

}  // namespace

TEST_CASE("worked-example games match their tables") {
  Game seaway = example_game("seaway");
  CHECK(seaway.payoff({1, 1}) == PayoffVector{-100, -100});  // (FN,FN)
  CHECK(seaway.payoff({0, 0}) == PayoffVector{2, 2});
  Game token = example_game("seaway_token");
  CHECK(token.payoff({0, 0}) == PayoffVector{Rational(16, 5), Rational(16, 5)});
  Game temptation = example_game("temptation");
  CHECK(temptation.payoff({2, 2}) == PayoffVector{5, 3});  // (R1,F1)
  Game why_iso = example_game("why_iso");
  CHECK(why_iso.payoff({3, 0}) == PayoffVector{1, 1});  // (r4,c1)
  CHECK_THROWS_AS(example_game("nope"), std::invalid_argument);
}

TEST_CASE("generator outputs round-trip through the file format") {
  for (const char* name : {"seaway", "seaway_token", "negotiation", "temptation", "why_iso"}) {
    Game g = example_game(name);
    CHECK(game_from_json(game_to_json(g)) == g);
  }
  GadgetInstance inst = gen_disarm_verify_gadget(unit_mp(), unit_mp());
  CHECK(game_from_json(game_to_json(inst.game)) == inst.game);
  Graph c5;
  c5.n = 5;
  c5.edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {0, 4}};
  VectorRemapInstance gpr = gen_gpr_from_graph(c5);
  CHECK(gpr.inputs.size() == 10);  // choose(5,2) indicator vectors
  CHECK(gpr.dim == 5);
}

TEST_CASE("gpr gadget pads small graphs to five vertices") {
  Graph tiny;
  tiny.n = 3;
  tiny.edges = {{0, 1}};
  VectorRemapInstance inst = gen_gpr_from_graph(tiny);
  CHECK(inst.dim == 5);
  CHECK(inst.inputs.size() == 10);
  Graph empty5;
  empty5.n = 5;
  CHECK(brute_coloring(empty5));
}

TEST_CASE("random games are reproducible") {
  Game a = random_game(2, {3, 3}, -5, 5, 7);
  Game b = random_game(2, {3, 3}, -5, 5, 7);
  CHECK(a == b);
  Game c = random_game(2, {3, 3}, -5, 5, 8);
  CHECK(a != c);
  for (const auto& u : a.payoffs)
    for (const auto& x : u) {
      CHECK(x >= -5);
      CHECK(x <= 5);
    }
}

TEST_CASE("brute SPI oracle on the negotiation example") {
  Game g = example_game("negotiation");
  Disarmament d = Disarmament::none(g);
  d.removed[0] = {3, 4, 5};
  CHECK(brute_is_spi(g, remove_actions(g, d)));
  CHECK_FALSE(brute_is_spi(g, g));
}

TEST_CASE("disarm-verify gadget: reductions and ground truth") {
  Game G = unit_mp();
  // isomorphic pair: relabel G by swapping player 2's actions
  Game H = subgame(G, {{0, 1}, {1, 0}});
  GadgetInstance iso_inst = gen_disarm_verify_gadget(G, H);
  CHECK(iso_inst.truth);
  // the gadget reduces to its top-left block: G rows + x + xp
  ReductionResult r = reduce(iso_inst.game);
  CHECK(r.kept[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(r.kept[1] == std::vector<int>{0, 1, 2, 3});
  // disarming x makes it reduce to the bottom-right block
  Game after = remove_actions(iso_inst.game, iso_inst.planted);
  ReductionResult ra = reduce(after);
  CHECK(ra.game.actions[0] == std::vector<std::string>{"h1", "h2", "y", "yp"});
  CHECK(ra.game.actions[1] == std::vector<std::string>{"h1", "h2", "y", "yp"});
  // and the disarmament is an SPI exactly when the inputs are isomorphic
  CHECK(verify_disarmament(iso_inst.game, iso_inst.planted).has_value());

  Game H2 = unit_mp();
  H2.payoffs[0] = {Rational(1), Rational(1)};  // break the isomorphism
  GadgetInstance no_inst = gen_disarm_verify_gadget(G, H2);
  CHECK_FALSE(no_inst.truth);
  CHECK_FALSE(verify_disarmament(no_inst.game, no_inst.planted).has_value());
}

TEST_CASE("disarm-search gadget: planted embedding is found") {
  GadgetInstance inst = gen_disarm_search_gadget(unit_mp(), unit_mp_padded());
  REQUIRE(inst.truth);
  // the gadget's default play is its bottom-left block: T rows, D columns
  ReductionResult r = reduce(inst.game);
  std::vector<int> t_rows;
  for (int a = 0; a < inst.game.num_actions(0); ++a)
    if (inst.game.actions[0][a].rfind("T.", 0) == 0) t_rows.push_back(a);
  CHECK(r.kept[0] == t_rows);
  std::vector<int> d_cols;
  for (int a = 0; a < inst.game.num_actions(1); ++a)
    if (inst.game.actions[1][a].rfind("D.", 0) == 0) d_cols.push_back(a);
  CHECK(r.kept[1] == d_cols);
  // the planted disarmament certifies
  CHECK(verify_disarmament(inst.game, inst.planted).has_value());
  // and the search finds some unilateral SPI
  auto hits = search_disarmament(inst.game, DisarmMode::Unilateral, 0);
  CHECK(!hits.empty());

  // no embedding, no SPI
  Game flat;
  flat.players = {"P1", "P2"};
  flat.actions = {{"a", "b"}, {"a", "b"}};
  flat.payoffs.assign(4, {Rational(1, 2), Rational(1, 2)});
  GadgetInstance none = gen_disarm_search_gadget(unit_mp(), flat);
  CHECK_FALSE(none.truth);
  CHECK(search_disarmament(none.game, DisarmMode::Unilateral, 0).empty());

  Game unreduced = example_game("seaway");
  CHECK_THROWS_AS(gen_disarm_search_gadget(unreduced, unit_mp()), std::invalid_argument);
}

TEST_CASE("uni-remap gadget: subgraph embedding decides the SPI") {
  Digraph edge = Digraph::from_edges(2, {{0, 1}});
  GadgetInstance self_inst = gen_uni_remap_gadget(edge, edge);
  CHECK(self_inst.truth);
  // the planted psi1 maps each T row onto its R counterpart
  ReductionResult r = reduce(self_inst.game);
  std::vector<int> psi1;
  for (int a : r.kept[0]) {
    std::string label = self_inst.game.actions[0][a];  // "T.g1_i" or "T.g2_i"
    std::string target = label.substr(2);
    target = (target[1] == '1' ? "R.h1_" : "R.h2_") + target.substr(3);
    for (int b = 0; b < self_inst.game.num_actions(0); ++b)
      if (self_inst.game.actions[0][b] == target) psi1.push_back(b);
  }
  UniVerifyResult res = uni_verify(self_inst.game, UniRemap{psi1});
  CHECK(res.cert.has_value());
  auto hits = uni_search(self_inst.game);
  CHECK(!hits.empty());

  Digraph reversed = Digraph::from_edges(2, {{1, 0}});
  CHECK(gen_uni_remap_gadget(edge, reversed).truth);  // relabeling embeds it
  Digraph empty2 = Digraph::from_edges(2, {});
  GadgetInstance none = gen_uni_remap_gadget(edge, empty2);
  CHECK_FALSE(none.truth);
  CHECK(uni_search(none.game).empty());
}

TEST_CASE("brute subgraph isomorphism") {
  Digraph path = Digraph::from_edges(3, {{0, 1}, {1, 2}});
  Digraph triangle = Digraph::from_edges(3, {{0, 1}, {1, 2}, {2, 0}});
  CHECK_FALSE(brute_subgraph_iso(path, triangle).has_value());  // exact adjacency
  Digraph path4 = Digraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(brute_subgraph_iso(path, path4).has_value());
  CHECK_FALSE(brute_subgraph_iso(path4, path).has_value());
}

TEST_CASE("the planted subgame embedding is found by the subgame search") {
  Game G = unit_mp();
  Game H = unit_mp_padded();
  auto embeddings = find_subgame_isomorphisms(G, H, SubgameIsoVariant::Coeff10);
  bool found = false;
  for (const auto& e : embeddings)
    if (e.subset == std::vector<std::vector<int>>{{0, 1}, {0, 1}}) found = true;
  CHECK(found);
}

TEST_CASE("brute subgame isomorphism with unit coefficients") {
  Game G = unit_mp();
  CHECK(brute_subgame_iso_10(G, unit_mp_padded()));
  Game shifted = G;
  for (auto& u : shifted.payoffs) u[0] += Rational(1, 7);
  CHECK_FALSE(brute_subgame_iso_10(shifted, unit_mp_padded()));
}
