#pragma once

// Reference instances and independent oracles: the worked-example games,
// hardness-gadget generators with recorded ground truth, and brute-force
// deciders used to cross-check the solvers.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "spikit/reduction.hpp"
#include "spikit/spi.hpp"
#include "spikit/token.hpp"

namespace spikit {

namespace detail {

inline Game make_game(std::vector<std::string> players, std::vector<std::vector<std::string>> actions,
                      std::vector<std::vector<std::pair<const char*, const char*>>> table) {
  Game g;
  g.players = std::move(players);
  g.actions = std::move(actions);
  for (const auto& row : table)
    for (const auto& [a, b] : row) g.payoffs.push_back({parse_rational(a), parse_rational(b)});
  g.validate();
  return g;
}

}  // namespace detail

/// The worked-example games, payoff for payoff.
inline Game example_game(const std::string& name) {
  using P = std::pair<const char*, const char*>;
  if (name == "seaway") {
    return detail::make_game(
        {"Country 1", "Country 2"},
        {{"FA", "FN", "PA", "PN"}, {"FA", "FN", "PA", "PN"}},
        {{P{"2", "2"}, P{"-1", "8"}, P{"-10", "10"}, P{"-10", "10"}},
         {P{"8", "-1"}, P{"-100", "-100"}, P{"-10", "10"}, P{"-10", "10"}},
         {P{"10", "-10"}, P{"10", "-10"}, P{"2", "2"}, P{"0", "5"}},
         {P{"10", "-10"}, P{"10", "-10"}, P{"5", "0"}, P{"-10", "-10"}}});
  }
  if (name == "seaway_token") {
    return detail::make_game({"Country 1", "Country 2"}, {{"Token PA", "Token PN"}, {"Token PA", "Token PN"}},
                             {{P{"3.2", "3.2"}, P{"2", "5"}}, {P{"5", "2"}, P{"-4", "-4"}}});
  }
  if (name == "negotiation") {
    // Bob's payoff in the nf x s block is one lower than in the nf x c
    // block: simple contracts reduce flexibility even without loopholes.
    return detail::make_game(
        {"Alice", "Bob"},
        {{"l,nf", "m,nf", "h,nf", "l,f", "m,f", "h,f"}, {"l,s", "m,s", "h,s", "l,c", "m,c", "h,c"}},
        {{P{"2", "3"}, P{"2", "4"}, P{"1", "6"}, P{"4", "4"}, P{"4", "5"}, P{"3", "7"}},
         {P{"3", "3"}, P{"3", "4"}, P{"0", "1"}, P{"5", "4"}, P{"5", "5"}, P{"2", "2"}},
         {P{"5", "2"}, P{"0", "1"}, P{"0", "1"}, P{"7", "3"}, P{"2", "2"}, P{"2", "2"}},
         {P{"3", "3"}, P{"3", "4"}, P{"2", "6"}, P{"5", "2"}, P{"6", "2"}, P{"6", "2"}},
         {P{"4", "3"}, P{"4", "4"}, P{"1", "1"}, P{"6", "2"}, P{"7", "2"}, P{"3", "1"}},
         {P{"6", "2"}, P{"1", "1"}, P{"1", "1"}, P{"8", "1"}, P{"3", "1"}, P{"3", "1"}}});
  }
  if (name == "temptation") {
    return detail::make_game({"Player 1", "Player 2"}, {{"T1", "T2", "R1", "R2"}, {"C1", "C2", "F1", "F2"}},
                             {{P{"4", "2"}, P{"1", "1"}, P{"6", "0"}, P{"6", "0"}},
                              {P{"1", "1"}, P{"2", "4"}, P{"6", "0"}, P{"6", "0"}},
                              {P{"0", "0"}, P{"0", "0"}, P{"5", "3"}, P{"3", "2"}},
                              {P{"0", "0"}, P{"0", "0"}, P{"2", "2"}, P{"3", "5"}}});
  }
  if (name == "why_iso") {
    return detail::make_game(
        {"Player 1", "Player 2"}, {{"r1", "r2", "r3", "r4"}, {"c1", "c2", "c3", "c4", "c5", "c6"}},
        {{P{"-5", "-5"}, P{"-5", "-5"}, P{"-5", "-5"}, P{"-3", "-3"}, P{"-3", "-3"}, P{"0", "5"}},
         {P{"-5", "-5"}, P{"-5", "-5"}, P{"-5", "-5"}, P{"2", "1"}, P{"4", "1"}, P{"-3", "-3"}},
         {P{"-3", "-3"}, P{"-3", "-3"}, P{"0", "5"}, P{"5", "-5"}, P{"5", "-5"}, P{"5", "-5"}},
         {P{"1", "1"}, P{"3", "1"}, P{"-3", "-3"}, P{"5", "-5"}, P{"5", "-5"}, P{"5", "-5"}}});
  }
  throw std::invalid_argument("example_game: unknown name '" + name + "'");
}

/// Seeded random game with integer payoffs (ties stay frequent on purpose,
/// to exercise the strictness logic).
inline Game random_game(int players, const std::vector<int>& actions, long lo, long hi, std::uint64_t seed) {
  if (players < 1 || static_cast<int>(actions.size()) != players)
    throw std::invalid_argument("random_game: bad shape");
  std::mt19937_64 rng(seed);
  Game g;
  for (int i = 0; i < players; ++i) {
    g.players.push_back("P" + std::to_string(i + 1));
    std::vector<std::string> labels;
    for (int a = 0; a < actions[i]; ++a) labels.push_back("a" + std::to_string(i + 1) + std::to_string(a + 1));
    g.actions.push_back(std::move(labels));
  }
  unsigned long span = static_cast<unsigned long>(hi - lo + 1);
  for (std::size_t idx = 0; idx < g.outcome_count(); ++idx) {
    PayoffVector u;
    for (int i = 0; i < players; ++i) u.push_back(Rational(lo + static_cast<long>(rng() % span)));
    g.payoffs.push_back(std::move(u));
  }
  return g;
}

// ---------------------------------------------------------------------------
// graphs

struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;  // undirected, i < j

  bool adjacent(int i, int j) const {
    for (auto [a, b] : edges)
      if ((a == i && b == j) || (a == j && b == i)) return true;
    return false;
  }
};

struct Digraph {
  int n = 0;
  std::vector<std::vector<int>> adj;  // adj[i][j] in {0,1}, diagonal ignored

  static Digraph from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Digraph d;
    d.n = n;
    d.adj.assign(n, std::vector<int>(n, 0));
    for (auto [i, j] : edges) d.adj[i][j] = 1;
    return d;
  }
};

/// Exhaustive k-coloring test (3 colors by default).
inline bool brute_coloring(const Graph& g, int colors = 3) {
  std::vector<int> c(g.n, 0);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == g.n) return true;
    for (int k = 0; k < colors; ++k) {
      bool ok = true;
      for (int u = 0; u < v && ok; ++u)
        if (c[u] == k && g.adjacent(u, v)) ok = false;
      if (ok) {
        c[v] = k;
        if (self(self, v + 1)) return true;
      }
    }
    return false;
  };
  return rec(rec, 0);
}

/// The 3-coloring gadget: satisfiable iff the (padded, >= 5 vertex) graph is
/// 3-colorable. S holds the choose(n,2) one-pair indicator vectors; targets
/// are .5 everywhere except a color pair at (i, j), distinct when (i,j) is an
/// edge.
inline VectorRemapInstance gen_gpr_from_graph(const Graph& graph) {
  int n = std::max(graph.n, 5);  // pad with isolated vertices
  VectorRemapInstance inst;
  inst.dim = n;
  Rational half(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      PayoffVector v(n, Rational(0));
      v[i] = 1;
      v[j] = 1;
      inst.inputs.push_back(std::move(v));
      bool edge = i < graph.n && j < graph.n && graph.adjacent(i, j);
      for (int ci = 1; ci <= 3; ++ci)
        for (int cj = 1; cj <= 3; ++cj) {
          if (edge && ci == cj) continue;
          PayoffVector t(n, half);
          t[i] = ci;
          t[j] = cj;
          inst.targets.push_back(std::move(t));
        }
    }
  return inst;
}

// ---------------------------------------------------------------------------
// brute-force SPI oracles (full enumeration, no forced-map shortcuts)

namespace detail {

// applies fn to every tuple of per-player bijections g -> h; fn returning
// true stops the enumeration
template <typename Fn>
bool for_each_bijection_tuple(const Game& g, const Game& h, Fn&& fn) {
  int n = g.num_players();
  for (int i = 0; i < n; ++i)
    if (g.num_actions(i) != h.num_actions(i)) return false;
  std::vector<std::vector<int>> perms(n);
  for (int i = 0; i < n; ++i) {
    perms[i].resize(g.num_actions(i));
    std::iota(perms[i].begin(), perms[i].end(), 0);
  }
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == n) return fn(perms);
    std::vector<int> p(g.num_actions(i));
    std::iota(p.begin(), p.end(), 0);
    do {
      perms[i] = p;
      if (self(self, i + 1)) return true;
    } while (std::next_permutation(p.begin(), p.end()));
    return false;
  };
  return rec(rec, 0);
}

// affine fit per player for a concrete bijection tuple; nullopt when the
// payoff pairs are not consistent with some m > 0
inline std::optional<AffineUtilityMap> fit_map(const Game& g, const Game& h,
                                               const std::vector<std::vector<int>>& maps) {
  int n = g.num_players();
  AffineUtilityMap out;
  out.m.assign(n, Rational(1));
  out.b.assign(n, Rational(0));
  for (int i = 0; i < n; ++i) {
    std::optional<std::pair<Rational, Rational>> first;
    std::optional<std::pair<Rational, Rational>> fit;
    bool ok = true;
    for_each_outcome(g, [&](const Outcome& o) {
      if (!ok) return;
      Outcome img(o.size());
      for (std::size_t p = 0; p < o.size(); ++p) img[p] = maps[p][o[p]];
      Rational x = g.payoff(o)[i], y = h.payoff(img)[i];
      if (fit) {
        if (y != fit->first * x + fit->second) ok = false;
      } else if (first) {
        if (x == first->first) {
          if (y != first->second) ok = false;
        } else {
          Rational m = (y - first->second) / (x - first->first);
          if (m <= 0) ok = false;
          else fit = {m, first->second - m * first->first};
        }
      } else {
        first = {x, y};
      }
    });
    if (!ok) return std::nullopt;
    if (fit) {
      out.m[i] = fit->first;
      out.b[i] = fit->second;
    } else {
      out.m[i] = 1;
      out.b[i] = first->second - first->first;
    }
  }
  return out;
}

}  // namespace detail

/// Every isomorphism between g and h by plain bijection enumeration.
inline std::vector<Isomorphism> brute_all_isomorphisms(const Game& g, const Game& h,
                                                       int max_actions_per_player = 6) {
  for (int i = 0; i < g.num_players(); ++i)
    if (g.num_actions(i) > max_actions_per_player || h.num_actions(i) > max_actions_per_player)
      throw size_cap_error("brute_all_isomorphisms: instance too large");
  std::vector<Isomorphism> out;
  if (g.num_players() != h.num_players()) return out;
  detail::for_each_bijection_tuple(g, h, [&](const std::vector<std::vector<int>>& maps) {
    if (auto map = detail::fit_map(g, h, maps)) {
      Isomorphism iso;
      iso.action_map = maps;
      iso.map = *map;
      out.push_back(std::move(iso));
    }
    return false;
  });
  std::sort(out.begin(), out.end(),
            [](const Isomorphism& a, const Isomorphism& b) { return a.action_map < b.action_map; });
  return out;
}

/// The characterization-lemma decision by full enumeration.
inline bool brute_is_spi(const Game& def, const Game& cand, ImprovementKind kind = ImprovementKind::Pareto) {
  Game rd = reduce(def).game;
  Game rc = reduce(cand).game;
  // condition 2
  bool weak_all = true;
  for (const auto& s : rd.payoffs)
    for (const auto& t : rc.payoffs)
      if (!detail::weak_improve(t, s, kind)) {
        weak_all = false;
        break;
      }
  if (weak_all) {
    for (const auto& s : rd.payoffs) {
      bool all_strict = true;
      for (const auto& t : rc.payoffs)
        if (!detail::strict_improve(t, s, kind)) {
          all_strict = false;
          break;
        }
      if (all_strict) return true;
    }
  }
  // condition 1
  bool found = false;
  detail::for_each_bijection_tuple(rd, rc, [&](const std::vector<std::vector<int>>& maps) {
    auto map = detail::fit_map(rd, rc, maps);
    if (!map) return false;
    bool weak = true, strict = false;
    for_each_outcome(rd, [&](const Outcome& o) {
      Outcome img(o.size());
      for (std::size_t p = 0; p < o.size(); ++p) img[p] = maps[p][o[p]];
      if (!detail::weak_improve(rc.payoff(img), rd.payoff(o), kind)) weak = false;
      if (detail::strict_improve(rc.payoff(img), rd.payoff(o), kind)) strict = true;
    });
    if (weak && strict) {
      found = true;
      return true;
    }
    return false;
  });
  return found;
}

/// Pure isomorphism token SPI by enumerating every map V -> u(A).
inline bool brute_pure_token(const Game& g, std::uint64_t cap = 4000000) {
  ReductionResult r = reduce(g);
  std::vector<PayoffVector> V = payoff_set(r.game);
  std::vector<PayoffVector> UA = payoff_set(g);
  long double total = std::pow(static_cast<long double>(UA.size()), static_cast<long double>(V.size()));
  if (total > static_cast<long double>(cap)) throw size_cap_error("brute_pure_token: instance too large");
  const int n = g.num_players();
  std::vector<std::size_t> choice(V.size(), 0);
  while (true) {
    bool ok = true, strict = false;
    std::vector<std::optional<std::pair<Rational, Rational>>> first(n);
    std::vector<std::optional<std::pair<Rational, Rational>>> fit(n);
    for (std::size_t k = 0; k < V.size() && ok; ++k) {
      const PayoffVector& v = V[k];
      const PayoffVector& w = UA[choice[k]];
      if (!weakly_improves(w, v)) ok = false;
      strict = strict || strictly_improves(w, v);
      for (int i = 0; i < n && ok; ++i) {
        Rational x = v[i], y = w[i];
        if (fit[i]) {
          if (y != fit[i]->first * x + fit[i]->second) ok = false;
        } else if (first[i]) {
          if (x == first[i]->first) {
            if (y != first[i]->second) ok = false;
          } else {
            Rational m = (y - first[i]->second) / (x - first[i]->first);
            if (m <= 0) ok = false;
            else fit[i] = {m, first[i]->second - m * first[i]->first};
          }
        } else {
          first[i] = {x, y};
        }
      }
    }
    if (ok && strict) return true;
    std::size_t pos = choice.size();
    while (pos > 0) {
      if (++choice[pos - 1] < UA.size()) break;
      choice[pos - 1] = 0;
      --pos;
    }
    if (pos == 0) return false;
  }
}

/// 1-0-coefficient subgame isomorphism from g into h by injection search.
inline bool brute_subgame_iso_10(const Game& g, const Game& h) {
  if (g.num_players() != h.num_players()) return false;
  int n = g.num_players();
  for (int i = 0; i < n; ++i)
    if (g.num_actions(i) > h.num_actions(i)) return false;
  std::vector<std::vector<int>> inj(n);
  std::vector<std::vector<bool>> used(n);
  for (int i = 0; i < n; ++i) {
    inj[i].assign(g.num_actions(i), -1);
    used[i].assign(h.num_actions(i), false);
  }
  // order: player-major; payoff equality checked once complete
  auto check = [&]() {
    bool ok = true;
    for_each_outcome(g, [&](const Outcome& o) {
      if (!ok) return;
      Outcome img(o.size());
      for (std::size_t p = 0; p < o.size(); ++p) img[p] = inj[p][o[p]];
      if (h.payoff(img) != g.payoff(o)) ok = false;
    });
    return ok;
  };
  auto rec = [&](auto&& self, int player, int a) -> bool {
    if (player == n) return check();
    if (a == g.num_actions(player)) return self(self, player + 1, 0);
    for (int b = 0; b < h.num_actions(player); ++b) {
      if (used[player][b]) continue;
      inj[player][a] = b;
      used[player][b] = true;
      if (self(self, player, a + 1)) return true;
      used[player][b] = false;
      inj[player][a] = -1;
    }
    return false;
  };
  return rec(rec, 0, 0);
}

/// Directed subgraph isomorphism (injection preserving adjacency exactly).
inline std::optional<std::vector<int>> brute_subgraph_iso(const Digraph& a, const Digraph& b) {
  if (a.n > b.n) return std::nullopt;
  std::vector<int> phi(a.n, -1);
  std::vector<bool> used(b.n, false);
  auto rec = [&](auto&& self, int v) -> bool {
    if (v == a.n) return true;
    for (int w = 0; w < b.n; ++w) {
      if (used[w]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) {
        if (a.adj[u][v] != b.adj[phi[u]][w]) ok = false;
        if (a.adj[v][u] != b.adj[w][phi[u]]) ok = false;
      }
      if (ok) {
        phi[v] = w;
        used[w] = true;
        if (self(self, v + 1)) return true;
        used[w] = false;
        phi[v] = -1;
      }
    }
    return false;
  };
  if (rec(rec, 0)) return phi;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// hardness-gadget generators

struct GadgetInstance {
  Game game;
  bool truth = false;          // recorded ground truth for the gadget's question
  Disarmament planted;         // a witness disarmament when truth holds (search gadget)
  std::string note;
};

namespace detail {

// per-player normalization to [0,1]; constant players pinned to 1/2
inline Game normalize_unit(const Game& g) {
  Game out = g;
  int n = g.num_players();
  for (int i = 0; i < n; ++i) {
    Rational lo = g.payoffs[0][i], hi = g.payoffs[0][i];
    for (const auto& u : g.payoffs) {
      if (u[i] < lo) lo = u[i];
      if (u[i] > hi) hi = u[i];
    }
    for (auto& u : out.payoffs) {
      if (lo == hi)
        u[i] = Rational(1, 2);
      else
        u[i] = (u[i] - lo) / (hi - lo);
    }
  }
  return out;
}

}  // namespace detail

/// Gadget for the disarmament-verification problem: the disarmament of
/// Player 1's action "x" is an SPI iff the (normalized) inputs are
/// isomorphic with coefficients 1 and 0. Two-player inputs only.
inline GadgetInstance gen_disarm_verify_gadget(const Game& g_in, const Game& h_in) {
  if (g_in.num_players() != 2 || h_in.num_players() != 2)
    throw std::invalid_argument("gen_disarm_verify_gadget: two-player inputs required");
  Game G = detail::normalize_unit(g_in);
  Game H = detail::normalize_unit(h_in);
  const Rational e(1, 100);
  const int n1 = G.num_actions(0), n2 = G.num_actions(1);
  const int m1 = H.num_actions(0), m2 = H.num_actions(1);

  GadgetInstance inst;
  Game& out = inst.game;
  out.players = {"P1", "P2"};
  out.actions.assign(2, {});
  for (int a = 0; a < n1; ++a) out.actions[0].push_back("g" + std::to_string(a + 1));
  out.actions[0].push_back("x");
  out.actions[0].push_back("xp");
  for (int a = 0; a < m1; ++a) out.actions[0].push_back("h" + std::to_string(a + 1));
  out.actions[0].push_back("y");
  out.actions[0].push_back("yp");
  for (int a = 0; a < n2; ++a) out.actions[1].push_back("g" + std::to_string(a + 1));
  out.actions[1].push_back("x");
  out.actions[1].push_back("xp");
  for (int a = 0; a < m2; ++a) out.actions[1].push_back("h" + std::to_string(a + 1));
  out.actions[1].push_back("y");
  out.actions[1].push_back("yp");

  enum Block { GA, X, XP, HB, Y, YP };
  auto row_block = [&](int r) {
    if (r < n1) return GA;
    if (r == n1) return X;
    if (r == n1 + 1) return XP;
    if (r < n1 + 2 + m1) return HB;
    if (r == n1 + 2 + m1) return Y;
    return YP;
  };
  auto col_block = [&](int c) {
    if (c < n2) return GA;
    if (c == n2) return X;
    if (c == n2 + 1) return XP;
    if (c < n2 + 2 + m2) return HB;
    if (c == n2 + 2 + m2) return Y;
    return YP;
  };
  auto pay = [&](const char* a, const char* b) {
    return PayoffVector{parse_rational(a), parse_rational(b)};
  };
  const int rows = n1 + 2 + m1 + 2, cols = n2 + 2 + m2 + 2;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      Block rb = row_block(r), cb = col_block(c);
      PayoffVector u;
      switch (rb) {
        case GA:
          if (cb == GA) u = G.payoff({r, c});
          else if (cb == X) u = pay("0", "0");
          else if (cb == XP) u = pay("-100", "10");
          else if (cb == HB) u = {-e, -e};
          else if (cb == Y) u = {-2 * e, -e};
          else u = {-100 - e, -e};
          break;
        case X:
          if (cb == GA) u = {Rational(0), 10 + e};
          else if (cb == X) u = {Rational(10), 10 + e};
          else if (cb == XP) u = pay("10", "10");
          else if (cb == HB) u = {1 + 2 * e, 10 - e};
          else u = {10 + 2 * e, 10 - 2 * e};  // Y and YP
          break;
        case XP:
          if (cb == GA) u = pay("1", "-100");
          else if (cb == X) u = pay("0", "-100");
          else if (cb == XP) u = pay("-10", "-10");
          else if (cb == YP) u = {-100 - e, -100 - e};
          else u = {-e, -100 - e};  // HB and Y
          break;
        case HB:
          if (cb == GA) u = {-e, -100 - 2 * e};
          else if (cb == X) u = {10 - e, -100 - 2 * e};
          else if (cb == XP) u = {10 - e, -100 - e};
          else if (cb == HB) {
            u = H.payoff({r - (n1 + 2), c - (n2 + 2)});
            u[0] += e;
            u[1] += e;
          } else if (cb == Y) u = {e, e};
          else u = {-100 + e, 10 + e};
          break;
        case Y:
          if (cb == GA) u = {-e, -100 - 2 * e};
          else if (cb == X) u = {10 - e, -100 - 2 * e};
          else if (cb == XP) u = {10 - e, -100 - e};
          else if (cb == HB) u = {e, 10 + 2 * e};
          else if (cb == Y) u = {10 + e, 10 + 2 * e};
          else u = {10 + e, 10 + e};
          break;
        case YP:
          if (cb == GA) u = {-e, -100 - 2 * e};
          else if (cb == X) u = {10 - e, -100 - 2 * e};
          else if (cb == XP) u = {10 - e, -100 - e};
          else if (cb == HB) u = {1 + e, -100 + e};
          else if (cb == Y) u = {e, -100 + e};
          else u = {-10 + e, -10 + e};
          break;
      }
      out.payoffs.push_back(std::move(u));
    }
  }
  out.validate();
  // ground truth: 1-0 isomorphism between the normalized inputs
  inst.truth = false;
  if (G.num_actions(0) == H.num_actions(0) && G.num_actions(1) == H.num_actions(1)) {
    detail::for_each_bijection_tuple(G, H, [&](const std::vector<std::vector<int>>& maps) {
      bool ok = true;
      for_each_outcome(G, [&](const Outcome& o) {
        if (!ok) return;
        Outcome img{maps[0][o[0]], maps[1][o[1]]};
        if (H.payoff(img) != G.payoff(o)) ok = false;
      });
      if (ok) inst.truth = true;
      return ok;
    });
  }
  inst.planted = Disarmament::none(out);
  inst.planted.removed[0].insert(n1);  // the "x" row
  inst.note = "disarm {x} for player 1 is an SPI iff the inputs are 1-0 isomorphic";
  return inst;
}

/// Gadget for the disarmament-search problem (the temptation/refrain block
/// game): a unilateral disarmament SPI exists iff G embeds into H by a
/// 1-0-coefficient subgame isomorphism. Inputs must be fully reduced
/// two-player games; utilities are normalized to [0,1].
inline GadgetInstance gen_disarm_search_gadget(const Game& g_in, const Game& h_in) {
  if (g_in.num_players() != 2 || h_in.num_players() != 2)
    throw std::invalid_argument("gen_disarm_search_gadget: two-player inputs required");
  Game G = detail::normalize_unit(g_in);
  Game H = detail::normalize_unit(h_in);
  {
    ReductionResult rg = reduce(G), rh = reduce(H);
    if (rg.game.outcome_count() != G.outcome_count() || rh.game.outcome_count() != H.outcome_count())
      throw std::invalid_argument("gen_disarm_search_gadget: inputs must be fully reduced");
  }
  const Rational e(1, 100);
  const int n1 = G.num_actions(0), n2 = G.num_actions(1);
  const int m1 = H.num_actions(0), m2 = H.num_actions(1);

  GadgetInstance inst;
  Game& out = inst.game;
  out.players = {"P1", "P2"};
  out.actions.assign(2, {});
  // player 1 rows: R x A1' (m1), R x A2' (m2), T x A1 (n1), T x A2 (n2)
  for (int a = 0; a < m1; ++a) out.actions[0].push_back("R.h1_" + std::to_string(a + 1));
  for (int a = 0; a < m2; ++a) out.actions[0].push_back("R.h2_" + std::to_string(a + 1));
  for (int a = 0; a < n1; ++a) out.actions[0].push_back("T.g1_" + std::to_string(a + 1));
  for (int a = 0; a < n2; ++a) out.actions[0].push_back("T.g2_" + std::to_string(a + 1));
  // player 2 cols: D x A2 (n2), D.bar, P x A2' (m2), P.bar
  for (int a = 0; a < n2; ++a) out.actions[1].push_back("D.g2_" + std::to_string(a + 1));
  out.actions[1].push_back("D.bar");
  for (int a = 0; a < m2; ++a) out.actions[1].push_back("P.h2_" + std::to_string(a + 1));
  out.actions[1].push_back("P.bar");

  const int rows = m1 + m2 + n1 + n2, cols = n2 + 1 + m2 + 1;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      PayoffVector u;
      bool r_RA1 = r < m1, r_RA2 = !r_RA1 && r < m1 + m2;
      bool r_TA1 = r >= m1 + m2 && r < m1 + m2 + n1;
      bool c_D = c < n2, c_Dbar = c == n2;
      bool c_P = c > n2 && c < n2 + 1 + m2;
      if (r_RA1 || r_RA2) {
        if (c_D || c_Dbar) u = {Rational(-10), Rational(-10)};
        else if (c_P) {
          int pc = c - (n2 + 1);
          if (r_RA1) {
            u = H.payoff({r, pc});
            u[0] += e;
            u[1] += e;
          } else {
            // off-diagonal entries carry the +epsilon shift of their T x A2
            // counterparts so the block isomorphism is exact
            int rr = r - m1;
            u = (rr == pc) ? PayoffVector{-1 + e, 3 + e} : PayoffVector{-2 + e, -2 + e};
          }
        } else {  // P.bar
          u = r_RA1 ? PayoffVector{e, 2 + e} : PayoffVector{1 + e, 2 + e};
        }
      } else if (r_TA1) {
        int tr = r - (m1 + m2);
        if (c_D) u = G.payoff({tr, c});
        else if (c_Dbar) u = {Rational(0), Rational(2)};
        else u = {Rational(10), Rational(-10)};
      } else {  // T x A2 rows
        int tr = r - (m1 + m2 + n1);
        if (c_D) u = (tr == c) ? PayoffVector{Rational(-1), Rational(3)} : PayoffVector{Rational(-2), Rational(-2)};
        else if (c_Dbar) u = {Rational(1), Rational(2)};
        else u = {Rational(10), Rational(-10)};
      }
      out.payoffs.push_back(std::move(u));
    }
  }
  out.validate();
  inst.truth = brute_subgame_iso_10(G, H);
  inst.note = "a unilateral disarmament SPI exists iff G embeds into H with coefficients 1,0";
  // planted witness when the identity-position embedding works: disarm all T
  // rows and the R rows outside the identity image
  if (inst.truth && m1 >= n1 && m2 >= n2) {
    bool identity_embeds = true;
    for (int a = 0; a < n1 && identity_embeds; ++a)
      for (int b = 0; b < n2 && identity_embeds; ++b)
        if (H.payoff({a, b}) != G.payoff({a, b})) identity_embeds = false;
    if (identity_embeds) {
      inst.planted = Disarmament::none(out);
      for (int r = 0; r < rows; ++r) {
        bool keep = (r < n1) || (r >= m1 && r < m1 + n2);
        if (!keep) inst.planted.removed[0].insert(r);
      }
    }
  }
  return inst;
}

/// Gadget for unilateral default-remapping hardness: built on the search
/// gadget with "both players get adj(i,j)" graph games ((3/2, 3/2) on the
/// diagonal). A unilateral remapping SPI exists iff d1 embeds into d2.
inline GadgetInstance gen_uni_remap_gadget(const Digraph& d1, const Digraph& d2) {
  auto graph_game = [](const Digraph& d) {
    Game g;
    g.players = {"P1", "P2"};
    g.actions.assign(2, {});
    for (int i = 0; i < d.n; ++i) {
      g.actions[0].push_back("v" + std::to_string(i + 1));
      g.actions[1].push_back("v" + std::to_string(i + 1));
    }
    for (int i = 0; i < d.n; ++i)
      for (int j = 0; j < d.n; ++j) {
        Rational v = i == j ? Rational(3, 2) : Rational(d.adj[i][j]);
        g.payoffs.push_back({v, v});
      }
    return g;
  };
  Game G = graph_game(d1), H = graph_game(d2);
  GadgetInstance inst = gen_disarm_search_gadget(G, H);
  inst.truth = brute_subgraph_iso(d1, d2).has_value();
  inst.note = "a unilateral default-remapping SPI exists iff the first graph embeds into the second";
  return inst;
}

}  // namespace spikit
