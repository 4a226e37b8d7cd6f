#pragma once

// Iterated elimination of strictly dominated actions (pure-action dominance
// only). The fully reduced game is unique; the canonical pass order (lowest
// player, then lowest action index) only pins down the trace.

#include <numeric>
#include <optional>
#include <random>
#include <vector>

#include "spikit/game.hpp"

namespace spikit {

struct ReductionStep {
  int player;
  int removed_action;     // original action index
  int dominating_action;  // original action index, dominating at removal time
  bool operator==(const ReductionStep&) const = default;
};

struct ReductionResult {
  Game game;                            // the reduced game
  std::vector<std::vector<int>> kept;   // per player: surviving original indices, ascending
  std::vector<ReductionStep> trace;

  /// Maps an outcome of the reduced game back to original action indices.
  Outcome to_original(const Outcome& reduced) const {
    Outcome o(reduced.size());
    for (std::size_t i = 0; i < reduced.size(); ++i) o[i] = kept[i][reduced[i]];
    return o;
  }
};

namespace detail {

// Dominance test on a restriction of g given by per-player kept lists.
// Player mask limits whose actions may be eliminated (used by the
// default-remapping machinery where Player 1 is pinned).
inline std::optional<int> dominated_in_restriction(const Game& g, const std::vector<std::vector<int>>& kept,
                                                   int player, int action /* original index */) {
  std::vector<int> pos(g.num_players(), 0);
  for (int cand : kept[player]) {
    if (cand == action) continue;
    bool dominates = true;
    std::fill(pos.begin(), pos.end(), 0);
    // iterate opponent profiles over the restriction
    while (true) {
      Outcome a(g.num_players()), b(g.num_players());
      for (int i = 0; i < g.num_players(); ++i) {
        int ai = (i == player) ? action : kept[i][pos[i]];
        a[i] = ai;
        b[i] = (i == player) ? cand : ai;
      }
      if (g.payoff(b)[player] <= g.payoff(a)[player]) {
        dominates = false;
        break;
      }
      int i = g.num_players() - 1;
      for (; i >= 0; --i) {
        if (i == player) continue;
        if (++pos[i] < static_cast<int>(kept[i].size())) break;
        pos[i] = 0;
      }
      if (i < 0) break;
    }
    if (dominates) return cand;
  }
  return std::nullopt;
}

inline ReductionResult reduce_impl(const Game& g, const std::vector<bool>& may_eliminate,
                                   std::mt19937_64* rng) {
  ReductionResult r;
  r.kept.resize(g.players.size());
  for (int i = 0; i < g.num_players(); ++i) {
    r.kept[i].resize(g.num_actions(i));
    std::iota(r.kept[i].begin(), r.kept[i].end(), 0);
  }
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<std::pair<int, int>> scan;  // (player, original action)
    for (int i = 0; i < g.num_players(); ++i) {
      if (!may_eliminate[i] || r.kept[i].size() <= 1) continue;
      for (int a : r.kept[i]) scan.emplace_back(i, a);
    }
    if (rng) std::shuffle(scan.begin(), scan.end(), *rng);
    for (auto [player, action] : scan) {
      if (r.kept[player].size() <= 1) continue;
      auto dom = dominated_in_restriction(g, r.kept, player, action);
      if (dom) {
        r.trace.push_back({player, action, *dom});
        auto& k = r.kept[player];
        k.erase(std::find(k.begin(), k.end(), action));
        changed = true;
        break;  // restart the scan after every removal
      }
    }
  }
  r.game = subgame(g, r.kept);
  return r;
}

}  // namespace detail

/// Some action of `player` strictly dominating `action` in g, if any
/// (lowest index preferred). Pure-action dominance only.
inline std::optional<int> is_strictly_dominated(const Game& g, int player, int action) {
  if (player < 0 || player >= g.num_players() || action < 0 || action >= g.num_actions(player))
    throw std::invalid_argument("is_strictly_dominated: index out of range");
  std::vector<std::vector<int>> kept(g.players.size());
  for (int i = 0; i < g.num_players(); ++i) {
    kept[i].resize(g.num_actions(i));
    std::iota(kept[i].begin(), kept[i].end(), 0);
  }
  return detail::dominated_in_restriction(g, kept, player, action);
}

/// Iteratively removes all strictly dominated actions; canonical order.
inline ReductionResult reduce(const Game& g) {
  return detail::reduce_impl(g, std::vector<bool>(g.players.size(), true), nullptr);
}

/// Same fixed point, randomized elimination order (order-independence tests).
inline ReductionResult reduce_random_order(const Game& g, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return detail::reduce_impl(g, std::vector<bool>(g.players.size(), true), &rng);
}

/// Reduction restricted to a subset of players; the others' action sets are
/// frozen. Used for games under a Player-1 commitment.
inline ReductionResult reduce_players(const Game& g, const std::vector<bool>& may_eliminate) {
  return detail::reduce_impl(g, may_eliminate, nullptr);
}

/// Re-checks a reduction trace step by step against the raw game.
inline bool verify_trace(const Game& g, const ReductionResult& r) {
  std::vector<std::vector<int>> kept(g.players.size());
  for (int i = 0; i < g.num_players(); ++i) {
    kept[i].resize(g.num_actions(i));
    std::iota(kept[i].begin(), kept[i].end(), 0);
  }
  for (const auto& step : r.trace) {
    auto& k = kept[step.player];
    auto it = std::find(k.begin(), k.end(), step.removed_action);
    if (it == k.end()) return false;
    if (std::find(k.begin(), k.end(), step.dominating_action) == k.end()) return false;
    // the recorded dominator must strictly dominate at removal time
    std::vector<int> pos(g.num_players(), 0);
    while (true) {
      Outcome a(g.num_players()), b(g.num_players());
      for (int i = 0; i < g.num_players(); ++i) {
        int ai = (i == step.player) ? step.removed_action : kept[i][pos[i]];
        a[i] = ai;
        b[i] = (i == step.player) ? step.dominating_action : ai;
      }
      if (g.payoff(b)[step.player] <= g.payoff(a)[step.player]) return false;
      int i = g.num_players() - 1;
      for (; i >= 0; --i) {
        if (i == step.player) continue;
        if (++pos[i] < static_cast<int>(kept[i].size())) break;
        pos[i] = 0;
      }
      if (i < 0) break;
    }
    k.erase(it);
  }
  return kept == r.kept;
}

}  // namespace spikit
