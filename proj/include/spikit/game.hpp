#pragma once

// Finite normal-form games over exact rationals, plus the elementary
// operations everything else consumes: Pareto comparison, expected payoffs of
// correlated profiles, subgames, payoff sets.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "spikit/rational.hpp"

namespace spikit {

using PayoffVector = std::vector<Rational>;
using Outcome = std::vector<int>;  // one action index per player

enum class ParetoOrder { Equal, WeaklyBelow, StrictlyBelow, WeaklyAbove, StrictlyAbove, Incomparable };

/// Six-way Pareto comparison. StrictlyAbove(v,w) iff v >= w entrywise with at
/// least one strict entry; Equal iff identical; Incomparable otherwise. The
/// Weak* values exist for symmetry of the ordering type; with total entrywise
/// comparison they cannot be produced (>= everywhere with no strict entry
/// means equality).
inline ParetoOrder pareto_compare(const PayoffVector& v, const PayoffVector& w) {
  if (v.size() != w.size()) throw std::invalid_argument("pareto_compare: length mismatch");
  bool ge = true, le = true, any_gt = false, any_lt = false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    int c = cmp(v[i], w[i]);
    if (c > 0) { any_gt = true; le = false; }
    if (c < 0) { any_lt = true; ge = false; }
  }
  if (ge && le) return ParetoOrder::Equal;
  if (ge) return any_gt ? ParetoOrder::StrictlyAbove : ParetoOrder::WeaklyAbove;
  if (le) return any_lt ? ParetoOrder::StrictlyBelow : ParetoOrder::WeaklyBelow;
  return ParetoOrder::Incomparable;
}

/// v >= w entrywise (weak Pareto improvement of v over w).
inline bool weakly_improves(const PayoffVector& v, const PayoffVector& w) {
  auto o = pareto_compare(v, w);
  return o == ParetoOrder::Equal || o == ParetoOrder::StrictlyAbove;
}

/// v >= w entrywise with at least one strict entry.
inline bool strictly_improves(const PayoffVector& v, const PayoffVector& w) {
  return pareto_compare(v, w) == ParetoOrder::StrictlyAbove;
}

struct Game {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;  // per player
  std::vector<PayoffVector> payoffs;              // dense, row-major by player order

  int num_players() const { return static_cast<int>(players.size()); }
  int num_actions(int player) const { return static_cast<int>(actions[player].size()); }

  std::size_t outcome_count() const {
    std::size_t n = 1;
    for (const auto& a : actions) n *= a.size();
    return n;
  }

  std::size_t flatten(const Outcome& o) const {
    std::size_t idx = 0;
    for (int i = 0; i < num_players(); ++i) idx = idx * actions[i].size() + static_cast<std::size_t>(o[i]);
    return idx;
  }

  Outcome unflatten(std::size_t idx) const {
    Outcome o(players.size());
    for (int i = num_players() - 1; i >= 0; --i) {
      o[i] = static_cast<int>(idx % actions[i].size());
      idx /= actions[i].size();
    }
    return o;
  }

  const PayoffVector& payoff(const Outcome& o) const { return payoffs[flatten(o)]; }

  bool valid_outcome(const Outcome& o) const {
    if (static_cast<int>(o.size()) != num_players()) return false;
    for (int i = 0; i < num_players(); ++i)
      if (o[i] < 0 || o[i] >= num_actions(i)) return false;
    return true;
  }

  void validate() const {
    if (players.empty()) throw std::invalid_argument("game needs at least one player");
    if (actions.size() != players.size()) throw std::invalid_argument("actions/players size mismatch");
    for (const auto& a : actions)
      if (a.empty()) throw std::invalid_argument("every player needs at least one action");
    if (payoffs.size() != outcome_count()) throw std::invalid_argument("payoff tensor is not total");
    for (const auto& p : payoffs)
      if (p.size() != players.size()) throw std::invalid_argument("payoff vector length mismatch");
  }

  bool operator==(const Game& other) const = default;
};

/// Iterates all outcomes in canonical (row-major) order.
template <typename F>
void for_each_outcome(const Game& g, F&& f) {
  for (std::size_t idx = 0; idx < g.outcome_count(); ++idx) f(g.unflatten(idx));
}

struct CorrelatedProfile {
  std::map<Outcome, Rational> support;  // probabilities, > 0 on support

  void validate(const Game& g) const {
    Rational total = 0;
    for (const auto& [o, p] : support) {
      if (!g.valid_outcome(o)) throw std::invalid_argument("correlated profile: invalid outcome in support");
      if (p <= 0) throw std::invalid_argument("correlated profile: probabilities must be positive");
      total += p;
    }
    if (total != 1) throw std::invalid_argument("correlated profile: probabilities must sum to 1");
  }

  static CorrelatedProfile point_mass(Outcome o) {
    CorrelatedProfile c;
    c.support.emplace(std::move(o), Rational(1));
    return c;
  }

  bool operator==(const CorrelatedProfile&) const = default;
};

/// u(c) = sum_a c(a) u(a), exact.
inline PayoffVector expected_payoff(const Game& g, const CorrelatedProfile& c) {
  c.validate(g);
  PayoffVector out(g.players.size(), Rational(0));
  for (const auto& [o, p] : c.support) {
    const PayoffVector& u = g.payoff(o);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += p * u[i];
  }
  return out;
}

struct Disarmament {
  std::vector<std::set<int>> removed;  // per player, action indices

  static Disarmament none(const Game& g) { return Disarmament{std::vector<std::set<int>>(g.players.size())}; }
};

/// Subgame on the given per-player kept action indices (ascending, nonempty).
inline Game subgame(const Game& g, const std::vector<std::vector<int>>& kept) {
  Game s;
  s.players = g.players;
  s.actions.resize(g.players.size());
  for (int i = 0; i < g.num_players(); ++i) {
    if (kept[i].empty()) throw std::invalid_argument("subgame: player left with no actions");
    for (int a : kept[i]) {
      if (a < 0 || a >= g.num_actions(i)) throw std::invalid_argument("subgame: action index out of range");
      s.actions[i].push_back(g.actions[i][a]);
    }
  }
  s.payoffs.reserve(s.outcome_count());
  for (std::size_t idx = 0; idx < s.outcome_count(); ++idx) {
    Outcome so = s.unflatten(idx);
    Outcome go(so.size());
    for (std::size_t i = 0; i < so.size(); ++i) go[i] = kept[i][so[i]];
    s.payoffs.push_back(g.payoff(go));
  }
  return s;
}

/// G - (per-player removed action sets). Labels are preserved.
inline Game remove_actions(const Game& g, const Disarmament& d) {
  if (static_cast<int>(d.removed.size()) != g.num_players())
    throw std::invalid_argument("remove_actions: disarmament shape mismatch");
  std::vector<std::vector<int>> kept(g.players.size());
  for (int i = 0; i < g.num_players(); ++i) {
    for (int a : d.removed[i])
      if (a < 0 || a >= g.num_actions(i)) throw std::invalid_argument("remove_actions: action index out of range");
    for (int a = 0; a < g.num_actions(i); ++a)
      if (!d.removed[i].count(a)) kept[i].push_back(a);
    if (kept[i].empty()) throw std::invalid_argument("remove_actions: player left with no actions");
  }
  return subgame(g, kept);
}

/// u(A): deduplicated payoff vectors, in canonical (lexicographic) order.
inline std::vector<PayoffVector> payoff_set(const Game& g) {
  std::vector<PayoffVector> out(g.payoffs.begin(), g.payoffs.end());
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace spikit
