#pragma once

// Game isomorphism search and verification: full isomorphisms, (strictly)
// Pareto-improving and coefficient-(1,0) variants, subgame embeddings, and
// the partial isomorphisms (psi1, phi_2, ..., phi_n) that only constrain
// players 2..n. Players are never permuted.
//
// All searches are exact backtracking. The per-player utility map is forced
// before any bijection search: min/max utilities must correspond under a
// positive affine map, so there is exactly one candidate map (constant-utility
// players are canonicalized to m=1). Actions are bucketed by the multiset of
// their transformed payoff rows, which prunes hard on structured games.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "spikit/game.hpp"
#include "spikit/rational.hpp"

namespace spikit {

struct AffineUtilityMap {
  std::vector<Rational> m, b;  // per player, m > 0

  PayoffVector apply(const PayoffVector& v) const {
    PayoffVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = m[i] * v[i] + b[i];
    return out;
  }
  bool operator==(const AffineUtilityMap&) const = default;
};

enum class IsoScope { AllPlayers, PlayersMinusOne };

struct Isomorphism {
  // per player: g action index -> h action index. For PlayersMinusOne,
  // action_map[0] is the fixed psi1 (not necessarily injective) and
  // map.m[0]/map.b[0] are meaningless placeholders (1, 0).
  std::vector<std::vector<int>> action_map;
  AffineUtilityMap map;
  IsoScope scope = IsoScope::AllPlayers;

  Outcome apply(const Outcome& o) const {
    Outcome out(o.size());
    for (std::size_t i = 0; i < o.size(); ++i) out[i] = action_map[i][o[i]];
    return out;
  }
  bool operator==(const Isomorphism&) const = default;
};

namespace detail {

struct IsoProblem {
  const Game& g;
  const Game& h;
  AffineUtilityMap map;
  int first_player;              // 0 for full isomorphisms, 1 for partial
  std::vector<int> psi1;         // used when first_player == 1
  std::size_t limit;             // stop after this many found
};

// payoff "view" restricted to the constrained players, transformed for g
inline std::vector<Rational> constrained_payoff(const IsoProblem& pr, const PayoffVector& u, bool transform) {
  std::vector<Rational> out;
  out.reserve(u.size() - pr.first_player);
  for (int j = pr.first_player; j < static_cast<int>(u.size()); ++j)
    out.push_back(transform ? pr.map.m[j] * u[j] + pr.map.b[j] : u[j]);
  return out;
}

class IsoSearch {
 public:
  explicit IsoSearch(const IsoProblem& pr) : pr_(pr), n_(pr.g.num_players()) {
    assign_.resize(n_);
    used_.resize(n_);
    assigned_.resize(n_);
    for (int i = 0; i < n_; ++i) {
      assign_[i].assign(pr_.g.num_actions(i), -1);
      used_[i].assign(pr_.h.num_actions(i), false);
    }
    if (pr_.first_player == 1) {
      assign_[0] = pr_.psi1;
      for (int a = 0; a < pr_.g.num_actions(0); ++a) assigned_[0].push_back(a);
    }
    for (int k = 0;; ++k) {
      bool any = false;
      for (int i = pr_.first_player; i < n_; ++i)
        if (k < pr_.g.num_actions(i)) {
          order_.emplace_back(i, k);
          any = true;
        }
      if (!any) break;
    }
    build_buckets();
  }

  std::vector<Isomorphism> run() {
    if (!feasible_) return {};
    recurse(0);
    std::sort(results_.begin(), results_.end(),
              [](const Isomorphism& a, const Isomorphism& b) { return a.action_map < b.action_map; });
    return results_;
  }

 private:
  const IsoProblem& pr_;
  int n_;
  bool feasible_ = true;
  std::vector<std::vector<int>> assign_;
  std::vector<std::vector<bool>> used_;
  std::vector<std::vector<int>> assigned_;         // g actions assigned so far, per player
  std::vector<std::pair<int, int>> order_;         // (player, g action)
  std::vector<std::vector<std::vector<int>>> candidates_;  // per player, per g action
  std::vector<Isomorphism> results_;

  using Signature = std::vector<std::vector<Rational>>;

  // rows of `player`'s action a: multiset of constrained payoff vectors over
  // the other coordinates; for the h side, player-0 coordinates range over
  // psi1 images (with multiplicity) in partial mode.
  Signature g_signature(int player, int a) const {
    Signature sig;
    std::vector<int> pos(n_, 0);
    while (true) {
      Outcome o(n_);
      for (int i = 0; i < n_; ++i) o[i] = (i == player) ? a : pos[i];
      sig.push_back(constrained_payoff(pr_, pr_.g.payoff(o), true));
      int i = n_ - 1;
      for (; i >= 0; --i) {
        if (i == player) continue;
        if (++pos[i] < pr_.g.num_actions(i)) break;
        pos[i] = 0;
      }
      if (i < 0) break;
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  }

  Signature h_signature(int player, int a) const {
    Signature sig;
    std::vector<int> pos(n_, 0);  // player-0 position indexes g actions in partial mode
    while (true) {
      Outcome o(n_);
      for (int i = 0; i < n_; ++i) {
        if (i == player)
          o[i] = a;
        else if (i == 0 && pr_.first_player == 1)
          o[i] = pr_.psi1[pos[i]];
        else
          o[i] = pos[i];
      }
      sig.push_back(constrained_payoff(pr_, pr_.h.payoff(o), false));
      int i = n_ - 1;
      for (; i >= 0; --i) {
        if (i == player) continue;
        int lim = (i == 0 && pr_.first_player == 1) ? pr_.g.num_actions(0) : pr_.h.num_actions(i);
        if (++pos[i] < lim) break;
        pos[i] = 0;
      }
      if (i < 0) break;
    }
    std::sort(sig.begin(), sig.end());
    return sig;
  }

  void build_buckets() {
    candidates_.resize(n_);
    for (int i = pr_.first_player; i < n_; ++i) {
      std::vector<Signature> hsigs(pr_.h.num_actions(i));
      for (int a = 0; a < pr_.h.num_actions(i); ++a) hsigs[a] = h_signature(i, a);
      candidates_[i].resize(pr_.g.num_actions(i));
      for (int a = 0; a < pr_.g.num_actions(i); ++a) {
        Signature gs = g_signature(i, a);
        for (int b = 0; b < pr_.h.num_actions(i); ++b)
          if (gs == hsigs[b]) candidates_[i][a].push_back(b);
        if (candidates_[i][a].empty()) {
          feasible_ = false;
          return;
        }
      }
    }
  }

  // checks all g outcomes that involve (player, a) and only assigned coords
  bool consistent_after(int player, int a) const {
    for (int i = 0; i < n_; ++i)
      if (i != player && assigned_[i].empty()) return true;  // no complete outcome yet
    std::vector<int> pos(n_, 0);
    while (true) {
      Outcome o(n_), img(n_);
      for (int i = 0; i < n_; ++i) {
        int ga = (i == player) ? a : assigned_[i][pos[i]];
        o[i] = ga;
        img[i] = assign_[i][ga];
      }
      const PayoffVector& ug = pr_.g.payoff(o);
      const PayoffVector& uh = pr_.h.payoff(img);
      for (int j = pr_.first_player; j < n_; ++j)
        if (uh[j] != pr_.map.m[j] * ug[j] + pr_.map.b[j]) return false;
      int i = n_ - 1;
      for (; i >= 0; --i) {
        if (i == player) continue;
        if (++pos[i] < static_cast<int>(assigned_[i].size())) break;
        pos[i] = 0;
      }
      if (i < 0) break;
    }
    return true;
  }

  void recurse(std::size_t depth) {
    if (results_.size() >= pr_.limit) return;
    if (depth == order_.size()) {
      Isomorphism iso;
      iso.action_map = assign_;
      iso.map = pr_.map;
      iso.scope = pr_.first_player == 1 ? IsoScope::PlayersMinusOne : IsoScope::AllPlayers;
      results_.push_back(std::move(iso));
      return;
    }
    auto [player, a] = order_[depth];
    for (int b : candidates_[player][a]) {
      if (used_[player][b]) continue;
      assign_[player][a] = b;
      used_[player][b] = true;
      assigned_[player].push_back(a);
      if (consistent_after(player, a)) recurse(depth + 1);
      assigned_[player].pop_back();
      used_[player][b] = false;
      assign_[player][a] = -1;
      if (results_.size() >= pr_.limit) return;
    }
  }
};

// The unique candidate utility map between g and h for the constrained
// players, or nullopt when min/max utilities cannot correspond. For partial
// mode the h-side region is image(psi1) x (full action sets of players >= 1).
inline std::optional<AffineUtilityMap> forced_utility_map(const Game& g, const Game& h, int first_player,
                                                          const std::vector<int>* psi1) {
  int n = g.num_players();
  AffineUtilityMap map;
  map.m.assign(n, Rational(1));
  map.b.assign(n, Rational(0));
  std::vector<bool> in_region(h.outcome_count(), false);
  if (psi1) {
    for_each_outcome(h, [&](const Outcome& o) {
      for (int a1 : *psi1)
        if (o[0] == a1) {
          in_region[h.flatten(o)] = true;
          return;
        }
    });
  } else {
    std::fill(in_region.begin(), in_region.end(), true);
  }
  for (int j = first_player; j < n; ++j) {
    Rational gmin, gmax, hmin, hmax;
    bool gfirst = true, hfirst = true;
    for (const auto& u : g.payoffs) {
      if (gfirst || u[j] < gmin) gmin = u[j];
      if (gfirst || u[j] > gmax) gmax = u[j];
      gfirst = false;
    }
    for (std::size_t idx = 0; idx < h.payoffs.size(); ++idx) {
      if (!in_region[idx]) continue;
      const auto& u = h.payoffs[idx];
      if (hfirst || u[j] < hmin) hmin = u[j];
      if (hfirst || u[j] > hmax) hmax = u[j];
      hfirst = false;
    }
    if (hfirst) return std::nullopt;  // empty region
    if (gmin == gmax) {
      if (hmin != hmax) return std::nullopt;
      map.m[j] = 1;  // constant player: canonical m = 1
      map.b[j] = hmin - gmin;
    } else {
      if (hmin == hmax) return std::nullopt;  // would force m = 0
      map.m[j] = (hmax - hmin) / (gmax - gmin);
      map.b[j] = hmin - map.m[j] * gmin;
    }
  }
  return map;
}

inline std::vector<Isomorphism> search_isomorphisms(const Game& g, const Game& h, const AffineUtilityMap& map,
                                                    int first_player, const std::vector<int>* psi1,
                                                    std::size_t limit) {
  for (int i = first_player; i < g.num_players(); ++i)
    if (g.num_actions(i) != h.num_actions(i)) return {};
  IsoProblem pr{g, h, map, first_player, psi1 ? *psi1 : std::vector<int>{}, limit};
  IsoSearch search(pr);
  return search.run();
}

}  // namespace detail

/// Exact payoff-equation re-check (all outcomes, in-scope players only).
inline bool is_isomorphism(const Game& g, const Game& h, const Isomorphism& iso) {
  if (g.num_players() != h.num_players()) return false;
  int first = iso.scope == IsoScope::PlayersMinusOne ? 1 : 0;
  for (int i = 0; i < g.num_players(); ++i) {
    if (static_cast<int>(iso.action_map[i].size()) != g.num_actions(i)) return false;
    std::vector<bool> hit(h.num_actions(i), false);
    for (int b : iso.action_map[i]) {
      if (b < 0 || b >= h.num_actions(i)) return false;
      if (i >= first && hit[b]) return false;  // bijective for in-scope players
      hit[b] = true;
    }
    if (i >= first) {
      if (g.num_actions(i) != h.num_actions(i)) return false;
      if (iso.map.m[i] <= 0) return false;
    }
  }
  bool ok = true;
  for_each_outcome(g, [&](const Outcome& o) {
    if (!ok) return;
    const PayoffVector& ug = g.payoff(o);
    const PayoffVector& uh = h.payoff(iso.apply(o));
    for (int j = first; j < g.num_players(); ++j)
      if (uh[j] != iso.map.m[j] * ug[j] + iso.map.b[j]) ok = false;
  });
  return ok;
}

/// Weak Pareto improvement of iso's images over sources (all players, all
/// outcomes); strict = some outcome strictly improved.
inline bool iso_weakly_improving(const Game& g, const Game& h, const Isomorphism& iso) {
  bool ok = true;
  for_each_outcome(g, [&](const Outcome& o) {
    if (ok && !weakly_improves(h.payoff(iso.apply(o)), g.payoff(o))) ok = false;
  });
  return ok;
}

inline std::optional<Outcome> iso_strict_witness(const Game& g, const Game& h, const Isomorphism& iso) {
  std::optional<Outcome> witness;
  for_each_outcome(g, [&](const Outcome& o) {
    if (!witness && strictly_improves(h.payoff(iso.apply(o)), g.payoff(o))) witness = o;
  });
  return witness;
}

/// All isomorphisms from g to h (player-preserving), canonically ordered.
inline std::vector<Isomorphism> find_isomorphisms(const Game& g, const Game& h,
                                                  std::size_t limit = SIZE_MAX) {
  if (g.num_players() != h.num_players()) return {};
  auto map = detail::forced_utility_map(g, h, 0, nullptr);
  if (!map) return {};
  return detail::search_isomorphisms(g, h, *map, 0, nullptr, limit);
}

struct ParetoIso {
  Isomorphism iso;
  bool strict = false;
  std::optional<Outcome> witness;  // source outcome strictly improved (when strict)
};

/// Decides existence of a (strictly) Pareto-improving isomorphism via the
/// forced utility map: test improvement on payoffs first, then plain
/// isomorphism existence.
inline std::optional<ParetoIso> exists_pareto_improving_iso(const Game& g, const Game& h) {
  if (g.num_players() != h.num_players()) return std::nullopt;
  for (int i = 0; i < g.num_players(); ++i)
    if (g.num_actions(i) != h.num_actions(i)) return std::nullopt;
  auto map = detail::forced_utility_map(g, h, 0, nullptr);
  if (!map) return std::nullopt;
  bool improving = true;
  std::optional<Outcome> witness;
  for_each_outcome(g, [&](const Outcome& o) {
    const PayoffVector& u = g.payoff(o);
    PayoffVector t = map->apply(u);
    if (!weakly_improves(t, u)) improving = false;
    if (!witness && strictly_improves(t, u)) witness = o;
  });
  if (!improving) return std::nullopt;
  auto isos = detail::search_isomorphisms(g, h, *map, 0, nullptr, 1);
  if (isos.empty()) return std::nullopt;
  return ParetoIso{isos.front(), witness.has_value(), witness};
}

/// Isomorphism existence with all coefficients fixed to m=1, b=0.
inline bool exists_coeff10_iso(const Game& g, const Game& h) {
  if (g.num_players() != h.num_players()) return false;
  AffineUtilityMap id;
  id.m.assign(g.players.size(), Rational(1));
  id.b.assign(g.players.size(), Rational(0));
  return !detail::search_isomorphisms(g, h, id, 0, nullptr, 1).empty();
}

enum class SubgameIsoVariant { Any, Pareto, Coeff10 };

struct SubgameIso {
  std::vector<std::vector<int>> subset;  // per player: kept h action indices
  Isomorphism iso;                       // targets are h-space action indices
};

/// All subgames of h isomorphic to g under the variant (backtracking over
/// per-player action subsets). Pareto variant = weakly Pareto-improving
/// isomorphisms; strictness can be read off iso.map afterwards.
inline std::vector<SubgameIso> find_subgame_isomorphisms(const Game& g, const Game& h, SubgameIsoVariant variant,
                                                         std::uint64_t max_subsets = default_search_cap()) {
  if (g.num_players() != h.num_players())
    throw std::invalid_argument("find_subgame_isomorphisms: player count mismatch");
  int n = g.num_players();
  for (int i = 0; i < n; ++i)
    if (g.num_actions(i) > h.num_actions(i)) return {};
  long double total = 1;
  auto choose = [](int nn, int kk) {
    long double r = 1;
    for (int t = 1; t <= kk; ++t) r = r * (nn - kk + t) / t;
    return r;
  };
  for (int i = 0; i < n; ++i) total *= choose(h.num_actions(i), g.num_actions(i));
  if (total > static_cast<long double>(max_subsets))
    throw size_cap_error("find_subgame_isomorphisms: subset count exceeds cap");

  std::vector<SubgameIso> out;
  std::vector<std::vector<int>> subset(n);
  auto emit = [&](const Game& sub) {
    std::vector<Isomorphism> isos;
    if (variant == SubgameIsoVariant::Coeff10) {
      AffineUtilityMap id;
      id.m.assign(g.players.size(), Rational(1));
      id.b.assign(g.players.size(), Rational(0));
      isos = detail::search_isomorphisms(g, sub, id, 0, nullptr, SIZE_MAX);
    } else {
      auto map = detail::forced_utility_map(g, sub, 0, nullptr);
      if (!map) return;
      if (variant == SubgameIsoVariant::Pareto) {
        bool improving = true;
        for_each_outcome(g, [&](const Outcome& o) {
          if (improving && !weakly_improves(map->apply(g.payoff(o)), g.payoff(o))) improving = false;
        });
        if (!improving) return;
      }
      isos = detail::search_isomorphisms(g, sub, *map, 0, nullptr, SIZE_MAX);
    }
    for (auto& iso : isos) {
      for (int i = 0; i < n; ++i)
        for (auto& b : iso.action_map[i]) b = subset[i][b];
      out.push_back(SubgameIso{subset, std::move(iso)});
    }
  };
  // product over players of ascending index combinations
  auto rec = [&](auto&& self, int player) -> void {
    if (player == n) {
      emit(subgame(h, subset));
      return;
    }
    int k = g.num_actions(player), hn = h.num_actions(player);
    std::vector<int> comb(k);
    auto combo = [&](auto&& cself, int pos, int start) -> void {
      if (pos == k) {
        subset[player] = comb;
        self(self, player + 1);
        return;
      }
      for (int v = start; v <= hn - (k - pos); ++v) {
        comb[pos] = v;
        cself(cself, pos + 1, v + 1);
      }
    };
    combo(combo, 0, 0);
  };
  rec(rec, 0);
  return out;
}

/// All (psi1, phi_2, ..., phi_n) isomorphisms in terms of players 2..n's
/// utilities, with psi1 fixed. psi1[a] maps g's player-1 action a to a
/// player-1 action of `target`.
inline std::vector<Isomorphism> find_partial_isomorphisms(const Game& g, const Game& target,
                                                          const std::vector<int>& psi1) {
  if (g.num_players() != target.num_players())
    throw std::invalid_argument("find_partial_isomorphisms: player count mismatch");
  if (static_cast<int>(psi1.size()) != g.num_actions(0))
    throw std::invalid_argument("find_partial_isomorphisms: psi1 must be total on player 1's actions");
  for (int a : psi1)
    if (a < 0 || a >= target.num_actions(0))
      throw std::invalid_argument("find_partial_isomorphisms: psi1 image outside target's player-1 actions");
  if (g.num_players() < 2) return {};
  auto map = detail::forced_utility_map(g, target, 1, &psi1);
  if (!map) return {};
  return detail::search_isomorphisms(g, target, *map, 1, &psi1, SIZE_MAX);
}

}  // namespace spikit
