#pragma once

// Disarmament SPIs: verification of a given disarmament and exhaustive
// desk-scale search over admissible disarmaments. The search skips removal
// sets contained in the already-eliminated actions (they cannot change the
// reduced game, so the result could never be strict).

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>
#include <vector>

#include "spikit/spi.hpp"

namespace spikit {

inline std::optional<SpiCertificate> verify_disarmament(const Game& g, const Disarmament& d,
                                                        ImprovementKind k = ImprovementKind::Pareto) {
  return is_spi(g, remove_actions(g, d), k);
}

enum class DisarmMode { Any, Unilateral };

struct DisarmHit {
  Disarmament d;
  SpiCertificate cert;
};

/// All SPI disarmaments under the mode. Unilateral restricts removals to
/// `player`. Candidate counts above the cap are refused outright.
inline std::vector<DisarmHit> search_disarmament(const Game& g, DisarmMode mode, int player = 0,
                                                 ImprovementKind k = ImprovementKind::Pareto,
                                                 std::uint64_t max_candidates = default_search_cap()) {
  if (mode == DisarmMode::Unilateral && (player < 0 || player >= g.num_players()))
    throw std::invalid_argument("search_disarmament: player index out of range");

  long double count = 1;
  if (mode == DisarmMode::Unilateral) {
    count = std::pow(2.0L, static_cast<long double>(g.num_actions(player)));
  } else {
    for (int i = 0; i < g.num_players(); ++i) count *= std::pow(2.0L, static_cast<long double>(g.num_actions(i)));
  }
  if (count > static_cast<long double>(max_candidates))
    throw size_cap_error("search_disarmament: " + std::to_string(static_cast<unsigned long long>(count)) +
                         " candidate disarmaments exceed the cap of " + std::to_string(max_candidates));

  std::vector<std::set<int>> eliminated(g.players.size());
  {
    ReductionResult r = reduce(g);
    for (int i = 0; i < g.num_players(); ++i) {
      std::set<int> kept(r.kept[i].begin(), r.kept[i].end());
      for (int a = 0; a < g.num_actions(i); ++a)
        if (!kept.count(a)) eliminated[i].insert(a);
    }
  }

  auto subset_of_eliminated = [&](const Disarmament& d) {
    for (int i = 0; i < g.num_players(); ++i)
      for (int a : d.removed[i])
        if (!eliminated[i].count(a)) return false;
    return true;
  };

  std::vector<DisarmHit> hits;
  auto consider = [&](const Disarmament& d) {
    bool any = false;
    for (const auto& s : d.removed) any = any || !s.empty();
    if (!any || subset_of_eliminated(d)) return;
    if (auto cert = verify_disarmament(g, d, k)) hits.push_back(DisarmHit{d, std::move(*cert)});
  };

  if (mode == DisarmMode::Unilateral) {
    int na = g.num_actions(player);
    for (std::uint64_t mask = 1; mask < (1ull << na); ++mask) {
      if (mask == (1ull << na) - 1) continue;  // must leave an action
      Disarmament d = Disarmament::none(g);
      for (int a = 0; a < na; ++a)
        if (mask & (1ull << a)) d.removed[player].insert(a);
      consider(d);
    }
    return hits;
  }

  // product of per-player proper subsets (removing everything is inadmissible)
  std::vector<std::uint64_t> mask(g.players.size(), 0);
  auto rec = [&](auto&& self, int i) -> void {
    if (i == g.num_players()) {
      Disarmament d = Disarmament::none(g);
      for (int p = 0; p < g.num_players(); ++p)
        for (int a = 0; a < g.num_actions(p); ++a)
          if (mask[p] & (1ull << a)) d.removed[p].insert(a);
      consider(d);
      return;
    }
    int na = g.num_actions(i);
    for (std::uint64_t m = 0; m < (1ull << na); ++m) {
      if (m == (1ull << na) - 1) continue;
      mask[i] = m;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return hits;
}

}  // namespace spikit
