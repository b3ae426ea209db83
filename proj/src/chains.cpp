#include "levikit/chains.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <string>

#include "levikit/error.hpp"
#include "levikit/random.hpp"

namespace levikit {

std::string_view to_string(Sign s) { return s == Sign::Plus ? "+" : "-"; }

std::string_view to_string(ChainLemma l) { return l == ChainLemma::Saturation ? "saturation" : "chain-connect"; }

std::string_view to_string(EventKind k) { return k == EventKind::Glue ? "glue" : "pass_through"; }

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t{0}); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  // False when x and y were already joined.
  bool unite(std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x == y) return false;
    parent_[x] = y;
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct EdgeScan {
  std::size_t components = 0;
  std::size_t edges = 0;
  bool cyclic = false;
};

EdgeScan scan_edges(const ChainGraph& chain) {
  std::map<int, std::size_t> index;
  for (const auto& d : chain.discs) index.emplace(d.id, index.size());
  UnionFind uf(index.size());
  EdgeScan s;
  s.components = index.size();
  for (const auto& p : chain.points) {
    if (!p.saturated()) continue;
    const auto a = index.find(*p.slot_a), b = index.find(*p.slot_b);
    if (a == index.end() || b == index.end()) {
      throw Error(ErrorCode::InvalidInput, "contact refers to a disc outside the chain",
                  "chain=" + std::to_string(chain.id) + " point=" + std::to_string(p.id));
    }
    ++s.edges;
    if (uf.unite(a->second, b->second)) {
      --s.components;
    } else {
      s.cyclic = true;
    }
  }
  return s;
}

}  // namespace

bool is_saturated(const ChainGraph& chain) {
  return std::all_of(chain.points.begin(), chain.points.end(), [](const PointRecord& p) { return p.saturated(); });
}

bool is_connected(const ChainGraph& chain) { return scan_edges(chain).components <= 1; }

bool is_simply_connected(const ChainGraph& chain) { return !scan_edges(chain).cyclic; }

int cycle_rank(const ChainGraph& chain) {
  const EdgeScan s = scan_edges(chain);
  return static_cast<int>(s.edges) - static_cast<int>(chain.discs.size()) + static_cast<int>(s.components);
}

std::vector<ChainLemma> lemma_violations(const ChainGraph& chain) {
  std::vector<ChainLemma> out;
  const std::size_t k = chain.discs.size();
  const std::size_t m = chain.points.size();
  if (!is_saturated(chain) && m < k) out.push_back(ChainLemma::Saturation);
  if (!is_simply_connected(chain) && m < k) out.push_back(ChainLemma::ChainConnect);
  return out;
}

LemmaReport check_chain_lemmas(int k_max) {
  if (k_max > 6) {
    throw Error(ErrorCode::BudgetExceeded, "exhaustive chain enumeration is limited to 6 discs",
                "k_max=" + std::to_string(k_max));
  }
  if (k_max < 1) throw Error(ErrorCode::InvalidInput, "k_max must be >= 1");
  LemmaReport report;
  report.k_max = k_max;
  for (int k = 1; k <= k_max; ++k) {
    // Contact types: an edge {i, j} with i <= j, or a half-edge at i.
    std::vector<std::pair<int, int>> types;
    for (int i = 0; i < k; ++i)
      for (int j = i; j < k; ++j) types.emplace_back(i, j);
    for (int i = 0; i < k; ++i) types.emplace_back(i, -1);

    ChainGraph chain;
    chain.id = k;
    for (int i = 0; i < k; ++i) chain.discs.push_back(DiscRecord{i + 1, Sign::Plus, {i + 1}, 0});

    // A chain with m >= k contacts satisfies both conclusions outright, so
    // m <= k suffices; m = k keeps cyclic chains in the cross-check.
    std::vector<std::size_t> pick;
    auto visit = [&]() {
      chain.points.clear();
      for (std::size_t n = 0; n < pick.size(); ++n) {
        const auto [i, j] = types[pick[n]];
        PointRecord p{static_cast<int>(n) + 1, Sign::Plus, i + 1, std::nullopt};
        if (j >= 0) p.slot_b = j + 1;
        chain.points.push_back(p);
      }
      if (!is_connected(chain)) return;
      ++report.chains_checked;
      if (is_simply_connected(chain) != (cycle_rank(chain) == 0)) ++report.cycle_rank_mismatches;
      if (!lemma_violations(chain).empty()) {
        ++report.counterexamples;
        if (report.examples.size() < 5) report.examples.push_back(chain);
      }
    };
    auto rec = [&](auto&& self, std::size_t from) -> void {
      visit();
      if (static_cast<int>(pick.size()) == k) return;
      for (std::size_t t = from; t < types.size(); ++t) {
        pick.push_back(t);
        self(self, t);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
  return report;
}

SphereState initial_state(const SphereInventory& inv) {
  check_inventory(inv);
  if (inv.e_plus - inv.h_plus != 1 || inv.e_minus - inv.h_minus != 1 || inv.chern_value != 0) {
    throw Error(ErrorCode::InconsistentInventory, "a sphere needs e+ - h+ = e- - h- = 1 and c = 0",
                "e+=" + std::to_string(inv.e_plus) + " h+=" + std::to_string(inv.h_plus) +
                    " e-=" + std::to_string(inv.e_minus) + " h-=" + std::to_string(inv.h_minus));
  }
  SphereState s;
  s.inventory = inv;
  for (int i = 1; i <= inv.e_plus; ++i) s.families.push_back(Family{i, Sign::Plus, {i}, 0});
  s.remaining_h_plus = inv.h_plus;
  s.remaining_h_minus = inv.h_minus;
  s.next_family_id = inv.e_plus + 1;
  return s;
}

namespace {

ChainGraph& find_chain(SphereState& s, int chain_id) {
  for (auto& c : s.chains)
    if (c.id == chain_id) return c;
  throw Error(ErrorCode::InvalidInput, "unknown chain", "chain=" + std::to_string(chain_id));
}

std::vector<PointRecord>::iterator find_point(ChainGraph& c, int point_id) {
  const auto it = std::find_if(c.points.begin(), c.points.end(), [&](const PointRecord& p) { return p.id == point_id; });
  if (it == c.points.end()) {
    throw Error(ErrorCode::InvalidInput, "point not in chain",
                "chain=" + std::to_string(c.id) + " point=" + std::to_string(point_id));
  }
  return it;
}

std::vector<Family>::iterator find_family(SphereState& s, int id) {
  const auto it = std::find_if(s.families.begin(), s.families.end(), [&](const Family& f) { return f.id == id; });
  if (it == s.families.end()) throw Error(ErrorCode::InvalidInput, "disc is not an active family", "id=" + std::to_string(id));
  return it;
}

}  // namespace

std::pair<SphereState, FillingEvent> glue_at_point(const SphereState& state, int chain_id, int point_id) {
  SphereState s = state;
  ChainGraph& chain = find_chain(s, chain_id);
  const auto pit = find_point(chain, point_id);
  const std::string ctx = "chain=" + std::to_string(chain_id) + " point=" + std::to_string(point_id);
  if (pit->sign == Sign::Minus) throw Error(ErrorCode::NegativePointGluing, "negative points are passed through", ctx);
  if (!pit->saturated()) throw Error(ErrorCode::UnsaturatedPoint, "point has an empty approach region", ctx);
  if (pit->self_loop()) throw Error(ErrorCode::SelfLoopGluing, "both approach regions hold the same disc", ctx);
  const int a = *pit->slot_a, b = *pit->slot_b;
  chain.points.erase(pit);

  const auto fa = find_family(s, a);
  Family merged{s.next_family_id++, Sign::Plus, fa->origin, 0};
  s.families.erase(fa);
  const auto fb = find_family(s, b);
  merged.origin.insert(merged.origin.end(), fb->origin.begin(), fb->origin.end());
  std::sort(merged.origin.begin(), merged.origin.end());
  s.families.erase(fb);
  s.families.push_back(merged);

  std::erase_if(chain.discs, [&](const DiscRecord& d) { return d.id == a || d.id == b; });
  chain.discs.push_back(DiscRecord{merged.id, Sign::Plus, merged.origin, 0});
  for (auto& p : chain.points) {
    if (p.slot_a && (*p.slot_a == a || *p.slot_a == b)) p.slot_a = merged.id;
    if (p.slot_b && (*p.slot_b == a || *p.slot_b == b)) p.slot_b = merged.id;
  }
  --s.remaining_h_plus;
  s.consumed_points.push_back(point_id);

  // The region between the two old boundaries and the new one carries the
  // glued positive hyperbolic point only.
  const int existing[] = {-1, -1};
  FillingEvent ev;
  ev.seq = static_cast<int>(s.trace.size()) + 1;
  ev.kind = EventKind::Glue;
  ev.chain = chain_id;
  ev.point = point_id;
  ev.merged = {a, b};
  ev.new_family = merged.id;
  ev.loop_index = glued_disc_loop_index(-1, 0, existing);
  ev.hyperbolic_after = s.hyperbolic_remaining();
  ev.families_after = static_cast<int>(s.families.size());
  ev.epsilon_note = "cut-off perturbation of the structure and the sphere near point " + std::to_string(point_id) +
                    "; eps abstracted";
  if (ev.loop_index != 1) throw Error(ErrorCode::InvalidInput, "glued disc does not have loop index +1", ctx);
  s.trace.push_back(ev);
  return {std::move(s), ev};
}

std::pair<SphereState, FillingEvent> pass_through(const SphereState& state, int chain_id, int point_id) {
  SphereState s = state;
  ChainGraph& chain = find_chain(s, chain_id);
  const auto pit = find_point(chain, point_id);
  const std::string ctx = "chain=" + std::to_string(chain_id) + " point=" + std::to_string(point_id);
  if (pit->sign != Sign::Minus) throw Error(ErrorCode::InvalidInput, "only negative points are passed through", ctx);
  if (!pit->saturated()) throw Error(ErrorCode::UnsaturatedPoint, "point has an empty approach region", ctx);
  if (!pit->self_loop()) {
    throw Error(ErrorCode::InvalidInput, "a negative point attracts exactly one positive family", ctx);
  }
  const int d = *pit->slot_a;
  find_family(s, d);
  chain.points.erase(pit);
  --s.remaining_h_minus;
  s.consumed_points.push_back(point_id);

  FillingEvent ev;
  ev.seq = static_cast<int>(s.trace.size()) + 1;
  ev.kind = EventKind::PassThrough;
  ev.chain = chain_id;
  ev.point = point_id;
  ev.merged = {d, d};
  ev.new_family = d;
  ev.loop_index = 0;
  ev.hyperbolic_after = s.hyperbolic_remaining();
  ev.families_after = static_cast<int>(s.families.size());
  ev.epsilon_note = "chain deformed near negative point " + std::to_string(point_id) + "; eps abstracted";
  s.trace.push_back(ev);
  return {std::move(s), ev};
}

namespace {

std::vector<int> remaining_points(const SphereState& s, Sign sign) {
  const int lo = sign == Sign::Plus ? 1 : s.inventory.h_plus + 1;
  const int hi = sign == Sign::Plus ? s.inventory.h_plus : s.inventory.h_plus + s.inventory.h_minus;
  std::vector<int> out;
  for (int id = lo; id <= hi; ++id) {
    if (std::find(s.consumed_points.begin(), s.consumed_points.end(), id) == s.consumed_points.end()) out.push_back(id);
  }
  return out;
}

// Edges of a random recursive tree on vertices 0..n-1.
std::vector<std::pair<int, int>> random_tree(int n, Rng& rng) {
  std::vector<std::pair<int, int>> e;
  for (int v = 1; v < n; ++v) e.emplace_back(static_cast<int>(rng.uniform_int(0, v - 1)), v);
  return e;
}

void validate_chains(const SphereState& s, const std::vector<ChainGraph>& chains) {
  std::set<int> families, points, chain_ids;
  const auto pos = remaining_points(s, Sign::Plus), neg = remaining_points(s, Sign::Minus);
  for (const auto& c : chains) {
    if (!chain_ids.insert(c.id).second) throw Error(ErrorCode::InvalidInput, "duplicate chain id");
    std::set<int> local;
    for (const auto& d : c.discs) {
      if (std::none_of(s.families.begin(), s.families.end(), [&](const Family& f) { return f.id == d.id; })) {
        throw Error(ErrorCode::InvalidInput, "disc is not an active family", "id=" + std::to_string(d.id));
      }
      if (!families.insert(d.id).second) throw Error(ErrorCode::InvalidInput, "family appears twice");
      if (d.maslov != 0) throw Error(ErrorCode::InvalidInput, "tracked families have Maslov index 0");
      local.insert(d.id);
    }
    for (const auto& p : c.points) {
      const auto& pool = p.sign == Sign::Plus ? pos : neg;
      if (std::find(pool.begin(), pool.end(), p.id) == pool.end()) {
        throw Error(ErrorCode::InvalidInput, "point id is not a remaining point of that sign", "id=" + std::to_string(p.id));
      }
      if (!points.insert(p.id).second) throw Error(ErrorCode::InvalidInput, "point appears twice");
      for (const auto& slot : {p.slot_a, p.slot_b}) {
        if (slot && !local.count(*slot)) throw Error(ErrorCode::InvalidInput, "slot refers to a disc of another chain");
      }
      if (p.sign == Sign::Plus && p.self_loop() && !s.allow_self_loops) {
        throw Error(ErrorCode::InvalidInput, "positive self-loops are disabled", "id=" + std::to_string(p.id));
      }
    }
  }
}

}  // namespace

std::vector<ChainGraph> generate_topology(const SphereState& state, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<int> fam;
  for (const auto& f : state.families) fam.push_back(f.id);
  std::sort(fam.begin(), fam.end());
  rng.shuffle(fam.begin(), fam.end());
  auto pos = remaining_points(state, Sign::Plus);
  rng.shuffle(pos.begin(), pos.end());
  const int n_fam = static_cast<int>(fam.size());
  if (n_fam != static_cast<int>(pos.size()) + 1) {
    throw Error(ErrorCode::InconsistentInventory, "families and positive points out of balance");
  }

  // Chain sizes: one tree of size >= 2 (or the lone family), then
  // unicyclic chains of size >= 2.
  std::vector<int> sizes;
  if (n_fam == 1) {
    sizes.push_back(1);
  } else {
    std::vector<int> tree_sizes;
    for (int n0 = 2; n0 <= n_fam; ++n0)
      if (n_fam - n0 != 1) tree_sizes.push_back(n0);
    sizes.push_back(tree_sizes[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(tree_sizes.size()) - 1))]);
    int rest = n_fam - sizes.front();
    while (rest > 0) {
      std::vector<int> options;
      for (int s = 2; s <= rest; ++s)
        if (rest - s != 1) options.push_back(s);
      const int s = options[static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(options.size()) - 1))];
      sizes.push_back(s);
      rest -= s;
    }
  }

  std::vector<ChainGraph> chains;
  std::size_t next_fam = 0, next_point = 0;
  for (std::size_t c = 0; c < sizes.size(); ++c) {
    ChainGraph g;
    g.id = static_cast<int>(c) + 1;
    const int n = sizes[c];
    std::vector<int> ids(fam.begin() + static_cast<std::ptrdiff_t>(next_fam),
                         fam.begin() + static_cast<std::ptrdiff_t>(next_fam) + n);
    next_fam += static_cast<std::size_t>(n);
    for (int id : ids) {
      const auto f = std::find_if(state.families.begin(), state.families.end(), [&](const Family& x) { return x.id == id; });
      g.discs.push_back(DiscRecord{id, Sign::Plus, f->origin, 0});
    }
    auto edges = random_tree(n, rng);
    if (c > 0) {
      const int u = static_cast<int>(rng.uniform_int(0, n - 1));
      int v = static_cast<int>(rng.uniform_int(0, n - 2));
      if (v >= u) ++v;
      edges.emplace_back(u, v);
    }
    for (const auto& [u, v] : edges) {
      g.points.push_back(PointRecord{pos[next_point++], Sign::Plus, ids[static_cast<std::size_t>(u)],
                                     ids[static_cast<std::size_t>(v)]});
    }
    chains.push_back(std::move(g));
  }
  // Every negative point attracts exactly one positive family, filling both
  // of its approach regions.
  for (int id : remaining_points(state, Sign::Minus)) {
    const int f = fam[static_cast<std::size_t>(rng.uniform_int(0, n_fam - 1))];
    for (auto& g : chains) {
      if (std::any_of(g.discs.begin(), g.discs.end(), [&](const DiscRecord& d) { return d.id == f; })) {
        g.points.push_back(PointRecord{id, Sign::Minus, f, f});
        break;
      }
    }
  }
  for (auto& g : chains) {
    std::sort(g.points.begin(), g.points.end(), [](const PointRecord& x, const PointRecord& y) { return x.id < y.id; });
  }
  return chains;
}

FillingTrace run_filling(const SphereInventory& inventory, const FillingConfig& config) {
  SphereState state = initial_state(inventory);
  state.allow_self_loops = config.allow_self_loops;
  FillingTrace trace;
  trace.seed = config.seed;
  trace.inventory = inventory;
  Rng rng(config.seed);

  for (int round = 1; state.hyperbolic_remaining() > 0; ++round) {
    const std::uint64_t topo_seed = static_cast<std::uint64_t>(rng.uniform_int(0, std::numeric_limits<std::int64_t>::max()));
    std::vector<ChainGraph> chains;
    if (round == 1 && config.explicit_chains) {
      chains = *config.explicit_chains;
      validate_chains(state, chains);
    } else {
      chains = generate_topology(state, topo_seed);
    }
    std::sort(chains.begin(), chains.end(), [](const ChainGraph& x, const ChainGraph& y) { return x.id < y.id; });
    state.chains = chains;
    RoundRecord rec{round, chains, {}};
    const int before = state.hyperbolic_remaining();

    // Negative points first: each is passed through by its single family.
    for (const auto& c : chains) {
      for (const auto& p : c.points) {
        if (p.sign != Sign::Minus) continue;
        auto [next, ev] = pass_through(state, c.id, p.id);
        state = std::move(next);
        rec.events.push_back(ev);
      }
    }

    if (state.remaining_h_plus > 0) {
      const ChainGraph* pick = nullptr;
      for (const auto& c : state.chains) {
        const auto m = std::count_if(c.points.begin(), c.points.end(), [](const PointRecord& p) { return p.sign == Sign::Plus; });
        if (m >= 1 && static_cast<long>(c.discs.size()) > m && is_saturated(c) && is_simply_connected(c)) {
          pick = &c;
          break;
        }
      }
      if (!pick) {
        throw Error(ErrorCode::StuckState, "no saturated simply connected chain with more discs than points",
                    "round=" + std::to_string(round));
      }
      std::vector<int> ids;
      for (const auto& p : pick->points) ids.push_back(p.id);
      std::sort(ids.begin(), ids.end());
      const int chain_id = pick->id;
      for (int id : ids) {
        auto [next, ev] = glue_at_point(state, chain_id, id);
        state = std::move(next);
        rec.events.push_back(ev);
      }
    }
    trace.rounds.push_back(std::move(rec));
    if (state.hyperbolic_remaining() >= before) {
      throw Error(ErrorCode::StuckState, "round made no progress", "round=" + std::to_string(round));
    }
  }

  if (state.families.size() != 1) {
    throw Error(ErrorCode::StuckState, "filling ended with more than one family",
                "families=" + std::to_string(state.families.size()));
  }
  trace.terminal.family = state.families.front().id;
  trace.terminal.family_origin = state.families.front().origin;
  trace.terminal.families = 1;
  for (int i = 1; i <= inventory.e_minus; ++i) trace.terminal.negative_elliptic.push_back(i);
  return trace;
}

bool replay(const FillingTrace& trace) {
  try {
    SphereState state = initial_state(trace.inventory);
    for (const auto& round : trace.rounds) {
      state.chains = round.chains;
      for (const auto& ev : round.events) {
        auto [next, got] = ev.kind == EventKind::Glue ? glue_at_point(state, ev.chain, ev.point)
                                                      : pass_through(state, ev.chain, ev.point);
        if (got.seq != ev.seq || got.merged != ev.merged || got.new_family != ev.new_family ||
            got.loop_index != ev.loop_index || got.hyperbolic_after != ev.hyperbolic_after ||
            got.families_after != ev.families_after) {
          return false;
        }
        state = std::move(next);
      }
    }
    return state.hyperbolic_remaining() == 0 && state.families.size() == 1 &&
           state.families.front().id == trace.terminal.family;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace levikit
