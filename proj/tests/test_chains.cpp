#include "levikit/chains.hpp"

#include <fstream>
#include <map>
#include <set>

#include "levikit/index_calculus.hpp"
#include "levikit/io.hpp"
#include "levikit/model_surfaces.hpp"
#include "support.hpp"

using namespace levikit;
using levikit::test::error_code_of;

namespace {

// Discs 1..k and the given contacts (b = 0 for a half-edge).
ChainGraph make_chain(int k, std::vector<std::pair<int, int>> contacts, int id = 1) {
  ChainGraph c;
  c.id = id;
  for (int i = 1; i <= k; ++i) c.discs.push_back(DiscRecord{i, Sign::Plus, {i}, 0});
  int pid = 1;
  for (auto [a, b] : contacts) {
    PointRecord p{pid++, Sign::Plus, a, std::nullopt};
    if (b != 0) p.slot_b = b;
    c.points.push_back(p);
  }
  return c;
}

// Oracle for simple connectivity: depth-first search for a back edge,
// counting parallel edges and self-loops as cycles.
bool dfs_acyclic(const ChainGraph& c) {
  std::map<int, std::vector<std::pair<int, int>>> adj;  // disc -> (neighbour, edge)
  int e = 0;
  for (const auto& p : c.points) {
    if (!p.saturated()) continue;
    if (*p.slot_a == *p.slot_b) return false;
    adj[*p.slot_a].push_back({*p.slot_b, e});
    adj[*p.slot_b].push_back({*p.slot_a, e});
    ++e;
  }
  std::set<int> seen;
  bool ok = true;
  auto visit = [&](auto&& self, int v, int via) -> void {
    seen.insert(v);
    for (auto [w, edge] : adj[v]) {
      if (edge == via) continue;
      if (seen.count(w)) {
        ok = false;
        continue;
      }
      self(self, w, edge);
    }
  };
  for (const auto& d : c.discs)
    if (!seen.count(d.id)) visit(visit, d.id, -1);
  return ok;
}

ChainGraph random_chain(Rng& rng) {
  const int k = static_cast<int>(rng.uniform_int(1, 6));
  const int m = static_cast<int>(rng.uniform_int(0, 7));
  std::vector<std::pair<int, int>> contacts;
  for (int i = 0; i < m; ++i) {
    const int a = static_cast<int>(rng.uniform_int(1, k));
    const int b = rng.uniform01() < 0.2 ? 0 : static_cast<int>(rng.uniform_int(1, k));
    contacts.emplace_back(a, b);
  }
  return make_chain(k, contacts);
}

}  // namespace

TEST_SUITE("chains") {
  TEST_CASE("saturation examples") {
    CHECK(is_saturated(make_chain(2, {{1, 2}})));
    CHECK_FALSE(is_saturated(make_chain(1, {{1, 0}})));
    CHECK(is_saturated(make_chain(3, {{1, 2}, {2, 3}, {3, 1}})));
  }

  TEST_CASE("simple connectivity examples") {
    CHECK(is_simply_connected(make_chain(3, {{1, 2}, {2, 3}})));
    CHECK_FALSE(is_simply_connected(make_chain(3, {{1, 2}, {2, 3}, {3, 1}})));
    CHECK_FALSE(is_simply_connected(make_chain(2, {{1, 2}, {1, 2}})));
    CHECK_FALSE(is_simply_connected(make_chain(1, {{1, 1}})));
    CHECK(cycle_rank(make_chain(3, {{1, 2}, {2, 3}, {3, 1}})) == 1);
    CHECK(is_connected(make_chain(3, {{1, 2}, {2, 3}})));
    CHECK_FALSE(is_connected(make_chain(3, {{1, 2}, {3, 0}})));
    CHECK(error_code_of([] { is_connected(make_chain(2, {{1, 5}})); }) == ErrorCode::InvalidInput);
  }

  TEST_CASE("property: union-find agrees with the search oracle") {
    Rng rng(67);
    for (int i = 0; i < 2000; ++i) {
      const auto c = random_chain(rng);
      CHECK(is_simply_connected(c) == dfs_acyclic(c));
      CHECK(is_simply_connected(c) == (cycle_rank(c) == 0));
    }
  }

  TEST_CASE("exhaustive lemma check") {
    const auto r2 = check_chain_lemmas(2);
    CHECK(r2.counterexamples == 0);
    CHECK(r2.chains_checked > 0);
    const auto r5 = check_chain_lemmas(5);
    CHECK(r5.counterexamples == 0);
    CHECK(r5.cycle_rank_mismatches == 0);
    CHECK(r5.chains_checked > r2.chains_checked);
    CHECK(error_code_of([] { check_chain_lemmas(7); }) == ErrorCode::BudgetExceeded);
  }

  TEST_CASE("the planted mutant is flagged") {
    std::ifstream in(test::fixture("mutant_chain.json"));
    const auto chain = chain_from_json(Json::parse(in));
    CHECK(chain.discs.size() == 3);
    CHECK(chain.points.size() == 2);
    const auto v = lemma_violations(chain);
    REQUIRE(v.size() == 1);
    CHECK(v.front() == ChainLemma::Saturation);
    CHECK(lemma_violations(make_chain(3, {{1, 2}, {2, 3}})).empty());
    const auto cyc = lemma_violations(make_chain(3, {{1, 1}}));
    CHECK(std::find(cyc.begin(), cyc.end(), ChainLemma::ChainConnect) != cyc.end());
  }

  TEST_CASE("model case glue") {
    auto s = initial_state({2, 1, 1, 0, 0});
    CHECK(s.families.size() == 2);
    s.chains = {make_chain(2, {{1, 2}})};
    const auto [next, ev] = glue_at_point(s, 1, 1);
    CHECK(ev.kind == EventKind::Glue);
    CHECK(ev.loop_index == 1);
    CHECK(ev.hyperbolic_after == 0);
    CHECK(next.families.size() == 1);
    CHECK(next.families.front().origin == std::vector<int>{1, 2});
  }

  TEST_CASE("tree chains collapse to one disc") {
    for (int n = 2; n <= 6; ++n) {
      auto s = initial_state({n, 1, n - 1, 0, 0});
      std::vector<std::pair<int, int>> path;
      for (int i = 1; i < n; ++i) path.emplace_back(i, i + 1);
      s.chains = {make_chain(n, path)};
      for (int p = 1; p < n; ++p) s = glue_at_point(s, 1, p).first;
      CHECK(s.chains.front().discs.size() == 1);
      CHECK(s.chains.front().points.empty());
      CHECK(s.families.size() == 1);
    }
  }

  TEST_CASE("gluing errors") {
    auto s = initial_state({3, 2, 2, 1, 0});
    ChainGraph c = make_chain(3, {{1, 0}, {2, 2}});
    c.points.push_back(PointRecord{3, Sign::Minus, 3, 3});
    s.chains = {c};
    CHECK(error_code_of([&] { glue_at_point(s, 1, 1); }) == ErrorCode::UnsaturatedPoint);
    CHECK(error_code_of([&] { glue_at_point(s, 1, 2); }) == ErrorCode::SelfLoopGluing);
    CHECK(error_code_of([&] { glue_at_point(s, 1, 3); }) == ErrorCode::NegativePointGluing);
    CHECK(error_code_of([&] { pass_through(s, 1, 1); }) == ErrorCode::InvalidInput);
    const auto [next, ev] = pass_through(s, 1, 3);
    CHECK(ev.kind == EventKind::PassThrough);
    CHECK(next.families.size() == s.families.size());
    CHECK(next.remaining_h_minus == 0);
    CHECK(error_code_of([] { initial_state({3, 1, 1, 0, 0}); }) == ErrorCode::InconsistentInventory);
  }

  TEST_CASE("filling runs") {
    const auto n1 = run_filling({2, 1, 1, 0, 0});
    int glues = 0;
    for (const auto& r : n1.rounds)
      for (const auto& e : r.events) glues += e.kind == EventKind::Glue;
    CHECK(glues == 1);
    CHECK(n1.terminal.families == 1);
    CHECK(n1.terminal.negative_elliptic == std::vector<int>{1});
    CHECK(replay(n1));

    const auto n0 = run_filling({1, 1, 0, 0, 0});
    CHECK(n0.rounds.empty());
    CHECK(n0.terminal.families == 1);
    CHECK(n0.terminal.family == 1);
  }

  TEST_CASE("property: random inventories terminate with one family") {
    for (std::uint64_t seed = 0; seed < 200; ++seed) {
      const auto inv = random_inventory(seed, 8);
      const auto trace = run_filling(inv, {seed, std::nullopt, false});
      int prev = inv.hyperbolic_count();
      for (const auto& r : trace.rounds) {
        for (const auto& e : r.events) {
          CHECK(e.hyperbolic_after < prev);
          prev = e.hyperbolic_after;
        }
      }
      CHECK(prev == 0);
      CHECK(trace.terminal.families == 1);
      CHECK(replay(trace));
      CHECK(to_json(run_filling(inv, {seed, std::nullopt, false})) == to_json(trace));
    }
  }

  TEST_CASE("tampered traces fail to replay") {
    auto trace = run_filling({4, 2, 3, 1, 0}, {5, std::nullopt, false});
    REQUIRE(replay(trace));
    auto bad = trace;
    bad.rounds.front().events.front().hyperbolic_after += 1;
    CHECK_FALSE(replay(bad));
    bad = trace;
    bad.terminal.family += 1;
    CHECK_FALSE(replay(bad));
  }

  TEST_CASE("explicit chains without an eligible chain get stuck") {
    // A triangle of three families with three points is saturated but not
    // simply connected, and has no more discs than points.
    FillingConfig cfg;
    cfg.explicit_chains = std::vector<ChainGraph>{make_chain(3, {{1, 2}, {2, 3}, {3, 1}})};
    CHECK(error_code_of([&] { run_filling({4, 1, 3, 0, 0}, cfg); }) == ErrorCode::StuckState);
    cfg.explicit_chains = std::vector<ChainGraph>{make_chain(2, {{1, 1}})};
    CHECK(error_code_of([&] { run_filling({2, 1, 1, 0, 0}, cfg); }) == ErrorCode::InvalidInput);
  }
}
