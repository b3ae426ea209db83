#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "levikit/index_calculus.hpp"

namespace levikit {

enum class Sign { Plus, Minus };

std::string_view to_string(Sign s);

// A limit hyperbolic disc. The id doubles as the id of the disc family it
// terminates.
struct DiscRecord {
  int id = 0;
  Sign sign = Sign::Plus;
  std::vector<int> family_origin;  // elliptic points whose families were merged into this one
  int maslov = 0;
};

// A hyperbolic point with its two approach regions. Both slots filled is a
// saturated contact (an edge, a self-loop when the discs agree); one slot
// is a half-edge.
struct PointRecord {
  int id = 0;
  Sign sign = Sign::Plus;
  std::optional<int> slot_a;
  std::optional<int> slot_b;

  bool saturated() const { return slot_a.has_value() && slot_b.has_value(); }
  bool self_loop() const { return saturated() && *slot_a == *slot_b; }
};

struct ChainGraph {
  int id = 0;
  std::vector<DiscRecord> discs;
  std::vector<PointRecord> points;
};

bool is_saturated(const ChainGraph& chain);

// Connectivity of the discs under saturated contacts.
bool is_connected(const ChainGraph& chain);

// True iff the saturated-contact multigraph has no cycle. Self-loops and
// repeated contacts between the same pair are cycles.
bool is_simply_connected(const ChainGraph& chain);

// |E| - |V| + (number of components) over saturated contacts.
int cycle_rank(const ChainGraph& chain);

enum class ChainLemma { Saturation, ChainConnect };

std::string_view to_string(ChainLemma l);

// Which of the two counting lemmas the chain contradicts: an unsaturated
// or a non-simply-connected chain of k discs must carry at least k points.
// Connectivity is deliberately not checked here.
std::vector<ChainLemma> lemma_violations(const ChainGraph& chain);

struct LemmaReport {
  int k_max = 0;
  long chains_checked = 0;  // connected chains enumerated
  long counterexamples = 0;
  long cycle_rank_mismatches = 0;  // is_simply_connected vs cycle_rank == 0
  std::vector<ChainGraph> examples;  // first few counterexamples
};

// Exhaustive check over connected chains with k <= k_max labelled discs
// and m <= k unlabelled contacts. Throws BudgetExceeded for k_max > 6.
LemmaReport check_chain_lemmas(int k_max);

enum class EventKind { Glue, PassThrough };

std::string_view to_string(EventKind k);

struct FillingEvent {
  int seq = 0;
  EventKind kind = EventKind::Glue;
  int chain = 0;
  int point = 0;
  std::pair<int, int> merged{0, 0};
  int new_family = 0;
  int loop_index = 0;
  int hyperbolic_after = 0;
  int families_after = 0;
  std::string epsilon_note;
};

struct Family {
  int id = 0;
  Sign sign = Sign::Plus;
  std::vector<int> origin;
  int maslov = 0;
};

struct SphereState {
  SphereInventory inventory;
  std::vector<Family> families;  // active positive families
  std::vector<ChainGraph> chains;
  std::vector<int> consumed_points;
  int remaining_h_plus = 0;
  int remaining_h_minus = 0;
  int next_family_id = 1;
  bool allow_self_loops = false;
  std::vector<FillingEvent> trace;

  int hyperbolic_remaining() const { return remaining_h_plus + remaining_h_minus; }
};

// Positive families 1..e_plus, one per positive elliptic point. Positive
// hyperbolic points get ids 1..h_plus and negative ones h_plus+1..h_plus+h_minus.
// Throws InconsistentInventory unless e_plus - h_plus = e_minus - h_minus = 1.
SphereState initial_state(const SphereInventory& inv);

// Merges the two discs at a positive saturated point into one new family.
// Throws UnsaturatedPoint, SelfLoopGluing or NegativePointGluing.
std::pair<SphereState, FillingEvent> glue_at_point(const SphereState& state, int chain_id, int point_id);

// Consumes a negative point whose both approach regions are filled by one
// positive family; the family count is unchanged.
std::pair<SphereState, FillingEvent> pass_through(const SphereState& state, int chain_id, int point_id);

struct RoundRecord {
  int round = 0;
  std::vector<ChainGraph> chains;
  std::vector<FillingEvent> events;
};

struct TerminalState {
  int family = 0;
  std::vector<int> family_origin;
  int families = 0;
  std::vector<int> negative_elliptic;  // ids of the negative elliptic points the family is matched to
};

struct FillingTrace {
  std::uint64_t seed = 0;
  SphereInventory inventory;
  std::vector<RoundRecord> rounds;
  TerminalState terminal;
};

struct FillingConfig {
  std::uint64_t seed = 0;
  // Chains for the first round; later rounds are always regenerated.
  std::optional<std::vector<ChainGraph>> explicit_chains;
  bool allow_self_loops = false;
};

// Random chain topology consistent with the current state: one tree chain
// plus unicyclic chains over the positive families, and every negative
// point as a self-loop on a random family.
std::vector<ChainGraph> generate_topology(const SphereState& state, std::uint64_t seed);

// Induction on the number of hyperbolic points: negative points are passed
// through first, then the smallest-id saturated simply connected chain with
// more discs than points is glued point by point. Throws StuckState when no
// such chain exists while positive points remain.
FillingTrace run_filling(const SphereInventory& inventory, const FillingConfig& config = {});

// Re-applies the recorded events and checks every recorded field. Returns
// false on the first disagreement.
bool replay(const FillingTrace& trace);

}  // namespace levikit
