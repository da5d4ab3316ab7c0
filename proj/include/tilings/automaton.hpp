// automaton.hpp -- boundary-state automaton of a subscripted tiling system.
//
// Symbols are pairs (tile, sub): a tile index and which of its solid cells
// (1-based) covers the current cell.  A boundary state records, for each
// age a in 1..L-1, whether a tile started a cells ago and still claims
// cells at offset >= a.  Bi-infinite label sequences of the pruned
// automaton are exactly the subscripted tilings of Z.
//
// The automaton is built by enumerating every consistent boundary state
// (pairwise-disjoint future claims) and then restricting to states that
// both reach and are reached from a cycle.  Expansion from the empty
// state alone would be wrong: systems whose tiles always interlock never
// pass through the empty boundary.

#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "tilings/prototile.hpp"

namespace tilings {

struct SubSymbol {
    int32_t tile = 0;
    int32_t sub = 0;  // 1-based index of the covering solid cell
    auto operator<=>(const SubSymbol&) const = default;
};

struct ActiveTile {
    int32_t age = 0;  // cells since the tile started, 1..L-1
    int32_t tile = 0;
    auto operator<=>(const ActiveTile&) const = default;
};

struct AutomatonEdge {
    int32_t from = 0;
    int32_t to = 0;
    SubSymbol label;
    auto operator<=>(const AutomatonEdge&) const = default;
};

struct EngineLimits {
    size_t max_states = 1'000'000;  // consistent boundary states enumerated
    int64_t max_length = 64;        // claim bitmask width caps L
};

// Scale budget exceeded; distinct from invalid input.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct TilingAutomaton {
    int32_t tile_count = 0;
    int64_t longest = 0;  // L
    std::vector<std::vector<ActiveTile>> states;  // entries sorted by age
    std::vector<AutomatonEdge> edges;             // sorted by (from, label)
    std::vector<int32_t> first_edge;              // CSR offsets, size states+1

    bool empty() const { return states.empty(); }
    int64_t alphabet_size() const;  // number of distinct (tile, sub) labels
};

TilingAutomaton build_automaton(const PrototileSet& ps, const EngineLimits& limits = {});

// true iff the prototile set admits at least one tiling of Z
bool tiles_integers(const PrototileSet& ps, const EngineLimits& limits = {});

// Does some cycle of the automaton read the subscripted word w repeated?
// Equivalent to w^inf being a point of the subscripted system.
bool periodic_subword_in_system(const TilingAutomaton& ta, const std::vector<SubSymbol>& w);

// Color-level membership of word^inf, word given by tile indices.
bool periodic_color_word_in_system(const TilingAutomaton& ta, const std::vector<int32_t>& word);

// Convenience wrapper: builds the automaton, resolves color names.
// Throws std::invalid_argument on an unknown color.
bool membership_periodic(const PrototileSet& ps, const std::vector<std::string>& word,
                         const EngineLimits& limits = {});

// All exact covers of the window [0, w); tiles may protrude on both sides.
std::vector<Tiling> enumerate_window_tilings(const PrototileSet& ps, int64_t w);

struct WindowVerdict {
    bool holds = false;
    // Nonempty iff !holds: a word whose repetition is window-locally
    // admissible yet not a point of the system.
    std::vector<SubSymbol> counterexample;
};

// Tests, over all periodic subscripted sequences with period <= period_bound,
// whether "every length-`window` factor occurs in the system" implies
// membership.  window = L always holds; window = L-1 can fail.
WindowVerdict check_window_theorem(const PrototileSet& ps, int64_t window,
                                   int64_t period_bound = 12, const EngineLimits& limits = {});

// Replays a cycle of the automaton and confirms the exact-cover invariant:
// each cell along the cycle is covered exactly once.  Used by tests.
bool replay_cycle_exact_cover(const TilingAutomaton& ta, const PrototileSet& ps,
                              const std::vector<int32_t>& state_cycle);

}  // namespace tilings
