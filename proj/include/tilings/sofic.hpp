// sofic.hpp -- color-level view of a tiling system as a sofic shift.
//
// Dropping subscripts from the boundary-state automaton gives a labeled
// graph presenting the tiling system.  The subset construction turns it
// into a right-resolving (deterministic) presentation, on which entropy
// and exact periodic-point counts are computed.

#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "tilings/automaton.hpp"

namespace tilings {

struct LabeledEdge {
    int32_t from = 0;
    int32_t to = 0;
    int32_t color = 0;
    auto operator<=>(const LabeledEdge&) const = default;
};

struct LabeledPresentation {
    std::vector<std::string> colors;
    int32_t state_count = 0;
    std::vector<LabeledEdge> edges;  // sorted, duplicates removed
    bool empty() const { return state_count == 0; }
};

struct DeterministicPresentation {
    std::vector<std::string> colors;
    int32_t state_count = 0;
    // state * colors.size() + color -> successor, -1 when undefined
    std::vector<int32_t> next;
    // the source-automaton state set each subset state stands for
    std::vector<std::vector<int32_t>> subsets;

    int32_t step(int32_t q, int32_t c) const {
        return next[static_cast<size_t>(q) * colors.size() + static_cast<size_t>(c)];
    }
    bool empty() const { return state_count == 0; }
};

LabeledPresentation drop_subscripts(const TilingAutomaton& ta, const PrototileSet& ps);

// Subset construction from the full state set, pruned to states on
// bi-infinite paths.  Presents the same language (verified extensionally
// by tests, not assumed).
DeterministicPresentation determinize(const LabeledPresentation& lp,
                                      size_t max_subsets = 1'000'000);

// Best-effort state reduction: restrict to the subsets reachable from the
// inclusion-minimal ones, keep the result only if its language agrees with
// the input up to `check_len`.  Falls back to the input unchanged.
DeterministicPresentation reduce_presentation(const DeterministicPresentation& dp,
                                              int64_t check_len = 12);

struct EntropyResult {
    double value = 0.0;            // natural log of the spectral radius
    double spectral_radius = 0.0;  // 0 for the empty presentation
    // monic characteristic polynomial of the adjacency matrix,
    // coefficients from x^d down to x^0; empty when dim > 12
    std::vector<mpz_class> char_poly;
    bool cross_checked = false;
};

EntropyResult entropy(const DeterministicPresentation& dp);

// Number of color sequences x with sigma^p(x) = x in the presented shift
// (points, not orbits; periods dividing p count too).
mpz_class count_periodic(const DeterministicPresentation& dp, int64_t p);

// counts for every p in 1..p_max in one dynamic-programming sweep
std::vector<mpz_class> count_periodic_range(const DeterministicPresentation& dp, int64_t p_max);

// All factors of length <= len, as color-index words, sorted.  Includes
// the empty word exactly when the shift is nonempty.
std::vector<std::vector<int32_t>> language_up_to(const DeterministicPresentation& dp, int64_t len);

// Same language but with color names substituted, for comparisons across
// presentations with different alphabets.
std::set<std::vector<std::string>> language_names_up_to(const DeterministicPresentation& dp,
                                                        int64_t len);

// Deterministic presentation of the renewal system generated by the words:
// all bi-infinite concatenations of them.  Colors are the distinct
// characters, sorted.
DeterministicPresentation renewal_presentation(const std::vector<std::string>& generators);

std::string char_poly_to_string(const std::vector<mpz_class>& coeffs);

}  // namespace tilings
