// prototile.hpp -- prototiles, prototile sets, broken-word notation.
//
// A prototile is a finite set of nonnegative integers (its offsets) with
// minimum 0, plus a color name.  Offsets are stored as maximal solid runs
// so that very long sparse tiles stay compact.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tilings {

// One maximal solid run: cells [start, start+len).
struct Run {
    int64_t start = 0;
    int64_t len = 0;
    bool operator==(const Run&) const = default;
};

class Prototile {
public:
    // offsets must be nonempty; they are sorted and deduplicated, and the
    // first offset must be 0.
    Prototile(std::string color, std::vector<int64_t> offsets);

    static Prototile from_runs(std::string color, std::vector<Run> runs);

    // Broken-word notation: alphanumeric characters are solid cells, '_' is
    // a blank cell, whitespace separates cells.  "B _ B" -> {0,2}.
    static Prototile parse_broken_word(const std::string& text, std::string color);

    // Translate an arbitrary nonempty finite set so its minimum becomes 0.
    static Prototile normalize(std::vector<int64_t> raw, std::string color);

    const std::string& color() const { return color_; }
    const std::vector<Run>& runs() const { return runs_; }

    std::vector<int64_t> offsets() const;

    // max offset + 1
    int64_t length() const { return runs_.back().start + runs_.back().len; }
    int64_t max_offset() const { return length() - 1; }
    // number of offsets
    int64_t solid_count() const;

    bool contains(int64_t offset) const;
    // 0-based rank of an offset, -1 if absent
    int64_t index_of(int64_t offset) const;
    int64_t offset_at(int64_t index) const;

    std::string render_broken_word() const;

    bool operator==(const Prototile&) const = default;

private:
    Prototile() = default;
    void validate() const;

    std::string color_;
    std::vector<Run> runs_;  // sorted, disjoint, non-adjacent, runs_[0].start == 0
};

class PrototileSet {
public:
    PrototileSet() = default;
    explicit PrototileSet(std::vector<Prototile> tiles);

    const std::vector<Prototile>& tiles() const { return tiles_; }
    size_t size() const { return tiles_.size(); }
    bool empty() const { return tiles_.empty(); }
    const Prototile& operator[](size_t k) const { return tiles_[k]; }

    // L = max over tiles of (max offset + 1); throws on an empty set.
    int64_t longest_length() const;

    // index of a color name, -1 if absent
    int64_t color_index(std::string_view color) const;

    // sorted by (length, offsets lexicographic, color name)
    PrototileSet canonicalized() const;

    bool operator==(const PrototileSet&) const = default;

private:
    std::vector<Prototile> tiles_;
};

struct Placement {
    int64_t position = 0;
    int32_t tile = 0;  // index into the PrototileSet
    bool operator==(const Placement&) const = default;
    auto operator<=>(const Placement&) const = default;
};

// A finite or periodic fragment of a tiling.  The scope is either the
// window [window_lo, window_hi) or, when period is set, the statement that
// the placement pattern repeats with that period.
struct Tiling {
    std::vector<Placement> placements;
    int64_t window_lo = 0;
    int64_t window_hi = 0;
    std::optional<int64_t> period;
    bool operator==(const Tiling&) const = default;
};

// Checks the exact-cover invariant: within the scope every cell is covered
// exactly once and tiles are pairwise disjoint (including protrusions).
bool covers_exactly(const PrototileSet& ps, const Tiling& t);

}  // namespace tilings
