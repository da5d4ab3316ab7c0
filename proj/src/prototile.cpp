#include "tilings/prototile.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <stdexcept>

namespace tilings {

namespace {

std::vector<Run> runs_from_offsets(std::vector<int64_t> offsets) {
    std::sort(offsets.begin(), offsets.end());
    offsets.erase(std::unique(offsets.begin(), offsets.end()), offsets.end());
    std::vector<Run> runs;
    for (int64_t o : offsets) {
        if (!runs.empty() && runs.back().start + runs.back().len == o) {
            ++runs.back().len;
        } else {
            runs.push_back({o, 1});
        }
    }
    return runs;
}

char marker_for(const std::string& color) {
    for (char c : color) {
        if (std::isalnum(static_cast<unsigned char>(c))) return c;
    }
    return 'a';
}

}  // namespace

Prototile::Prototile(std::string color, std::vector<int64_t> offsets)
    : color_(std::move(color)) {
    if (offsets.empty()) {
        throw std::invalid_argument("prototile '" + color_ + "': offset set is empty");
    }
    runs_ = runs_from_offsets(std::move(offsets));
    validate();
}

Prototile Prototile::from_runs(std::string color, std::vector<Run> runs) {
    Prototile p;
    p.color_ = std::move(color);
    std::sort(runs.begin(), runs.end(),
              [](const Run& a, const Run& b) { return a.start < b.start; });
    // merge touching or overlapping runs into maximal ones
    for (const Run& r : runs) {
        if (r.len <= 0) {
            throw std::invalid_argument("prototile '" + p.color_ + "': run with nonpositive length");
        }
        if (!p.runs_.empty() && r.start <= p.runs_.back().start + p.runs_.back().len) {
            Run& last = p.runs_.back();
            last.len = std::max(last.len, r.start + r.len - last.start);
        } else {
            p.runs_.push_back(r);
        }
    }
    if (p.runs_.empty()) {
        throw std::invalid_argument("prototile '" + p.color_ + "': no runs");
    }
    p.validate();
    return p;
}

void Prototile::validate() const {
    if (runs_.empty() || runs_[0].start != 0) {
        throw std::invalid_argument("prototile '" + color_ + "': smallest offset must be 0");
    }
    for (size_t i = 0; i < runs_.size(); ++i) {
        if (runs_[i].len <= 0 || runs_[i].start < 0) {
            throw std::invalid_argument("prototile '" + color_ + "': malformed run");
        }
        if (i > 0 && runs_[i].start <= runs_[i - 1].start + runs_[i - 1].len) {
            throw std::invalid_argument("prototile '" + color_ + "': runs overlap or touch");
        }
    }
}

Prototile Prototile::parse_broken_word(const std::string& text, std::string color) {
    std::vector<int64_t> offsets;
    int64_t cell = 0;
    int64_t last_solid = -1;
    bool first_is_solid = false;
    bool seen_any = false;
    for (char c : text) {
        if (std::isspace(static_cast<unsigned char>(c))) continue;
        if (std::isalnum(static_cast<unsigned char>(c))) {
            if (!seen_any) first_is_solid = true;
            offsets.push_back(cell);
            last_solid = cell;
        } else if (c != '_') {
            throw std::invalid_argument("broken word: unexpected character '" + std::string(1, c) + "'");
        }
        seen_any = true;
        ++cell;
    }
    if (!seen_any || offsets.empty()) {
        throw std::invalid_argument("broken word: no solid cells");
    }
    if (!first_is_solid) {
        throw std::invalid_argument("broken word: starts with a blank");
    }
    if (last_solid != cell - 1) {
        throw std::invalid_argument("broken word: ends with a blank");
    }
    return Prototile(std::move(color), std::move(offsets));
}

Prototile Prototile::normalize(std::vector<int64_t> raw, std::string color) {
    if (raw.empty()) {
        throw std::invalid_argument("normalize: empty set");
    }
    int64_t lo = *std::min_element(raw.begin(), raw.end());
    for (int64_t& v : raw) v -= lo;
    return Prototile(std::move(color), std::move(raw));
}

std::vector<int64_t> Prototile::offsets() const {
    std::vector<int64_t> out;
    out.reserve(static_cast<size_t>(solid_count()));
    for (const Run& r : runs_) {
        for (int64_t i = 0; i < r.len; ++i) out.push_back(r.start + i);
    }
    return out;
}

int64_t Prototile::solid_count() const {
    int64_t n = 0;
    for (const Run& r : runs_) n += r.len;
    return n;
}

bool Prototile::contains(int64_t offset) const {
    auto it = std::upper_bound(runs_.begin(), runs_.end(), offset,
                               [](int64_t v, const Run& r) { return v < r.start; });
    if (it == runs_.begin()) return false;
    --it;
    return offset < it->start + it->len;
}

int64_t Prototile::index_of(int64_t offset) const {
    int64_t rank = 0;
    for (const Run& r : runs_) {
        if (offset < r.start) return -1;
        if (offset < r.start + r.len) return rank + (offset - r.start);
        rank += r.len;
    }
    return -1;
}

int64_t Prototile::offset_at(int64_t index) const {
    if (index < 0) throw std::out_of_range("offset_at: negative index");
    for (const Run& r : runs_) {
        if (index < r.len) return r.start + index;
        index -= r.len;
    }
    throw std::out_of_range("offset_at: index past last solid cell");
}

std::string Prototile::render_broken_word() const {
    char m = marker_for(color_);
    std::string out;
    int64_t len = length();
    for (int64_t cell = 0; cell < len; ++cell) {
        if (cell > 0) out += ' ';
        out += contains(cell) ? m : '_';
    }
    return out;
}

PrototileSet::PrototileSet(std::vector<Prototile> tiles) : tiles_(std::move(tiles)) {
    std::set<std::string> seen;
    for (const Prototile& t : tiles_) {
        if (!seen.insert(t.color()).second) {
            throw std::invalid_argument("prototile set: duplicate color '" + t.color() + "'");
        }
    }
}

int64_t PrototileSet::longest_length() const {
    if (tiles_.empty()) {
        throw std::invalid_argument("longest_length: empty prototile set");
    }
    int64_t best = 0;
    for (const Prototile& t : tiles_) best = std::max(best, t.length());
    return best;
}

int64_t PrototileSet::color_index(std::string_view color) const {
    for (size_t i = 0; i < tiles_.size(); ++i) {
        if (tiles_[i].color() == color) return static_cast<int64_t>(i);
    }
    return -1;
}

PrototileSet PrototileSet::canonicalized() const {
    std::vector<Prototile> sorted = tiles_;
    std::sort(sorted.begin(), sorted.end(), [](const Prototile& a, const Prototile& b) {
        if (a.length() != b.length()) return a.length() < b.length();
        auto ao = a.offsets(), bo = b.offsets();
        if (ao != bo) return ao < bo;
        return a.color() < b.color();
    });
    return PrototileSet(std::move(sorted));
}

bool covers_exactly(const PrototileSet& ps, const Tiling& t) {
    // Map each covered cell to its covering placement; any double cover fails.
    std::map<int64_t, int> cover;
    int64_t lo = t.window_lo, hi = t.window_hi;
    if (t.period) {
        if (*t.period <= 0) return false;
        lo = 0;
        hi = *t.period;
    }
    if (lo >= hi) return false;
    auto record = [&](int64_t pos, int32_t tile) -> bool {
        if (tile < 0 || static_cast<size_t>(tile) >= ps.size()) return false;
        for (int64_t o : ps[static_cast<size_t>(tile)].offsets()) {
            int64_t cell = pos + o;
            if (t.period) cell = ((cell % *t.period) + *t.period) % *t.period;
            if (cell < lo || cell >= hi) continue;
            if (!cover.emplace(cell, 1).second) return false;
        }
        return true;
    };
    for (const Placement& p : t.placements) {
        if (!record(p.position, p.tile)) return false;
    }
    for (int64_t cell = lo; cell < hi; ++cell) {
        if (!cover.count(cell)) return false;
    }
    return true;
}

}  // namespace tilings
