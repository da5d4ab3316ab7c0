#include "tilings/automaton.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <string>

namespace tilings {

namespace {

struct TileInfo {
    std::vector<int64_t> offsets;
    int64_t maxoff = 0;
    // claims[a] has bit j set iff the tile, placed a cells ago, covers the
    // cell j positions ahead of the current one (offset a+j).
    std::vector<uint64_t> claims;
};

std::vector<TileInfo> tile_infos(const PrototileSet& ps) {
    std::vector<TileInfo> infos(ps.size());
    for (size_t k = 0; k < ps.size(); ++k) {
        TileInfo& t = infos[k];
        t.offsets = ps[k].offsets();
        t.maxoff = ps[k].max_offset();
        t.claims.assign(static_cast<size_t>(t.maxoff) + 1, 0);
        for (int64_t a = 0; a <= t.maxoff; ++a) {
            uint64_t bits = 0;
            for (int64_t o : t.offsets) {
                if (o >= a) bits |= uint64_t{1} << (o - a);
            }
            t.claims[static_cast<size_t>(a)] = bits;
        }
    }
    return infos;
}

std::vector<ActiveTile> advance(const std::vector<ActiveTile>& active,
                                const std::vector<TileInfo>& infos) {
    std::vector<ActiveTile> out;
    out.reserve(active.size());
    for (const ActiveTile& e : active) {
        if (infos[static_cast<size_t>(e.tile)].maxoff >= e.age + 1) {
            out.push_back({e.age + 1, e.tile});
        }
    }
    return out;
}

struct Universe {
    std::vector<std::vector<ActiveTile>> states;
    std::vector<uint64_t> masks;
    std::map<std::vector<ActiveTile>, int32_t> index;
};

// Every assignment of at most one tile per age with pairwise-disjoint
// claims on the cells at offset >= 0.
Universe enumerate_universe(const std::vector<TileInfo>& infos, int64_t L,
                            const EngineLimits& limits) {
    Universe u;
    std::vector<ActiveTile> cur;
    uint64_t curmask = 0;
    const int32_t K = static_cast<int32_t>(infos.size());
    std::function<void(int64_t)> rec = [&](int64_t age) {
        if (age == L) {
            if (u.states.size() >= limits.max_states) {
                throw BudgetError("boundary-state enumeration exceeds " +
                                  std::to_string(limits.max_states) + " states");
            }
            int32_t id = static_cast<int32_t>(u.states.size());
            u.states.push_back(cur);
            u.masks.push_back(curmask);
            u.index.emplace(cur, id);
            return;
        }
        rec(age + 1);
        for (int32_t k = 0; k < K; ++k) {
            const TileInfo& t = infos[static_cast<size_t>(k)];
            if (t.maxoff < age) continue;
            uint64_t bits = t.claims[static_cast<size_t>(age)];
            if (curmask & bits) continue;
            cur.push_back({static_cast<int32_t>(age), k});
            curmask |= bits;
            rec(age + 1);
            curmask &= ~bits;
            cur.pop_back();
        }
    };
    rec(1);
    return u;
}

struct RawEdge {
    SubSymbol label;
    int32_t to = 0;
};

// Out-edges of one boundary state, sorted by label.  The current cell is
// either covered by the unique active claimant (one deterministic edge) or
// left to a fresh tile (one branch per tile that fits).
std::vector<RawEdge> out_edges(const Universe& u, int32_t s,
                               const std::vector<TileInfo>& infos,
                               const PrototileSet& ps) {
    const std::vector<ActiveTile>& active = u.states[static_cast<size_t>(s)];
    std::vector<RawEdge> out;
    const ActiveTile* holder = nullptr;
    for (const ActiveTile& e : active) {
        if (infos[static_cast<size_t>(e.tile)].claims[static_cast<size_t>(e.age)] & 1) {
            holder = &e;
            break;
        }
    }
    if (holder != nullptr) {
        std::vector<ActiveTile> next = advance(active, infos);
        int32_t sub = static_cast<int32_t>(ps[static_cast<size_t>(holder->tile)].index_of(holder->age)) + 1;
        out.push_back({{holder->tile, sub}, u.index.at(next)});
        return out;
    }
    std::vector<ActiveTile> adv = advance(active, infos);
    for (int32_t k = 0; k < static_cast<int32_t>(infos.size()); ++k) {
        const TileInfo& t = infos[static_cast<size_t>(k)];
        if (u.masks[static_cast<size_t>(s)] & t.claims[0]) continue;
        std::vector<ActiveTile> next = adv;
        if (t.maxoff >= 1) next.insert(next.begin(), {1, k});
        out.push_back({{k, 1}, u.index.at(next)});
    }
    return out;
}

// Iterative Tarjan; returns component id per node, components numbered in
// reverse topological completion order (enough for our purposes).
std::vector<int32_t> strongly_connected(const std::vector<std::vector<RawEdge>>& succ) {
    const int32_t n = static_cast<int32_t>(succ.size());
    std::vector<int32_t> comp(static_cast<size_t>(n), -1), low(static_cast<size_t>(n), 0),
        num(static_cast<size_t>(n), -1);
    std::vector<int32_t> stck;
    std::vector<bool> onstack(static_cast<size_t>(n), false);
    int32_t counter = 0, ncomp = 0;
    struct Frame {
        int32_t v;
        size_t ei;
    };
    for (int32_t root = 0; root < n; ++root) {
        if (num[static_cast<size_t>(root)] != -1) continue;
        std::vector<Frame> frames{{root, 0}};
        num[static_cast<size_t>(root)] = low[static_cast<size_t>(root)] = counter++;
        stck.push_back(root);
        onstack[static_cast<size_t>(root)] = true;
        while (!frames.empty()) {
            Frame& f = frames.back();
            if (f.ei < succ[static_cast<size_t>(f.v)].size()) {
                int32_t w = succ[static_cast<size_t>(f.v)][f.ei++].to;
                if (num[static_cast<size_t>(w)] == -1) {
                    num[static_cast<size_t>(w)] = low[static_cast<size_t>(w)] = counter++;
                    stck.push_back(w);
                    onstack[static_cast<size_t>(w)] = true;
                    frames.push_back({w, 0});
                } else if (onstack[static_cast<size_t>(w)]) {
                    low[static_cast<size_t>(f.v)] =
                        std::min(low[static_cast<size_t>(f.v)], num[static_cast<size_t>(w)]);
                }
            } else {
                int32_t v = f.v;
                frames.pop_back();
                if (!frames.empty()) {
                    int32_t parent = frames.back().v;
                    low[static_cast<size_t>(parent)] =
                        std::min(low[static_cast<size_t>(parent)], low[static_cast<size_t>(v)]);
                }
                if (low[static_cast<size_t>(v)] == num[static_cast<size_t>(v)]) {
                    while (true) {
                        int32_t w = stck.back();
                        stck.pop_back();
                        onstack[static_cast<size_t>(w)] = false;
                        comp[static_cast<size_t>(w)] = ncomp;
                        if (w == v) break;
                    }
                    ++ncomp;
                }
            }
        }
    }
    return comp;
}

}  // namespace

int64_t TilingAutomaton::alphabet_size() const {
    std::set<SubSymbol> labels;
    for (const AutomatonEdge& e : edges) labels.insert(e.label);
    return static_cast<int64_t>(labels.size());
}

TilingAutomaton build_automaton(const PrototileSet& ps, const EngineLimits& limits) {
    if (ps.empty()) {
        throw std::invalid_argument("build_automaton: empty prototile set");
    }
    const int64_t L = ps.longest_length();
    if (L > limits.max_length || L > 64) {
        throw BudgetError("longest prototile length " + std::to_string(L) +
                          " exceeds the engine cap of " +
                          std::to_string(std::min<int64_t>(limits.max_length, 64)));
    }
    const std::vector<TileInfo> infos = tile_infos(ps);
    Universe u = enumerate_universe(infos, L, limits);
    const int32_t n = static_cast<int32_t>(u.states.size());

    std::vector<std::vector<RawEdge>> succ(static_cast<size_t>(n));
    for (int32_t s = 0; s < n; ++s) {
        succ[static_cast<size_t>(s)] = out_edges(u, s, infos, ps);
    }

    // Keep exactly the states lying on some bi-infinite path: those that
    // can reach a cycle and be reached from one.
    std::vector<int32_t> comp = strongly_connected(succ);
    std::vector<bool> recurrent(static_cast<size_t>(n), false);
    {
        std::vector<int32_t> comp_size(static_cast<size_t>(n), 0);
        for (int32_t v = 0; v < n; ++v) ++comp_size[static_cast<size_t>(comp[static_cast<size_t>(v)])];
        for (int32_t v = 0; v < n; ++v) {
            if (comp_size[static_cast<size_t>(comp[static_cast<size_t>(v)])] >= 2) {
                recurrent[static_cast<size_t>(v)] = true;
                continue;
            }
            for (const RawEdge& e : succ[static_cast<size_t>(v)]) {
                if (e.to == v) {
                    recurrent[static_cast<size_t>(v)] = true;
                    break;
                }
            }
        }
    }
    std::vector<std::vector<int32_t>> pred(static_cast<size_t>(n));
    for (int32_t v = 0; v < n; ++v) {
        for (const RawEdge& e : succ[static_cast<size_t>(v)]) {
            pred[static_cast<size_t>(e.to)].push_back(v);
        }
    }
    auto closure = [n](const std::vector<bool>& seeds, const auto& next) {
        std::vector<bool> seen = seeds;
        std::vector<int32_t> queue;
        for (int32_t v = 0; v < n; ++v) {
            if (seen[static_cast<size_t>(v)]) queue.push_back(v);
        }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            for (int32_t w : next(queue[qi])) {
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    queue.push_back(w);
                }
            }
        }
        return seen;
    };
    std::vector<bool> fwd = closure(recurrent, [&](int32_t v) {
        std::vector<int32_t> out;
        for (const RawEdge& e : succ[static_cast<size_t>(v)]) out.push_back(e.to);
        return out;
    });
    std::vector<bool> bwd = closure(recurrent, [&](int32_t v) { return pred[static_cast<size_t>(v)]; });
    std::vector<bool> keep(static_cast<size_t>(n), false);
    for (int32_t v = 0; v < n; ++v) {
        keep[static_cast<size_t>(v)] = fwd[static_cast<size_t>(v)] && bwd[static_cast<size_t>(v)];
    }

    // Canonical numbering: breadth-first from the lexicographically
    // smallest surviving states, exploring edges in label order.
    std::vector<int32_t> seeds;
    for (int32_t v = 0; v < n; ++v) {
        if (keep[static_cast<size_t>(v)]) seeds.push_back(v);
    }
    std::sort(seeds.begin(), seeds.end(), [&](int32_t a, int32_t b) {
        return u.states[static_cast<size_t>(a)] < u.states[static_cast<size_t>(b)];
    });
    std::vector<int32_t> newid(static_cast<size_t>(n), -1);
    std::vector<int32_t> order;
    for (int32_t seed : seeds) {
        if (newid[static_cast<size_t>(seed)] != -1) continue;
        newid[static_cast<size_t>(seed)] = static_cast<int32_t>(order.size());
        order.push_back(seed);
        for (size_t qi = order.size() - 1; qi < order.size(); ++qi) {
            for (const RawEdge& e : succ[static_cast<size_t>(order[qi])]) {
                if (!keep[static_cast<size_t>(e.to)] || newid[static_cast<size_t>(e.to)] != -1) continue;
                newid[static_cast<size_t>(e.to)] = static_cast<int32_t>(order.size());
                order.push_back(e.to);
            }
        }
    }

    TilingAutomaton ta;
    ta.tile_count = static_cast<int32_t>(ps.size());
    ta.longest = L;
    ta.states.resize(order.size());
    for (size_t i = 0; i < order.size(); ++i) {
        ta.states[i] = u.states[static_cast<size_t>(order[i])];
    }
    for (int32_t v : order) {
        for (const RawEdge& e : succ[static_cast<size_t>(v)]) {
            if (!keep[static_cast<size_t>(e.to)]) continue;
            ta.edges.push_back({newid[static_cast<size_t>(v)], newid[static_cast<size_t>(e.to)], e.label});
        }
    }
    std::sort(ta.edges.begin(), ta.edges.end());
    ta.first_edge.assign(ta.states.size() + 1, 0);
    for (const AutomatonEdge& e : ta.edges) ++ta.first_edge[static_cast<size_t>(e.from) + 1];
    for (size_t i = 1; i < ta.first_edge.size(); ++i) ta.first_edge[i] += ta.first_edge[i - 1];
    return ta;
}

bool tiles_integers(const PrototileSet& ps, const EngineLimits& limits) {
    return !build_automaton(ps, limits).empty();
}

namespace {

// Cycle detection in the product of the automaton with a p-cycle; `match`
// decides whether an edge may carry position i of the word.
bool product_has_cycle(const TilingAutomaton& ta, int64_t p,
                       const std::function<bool(int64_t, const AutomatonEdge&)>& match) {
    if (ta.empty() || p <= 0) return false;
    const int64_t N = static_cast<int64_t>(ta.states.size());
    const int64_t total = N * p;
    std::vector<uint8_t> color(static_cast<size_t>(total), 0);  // 0 white, 1 grey, 2 black
    struct Frame {
        int64_t node;
        int32_t ei;
    };
    for (int64_t start = 0; start < total; ++start) {
        if (color[static_cast<size_t>(start)] != 0) continue;
        std::vector<Frame> stack{{start, ta.first_edge[static_cast<size_t>(start % N)]}};
        color[static_cast<size_t>(start)] = 1;
        while (!stack.empty()) {
            const size_t fi = stack.size() - 1;
            const int64_t node = stack[fi].node;
            const int64_t q = node % N;
            const int64_t step = node / N;
            bool descended = false;
            while (stack[fi].ei < ta.first_edge[static_cast<size_t>(q) + 1]) {
                const AutomatonEdge& e = ta.edges[static_cast<size_t>(stack[fi].ei)];
                ++stack[fi].ei;
                if (!match(step, e)) continue;
                int64_t nxt = ((step + 1) % p) * N + e.to;
                if (color[static_cast<size_t>(nxt)] == 1) return true;
                if (color[static_cast<size_t>(nxt)] == 0) {
                    color[static_cast<size_t>(nxt)] = 1;
                    stack.push_back({nxt, ta.first_edge[static_cast<size_t>(e.to)]});
                    descended = true;
                    break;
                }
            }
            if (!descended) {
                color[static_cast<size_t>(node)] = 2;
                stack.pop_back();
            }
        }
    }
    return false;
}

}  // namespace

bool periodic_subword_in_system(const TilingAutomaton& ta, const std::vector<SubSymbol>& w) {
    if (w.empty()) throw std::invalid_argument("periodic_subword_in_system: empty word");
    return product_has_cycle(ta, static_cast<int64_t>(w.size()),
                             [&](int64_t step, const AutomatonEdge& e) {
                                 return e.label == w[static_cast<size_t>(step)];
                             });
}

bool periodic_color_word_in_system(const TilingAutomaton& ta, const std::vector<int32_t>& word) {
    if (word.empty()) throw std::invalid_argument("periodic_color_word_in_system: empty word");
    return product_has_cycle(ta, static_cast<int64_t>(word.size()),
                             [&](int64_t step, const AutomatonEdge& e) {
                                 return e.label.tile == word[static_cast<size_t>(step)];
                             });
}

bool membership_periodic(const PrototileSet& ps, const std::vector<std::string>& word,
                         const EngineLimits& limits) {
    if (word.empty()) throw std::invalid_argument("membership_periodic: empty word");
    std::vector<int32_t> indices;
    indices.reserve(word.size());
    for (const std::string& c : word) {
        int64_t k = ps.color_index(c);
        if (k < 0) throw std::invalid_argument("membership_periodic: unknown color '" + c + "'");
        indices.push_back(static_cast<int32_t>(k));
    }
    TilingAutomaton ta = build_automaton(ps, limits);
    return periodic_color_word_in_system(ta, indices);
}

std::vector<Tiling> enumerate_window_tilings(const PrototileSet& ps, int64_t w) {
    if (w < 1) throw std::invalid_argument("enumerate_window_tilings: need w >= 1");
    std::vector<Tiling> out;
    std::set<int64_t> covered;
    std::vector<Placement> placements;
    std::function<void()> rec = [&]() {
        int64_t cell = -1;
        for (int64_t c = 0; c < w; ++c) {
            if (!covered.count(c)) {
                cell = c;
                break;
            }
        }
        if (cell == -1) {
            Tiling t;
            t.placements = placements;
            std::sort(t.placements.begin(), t.placements.end());
            t.window_lo = 0;
            t.window_hi = w;
            out.push_back(std::move(t));
            return;
        }
        for (size_t k = 0; k < ps.size(); ++k) {
            for (int64_t o : ps[k].offsets()) {
                int64_t pos = cell - o;
                bool fits = true;
                for (int64_t oo : ps[k].offsets()) {
                    if (covered.count(pos + oo)) {
                        fits = false;
                        break;
                    }
                }
                if (!fits) continue;
                for (int64_t oo : ps[k].offsets()) covered.insert(pos + oo);
                placements.push_back({pos, static_cast<int32_t>(k)});
                rec();
                placements.pop_back();
                for (int64_t oo : ps[k].offsets()) covered.erase(pos + oo);
            }
        }
    };
    rec();
    return out;
}

WindowVerdict check_window_theorem(const PrototileSet& ps, int64_t window,
                                   int64_t period_bound, const EngineLimits& limits) {
    if (window < 1) throw std::invalid_argument("check_window_theorem: need window >= 1");
    TilingAutomaton ta = build_automaton(ps, limits);

    // All words of length `window` in the system's language: label paths of
    // the pruned automaton.
    std::set<std::vector<SubSymbol>> admissible;
    {
        const size_t word_cap = 200000;
        std::vector<SubSymbol> word;
        std::function<void(int32_t, int64_t)> rec = [&](int32_t q, int64_t depth) {
            if (depth == window) {
                admissible.insert(word);
                if (admissible.size() > word_cap) {
                    throw BudgetError("check_window_theorem: admissible window set too large");
                }
                return;
            }
            for (int32_t ei = ta.first_edge[static_cast<size_t>(q)];
                 ei < ta.first_edge[static_cast<size_t>(q) + 1]; ++ei) {
                const AutomatonEdge& e = ta.edges[static_cast<size_t>(ei)];
                word.push_back(e.label);
                rec(e.to, depth + 1);
                word.pop_back();
            }
        };
        for (int32_t q = 0; q < static_cast<int32_t>(ta.states.size()); ++q) rec(q, 0);
    }

    std::vector<SubSymbol> alphabet;
    for (size_t k = 0; k < ps.size(); ++k) {
        for (int32_t s = 1; s <= ps[k].solid_count(); ++s) {
            alphabet.push_back({static_cast<int32_t>(k), s});
        }
    }

    WindowVerdict verdict;
    verdict.holds = true;
    std::vector<SubSymbol> w;
    auto cyclic_windows_admissible = [&](int64_t p) {
        for (int64_t j = 0; j < p; ++j) {
            std::vector<SubSymbol> win(static_cast<size_t>(window));
            for (int64_t t = 0; t < window; ++t) {
                win[static_cast<size_t>(t)] = w[static_cast<size_t>((j + t) % p)];
            }
            if (!admissible.count(win)) return false;
        }
        return true;
    };
    std::function<bool(int64_t)> rec = [&](int64_t p) -> bool {
        int64_t len = static_cast<int64_t>(w.size());
        if (len == p) {
            if (cyclic_windows_admissible(p) && !periodic_subword_in_system(ta, w)) {
                verdict.holds = false;
                verdict.counterexample = w;
                return true;
            }
            return false;
        }
        for (const SubSymbol& a : alphabet) {
            w.push_back(a);
            // prune on the newest complete window inside the linear word
            bool viable = true;
            if (len + 1 >= window) {
                std::vector<SubSymbol> win(w.end() - window, w.end());
                viable = admissible.count(win) > 0;
            }
            if (viable && rec(p)) return true;
            w.pop_back();
        }
        return false;
    };
    for (int64_t p = 1; p <= period_bound; ++p) {
        if (rec(p)) break;
    }
    return verdict;
}

bool replay_cycle_exact_cover(const TilingAutomaton& ta, const PrototileSet& ps,
                              const std::vector<int32_t>& state_cycle) {
    const int64_t c = static_cast<int64_t>(state_cycle.size());
    if (c == 0) return false;
    // Each label claims a placement for its own cell; a placement with
    // several solid cells is claimed once per cell, so deduplicate before
    // counting coverage.
    std::set<std::pair<int64_t, int32_t>> placements;  // (start mod c, tile)
    for (int64_t i = 0; i < c; ++i) {
        int32_t from = state_cycle[static_cast<size_t>(i)];
        int32_t to = state_cycle[static_cast<size_t>((i + 1) % c)];
        const AutomatonEdge* found = nullptr;
        for (int32_t ei = ta.first_edge[static_cast<size_t>(from)];
             ei < ta.first_edge[static_cast<size_t>(from) + 1]; ++ei) {
            if (ta.edges[static_cast<size_t>(ei)].to == to) {
                found = &ta.edges[static_cast<size_t>(ei)];
                break;
            }
        }
        if (found == nullptr) return false;
        const Prototile& tile = ps[static_cast<size_t>(found->label.tile)];
        int64_t start = i - tile.offset_at(found->label.sub - 1);
        placements.insert({((start % c) + c) % c, found->label.tile});
    }
    std::vector<int64_t> coverage(static_cast<size_t>(c), 0);
    for (const auto& [start, t] : placements) {
        for (int64_t o : ps[static_cast<size_t>(t)].offsets()) {
            ++coverage[static_cast<size_t>((start + o) % c)];
        }
    }
    for (int64_t v : coverage) {
        if (v != 1) return false;
    }
    return true;
}

}  // namespace tilings
