#include "tilings/sofic.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>

namespace tilings {

namespace {

// shared pruning: keep states on bi-infinite paths of the edge list
template <typename EdgeList>
std::vector<bool> biinfinite_states(int32_t n, const EdgeList& edges) {
    std::vector<std::vector<int32_t>> succ(static_cast<size_t>(n)), pred(static_cast<size_t>(n));
    for (const auto& e : edges) {
        succ[static_cast<size_t>(e.from)].push_back(e.to);
        pred[static_cast<size_t>(e.to)].push_back(e.from);
    }
    // recurrent = on some cycle, found via Kosaraju components
    std::vector<int32_t> order;
    order.reserve(static_cast<size_t>(n));
    std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
    for (int32_t root = 0; root < n; ++root) {
        if (seen[static_cast<size_t>(root)]) continue;
        std::vector<std::pair<int32_t, size_t>> stack{{root, 0}};
        seen[static_cast<size_t>(root)] = 1;
        while (!stack.empty()) {
            auto& [v, ei] = stack.back();
            if (ei < succ[static_cast<size_t>(v)].size()) {
                int32_t w = succ[static_cast<size_t>(v)][ei++];
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = 1;
                    stack.push_back({w, 0});
                }
            } else {
                order.push_back(v);
                stack.pop_back();
            }
        }
    }
    std::vector<int32_t> comp(static_cast<size_t>(n), -1);
    int32_t ncomp = 0;
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        if (comp[static_cast<size_t>(*it)] != -1) continue;
        std::vector<int32_t> stack{*it};
        comp[static_cast<size_t>(*it)] = ncomp;
        while (!stack.empty()) {
            int32_t v = stack.back();
            stack.pop_back();
            for (int32_t w : pred[static_cast<size_t>(v)]) {
                if (comp[static_cast<size_t>(w)] == -1) {
                    comp[static_cast<size_t>(w)] = ncomp;
                    stack.push_back(w);
                }
            }
        }
        ++ncomp;
    }
    std::vector<int32_t> comp_size(static_cast<size_t>(ncomp), 0);
    for (int32_t v = 0; v < n; ++v) ++comp_size[static_cast<size_t>(comp[static_cast<size_t>(v)])];
    std::vector<bool> recurrent(static_cast<size_t>(n), false);
    for (int32_t v = 0; v < n; ++v) {
        if (comp_size[static_cast<size_t>(comp[static_cast<size_t>(v)])] >= 2) {
            recurrent[static_cast<size_t>(v)] = true;
        } else {
            for (int32_t w : succ[static_cast<size_t>(v)]) {
                if (w == v) recurrent[static_cast<size_t>(v)] = true;
            }
        }
    }
    auto closure = [n](std::vector<bool> seeds, const std::vector<std::vector<int32_t>>& adj) {
        std::vector<int32_t> queue;
        for (int32_t v = 0; v < n; ++v) {
            if (seeds[static_cast<size_t>(v)]) queue.push_back(v);
        }
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            for (int32_t w : adj[static_cast<size_t>(queue[qi])]) {
                if (!seeds[static_cast<size_t>(w)]) {
                    seeds[static_cast<size_t>(w)] = true;
                    queue.push_back(w);
                }
            }
        }
        return seeds;
    };
    std::vector<bool> fwd = closure(recurrent, succ);
    std::vector<bool> bwd = closure(recurrent, pred);
    std::vector<bool> keep(static_cast<size_t>(n));
    for (int32_t v = 0; v < n; ++v) {
        keep[static_cast<size_t>(v)] = fwd[static_cast<size_t>(v)] && bwd[static_cast<size_t>(v)];
    }
    return keep;
}

}  // namespace

LabeledPresentation drop_subscripts(const TilingAutomaton& ta, const PrototileSet& ps) {
    LabeledPresentation lp;
    for (const Prototile& t : ps.tiles()) lp.colors.push_back(t.color());
    lp.state_count = static_cast<int32_t>(ta.states.size());
    for (const AutomatonEdge& e : ta.edges) {
        lp.edges.push_back({e.from, e.to, e.label.tile});
    }
    std::sort(lp.edges.begin(), lp.edges.end());
    lp.edges.erase(std::unique(lp.edges.begin(), lp.edges.end()), lp.edges.end());
    return lp;
}

DeterministicPresentation determinize(const LabeledPresentation& lp, size_t max_subsets) {
    DeterministicPresentation dp;
    dp.colors = lp.colors;
    if (lp.empty()) return dp;
    const size_t K = lp.colors.size();

    // per-state, per-color successor lists
    std::vector<std::vector<std::vector<int32_t>>> succ(
        static_cast<size_t>(lp.state_count),
        std::vector<std::vector<int32_t>>(K));
    for (const LabeledEdge& e : lp.edges) {
        succ[static_cast<size_t>(e.from)][static_cast<size_t>(e.color)].push_back(e.to);
    }

    std::vector<int32_t> full(static_cast<size_t>(lp.state_count));
    for (int32_t i = 0; i < lp.state_count; ++i) full[static_cast<size_t>(i)] = i;

    std::map<std::vector<int32_t>, int32_t> id;
    std::vector<std::vector<int32_t>> subsets;
    std::vector<std::vector<int32_t>> trans;  // subset id x color -> subset id
    std::vector<std::vector<int32_t>> queue{full};
    id[full] = 0;
    subsets.push_back(full);
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        std::vector<int32_t> cur = queue[qi];
        std::vector<int32_t> row(K, -1);
        for (size_t c = 0; c < K; ++c) {
            std::set<int32_t> nxt;
            for (int32_t q : cur) {
                for (int32_t t : succ[static_cast<size_t>(q)][c]) nxt.insert(t);
            }
            if (nxt.empty()) continue;
            std::vector<int32_t> key(nxt.begin(), nxt.end());
            auto it = id.find(key);
            if (it == id.end()) {
                if (subsets.size() >= max_subsets) {
                    throw BudgetError("determinize: subset construction exceeds " +
                                      std::to_string(max_subsets) + " states");
                }
                it = id.emplace(key, static_cast<int32_t>(subsets.size())).first;
                subsets.push_back(key);
                queue.push_back(key);
            }
            row[c] = it->second;
        }
        trans.push_back(std::move(row));
    }

    // prune to bi-infinite viability
    struct E {
        int32_t from, to;
    };
    std::vector<E> plain;
    for (size_t s = 0; s < trans.size(); ++s) {
        for (size_t c = 0; c < K; ++c) {
            if (trans[s][c] >= 0) plain.push_back({static_cast<int32_t>(s), trans[s][c]});
        }
    }
    std::vector<bool> keep = biinfinite_states(static_cast<int32_t>(subsets.size()), plain);

    std::vector<std::vector<int32_t>> kept;
    for (size_t s = 0; s < subsets.size(); ++s) {
        if (keep[s]) kept.push_back(subsets[s]);
    }
    std::sort(kept.begin(), kept.end());
    std::map<std::vector<int32_t>, int32_t> newid;
    for (size_t i = 0; i < kept.size(); ++i) newid[kept[i]] = static_cast<int32_t>(i);

    dp.state_count = static_cast<int32_t>(kept.size());
    dp.subsets = kept;
    dp.next.assign(kept.size() * K, -1);
    for (size_t s = 0; s < subsets.size(); ++s) {
        if (!keep[s]) continue;
        int32_t row = newid.at(subsets[s]);
        for (size_t c = 0; c < K; ++c) {
            int32_t t = trans[s][c];
            if (t < 0 || !keep[static_cast<size_t>(t)]) continue;
            dp.next[static_cast<size_t>(row) * K + c] = newid.at(subsets[static_cast<size_t>(t)]);
        }
    }
    return dp;
}

DeterministicPresentation reduce_presentation(const DeterministicPresentation& dp,
                                              int64_t check_len) {
    if (dp.empty() || dp.subsets.empty()) return dp;
    const size_t K = dp.colors.size();

    auto subset_of = [](const std::vector<int32_t>& a, const std::vector<int32_t>& b) {
        return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
    };
    std::vector<bool> minimal(static_cast<size_t>(dp.state_count), true);
    for (int32_t i = 0; i < dp.state_count; ++i) {
        for (int32_t j = 0; j < dp.state_count && minimal[static_cast<size_t>(i)]; ++j) {
            if (i != j && subset_of(dp.subsets[static_cast<size_t>(j)], dp.subsets[static_cast<size_t>(i)])) {
                minimal[static_cast<size_t>(i)] = false;
            }
        }
    }
    // forward closure of the minimal states
    std::vector<bool> inset(static_cast<size_t>(dp.state_count), false);
    std::vector<int32_t> queue;
    for (int32_t i = 0; i < dp.state_count; ++i) {
        if (minimal[static_cast<size_t>(i)]) {
            inset[static_cast<size_t>(i)] = true;
            queue.push_back(i);
        }
    }
    for (size_t qi = 0; qi < queue.size(); ++qi) {
        for (size_t c = 0; c < K; ++c) {
            int32_t t = dp.step(queue[qi], static_cast<int32_t>(c));
            if (t >= 0 && !inset[static_cast<size_t>(t)]) {
                inset[static_cast<size_t>(t)] = true;
                queue.push_back(t);
            }
        }
    }

    // restricted presentation, re-pruned
    std::vector<int32_t> old_of;
    std::vector<int32_t> new_of(static_cast<size_t>(dp.state_count), -1);
    for (int32_t i = 0; i < dp.state_count; ++i) {
        if (inset[static_cast<size_t>(i)]) {
            new_of[static_cast<size_t>(i)] = static_cast<int32_t>(old_of.size());
            old_of.push_back(i);
        }
    }
    struct E {
        int32_t from, to;
    };
    std::vector<E> plain;
    for (size_t s = 0; s < old_of.size(); ++s) {
        for (size_t c = 0; c < K; ++c) {
            int32_t t = dp.step(old_of[s], static_cast<int32_t>(c));
            if (t >= 0 && inset[static_cast<size_t>(t)]) {
                plain.push_back({static_cast<int32_t>(s), new_of[static_cast<size_t>(t)]});
            }
        }
    }
    std::vector<bool> keep = biinfinite_states(static_cast<int32_t>(old_of.size()), plain);

    DeterministicPresentation out;
    out.colors = dp.colors;
    std::vector<int32_t> final_of;
    std::vector<int32_t> final_new(old_of.size(), -1);
    for (size_t s = 0; s < old_of.size(); ++s) {
        if (keep[s]) {
            final_new[s] = static_cast<int32_t>(final_of.size());
            final_of.push_back(old_of[s]);
        }
    }
    out.state_count = static_cast<int32_t>(final_of.size());
    for (int32_t o : final_of) out.subsets.push_back(dp.subsets[static_cast<size_t>(o)]);
    out.next.assign(final_of.size() * K, -1);
    for (size_t s = 0; s < final_of.size(); ++s) {
        for (size_t c = 0; c < K; ++c) {
            int32_t t = dp.step(final_of[s], static_cast<int32_t>(c));
            if (t < 0) continue;
            int32_t tn = new_of[static_cast<size_t>(t)];
            if (tn < 0 || !keep[static_cast<size_t>(tn)]) continue;
            out.next[s * K + c] = final_new[static_cast<size_t>(tn)];
        }
    }
    if (out.empty()) return dp;
    // accept only a verified-equal reduction
    if (language_names_up_to(out, check_len) != language_names_up_to(dp, check_len)) {
        return dp;
    }
    return out;
}

namespace {

// exact characteristic polynomial by the Faddeev-LeVerrier recurrence
std::vector<mpz_class> char_poly_exact(const std::vector<std::vector<int64_t>>& m) {
    const int32_t d = static_cast<int32_t>(m.size());
    std::vector<std::vector<mpz_class>> M(static_cast<size_t>(d),
                                          std::vector<mpz_class>(static_cast<size_t>(d), 0));
    std::vector<std::vector<mpz_class>> A = M;
    for (int32_t i = 0; i < d; ++i) {
        for (int32_t j = 0; j < d; ++j) A[static_cast<size_t>(i)][static_cast<size_t>(j)] = m[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    std::vector<mpz_class> coeffs(static_cast<size_t>(d) + 1, 0);
    coeffs[0] = 1;  // x^d
    M = A;
    for (int32_t k = 1; k <= d; ++k) {
        mpz_class tr = 0;
        for (int32_t i = 0; i < d; ++i) tr += M[static_cast<size_t>(i)][static_cast<size_t>(i)];
        mpz_class ck = -tr / k;
        coeffs[static_cast<size_t>(k)] = ck;
        if (k == d) break;
        // M <- A (M + ck I)
        for (int32_t i = 0; i < d; ++i) M[static_cast<size_t>(i)][static_cast<size_t>(i)] += ck;
        std::vector<std::vector<mpz_class>> nxt(static_cast<size_t>(d),
                                                std::vector<mpz_class>(static_cast<size_t>(d), 0));
        for (int32_t i = 0; i < d; ++i) {
            for (int32_t l = 0; l < d; ++l) {
                if (A[static_cast<size_t>(i)][static_cast<size_t>(l)] == 0) continue;
                for (int32_t j = 0; j < d; ++j) {
                    nxt[static_cast<size_t>(i)][static_cast<size_t>(j)] +=
                        A[static_cast<size_t>(i)][static_cast<size_t>(l)] * M[static_cast<size_t>(l)][static_cast<size_t>(j)];
                }
            }
        }
        M = std::move(nxt);
    }
    return coeffs;
}

double eval_poly(const std::vector<mpz_class>& coeffs, double x) {
    double v = 0.0;
    for (const mpz_class& c : coeffs) v = v * x + c.get_d();
    return v;
}

// largest real root of a monic polynomial whose largest real root is known
// to be simple; `guess` must be within ~1e-6 of it
double largest_root_bisect(const std::vector<mpz_class>& coeffs, double guess, double hi) {
    double lo = -1.0;
    for (double delta : {1e-9, 1e-6, 1e-3, 1e-1}) {
        double cand = guess - delta;
        if (eval_poly(coeffs, cand) < 0) {
            lo = cand;
            break;
        }
    }
    if (lo < 0) return guess;  // root numerically exact already (p(guess) ~ 0)
    for (int it = 0; it < 200 && hi - lo > 1e-14 * std::max(1.0, hi); ++it) {
        double mid = 0.5 * (lo + hi);
        if (eval_poly(coeffs, mid) < 0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// spectral radius of a nonnegative integer matrix: per strongly connected
// component, power iteration on (M + I) with Rayleigh quotients
double spectral_radius_power(const std::vector<std::vector<int64_t>>& m) {
    const int32_t n = static_cast<int32_t>(m.size());
    if (n == 0) return 0.0;
    struct E {
        int32_t from, to;
    };
    std::vector<E> edges;
    for (int32_t i = 0; i < n; ++i) {
        for (int32_t j = 0; j < n; ++j) {
            if (m[static_cast<size_t>(i)][static_cast<size_t>(j)] > 0) edges.push_back({i, j});
        }
    }
    std::vector<int32_t> comp(static_cast<size_t>(n), -1);
    {
        std::vector<std::vector<int32_t>> succ(static_cast<size_t>(n)), pred(static_cast<size_t>(n));
        for (const E& e : edges) {
            succ[static_cast<size_t>(e.from)].push_back(e.to);
            pred[static_cast<size_t>(e.to)].push_back(e.from);
        }
        std::vector<int32_t> order;
        std::vector<uint8_t> seen(static_cast<size_t>(n), 0);
        for (int32_t root = 0; root < n; ++root) {
            if (seen[static_cast<size_t>(root)]) continue;
            std::vector<std::pair<int32_t, size_t>> stack{{root, 0}};
            seen[static_cast<size_t>(root)] = 1;
            while (!stack.empty()) {
                auto& [v, ei] = stack.back();
                if (ei < succ[static_cast<size_t>(v)].size()) {
                    int32_t w = succ[static_cast<size_t>(v)][ei++];
                    if (!seen[static_cast<size_t>(w)]) {
                        seen[static_cast<size_t>(w)] = 1;
                        stack.push_back({w, 0});
                    }
                } else {
                    order.push_back(v);
                    stack.pop_back();
                }
            }
        }
        int32_t ncomp = 0;
        for (auto it = order.rbegin(); it != order.rend(); ++it) {
            if (comp[static_cast<size_t>(*it)] != -1) continue;
            std::vector<int32_t> stack{*it};
            comp[static_cast<size_t>(*it)] = ncomp;
            while (!stack.empty()) {
                int32_t v = stack.back();
                stack.pop_back();
                for (int32_t w : pred[static_cast<size_t>(v)]) {
                    if (comp[static_cast<size_t>(w)] == -1) {
                        comp[static_cast<size_t>(w)] = ncomp;
                        stack.push_back(w);
                    }
                }
            }
            ++ncomp;
        }
    }
    std::map<int32_t, std::vector<int32_t>> members;
    for (int32_t v = 0; v < n; ++v) members[comp[static_cast<size_t>(v)]].push_back(v);

    double best = 0.0;
    for (const auto& [cid, verts] : members) {
        const size_t sz = verts.size();
        if (sz == 1) {
            int32_t v = verts[0];
            best = std::max(best, static_cast<double>(m[static_cast<size_t>(v)][static_cast<size_t>(v)]));
            continue;
        }
        // power iteration on the component submatrix plus identity
        std::vector<double> x(sz, 1.0), y(sz);
        double lambda = 0.0;
        for (int it = 0; it < 100000; ++it) {
            for (size_t i = 0; i < sz; ++i) {
                double acc = x[i];  // the +I term
                for (size_t j = 0; j < sz; ++j) {
                    int64_t mij = m[static_cast<size_t>(verts[i])][static_cast<size_t>(verts[j])];
                    if (mij) acc += static_cast<double>(mij) * x[j];
                }
                y[i] = acc;
            }
            double num = 0.0, den = 0.0, norm = 0.0;
            for (size_t i = 0; i < sz; ++i) {
                num += y[i] * x[i];
                den += x[i] * x[i];
                norm = std::max(norm, std::abs(y[i]));
            }
            double next_lambda = num / den;
            for (size_t i = 0; i < sz; ++i) x[i] = y[i] / norm;
            if (it > 3 && std::abs(next_lambda - lambda) < 1e-13 * std::max(1.0, next_lambda)) {
                lambda = next_lambda;
                break;
            }
            lambda = next_lambda;
        }
        best = std::max(best, lambda - 1.0);
    }
    return best;
}

std::vector<std::vector<int64_t>> adjacency_counts(const DeterministicPresentation& dp) {
    std::vector<std::vector<int64_t>> m(static_cast<size_t>(dp.state_count),
                                        std::vector<int64_t>(static_cast<size_t>(dp.state_count), 0));
    for (int32_t q = 0; q < dp.state_count; ++q) {
        for (size_t c = 0; c < dp.colors.size(); ++c) {
            int32_t t = dp.step(q, static_cast<int32_t>(c));
            if (t >= 0) ++m[static_cast<size_t>(q)][static_cast<size_t>(t)];
        }
    }
    return m;
}

}  // namespace

EntropyResult entropy(const DeterministicPresentation& dp) {
    EntropyResult r;
    if (dp.empty()) return r;
    std::vector<std::vector<int64_t>> m = adjacency_counts(dp);
    double rho = spectral_radius_power(m);
    r.spectral_radius = rho;
    if (dp.state_count <= 12) {
        r.char_poly = char_poly_exact(m);
        double hi = 1.0;
        for (const auto& row : m) {
            double s = 0.0;
            for (int64_t v : row) s += static_cast<double>(v);
            hi = std::max(hi, s + 1.0);
        }
        double refined = largest_root_bisect(r.char_poly, rho, hi);
        if (std::abs(refined - rho) > 1e-8 * std::max(1.0, rho)) {
            throw std::logic_error("entropy: power iteration and characteristic polynomial disagree");
        }
        r.spectral_radius = refined;
        r.cross_checked = true;
    }
    r.value = r.spectral_radius > 0 ? std::log(r.spectral_radius) : 0.0;
    if (std::abs(r.value) < 1e-12) r.value = 0.0;
    return r;
}

namespace {

bool partial_map_has_cycle(const std::vector<int32_t>& f) {
    const int32_t n = static_cast<int32_t>(f.size());
    std::vector<int32_t> mark(static_cast<size_t>(n), 0);
    int32_t stamp = 0;
    for (int32_t start = 0; start < n; ++start) {
        if (mark[static_cast<size_t>(start)]) continue;
        ++stamp;
        int32_t v = start;
        while (v >= 0 && mark[static_cast<size_t>(v)] == 0) {
            mark[static_cast<size_t>(v)] = stamp;
            v = f[static_cast<size_t>(v)];
        }
        if (v >= 0 && mark[static_cast<size_t>(v)] == stamp) return true;
    }
    return false;
}

}  // namespace

std::vector<mpz_class> count_periodic_range(const DeterministicPresentation& dp, int64_t p_max) {
    if (p_max < 1) throw std::invalid_argument("count_periodic_range: need p >= 1");
    std::vector<mpz_class> out(static_cast<size_t>(p_max) + 1, 0);
    if (dp.empty()) return out;
    const size_t K = dp.colors.size();
    const size_t maps_cap = 2'000'000;

    std::vector<int32_t> ident(static_cast<size_t>(dp.state_count));
    for (int32_t i = 0; i < dp.state_count; ++i) ident[static_cast<size_t>(i)] = i;
    std::map<std::vector<int32_t>, mpz_class> cur;
    cur[ident] = 1;
    for (int64_t step = 1; step <= p_max; ++step) {
        std::map<std::vector<int32_t>, mpz_class> nxt;
        for (const auto& [f, count] : cur) {
            for (size_t c = 0; c < K; ++c) {
                std::vector<int32_t> g(f.size(), -1);
                bool nonempty = false;
                for (size_t q = 0; q < f.size(); ++q) {
                    if (f[q] < 0) continue;
                    int32_t t = dp.step(f[q], static_cast<int32_t>(c));
                    if (t >= 0) {
                        g[q] = t;
                        nonempty = true;
                    }
                }
                if (!nonempty) continue;  // maps with empty domain never recover
                nxt[std::move(g)] += count;
            }
        }
        if (nxt.size() > maps_cap) {
            throw BudgetError("count_periodic: partial-map table exceeds " +
                              std::to_string(maps_cap) + " entries at length " +
                              std::to_string(step));
        }
        cur = std::move(nxt);
        mpz_class total = 0;
        for (const auto& [f, count] : cur) {
            if (partial_map_has_cycle(f)) total += count;
        }
        out[static_cast<size_t>(step)] = total;
    }
    return out;
}

mpz_class count_periodic(const DeterministicPresentation& dp, int64_t p) {
    if (p < 1) throw std::invalid_argument("count_periodic: need p >= 1");
    return count_periodic_range(dp, p)[static_cast<size_t>(p)];
}

std::vector<std::vector<int32_t>> language_up_to(const DeterministicPresentation& dp, int64_t len) {
    if (len < 0) throw std::invalid_argument("language_up_to: negative length");
    std::vector<std::vector<int32_t>> words;
    if (dp.empty()) return words;
    const size_t K = dp.colors.size();
    // level sets of (word -> surviving state set); a word is a factor iff
    // its state set is nonempty, because every dp state is viable both ways
    std::map<std::vector<int32_t>, std::vector<int32_t>> level;
    std::vector<int32_t> all(static_cast<size_t>(dp.state_count));
    for (int32_t i = 0; i < dp.state_count; ++i) all[static_cast<size_t>(i)] = i;
    level[{}] = all;
    words.push_back({});
    for (int64_t l = 1; l <= len; ++l) {
        std::map<std::vector<int32_t>, std::vector<int32_t>> next_level;
        for (const auto& [word, states] : level) {
            for (size_t c = 0; c < K; ++c) {
                std::set<int32_t> nxt;
                for (int32_t q : states) {
                    int32_t t = dp.step(q, static_cast<int32_t>(c));
                    if (t >= 0) nxt.insert(t);
                }
                if (nxt.empty()) continue;
                std::vector<int32_t> w = word;
                w.push_back(static_cast<int32_t>(c));
                next_level.emplace(std::move(w), std::vector<int32_t>(nxt.begin(), nxt.end()));
            }
        }
        for (const auto& [word, states] : next_level) words.push_back(word);
        level = std::move(next_level);
        if (level.empty()) break;
    }
    std::sort(words.begin(), words.end());
    return words;
}

std::set<std::vector<std::string>> language_names_up_to(const DeterministicPresentation& dp,
                                                        int64_t len) {
    std::set<std::vector<std::string>> out;
    for (const std::vector<int32_t>& w : language_up_to(dp, len)) {
        std::vector<std::string> named;
        named.reserve(w.size());
        for (int32_t c : w) named.push_back(dp.colors[static_cast<size_t>(c)]);
        out.insert(std::move(named));
    }
    return out;
}

DeterministicPresentation renewal_presentation(const std::vector<std::string>& generators) {
    if (generators.empty()) {
        throw std::invalid_argument("renewal_presentation: no generator words");
    }
    std::set<std::string> distinct;
    std::set<char> charset;
    for (const std::string& g : generators) {
        if (g.empty()) throw std::invalid_argument("renewal_presentation: empty generator word");
        distinct.insert(g);
        for (char c : g) charset.insert(c);
    }
    LabeledPresentation lp;
    for (char c : charset) lp.colors.push_back(std::string(1, c));
    auto color_of = [&](char c) {
        return static_cast<int32_t>(std::distance(charset.begin(), charset.find(c)));
    };
    // flower automaton: all generator loops share the hub state 0
    int32_t states = 1;
    for (const std::string& g : distinct) {
        int32_t prev = 0;
        for (size_t i = 0; i < g.size(); ++i) {
            int32_t nxt = (i + 1 == g.size()) ? 0 : states++;
            lp.edges.push_back({prev, nxt, color_of(g[i])});
            prev = nxt;
        }
    }
    lp.state_count = states;
    std::sort(lp.edges.begin(), lp.edges.end());
    lp.edges.erase(std::unique(lp.edges.begin(), lp.edges.end()), lp.edges.end());
    return determinize(lp);
}

std::string char_poly_to_string(const std::vector<mpz_class>& coeffs) {
    if (coeffs.empty()) return "(not computed)";
    const int64_t d = static_cast<int64_t>(coeffs.size()) - 1;
    std::string out;
    for (int64_t i = 0; i <= d; ++i) {
        const mpz_class& c = coeffs[static_cast<size_t>(i)];
        if (c == 0) continue;
        int64_t power = d - i;
        mpz_class mag = abs(c);
        std::string term;
        if (power == 0) {
            term = mag.get_str();
        } else {
            if (mag != 1) term = mag.get_str() + "*";
            term += "x";
            if (power > 1) term += "^" + std::to_string(power);
        }
        if (out.empty()) {
            out = (c < 0 ? "-" : "") + term;
        } else {
            out += (c < 0 ? " - " : " + ") + term;
        }
    }
    if (out.empty()) out = "0";
    return out;
}

}  // namespace tilings
