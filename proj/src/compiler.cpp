#include "tilings/compiler.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "tilings/sofic.hpp"

namespace tilings {

std::string to_string(ParamMode mode) {
    return mode == ParamMode::strict ? "strict" : "relaxed";
}

ParamMode param_mode_from_string(const std::string& s) {
    if (s == "strict") return ParamMode::strict;
    if (s == "relaxed") return ParamMode::relaxed;
    throw std::invalid_argument("unknown parameter mode '" + s + "'");
}

namespace {

void require_valid_matrix(const BigMatrix& A) {
    if (A.dim < 1) throw std::invalid_argument("matrix must have dimension >= 1");
    if (!A.nonnegative()) throw std::invalid_argument("matrix entries must be nonnegative");
}

bool mode_inequality_holds(const BigMatrix& A, int64_t n, ParamMode mode) {
    mpz_class fact = factorial(n + 1);
    if (mode == ParamMode::strict) {
        mpz_class base = mpz_class(A.dim) * A.max_entry();
        mpz_class lhs;
        mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(13 * n));
        return lhs < fact;
    }
    return A.pow(static_cast<uint64_t>(13 * n)).max_entry() < fact;
}

}  // namespace

CompilerParams choose_parameters(const BigMatrix& A, ParamMode mode, int64_t max_n) {
    require_valid_matrix(A);
    const int64_t V = A.dim;
    mpz_class fact = factorial(V + 2);  // (n+1)! at n = V+1

    if (mode == ParamMode::strict) {
        mpz_class base = mpz_class(V) * A.max_entry();
        mpz_class step;  // base^13
        mpz_pow_ui(step.get_mpz_t(), base.get_mpz_t(), 13);
        mpz_class lhs;
        mpz_pow_ui(lhs.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(13 * (V + 1)));
        for (int64_t n = V + 1; n <= max_n; ++n) {
            if (lhs < fact) return {static_cast<int32_t>(V), n, 13 * n, mode};
            lhs *= step;
            fact *= (n + 2);
        }
    } else {
        BigMatrix A13 = A.pow(13);
        BigMatrix P = A13.pow(static_cast<uint64_t>(V + 1));
        for (int64_t n = V + 1; n <= max_n; ++n) {
            if (P.max_entry() < fact) return {static_cast<int32_t>(V), n, 13 * n, mode};
            P = P.mul(A13);
            fact *= (n + 2);
        }
    }
    throw BudgetError("choose_parameters: no admissible n up to " + std::to_string(max_n) +
                      " in " + to_string(mode) + " mode");
}

std::string barbell_color(int64_t r) {
    return "barbell:" + std::to_string(r);
}

std::string rack_color(int32_t I, int32_t J, int64_t k, int64_t i) {
    return "rack:" + std::to_string(I) + "." + std::to_string(J) + "." + std::to_string(k) +
           "." + std::to_string(i);
}

Prototile barbell_shape(int64_t r, const std::string& color) {
    if (r < 0) throw std::invalid_argument("barbell_shape: negative r");
    return Prototile::from_runs(color, {{0, 2}, {2 * r + 3, 2}});
}

Prototile rack_shape(int64_t n, int32_t I, int32_t J, int64_t k, int64_t i,
                     const std::string& color) {
    if (I < 1 || J < 1 || I >= n || J >= n) {
        throw std::invalid_argument("rack_shape: need 1 <= I,J < n");
    }
    if (k < 1 || k > n) throw std::invalid_argument("rack_shape: need 1 <= k <= n");
    if (i < 0 || i > k) throw std::invalid_argument("rack_shape: need 0 <= i <= k");
    std::vector<Run> runs;
    // head (a _)^I a^(2n-2I) on [0, 2n)
    for (int32_t j = 0; j < I; ++j) runs.push_back({2 * j, 1});
    runs.push_back({2 * I, 2 * n - 2 * I});
    // center a^(3n+i), 2k blanks, a, 2k blanks, a^(8n-4k-1-i) on [2n, 13n)
    runs.push_back({2 * n, 3 * n + i});
    runs.push_back({5 * n + i + 2 * k, 1});
    runs.push_back({5 * n + i + 4 * k + 1, 8 * n - 4 * k - 1 - i});
    // tail (_ a)^J on [13n, 13n + 2J)
    for (int32_t j = 0; j < J; ++j) runs.push_back({13 * n + 2 * j + 1, 1});
    return Prototile::from_runs(color, std::move(runs));
}

CompilerOutput compile(const BigMatrix& A, const CompilerParams& params,
                       int64_t materialize_limit) {
    require_valid_matrix(A);
    if (params.V != A.dim) throw std::invalid_argument("compile: params.V does not match matrix");
    if (params.n <= params.V) throw std::invalid_argument("compile: need n > V");
    if (params.m != 13 * params.n) throw std::invalid_argument("compile: need m = 13n");
    if (!mode_inequality_holds(A, params.n, params.mode)) {
        throw std::invalid_argument("compile: parameters violate the " + to_string(params.mode) +
                                    "-mode representability inequality");
    }

    CompilerOutput out;
    out.params = params;
    out.A = A;
    out.Am = A.pow(static_cast<uint64_t>(params.m));

    const int32_t V = params.V;
    const int64_t n = params.n;
    out.digits.assign(static_cast<size_t>(V), {});
    for (int32_t I = 1; I <= V; ++I) {
        for (int32_t J = 1; J <= V; ++J) {
            out.digits[static_cast<size_t>(I - 1)].push_back(
                factorial_encode(out.Am.at(I - 1, J - 1), n));
        }
    }

    for (int64_t r = 0; r <= 2 * n - 2; ++r) {
        std::string color = barbell_color(r);
        out.barbells.push_back({r, color, barbell_shape(r, color)});
    }

    out.total_racks = 0;
    for (int32_t I = 1; I <= V; ++I) {
        for (int32_t J = 1; J <= V; ++J) {
            int64_t count = 0;
            for (int64_t c : out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)].digits) {
                count += c;
            }
            out.rack_counts.push_back({I, J, count});
            out.total_racks += count;
        }
    }

    if (out.total_racks <= materialize_limit) {
        out.racks_materialized = true;
        out.racks.reserve(static_cast<size_t>(out.total_racks));
        for_each_rack(out, [&](const RackSpec& r) { out.racks.push_back(r); });
    }
    return out;
}

void for_each_rack(const CompilerOutput& out, const std::function<void(const RackSpec&)>& fn) {
    const int32_t V = out.params.V;
    const int64_t n = out.params.n;
    for (int32_t I = 1; I <= V; ++I) {
        for (int32_t J = 1; J <= V; ++J) {
            const FactorialDigits& d =
                out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)];
            for (int64_t k = 1; k <= static_cast<int64_t>(d.digits.size()); ++k) {
                int64_t ck = d.digits[static_cast<size_t>(k - 1)];
                for (int64_t i = 0; i < ck; ++i) {
                    std::string color = rack_color(I, J, k, i);
                    fn({I, J, k, i, color, rack_shape(n, I, J, k, i, color)});
                }
            }
        }
    }
}

PrototileSet compiled_prototiles(const CompilerOutput& out) {
    if (!out.racks_materialized) {
        throw std::invalid_argument("compiled_prototiles: rack list was not materialized");
    }
    std::vector<Prototile> tiles;
    for (const BarbellSpec& b : out.barbells) tiles.push_back(b.shape);
    for (const RackSpec& r : out.racks) tiles.push_back(r.shape);
    return PrototileSet(std::move(tiles));
}

int64_t count_center_fillings(int64_t n, int64_t k, std::vector<std::vector<int64_t>>* perms) {
    if (k < 1) throw std::invalid_argument("count_center_fillings: need k >= 1");
    // local coordinates: first gap 0..2k-1, fixed solid at 2k, second gap
    // 2k+1..4k; barbells must land entirely on gap cells
    const int64_t width = 4 * k + 1;
    const int64_t solid = 2 * k;
    std::vector<bool> covered(static_cast<size_t>(width), false);
    covered[static_cast<size_t>(solid)] = true;
    std::vector<std::pair<int64_t, int64_t>> placed;  // (position, r)
    int64_t count = 0;

    auto offsets_of = [](int64_t r) {
        return std::array<int64_t, 4>{0, 1, 2 * r + 3, 2 * r + 4};
    };
    auto slot_of = [&](int64_t cell) {
        // gap slots are 1-based: 1..2k then 2k+1..4k
        return cell < solid ? cell + 1 : cell;
    };
    auto record = [&]() {
        ++count;
        if (perms == nullptr) return;
        // read the permutation off the filling; an empty vector marks a
        // filling that does not pair first-gap slots with second-gap slots
        std::vector<int64_t> pi(static_cast<size_t>(k), 0);
        for (const auto& [pos, r] : placed) {
            int64_t a = pos, b = pos + 2 * r + 3;
            bool shape_ok = a >= 0 && a + 1 < solid && b > solid && b + 1 < width &&
                            slot_of(a) % 2 == 1 && slot_of(b) % 2 == 1;
            if (!shape_ok) {
                perms->push_back({});
                return;
            }
            int64_t j = (slot_of(a) + 1) / 2;
            int64_t l = (slot_of(b) + 1) / 2 - k;
            if (j < 1 || j > k || l < 1 || l > k || pi[static_cast<size_t>(j - 1)] != 0) {
                perms->push_back({});
                return;
            }
            pi[static_cast<size_t>(j - 1)] = l;
        }
        for (int64_t v : pi) {
            if (v == 0) {
                perms->push_back({});
                return;
            }
        }
        perms->push_back(pi);
    };

    std::function<void()> rec = [&]() {
        int64_t cell = -1;
        for (int64_t c = 0; c < width; ++c) {
            if (!covered[static_cast<size_t>(c)]) {
                cell = c;
                break;
            }
        }
        if (cell == -1) {
            record();
            return;
        }
        // barbells spanning more than the window can never fit
        const int64_t r_max = std::min(2 * n - 2, (width - 5) / 2);
        for (int64_t r = 0; r <= r_max; ++r) {
            for (int64_t o : offsets_of(r)) {
                int64_t pos = cell - o;
                bool fits = true;
                for (int64_t oo : offsets_of(r)) {
                    int64_t c = pos + oo;
                    if (c < 0 || c >= width || covered[static_cast<size_t>(c)]) {
                        fits = false;
                        break;
                    }
                }
                if (!fits) continue;
                for (int64_t oo : offsets_of(r)) covered[static_cast<size_t>(pos + oo)] = true;
                placed.push_back({pos, r});
                rec();
                placed.pop_back();
                for (int64_t oo : offsets_of(r)) covered[static_cast<size_t>(pos + oo)] = false;
            }
        }
    };
    rec();
    return count;
}

namespace {

std::set<int64_t> head_blanks(const Prototile& rack, int64_t n) {
    std::set<int64_t> blanks;
    for (int64_t c = 0; c < 2 * n; ++c) {
        if (!rack.contains(c)) blanks.insert(c);
    }
    return blanks;
}

std::set<int64_t> tail_solids_relative(const Prototile& rack, int64_t n, int32_t J) {
    std::set<int64_t> solids;
    for (int64_t c = 13 * n; c < 13 * n + 2 * J; ++c) {
        if (rack.contains(c)) solids.insert(c - 13 * n);
    }
    return solids;
}

int64_t section_solids(const Prototile& p, int64_t lo, int64_t hi) {
    int64_t cnt = 0;
    for (int64_t c = lo; c < hi; ++c) {
        if (p.contains(c)) ++cnt;
    }
    return cnt;
}

void add_check(StructuralReport& rep, const std::string& name, bool pass,
               const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
}

}  // namespace

StructuralReport verify_structural(const CompilerOutput& out, int64_t fillings_bound,
                                   int64_t geometry_samples) {
    StructuralReport rep;
    const int32_t V = out.params.V;
    const int64_t n = out.params.n;
    const int64_t m = out.params.m;

    {
        bool ok = out.Am == out.A.pow(static_cast<uint64_t>(m));
        add_check(rep, "matrix-power", ok,
                  ok ? "stored A^m equals recomputation" : "stored A^m differs from A^" + std::to_string(m));
    }

    {
        bool ok = static_cast<int32_t>(out.digits.size()) == V;
        std::string witness;
        for (int32_t I = 1; ok && I <= V; ++I) {
            ok = static_cast<int32_t>(out.digits[static_cast<size_t>(I - 1)].size()) == V;
            for (int32_t J = 1; ok && J <= V; ++J) {
                const FactorialDigits& d =
                    out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)];
                if (static_cast<int64_t>(d.digits.size()) != n) {
                    ok = false;
                    witness = "entry (" + std::to_string(I) + "," + std::to_string(J) +
                              ") has " + std::to_string(d.digits.size()) + " digits, want " +
                              std::to_string(n);
                    break;
                }
                for (int64_t k = 1; k <= n; ++k) {
                    int64_t c = d.digits[static_cast<size_t>(k - 1)];
                    if (c < 0 || c > k) {
                        ok = false;
                        witness = "entry (" + std::to_string(I) + "," + std::to_string(J) +
                                  "): c_" + std::to_string(k) + " = " + std::to_string(c);
                        break;
                    }
                }
            }
        }
        add_check(rep, "digit-bounds", ok, ok ? "0 <= c_k <= k for every digit" : witness);
    }

    {
        bool ok = true;
        std::string witness;
        for (int32_t I = 1; ok && I <= V; ++I) {
            for (int32_t J = 1; ok && J <= V; ++J) {
                mpz_class got = factorial_decode(
                    out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)]);
                if (got != out.Am.at(I - 1, J - 1)) {
                    ok = false;
                    witness = "entry (" + std::to_string(I) + "," + std::to_string(J) +
                              "): sum c_k*k! = " + got.get_str() + " != " +
                              out.Am.at(I - 1, J - 1).get_str();
                }
            }
        }
        add_check(rep, "counting-identity", ok,
                  ok ? "sum c_k*k! = (A^m)_IJ for all " + std::to_string(V * V) + " entries"
                     : witness);
    }

    {
        // overlay a J-tail on an I-head; blanks fill exactly iff I = J
        bool ok = true;
        std::string witness;
        for (int32_t I = 1; ok && I <= V; ++I) {
            for (int32_t J = 1; ok && J <= V; ++J) {
                Prototile head_rack = rack_shape(n, I, 1, 1, 0, "h");
                Prototile tail_rack = rack_shape(n, 1, J, 1, 0, "t");
                std::set<int64_t> blanks = head_blanks(head_rack, n);
                std::set<int64_t> solids = tail_solids_relative(tail_rack, n, J);
                bool fills = blanks == solids;
                if (fills != (I == J)) {
                    ok = false;
                    witness = "I=" + std::to_string(I) + " J=" + std::to_string(J) +
                              (fills ? ": tail fills head despite I != J"
                                     : ": tail fails to fill head despite I = J");
                }
            }
        }
        add_check(rep, "head-tail-complement", ok,
                  ok ? "tail solids match head blanks exactly when I = J (" +
                           std::to_string(V * V) + " pairs)"
                     : witness);
    }

    {
        bool ok = static_cast<int64_t>(out.barbells.size()) == 2 * n - 1;
        std::string witness = ok ? "" : "barbell count " + std::to_string(out.barbells.size()) +
                                            ", want " + std::to_string(2 * n - 1);
        for (int64_t r = 0; ok && r <= 2 * n - 2; ++r) {
            const BarbellSpec& b = out.barbells[static_cast<size_t>(r)];
            std::vector<int64_t> want{0, 1, 2 * r + 3, 2 * r + 4};
            if (b.r != r || b.shape.offsets() != want || b.shape.solid_count() != 4) {
                ok = false;
                witness = "barbell r=" + std::to_string(r) + " malformed";
            }
        }
        add_check(rep, "barbell-geometry", ok,
                  ok ? std::to_string(2 * n - 1) + " barbells with offsets {0,1,2r+3,2r+4}"
                     : witness);
    }

    {
        bool ok = true;
        std::string witness;
        int64_t inspected = 0;
        auto inspect = [&](const RackSpec& r) {
            if (!ok) return;
            ++inspected;
            const Prototile& s = r.shape;
            int64_t want_len = 13 * n + 2 * r.J;
            if (s.length() != want_len) {
                ok = false;
                witness = r.color + ": length " + std::to_string(s.length()) + ", want " +
                          std::to_string(want_len);
                return;
            }
            if (section_solids(s, 0, 2 * n) != 2 * n - r.I ||
                section_solids(s, 2 * n, 13 * n) != 11 * n - 4 * r.k ||
                section_solids(s, 13 * n, want_len) != r.J) {
                ok = false;
                witness = r.color + ": section solid counts off";
                return;
            }
            Prototile rebuilt = rack_shape(n, r.I, r.J, r.k, r.i, r.color);
            if (!(rebuilt == s)) {
                ok = false;
                witness = r.color + ": shape differs from its parameters";
            }
        };
        if (out.racks_materialized) {
            for (const RackSpec& r : out.racks) inspect(r);
        } else {
            // sample per entry: stride through the digit list
            for (int32_t I = 1; I <= V; ++I) {
                for (int32_t J = 1; J <= V; ++J) {
                    const FactorialDigits& d =
                        out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)];
                    std::vector<int64_t> ks;
                    for (int64_t k = 1; k <= n; ++k) {
                        if (d.digits[static_cast<size_t>(k - 1)] > 0) ks.push_back(k);
                    }
                    if (ks.empty()) continue;
                    int64_t stride = std::max<int64_t>(1, static_cast<int64_t>(ks.size()) /
                                                              std::max<int64_t>(1, geometry_samples));
                    for (size_t idx = 0; idx < ks.size(); idx += static_cast<size_t>(stride)) {
                        int64_t k = ks[idx];
                        int64_t ck = d.digits[static_cast<size_t>(k - 1)];
                        for (int64_t i : {int64_t{0}, ck - 1}) {
                            std::string color = rack_color(I, J, k, i);
                            inspect({I, J, k, i, color, rack_shape(n, I, J, k, i, color)});
                        }
                    }
                }
            }
        }
        add_check(rep, "rack-geometry", ok,
                  ok ? std::to_string(inspected) + " racks inspected (length and section counts)"
                     : witness);
    }

    if (out.racks_materialized) {
        std::vector<RackSpec> regen;
        for_each_rack(out, [&](const RackSpec& r) { regen.push_back(r); });
        bool ok = regen == out.racks;
        add_check(rep, "rack-list-consistency", ok,
                  ok ? "materialized list matches the canonical stream (" +
                           std::to_string(regen.size()) + " racks)"
                     : "materialized rack list differs from the digits-derived stream");
    }

    {
        std::set<int64_t> used_ks;
        for (int32_t I = 1; I <= V; ++I) {
            for (int32_t J = 1; J <= V; ++J) {
                const FactorialDigits& d =
                    out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)];
                for (int64_t k = 1; k <= n; ++k) {
                    if (d.digits[static_cast<size_t>(k - 1)] > 0 && k <= fillings_bound) {
                        used_ks.insert(k);
                    }
                }
            }
        }
        bool ok = true;
        std::string witness;
        std::string done;
        for (int64_t k : used_ks) {
            std::vector<std::vector<int64_t>> perms;
            int64_t cnt = count_center_fillings(n, k, &perms);
            mpz_class want = factorial(k);
            std::set<std::vector<int64_t>> distinct(perms.begin(), perms.end());
            bool valid = mpz_class(cnt) == want &&
                         distinct.size() == perms.size() &&
                         !distinct.count({});
            if (!valid) {
                ok = false;
                witness = "k=" + std::to_string(k) + ": " + std::to_string(cnt) +
                          " fillings, want " + want.get_str() +
                          (distinct.count({}) ? " (some filling has no permutation reading)" : "");
                break;
            }
            if (!done.empty()) done += ", ";
            done += "k=" + std::to_string(k) + ": " + std::to_string(cnt);
        }
        add_check(rep, "center-fillings", ok,
                  ok ? (used_ks.empty() ? "no rack parameters k within bound to check"
                                        : done + " (each in bijection with permutations)")
                     : witness);
    }

    rep.all_pass = true;
    for (const CheckResult& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

namespace {

void add_check(DynamicsReport& rep, const std::string& name, bool pass,
               const std::string& detail) {
    rep.checks.push_back({name, pass, detail});
}

// arcs of the A^m edge shift that lie on bi-infinite paths
std::vector<std::vector<bool>> essential_arcs(const BigMatrix& Am) {
    const int32_t V = Am.dim;
    std::vector<std::vector<bool>> edge(static_cast<size_t>(V),
                                        std::vector<bool>(static_cast<size_t>(V), false));
    std::vector<std::vector<int32_t>> succ(static_cast<size_t>(V)), pred(static_cast<size_t>(V));
    for (int32_t i = 0; i < V; ++i) {
        for (int32_t j = 0; j < V; ++j) {
            if (Am.at(i, j) > 0) {
                edge[static_cast<size_t>(i)][static_cast<size_t>(j)] = true;
                succ[static_cast<size_t>(i)].push_back(j);
                pred[static_cast<size_t>(j)].push_back(i);
            }
        }
    }
    // recurrent vertices: on a cycle (V is tiny; transitive closure will do)
    std::vector<std::vector<bool>> reach(static_cast<size_t>(V),
                                         std::vector<bool>(static_cast<size_t>(V), false));
    for (int32_t s = 0; s < V; ++s) {
        std::vector<int32_t> stack{s};
        std::vector<bool> seen(static_cast<size_t>(V), false);
        while (!stack.empty()) {
            int32_t v = stack.back();
            stack.pop_back();
            for (int32_t w : succ[static_cast<size_t>(v)]) {
                if (!seen[static_cast<size_t>(w)]) {
                    seen[static_cast<size_t>(w)] = true;
                    stack.push_back(w);
                }
            }
        }
        for (int32_t t = 0; t < V; ++t) reach[static_cast<size_t>(s)][static_cast<size_t>(t)] = seen[static_cast<size_t>(t)];
    }
    std::vector<bool> recurrent(static_cast<size_t>(V), false);
    for (int32_t v = 0; v < V; ++v) recurrent[static_cast<size_t>(v)] = reach[static_cast<size_t>(v)][static_cast<size_t>(v)];
    std::vector<bool> from_cycle(static_cast<size_t>(V), false), to_cycle(static_cast<size_t>(V), false);
    for (int32_t v = 0; v < V; ++v) {
        for (int32_t r = 0; r < V; ++r) {
            if (!recurrent[static_cast<size_t>(r)]) continue;
            if (reach[static_cast<size_t>(r)][static_cast<size_t>(v)] || r == v) from_cycle[static_cast<size_t>(v)] = true;
            if (reach[static_cast<size_t>(v)][static_cast<size_t>(r)] || r == v) to_cycle[static_cast<size_t>(v)] = true;
        }
    }
    std::vector<std::vector<bool>> essential(static_cast<size_t>(V),
                                             std::vector<bool>(static_cast<size_t>(V), false));
    for (int32_t i = 0; i < V; ++i) {
        for (int32_t j = 0; j < V; ++j) {
            essential[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                edge[static_cast<size_t>(i)][static_cast<size_t>(j)] &&
                from_cycle[static_cast<size_t>(i)] && to_cycle[static_cast<size_t>(j)];
        }
    }
    return essential;
}

}  // namespace

DynamicsReport verify_dynamics(const CompilerOutput& out, const DynamicsBudget& budget) {
    DynamicsReport rep;
    const int64_t n = out.params.n;
    const int64_t m = out.params.m;
    const int32_t V = out.params.V;

    // scale gate, computable without materializing anything
    int64_t alphabet = 4 * (2 * n - 1);
    int64_t longest = 2 * (2 * n - 2) + 5;
    for (int32_t I = 1; I <= V; ++I) {
        for (int32_t J = 1; J <= V; ++J) {
            const FactorialDigits& d = out.digits[static_cast<size_t>(I - 1)][static_cast<size_t>(J - 1)];
            for (int64_t k = 1; k <= n; ++k) {
                int64_t ck = d.digits[static_cast<size_t>(k - 1)];
                if (ck > 0) {
                    alphabet += ck * (13 * n - 4 * k - I + J);
                    longest = std::max(longest, 13 * n + 2 * J);
                }
            }
        }
    }
    if (alphabet > budget.max_alphabet) {
        rep.skipped = true;
        rep.skip_reason = "skipped: scale (alphabet " + std::to_string(alphabet) +
                          " exceeds budget " + std::to_string(budget.max_alphabet) + ")";
        return rep;
    }
    if (longest > budget.max_length) {
        rep.skipped = true;
        rep.skip_reason = "skipped: scale (longest prototile " + std::to_string(longest) +
                          " exceeds budget " + std::to_string(budget.max_length) + ")";
        return rep;
    }

    std::vector<Prototile> tiles;
    for (const BarbellSpec& b : out.barbells) tiles.push_back(b.shape);
    const size_t nb = tiles.size();
    for_each_rack(out, [&](const RackSpec& r) { tiles.push_back(r.shape); });
    std::vector<std::pair<int32_t, int32_t>> rack_IJ;  // per rack tile, (I,J)
    for_each_rack(out, [&](const RackSpec& r) { rack_IJ.push_back({r.I, r.J}); });
    PrototileSet ps{std::move(tiles)};

    TilingAutomaton ta;
    try {
        ta = build_automaton(ps, {budget.max_states, budget.max_length});
    } catch (const BudgetError& e) {
        rep.skipped = true;
        rep.skip_reason = std::string("skipped: scale (") + e.what() + ")";
        return rep;
    }

    auto is_head_edge = [&](const AutomatonEdge& e) {
        return static_cast<size_t>(e.label.tile) >= nb && e.label.sub == 1;
    };

    if (out.total_racks == 0) {
        bool ok = ta.empty();
        add_check(rep, "empty-system", ok,
                  ok ? "A^m = 0: no racks, and the barbells alone tile nothing"
                     : "A^m = 0 but the automaton is nonempty");
        rep.all_pass = ok;
        return rep;
    }

    {
        // (a) heads appear on every cycle, spaced exactly m apart
        bool ok = true;
        std::string witness;
        const int32_t N = static_cast<int32_t>(ta.states.size());
        // cycles must contain a head-start edge: the graph without them is acyclic
        {
            std::vector<uint8_t> color(static_cast<size_t>(N), 0);
            for (int32_t s = 0; s < N && ok; ++s) {
                if (color[static_cast<size_t>(s)]) continue;
                std::vector<std::pair<int32_t, int32_t>> stack{{s, ta.first_edge[static_cast<size_t>(s)]}};
                color[static_cast<size_t>(s)] = 1;
                while (!stack.empty() && ok) {
                    auto fi = stack.size() - 1;
                    int32_t v = stack[fi].first;
                    bool descended = false;
                    while (stack[fi].second < ta.first_edge[static_cast<size_t>(v) + 1]) {
                        const AutomatonEdge& e = ta.edges[static_cast<size_t>(stack[fi].second)];
                        ++stack[fi].second;
                        if (is_head_edge(e)) continue;
                        if (color[static_cast<size_t>(e.to)] == 1) {
                            ok = false;
                            witness = "a cycle avoids rack heads entirely";
                            break;
                        }
                        if (color[static_cast<size_t>(e.to)] == 0) {
                            color[static_cast<size_t>(e.to)] = 1;
                            stack.push_back({e.to, ta.first_edge[static_cast<size_t>(e.to)]});
                            descended = true;
                            break;
                        }
                    }
                    if (!descended && ok) {
                        color[static_cast<size_t>(v)] = 2;
                        stack.pop_back();
                    }
                }
            }
        }
        if (ok) {
            // distances since the last head cell, propagated to fixpoint
            std::vector<uint64_t> seen(static_cast<size_t>(N), 0);
            std::vector<std::pair<int32_t, int64_t>> work;
            bool any_head = false;
            for (const AutomatonEdge& e : ta.edges) {
                if (is_head_edge(e)) {
                    any_head = true;
                    if (!(seen[static_cast<size_t>(e.to)] & 2)) {
                        seen[static_cast<size_t>(e.to)] |= 2;  // bit d = 1
                        work.push_back({e.to, 1});
                    }
                }
            }
            if (!any_head) {
                ok = false;
                witness = "no head-start edges in a system with racks";
            }
            while (ok && !work.empty()) {
                auto [q, d] = work.back();
                work.pop_back();
                for (int32_t ei = ta.first_edge[static_cast<size_t>(q)];
                     ei < ta.first_edge[static_cast<size_t>(q) + 1] && ok; ++ei) {
                    const AutomatonEdge& e = ta.edges[static_cast<size_t>(ei)];
                    if (is_head_edge(e)) {
                        if (d != m) {
                            ok = false;
                            witness = "consecutive head starts spaced " + std::to_string(d) +
                                      " apart, want " + std::to_string(m);
                        }
                        continue;
                    }
                    if (d == m) {
                        ok = false;
                        witness = "a path runs " + std::to_string(m + 1) +
                                  " cells past a head without a new head";
                        break;
                    }
                    uint64_t bit = uint64_t{1} << (d + 1);
                    if (!(seen[static_cast<size_t>(e.to)] & bit)) {
                        seen[static_cast<size_t>(e.to)] |= bit;
                        work.push_back({e.to, d + 1});
                    }
                }
            }
        }
        add_check(rep, "head-spacing", ok,
                  ok ? "every cycle passes heads spaced exactly " + std::to_string(m) + " apart"
                     : witness);
    }

    LabeledPresentation lp = drop_subscripts(ta, ps);
    DeterministicPresentation dp = determinize(lp);

    {
        // (b) exact periodic-point counts against m * trace(A^(mp))
        bool ok = true;
        std::string witness;
        std::vector<mpz_class> counts = count_periodic_range(dp, 3 * m);
        for (int64_t p = 1; p <= 3 * m && ok; ++p) {
            mpz_class want = 0;
            if (p % m == 0) {
                want = mpz_class(m) * out.A.pow(static_cast<uint64_t>(p)).trace();
            }
            if (counts[static_cast<size_t>(p)] != want) {
                ok = false;
                witness = "Fix(sigma^" + std::to_string(p) + ") = " +
                          counts[static_cast<size_t>(p)].get_str() + ", want " + want.get_str();
            }
        }
        add_check(rep, "fixed-points", ok,
                  ok ? "Fix(sigma^p) = m*trace(A^p) at multiples of m and 0 elsewhere, p <= " +
                           std::to_string(3 * m)
                     : witness);
    }

    {
        // (c) entropy against the edge shift of A
        bool ok = true;
        std::string witness;
        double h_tiling = entropy(dp).value;
        std::vector<std::vector<int64_t>> a(static_cast<size_t>(V),
                                            std::vector<int64_t>(static_cast<size_t>(V), 0));
        bool fits = true;
        for (int32_t i = 0; i < V && fits; ++i) {
            for (int32_t j = 0; j < V && fits; ++j) {
                const mpz_class& v = out.A.at(i, j);
                fits = v.fits_slong_p();
                if (fits) a[static_cast<size_t>(i)][static_cast<size_t>(j)] = v.get_si();
            }
        }
        if (!fits) {
            ok = false;
            witness = "matrix entries exceed the machine range for the entropy reference";
        } else {
            // spectral radius of A by power iteration on A + I (the shift
            // avoids oscillation; A is tiny so convergence is immediate)
            const size_t d = a.size();
            std::vector<double> x(d, 1.0), y(d);
            double lambda = 0.0;
            for (int it = 0; it < 200000; ++it) {
                double norm = 0.0;
                for (size_t i = 0; i < d; ++i) {
                    double acc = x[i];
                    for (size_t j = 0; j < d; ++j) acc += static_cast<double>(a[i][j]) * x[j];
                    y[i] = acc;
                    norm = std::max(norm, std::abs(acc));
                }
                if (norm == 0.0) {
                    lambda = 0.0;
                    break;
                }
                double num = 0.0, den = 0.0;
                for (size_t i = 0; i < d; ++i) {
                    num += y[i] * x[i];
                    den += x[i] * x[i];
                    x[i] = y[i] / norm;
                }
                double next = num / den;
                bool settled = it > 3 && std::abs(next - lambda) < 1e-13 * std::max(1.0, next);
                lambda = next;
                if (settled) break;
            }
            double rho = std::max(0.0, lambda - 1.0);
            double h_matrix = rho > 1.0 ? std::log(rho) : 0.0;
            if (std::abs(h_tiling - h_matrix) > 1e-9) {
                ok = false;
                witness = "entropy " + std::to_string(h_tiling) + " vs matrix edge shift " +
                          std::to_string(h_matrix);
            }
        }
        add_check(rep, "entropy", ok, ok ? "tiling entropy matches the matrix edge shift" : witness);
    }

    {
        // (d) head-aligned m-blocks correspond to arcs: counts per (I,J)
        // match the essential entries of A^m, and block followability is
        // arc composability
        bool ok = true;
        std::string witness;
        using Key = std::vector<std::pair<int32_t, int32_t>>;  // (step, tile) of tile starts
        struct BlockInfo {
            std::set<int32_t> starts, ends;
            int32_t I = 0, J = 0;
        };
        std::map<Key, BlockInfo> blocks;
        const size_t path_cap = 200000;
        size_t paths = 0;
        Key key;
        std::function<void(int32_t, int32_t, int64_t, int32_t)> walk =
            [&](int32_t q0, int32_t q, int64_t depth, int32_t rack_tile) {
                if (depth == m) {
                    if (++paths > path_cap) {
                        throw BudgetError("verify_dynamics: block walk exceeds cap");
                    }
                    BlockInfo& b = blocks[key];
                    b.starts.insert(q0);
                    b.ends.insert(q);
                    b.I = rack_IJ[static_cast<size_t>(rack_tile - static_cast<int32_t>(nb))].first;
                    b.J = rack_IJ[static_cast<size_t>(rack_tile - static_cast<int32_t>(nb))].second;
                    return;
                }
                for (int32_t ei = ta.first_edge[static_cast<size_t>(q)];
                     ei < ta.first_edge[static_cast<size_t>(q) + 1]; ++ei) {
                    const AutomatonEdge& e = ta.edges[static_cast<size_t>(ei)];
                    if (depth == 0 && !is_head_edge(e)) continue;
                    bool starts_tile = e.label.sub == 1;
                    if (starts_tile) key.push_back({static_cast<int32_t>(depth), e.label.tile});
                    walk(q0, e.to, depth + 1,
                         depth == 0 ? e.label.tile : rack_tile);
                    if (starts_tile) key.pop_back();
                }
            };
        try {
            for (int32_t q = 0; q < static_cast<int32_t>(ta.states.size()); ++q) {
                bool has_head = false;
                for (int32_t ei = ta.first_edge[static_cast<size_t>(q)];
                     ei < ta.first_edge[static_cast<size_t>(q) + 1]; ++ei) {
                    if (is_head_edge(ta.edges[static_cast<size_t>(ei)])) has_head = true;
                }
                if (has_head) walk(q, q, 0, -1);
            }
        } catch (const BudgetError& e) {
            rep.skipped = true;
            rep.skip_reason = std::string("skipped: scale (") + e.what() + ")";
            return rep;
        }

        std::vector<std::vector<bool>> essential = essential_arcs(out.Am);
        std::vector<std::vector<mpz_class>> got(static_cast<size_t>(V),
                                                std::vector<mpz_class>(static_cast<size_t>(V), 0));
        for (const auto& [k, b] : blocks) {
            got[static_cast<size_t>(b.I - 1)][static_cast<size_t>(b.J - 1)] += 1;
        }
        for (int32_t i = 0; i < V && ok; ++i) {
            for (int32_t j = 0; j < V && ok; ++j) {
                mpz_class want = essential[static_cast<size_t>(i)][static_cast<size_t>(j)]
                                     ? out.Am.at(i, j)
                                     : mpz_class(0);
                if (got[static_cast<size_t>(i)][static_cast<size_t>(j)] != want) {
                    ok = false;
                    witness = "blocks with (I,J)=(" + std::to_string(i + 1) + "," +
                              std::to_string(j + 1) + "): " +
                              got[static_cast<size_t>(i)][static_cast<size_t>(j)].get_str() +
                              ", want " + want.get_str();
                }
            }
        }
        if (ok) {
            for (const auto& [kx, bx] : blocks) {
                for (const auto& [ky, by] : blocks) {
                    bool followable = false;
                    for (int32_t e : bx.ends) {
                        if (by.starts.count(e)) {
                            followable = true;
                            break;
                        }
                    }
                    bool composable = bx.J == by.I;
                    if (followable != composable) {
                        ok = false;
                        witness = std::string("block followability disagrees with arc ") +
                                  "composability at (I,J)=(" + std::to_string(bx.I) + "," +
                                  std::to_string(bx.J) + ") -> (" + std::to_string(by.I) + "," +
                                  std::to_string(by.J) + ")";
                        break;
                    }
                }
                if (!ok) break;
            }
        }
        add_check(rep, "block-correspondence", ok,
                  ok ? std::to_string(blocks.size()) +
                           " head-aligned m-blocks, matching the arcs of A^m"
                     : witness);
    }

    rep.all_pass = true;
    for (const CheckResult& c : rep.checks) rep.all_pass = rep.all_pass && c.pass;
    return rep;
}

}  // namespace tilings
