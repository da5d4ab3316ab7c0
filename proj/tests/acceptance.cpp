// Acceptance checks. Each criterion prints exactly one pass/FAIL line and
// carries a wall-clock limit; the exit status is the number of failures.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "tilings/compiler.hpp"
#include "tilings/factorial.hpp"
#include "tilings/io.hpp"
#include "tilings/sofic.hpp"

using namespace tilings;

namespace {

PrototileSet even_system() {
    return PrototileSet{{Prototile("R", {0}), Prototile("B", {0, 1})}};
}

DeterministicPresentation present(const PrototileSet& ps) {
    TilingAutomaton ta = build_automaton(ps);
    return determinize(drop_subscripts(ta, ps));
}

BigMatrix mat(const std::vector<std::vector<int64_t>>& rows) {
    BigMatrix A(static_cast<int32_t>(rows.size()));
    for (int32_t i = 0; i < A.dim; ++i) {
        for (int32_t j = 0; j < A.dim; ++j) {
            A.at(i, j) = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    return A;
}

const CheckResult* find_check(const std::vector<CheckResult>& checks, const std::string& name) {
    for (const CheckResult& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

bool require(bool cond, const std::string& what, std::string& why) {
    if (!cond && why.empty()) why = what;
    return cond;
}

const double kGoldenEntropy = std::log((1.0 + std::sqrt(5.0)) / 2.0);

bool criterion1(std::string& why) {
    DeterministicPresentation dp = present(even_system());
    bool ok = require(std::abs(entropy(dp).value - kGoldenEntropy) < 1e-9, "entropy off", why);
    ok &= require(count_periodic(dp, 1) == 2, "fixed point count", why);
    ok &= require(count_periodic(dp, 3) == 5, "period-3 count", why);
    return ok;
}

bool criterion2(std::string& why) {
    PrototileSet gapped{{Prototile("R", {0}), Prototile("B", {0, 2})}};
    auto sys = language_names_up_to(present(gapped), 12);
    auto ren = language_names_up_to(renewal_presentation({"R", "BRB", "BBBB"}), 12);
    return require(sys == ren, "languages differ", why);
}

bool criterion3(std::string& why) {
    PrototileSet ps = even_system();
    WindowVerdict narrow = check_window_theorem(ps, 1, 12);
    bool ok = require(!narrow.holds, "1-window condition unexpectedly decides membership", why);
    ok &= require(narrow.counterexample == std::vector<SubSymbol>{{1, 1}},
                  "counterexample is not all-B with subscript 1", why);
    TilingAutomaton ta = build_automaton(ps);
    ok &= require(!periodic_subword_in_system(ta, {{1, 1}}), "membership accepts all-B", why);
    ok &= require(check_window_theorem(ps, 2, 12).holds, "2-window condition fails", why);
    return ok;
}

bool criterion4(std::string& why) {
    for (const PrototileSet& ps : oracle::small_family(4)) {
        std::vector<mpz_class> c = count_periodic_range(present(ps), 2);
        if (c[2] > c[1] && c[1] < 2) {
            why = "a least-period-2 point without two fixed points";
            return false;
        }
    }
    for (const PrototileSet& ps : oracle::small_family(5)) {
        std::vector<mpz_class> c = count_periodic_range(present(ps), 4);
        bool p3 = c[3] > c[1];          // least period 3
        bool p4 = c[4] > c[2];          // least period 4
        if ((p3 || p4) && c[1] < 1) {
            why = "a period-3 or period-4 point without a fixed point";
            return false;
        }
    }
    return true;
}

bool criterion5(std::string& why) {
    BigMatrix A = mat({{1}});
    CompilerParams p = choose_parameters(A, ParamMode::strict);
    bool ok = require(p.n == 2 && p.m == 26, "parameters are not n=2, m=26", why);
    CompilerOutput out = compile(A, p);
    DynamicsReport dyn = verify_dynamics(out);
    ok &= require(!dyn.skipped && dyn.all_pass, "dynamic verification failed", why);

    DeterministicPresentation dp = present(compiled_prototiles(out));
    std::vector<mpz_class> c = count_periodic_range(dp, 26);
    ok &= require(c[26] == 26, "Fix(26) != 26", why);
    for (int64_t q = 1; q < 26; ++q) {
        ok &= require(c[static_cast<size_t>(q)] == 0, "periodic point below 26", why);
    }
    ok &= require(std::abs(entropy(dp).value) < 1e-9, "entropy not 0", why);

    // one arc in the A^26 digraph, so the passing block check saw one block
    const CheckResult* blocks = find_check(dyn.checks, "block-correspondence");
    ok &= require(blocks != nullptr && blocks->pass, "block correspondence", why);
    ok &= require(A.pow(26).trace() == 1, "arc count", why);
    return ok;
}

bool criterion6(std::string& why) {
    BigMatrix A = mat({{0, 1}, {1, 0}});
    CompilerParams p = choose_parameters(A, ParamMode::relaxed);
    bool ok = require(p.n == 3 && p.m == 39, "parameters are not n=3, m=39", why);
    CompilerOutput out = compile(A, p);
    DynamicsReport dyn = verify_dynamics(out);
    ok &= require(!dyn.skipped && dyn.all_pass, "dynamic verification failed", why);
    const CheckResult* spacing = find_check(dyn.checks, "head-spacing");
    ok &= require(spacing != nullptr && spacing->pass, "head spacing", why);

    DeterministicPresentation dp = present(compiled_prototiles(out));
    std::vector<mpz_class> c = count_periodic_range(dp, 78);
    ok &= require(c[39] == 0, "Fix(39) != 0", why);
    ok &= require(c[78] == 78, "Fix(78) != 78", why);
    ok &= require(mpz_class(39) * A.pow(78).trace() == 78, "m*trace(A^78) != 78", why);
    ok &= require(std::abs(entropy(dp).value) < 1e-9, "entropy not 0", why);
    return ok;
}

bool criterion7(std::string& why) {
    BigMatrix A = mat({{1, 1}, {1, 0}});
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
    bool ok = require(!out.racks_materialized, "rack list was materialized", why);
    StructuralReport rep = verify_structural(out);
    for (const CheckResult& c : rep.checks) {
        ok &= require(c.pass, "structural check '" + c.name + "': " + c.detail, why);
    }
    ok &= require(rep.all_pass, "structural verification failed", why);

    // the counting identity once more, straight from the digits
    mpz_class fact = 1;
    std::vector<mpz_class> factorials{1};  // k! for k = 0..n
    for (int64_t k = 1; k <= out.params.n; ++k) {
        fact *= k;
        factorials.push_back(fact);
    }
    for (int32_t I = 0; I < out.params.V; ++I) {
        for (int32_t J = 0; J < out.params.V; ++J) {
            mpz_class sum = 0;
            const std::vector<int64_t>& ds =
                out.digits[static_cast<size_t>(I)][static_cast<size_t>(J)].digits;
            for (size_t k = 1; k <= ds.size(); ++k) {
                sum += ds[k - 1] * factorials[k];
            }
            ok &= require(sum == out.Am.at(I, J), "digit sum misses an entry of A^m", why);
        }
    }
    return ok;
}

bool criterion8(std::string& why) {
    std::vector<std::vector<int64_t>> perms;
    bool ok = require(count_center_fillings(2, 1, &perms) == 1, "k=1 filling count", why);
    ok &= require(perms == std::vector<std::vector<int64_t>>{{1}}, "k=1 permutation", why);
    perms.clear();
    ok &= require(count_center_fillings(3, 2, &perms) == 2, "k=2 filling count", why);
    std::set<std::vector<int64_t>> got(perms.begin(), perms.end());
    ok &= require(got == std::set<std::vector<int64_t>>{{1, 2}, {2, 1}},
                  "k=2 fillings are not the two permutations", why);
    return ok;
}

bool criterion9(std::string& why) {
    for (const PrototileSet& ps : oracle::small_family(4)) {
        TilingAutomaton ta = build_automaton(ps);
        if (!require(tiles_integers(ps) == oracle::tiles_integers_brute(ps, 64),
                     "tiles_integers disagrees with periodic search", why)) {
            return false;
        }
        DeterministicPresentation dp = determinize(drop_subscripts(ta, ps));
        const int32_t k = static_cast<int32_t>(ps.size());
        for (int64_t p = 1; p <= 3; ++p) {
            mpz_class brute = 0;
            std::vector<int32_t> w(static_cast<size_t>(p), 0);
            std::function<void(int64_t)> rec = [&](int64_t i) {
                if (i == p) {
                    if (oracle::periodic_word_in_system_brute(ps, w, 64)) ++brute;
                    return;
                }
                for (int32_t c = 0; c < k; ++c) {
                    w[static_cast<size_t>(i)] = c;
                    rec(i + 1);
                }
            };
            rec(0);
            if (!require(count_periodic(dp, p) == brute, "count_periodic disagrees with oracle",
                         why)) {
                return false;
            }
        }
    }

    gmp_randclass rng(gmp_randinit_default);
    rng.seed(20260816UL);
    for (int64_t n = 2; n <= 50; ++n) {
        mpz_class top = factorial_max_value(n) + 1;
        for (int reps = 0; reps < 10000; ++reps) {
            mpz_class v = rng.get_z_range(top);
            FactorialDigits d = factorial_encode(v, n);
            mpz_class back = 0;
            mpz_class fact = 1;
            for (size_t k = 1; k <= d.digits.size(); ++k) {
                fact *= static_cast<long>(k);
                back += d.digits[k - 1] * fact;
            }
            if (!require(back == v && factorial_decode(d) == v, "factorial roundtrip", why)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* text;
        double limit_s;
        std::function<bool(std::string&)> run;
    };
    const std::vector<Criterion> criteria{
        {1, "even system entropy, fixed points, period-3 count", 1.0, criterion1},
        {2, "gapped system equals the renewal system of R, BRB, BBBB", 5.0, criterion2},
        {3, "1-window condition fails on all-B, 2-window condition decides", 5.0, criterion3},
        {4, "period-2 forces two fixed points; periods 3 and 4 force one", 60.0, criterion4},
        {5, "compiled [[1]]: Fix(26) = 26, nothing shorter, zero entropy", 30.0, criterion5},
        {6, "compiled swap matrix: Fix(39) = 0, Fix(78) = 78, spacing 39", 300.0, criterion6},
        {7, "golden mean structural verification without materializing", 300.0, criterion7},
        {8, "center fillings count 1 and 2, in bijection with permutations", 1.0, criterion8},
        {9, "engine matches brute-force oracles; factorial codec roundtrip", 60.0, criterion9},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        auto t0 = std::chrono::steady_clock::now();
        bool ok = false;
        std::string why;
        try {
            ok = c.run(why);
        } catch (const std::exception& e) {
            why = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (ok && secs >= c.limit_s) {
            ok = false;
            why = "over time limit";
        }
        if (ok) {
            std::printf("pass  criterion %d: %s  (%.2fs < %.0fs)\n", c.id, c.text, secs,
                        c.limit_s);
        } else {
            std::printf("FAIL  criterion %d: %s  (%.2fs): %s\n", c.id, c.text, secs,
                        why.empty() ? "check failed" : why.c_str());
            ++failures;
        }
    }
    if (failures == 0) {
        std::printf("acceptance: all 9 criteria pass\n");
    } else {
        std::printf("acceptance: %d of 9 criteria FAILED\n", failures);
    }
    return failures;
}
