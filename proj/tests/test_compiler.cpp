#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "tilings/compiler.hpp"
#include "tilings/factorial.hpp"
#include "tilings/sofic.hpp"

using namespace tilings;

namespace {

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

int64_t count_for(const CompilerOutput& out, int32_t I, int32_t J) {
    for (const RackCount& rc : out.rack_counts) {
        if (rc.I == I && rc.J == J) return rc.count;
    }
    return 0;
}

}  // namespace

TEST_CASE("parameter selection matches the worked one-by-one examples") {
    CompilerParams p = choose_parameters(mat({{1}}), ParamMode::strict);
    CHECK(p.V == 1);
    CHECK(p.n == 2);
    CHECK(p.m == 26);
    CHECK(p.mode == ParamMode::strict);

    CHECK(choose_parameters(mat({{1}}), ParamMode::relaxed).n == 2);

    CompilerParams q = choose_parameters(mat({{0, 1}, {1, 0}}), ParamMode::relaxed);
    CHECK(q.V == 2);
    CHECK(q.n == 3);
    CHECK(q.m == 39);
}

TEST_CASE("relaxed parameters for the golden mean matrix are minimal") {
    BigMatrix A = mat({{1, 1}, {1, 0}});
    CompilerParams p = choose_parameters(A, ParamMode::relaxed);
    CHECK(p.n == 1405);
    CHECK(p.m == 18265);
    // minimality, recomputed from scratch: n = 1404 violates the entry
    // bound and n = 1405 satisfies it
    CHECK(A.pow(13 * 1404).max_entry() >= factorial(1405));
    CHECK(A.pow(13 * 1405).max_entry() < factorial(1406));
}

TEST_CASE("parameter selection rejects bad matrices and hopeless budgets") {
    BigMatrix neg(1);
    neg.at(0, 0) = -1;
    CHECK_THROWS_AS((void)choose_parameters(neg, ParamMode::strict), std::invalid_argument);
    CHECK_THROWS_AS((void)choose_parameters(BigMatrix(), ParamMode::strict),
                    std::invalid_argument);
    // (V*maxA)^(13n) = 2^(13n) beats (n+1)! until n is in the tens of
    // thousands, so a small cap trips the budget
    CHECK_THROWS_AS((void)choose_parameters(mat({{2}}), ParamMode::strict, 100), BudgetError);
}

TEST_CASE("compile rejects parameters that do not fit the matrix") {
    BigMatrix A = mat({{1}});
    CompilerParams p = choose_parameters(A, ParamMode::strict);
    CompilerParams wrong_v = p;
    wrong_v.V = 2;
    CHECK_THROWS_AS((void)compile(A, wrong_v), std::invalid_argument);
    CompilerParams wrong_m = p;
    wrong_m.m = p.m + 1;
    CHECK_THROWS_AS((void)compile(A, wrong_m), std::invalid_argument);
    CompilerParams small_n = p;
    small_n.n = 1;  // not above V
    small_n.m = 13;
    CHECK_THROWS_AS((void)compile(A, small_n), std::invalid_argument);
}

TEST_CASE("barbells for n = 2 are the three expected shapes") {
    BigMatrix A = mat({{1}});
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::strict));
    REQUIRE(out.barbells.size() == 3);
    CHECK(out.barbells[0].shape.offsets() == std::vector<int64_t>{0, 1, 3, 4});
    CHECK(out.barbells[1].shape.offsets() == std::vector<int64_t>{0, 1, 5, 6});
    CHECK(out.barbells[2].shape.offsets() == std::vector<int64_t>{0, 1, 7, 8});
    std::set<std::string> colors;
    for (const BarbellSpec& b : out.barbells) {
        CHECK(b.shape == barbell_shape(b.r, b.color));
        colors.insert(b.color);
    }
    CHECK(colors.size() == 3);
}

TEST_CASE("the unit matrix compiles to a single fully pinned rack") {
    BigMatrix A = mat({{1}});
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::strict));
    CHECK(out.Am.max_entry() == 1);
    REQUIRE(out.digits.size() == 1);
    CHECK(out.digits[0][0].digits == std::vector<int64_t>{1, 0});
    CHECK(out.total_racks == 1);
    CHECK(out.racks_materialized);
    REQUIRE(out.racks.size() == 1);

    const RackSpec& r = out.racks[0];
    CHECK(r.I == 1);
    CHECK(r.J == 1);
    CHECK(r.k == 1);
    CHECK(r.i == 0);
    // head {0,2,3}, long center block, gap-solid-gap around cell 12, tail 27
    std::vector<int64_t> want{0, 2, 3};
    for (int64_t c = 4; c <= 9; ++c) want.push_back(c);
    want.push_back(12);
    for (int64_t c = 15; c <= 25; ++c) want.push_back(c);
    want.push_back(27);
    CHECK(r.shape.offsets() == want);
    CHECK(r.shape.length() == 28);  // 13n + 2J
}

TEST_CASE("the zero matrix compiles to barbells only") {
    BigMatrix A = mat({{0}});
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
    CHECK(out.total_racks == 0);
    CHECK(out.racks.empty());
    CHECK(out.racks_materialized);
    CHECK(count_for(out, 1, 1) == 0);

    // nothing can tile: every check reduces to the automaton being empty
    DynamicsReport dyn = verify_dynamics(out);
    CHECK_FALSE(dyn.skipped);
    CHECK(dyn.all_pass);
    const CheckResult* c = find_check(dyn.checks, "empty-system");
    REQUIRE(c != nullptr);
    CHECK(c->pass);
    CHECK_FALSE(tiles_integers(compiled_prototiles(out)));
}

TEST_CASE("the swap matrix compiles to one rack per off-diagonal entry") {
    BigMatrix A = mat({{0, 1}, {1, 0}});
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
    CHECK(out.barbells.size() == 5);
    CHECK(out.total_racks == 2);
    CHECK(count_for(out, 1, 2) == 1);
    CHECK(count_for(out, 2, 1) == 1);
    CHECK(count_for(out, 1, 1) == 0);
    REQUIRE(out.racks.size() == 2);
    CHECK(out.racks[0].I == 1);
    CHECK(out.racks[0].J == 2);
    CHECK(out.racks[0].shape.length() == 43);  // 13n + 2J = 39 + 4
    CHECK(out.racks[1].I == 2);
    CHECK(out.racks[1].J == 1);
    CHECK(out.racks[1].shape.length() == 41);
}

TEST_CASE("streaming racks reproduces the materialized list") {
    for (auto rows : {std::vector<std::vector<int64_t>>{{1}},
                      std::vector<std::vector<int64_t>>{{0, 1}, {1, 0}},
                      std::vector<std::vector<int64_t>>{{1, 0}, {0, 1}}}) {
        BigMatrix A = mat(rows);
        CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
        std::vector<RackSpec> streamed;
        for_each_rack(out, [&](const RackSpec& r) { streamed.push_back(r); });
        CHECK(streamed == out.racks);
    }
}

TEST_CASE("center fillings count factorially and read off as permutations") {
    std::vector<std::vector<int64_t>> perms;
    CHECK(count_center_fillings(2, 1, &perms) == 1);
    CHECK(perms == std::vector<std::vector<int64_t>>{{1}});

    perms.clear();
    CHECK(count_center_fillings(3, 2, &perms) == 2);
    std::set<std::vector<int64_t>> got2(perms.begin(), perms.end());
    CHECK(got2 == std::set<std::vector<int64_t>>{{1, 2}, {2, 1}});

    perms.clear();
    CHECK(count_center_fillings(5, 3, &perms) == 6);
    std::set<std::vector<int64_t>> got3(perms.begin(), perms.end());
    std::set<std::vector<int64_t>> all3;
    std::vector<int64_t> p{1, 2, 3};
    do {
        all3.insert(p);
    } while (std::next_permutation(p.begin(), p.end()));
    CHECK(got3 == all3);

    CHECK_THROWS_AS((void)count_center_fillings(2, 0), std::invalid_argument);
}

TEST_CASE("structural verification passes on freshly compiled outputs") {
    for (auto rows : {std::vector<std::vector<int64_t>>{{1}},
                      std::vector<std::vector<int64_t>>{{0, 1}, {1, 0}},
                      std::vector<std::vector<int64_t>>{{1, 0}, {0, 1}},
                      std::vector<std::vector<int64_t>>{{0}}}) {
        BigMatrix A = mat(rows);
        CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
        StructuralReport rep = verify_structural(out);
        for (const CheckResult& c : rep.checks) {
            CAPTURE(c.name);
            CAPTURE(c.detail);
            CHECK(c.pass);
        }
        CHECK(rep.all_pass);
    }
}

TEST_CASE("structural verification passes on the golden mean without materializing") {
    BigMatrix A = mat({{1, 1}, {1, 0}});
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
    CHECK_FALSE(out.racks_materialized);
    CHECK(out.racks.empty());
    CHECK(out.total_racks == 1964521);
    CHECK(out.barbells.size() == 2809);
    CHECK_THROWS_AS((void)compiled_prototiles(out), std::invalid_argument);

    StructuralReport rep = verify_structural(out);
    for (const CheckResult& c : rep.checks) {
        CAPTURE(c.name);
        CAPTURE(c.detail);
        CHECK(c.pass);
    }
    CHECK(rep.all_pass);
    CHECK(find_check(rep.checks, "counting-identity") != nullptr);
}

TEST_CASE("structural verification catches tampered outputs") {
    BigMatrix A = mat({{0, 1}, {1, 0}});
    CompilerOutput good = compile(A, choose_parameters(A, ParamMode::relaxed));

    CompilerOutput bad_digits = good;
    bad_digits.digits[0][1].digits[0] = 0;  // entry (1,2) now encodes 0, not 1
    StructuralReport rep = verify_structural(bad_digits);
    CHECK_FALSE(rep.all_pass);
    const CheckResult* c = find_check(rep.checks, "counting-identity");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->pass);

    CompilerOutput bad_racks = good;
    bad_racks.racks.pop_back();
    rep = verify_structural(bad_racks);
    CHECK_FALSE(rep.all_pass);
    c = find_check(rep.checks, "rack-list-consistency");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->pass);

    CompilerOutput bad_power = good;
    bad_power.Am.at(0, 0) += 1;
    rep = verify_structural(bad_power);
    CHECK_FALSE(rep.all_pass);
    c = find_check(rep.checks, "matrix-power");
    REQUIRE(c != nullptr);
    CHECK_FALSE(c->pass);
}

TEST_CASE("dynamic verification passes on every small compiled system") {
    for (auto rows : {std::vector<std::vector<int64_t>>{{1}},
                      std::vector<std::vector<int64_t>>{{0, 1}, {1, 0}},
                      std::vector<std::vector<int64_t>>{{1, 0}, {0, 1}}}) {
        BigMatrix A = mat(rows);
        CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));
        DynamicsReport dyn = verify_dynamics(out);
        REQUIRE_FALSE(dyn.skipped);
        for (const CheckResult& c : dyn.checks) {
            CAPTURE(c.name);
            CAPTURE(c.detail);
            CHECK(c.pass);
        }
        CHECK(dyn.all_pass);
        for (const char* name :
             {"head-spacing", "fixed-points", "entropy", "block-correspondence"}) {
            CHECK(find_check(dyn.checks, name) != nullptr);
        }
    }
}

TEST_CASE("dynamic verification is skipped at infeasible scale") {
    BigMatrix golden = mat({{1, 1}, {1, 0}});
    CompilerOutput out = compile(golden, choose_parameters(golden, ParamMode::relaxed));
    DynamicsReport dyn = verify_dynamics(out);
    CHECK(dyn.skipped);
    CHECK_FALSE(dyn.skip_reason.empty());

    BigMatrix tiny = mat({{1}});
    CompilerOutput small = compile(tiny, choose_parameters(tiny, ParamMode::strict));
    DynamicsBudget budget;
    budget.max_alphabet = 1;
    CHECK(verify_dynamics(small, budget).skipped);
}
