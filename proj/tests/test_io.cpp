#include <cstdio>
#include <filesystem>
#include <string>

#include "doctest.h"
#include "tilings/compiler.hpp"
#include "tilings/io.hpp"

using namespace tilings;
using nlohmann::json;

namespace {

std::string tmp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

struct TmpFile {
    std::string path;
    explicit TmpFile(const std::string& name) : path(tmp_path(name)) {}
    ~TmpFile() { std::remove(path.c_str()); }
};

PrototileSet sample_set() {
    return PrototileSet{{Prototile("R", {0}), Prototile("B", {0, 1, 3})}};
}

}  // namespace

TEST_CASE("prototile sets survive a save/load round trip byte for byte") {
    TmpFile f("tilings_test_ps.json");
    save_prototile_set(f.path, sample_set());
    std::string first = read_text_file(f.path);
    PrototileSet loaded = load_prototile_set(f.path);
    CHECK(loaded == sample_set());
    save_prototile_set(f.path, loaded);
    CHECK(read_text_file(f.path) == first);
}

TEST_CASE("prototile files accept offsets and broken words as input forms") {
    PrototileSet want{{Prototile("B", {0, 2})}};
    json with_offsets = {
        {"format", "prototile-set"}, {"version", 1},
        {"tiles", {{{"color", "B"}, {"offsets", {0, 2}}}}}};
    CHECK(prototile_set_from_json(with_offsets) == want);

    json with_word = {
        {"format", "prototile-set"}, {"version", 1},
        {"tiles", {{{"color", "B"}, {"broken_word", "B _ B"}}}}};
    CHECK(prototile_set_from_json(with_word) == want);

    // the writer normalizes every input form to runs
    json out = prototile_set_to_json(want);
    REQUIRE(out["tiles"].size() == 1);
    CHECK(out["tiles"][0].contains("runs"));
    CHECK_FALSE(out["tiles"][0].contains("offsets"));
}

TEST_CASE("malformed prototile files are rejected with context") {
    json wrong_format = {{"format", "integer-matrix"}, {"version", 1}, {"tiles", json::array()}};
    CHECK_THROWS_AS((void)prototile_set_from_json(wrong_format), std::invalid_argument);

    json bad_version = {{"format", "prototile-set"}, {"version", 2}, {"tiles", json::array()}};
    CHECK_THROWS_AS((void)prototile_set_from_json(bad_version), std::invalid_argument);

    json two_forms = {
        {"format", "prototile-set"}, {"version", 1},
        {"tiles", {{{"color", "B"}, {"offsets", {0, 2}}, {"broken_word", "B _ B"}}}}};
    CHECK_THROWS_AS((void)prototile_set_from_json(two_forms), std::invalid_argument);

    json bad_run = {
        {"format", "prototile-set"}, {"version", 1},
        {"tiles", {{{"color", "B"}, {"runs", {{{"start", 0}, {"len", 0}}}}}}}};
    CHECK_THROWS_AS((void)prototile_set_from_json(bad_run), std::invalid_argument);

    CHECK_THROWS_AS((void)load_prototile_set(tmp_path("tilings_no_such_file.json")),
                    std::runtime_error);
}

TEST_CASE("matrices round trip and accept both strings and integers") {
    BigMatrix A(2);
    A.at(0, 0) = mpz_class("123456789012345678901234567890");
    A.at(0, 1) = 1;
    A.at(1, 0) = 0;
    A.at(1, 1) = 7;
    TmpFile f("tilings_test_mat.json");
    save_matrix(f.path, A);
    CHECK(load_matrix(f.path) == A);
    std::string first = read_text_file(f.path);
    save_matrix(f.path, load_matrix(f.path));
    CHECK(read_text_file(f.path) == first);

    json mixed = {{"format", "integer-matrix"}, {"version", 1},
                  {"entries", {{"2", 3}, {0, "5"}}}};
    BigMatrix B = matrix_from_json(mixed);
    CHECK(B.dim == 2);
    CHECK(B.at(0, 0) == 2);
    CHECK(B.at(0, 1) == 3);
    CHECK(B.at(1, 1) == 5);
}

TEST_CASE("malformed matrix files are rejected") {
    json ragged = {{"format", "integer-matrix"}, {"version", 1},
                   {"entries", {{1, 2}, {3}}}};
    CHECK_THROWS_AS((void)matrix_from_json(ragged), std::invalid_argument);

    json garbage = {{"format", "integer-matrix"}, {"version", 1},
                    {"entries", {{"not a number"}}}};
    CHECK_THROWS_AS((void)matrix_from_json(garbage), std::invalid_argument);

    json empty = {{"format", "integer-matrix"}, {"version", 1}, {"entries", json::array()}};
    CHECK_THROWS_AS((void)matrix_from_json(empty), std::invalid_argument);
}

TEST_CASE("compiled systems round trip through files exactly") {
    BigMatrix A(2);
    A.at(0, 1) = 1;
    A.at(1, 0) = 1;
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::relaxed));

    TmpFile f("tilings_test_compiled.json");
    save_compiled(f.path, out);
    CompilerOutput loaded = load_compiled(f.path);
    CHECK(loaded == out);
    std::string first = read_text_file(f.path);
    save_compiled(f.path, loaded);
    CHECK(read_text_file(f.path) == first);
}

TEST_CASE("compiled files with a rack list must be marked materialized") {
    BigMatrix A(1);
    A.at(0, 0) = 1;
    CompilerOutput out = compile(A, choose_parameters(A, ParamMode::strict));
    json j = compiled_to_json(out);
    j["racks_materialized"] = false;  // contradicts the nonempty rack list
    CHECK_THROWS_AS((void)compiled_from_json(j), std::invalid_argument);
}

TEST_CASE("automaton export carries counts, states and labeled edges") {
    PrototileSet ps{{Prototile("R", {0}), Prototile("B", {0, 1})}};
    TilingAutomaton ta = build_automaton(ps);
    json j = automaton_to_json(ta, ps);
    CHECK(j["format"] == "tiling-automaton");
    CHECK(j["state_count"] == 2);
    CHECK(j["edges"].size() == 3);
    CHECK(j["colors"] == json({"R", "B"}));

    std::string dot = automaton_to_dot(ta, ps);
    CHECK(dot.find("digraph") != std::string::npos);
    // three edges, each rendered as an arrow
    size_t arrows = 0;
    for (size_t pos = dot.find("->"); pos != std::string::npos; pos = dot.find("->", pos + 2)) {
        ++arrows;
    }
    CHECK(arrows == 3);
}
