// JSON file formats (versioned, bit-exact round-trips) and text export.
//
// Formats:
//   prototile-set v1          tiles as {color, runs|offsets|broken_word}
//   integer-matrix v1         2D array of decimal integer strings
//   compiled-tiling-system v1 compiler output incl. digits and shapes
//   tiling-automaton v1       states, edges, metadata (export only)
//
// Writers always emit the canonical field order and runs-form shapes, so
// save(load(file)) reproduces file byte-for-byte when file was written by us.

#pragma once

#include <string>

#include "json.hpp"
#include "tilings/automaton.hpp"
#include "tilings/bigmat.hpp"
#include "tilings/compiler.hpp"
#include "tilings/prototile.hpp"

namespace tilings {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// canonical serialization: two-space indent plus trailing newline
std::string dump_json(const nlohmann::ordered_json& j);

nlohmann::ordered_json prototile_set_to_json(const PrototileSet& ps);
PrototileSet prototile_set_from_json(const nlohmann::json& j);
PrototileSet load_prototile_set(const std::string& path);
void save_prototile_set(const std::string& path, const PrototileSet& ps);

nlohmann::ordered_json matrix_to_json(const BigMatrix& A);
BigMatrix matrix_from_json(const nlohmann::json& j);
BigMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const BigMatrix& A);

nlohmann::ordered_json compiled_to_json(const CompilerOutput& out);
CompilerOutput compiled_from_json(const nlohmann::json& j);
CompilerOutput load_compiled(const std::string& path);
void save_compiled(const std::string& path, const CompilerOutput& out);

nlohmann::ordered_json automaton_to_json(const TilingAutomaton& ta, const PrototileSet& ps);
std::string automaton_to_dot(const TilingAutomaton& ta, const PrototileSet& ps);

}  // namespace tilings
