#include "tilings/io.hpp"

#include <fstream>
#include <sstream>

namespace tilings {

using nlohmann::json;
using nlohmann::ordered_json;

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string dump_json(const ordered_json& j) {
    return j.dump(2) + "\n";
}

namespace {

void require_header(const json& j, const std::string& format) {
    if (!j.is_object()) throw std::invalid_argument(format + ": document is not an object");
    if (!j.contains("format") || j.at("format") != format) {
        throw std::invalid_argument(format + ": missing or wrong \"format\" field");
    }
    if (!j.contains("version") || j.at("version") != 1) {
        throw std::invalid_argument(format + ": unsupported version (want 1)");
    }
}

ordered_json runs_to_json(const Prototile& p) {
    ordered_json arr = ordered_json::array();
    for (const Run& r : p.runs()) arr.push_back({r.start, r.len});
    return arr;
}

std::vector<Run> runs_from_json(const json& arr, const std::string& where) {
    if (!arr.is_array()) throw std::invalid_argument(where + ": \"runs\" must be an array");
    std::vector<Run> runs;
    for (const json& e : arr) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_number_integer() ||
            !e[1].is_number_integer()) {
            throw std::invalid_argument(where + ": each run must be [start, length]");
        }
        runs.push_back({e[0].get<int64_t>(), e[1].get<int64_t>()});
    }
    return runs;
}

Prototile tile_from_json(const json& t, const std::string& where) {
    if (!t.is_object() || !t.contains("color") || !t.at("color").is_string()) {
        throw std::invalid_argument(where + ": tile needs a string \"color\"");
    }
    std::string color = t.at("color").get<std::string>();
    int forms = t.contains("runs") + t.contains("offsets") + t.contains("broken_word");
    if (forms != 1) {
        throw std::invalid_argument(where +
                                    ": give exactly one of \"runs\", \"offsets\", \"broken_word\"");
    }
    if (t.contains("runs")) {
        return Prototile::from_runs(color, runs_from_json(t.at("runs"), where));
    }
    if (t.contains("offsets")) {
        const json& arr = t.at("offsets");
        if (!arr.is_array()) throw std::invalid_argument(where + ": \"offsets\" must be an array");
        std::vector<int64_t> offs;
        for (const json& e : arr) {
            if (!e.is_number_integer()) {
                throw std::invalid_argument(where + ": offsets must be integers");
            }
            offs.push_back(e.get<int64_t>());
        }
        return Prototile(color, offs);
    }
    if (!t.at("broken_word").is_string()) {
        throw std::invalid_argument(where + ": \"broken_word\" must be a string");
    }
    return Prototile::parse_broken_word(t.at("broken_word").get<std::string>(), color);
}

mpz_class mpz_from_json(const json& e, const std::string& where) {
    if (e.is_number_integer()) return mpz_class(e.get<int64_t>());
    if (e.is_number_unsigned()) {
        return mpz_class(std::to_string(e.get<uint64_t>()));
    }
    if (e.is_string()) {
        const std::string s = e.get<std::string>();
        try {
            return mpz_class(s, 10);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument(where + ": '" + s + "' is not a decimal integer");
        }
    }
    throw std::invalid_argument(where + ": entries must be decimal strings or integers");
}

ordered_json matrix_entries_to_json(const BigMatrix& A) {
    ordered_json rows = ordered_json::array();
    for (int32_t i = 0; i < A.dim; ++i) {
        ordered_json row = ordered_json::array();
        for (int32_t j = 0; j < A.dim; ++j) row.push_back(A.at(i, j).get_str());
        rows.push_back(std::move(row));
    }
    return rows;
}

BigMatrix matrix_entries_from_json(const json& rows, const std::string& where) {
    if (!rows.is_array() || rows.empty()) {
        throw std::invalid_argument(where + ": need a nonempty 2D array");
    }
    const size_t dim = rows.size();
    BigMatrix A(static_cast<int32_t>(dim));
    for (size_t i = 0; i < dim; ++i) {
        const json& row = rows[i];
        if (!row.is_array() || row.size() != dim) {
            throw std::invalid_argument(where + ": row " + std::to_string(i) + " must have " +
                                        std::to_string(dim) + " entries (square matrix)");
        }
        for (size_t j = 0; j < dim; ++j) {
            A.at(static_cast<int32_t>(i), static_cast<int32_t>(j)) = mpz_from_json(
                row[j], where + ": entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }
    return A;
}

}  // namespace

ordered_json prototile_set_to_json(const PrototileSet& ps) {
    ordered_json j;
    j["format"] = "prototile-set";
    j["version"] = 1;
    ordered_json tiles = ordered_json::array();
    for (const Prototile& p : ps.tiles()) {
        ordered_json t;
        t["color"] = p.color();
        t["runs"] = runs_to_json(p);
        tiles.push_back(std::move(t));
    }
    j["tiles"] = std::move(tiles);
    return j;
}

PrototileSet prototile_set_from_json(const json& j) {
    require_header(j, "prototile-set");
    if (!j.contains("tiles") || !j.at("tiles").is_array()) {
        throw std::invalid_argument("prototile-set: missing \"tiles\" array");
    }
    std::vector<Prototile> tiles;
    size_t idx = 0;
    for (const json& t : j.at("tiles")) {
        tiles.push_back(tile_from_json(t, "prototile-set: tiles[" + std::to_string(idx) + "]"));
        ++idx;
    }
    return PrototileSet(std::move(tiles));
}

PrototileSet load_prototile_set(const std::string& path) {
    return prototile_set_from_json(json::parse(read_text_file(path)));
}

void save_prototile_set(const std::string& path, const PrototileSet& ps) {
    write_text_file(path, dump_json(prototile_set_to_json(ps)));
}

ordered_json matrix_to_json(const BigMatrix& A) {
    ordered_json j;
    j["format"] = "integer-matrix";
    j["version"] = 1;
    j["entries"] = matrix_entries_to_json(A);
    return j;
}

BigMatrix matrix_from_json(const json& j) {
    require_header(j, "integer-matrix");
    if (!j.contains("entries")) throw std::invalid_argument("integer-matrix: missing \"entries\"");
    return matrix_entries_from_json(j.at("entries"), "integer-matrix");
}

BigMatrix load_matrix(const std::string& path) {
    return matrix_from_json(json::parse(read_text_file(path)));
}

void save_matrix(const std::string& path, const BigMatrix& A) {
    write_text_file(path, dump_json(matrix_to_json(A)));
}

ordered_json compiled_to_json(const CompilerOutput& out) {
    ordered_json j;
    j["format"] = "compiled-tiling-system";
    j["version"] = 1;
    j["mode"] = to_string(out.params.mode);
    j["V"] = out.params.V;
    j["n"] = out.params.n;
    j["m"] = out.params.m;
    j["matrix"] = matrix_entries_to_json(out.A);
    j["matrix_power"] = matrix_entries_to_json(out.Am);
    ordered_json digits = ordered_json::array();
    for (const auto& row : out.digits) {
        ordered_json drow = ordered_json::array();
        for (const FactorialDigits& d : row) drow.push_back(d.digits);
        digits.push_back(std::move(drow));
    }
    j["digits"] = std::move(digits);
    ordered_json barbells = ordered_json::array();
    for (const BarbellSpec& b : out.barbells) {
        ordered_json e;
        e["r"] = b.r;
        e["color"] = b.color;
        e["runs"] = runs_to_json(b.shape);
        barbells.push_back(std::move(e));
    }
    j["barbells"] = std::move(barbells);
    ordered_json counts = ordered_json::array();
    for (const RackCount& c : out.rack_counts) {
        ordered_json e;
        e["I"] = c.I;
        e["J"] = c.J;
        e["count"] = c.count;
        counts.push_back(std::move(e));
    }
    j["rack_counts"] = std::move(counts);
    j["total_racks"] = out.total_racks;
    j["racks_materialized"] = out.racks_materialized;
    ordered_json racks = ordered_json::array();
    for (const RackSpec& r : out.racks) {
        ordered_json e;
        e["I"] = r.I;
        e["J"] = r.J;
        e["k"] = r.k;
        e["i"] = r.i;
        e["color"] = r.color;
        e["runs"] = runs_to_json(r.shape);
        racks.push_back(std::move(e));
    }
    j["racks"] = std::move(racks);
    return j;
}

CompilerOutput compiled_from_json(const json& j) {
    require_header(j, "compiled-tiling-system");
    const std::string where = "compiled-tiling-system";
    for (const char* key : {"mode", "V", "n", "m", "matrix", "matrix_power", "digits", "barbells",
                            "rack_counts", "total_racks", "racks_materialized", "racks"}) {
        if (!j.contains(key)) {
            throw std::invalid_argument(where + ": missing \"" + std::string(key) + "\"");
        }
    }
    CompilerOutput out;
    out.params.mode = param_mode_from_string(j.at("mode").get<std::string>());
    out.params.V = j.at("V").get<int32_t>();
    out.params.n = j.at("n").get<int64_t>();
    out.params.m = j.at("m").get<int64_t>();
    out.A = matrix_entries_from_json(j.at("matrix"), where + ": matrix");
    out.Am = matrix_entries_from_json(j.at("matrix_power"), where + ": matrix_power");
    if (out.A.dim != out.params.V || out.Am.dim != out.params.V) {
        throw std::invalid_argument(where + ": matrix dimension does not match V");
    }
    const json& digits = j.at("digits");
    if (!digits.is_array() || static_cast<int32_t>(digits.size()) != out.params.V) {
        throw std::invalid_argument(where + ": digits must be a VxV array");
    }
    for (const json& row : digits) {
        if (!row.is_array() || static_cast<int32_t>(row.size()) != out.params.V) {
            throw std::invalid_argument(where + ": digits must be a VxV array");
        }
        std::vector<FactorialDigits> drow;
        for (const json& cell : row) {
            if (!cell.is_array()) {
                throw std::invalid_argument(where + ": each digit entry must be an array");
            }
            FactorialDigits d;
            for (const json& v : cell) {
                if (!v.is_number_integer()) {
                    throw std::invalid_argument(where + ": digits must be integers");
                }
                d.digits.push_back(v.get<int64_t>());
            }
            drow.push_back(std::move(d));
        }
        out.digits.push_back(std::move(drow));
    }
    for (const json& e : j.at("barbells")) {
        if (!e.is_object() || !e.contains("r") || !e.contains("color") || !e.contains("runs")) {
            throw std::invalid_argument(where + ": barbell needs r, color, runs");
        }
        std::string color = e.at("color").get<std::string>();
        out.barbells.push_back({e.at("r").get<int64_t>(), color,
                                Prototile::from_runs(color, runs_from_json(e.at("runs"),
                                                                           where + ": barbell"))});
    }
    for (const json& e : j.at("rack_counts")) {
        if (!e.is_object() || !e.contains("I") || !e.contains("J") || !e.contains("count")) {
            throw std::invalid_argument(where + ": rack_counts entries need I, J, count");
        }
        out.rack_counts.push_back(
            {e.at("I").get<int32_t>(), e.at("J").get<int32_t>(), e.at("count").get<int64_t>()});
    }
    out.total_racks = j.at("total_racks").get<int64_t>();
    out.racks_materialized = j.at("racks_materialized").get<bool>();
    for (const json& e : j.at("racks")) {
        if (!e.is_object() || !e.contains("I") || !e.contains("J") || !e.contains("k") ||
            !e.contains("i") || !e.contains("color") || !e.contains("runs")) {
            throw std::invalid_argument(where + ": rack needs I, J, k, i, color, runs");
        }
        std::string color = e.at("color").get<std::string>();
        out.racks.push_back({e.at("I").get<int32_t>(), e.at("J").get<int32_t>(),
                             e.at("k").get<int64_t>(), e.at("i").get<int64_t>(), color,
                             Prototile::from_runs(color,
                                                  runs_from_json(e.at("runs"), where + ": rack"))});
    }
    if (!out.racks_materialized && !out.racks.empty()) {
        throw std::invalid_argument(where + ": racks present but racks_materialized is false");
    }
    return out;
}

CompilerOutput load_compiled(const std::string& path) {
    return compiled_from_json(json::parse(read_text_file(path)));
}

void save_compiled(const std::string& path, const CompilerOutput& out) {
    write_text_file(path, dump_json(compiled_to_json(out)));
}

ordered_json automaton_to_json(const TilingAutomaton& ta, const PrototileSet& ps) {
    ordered_json j;
    j["format"] = "tiling-automaton";
    j["version"] = 1;
    j["tile_count"] = ta.tile_count;
    j["longest"] = ta.longest;
    j["state_count"] = ta.states.size();
    ordered_json colors = ordered_json::array();
    for (const Prototile& p : ps.tiles()) colors.push_back(p.color());
    j["colors"] = std::move(colors);
    ordered_json states = ordered_json::array();
    for (const std::vector<ActiveTile>& s : ta.states) {
        ordered_json st = ordered_json::array();
        for (const ActiveTile& a : s) st.push_back({a.age, a.tile});
        states.push_back(std::move(st));
    }
    j["states"] = std::move(states);
    ordered_json edges = ordered_json::array();
    for (const AutomatonEdge& e : ta.edges) {
        ordered_json ed;
        ed["from"] = e.from;
        ed["to"] = e.to;
        ed["label"] = {e.label.tile, e.label.sub};
        edges.push_back(std::move(ed));
    }
    j["edges"] = std::move(edges);
    return j;
}

std::string automaton_to_dot(const TilingAutomaton& ta, const PrototileSet& ps) {
    std::ostringstream out;
    out << "digraph tiling_automaton {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (size_t s = 0; s < ta.states.size(); ++s) {
        out << "  " << s << ";\n";
    }
    for (const AutomatonEdge& e : ta.edges) {
        out << "  " << e.from << " -> " << e.to << " [label=\""
            << ps.tiles()[static_cast<size_t>(e.label.tile)].color() << "_" << e.label.sub
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

}  // namespace tilings
