// compiler.hpp -- compile a nonnegative integer matrix into a prototile
// set of barbells and racks whose tiling system realizes the matrix's
// m-th-power edge shift, m = 13n.
//
// Entry counts of A^m are written in factorial base; each digit c_k yields
// c_k racks whose centers admit exactly k! barbell fillings, so the
// (rack, filling) pairs from I to J number exactly (A^m)_IJ.

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tilings/automaton.hpp"
#include "tilings/bigmat.hpp"
#include "tilings/factorial.hpp"
#include "tilings/prototile.hpp"

namespace tilings {

enum class ParamMode { strict, relaxed };

std::string to_string(ParamMode mode);
ParamMode param_mode_from_string(const std::string& s);

struct CompilerParams {
    int32_t V = 0;
    int64_t n = 0;
    int64_t m = 0;  // = 13n
    ParamMode mode = ParamMode::strict;
    bool operator==(const CompilerParams&) const = default;
};

struct BarbellSpec {
    int64_t r = 0;
    std::string color;
    Prototile shape;  // {0, 1, 2r+3, 2r+4}
    bool operator==(const BarbellSpec&) const = default;
};

struct RackSpec {
    int32_t I = 0;
    int32_t J = 0;
    int64_t k = 0;
    int64_t i = 0;  // 0 <= i < c_k(I,J)
    std::string color;
    Prototile shape;  // head, center with two 2k-gaps, tail
    bool operator==(const RackSpec&) const = default;
};

struct RackCount {
    int32_t I = 0;
    int32_t J = 0;
    int64_t count = 0;  // number of racks for this entry = sum_k c_k(I,J)
    bool operator==(const RackCount&) const = default;
};

struct CompilerOutput {
    CompilerParams params;
    BigMatrix A;
    BigMatrix Am;  // A^m
    // digits[I-1][J-1] = factorial digits of (A^m)_IJ
    std::vector<std::vector<FactorialDigits>> digits;
    std::vector<BarbellSpec> barbells;
    bool racks_materialized = false;
    std::vector<RackSpec> racks;  // filled only when materialized
    std::vector<RackCount> rack_counts;
    int64_t total_racks = 0;
    bool operator==(const CompilerOutput&) const = default;
};

// Minimal n > V satisfying the mode's representability inequality:
// strict:  (V * max A)^(13n) < (n+1)!
// relaxed: every entry of A^(13n) < (n+1)!
CompilerParams choose_parameters(const BigMatrix& A, ParamMode mode, int64_t max_n = 50000);

Prototile barbell_shape(int64_t r, const std::string& color);
Prototile rack_shape(int64_t n, int32_t I, int32_t J, int64_t k, int64_t i,
                     const std::string& color);

std::string barbell_color(int64_t r);
std::string rack_color(int32_t I, int32_t J, int64_t k, int64_t i);

// Racks are materialized only when their total stays within the limit;
// otherwise the output carries digits and per-entry counts, and consumers
// stream shapes through for_each_rack.
CompilerOutput compile(const BigMatrix& A, const CompilerParams& params,
                       int64_t materialize_limit = 200000);

// Streams all racks in canonical (I, J, k, i) order, regenerating shapes
// from the digits; identical to `racks` when materialized.
void for_each_rack(const CompilerOutput& out, const std::function<void(const RackSpec&)>& fn);

// the prototile set of the compiled system (requires materialized racks)
PrototileSet compiled_prototiles(const CompilerOutput& out);

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct StructuralReport {
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

// Exhaustively fills the 4k center-gap cells of a k-rack with barbells.
// Returns the number of fillings; when `perms` is given, appends the
// permutation read off each filling (pi(j) = l iff one barbell covers gap
// slots 2j-1,2j and 2(k+l)-1,2(k+l)).  A filling that does not decompose
// into such first-gap/second-gap pairs records an empty permutation.
int64_t count_center_fillings(int64_t n, int64_t k,
                              std::vector<std::vector<int64_t>>* perms = nullptr);

// Checks, with exact arithmetic and finite search: the counting identity,
// head/tail complementarity (iff I = J), k!-filling counts with the
// permutation bijection (k <= fillings_bound), shape geometry (sampling
// geometry_samples racks per entry when not materialized), digit bounds,
// consistency of any materialized rack list with the digits, and that the
// stored A^m equals a recomputation from A.
StructuralReport verify_structural(const CompilerOutput& out, int64_t fillings_bound = 5,
                                   int64_t geometry_samples = 64);

struct DynamicsBudget {
    int64_t max_alphabet = 200;  // subscripted symbols
    int64_t max_length = 64;
    size_t max_states = 1'000'000;
};

struct DynamicsReport {
    bool skipped = false;
    std::string skip_reason;
    std::vector<CheckResult> checks;
    bool all_pass = false;  // over the checks that ran
};

// Builds the compiled system's automaton and checks the dynamical
// consequences: head starts spaced exactly m apart on every cycle, exact
// fixed-point counts Fix(sigma^(mp)) = m * trace(A^(mp)) for p in 1..3 and
// none at all below m, entropy equal to that of the matrix's edge shift,
// and the head-aligned m-block <-> arc correspondence.
DynamicsReport verify_dynamics(const CompilerOutput& out, const DynamicsBudget& budget = {});

}  // namespace tilings
