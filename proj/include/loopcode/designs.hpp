#pragma once

#include "loopcode/loops.hpp"
#include "loopcode/tensor_network.hpp"

namespace loopcode {

struct InvalidDesign : Error {
    explicit InvalidDesign(const std::string& d = "InvalidDesign") : Error(d) {}
};

// Latin square design: 3N typed points, N^2 lines meeting each type once, any
// cross-type pair on exactly one line. Points of type t are indexed 0..N-1.
struct LatinSquareDesign {
    int N = 0;
    std::vector<std::array<int, 3>> lines;

    FormCheck validate() const;
    // Latin square: square[r][c] = symbol on the line through (r, c).
    std::vector<std::vector<int>> latin_square() const;
    int line_through(int type_a, int pa, int type_b, int pb) const;  // -1 if none
};

LatinSquareDesign thomsen_design(const Loop& l);

// Loop reconstruction normalized at a base line; the result's identity corresponds to
// the base line's type-3 point. Throws InvalidDesign when the reconstructed table has
// no two-sided inverses (possible for exotic base lines).
TableLoop thomsen_loop(const LatinSquareDesign& d, const std::array<int, 3>& base_line);

struct CentralAutomorphismReport {
    std::vector<std::vector<bool>> point_ok;  // [type][point]
    bool is_central_design = true;
};
CentralAutomorphismReport central_automorphism_checks(const LatinSquareDesign& d);

// Design graph: vertices = points, one edge per cross-type pair (each lies on one line).
FlagGraph design_graph(const LatinSquareDesign& d);

struct SubdesignResult {
    LatinSquareDesign design;
    FlagGraph graph;
    std::vector<int> point_map;  // subdesign point index -> parent point index (same per type)
};
// Subdesign induced by a subset of loop elements closed under the line rule.
SubdesignResult subdesign(const LatinSquareDesign& d, const std::vector<int>& points_per_type);

// Every pair of intersecting lines generates a subdesign of order 2 (closure under the
// two-points-determine-a-line rule).
struct Order2Report {
    bool holds = true;
    std::array<int, 2> witness_lines{};
    int witness_order = 0;
};
Order2Report order2_subdesign_check(const LatinSquareDesign& d);

// Chamber system: colored equivalence relations on a chamber set.
struct ChamberSystem {
    int nchambers = 0;
    int rank = 0;
    std::vector<std::vector<int>> color_class;  // [color][chamber] -> class id

    FormCheck validate() const;  // distinct colors agreeing => equal; I-graph connected
    std::vector<std::vector<int>> panels(int color) const;
    // connected components of the union of the given colors' relations
    std::vector<int> residue_components(const std::vector<int>& colors) const;
    std::vector<int> residue_components_all() const;
};

struct LatinChamberReport {
    ChamberSystem system;
    bool axioms_ok = true;
    bool latin_property = true;  // panels of different colors intersect in one chamber
    std::vector<std::pair<std::vector<int>, int>> rank2_residues;  // colors -> component count
};
LatinChamberReport latin_chamber_system(const std::vector<std::vector<int>>& square);

}  // namespace loopcode
