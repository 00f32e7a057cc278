#pragma once

#include <string>
#include <vector>

#include "leech/lattice.hpp"

namespace leech {

// One indecomposable Coxeter--Dynkin component. Extended types A/D/E have
// k+1 nodes, ordinary a/d/e have k nodes.
struct DynkinComponent {
    char letter = 'a';  // 'a', 'd' or 'e'
    int k = 1;
    bool extended = false;
    std::vector<int> nodes;  // indices into the classified point list

    int expected_nodes() const { return extended ? k + 1 : k; }
    std::string token() const {
        char c = extended ? static_cast<char>(letter - 'a' + 'A') : letter;
        return std::string(1, c) + std::to_string(k);
    }
    bool operator==(const DynkinComponent& o) const {
        return letter == o.letter && k == o.k && extended == o.extended;
    }
};

struct DynkinGraph {
    int n = 0;
    // 4 = no edge, 6 = single, 8 = double
    std::vector<std::vector<int>> dist2;
    std::vector<DynkinComponent> components;

    bool all_extended() const;
    bool all_ordinary() const;
    // Canonical product string, e.g. "d4^4 a1^9".
    std::string type_string() const;
};

// Builds the graph by the distance rule and classifies every component.
// Throws unknown_diagram when pairwise distances leave {4,6,8} or a
// component matches no template.
DynkinGraph dynkin_classify(const LatticeModel& model, const std::vector<LatticeVector>& pts);

// Classification from a precomputed squared-distance matrix.
DynkinGraph dynkin_classify_dist(const std::vector<std::vector<int>>& dist2);

// Parses a type string ("a5 a2^10", "D24") into component tokens.
std::vector<DynkinComponent> parse_type(const std::string& s);

// True when the two products agree up to reordering.
bool same_type(const std::vector<DynkinComponent>& a, const std::vector<DynkinComponent>& b);
bool same_type(const std::string& a, const std::string& b);

std::string type_string_of(std::vector<DynkinComponent> comps);

}  // namespace leech
