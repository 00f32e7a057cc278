#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leech/hole.hpp"
#include "leech/lattice.hpp"
#include "leech/matrix.hpp"

namespace leech {

// A distance-preserving bijection between two point lists, stored as the
// index image: target index of source vertex i is perm[i].
struct CongruenceMap {
    std::vector<int> perm;
    bool operator==(const CongruenceMap& o) const { return perm == o.perm; }
};

// y = x * linear + translation (points are row vectors).
struct AffineMap {
    QMatrix linear{kDim, kDim};
    QPoint translation;

    QPoint apply(const QPoint& x) const;
    bool is_lattice_map() const;  // integral linear part and translation
};

// The affine isometry induced by a congruence map whose source affinely
// spans the whole space; throws degenerate_span otherwise.
AffineMap induced_affine(const LatticeModel& model, const std::vector<LatticeVector>& src,
                         const std::vector<LatticeVector>& dst, const CongruenceMap& map);

struct MapSearchOptions {
    std::uint64_t max_nodes = 200'000'000;
    std::size_t max_results = SIZE_MAX;
    bool lattice_only = false;  // keep only maps whose induced affine map preserves the lattice
    // Prefix constraints: source index -> forced target index.
    std::vector<std::pair<int, int>> pinned;
};

struct MapSearchResult {
    std::vector<CongruenceMap> maps;
    bool complete = false;  // the search space was exhausted
    std::uint64_t nodes = 0;
};

// Backtracking enumeration of congruence maps src -> dst. For lattice_only
// searches the tree is pruned by torsion invariants of weighted vertex
// combinations, which every lattice-preserving affine map preserves.
MapSearchResult search_congruence_maps(const LatticeModel& model,
                                       const std::vector<LatticeVector>& src,
                                       const std::vector<LatticeVector>& dst,
                                       const MapSearchOptions& opt = {});

// Complete list of congruence maps (hull automorphisms when src == dst).
std::vector<CongruenceMap> congruence_maps(const LatticeModel& model,
                                           const std::vector<LatticeVector>& src,
                                           const std::vector<LatticeVector>& dst,
                                           std::uint64_t max_nodes = 200'000'000);

struct GroupInfo {
    Int order = 1;
    std::vector<CongruenceMap> generators;
};

// Aut of the hull: every distance-preserving vertex permutation. The order
// comes from the component structure (component symmetries times
// permutations of congruent components); generators are explicit maps.
GroupInfo hull_aut(const Hole& hole);

// Aut(P_c, Lambda): the subgroup whose induced affine maps preserve the
// lattice. Exact enumeration with invariant pruning; throws budget_exceeded
// when the node budget is hit.
GroupInfo lattice_aut(const Hole& hole, std::uint64_t max_nodes = 200'000'000);

struct EquivalenceResult {
    bool equivalent = false;
    bool certified = false;  // inequivalence proved by exhausted search
    std::optional<AffineMap> map;
    std::string detail;
};

EquivalenceResult equivalent(const Hole& h1, const Hole& h2,
                             std::uint64_t max_nodes = 200'000'000);

}  // namespace leech
