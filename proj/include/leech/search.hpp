#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "leech/hole.hpp"
#include "leech/lattice.hpp"

namespace leech {

// Target pairwise squared distances of a vertex configuration, built from a
// hole type string. Entries off the diagonal are 4, 6 or 8.
struct DistanceTemplate {
    int size = 0;
    std::vector<std::vector<int>> dist2;
    std::string type;

    static DistanceTemplate from_type(const std::string& type_string);
    bool has_double_edges() const;
};

struct SubsetSearchOptions {
    std::uint64_t max_nodes = 0;        // backtrack nodes, 0 = unlimited
    double budget_seconds = 0;          // wall clock, 0 = unlimited
    std::uint64_t pool_limit = 0;       // cap on any single candidate list
    int threads = 1;                    // for the underlying sphere enumerations
};

struct SubsetSearchStats {
    std::uint64_t nodes = 0;
    std::uint64_t sphere_calls = 0;
    bool exhausted = false;  // the pinned search space was fully traversed
};

// Searches {0} ∪ N4 ∪ N6 for a subset realizing the template, with the
// first vertex pinned to the origin and the second to a fixed shell
// representative (every congruence class of subsets has such a
// representative because the point stabilizer of the lattice is transitive
// on each shell). Returns the subset in template vertex order, or nullopt
// with stats.exhausted set.
std::optional<std::vector<LatticeVector>> find_congruent_subset(
    const LatticeModel& model, const DistanceTemplate& templ,
    const SubsetSearchOptions& opt = {}, SubsetSearchStats* stats = nullptr);

// Searches for up to `want` pairwise inequivalent holes of the given type.
// Stops early when the budget runs out; each returned record is validated.
std::vector<HoleRecord> enumerate_classes(const LatticeModel& model, const DistanceTemplate& templ,
                                          int want, const SubsetSearchOptions& opt = {},
                                          SubsetSearchStats* stats = nullptr);

}  // namespace leech
