#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leech/hole.hpp"

namespace leech {

// A set of hole records keyed by id, as read from a JSON catalog file.
struct Catalog {
    std::vector<HoleRecord> records;

    const HoleRecord* find(const std::string& id) const;
    bool has(const std::string& id) const { return find(id) != nullptr; }
};

// JSON format: a list of records
//   { "id": str, "type": str, "g": int?, "vol": "p/q"?, "vertices": [[24 ints], ...] }
Catalog ingest(const std::string& path);
void save_catalog(const Catalog& cat, const std::string& path);

// Content digest used to invalidate cached invariants.
std::string record_digest(const HoleRecord& rec);

// Exact textual serialization of computed invariants; reloading reproduces
// the very same rationals.
struct CacheEntry {
    std::string id;
    std::string digest;
    HoleInvariants inv;
};

void persist_cache(const std::vector<CacheEntry>& entries, const std::string& path);
std::vector<CacheEntry> load_cache(const std::string& path);

// Cache-aware invariant computation over a catalog.
std::map<std::string, HoleInvariants> invariants_of(const LatticeModel& model, const Catalog& cat,
                                                    const std::string& cache_path = "");

}  // namespace leech
