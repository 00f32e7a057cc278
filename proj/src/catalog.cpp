#include "leech/catalog.hpp"

#include <fstream>
#include <set>

#include "json.hpp"
#include "leech/errors.hpp"

namespace leech {

using nlohmann::json;

namespace {

json rat_to_json(const Rat& r) { return rat_str(r); }

Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(static_cast<long>(j.get<long long>()));
    return parse_rat(j.get<std::string>());
}

HoleRecord record_from_json(const json& j) {
    HoleRecord rec;
    rec.id = j.at("id").get<std::string>();
    rec.claimed_type = j.value("type", std::string{});
    if (j.contains("g")) {
        if (j["g"].is_number_integer())
            rec.g_published = Int(static_cast<long>(j["g"].get<long long>()));
        else
            rec.g_published = Int(j["g"].get<std::string>());
    }
    if (j.contains("vol")) rec.vol_published = rat_from_json(j["vol"]);
    const auto& verts = j.at("vertices");
    for (const auto& row : verts) {
        if (row.size() != kDim) throw bad_format("vertex row is not 24 long in record " + rec.id);
        LatticeVector v;
        for (int i = 0; i < kDim; ++i) v.c[i] = row[i].get<int>();
        rec.vertices.push_back(v);
    }
    return rec;
}

json record_to_json(const HoleRecord& rec) {
    json j;
    j["id"] = rec.id;
    if (!rec.claimed_type.empty()) j["type"] = rec.claimed_type;
    if (rec.g_published) j["g"] = rec.g_published->get_str();
    if (rec.vol_published) j["vol"] = rat_to_json(*rec.vol_published);
    json verts = json::array();
    for (const auto& v : rec.vertices) {
        json row = json::array();
        for (int i = 0; i < kDim; ++i) row.push_back(v.c[i]);
        verts.push_back(std::move(row));
    }
    j["vertices"] = std::move(verts);
    return j;
}

}  // namespace

const HoleRecord* Catalog::find(const std::string& id) const {
    for (const auto& r : records)
        if (r.id == id) return &r;
    return nullptr;
}

Catalog ingest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_format("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw bad_format(std::string("catalog parse error: ") + e.what());
    }
    if (!j.is_array()) throw bad_format("catalog must be a JSON list of records");
    Catalog cat;
    std::set<std::string> ids;
    for (const auto& item : j) {
        HoleRecord rec = record_from_json(item);
        if (!ids.insert(rec.id).second) throw bad_format("duplicate record id " + rec.id);
        cat.records.push_back(std::move(rec));
    }
    return cat;
}

void save_catalog(const Catalog& cat, const std::string& path) {
    json j = json::array();
    for (const auto& rec : cat.records) j.push_back(record_to_json(rec));
    std::ofstream out(path);
    if (!out) throw bad_format("cannot write " + path);
    out << j.dump(1) << "\n";
}

std::string record_digest(const HoleRecord& rec) {
    // FNV-1a over the type string and vertex coordinates.
    std::uint64_t h = 1469598103934665603ull;
    auto mix = [&h](std::uint64_t v) {
        h ^= v;
        h *= 1099511628211ull;
    };
    for (char c : rec.claimed_type) mix(static_cast<std::uint64_t>(c));
    for (const auto& v : rec.vertices)
        for (int i = 0; i < kDim; ++i) mix(static_cast<std::uint64_t>(static_cast<int64_t>(v.c[i])));
    char buf[17];
    snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

json invariants_to_json(const HoleInvariants& inv) {
    json j;
    json center = json::array();
    for (int i = 0; i < kDim; ++i) center.push_back(rat_to_json(inv.center.c[i]));
    j["center"] = std::move(center);
    j["r2"] = rat_to_json(inv.r2);
    j["deep"] = inv.deep;
    if (!inv.s_infinite) j["s"] = rat_to_json(inv.s);
    j["m"] = inv.m.get_str();
    j["N"] = inv.n.get_str();
    j["theta2"] = rat_to_json(inv.theta2);
    j["volume"] = rat_to_json(inv.volume);
    json feet = json::array();
    for (const auto& f : inv.foot_dist2) feet.push_back(rat_to_json(f));
    j["foot_dist2"] = std::move(feet);
    return j;
}

HoleInvariants invariants_from_json(const json& j) {
    HoleInvariants inv;
    const auto& center = j.at("center");
    for (int i = 0; i < kDim; ++i) inv.center.c[i] = rat_from_json(center.at(i));
    inv.r2 = rat_from_json(j.at("r2"));
    inv.deep = j.at("deep").get<bool>();
    inv.s_infinite = !j.contains("s");
    if (!inv.s_infinite) inv.s = rat_from_json(j["s"]);
    inv.m = Int(j.at("m").get<std::string>());
    inv.n = Int(j.at("N").get<std::string>());
    inv.theta2 = rat_from_json(j.at("theta2"));
    inv.volume = rat_from_json(j.at("volume"));
    for (const auto& f : j.at("foot_dist2")) inv.foot_dist2.push_back(rat_from_json(f));
    return inv;
}

}  // namespace

void persist_cache(const std::vector<CacheEntry>& entries, const std::string& path) {
    json j = json::array();
    for (const auto& e : entries) {
        json item;
        item["id"] = e.id;
        item["digest"] = e.digest;
        item["invariants"] = invariants_to_json(e.inv);
        j.push_back(std::move(item));
    }
    std::ofstream out(path);
    if (!out) throw bad_format("cannot write " + path);
    out << j.dump(1) << "\n";
}

std::vector<CacheEntry> load_cache(const std::string& path) {
    std::ifstream in(path);
    if (!in) return {};
    json j;
    try {
        in >> j;
    } catch (const json::exception&) {
        return {};  // unreadable caches are recomputed
    }
    std::vector<CacheEntry> out;
    if (!j.is_array()) return out;
    for (const auto& item : j) {
        CacheEntry e;
        e.id = item.at("id").get<std::string>();
        e.digest = item.at("digest").get<std::string>();
        e.inv = invariants_from_json(item.at("invariants"));
        out.push_back(std::move(e));
    }
    return out;
}

std::map<std::string, HoleInvariants> invariants_of(const LatticeModel& model, const Catalog& cat,
                                                    const std::string& cache_path) {
    std::map<std::string, HoleInvariants> out;
    std::map<std::string, CacheEntry> cache;
    if (!cache_path.empty())
        for (auto& e : load_cache(cache_path)) cache.emplace(e.id, std::move(e));
    std::vector<CacheEntry> fresh;
    for (const auto& rec : cat.records) {
        std::string digest = record_digest(rec);
        auto it = cache.find(rec.id);
        if (it != cache.end() && it->second.digest == digest) {
            out.emplace(rec.id, it->second.inv);
            fresh.push_back(it->second);
            continue;
        }
        Hole h = Hole::analyze(model, rec);
        HoleInvariants inv = h.invariants();
        out.emplace(rec.id, inv);
        fresh.push_back(CacheEntry{rec.id, digest, inv});
    }
    if (!cache_path.empty()) persist_cache(fresh, cache_path);
    return out;
}

}  // namespace leech
