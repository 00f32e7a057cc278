#include "leech/search.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <limits>
#include <map>
#include <memory>

#include "leech/congruence.hpp"
#include "leech/dynkin.hpp"
#include "leech/errors.hpp"

namespace leech {

namespace {

// Lays out one component's internal squared-distance pattern.
void fill_component(std::vector<std::vector<int>>& d, int base, const DynkinComponent& c) {
    auto edge = [&](int i, int j) { d[base + i][base + j] = d[base + j][base + i] = 6; };
    const int n = c.expected_nodes();
    if (c.extended) {
        switch (c.letter) {
            case 'a':
                if (c.k == 1) {
                    d[base][base + 1] = d[base + 1][base] = 8;
                    return;
                }
                for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
                edge(0, n - 1);
                return;
            case 'd':
                if (c.k == 4) {  // 4-star
                    for (int i = 1; i < 5; ++i) edge(0, i);
                    return;
                }
                // fork - path - fork: 0,1 | 2 .. n-3 | n-2, n-1
                edge(0, 2);
                edge(1, 2);
                for (int i = 2; i + 3 < n; ++i) edge(i, i + 1);
                edge(n - 3, n - 2);
                edge(n - 3, n - 1);
                return;
            case 'e': {
                // arms from a hub at 0
                std::vector<int> arms;
                if (c.k == 6) arms = {2, 2, 2};
                else if (c.k == 7) arms = {1, 3, 3};
                else arms = {1, 2, 5};
                int next = 1;
                for (int len : arms) {
                    int prev = 0;
                    for (int s = 0; s < len; ++s) {
                        edge(prev, next);
                        prev = next++;
                    }
                }
                return;
            }
        }
    }
    switch (c.letter) {
        case 'a':
            for (int i = 0; i + 1 < n; ++i) edge(i, i + 1);
            return;
        case 'd':
            // two leaves on a hub, then a tail
            edge(0, 2);
            edge(1, 2);
            for (int i = 2; i + 1 < n; ++i) edge(i, i + 1);
            return;
        case 'e': {
            std::vector<int> arms;
            if (c.k == 6) arms = {1, 2, 2};
            else if (c.k == 7) arms = {1, 2, 3};
            else arms = {1, 2, 4};
            int next = 1;
            for (int len : arms) {
                int prev = 0;
                for (int s = 0; s < len; ++s) {
                    edge(prev, next);
                    prev = next++;
                }
            }
            return;
        }
    }
    throw wrong_shape("unsupported component " + c.token());
}

}  // namespace

DistanceTemplate DistanceTemplate::from_type(const std::string& type_string) {
    std::vector<DynkinComponent> comps = parse_type(type_string);
    DistanceTemplate t;
    t.type = type_string;
    for (const auto& c : comps) t.size += c.expected_nodes();
    t.dist2.assign(t.size, std::vector<int>(t.size, 4));
    for (int i = 0; i < t.size; ++i) t.dist2[i][i] = 0;
    int base = 0;
    for (const auto& c : comps) {
        fill_component(t.dist2, base, c);
        base += c.expected_nodes();
    }
    // The laid-out graph must classify back to the requested type.
    DynkinGraph g = dynkin_classify_dist(t.dist2);
    if (!same_type(g.type_string(), type_string))
        throw wrong_shape("template layout does not classify as " + type_string);
    return t;
}

bool DistanceTemplate::has_double_edges() const {
    for (int i = 0; i < size; ++i)
        for (int j = i + 1; j < size; ++j)
            if (dist2[i][j] == 8) return true;
    return false;
}

namespace {

struct SubsetSearcher {
    const LatticeModel& model;
    const DistanceTemplate& templ;
    const SubsetSearchOptions& opt;
    SubsetSearchStats stats;
    std::chrono::steady_clock::time_point deadline;
    bool has_deadline = false;

    std::vector<std::pair<int, LatticeVector>> placed;  // (template position, point)
    std::function<bool(const std::vector<LatticeVector>&)> on_solution;
    bool done = false;
    int origin_pos = 0;  // template position pinned to the origin
    std::vector<int> pos_class;  // interchangeable-position classes

    SubsetSearcher(const LatticeModel& m, const DistanceTemplate& t, const SubsetSearchOptions& o)
        : model(m), templ(t), opt(o) {
        if (opt.budget_seconds > 0) {
            deadline = std::chrono::steady_clock::now() +
                       std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                           std::chrono::duration<double>(opt.budget_seconds));
            has_deadline = true;
        }
    }

    bool out_of_budget() {
        if (opt.max_nodes && stats.nodes > opt.max_nodes) return true;
        if (has_deadline && std::chrono::steady_clock::now() > deadline) return true;
        return false;
    }

    using List = std::shared_ptr<const std::vector<LatticeVector>>;

    void emit() {
        std::vector<LatticeVector> sol(templ.size);
        for (const auto& [pos, x] : placed) sol[pos] = x;
        if (on_solution(sol)) done = true;
    }

    // Positions p and q are interchangeable when swapping them fixes the
    // template distance matrix; placing their candidates in increasing
    // order searches sets instead of permutations.
    void compute_classes() {
        const int n = templ.size;
        pos_class.assign(n, -1);
        int next = 0;
        for (int p = 0; p < n; ++p) {
            if (pos_class[p] >= 0) continue;
            pos_class[p] = next;
            for (int q = p + 1; q < n; ++q) {
                if (pos_class[q] >= 0) continue;
                bool same = true;
                for (int r = 0; r < n && same; ++r) {
                    if (r == p || r == q) continue;
                    if (templ.dist2[p][r] != templ.dist2[q][r]) same = false;
                }
                if (same) pos_class[q] = next;
            }
            ++next;
        }
    }

    void run() {
        placed.clear();
        compute_classes();
        // Pin the first vertex (a maximal-degree one) to the origin.
        const int n = templ.size;
        int v0 = 0, best = -1;
        for (int i = 0; i < n; ++i) {
            int deg = 0;
            for (int j = 0; j < n; ++j)
                if (templ.dist2[i][j] == 6) ++deg;
            if (deg > best) {
                best = deg;
                v0 = i;
            }
        }
        origin_pos = v0;
        placed.emplace_back(v0, LatticeVector{});
        if (n == 1) {
            emit();
            stats.exhausted = true;
            return;
        }
        // Pin a second vertex to a fixed representative of its shell,
        // preferring a 6-neighbour of the first.
        int v1 = -1;
        for (int j = 0; j < n && v1 < 0; ++j)
            if (j != v0 && templ.dist2[v0][j] == 6) v1 = j;
        if (v1 < 0) v1 = (v0 == 0) ? 1 : 0;
        LatticeVector w = model.some_vector_of_norm(templ.dist2[v0][v1]);
        placed.emplace_back(v1, w);
        if (n == 2) {
            emit();
            stats.exhausted = true;
            return;
        }

        // Initial candidate lists, one sphere enumeration per distinct
        // distance pattern against the two pinned points; positions of one
        // interchangeability class share a group.
        std::map<std::pair<int, int>, List> by_pattern;
        std::map<int, Group> group_of;
        QPoint mid;
        for (int i = 0; i < kDim; ++i) mid.c[i] = make_rat(w.c[i], 2);
        for (int q = 0; q < n; ++q) {
            if (q == v0 || q == v1) continue;
            auto key = std::make_pair(templ.dist2[q][v0], templ.dist2[q][v1]);
            auto it = by_pattern.find(key);
            if (it == by_pattern.end()) {
                // ||x - 0||^2 = t0 and ||x - w||^2 = t1 forces x onto the
                // sphere around w/2 of squared radius (t0+t1)/2 - |w|^2/4.
                Rat r2 = make_rat(key.first + key.second, 2) - make_rat(model.norm(w), 4);
                std::vector<LatticeVector> cand;
                if (r2 >= 0) {
                    ++stats.sphere_calls;
                    EnumOptions eo;
                    eo.threads = opt.threads;
                    std::vector<LatticeVector> ball = model.sphere_points(mid, r2, eo);
                    for (const auto& x : ball)
                        if (model.norm(x) == key.first && model.dist2_ll(x, w) == key.second)
                            cand.push_back(x);
                }
                it = by_pattern.emplace(key, std::make_shared<std::vector<LatticeVector>>(std::move(cand)))
                         .first;
            }
            auto git = group_of.find(pos_class[q]);
            if (git == group_of.end()) {
                Group g;
                g.cls = pos_class[q];
                g.list = it->second;
                g.positions.push_back(q);
                group_of.emplace(pos_class[q], std::move(g));
            } else {
                git->second.positions.push_back(q);
            }
        }
        std::vector<Group> groups;
        for (auto& [cls, g] : group_of) groups.push_back(std::move(g));
        extend(groups);
        stats.exhausted = !done && !out_of_budget();
    }

    // Remaining positions grouped by interchangeability class; one shared,
    // sorted candidate list per group.
    struct Group {
        int cls;
        std::vector<int> positions;
        List list;
    };

    void extend(const std::vector<Group>& groups) {
        if (done) return;
        ++stats.nodes;
        if (out_of_budget()) return;
        if (groups.empty()) {
            emit();
            return;
        }
        // Most constrained group first: smallest candidate list, with
        // 6-edge-bearing (structured) groups preferred on ties so that the
        // rigid components shape the point set before the loose a1 slots.
        std::size_t pick = 0;
        auto rank_of = [&](std::size_t i) {
            const Group& gr = groups[i];
            int q = gr.positions.front();
            bool structured = false;
            for (int r2 = 0; r2 < templ.size && !structured; ++r2)
                if (r2 != q && templ.dist2[q][r2] == 6) structured = true;
            return std::tuple(gr.list->size(), structured ? 0 : 1, gr.cls);
        };
        auto best_rank = rank_of(0);
        for (std::size_t i = 1; i < groups.size(); ++i) {
            auto r = rank_of(i);
            if (r < best_rank) {
                best_rank = r;
                pick = i;
            }
        }
        const Group& g = groups[pick];
        const std::size_t r = g.positions.size();
        if (g.list->size() < r) return;
        const int pos = g.positions.back();

        // Same-class candidates ascend (sets, not permutations).
        const LatticeVector* floor_x = nullptr;
        for (auto it = placed.rbegin(); it != placed.rend(); ++it)
            if (pos_class[it->first] == g.cls) {
                floor_x = &it->second;
                break;
            }
        const auto& full = *g.list;
        std::size_t begin = 0;
        if (floor_x)
            begin = std::upper_bound(full.begin(), full.end(), *floor_x) - full.begin();

        for (std::size_t ci = begin; ci < full.size(); ++ci) {
            // Every remaining member of this group must come after ci.
            if (full.size() - ci < r) break;
            if (opt.pool_limit && ci - begin >= opt.pool_limit) break;
            const LatticeVector& x = full[ci];
            const std::array<int64_t, kDim> gx = model.gram_times(x);
            const int64_t nx = templ.dist2[pos][origin_pos];

            std::vector<Group> sub;
            sub.reserve(groups.size());
            bool dead = false;
            for (std::size_t i = 0; i < groups.size() && !dead; ++i) {
                Group ng;
                ng.cls = groups[i].cls;
                ng.positions = groups[i].positions;
                if (i == pick) {
                    ng.positions.pop_back();
                    if (ng.positions.empty()) continue;
                }
                const int q_any = ng.positions.front();
                const int64_t ny = templ.dist2[q_any][origin_pos];
                const int64_t target = templ.dist2[q_any][pos];
                const int64_t need2 = ny + nx - target;
                auto keep = std::make_shared<std::vector<LatticeVector>>();
                keep->reserve(64);
                for (const auto& y : *groups[i].list) {
                    int64_t dot = 0;
                    for (int k = 0; k < kDim; ++k) dot += gx[k] * y.c[k];
                    if (2 * dot == need2) keep->push_back(y);
                }
                ng.list = std::move(keep);
                if (ng.list->size() < ng.positions.size()) {
                    dead = true;
                    break;
                }
                sub.push_back(std::move(ng));
            }
            if (!dead) {
                placed.emplace_back(pos, x);
                extend(sub);
                placed.pop_back();
            }
            if (done || out_of_budget()) return;
        }
    }
};

}  // namespace

std::optional<std::vector<LatticeVector>> find_congruent_subset(const LatticeModel& model,
                                                                const DistanceTemplate& templ,
                                                                const SubsetSearchOptions& opt,
                                                                SubsetSearchStats* stats) {
    if (templ.has_double_edges())
        throw wrong_shape(
            "templates with double edges (type A1^24) need the N8 shell and are not searched");
    SubsetSearcher s(model, templ, opt);
    std::optional<std::vector<LatticeVector>> found;
    s.on_solution = [&](const std::vector<LatticeVector>& sol) {
        found = sol;
        return true;
    };
    s.run();
    if (stats) *stats = s.stats;
    return found;
}

std::vector<HoleRecord> enumerate_classes(const LatticeModel& model, const DistanceTemplate& templ,
                                          int want, const SubsetSearchOptions& opt,
                                          SubsetSearchStats* stats) {
    if (templ.has_double_edges())
        throw wrong_shape(
            "templates with double edges (type A1^24) need the N8 shell and are not searched");
    SubsetSearcher s(model, templ, opt);
    std::vector<HoleRecord> reps;
    std::vector<Hole> rep_holes;
    int counter = 0;
    s.on_solution = [&](const std::vector<LatticeVector>& sol) {
        if (s.out_of_budget()) return true;  // dedup work also counts against the clock
        HoleRecord rec;
        rec.id = templ.type + "#" + std::to_string(++counter);
        rec.claimed_type = templ.type;
        rec.vertices = sol;
        ValidationReport rep = validate_hole(model, rec);
        if (!rep.ok) return false;
        Hole h = Hole::analyze(model, rec);
        for (const Hole& prev : rep_holes) {
            // A capped search keeps one slow comparison from eating the
            // whole budget; an uncertified outcome is treated as a
            // duplicate so that no unproven class is ever reported.
            EquivalenceResult eq = equivalent(prev, h, 2'000'000);
            if (eq.equivalent || !eq.certified) return false;
        }
        reps.push_back(rec);
        rep_holes.push_back(std::move(h));
        return static_cast<int>(reps.size()) >= want;
    };
    s.run();
    if (stats) *stats = s.stats;
    return reps;
}

}  // namespace leech
