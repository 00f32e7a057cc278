#include "leech/congruence.hpp"

#include <algorithm>
#include <map>

#include "leech/errors.hpp"

namespace leech {

namespace {

// Torsion of the affine combination (a*x + b*y + c*anchor)/(a+b+c); such
// points are carried along by any affine isometry, so their torsion orders
// prune lattice-preserving map searches.
Int combo_torsion(const LatticeVector& x, const LatticeVector& y, const QPoint* anchor,
                  long a, long b, long c) {
    const long total = a + b + (anchor ? c : 0);
    QPoint p;
    for (int i = 0; i < kDim; ++i) {
        Rat v = Rat(a * x.c[i] + b * y.c[i]);
        if (anchor) v += Rat(c) * anchor->c[i];
        p.c[i] = v / Rat(total);
    }
    return torsion_order(p);
}

Int vertex_torsion(const LatticeVector& x, const QPoint& anchor, long a, long c) {
    QPoint p;
    for (int i = 0; i < kDim; ++i) p.c[i] = (Rat(a * x.c[i]) + Rat(c) * anchor.c[i]) / Rat(a + c);
    return torsion_order(p);
}

struct SideData {
    std::vector<std::vector<int>> dist;      // squared distances
    std::vector<std::vector<Int>> pair_tor;  // directed pair invariant
    std::vector<Int> v1, v2;                 // vertex invariants
    std::vector<std::vector<std::tuple<int, Int, Int>>> signature;

    void build(const LatticeModel& model, const std::vector<LatticeVector>& pts,
               const QPoint* anchor, bool lattice_only) {
        const int n = static_cast<int>(pts.size());
        dist.assign(n, std::vector<int>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                dist[i][j] = dist[j][i] = static_cast<int>(model.dist2_ll(pts[i], pts[j]));
        if (lattice_only) {
            pair_tor.assign(n, std::vector<Int>(n, 0));
            v1.assign(n, 0);
            v2.assign(n, 0);
            for (int i = 0; i < n; ++i) {
                if (anchor) {
                    v1[i] = vertex_torsion(pts[i], *anchor, 1, 1);  // midpoint with the anchor
                    v2[i] = vertex_torsion(pts[i], *anchor, 1, 2);
                }
                for (int j = 0; j < n; ++j)
                    if (j != i) pair_tor[i][j] = combo_torsion(pts[i], pts[j], anchor, 2, 3, 1);
            }
        }
        signature.assign(n, {});
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                Int a = lattice_only ? pair_tor[i][j] : Int(0);
                Int b = lattice_only ? pair_tor[j][i] : Int(0);
                signature[i].emplace_back(dist[i][j], a, b);
            }
            std::sort(signature[i].begin(), signature[i].end());
        }
    }

    bool vertex_compatible(int i, const SideData& o, int j) const {
        if (!v1.empty() && (v1[i] != o.v1[j] || v2[i] != o.v2[j])) return false;
        return signature[i] == o.signature[j];
    }
};

struct Searcher {
    const LatticeModel& model;
    const std::vector<LatticeVector>& src;
    const std::vector<LatticeVector>& dst;
    const MapSearchOptions& opt;
    const QPoint* src_anchor;
    const QPoint* dst_anchor;

    SideData a, b;
    std::vector<int> order;       // source vertices in placement order
    std::vector<int> image;       // image[src_index] or -1
    std::vector<char> used;       // target used flags
    MapSearchResult result;

    // Lattice-only pruning: for each placement depth, the integral vectors
    // inside the rational span of the placed source edges, written as
    // scaled-integer combinations of those edges. Their images must be
    // integral, which enforces the lattice relations long before a full
    // permutation is built.
    struct SatRow {
        int depth;                   // usable once this many edges exist
        std::vector<int64_t> coeff;  // over edges e_1..e_depth
        int64_t den;
    };
    std::vector<std::vector<SatRow>> sat_rows;  // new rows per depth
    std::vector<std::array<int64_t, kDim>> tgt_edges;  // image edges by level

    void build_saturation() {
        const int n = static_cast<int>(src.size());
        sat_rows.assign(n, {});
        if (n < 2) return;
        // Edge vectors in placement order.
        std::vector<std::array<int64_t, kDim>> e(n - 1);
        for (int i = 1; i < n; ++i) {
            LatticeVector d = src[order[i]] - src[order[0]];
            for (int k = 0; k < kDim; ++k) e[i - 1][k] = d.c[k];
        }
        for (int depth = 1; depth < n; ++depth) {
            // Basis of span_Q(e_1..e_depth) ∩ Z^24 in edge coordinates:
            // integer kernel of the complement constraints.
            QMatrix em(depth, kDim);
            for (int i = 0; i < depth; ++i)
                for (int k = 0; k < kDim; ++k) em.at(i, k) = Rat(static_cast<long>(e[i][k]));
            // Complete the row span with unit rows.
            std::vector<RatVec> rows;
            std::vector<int> unit_cols;
            auto reduce = [&](RatVec r) {
                for (const RatVec& er : rows) {
                    int lead = -1;
                    for (int k = 0; k < kDim; ++k)
                        if (er[k] != 0) { lead = k; break; }
                    if (lead >= 0 && r[lead] != 0) {
                        Rat f = r[lead] / er[lead];
                        for (int k = 0; k < kDim; ++k) r[k] -= f * er[k];
                    }
                }
                return r;
            };
            std::vector<int> indep_edges;
            for (int i = 0; i < depth; ++i) {
                RatVec r(kDim);
                for (int k = 0; k < kDim; ++k) r[k] = Rat(static_cast<long>(e[i][k]));
                RatVec red = reduce(r);
                if (!std::all_of(red.begin(), red.end(), [](const Rat& v) { return v == 0; })) {
                    rows.push_back(red);
                    indep_edges.push_back(i);
                }
            }
            const std::size_t rank = rows.size();
            for (int k = 0; k < kDim && rows.size() < kDim; ++k) {
                RatVec r(kDim);
                r[k] = 1;
                RatVec red = reduce(r);
                if (!std::all_of(red.begin(), red.end(), [](const Rat& v) { return v == 0; })) {
                    rows.push_back(red);
                    unit_cols.push_back(k);
                }
            }
            // Full basis: independent edges then unit completions; invert.
            QMatrix basis(kDim, kDim);
            int rr = 0;
            for (int i : indep_edges) {
                for (int k = 0; k < kDim; ++k) basis.at(rr, k) = Rat(static_cast<long>(e[i][k]));
                ++rr;
            }
            for (int k : unit_cols) {
                basis.at(rr, k) = 1;
                ++rr;
            }
            QMatrix binv = solve_matrix(basis, QMatrix::identity(kDim));
            // z in the span  <=>  tail coordinates of z * binv vanish; the
            // integer z's give the saturation. Integer kernel of the scaled
            // tail-columns block.
            IntMat constraint(kDim, IntVec(kDim - rank));
            Int cden = 1;
            for (int zrow = 0; zrow < kDim; ++zrow)
                for (std::size_t t = rank; t < kDim; ++t) cden = lcm(cden, den(binv.at(zrow, t)));
            for (int zrow = 0; zrow < kDim; ++zrow)
                for (std::size_t t = rank; t < kDim; ++t) {
                    const Rat& v = binv.at(zrow, t);
                    constraint[zrow][t - rank] = num(v) * (cden / den(v));
                }
            IntMat ker = rank == kDim ? IntMat{} : left_kernel(constraint);
            if (rank == kDim) {
                // whole space: every unit vector is in the span
                ker.assign(kDim, IntVec(kDim, 0));
                for (int k = 0; k < kDim; ++k) ker[k][k] = 1;
            }
            // Keep only saturation vectors outside the previous span: they
            // are the constraints that become testable at this depth.
            std::vector<RatVec> prev_ech;
            auto prev_reduce = [&](RatVec r) {
                for (const RatVec& er : prev_ech) {
                    int lead = -1;
                    for (int k = 0; k < kDim; ++k)
                        if (er[k] != 0) { lead = k; break; }
                    if (lead >= 0 && r[lead] != 0) {
                        Rat f = r[lead] / er[lead];
                        for (int k = 0; k < kDim; ++k) r[k] -= f * er[k];
                    }
                }
                return r;
            };
            for (int i = 0; i + 1 < depth; ++i) {
                RatVec r(kDim);
                for (int k = 0; k < kDim; ++k) r[k] = Rat(static_cast<long>(e[i][k]));
                RatVec red = prev_reduce(r);
                if (!std::all_of(red.begin(), red.end(), [](const Rat& v) { return v == 0; }))
                    prev_ech.push_back(red);
            }
            std::vector<SatRow> fresh;
            for (std::size_t zi = 0; zi < ker.size(); ++zi) {
                const IntVec& z = ker[zi];
                {
                    RatVec r(kDim);
                    for (int k = 0; k < kDim; ++k) {
                        if (mpz_fits_slong_p(z[k].get_mpz_t()) == 0) { r.clear(); break; }
                        r[k] = Rat(z[k].get_si());
                    }
                    if (r.empty()) continue;
                    RatVec red = prev_reduce(r);
                    bool in_prev = std::all_of(red.begin(), red.end(),
                                               [](const Rat& v) { return v == 0; });
                    if (in_prev) continue;
                }
                // x = z * binv, first `rank` coords over independent edges
                SatRow rowout;
                rowout.depth = depth;
                rowout.coeff.assign(depth, 0);
                Int rden = 1;
                std::vector<Rat> x(rank);
                for (std::size_t t = 0; t < rank; ++t) {
                    Rat s;
                    for (int k = 0; k < kDim; ++k)
                        if (z[k] != 0) s += Rat(z[k]) * binv.at(k, t);
                    x[t] = s;
                    rden = lcm(rden, den(s));
                }
                if (rden == 1) continue;  // integral combos prune nothing
                if (mpz_fits_slong_p(rden.get_mpz_t()) == 0) continue;
                rowout.den = rden.get_si();
                bool fits = true;
                for (std::size_t t = 0; t < rank; ++t) {
                    Rat scaled = x[t] * Rat(rden);
                    if (!is_integer(scaled) || mpz_fits_slong_p(num(scaled).get_mpz_t()) == 0) {
                        fits = false;
                        break;
                    }
                    rowout.coeff[indep_edges[t]] = num(scaled).get_si();
                }
                if (fits) fresh.push_back(std::move(rowout));
            }
            sat_rows[depth] = std::move(fresh);
        }
    }

    Searcher(const LatticeModel& m, const std::vector<LatticeVector>& s,
             const std::vector<LatticeVector>& d, const MapSearchOptions& o, const QPoint* sa,
             const QPoint* da)
        : model(m), src(s), dst(d), opt(o), src_anchor(sa), dst_anchor(da) {}

    void run() {
        const int n = static_cast<int>(src.size());
        if (src.size() != dst.size()) {
            result.complete = true;
            return;
        }
        a.build(model, src, src_anchor, opt.lattice_only);
        b.build(model, dst, dst_anchor, opt.lattice_only);

        image.assign(n, -1);
        used.assign(n, 0);

        // Pins first, then rarest-signature vertices.
        std::vector<char> ordered(n, 0);
        for (auto [s, t] : opt.pinned) {
            order.push_back(s);
            ordered[s] = 1;
            (void)t;
        }
        std::map<std::vector<std::tuple<int, Int, Int>>, int> class_size;
        for (int i = 0; i < n; ++i) ++class_size[a.signature[i]];
        std::vector<int> rest;
        for (int i = 0; i < n; ++i)
            if (!ordered[i]) rest.push_back(i);
        std::sort(rest.begin(), rest.end(), [&](int x, int y) {
            int cx = class_size[a.signature[x]], cy = class_size[a.signature[y]];
            if (cx != cy) return cx < cy;
            return x < y;
        });
        order.insert(order.end(), rest.begin(), rest.end());

        if (opt.lattice_only) build_saturation();
        tgt_edges.assign(n > 0 ? n : 1, {});

        try {
            place(0);
            result.complete = result.maps.size() < opt.max_results;
        } catch (const budget_exceeded&) {
            result.complete = false;
        }
    }

    void place(std::size_t level) {
        if (result.maps.size() >= opt.max_results) return;
        if (++result.nodes > opt.max_nodes) throw budget_exceeded("congruence search node budget");
        const int n = static_cast<int>(src.size());
        if (level == order.size()) {
            CongruenceMap map;
            map.perm = image;
            if (opt.lattice_only) {
                AffineMap aff = induced_affine(model, src, dst, map);
                if (!aff.is_lattice_map()) return;
            }
            result.maps.push_back(std::move(map));
            return;
        }
        const int s = order[level];
        int forced = -1;
        for (auto [ps, pt] : opt.pinned)
            if (ps == s) forced = pt;
        for (int t = 0; t < n; ++t) {
            if (used[t] || (forced >= 0 && t != forced)) continue;
            if (!a.vertex_compatible(s, b, t)) continue;
            bool ok = true;
            for (std::size_t l = 0; l < level && ok; ++l) {
                int s2 = order[l], t2 = image[s2];
                if (a.dist[s][s2] != b.dist[t][t2]) ok = false;
                if (ok && opt.lattice_only &&
                    (a.pair_tor[s][s2] != b.pair_tor[t][t2] || a.pair_tor[s2][s] != b.pair_tor[t2][t]))
                    ok = false;
            }
            if (!ok) continue;
            if (ok && opt.lattice_only && level >= 1) {
                const LatticeVector d = dst[t] - dst[image[order[0]]];
                for (int k = 0; k < kDim; ++k) tgt_edges[level - 1][k] = d.c[k];
                for (const SatRow& rowc : sat_rows[level]) {
                    for (int k = 0; k < kDim && ok; ++k) {
                        int64_t s2 = 0;
                        for (int j = 0; j < rowc.depth; ++j)
                            if (rowc.coeff[j]) s2 += rowc.coeff[j] * tgt_edges[j][k];
                        if (s2 % rowc.den != 0) ok = false;
                    }
                    if (!ok) break;
                }
                if (!ok) continue;
            }
            image[s] = t;
            used[t] = 1;
            place(level + 1);
            image[s] = -1;
            used[t] = 0;
            if (result.maps.size() >= opt.max_results) return;
        }
    }
};

// First maximal independent subset of the edge vectors from pts[0].
std::vector<int> independent_edges(const std::vector<LatticeVector>& pts) {
    std::vector<int> indep;
    std::vector<RatVec> rows;
    for (std::size_t i = 1; i < pts.size(); ++i) {
        LatticeVector e = pts[i] - pts[0];
        RatVec r(kDim);
        for (int k = 0; k < kDim; ++k) r[k] = Rat(e.c[k]);
        for (const RatVec& er : rows) {
            int lead = -1;
            for (int k = 0; k < kDim; ++k)
                if (er[k] != 0) {
                    lead = k;
                    break;
                }
            if (lead >= 0 && r[lead] != 0) {
                Rat f = r[lead] / er[lead];
                for (int k = 0; k < kDim; ++k) r[k] -= f * er[k];
            }
        }
        if (!std::all_of(r.begin(), r.end(), [](const Rat& v) { return v == 0; })) {
            rows.push_back(r);
            indep.push_back(static_cast<int>(i));
            if (indep.size() == kDim) break;
        }
    }
    return indep;
}

}  // namespace

QPoint AffineMap::apply(const QPoint& x) const {
    QPoint y = translation;
    for (int i = 0; i < kDim; ++i) {
        if (x.c[i] == 0) continue;
        for (int j = 0; j < kDim; ++j) {
            const Rat& m = linear.at(i, j);
            if (m != 0) y.c[j] += x.c[i] * m;
        }
    }
    return y;
}

bool AffineMap::is_lattice_map() const {
    for (int i = 0; i < kDim; ++i) {
        if (!is_integer(translation.c[i])) return false;
        for (int j = 0; j < kDim; ++j)
            if (!is_integer(linear.at(i, j))) return false;
    }
    return true;
}

AffineMap induced_affine(const LatticeModel& model, const std::vector<LatticeVector>& src,
                         const std::vector<LatticeVector>& dst, const CongruenceMap& map) {
    (void)model;
    std::vector<int> indep = independent_edges(src);
    if (indep.size() != kDim) throw degenerate_span("source does not affinely span the space");
    QMatrix s(kDim, kDim), t(kDim, kDim);
    const LatticeVector& p0 = src[0];
    const LatticeVector& q0 = dst[map.perm[0]];
    for (int r = 0; r < kDim; ++r) {
        LatticeVector es = src[indep[r]] - p0;
        LatticeVector et = dst[map.perm[indep[r]]] - q0;
        for (int k = 0; k < kDim; ++k) {
            s.at(r, k) = Rat(es.c[k]);
            t.at(r, k) = Rat(et.c[k]);
        }
    }
    AffineMap out;
    out.linear = solve_matrix(s, t);
    QPoint p0m;  // p0 * M
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j)
            if (p0.c[i] != 0) p0m.c[j] += Rat(p0.c[i]) * out.linear.at(i, j);
    for (int j = 0; j < kDim; ++j) out.translation.c[j] = Rat(q0.c[j]) - p0m.c[j];
    // The map must carry every correspondence, not just the independent ones.
    for (std::size_t i = 0; i < src.size(); ++i) {
        QPoint img = out.apply(QPoint::from(src[i]));
        if (!(img == QPoint::from(dst[map.perm[i]])))
            throw domain_error("congruence map does not extend to an affine isometry");
    }
    return out;
}

MapSearchResult search_congruence_maps(const LatticeModel& model,
                                       const std::vector<LatticeVector>& src,
                                       const std::vector<LatticeVector>& dst,
                                       const MapSearchOptions& opt) {
    std::optional<QPoint> ca, cb;
    if (opt.lattice_only) {
        try {
            ca = circumcenter(model, src).first;
            cb = circumcenter(model, dst).first;
        } catch (const no_circumsphere&) {
            // fall back to anchor-free invariants
        }
    }
    Searcher s(model, src, dst, opt, ca ? &*ca : nullptr, cb ? &*cb : nullptr);
    s.run();
    return std::move(s.result);
}

std::vector<CongruenceMap> congruence_maps(const LatticeModel& model,
                                           const std::vector<LatticeVector>& src,
                                           const std::vector<LatticeVector>& dst,
                                           std::uint64_t max_nodes) {
    MapSearchOptions opt;
    opt.max_nodes = max_nodes;
    MapSearchResult r = search_congruence_maps(model, src, dst, opt);
    if (!r.complete) throw resource_limit("congruence map enumeration exceeded its budget");
    return r.maps;
}

GroupInfo hull_aut(const Hole& hole) {
    const auto& comps = hole.graph().components;
    const auto& verts = hole.record().vertices;
    const LatticeModel& model = hole.model();
    GroupInfo info;

    // Per-component symmetry counts and generator maps.
    const int n = hole.vertex_count();
    std::map<std::string, std::vector<int>> classes;  // token -> component indices
    for (std::size_t ci = 0; ci < comps.size(); ++ci) classes[comps[ci].token()].push_back(ci);

    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
        std::vector<LatticeVector> pts;
        for (int idx : comps[ci].nodes) pts.push_back(verts[idx]);
        auto maps = congruence_maps(model, pts, pts);
        info.order *= static_cast<long>(maps.size());
        for (const auto& m : maps) {
            bool ident = true;
            for (std::size_t i = 0; i < m.perm.size(); ++i)
                if (m.perm[i] != static_cast<int>(i)) ident = false;
            if (ident) continue;
            CongruenceMap full;
            full.perm.resize(n);
            for (int i = 0; i < n; ++i) full.perm[i] = i;
            for (std::size_t i = 0; i < m.perm.size(); ++i)
                full.perm[comps[ci].nodes[i]] = comps[ci].nodes[m.perm[i]];
            info.generators.push_back(std::move(full));
        }
    }
    for (auto& [token, members] : classes) {
        Int f = 1;
        for (std::size_t i = 2; i <= members.size(); ++i) f *= static_cast<long>(i);
        info.order *= f;
        // Adjacent transpositions of congruent components.
        for (std::size_t i = 0; i + 1 < members.size(); ++i) {
            std::vector<LatticeVector> p1, p2;
            for (int idx : comps[members[i]].nodes) p1.push_back(verts[idx]);
            for (int idx : comps[members[i + 1]].nodes) p2.push_back(verts[idx]);
            MapSearchOptions one;
            one.max_results = 1;
            auto r = search_congruence_maps(model, p1, p2, one);
            if (r.maps.empty()) throw domain_error("components with equal type are not congruent");
            CongruenceMap full;
            full.perm.resize(n);
            for (int k = 0; k < n; ++k) full.perm[k] = k;
            const auto& fwd = r.maps[0].perm;
            for (std::size_t k = 0; k < fwd.size(); ++k) {
                int from = comps[members[i]].nodes[k];
                int to = comps[members[i + 1]].nodes[fwd[k]];
                full.perm[from] = to;
                full.perm[to] = from;
            }
            info.generators.push_back(std::move(full));
        }
    }
    return info;
}

GroupInfo lattice_aut(const Hole& hole, std::uint64_t max_nodes) {
    MapSearchOptions opt;
    opt.lattice_only = true;
    opt.max_nodes = max_nodes;
    MapSearchResult r =
        search_congruence_maps(hole.model(), hole.record().vertices, hole.record().vertices, opt);
    if (!r.complete) throw budget_exceeded("lattice automorphism search exceeded its budget");
    GroupInfo info;
    info.order = static_cast<long>(r.maps.size());
    info.generators = std::move(r.maps);
    return info;
}

EquivalenceResult equivalent(const Hole& h1, const Hole& h2, std::uint64_t max_nodes) {
    EquivalenceResult out;
    // Invariant filters certify most inequivalences.
    if (!same_type(h1.graph().type_string(), h2.graph().type_string())) {
        out.certified = true;
        out.detail = "hole types differ";
        return out;
    }
    if (h1.r2() != h2.r2()) {
        out.certified = true;
        out.detail = "radii differ";
        return out;
    }
    Int m1 = torsion_order(h1.center()), m2 = torsion_order(h2.center());
    if (m1 != m2) {
        out.certified = true;
        out.detail = "torsion orders differ: m=" + m1.get_str() + " vs m=" + m2.get_str();
        return out;
    }
    MapSearchOptions opt;
    opt.lattice_only = true;
    opt.max_results = 1;
    opt.max_nodes = max_nodes;
    MapSearchResult r =
        search_congruence_maps(h1.model(), h1.record().vertices, h2.record().vertices, opt);
    if (!r.maps.empty()) {
        out.equivalent = true;
        out.certified = true;
        out.map = induced_affine(h1.model(), h1.record().vertices, h2.record().vertices, r.maps[0]);
        out.detail = "lattice-preserving congruence map found";
        return out;
    }
    out.certified = r.complete;
    out.detail = r.complete ? "congruence map search exhausted" : "search budget exceeded";
    return out;
}

}  // namespace leech
