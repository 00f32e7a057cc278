#include "leech/hole.hpp"

#include <algorithm>
#include <numeric>

#include "leech/errors.hpp"
#include "leech/matrix.hpp"

namespace leech {

namespace {

Int factorial(int n) {
    Int f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

// Rational dot product of (x - y) against a precomputed integer G*e column.
Rat dot_against(const QPoint& x, const LatticeVector& y, const std::array<int64_t, kDim>& ge) {
    Rat s;
    for (int i = 0; i < kDim; ++i) {
        if (ge[i] == 0) continue;
        s += (x.c[i] - y.c[i]) * Rat(static_cast<long>(ge[i]));
    }
    return s;
}

// Foot of the perpendicular from x onto the affine hull of pts.
std::pair<QPoint, Rat> foot_of_affine(const LatticeModel& model, const QPoint& x,
                                      const std::vector<LatticeVector>& pts) {
    if (pts.empty()) throw domain_error("foot of empty point set");
    const LatticeVector& p0 = pts[0];
    const int m = static_cast<int>(pts.size()) - 1;
    if (m == 0) {
        QPoint h = QPoint::from(p0);
        return {h, model.dist2(x, h)};
    }
    std::vector<LatticeVector> e(m);
    for (int i = 0; i < m; ++i) e[i] = pts[i + 1] - p0;
    QMatrix a(m, m);
    RatVec b(m);
    std::vector<std::array<int64_t, kDim>> ge(m);
    for (int i = 0; i < m; ++i) ge[i] = model.gram_times(e[i]);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            int64_t v = 0;
            for (int k = 0; k < kDim; ++k) v += e[i].c[k] * ge[j][k];
            a.at(i, j) = Rat(static_cast<long>(v));
            a.at(j, i) = a.at(i, j);
        }
        b[i] = dot_against(x, p0, ge[i]);
    }
    RatVec t;
    try {
        t = linear_solve(a, b);
    } catch (const singular_matrix&) {
        throw no_circumsphere("affinely dependent face vertices");
    }
    QPoint h = QPoint::from(p0);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < kDim; ++k) h.c[k] += t[i] * e[i].c[k];
    return {h, model.dist2(x, h)};
}

// Barycentric coordinates of x in the affine hull of pts; empty when x is
// not in the hull.
std::optional<RatVec> barycentric(const LatticeModel& model, const QPoint& x,
                                  const std::vector<LatticeVector>& pts) {
    const int m = static_cast<int>(pts.size()) - 1;
    const LatticeVector& p0 = pts[0];
    if (m == 0) {
        if (QPoint::from(p0) == x) return RatVec{Rat(1)};
        return std::nullopt;
    }
    std::vector<LatticeVector> e(m);
    for (int i = 0; i < m; ++i) e[i] = pts[i + 1] - p0;
    QMatrix a(m, m);
    RatVec b(m);
    std::vector<std::array<int64_t, kDim>> ge(m);
    for (int i = 0; i < m; ++i) ge[i] = model.gram_times(e[i]);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j <= i; ++j) {
            int64_t v = 0;
            for (int k = 0; k < kDim; ++k) v += e[i].c[k] * ge[j][k];
            a.at(i, j) = Rat(static_cast<long>(v));
            a.at(j, i) = a.at(i, j);
        }
        b[i] = dot_against(x, p0, ge[i]);
    }
    RatVec t;
    try {
        t = linear_solve(a, b);
    } catch (const singular_matrix&) {
        return std::nullopt;
    }
    // Verify x really lies in the span.
    QPoint reached = QPoint::from(p0);
    for (int i = 0; i < m; ++i)
        for (int k = 0; k < kDim; ++k) reached.c[k] += t[i] * e[i].c[k];
    if (!(reached == x)) return std::nullopt;
    RatVec w(m + 1);
    Rat rest;
    for (int i = 0; i < m; ++i) {
        w[i + 1] = t[i];
        rest += t[i];
    }
    w[0] = Rat(1) - rest;
    return w;
}

}  // namespace

std::pair<QPoint, Rat> circumcenter(const LatticeModel& model,
                                    const std::vector<LatticeVector>& pts) {
    if (pts.empty()) throw domain_error("circumcenter of empty set");
    const LatticeVector& p0 = pts[0];
    const int m = static_cast<int>(pts.size()) - 1;
    if (m == 0) return {QPoint::from(p0), Rat(0)};

    std::vector<LatticeVector> e(m);
    for (int i = 0; i < m; ++i) e[i] = pts[i + 1] - p0;

    // Independent subset of the edge vectors by exact elimination.
    std::vector<int> indep;
    QMatrix ech(0u, 0u);
    {
        std::vector<RatVec> rows;
        for (int i = 0; i < m; ++i) {
            RatVec r(kDim);
            for (int k = 0; k < kDim; ++k) r[k] = Rat(e[i].c[k]);
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
            bool zero = std::all_of(r.begin(), r.end(), [](const Rat& v) { return v == 0; });
            if (!zero) {
                rows.push_back(r);
                indep.push_back(i);
            }
        }
    }
    const int r = static_cast<int>(indep.size());

    // c = p0 + sum t_j e_{indep[j]}, equidistance against every point.
    QMatrix a(r, r);
    RatVec b(r);
    std::vector<std::array<int64_t, kDim>> ge(r);
    for (int j = 0; j < r; ++j) ge[j] = model.gram_times(e[indep[j]]);
    auto norm_of = [&](const LatticeVector& v) { return model.norm(v); };
    for (int j = 0; j < r; ++j) {
        const LatticeVector& ej = e[indep[j]];
        for (int j2 = 0; j2 <= j; ++j2) {
            int64_t v = 0;
            for (int k = 0; k < kDim; ++k) v += ej.c[k] * ge[j2][k];
            a.at(j, j2) = Rat(static_cast<long>(v));
            a.at(j2, j) = a.at(j, j2);
        }
        // c . G e_j = (|p_j'|^2 - |p0|^2)/2 with p_j' = p0 + e_j;
        // substitute c = p0 + sum t e  =>  sum t (e . G e_j) = |e_j|^2 / 2.
        b[j] = make_rat(norm_of(ej), 2);
    }
    RatVec t;
    try {
        t = linear_solve(a, b);
    } catch (const singular_matrix&) {
        throw no_circumsphere("degenerate equidistance system");
    }
    QPoint c = QPoint::from(p0);
    for (int j = 0; j < r; ++j)
        for (int k = 0; k < kDim; ++k) c.c[k] += t[j] * e[indep[j]].c[k];
    Rat r2 = model.dist2(c, p0);
    for (int i = 0; i < m; ++i) {
        if (model.dist2(c, pts[i + 1]) != r2)
            throw no_circumsphere("points do not lie on a common sphere");
    }
    return {c, r2};
}

ValidationReport validate_hole(const LatticeModel& model, const HoleRecord& rec) {
    ValidationReport rep;
    const auto& v = rec.vertices;
    if (v.size() < 2) {
        rep.failures.push_back("fewer than two vertices");
        return rep;
    }
    // (a) duplicate-free and the distance rule
    DynkinGraph graph;
    bool distance_ok = true;
    try {
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = i + 1; j < v.size(); ++j)
                if (v[i] == v[j]) throw unknown_diagram("duplicate vertex");
        graph = dynkin_classify(model, v);
    } catch (const unknown_diagram& e) {
        distance_ok = false;
        rep.failures.push_back(std::string("distance rule: ") + e.what());
    }
    if (distance_ok) {
        rep.computed_type = graph.type_string();
        if (!rec.claimed_type.empty() && !same_type(rec.claimed_type, rep.computed_type))
            rep.failures.push_back("type mismatch: claimed " + rec.claimed_type + ", computed " +
                                   rep.computed_type);
    }
    // (b) circumcenter with R^2 <= 2
    bool have_center = false;
    try {
        auto [c, r2] = circumcenter(model, v);
        rep.center = c;
        rep.r2 = r2;
        have_center = true;
        if (r2 > 2) rep.failures.push_back("circumradius exceeds the covering radius");
    } catch (const no_circumsphere& e) {
        rep.failures.push_back(std::string("circumcenter: ") + e.what());
    }
    // (c) the circumsphere is empty: no foreign lattice point on or inside
    if (have_center && rep.r2 <= 2) {
        std::vector<LatticeVector> inside = model.sphere_points(rep.center, rep.r2);
        std::vector<LatticeVector> verts = v;
        std::sort(verts.begin(), verts.end());
        if (inside != verts) rep.failures.push_back("foreign lattice point on or inside the circumsphere");
    }
    // (d) deep/shallow structure
    if (distance_ok && have_center) {
        rep.deep = (rep.r2 == 2);
        if (rep.deep) {
            if (!graph.all_extended()) rep.failures.push_back("deep hole with an ordinary component");
            int sum = 0;
            for (const auto& comp : graph.components) sum += comp.k;  // n_i - 1 = k
            if (sum != kDim) rep.failures.push_back("deep hole with sum (n_i - 1) != 24");
            for (const auto& comp : graph.components) {
                std::vector<LatticeVector> pts;
                for (int idx : comp.nodes) pts.push_back(v[idx]);
                auto w = barycentric(model, rep.center, pts);
                bool interior = w.has_value() &&
                                std::all_of(w->begin(), w->end(), [](const Rat& x) { return x > 0; });
                if (!interior) {
                    rep.failures.push_back("center not interior to component " + comp.token());
                    break;
                }
            }
        } else {
            if (!graph.all_ordinary()) rep.failures.push_back("shallow hole with an extended component");
            if (v.size() != 25) rep.failures.push_back("shallow hole without 25 vertices");
            auto w = barycentric(model, rep.center, v);
            bool interior = w.has_value() && w->size() == v.size() &&
                            std::all_of(w->begin(), w->end(), [](const Rat& x) { return x > 0; });
            if (!interior) rep.failures.push_back("center not interior to the 24-simplex");
        }
    }
    rep.ok = rep.failures.empty();
    return rep;
}

Hole Hole::analyze(const LatticeModel& model, const HoleRecord& rec) {
    ValidationReport rep = validate_hole(model, rec);
    if (!rep.ok) {
        std::string msg = "invalid hole record '" + rec.id + "':";
        for (const auto& f : rep.failures) msg += " [" + f + "]";
        throw domain_error(msg);
    }
    Hole h;
    h.model_ = &model;
    h.rec_ = rec;
    h.graph_ = dynkin_classify(model, rec.vertices);
    h.center_ = rep.center;
    h.r2_ = rep.r2;
    h.deep_ = rep.deep;
    return h;
}

Int Hole::face_count() const {
    if (!deep_) return Int(static_cast<long>(rec_.vertices.size()));
    Int n = 1;
    for (const auto& comp : graph_.components) n *= static_cast<long>(comp.nodes.size());
    return n;
}

std::vector<Face> Hole::faces(std::uint64_t cap) const {
    if (face_count() > static_cast<long>(cap)) throw resource_limit("face list too large");
    std::vector<Face> out;
    if (!deep_) {
        for (int i = 0; i < vertex_count(); ++i) out.push_back(Face{{i}});
        return out;
    }
    std::vector<int> choice(graph_.components.size(), 0);
    while (true) {
        Face f;
        for (std::size_t i = 0; i < choice.size(); ++i)
            f.omitted.push_back(graph_.components[i].nodes[choice[i]]);
        out.push_back(std::move(f));
        std::size_t i = 0;
        for (; i < choice.size(); ++i) {
            if (++choice[i] < static_cast<int>(graph_.components[i].nodes.size())) break;
            choice[i] = 0;
        }
        if (i == choice.size()) break;
    }
    return out;
}

std::pair<QPoint, Rat> Hole::face_foot(const Face& f) const {
    std::vector<LatticeVector> pts;
    for (int i = 0; i < vertex_count(); ++i)
        if (std::find(f.omitted.begin(), f.omitted.end(), i) == f.omitted.end())
            pts.push_back(rec_.vertices[i]);
    return foot_of_affine(*model_, center_, pts);
}

Rat Hole::foot_dist2(const Face& f) const { return face_foot(f).second; }

const std::vector<std::vector<Rat>>& Hole::component_feet() const {
    if (!component_feet_.empty()) return component_feet_;
    component_feet_.resize(graph_.components.size());
    for (std::size_t i = 0; i < graph_.components.size(); ++i) {
        const auto& comp = graph_.components[i];
        for (int omit : comp.nodes) {
            std::vector<LatticeVector> pts;
            for (int idx : comp.nodes)
                if (idx != omit) pts.push_back(rec_.vertices[idx]);
            component_feet_[i].push_back(foot_of_affine(*model_, center_, pts).second);
        }
    }
    return component_feet_;
}

Rat Hole::foot_dist2_decomposed(const Face& f) const {
    if (!deep_) return foot_dist2(f);
    // The component spans through c are orthogonal, so the foot distance of
    // a joined face is the harmonic combination of the per-component feet.
    const auto& feet = component_feet();
    Rat inv_sum;
    for (std::size_t i = 0; i < graph_.components.size(); ++i) {
        const auto& comp = graph_.components[i];
        auto it = std::find_if(f.omitted.begin(), f.omitted.end(), [&](int idx) {
            return std::find(comp.nodes.begin(), comp.nodes.end(), idx) != comp.nodes.end();
        });
        if (it == f.omitted.end()) throw domain_error("face omits no vertex of a component");
        int pos = static_cast<int>(std::find(comp.nodes.begin(), comp.nodes.end(), *it) -
                                   comp.nodes.begin());
        inv_sum += rat_div(Rat(1), feet[i][pos]);
    }
    return rat_div(Rat(1), inv_sum);
}

Rat Hole::theta2() const {
    if (!deep_) {
        Rat best = Rat(-1);
        for (int i = 0; i < vertex_count(); ++i) {
            Rat f = foot_dist2(Face{{i}});
            if (best == -1 || f < best) best = f;
        }
        return r2_ - best;
    }
    const auto& feet = component_feet();
    Rat inv_sum;
    for (const auto& comp_feet : feet) {
        Rat m = *std::min_element(comp_feet.begin(), comp_feet.end());
        inv_sum += rat_div(Rat(1), m);
    }
    return r2_ - rat_div(Rat(1), inv_sum);
}

Rat Hole::theta2_brute(std::uint64_t face_cap) const {
    Rat best = Rat(-1);
    for (const Face& f : faces(face_cap)) {
        Rat d = foot_dist2(f);
        if (best == -1 || d < best) best = d;
    }
    return r2_ - best;
}

RootDiff Hole::sigma(const Rat& rr2) const {
    if (rr2 > r2_) return RootDiff(Rat(0), Rat(0), Rat(0), Rat(0));
    Rat t2 = theta2();
    if (rr2 < t2) throw domain_error("sigma: r below theta");
    return RootDiff(Rat(1), r2_ - t2, Rat(1), rr2 - t2);
}

HoleInvariants Hole::invariants() const {
    HoleInvariants inv;
    inv.center = center_;
    inv.r2 = r2_;
    inv.deep = deep_;
    inv.m = torsion_order(center_);
    if (deep_) {
        inv.s_infinite = true;
        inv.n = (inv.m % 2 == 0) ? inv.m / 2 : inv.m;
    } else {
        inv.s_infinite = false;
        inv.s = rat_div(Rat(1), Rat(2) - r2_);
        inv.n = num(inv.s);
    }
    if ((2 * inv.n) % inv.m != 0)
        throw domain_error("invariant violation: m does not divide 2N");
    inv.theta2 = theta2();
    if (face_count() <= 4096) {
        for (const Face& f : faces())
            inv.foot_dist2.push_back(deep_ ? foot_dist2_decomposed(f) : foot_dist2(f));
    }
    inv.volume = volume();
    return inv;
}

Rat Hole::volume_cone_sum(std::uint64_t face_cap) const {
    Rat sum;
    const Int f24 = factorial(kDim);
    for (const Face& f : faces(face_cap)) {
        QMatrix e(kDim, kDim);
        int r = 0;
        for (int i = 0; i < vertex_count(); ++i) {
            if (std::find(f.omitted.begin(), f.omitted.end(), i) != f.omitted.end()) continue;
            for (int k = 0; k < kDim; ++k) e.at(r, k) = Rat(rec_.vertices[i].c[k]) - center_.c[k];
            ++r;
        }
        if (r != kDim) throw domain_error("face does not have 24 vertices");
        sum += abs(det(e));
    }
    return sum / Rat(f24);
}

Rat Hole::volume_factorized() const {
    if (!deep_) return volume();
    // Orthogonal-join identity: vol = prod_i sqrt(det_i) / 24!, where det_i
    // is the edge Gram determinant of component i.
    Rat prod = Rat(1);
    for (const auto& comp : graph_.components) {
        const int k = static_cast<int>(comp.nodes.size()) - 1;
        QMatrix a(k, k);
        std::vector<LatticeVector> e(k);
        for (int i = 0; i < k; ++i)
            e[i] = rec_.vertices[comp.nodes[i + 1]] - rec_.vertices[comp.nodes[0]];
        for (int i = 0; i < k; ++i)
            for (int j = 0; j <= i; ++j) {
                a.at(i, j) = Rat(static_cast<long>(model_->inner(e[i], e[j])));
                a.at(j, i) = a.at(i, j);
            }
        prod *= det(a);
    }
    if (!is_perfect_square(num(prod)) || !is_perfect_square(den(prod)))
        throw domain_error("orthogonal-join determinant product is not a perfect square");
    Rat root = make_rat(isqrt(num(prod)), isqrt(den(prod)));
    return root / Rat(factorial(kDim));
}

Rat Hole::volume() const {
    if (!deep_) {
        // 24-simplex: single determinant.
        QMatrix e(kDim, kDim);
        for (int i = 0; i < kDim; ++i)
            for (int k = 0; k < kDim; ++k)
                e.at(i, k) = Rat(rec_.vertices[i + 1].c[k] - rec_.vertices[0].c[k]);
        return abs(det(e)) / Rat(factorial(kDim));
    }
    if (face_count() <= 4096) return volume_cone_sum();
    return volume_factorized();
}

}  // namespace leech
