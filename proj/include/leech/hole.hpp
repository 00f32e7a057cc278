#pragma once

#include <optional>
#include <string>
#include <vector>

#include "leech/dynkin.hpp"
#include "leech/lattice.hpp"
#include "leech/surd.hpp"

namespace leech {

struct HoleRecord {
    std::string id;
    std::string claimed_type;
    std::vector<LatticeVector> vertices;  // the set P_c
    std::optional<Int> g_published;
    std::optional<Rat> vol_published;
};

struct ValidationReport {
    bool ok = false;
    bool deep = false;
    std::string computed_type;
    QPoint center;
    Rat r2;
    std::vector<std::string> failures;
};

// Exact circumcenter of a point set lying on a common sphere, solved within
// the affine span; throws no_circumsphere when the equidistance system is
// inconsistent.
std::pair<QPoint, Rat> circumcenter(const LatticeModel& model,
                                    const std::vector<LatticeVector>& pts);

// A 23-dimensional face, identified by the omitted vertices (one per
// component for deep holes, a single vertex for shallow ones).
struct Face {
    std::vector<int> omitted;
};

ValidationReport validate_hole(const LatticeModel& model, const HoleRecord& rec);

struct HoleInvariants {
    QPoint center;
    Rat r2;
    bool deep = false;
    bool s_infinite = false;
    Rat s;  // meaningful when !s_infinite
    Int m;
    Int n;
    Rat theta2;
    std::vector<Rat> foot_dist2;  // per face, when the face list is materialized
    Rat volume;
};

// A validated hole with its graph and circumcenter; all per-hole geometry
// hangs off this.
class Hole {
public:
    // Validates first; throws domain_error carrying the failure list when
    // the record is not a genuine hole.
    static Hole analyze(const LatticeModel& model, const HoleRecord& rec);

    const LatticeModel& model() const { return *model_; }
    const HoleRecord& record() const { return rec_; }
    const DynkinGraph& graph() const { return graph_; }
    const QPoint& center() const { return center_; }
    const Rat& r2() const { return r2_; }
    bool deep() const { return deep_; }
    int vertex_count() const { return static_cast<int>(rec_.vertices.size()); }

    // Total number of 23-faces (a product over components for deep holes).
    Int face_count() const;
    // Materialized face list; throws resource_limit beyond cap.
    std::vector<Face> faces(std::uint64_t cap = 1u << 20) const;

    // Perpendicular foot of the center on the face span (equals the face
    // circumcenter) and its squared distance to the center.
    std::pair<QPoint, Rat> face_foot(const Face& f) const;
    Rat foot_dist2(const Face& f) const;
    // Same value through the per-component decomposition (deep holes).
    Rat foot_dist2_decomposed(const Face& f) const;

    Rat theta2() const;              // R^2 - min_j ||h_j - c||^2, decomposition-aware
    Rat theta2_brute(std::uint64_t face_cap = 1u << 20) const;

    // sigma(c, r) for r given by its square; 0 beyond the radius.
    RootDiff sigma(const Rat& r2) const;

    HoleInvariants invariants() const;

    Rat volume() const;  // cone sum when faces are few, factorized otherwise
    Rat volume_cone_sum(std::uint64_t face_cap = 1u << 20) const;
    Rat volume_factorized() const;  // deep holes: orthogonal-join product

private:
    Hole() = default;

    const LatticeModel* model_ = nullptr;
    HoleRecord rec_;
    DynkinGraph graph_;
    QPoint center_;
    Rat r2_;
    bool deep_ = false;

    // Cached per-component foot distances f[i][j]: distance^2 from the
    // center to the span of component i with its j-th vertex omitted.
    const std::vector<std::vector<Rat>>& component_feet() const;
    mutable std::vector<std::vector<Rat>> component_feet_;
};

}  // namespace leech
