#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "leech/matrix.hpp"
#include "leech/rat.hpp"

namespace leech {

inline constexpr int kDim = 24;

// A lattice element in coordinates with respect to the generator basis.
struct LatticeVector {
    std::array<int32_t, kDim> c{};

    auto operator<=>(const LatticeVector&) const = default;

    LatticeVector operator+(const LatticeVector& o) const {
        LatticeVector r;
        for (int i = 0; i < kDim; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    LatticeVector operator-(const LatticeVector& o) const {
        LatticeVector r;
        for (int i = 0; i < kDim; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    LatticeVector operator-() const {
        LatticeVector r;
        for (int i = 0; i < kDim; ++i) r.c[i] = -c[i];
        return r;
    }
    bool is_zero() const {
        for (int i = 0; i < kDim; ++i)
            if (c[i] != 0) return false;
        return true;
    }
};

// A rational point of Lambda (x) Q in the same basis coordinates.
struct QPoint {
    std::array<Rat, kDim> c{};

    static QPoint from(const LatticeVector& v) {
        QPoint p;
        for (int i = 0; i < kDim; ++i) p.c[i] = Rat(v.c[i]);
        return p;
    }
    QPoint operator+(const LatticeVector& v) const {
        QPoint p;
        for (int i = 0; i < kDim; ++i) p.c[i] = c[i] + v.c[i];
        return p;
    }
    QPoint operator-(const QPoint& o) const {
        QPoint p;
        for (int i = 0; i < kDim; ++i) p.c[i] = c[i] - o.c[i];
        return p;
    }
    bool operator==(const QPoint& o) const { return c == o.c; }
};

// Least m >= 1 with m*v integral; coordinates are taken in a Z-basis, so
// this is the lcm of the coordinate denominators.
Int torsion_order(const QPoint& v);

struct EnumOptions {
    std::uint64_t max_nodes = 0;  // 0 = unlimited
    int threads = 1;
};

// The Leech lattice: a generator matrix (rows, in units of 1/sqrt(8)) and
// the integer Gram matrix G = B B^T / 8. Construction validates evenness,
// unimodularity and (optionally) the minimal norm.
class LatticeModel {
public:
    using Basis = std::array<std::array<int64_t, kDim>, kDim>;
    using Gram = std::array<std::array<int64_t, kDim>, kDim>;

    static LatticeModel from_basis(const Basis& b);
    // File format: 24 rows of 24 integers; '#' starts a comment.
    static LatticeModel load_file(const std::string& path);
    // Bundled Conway--Sloane generator matrix.
    static const LatticeModel& standard();

    const Basis& basis() const { return basis_; }
    const Gram& gram() const { return gram_; }

    int64_t inner(const LatticeVector& x, const LatticeVector& y) const;
    int64_t norm(const LatticeVector& x) const { return inner(x, x); }
    Rat inner_q(const QPoint& x, const QPoint& y) const;
    Rat dist2(const QPoint& x, const QPoint& y) const;
    Rat dist2(const QPoint& x, const LatticeVector& y) const {
        return dist2(x, QPoint::from(y));
    }
    int64_t dist2_ll(const LatticeVector& x, const LatticeVector& y) const {
        return norm(x - y);
    }

    // G * v, for fast repeated inner products against a fixed vector.
    std::array<int64_t, kDim> gram_times(const LatticeVector& v) const;

    // All lattice points with ||x - center||^2 <= r2, visited in no
    // particular order. Returns false if the visitor aborted.
    bool ball_visit(const QPoint& center, const Rat& r2,
                    const std::function<bool(const LatticeVector&)>& visit,
                    const EnumOptions& opt = {}) const;

    // Exactly the points at squared distance <= r2, sorted lexicographically.
    std::vector<LatticeVector> sphere_points(const QPoint& center, const Rat& r2,
                                             const EnumOptions& opt = {}) const;

    std::uint64_t shell_count(int64_t norm2, const EnumOptions& opt = {}) const;
    std::vector<LatticeVector> shell(int64_t norm2, const EnumOptions& opt = {}) const;
    bool shell_visit(int64_t norm2, const std::function<bool(const LatticeVector&)>& visit,
                     const EnumOptions& opt = {}) const;

    // Squared distance to the lattice and the set of nearest points.
    std::pair<Rat, std::vector<LatticeVector>> lattice_distance(
        const QPoint& x, const EnumOptions& opt = {}) const;

    // A deterministic representative of the given shell, for search pinning.
    LatticeVector some_vector_of_norm(int64_t norm2) const;

private:
    LatticeModel() = default;
    void validate_and_finish();

    Basis basis_{};
    Gram gram_{};

    // Exact LDL^T data of G: G = L D L^T, L unit lower triangular.
    std::array<Rat, kDim> ldl_d_;
    std::array<std::array<Rat, kDim>, kDim> ldl_l_;
    // Per-coordinate range bound data: diagonal of G^{-1}.
    std::array<Rat, kDim> ginv_diag_;
};

}  // namespace leech
