#pragma once

#include <cstddef>
#include <vector>

#include "leech/rat.hpp"

namespace leech {

using RatVec = std::vector<Rat>;
using IntVec = std::vector<Int>;
using IntMat = std::vector<IntVec>;

// Dense rational matrix, row-major, dimensions fixed at construction.
class QMatrix {
public:
    QMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

    static QMatrix identity(std::size_t n) {
        QMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

    bool operator==(const QMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
    }

private:
    std::size_t rows_, cols_;
    std::vector<Rat> a_;
};

// Exact determinant by fraction-free (Bareiss) elimination.
Rat det(const QMatrix& m);

// Solves A x = b exactly; throws singular_matrix when det(A) = 0.
RatVec linear_solve(const QMatrix& a, const RatVec& b);

// Solves A X = B column-wise; throws singular_matrix.
QMatrix solve_matrix(const QMatrix& a, const QMatrix& b);

std::size_t rank(QMatrix m);

QMatrix matmul(const QMatrix& a, const QMatrix& b);

// Row-style Hermite normal form; the returned rows span the same Z-module
// as the input rows (zero rows dropped).
IntMat hnf(IntMat m);

// Basis of { x : x M = 0 } as rows.
IntMat left_kernel(const IntMat& m);

// Rows generating the intersection of the row-spans of a and b.
IntMat lattice_intersection(const IntMat& a, const IntMat& b);

}  // namespace leech
