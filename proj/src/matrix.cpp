#include "leech/matrix.hpp"

#include <algorithm>
#include <utility>

namespace leech {

namespace {

// Clears denominators row by row; returns the integer matrix and the product
// of the row scales.
std::pair<IntMat, Int> integerize(const QMatrix& m) {
    IntMat w(m.rows(), IntVec(m.cols()));
    Int scale = 1;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        Int l = 1;
        for (std::size_t j = 0; j < m.cols(); ++j) l = lcm(l, den(m.at(i, j)));
        for (std::size_t j = 0; j < m.cols(); ++j) {
            const Rat& v = m.at(i, j);
            w[i][j] = num(v) * (l / den(v));
        }
        scale *= l;
    }
    return {std::move(w), std::move(scale)};
}

// Fraction-free elimination on an integer matrix with optional augmented
// columns. Returns the sign of the row permutation, or 0 when a pivot
// cannot be found (rank deficiency in the leading n columns).
int bareiss(IntMat& w, std::size_t n) {
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        std::size_t p = k;
        while (p < w.size() && w[p][k] == 0) ++p;
        if (p == w.size()) return 0;
        if (p != k) {
            std::swap(w[p], w[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < w.size(); ++i) {
            for (std::size_t j = k + 1; j < w[i].size(); ++j) {
                w[i][j] = (w[i][j] * w[k][k] - w[i][k] * w[k][j]) / prev;
            }
            w[i][k] = 0;
        }
        prev = w[k][k];
    }
    if (w[n - 1][n - 1] == 0) return 0;
    return sign;
}

}  // namespace

Rat det(const QMatrix& m) {
    if (m.rows() != m.cols()) throw domain_error("det of non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    auto [w, scale] = integerize(m);
    int sign = bareiss(w, n);
    if (sign == 0) return Rat(0);
    return make_rat(sign * w[n - 1][n - 1], scale);
}

RatVec linear_solve(const QMatrix& a, const RatVec& b) {
    if (a.rows() != a.cols() || b.size() != a.rows())
        throw domain_error("linear_solve dimension mismatch");
    const std::size_t n = a.rows();
    QMatrix rhs(n, 1);
    for (std::size_t i = 0; i < n; ++i) rhs.at(i, 0) = b[i];
    QMatrix x = solve_matrix(a, rhs);
    RatVec out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x.at(i, 0);
    return out;
}

QMatrix solve_matrix(const QMatrix& a, const QMatrix& b) {
    if (a.rows() != a.cols() || b.rows() != a.rows())
        throw domain_error("solve_matrix dimension mismatch");
    const std::size_t n = a.rows();
    const std::size_t m = b.cols();
    // Augment, clear denominators, run fraction-free elimination, then
    // back-substitute over the rationals.
    QMatrix aug(n, n + m);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = a.at(i, j);
        for (std::size_t j = 0; j < m; ++j) aug.at(i, n + j) = b.at(i, j);
    }
    auto [w, scale] = integerize(aug);
    (void)scale;
    if (bareiss(w, n) == 0) throw singular_matrix("singular system");
    QMatrix x(n, m);
    for (std::size_t c = 0; c < m; ++c) {
        for (std::size_t i = n; i-- > 0;) {
            Rat s = Rat(w[i][n + c]);
            for (std::size_t j = i + 1; j < n; ++j) s -= Rat(w[i][j]) * x.at(j, c);
            if (w[i][i] == 0) throw singular_matrix("singular system");
            x.at(i, c) = s / Rat(w[i][i]);
        }
    }
    return x;
}

std::size_t rank(QMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && m.at(p, c) == 0) ++p;
        if (p == m.rows()) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(p, j), m.at(r, j));
        for (std::size_t i = r + 1; i < m.rows(); ++i) {
            if (m.at(i, c) == 0) continue;
            Rat f = m.at(i, c) / m.at(r, c);
            for (std::size_t j = c; j < m.cols(); ++j) m.at(i, j) -= f * m.at(r, j);
        }
        ++r;
    }
    return r;
}

QMatrix matmul(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw domain_error("matmul dimension mismatch");
    QMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a.at(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j)
                c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

IntMat hnf(IntMat m) {
    if (m.empty()) return m;
    const std::size_t cols = m[0].size();
    std::size_t row = 0;
    for (std::size_t c = 0; c < cols && row < m.size(); ++c) {
        // Repeated gcd elimination in column c below `row`.
        while (true) {
            std::size_t p = m.size();
            for (std::size_t i = row; i < m.size(); ++i) {
                if (m[i][c] != 0 && (p == m.size() || cmp(abs(m[i][c]), abs(m[p][c])) < 0))
                    p = i;
            }
            if (p == m.size()) break;  // column all zero
            std::swap(m[p], m[row]);
            bool clean = true;
            for (std::size_t i = row + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[row][c].get_mpz_t());
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[row][j];
                if (m[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (m[row][c] == 0) continue;
        if (m[row][c] < 0)
            for (std::size_t j = 0; j < cols; ++j) m[row][j] = -m[row][j];
        for (std::size_t i = 0; i < row; ++i) {
            Int q;
            mpz_fdiv_q(q.get_mpz_t(), m[i][c].get_mpz_t(), m[row][c].get_mpz_t());
            if (q != 0)
                for (std::size_t j = 0; j < cols; ++j) m[i][j] -= q * m[row][j];
        }
        ++row;
    }
    m.resize(row);
    return m;
}

IntMat left_kernel(const IntMat& m) {
    if (m.empty()) return {};
    const std::size_t k = m.size();
    const std::size_t n = m[0].size();
    // HNF of [M | I]; rows whose M-part vanished carry the kernel.
    IntMat aug(k, IntVec(n + k));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) aug[i][j] = m[i][j];
        aug[i][n + i] = 1;
    }
    // Same elimination as hnf(), but only columns < n drive pivoting.
    std::size_t row = 0;
    for (std::size_t c = 0; c < n && row < aug.size(); ++c) {
        while (true) {
            std::size_t p = aug.size();
            for (std::size_t i = row; i < aug.size(); ++i)
                if (aug[i][c] != 0 && (p == aug.size() || cmp(abs(aug[i][c]), abs(aug[p][c])) < 0))
                    p = i;
            if (p == aug.size()) break;
            std::swap(aug[p], aug[row]);
            bool clean = true;
            for (std::size_t i = row + 1; i < aug.size(); ++i) {
                if (aug[i][c] == 0) continue;
                Int q;
                mpz_fdiv_q(q.get_mpz_t(), aug[i][c].get_mpz_t(), aug[row][c].get_mpz_t());
                for (std::size_t j = 0; j < n + k; ++j) aug[i][j] -= q * aug[row][j];
                if (aug[i][c] != 0) clean = false;
            }
            if (clean) break;
        }
        if (aug[row][c] != 0) ++row;
    }
    IntMat ker;
    for (std::size_t i = row; i < aug.size(); ++i) {
        bool zero = true;
        for (std::size_t j = 0; j < n; ++j)
            if (aug[i][j] != 0) zero = false;
        if (!zero) continue;
        ker.emplace_back(aug[i].begin() + n, aug[i].end());
    }
    return ker;
}

IntMat lattice_intersection(const IntMat& a, const IntMat& b) {
    if (a.empty() || b.empty()) return {};
    const std::size_t n = a[0].size();
    IntMat stacked = a;
    stacked.insert(stacked.end(), b.begin(), b.end());
    IntMat ker = left_kernel(stacked);
    // (x, y) with x a + y b = 0 gives x a = -(y b) in the intersection.
    IntMat out;
    for (const auto& xy : ker) {
        IntVec v(n);
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = 0; j < n; ++j) v[j] += xy[i] * a[i][j];
        bool zero = std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
        if (!zero) out.push_back(std::move(v));
    }
    return hnf(std::move(out));
}

}  // namespace leech
