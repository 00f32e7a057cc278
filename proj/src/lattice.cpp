#include "leech/lattice.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "leech/errors.hpp"

namespace leech {

namespace {

// Conway--Sloane generator matrix of the Leech lattice, rows in units of
// 1/sqrt(8).
constexpr int64_t kStandardBasis[kDim][kDim] = {
    {8, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 2, 2, 2, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 2, 2, 2, 0, 0, 0, 0, 2, 2, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 0, 0, 0, 0, 0, 0, 0, 0},
    {4, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 4, 0, 0, 0, 0, 0, 0, 0},
    {2, 0, 2, 0, 2, 0, 0, 2, 2, 2, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 0, 0, 0, 0},
    {2, 0, 0, 2, 2, 2, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0, 2, 0, 2, 0, 0, 0, 0, 0},
    {2, 2, 0, 0, 2, 0, 2, 0, 2, 0, 0, 2, 0, 0, 0, 0, 2, 0, 0, 2, 0, 0, 0, 0},
    {0, 2, 2, 2, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0, 2, 0, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0, 2, 2, 0, 0},
    {0, 0, 0, 0, 0, 0, 0, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0, 2, 0},
    {-3, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1},
};

int64_t floordiv(int64_t a, int64_t b) {
    int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

__int128 floordiv(__int128 a, __int128 b) {
    __int128 q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

Int floordiv(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

__int128 to_i128(const Int& v) {
    bool neg = v < 0;
    Int a = abs(v);
    __int128 r = 0;
    // 32-bit limbs via division; values here are < 2^126 by construction.
    const Int base = Int(4294967296UL);
    std::vector<uint32_t> limbs;
    while (a != 0) {
        Int rem = a % base;
        limbs.push_back(static_cast<uint32_t>(rem.get_ui()));
        a /= base;
    }
    for (auto it = limbs.rbegin(); it != limbs.rend(); ++it) r = (r << 32) | *it;
    return neg ? -r : r;
}

// Shared enumeration setup: scaled-integer form of the LDL data, the center,
// and the radius, so that all pruning tests are exact integer comparisons.
struct EnumSetup {
    Int qc, ql, qcql;          // center denominator, LDL denominator, product
    std::array<Int, kDim> cnum;       // center numerators over qc
    std::array<std::array<Int, kDim>, kDim> lnum;  // L * ql
    std::array<Int, kDim> w;   // per-level term weight
    Int b0;                    // scaled budget (radius)
    Int bigden;                // common denominator of all the terms
    std::array<int64_t, kDim> xlo, xhi;  // a-priori coordinate ranges
    bool fits_i128 = false;
};

EnumSetup make_setup(const QPoint& center, const Rat& r2,
                     const std::array<Rat, kDim>& ldl_d,
                     const std::array<std::array<Rat, kDim>, kDim>& ldl_l,
                     const std::array<Rat, kDim>& ginv_diag) {
    EnumSetup s;
    s.qc = 1;
    for (int i = 0; i < kDim; ++i) s.qc = lcm(s.qc, den(center.c[i]));
    s.ql = 1;
    for (int k = 0; k < kDim; ++k) {
        s.ql = lcm(s.ql, den(ldl_d[k]));
        for (int i = k + 1; i < kDim; ++i) s.ql = lcm(s.ql, den(ldl_l[i][k]));
    }
    s.qcql = s.qc * s.ql;
    for (int i = 0; i < kDim; ++i) s.cnum[i] = num(center.c[i]) * (s.qc / den(center.c[i]));
    for (int k = 0; k < kDim; ++k)
        for (int i = k + 1; i < kDim; ++i) {
            const Rat& l = ldl_l[i][k];
            s.lnum[i][k] = num(l) * (s.ql / den(l));
        }
    Int dden = 1;
    for (int k = 0; k < kDim; ++k) dden = lcm(dden, den(ldl_d[k]));
    const Int rden = den(r2);
    for (int k = 0; k < kDim; ++k) s.w[k] = num(ldl_d[k]) * (dden / den(ldl_d[k])) * rden;
    s.bigden = dden * s.qcql * s.qcql * rden;
    s.b0 = num(r2) * dden * s.qcql * s.qcql;

    // Coordinate ranges from |y_k| <= sqrt(r2 * (G^-1)_kk).
    Int maxabs = 0;
    for (int k = 0; k < kDim; ++k) {
        Rat bound2 = r2 * ginv_diag[k];
        if (bound2 < 0) bound2 = 0;
        Int yb = isqrt(num(bound2) * den(bound2)) / den(bound2) + 1;
        Int clo = floordiv(num(center.c[k]), den(center.c[k]));
        Int xl = clo - yb - 1, xh = clo + yb + 2;
        if (abs(xl) > Int(1) << 30 || abs(xh) > Int(1) << 30)
            throw resource_limit("enumeration range too large");
        s.xlo[k] = xl.get_si();
        s.xhi[k] = xh.get_si();
        maxabs = std::max(maxabs, std::max(Int(abs(xl)), Int(abs(xh))));
    }
    // Decide whether the scaled terms fit comfortably in __int128.
    Int ymax = maxabs * s.qc;
    for (int i = 0; i < kDim; ++i) ymax = std::max(ymax, Int(abs(s.cnum[i]) + maxabs * s.qc));
    Int lsum = 0;
    for (int k = 0; k < kDim; ++k) {
        Int row = s.ql;  // own coordinate contributes ql * y
        for (int i = k + 1; i < kDim; ++i) row += Int(abs(s.lnum[i][k]));
        lsum = std::max(lsum, Int(row));
    }
    Int zmax = lsum * ymax;
    Int wmax = 0;
    for (int k = 0; k < kDim; ++k) wmax = std::max(wmax, Int(abs(s.w[k])));
    Int tmax = wmax * zmax * zmax;
    Int cap = Int(1) << 120;
    s.fits_i128 = abs(s.b0) < cap && tmax < cap && s.bigden < cap;
    return s;
}

// Depth-first zig-zag enumeration over one scalar type.
template <class I>
class Engine {
public:
    using Emit = std::function<bool(const std::array<int32_t, kDim>&, bool exact)>;

    Engine(const EnumSetup& s, std::uint64_t max_nodes, Emit emit)
        : emit_(std::move(emit)), max_nodes_(max_nodes) {
        qcql_ = conv(s.qcql);
        qc_ = conv(s.qc);
        ql_ = conv(s.ql);
        b0_ = conv(s.b0);
        for (int k = 0; k < kDim; ++k) {
            cnum_[k] = conv(s.cnum[k]);
            w_[k] = conv(s.w[k]);
            for (int i = k + 1; i < kDim; ++i) lnum_[i][k] = conv(s.lnum[i][k]);
        }
    }

    // Enumerates the subtree with levels kDim-1..0; when root_fixed >= 0 the
    // top coordinate is pinned to that value (used for the thread split).
    void run(int64_t root_fixed = INT64_MIN) {
        if (b0_ < 0) return;
        if (root_fixed != INT64_MIN) {
            x_[kDim - 1] = root_fixed;
            y_[kDim - 1] = I(root_fixed) * qc_ - cnum_[kDim - 1];
            I z = y_[kDim - 1] * ql_;
            I t = w_[kDim - 1] * z * z;
            if (t <= b0_) descend(kDim - 2, b0_ - t);
            return;
        }
        level(kDim - 1, b0_);
    }

    // Valid top-level coordinates, for splitting across threads.
    std::vector<int64_t> root_candidates() {
        std::vector<int64_t> out;
        if (b0_ < 0) return out;
        const int k = kDim - 1;
        I base = -cnum_[k] * ql_;
        int64_t t0 = t_start(base);
        for (int64_t t = t0;; ++t) {
            I z = I(t) * qcql_ + base;
            if (w_[k] * z * z > b0_) break;
            out.push_back(t);
        }
        for (int64_t t = t0 - 1;; --t) {
            I z = I(t) * qcql_ + base;
            if (w_[k] * z * z > b0_) break;
            out.push_back(t);
        }
        return out;
    }

    bool aborted() const { return aborted_; }
    std::uint64_t nodes() const { return nodes_; }

private:
    static I conv(const Int& v) {
        if constexpr (std::is_same_v<I, Int>)
            return v;
        else
            return to_i128(v);
    }

    int64_t t_start(const I& base) {
        // Nearest integer to -base / qcql.
        I n = -2 * base + qcql_;
        I q = floordiv(n, 2 * qcql_);
        if constexpr (std::is_same_v<I, Int>)
            return q.get_si();
        else
            return static_cast<int64_t>(q);
    }

    void descend(int k, I rem) {
        if (k < 0) return;  // handled by caller emitting
        level(k, std::move(rem));
    }

    void level(int k, I rem) {
        if (aborted_) return;
        if (max_nodes_ && ++nodes_ > max_nodes_)
            throw resource_limit("enumeration node budget exhausted");
        I off = 0;
        for (int j = k + 1; j < kDim; ++j)
            if (lnum_[j][k] != 0) off += lnum_[j][k] * y_[j];
        I base = off - cnum_[k] * ql_;
        int64_t t0 = t_start(base);
        for (int64_t t = t0;; ++t)
            if (!try_value(k, t, base, rem)) break;
        for (int64_t t = t0 - 1;; --t)
            if (!try_value(k, t, base, rem)) break;
    }

    bool try_value(int k, int64_t t, const I& base, const I& rem) {
        I z = I(t) * qcql_ + base;
        I term = w_[k] * z * z;
        if (term > rem) return false;
        x_[k] = t;
        if (k == 0) {
            std::array<int32_t, kDim> out;
            for (int i = 0; i < kDim; ++i) out[i] = static_cast<int32_t>(x_[i]);
            if (!emit_(out, rem == term)) aborted_ = true;
            return !aborted_;
        }
        y_[k] = I(t) * qc_ - cnum_[k];
        level(k - 1, rem - term);
        return !aborted_;
    }

    Emit emit_;
    std::uint64_t max_nodes_;
    std::uint64_t nodes_ = 0;
    bool aborted_ = false;

    I qcql_, qc_, ql_, b0_;
    std::array<I, kDim> cnum_, w_;
    std::array<std::array<I, kDim>, kDim> lnum_;
    std::array<int64_t, kDim> x_{};
    std::array<I, kDim> y_{};
};

}  // namespace

Int torsion_order(const QPoint& v) {
    Int m = 1;
    for (int i = 0; i < kDim; ++i) m = lcm(m, den(v.c[i]));
    return m;
}

LatticeModel LatticeModel::from_basis(const Basis& b) {
    LatticeModel m;
    m.basis_ = b;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            int64_t s = 0;
            for (int k = 0; k < kDim; ++k) s += b[i][k] * b[j][k];
            if (s % 8 != 0) throw not_integral("Gram entry not integral at row " + std::to_string(i));
            m.gram_[i][j] = s / 8;
        }
    m.validate_and_finish();
    return m;
}

void LatticeModel::validate_and_finish() {
    for (int i = 0; i < kDim; ++i)
        if (gram_[i][i] % 2 != 0) throw not_even("Gram diagonal odd at " + std::to_string(i));
    QMatrix g(kDim, kDim);
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) g.at(i, j) = Rat(static_cast<long>(gram_[i][j]));
    if (det(g) != 1) throw not_unimodular("Gram determinant is not 1");

    // Exact LDL^T; the natural coordinate order keeps all denominators tiny
    // for the bundled basis.
    std::array<std::array<Rat, kDim>, kDim> a;
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) a[i][j] = Rat(static_cast<long>(gram_[i][j]));
    for (int k = 0; k < kDim; ++k) {
        ldl_d_[k] = a[k][k];
        if (ldl_d_[k] <= 0) throw not_unimodular("Gram matrix is not positive definite");
        for (int i = k + 1; i < kDim; ++i) {
            ldl_l_[i][k] = a[i][k] / ldl_d_[k];
            for (int j = k + 1; j <= i; ++j) {
                a[i][j] -= ldl_l_[i][k] * a[j][k];
                a[j][i] = a[i][j];
            }
        }
    }
    QMatrix inv = solve_matrix(g, QMatrix::identity(kDim));
    for (int i = 0; i < kDim; ++i) ginv_diag_[i] = inv.at(i, i);
}

LatticeModel LatticeModel::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_format("cannot open " + path);
    Basis b{};
    int row = 0;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ls(line);
        std::vector<int64_t> vals;
        int64_t v;
        while (ls >> v) vals.push_back(v);
        if (vals.empty()) continue;
        if (vals.size() != kDim) throw bad_format("row " + std::to_string(row) + ": expected 24 integers");
        if (row >= kDim) throw bad_format("more than 24 rows");
        for (int j = 0; j < kDim; ++j) b[row][j] = vals[j];
        ++row;
    }
    if (row != kDim) throw bad_format("expected 24 rows, got " + std::to_string(row));
    return from_basis(b);
}

const LatticeModel& LatticeModel::standard() {
    static const LatticeModel m = [] {
        Basis b{};
        for (int i = 0; i < kDim; ++i)
            for (int j = 0; j < kDim; ++j) b[i][j] = kStandardBasis[i][j];
        return from_basis(b);
    }();
    return m;
}

int64_t LatticeModel::inner(const LatticeVector& x, const LatticeVector& y) const {
    int64_t s = 0;
    for (int i = 0; i < kDim; ++i) {
        if (x.c[i] == 0) continue;
        int64_t row = 0;
        for (int j = 0; j < kDim; ++j) row += gram_[i][j] * y.c[j];
        s += x.c[i] * row;
    }
    return s;
}

std::array<int64_t, kDim> LatticeModel::gram_times(const LatticeVector& v) const {
    std::array<int64_t, kDim> out{};
    for (int i = 0; i < kDim; ++i) {
        int64_t row = 0;
        for (int j = 0; j < kDim; ++j) row += gram_[i][j] * v.c[j];
        out[i] = row;
    }
    return out;
}

Rat LatticeModel::inner_q(const QPoint& x, const QPoint& y) const {
    Rat s;
    for (int i = 0; i < kDim; ++i) {
        if (x.c[i] == 0) continue;
        Rat row;
        for (int j = 0; j < kDim; ++j)
            if (y.c[j] != 0) row += Rat(static_cast<long>(gram_[i][j])) * y.c[j];
        s += x.c[i] * row;
    }
    return s;
}

Rat LatticeModel::dist2(const QPoint& x, const QPoint& y) const {
    QPoint d = x - y;
    return inner_q(d, d);
}

bool LatticeModel::ball_visit(const QPoint& center, const Rat& r2,
                              const std::function<bool(const LatticeVector&)>& visit,
                              const EnumOptions& opt) const {
    if (r2 < 0) return true;
    EnumSetup s = make_setup(center, r2, ldl_d_, ldl_l_, ginv_diag_);
    auto emit = [&](const std::array<int32_t, kDim>& x, bool) {
        LatticeVector v;
        v.c = x;
        return visit(v);
    };
    if (s.fits_i128) {
        Engine<__int128> e(s, opt.max_nodes, emit);
        e.run();
        return !e.aborted();
    }
    Engine<Int> e(s, opt.max_nodes, emit);
    e.run();
    return !e.aborted();
}

namespace {

// Shared by sphere/shell materialization: parallel over top-level branches.
template <class I>
void run_parallel(const EnumSetup& s, const EnumOptions& opt, bool exact_only,
                  std::vector<LatticeVector>* out, std::uint64_t* count) {
    int threads = std::max(1, opt.threads);
    Engine<I> probe(s, 0, [](const std::array<int32_t, kDim>&, bool) { return true; });
    std::vector<int64_t> roots = probe.root_candidates();
    if (threads == 1 || roots.size() < 2) {
        std::uint64_t n = 0;
        Engine<I> e(s, opt.max_nodes, [&](const std::array<int32_t, kDim>& x, bool exact) {
            if (exact_only && !exact) return true;
            if (out) {
                LatticeVector v;
                v.c = x;
                out->push_back(v);
            }
            ++n;
            return true;
        });
        e.run();
        *count = n;
        return;
    }
    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> total{0};
    std::mutex merge;
    std::exception_ptr err;
    auto worker = [&] {
        std::vector<LatticeVector> local;
        std::uint64_t n = 0;
        try {
            Engine<I> e(s, opt.max_nodes ? opt.max_nodes / threads + 1 : 0,
                        [&](const std::array<int32_t, kDim>& x, bool exact) {
                            if (exact_only && !exact) return true;
                            if (out) {
                                LatticeVector v;
                                v.c = x;
                                local.push_back(v);
                            }
                            ++n;
                            return true;
                        });
            while (true) {
                std::size_t i = next.fetch_add(1);
                if (i >= roots.size()) break;
                e.run(roots[i]);
            }
        } catch (...) {
            std::lock_guard<std::mutex> lk(merge);
            if (!err) err = std::current_exception();
        }
        total += n;
        if (out) {
            std::lock_guard<std::mutex> lk(merge);
            out->insert(out->end(), local.begin(), local.end());
        }
    };
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (err) std::rethrow_exception(err);
    *count = total.load();
}

}  // namespace

std::vector<LatticeVector> LatticeModel::sphere_points(const QPoint& center, const Rat& r2,
                                                       const EnumOptions& opt) const {
    std::vector<LatticeVector> out;
    if (r2 < 0) return out;
    EnumSetup s = make_setup(center, r2, ldl_d_, ldl_l_, ginv_diag_);
    std::uint64_t n = 0;
    if (s.fits_i128)
        run_parallel<__int128>(s, opt, false, &out, &n);
    else
        run_parallel<Int>(s, opt, false, &out, &n);
    std::sort(out.begin(), out.end());
    return out;
}

std::uint64_t LatticeModel::shell_count(int64_t norm2, const EnumOptions& opt) const {
    if (norm2 <= 0 || norm2 % 2 != 0) throw domain_error("shell norm must be a positive even integer");
    EnumSetup s = make_setup(QPoint{}, Rat(static_cast<long>(norm2)), ldl_d_, ldl_l_, ginv_diag_);
    std::uint64_t n = 0;
    if (s.fits_i128)
        run_parallel<__int128>(s, opt, true, nullptr, &n);
    else
        run_parallel<Int>(s, opt, true, nullptr, &n);
    return n;  // the origin never appears: its distance 0 != norm2 > 0
}

std::vector<LatticeVector> LatticeModel::shell(int64_t norm2, const EnumOptions& opt) const {
    if (norm2 <= 0 || norm2 % 2 != 0) throw domain_error("shell norm must be a positive even integer");
    EnumSetup s = make_setup(QPoint{}, Rat(static_cast<long>(norm2)), ldl_d_, ldl_l_, ginv_diag_);
    std::vector<LatticeVector> out;
    std::uint64_t n = 0;
    if (s.fits_i128)
        run_parallel<__int128>(s, opt, true, &out, &n);
    else
        run_parallel<Int>(s, opt, true, &out, &n);
    std::sort(out.begin(), out.end());
    return out;
}

bool LatticeModel::shell_visit(int64_t norm2, const std::function<bool(const LatticeVector&)>& visit,
                               const EnumOptions& opt) const {
    if (norm2 <= 0 || norm2 % 2 != 0) throw domain_error("shell norm must be a positive even integer");
    EnumSetup s = make_setup(QPoint{}, Rat(static_cast<long>(norm2)), ldl_d_, ldl_l_, ginv_diag_);
    auto emit = [&](const std::array<int32_t, kDim>& x, bool exact) {
        if (!exact) return true;
        LatticeVector v;
        v.c = x;
        if (v.is_zero()) return true;
        return visit(v);
    };
    if (s.fits_i128) {
        Engine<__int128> e(s, opt.max_nodes, emit);
        e.run();
        return !e.aborted();
    }
    Engine<Int> e(s, opt.max_nodes, emit);
    e.run();
    return !e.aborted();
}

std::pair<Rat, std::vector<LatticeVector>> LatticeModel::lattice_distance(
    const QPoint& x, const EnumOptions& opt) const {
    // Distance to the rounded point gives an upper bound; the covering
    // radius caps it at sqrt(2).
    LatticeVector rounded;
    for (int i = 0; i < kDim; ++i) rounded.c[i] = static_cast<int32_t>(round_rat(x.c[i]).get_si());
    Rat bound = dist2(x, rounded);
    if (bound > 2) bound = 2;
    std::vector<LatticeVector> pts = sphere_points(x, bound, opt);
    Rat best = Rat(-1);
    std::vector<LatticeVector> nearest;
    for (const auto& p : pts) {
        Rat d = dist2(x, p);
        if (best == -1 || d < best) {
            best = d;
            nearest.clear();
        }
        if (d == best) nearest.push_back(p);
    }
    return {best, nearest};
}

LatticeVector LatticeModel::some_vector_of_norm(int64_t norm2) const {
    std::optional<LatticeVector> best;
    auto consider = [&](const LatticeVector& v) {
        if (norm(v) != norm2) return;
        if (!best || v < *best) best = v;
    };
    for (int i = 0; i < kDim; ++i)
        for (int j = 0; j < kDim; ++j) {
            if (i == j) continue;
            for (int a = -2; a <= 2; ++a)
                for (int b = -2; b <= 2; ++b) {
                    LatticeVector v;
                    v.c[i] = a;
                    v.c[j] = b;
                    consider(v);
                }
        }
    if (!best) {
        // Widen to triples of basis vectors with small coefficients.
        for (int i = 0; i < kDim && !best; ++i)
            for (int j = i + 1; j < kDim; ++j)
                for (int k = j + 1; k < kDim; ++k)
                    for (int a = -1; a <= 1; a += 2)
                        for (int b = -1; b <= 1; b += 2)
                            for (int c = -1; c <= 1; c += 2) {
                                LatticeVector v;
                                v.c[i] = a;
                                v.c[j] = b;
                                v.c[k] = c;
                                consider(v);
                            }
    }
    if (!best) throw resource_limit("no vector of requested norm in the scan box");
    return *best;
}

}  // namespace leech
