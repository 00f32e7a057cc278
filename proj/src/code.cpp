#include "leech/code.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

#include "leech/congruence.hpp"
#include "leech/errors.hpp"

namespace leech {

namespace {

uint8_t mod_p(long v, int p) {
    long r = v % p;
    if (r < 0) r += p;
    return static_cast<uint8_t>(r);
}

// Reduced row echelon form over F_p; returns the nonzero rows.
std::vector<std::vector<uint8_t>> rref(int p, std::vector<std::vector<uint8_t>> rows) {
    if (rows.empty()) return rows;
    const std::size_t cols = rows[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
        std::size_t piv = r;
        while (piv < rows.size() && rows[piv][c] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[r]);
        // normalize pivot to 1
        if (rows[r][c] != 1) {
            int inv = (p == 2) ? 1 : (rows[r][c] == 2 ? 2 : 1);  // 2*2=4=1 mod 3
            for (auto& x : rows[r]) x = mod_p(x * inv, p);
        }
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == r || rows[i][c] == 0) continue;
            int f = rows[i][c];
            for (std::size_t j = 0; j < cols; ++j)
                rows[i][j] = mod_p(rows[i][j] - f * rows[r][j], p);
        }
        ++r;
    }
    rows.resize(r);
    return rows;
}

}  // namespace

CodeOverFp CodeOverFp::from_rows(int p, int length, const std::vector<std::vector<int>>& rows) {
    CodeOverFp c(p, length);
    std::vector<std::vector<uint8_t>> w;
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != length) throw bad_format("generator row length mismatch");
        std::vector<uint8_t> row(length);
        for (int i = 0; i < length; ++i) row[i] = mod_p(r[i], p);
        w.push_back(std::move(row));
    }
    c.gens_ = rref(p, std::move(w));
    return c;
}

CodeOverFp CodeOverFp::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw bad_format("cannot open " + path);
    int p, length;
    if (!(in >> p >> length)) throw bad_format("expected 'p length' header in " + path);
    std::vector<std::vector<int>> rows;
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line)) {
        std::string digits;
        for (char ch : line) {
            if (ch == '#') break;
            if (!isspace(static_cast<unsigned char>(ch))) digits.push_back(ch);
        }
        if (digits.empty()) continue;
        if (static_cast<int>(digits.size()) != length)
            throw bad_format("generator row of wrong length in " + path);
        std::vector<int> row;
        for (char ch : digits) {
            if (ch < '0' || ch > '9') throw bad_format("bad digit in " + path);
            row.push_back(ch - '0');
        }
        rows.push_back(std::move(row));
    }
    return from_rows(p, length, rows);
}

bool CodeOverFp::contains(const std::vector<uint8_t>& word) const {
    if (static_cast<int>(word.size()) != length_) return false;
    std::vector<uint8_t> w = word;
    for (const auto& g : gens_) {
        int lead = -1;
        for (int i = 0; i < length_; ++i)
            if (g[i] != 0) {
                lead = i;
                break;
            }
        if (lead < 0 || w[lead] == 0) continue;
        int f = w[lead];  // pivot of g is 1
        for (int i = 0; i < length_; ++i) w[i] = mod_p(w[i] - f * g[i], p_);
    }
    return std::all_of(w.begin(), w.end(), [](uint8_t x) { return x == 0; });
}

std::vector<std::vector<uint8_t>> CodeOverFp::codewords() const {
    std::vector<std::vector<uint8_t>> out;
    std::vector<uint8_t> cur(length_, 0);
    std::uint64_t total = 1;
    for (int i = 0; i < dim(); ++i) total *= p_;
    out.reserve(total);
    std::vector<int> coef(dim(), 0);
    while (true) {
        out.push_back(cur);
        int i = 0;
        for (; i < dim(); ++i) {
            ++coef[i];
            for (int j = 0; j < length_; ++j) cur[j] = mod_p(cur[j] + gens_[i][j], p_);
            if (coef[i] < p_) break;
            coef[i] = 0;
        }
        if (i == dim()) break;
    }
    return out;
}

int weight(const std::vector<uint8_t>& w) {
    int n = 0;
    for (uint8_t x : w)
        if (x) ++n;
    return n;
}

WeightDistribution weight_distribution(const CodeOverFp& c, std::uint64_t cap) {
    std::uint64_t total = 1;
    for (int i = 0; i < c.dim(); ++i) {
        total *= c.p();
        if (total > cap) throw resource_limit("codeword enumeration too large");
    }
    WeightDistribution wd;
    for (const auto& w : c.codewords()) wd[weight(w)] += 1;
    return wd;
}

std::string wd_string(const WeightDistribution& wd) {
    std::ostringstream os;
    bool first = true;
    for (const auto& [w, n] : wd) {
        if (!first) os << ' ';
        os << w << '^' << n.get_str();
        first = false;
    }
    return os.str();
}

int minimal_weight(const CodeOverFp& c) {
    int best = c.length() + 1;
    for (const auto& w : c.codewords()) {
        int wt = weight(w);
        if (wt > 0 && wt < best) best = wt;
    }
    return best;
}

bool is_binary_golay(const CodeOverFp& c) {
    return c.p() == 2 && c.length() == 24 && c.dim() == 12 && minimal_weight(c) == 8;
}

bool is_ternary_golay(const CodeOverFp& c) {
    return c.p() == 3 && c.length() == 12 && c.dim() == 6 && minimal_weight(c) == 6;
}

namespace {

// The distinguished vertex of an a1^25 hole: the unique one whose omitted
// face has circumcenter torsion different from all the others.
int distinguished_vertex(const Hole& hole) {
    const int n = hole.vertex_count();
    std::vector<Int> tor(n);
    for (int j = 0; j < n; ++j) {
        auto [h, d2] = hole.face_foot(Face{{j}});
        (void)d2;
        tor[j] = torsion_order(h);
    }
    std::map<std::string, std::vector<int>> groups;
    for (int j = 0; j < n; ++j) groups[tor[j].get_str()].push_back(j);
    if (groups.size() != 2) throw no_distinguished_vertex("face torsions do not single out a vertex");
    for (const auto& [t, idx] : groups)
        if (idx.size() == 1) return idx[0];
    throw no_distinguished_vertex("face torsions do not single out a vertex");
}

// Verifies that the nontrivial symmetries of the alpha block never extend
// to lattice-preserving automorphisms of the hole.
bool alpha_aut_trivial(const Hole& hole, const std::vector<int>& a_nodes) {
    const auto& verts = hole.record().vertices;
    std::vector<LatticeVector> apts;
    for (int idx : a_nodes) apts.push_back(verts[idx]);
    std::vector<CongruenceMap> amaps = congruence_maps(hole.model(), apts, apts);
    for (const auto& am : amaps) {
        bool ident = true;
        for (std::size_t i = 0; i < am.perm.size(); ++i)
            if (am.perm[i] != static_cast<int>(i)) ident = false;
        if (ident) continue;
        CongruenceMap full;
        full.perm.resize(verts.size());
        for (std::size_t i = 0; i < verts.size(); ++i) full.perm[i] = static_cast<int>(i);
        for (std::size_t i = 0; i < am.perm.size(); ++i)
            full.perm[a_nodes[i]] = a_nodes[am.perm[i]];
        AffineMap aff = induced_affine(hole.model(), verts, verts, full);
        if (aff.is_lattice_map()) return false;
    }
    return true;
}

}  // namespace

GammaResult gamma_from_hole(const Hole& hole) {
    if (hole.deep()) throw wrong_shape("gamma construction applies to shallow holes");
    const auto& comps = hole.graph().components;
    const auto& verts = hole.record().vertices;

    // Split the type as alpha beta^nu.
    std::map<std::string, std::vector<std::size_t>> by_token;
    for (std::size_t i = 0; i < comps.size(); ++i) by_token[comps[i].token()].push_back(i);

    std::vector<int> a_nodes, b_nodes;
    std::string alpha_token, beta_token;
    if (by_token.size() == 1 && by_token.begin()->first == "a1" && comps.size() == 25) {
        // a1^25: the alpha block is the distinguished vertex.
        int k = distinguished_vertex(hole);
        alpha_token = "a1";
        beta_token = "a1";
        a_nodes = {k};
        for (int j = 0; j < hole.vertex_count(); ++j)
            if (j != k) b_nodes.push_back(j);
    } else {
        if (by_token.size() != 2) throw wrong_shape("type does not split as alpha beta^nu");
        std::size_t ai, count_a = SIZE_MAX;
        for (const auto& [tok, idxs] : by_token)
            if (idxs.size() < count_a) {
                count_a = idxs.size();
                alpha_token = tok;
                ai = idxs[0];
            }
        if (count_a != 1) throw wrong_shape("alpha block is not unique");
        for (const auto& [tok, idxs] : by_token)
            if (tok != alpha_token) beta_token = tok;
        if (beta_token != "a1" && beta_token != "a2")
            throw wrong_shape("beta must be a1 or a2, got " + beta_token);
        a_nodes = comps[ai].nodes;
        for (std::size_t i = 0; i < comps.size(); ++i) {
            if (i == ai) continue;
            // For a2 the two nodes of each component stay adjacent in the
            // coordinate order (pairs b_i, b_i').
            for (int idx : comps[i].nodes) b_nodes.push_back(idx);
        }
    }

    const int p = (beta_token == "a1") ? 2 : 3;
    const int per = (beta_token == "a1") ? 1 : 2;
    const int bsize = static_cast<int>(b_nodes.size());
    const int nu = bsize / per;

    // Quotient by <A>: express every lattice basis vector over the basis
    // (b - a0 for b in B; a - a0 for a in A \ {a0}); the B-part gives the
    // coordinates of rho(e_m) in the canonical basis of M.
    const LatticeVector a0 = verts[a_nodes[0]];
    QMatrix r(kDim, kDim);
    int row = 0;
    for (int idx : b_nodes) {
        LatticeVector e = verts[idx] - a0;
        for (int k = 0; k < kDim; ++k) r.at(row, k) = Rat(e.c[k]);
        ++row;
    }
    for (std::size_t i = 1; i < a_nodes.size(); ++i) {
        LatticeVector e = verts[a_nodes[i]] - a0;
        for (int k = 0; k < kDim; ++k) r.at(row, k) = Rat(e.c[k]);
        ++row;
    }
    if (row != kDim) throw wrong_shape("vertex count does not fill a basis");
    // Row convention: e_m = coeffs_m * rows(r), so the coefficient matrix is
    // the matrix inverse of r; its first |B| columns are the coordinates of
    // rho(e_m) over the canonical basis of M.
    QMatrix rinv = solve_matrix(r, QMatrix::identity(kDim));
    GammaResult out{.quotient = {}, .code = CodeOverFp(p, nu), .alpha_token = alpha_token,
                    .beta_token = beta_token, .nu = nu, .aut_a_trivial = false};

    Int n = 1;
    QMatrix lcoords(kDim, bsize);
    for (int m = 0; m < kDim; ++m)
        for (int j = 0; j < bsize; ++j) lcoords.at(m, j) = rinv.at(m, j);
    for (int m = 0; m < kDim; ++m)
        for (int j = 0; j < bsize; ++j) n = lcm(n, den(lcoords.at(m, j)));

    // Minimality contract: n/q L is not inside M for any prime divisor q.
    out.quotient.n = n;
    out.quotient.a_vertices = a_nodes;
    out.quotient.b_vertices = b_nodes;
    out.quotient.l_in_m_den = n;
    out.quotient.l_in_m_num.assign(kDim, IntVec(bsize));
    for (int m = 0; m < kDim; ++m)
        for (int j = 0; j < bsize; ++j) {
            Rat scaled = lcoords.at(m, j) * Rat(n);
            if (!is_integer(scaled)) throw domain_error("n L is not integral over M");
            out.quotient.l_in_m_num[m][j] = num(scaled);
        }

    // S = n L, F^ = the preimage lattice of F; Gamma = (S ∩ F^) mod n.
    IntMat s_gens = out.quotient.l_in_m_num;
    for (int j = 0; j < bsize; ++j) {
        IntVec unit(bsize, 0);
        unit[j] = n;
        s_gens.push_back(std::move(unit));
    }
    IntMat f_gens;
    if (p == 2) {
        if (n % 2 != 0) throw domain_error("n must be even for beta = a1");
        for (int j = 0; j < bsize; ++j) {
            IntVec row2(bsize, 0);
            row2[j] = n / 2;
            f_gens.push_back(std::move(row2));
        }
    } else {
        if (n % 3 != 0) throw domain_error("n must be divisible by 3 for beta = a2");
        for (int i = 0; i < nu; ++i) {
            IntVec row3(bsize, 0);
            row3[2 * i] = n / 3;
            row3[2 * i + 1] = 2 * n / 3;
            f_gens.push_back(std::move(row3));
        }
        for (int j = 0; j < bsize; ++j) {
            IntVec unit(bsize, 0);
            unit[j] = n;
            f_gens.push_back(std::move(unit));
        }
    }
    IntMat inter = lattice_intersection(s_gens, f_gens);

    std::vector<std::vector<int>> digit_rows;
    for (const auto& v : inter) {
        std::vector<int> digits(nu);
        bool nonzero = false;
        for (int i = 0; i < nu; ++i) {
            if (p == 2) {
                Int c = v[i] % n;
                if (c < 0) c += n;
                if (c == 0) digits[i] = 0;
                else if (c == n / 2) digits[i] = 1;
                else throw domain_error("intersection vector leaves F (binary)");
            } else {
                Int c1 = v[2 * i] % n, c2 = v[2 * i + 1] % n;
                if (c1 < 0) c1 += n;
                if (c2 < 0) c2 += n;
                if (c1 == 0 && c2 == 0) digits[i] = 0;
                else if (c1 == n / 3 && c2 == 2 * n / 3) digits[i] = 1;
                else if (c1 == 2 * n / 3 && c2 == n / 3) digits[i] = 2;
                else throw domain_error("intersection vector leaves F (ternary)");
            }
            if (digits[i]) nonzero = true;
        }
        if (nonzero) digit_rows.push_back(std::move(digits));
    }
    out.code = CodeOverFp::from_rows(p, nu, digit_rows);
    out.aut_a_trivial = alpha_aut_trivial(hole, a_nodes);
    return out;
}

std::vector<std::vector<uint8_t>> y_set(const CodeOverFp& gamma, int target_weight, int modulus,
                                        int residue) {
    const int l = gamma.length();
    std::vector<std::vector<uint8_t>> words = gamma.codewords();
    std::vector<std::vector<uint8_t>> out;

    if (gamma.p() == 2) {
        // bitmask representation
        std::vector<uint32_t> masks;
        masks.reserve(words.size());
        for (const auto& w : words) {
            uint32_t m = 0;
            for (int i = 0; i < l; ++i)
                if (w[i]) m |= 1u << i;
            masks.push_back(m);
        }
        std::vector<int> wts(words.size());
        for (std::size_t i = 0; i < words.size(); ++i) wts[i] = weight(words[i]);
        // iterate supports of size target_weight
        std::vector<int> idx(target_weight);
        std::iota(idx.begin(), idx.end(), 0);
        while (true) {
            uint32_t y = 0;
            for (int i : idx) y |= 1u << i;
            bool ok = true;
            for (std::size_t i = 0; i < masks.size() && ok; ++i) {
                int inter = __builtin_popcount(masks[i] & y);
                int w = wts[i] + target_weight - 2 * inter;
                if (((w - residue) % modulus + modulus) % modulus != 0) ok = false;
            }
            if (ok) {
                std::vector<uint8_t> yy(l, 0);
                for (int i : idx) yy[i] = 1;
                out.push_back(std::move(yy));
            }
            // next combination
            int i = target_weight - 1;
            while (i >= 0 && idx[i] == l - target_weight + i) --i;
            if (i < 0) break;
            ++idx[i];
            for (int j = i + 1; j < target_weight; ++j) idx[j] = idx[j - 1] + 1;
        }
        return out;
    }

    // ternary: supports of size target_weight with values in {1,2}
    std::vector<int> idx(target_weight);
    std::iota(idx.begin(), idx.end(), 0);
    while (true) {
        for (long pat = 0; pat < (1L << target_weight); ++pat) {
            std::vector<uint8_t> y(l, 0);
            for (int i = 0; i < target_weight; ++i) y[idx[i]] = (pat >> i & 1) ? 2 : 1;
            bool ok = true;
            for (const auto& x : words) {
                int w = 0;
                for (int i = 0; i < l; ++i)
                    if ((x[i] + y[i]) % 3) ++w;
                if (((w - residue) % modulus + modulus) % modulus != 0) {
                    ok = false;
                    break;
                }
            }
            if (ok) out.push_back(std::move(y));
        }
        int i = target_weight - 1;
        while (i >= 0 && idx[i] == l - target_weight + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (int j = i + 1; j < target_weight; ++j) idx[j] = idx[j - 1] + 1;
    }
    return out;
}

namespace {

std::vector<int> row_to_int(const std::vector<uint8_t>& r) {
    return std::vector<int>(r.begin(), r.end());
}

CodeOverFp extend_with(const CodeOverFp& base, const std::vector<std::vector<uint8_t>>& extra,
                       int new_length) {
    std::vector<std::vector<int>> rows;
    for (const auto& g : base.generators()) rows.push_back(row_to_int(g));
    for (auto& r : rows) r.resize(new_length, 0);
    for (const auto& e : extra) rows.push_back(row_to_int(e));
    return CodeOverFp::from_rows(base.p(), new_length, rows);
}

bool doubly_even(const CodeOverFp& c) {
    for (const auto& w : c.codewords())
        if (weight(w) % 4 != 0) return false;
    return true;
}

}  // namespace

ExtensionResult golay_extension_search(const CodeOverFp& gamma, int recipe) {
    ExtensionResult out;
    if (recipe == 299) {
        // append three parity coordinates; rows of weight 2 mod 4 choose one
        // of (0,1,1), (1,0,1), (1,1,0), doubly even rows take (0,0,0)
        const auto& gens = gamma.generators();
        std::vector<int> free_rows;
        for (std::size_t i = 0; i < gens.size(); ++i) {
            int w = weight(gens[i]) % 4;
            if (w == 2) free_rows.push_back(static_cast<int>(i));
            else if (w != 0) throw no_extension("generator weight not even");
        }
        const int tails[3][3] = {{0, 1, 1}, {1, 0, 1}, {1, 1, 0}};
        long combos = 1;
        for (std::size_t i = 0; i < free_rows.size(); ++i) combos *= 3;
        for (long pick = 0; pick < combos; ++pick) {
            std::vector<std::vector<int>> rows;
            long q = pick;
            for (std::size_t i = 0; i < gens.size(); ++i) {
                std::vector<int> r = row_to_int(gens[i]);
                r.resize(24, 0);
                if (weight(gens[i]) % 4 == 2) {
                    int choice = q % 3;
                    q /= 3;
                    for (int j = 0; j < 3; ++j) r[21 + j] = tails[choice][j];
                }
                rows.push_back(std::move(r));
            }
            CodeOverFp ext = CodeOverFp::from_rows(2, 24, rows);
            if (ext.dim() != gamma.dim()) continue;
            if (!doubly_even(ext)) continue;
            out.embeddings.push_back(ext);
        }
        if (out.embeddings.empty()) throw no_extension("no doubly even extension");
        out.gamma_prime_wd = weight_distribution(out.embeddings[0]);
        for (const auto& e : out.embeddings) {
            std::vector<std::vector<uint8_t>> eps = {std::vector<uint8_t>(24, 1)};
            out.closures.push_back(extend_with(e, eps, 24));
        }
        return out;
    }
    if (recipe == 303) {
        // ternary: zero-pad to length 12 and adjoin (y0 | 1) and (y0 | 2)
        CodeOverFp ext = extend_with(gamma, {}, 12);
        out.embeddings.push_back(ext);
        out.gamma_prime_wd = weight_distribution(ext);
        auto ys = y_set(gamma, 11, 3, 2);
        if (ys.empty()) throw no_extension("empty Y set");
        std::vector<uint8_t> y1 = ys[0], y2 = ys[0];
        y1.push_back(1);
        y2.push_back(2);
        out.closures.push_back(extend_with(ext, {y1}, 12));
        out.closures.push_back(extend_with(ext, {y2}, 12));
        return out;
    }
    if (recipe == 304) {
        // two parity coordinates: (0,0) for doubly even rows, (1,1) otherwise
        std::vector<std::vector<int>> rows;
        for (const auto& g : gamma.generators()) {
            std::vector<int> r = row_to_int(g);
            r.resize(24, 0);
            if (weight(g) % 4 == 2) r[22] = r[23] = 1;
            else if (weight(g) % 4 != 0) throw no_extension("generator weight not even");
            rows.push_back(std::move(r));
        }
        CodeOverFp ext = CodeOverFp::from_rows(2, 24, rows);
        out.embeddings.push_back(ext);
        out.gamma_prime_wd = weight_distribution(ext);
        auto ys = y_set(gamma, 7, 4, 3);
        if (ys.empty()) throw no_extension("empty Y set");
        std::vector<uint8_t> y01 = ys[0], y10 = ys[0];
        y01.push_back(0);
        y01.push_back(1);
        y10.push_back(1);
        y10.push_back(0);
        out.closures.push_back(extend_with(ext, {y01}, 24));
        out.closures.push_back(extend_with(ext, {y10}, 24));
        return out;
    }
    if (recipe == 306) {
        // zero-pad by one coordinate, adjoin the all-ones vector
        CodeOverFp ext = extend_with(gamma, {}, 24);
        out.embeddings.push_back(ext);
        out.gamma_prime_wd = weight_distribution(ext);
        std::vector<std::vector<uint8_t>> eps = {std::vector<uint8_t>(24, 1)};
        out.closures.push_back(extend_with(ext, eps, 24));
        return out;
    }
    throw domain_error("unknown extension recipe " + std::to_string(recipe));
}

namespace {

// Column backtrack behind code_aut_order: column signatures filter the
// candidates, and every codeword support whose columns are all placed must
// map onto another codeword support of the same weight.
struct AutSearch {
    const CodeOverFp& code;
    std::uint64_t max_nodes;
    std::uint64_t nodes = 0;
    bool aborted = false;
    Int count = 0;

    int l;
    std::vector<std::vector<uint8_t>> words;
    std::vector<std::vector<Int>> colsig;  // per column: nonzero counts per weight class
    // Supports by weight class, as bitmasks, with a lookup set per class.
    std::vector<std::vector<uint32_t>> supports;
    std::vector<std::vector<std::pair<int, int>>> col_supports;  // column -> (class, index)
    std::vector<std::vector<int>> placed_count;                  // per class, per support
    std::vector<std::vector<uint8_t>> hmat;                      // parity checks (ternary leaves)
    std::vector<int> image;
    std::vector<char> used;

    explicit AutSearch(const CodeOverFp& c, std::uint64_t mn) : code(c), max_nodes(mn), l(c.length()) {}

    void build() {
        words = code.codewords();
        std::map<int, int> wclass;
        for (const auto& w : words)
            if (weight(w) > 0) wclass.emplace(weight(w), 0);
        int nw = 0;
        for (auto& [w, id] : wclass) id = nw++;
        colsig.assign(l, std::vector<Int>(nw, 0));
        supports.assign(nw, {});
        col_supports.assign(l, {});
        for (const auto& w : words) {
            int wt = weight(w);
            if (wt == 0) continue;
            int cls = wclass[wt];
            uint32_t mask = 0;
            for (int i = 0; i < l; ++i)
                if (w[i]) {
                    mask |= 1u << i;
                    colsig[i][cls] += 1;
                }
            supports[cls].push_back(mask);
        }
        // dedupe supports per class (scalar multiples share one support)
        for (auto& s : supports) {
            std::sort(s.begin(), s.end());
            s.erase(std::unique(s.begin(), s.end()), s.end());
        }
        for (int cls = 0; cls < nw; ++cls)
            for (std::size_t si = 0; si < supports[cls].size(); ++si) {
                uint32_t mask = supports[cls][si];
                for (int i = 0; i < l; ++i)
                    if (mask >> i & 1) col_supports[i].emplace_back(cls, static_cast<int>(si));
            }
        placed_count.assign(nw, {});
        for (int cls = 0; cls < nw; ++cls) placed_count[cls].assign(supports[cls].size(), 0);

        if (code.p() == 3) {
            // parity-check rows once: the nullspace of the generator matrix
            const auto& gens = code.generators();
            std::vector<int> pivot_col(gens.size(), -1);
            std::vector<char> is_pivot(l, 0);
            for (std::size_t r = 0; r < gens.size(); ++r)
                for (int c2 = 0; c2 < l; ++c2)
                    if (gens[r][c2]) {
                        pivot_col[r] = c2;
                        is_pivot[c2] = 1;
                        break;
                    }
            for (int c2 = 0; c2 < l; ++c2) {
                if (is_pivot[c2]) continue;
                std::vector<uint8_t> row(l, 0);
                row[c2] = 1;
                for (std::size_t r = 0; r < gens.size(); ++r)
                    if (pivot_col[r] >= 0) row[pivot_col[r]] = mod_p(-gens[r][c2], 3);
                hmat.push_back(std::move(row));
            }
        }
    }

    bool support_lookup(int cls, uint32_t mask) const {
        const auto& v = supports[cls];
        return std::binary_search(v.begin(), v.end(), mask);
    }

    // Number of sign vectors making the permuted generators land in the
    // code: 1 or 0 for binary codes, a count in (F3*)^l otherwise.
    Int leaf_count() {
        if (code.p() == 2) {
            for (const auto& g : code.generators()) {
                std::vector<uint8_t> pg(l, 0);
                for (int i = 0; i < l; ++i) pg[image[i]] = g[i];
                if (!code.contains(pg)) return 0;
            }
            return 1;
        }
        std::vector<std::vector<uint8_t>> eqs;
        for (const auto& g : code.generators()) {
            std::vector<uint8_t> pg(l, 0);
            for (int i = 0; i < l; ++i) pg[image[i]] = g[i];
            for (const auto& hr : hmat) {
                std::vector<uint8_t> eq(l, 0);
                bool nz = false;
                for (int j = 0; j < l; ++j) {
                    eq[j] = mod_p(hr[j] * pg[j], 3);
                    if (eq[j]) nz = true;
                }
                if (nz) eqs.push_back(std::move(eq));
            }
        }
        std::vector<std::vector<uint8_t>> red = rref(3, std::move(eqs));
        std::vector<int> pivot_col(red.size(), -1);
        std::vector<char> is_pivot(l, 0);
        for (std::size_t r = 0; r < red.size(); ++r)
            for (int c2 = 0; c2 < l; ++c2)
                if (red[r][c2]) {
                    pivot_col[r] = c2;
                    is_pivot[c2] = 1;
                    break;
                }
        std::vector<int> free_cols;
        for (int c2 = 0; c2 < l; ++c2)
            if (!is_pivot[c2]) free_cols.push_back(c2);
        if (free_cols.size() > 20) return 0;
        Int found = 0;
        long total = 1;
        for (std::size_t i = 0; i < free_cols.size(); ++i) total *= 3;
        for (long pat = 0; pat < total; ++pat) {
            long q = pat;
            std::vector<uint8_t> eps(l, 0);
            bool any_zero = false;
            for (std::size_t i = 0; i < free_cols.size(); ++i) {
                eps[free_cols[i]] = static_cast<uint8_t>(q % 3);
                q /= 3;
                if (!eps[free_cols[i]]) any_zero = true;
            }
            if (any_zero) continue;
            bool ok = true;
            for (std::size_t r = red.size(); r-- > 0 && ok;) {
                int s = 0;
                for (int c2 = pivot_col[r] + 1; c2 < l; ++c2) s += red[r][c2] * eps[c2];
                uint8_t v = mod_p(-s, 3);
                if (v == 0) ok = false;
                eps[pivot_col[r]] = v;
            }
            if (ok) found += 1;
        }
        return found;
    }

    // Places column order[level]; a candidate survives when every support
    // completed by the placement maps onto a support of its class.
    void place(int level, const std::vector<int>& order) {
        if (aborted) return;
        if (++nodes > max_nodes) {
            aborted = true;
            return;
        }
        if (level == l) {
            count += leaf_count();
            return;
        }
        const int i = order[level];
        for (int t = 0; t < l; ++t) {
            if (used[t]) continue;
            if (colsig[i] != colsig[t]) continue;
            image[i] = t;
            used[t] = 1;
            bool ok = true;
            std::vector<std::pair<int, int>> bumped;
            for (auto [cls, si] : col_supports[i]) {
                ++placed_count[cls][si];
                bumped.emplace_back(cls, si);
                if (placed_count[cls][si] ==
                    __builtin_popcount(supports[cls][si])) {
                    uint32_t img = 0;
                    uint32_t mask = supports[cls][si];
                    for (int b = 0; b < l; ++b)
                        if (mask >> b & 1) img |= 1u << image[b];
                    if (!support_lookup(cls, img)) {
                        ok = false;
                        break;
                    }
                }
            }
            if (ok) place(level + 1, order);
            for (auto [cls, si] : bumped) --placed_count[cls][si];
            image[i] = -1;
            used[t] = 0;
            if (aborted) return;
        }
    }

    AutOrderResult run() {
        build();
        image.assign(l, -1);
        used.assign(l, 0);
        std::map<std::vector<Int>, int> class_size;
        for (int i = 0; i < l; ++i) ++class_size[colsig[i]];
        // Greedy order clustering columns that share supports, so supports
        // complete (and prune) as early as possible.
        std::vector<int> order;
        std::vector<char> chosen(l, 0);
        {
            int first = 0;
            for (int i = 1; i < l; ++i)
                if (class_size[colsig[i]] < class_size[colsig[first]]) first = i;
            order.push_back(first);
            chosen[first] = 1;
            while (static_cast<int>(order.size()) < l) {
                int best = -1;
                long best_score = -1;
                for (int c2 = 0; c2 < l; ++c2) {
                    if (chosen[c2]) continue;
                    long score = 0;
                    for (auto [cls, si] : col_supports[c2]) {
                        uint32_t mask = supports[cls][si];
                        int overlap = 0;
                        for (int b = 0; b < l; ++b)
                            if ((mask >> b & 1) && chosen[b]) ++overlap;
                        score += overlap;
                        if (overlap + 1 == __builtin_popcount(mask)) score += 1000;
                    }
                    if (score > best_score) {
                        best_score = score;
                        best = c2;
                    }
                }
                order.push_back(best);
                chosen[best] = 1;
            }
        }
        place(0, order);
        AutOrderResult res;
        res.nodes = nodes;
        res.exact = !aborted;
        res.order = count;
        Int monomial = 1;
        for (int i = 1; i <= l; ++i) monomial *= i;
        if (code.p() == 3)
            for (int i = 0; i < l; ++i) monomial *= 2;
        res.upper_bound = res.exact ? count : monomial;
        return res;
    }
};

}  // namespace

AutOrderResult code_aut_order(const CodeOverFp& c, std::uint64_t max_nodes) {
    AutSearch s(c, max_nodes);
    return s.run();
}

std::vector<MathieuAuditEntry> mathieu_audit(const std::map<int, Int>& g_values) {
    MathieuOrders mo;
    struct Item {
        int hole;
        Int expect;
        std::string text;
    };
    std::vector<Item> items = {
        {299, 6 * mo.m21, "g(c299) = 6 |M21|"},   {304, 2 * mo.m22, "g(c304) = 2 |M22|"},
        {306, mo.m23, "g(c306) = |M23|"},          {307, mo.m24, "g(c307) = |M24|"},
        {303, mo.m11, "g(c303) = |M11|"},          {305, 2 * mo.m12, "g(c305) = 2 |M12|"},
    };
    std::vector<MathieuAuditEntry> out;
    for (const auto& it : items) {
        MathieuAuditEntry e;
        e.identity = it.text;
        auto found = g_values.find(it.hole);
        if (found == g_values.end()) {
            e.checked = false;
        } else {
            e.checked = true;
            e.ok = (found->second == it.expect);
        }
        out.push_back(std::move(e));
    }
    return out;
}

Int co0_order() {
    Int v = 1;
    for (int i = 0; i < 22; ++i) v *= 2;
    for (int i = 0; i < 9; ++i) v *= 3;
    for (int i = 0; i < 4; ++i) v *= 5;
    v *= 49;
    v *= 11;
    v *= 13;
    v *= 23;
    return v;
}

VolumeAuditResult volume_audit(const std::vector<std::pair<Rat, Int>>& entries, int skipped,
                               int expected_classes) {
    VolumeAuditResult res;
    res.target = make_rat(1, co0_order());
    for (const auto& [vol, aut] : entries) {
        if (aut <= 0) throw domain_error("nonpositive automorphism order");
        res.sum += vol / Rat(aut);
        ++res.counted;
    }
    res.skipped = skipped;
    res.complete = (res.counted == expected_classes && skipped == 0);
    res.matches = (res.sum == res.target);
    return res;
}

}  // namespace leech
