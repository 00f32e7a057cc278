#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "leech/hole.hpp"
#include "leech/matrix.hpp"

namespace leech {

// A linear code over F_2 or F_3, rows kept in reduced echelon form.
class CodeOverFp {
public:
    CodeOverFp(int p, int length) : p_(p), length_(length) {
        if (p != 2 && p != 3) throw domain_error("field must be F2 or F3");
    }
    static CodeOverFp from_rows(int p, int length, const std::vector<std::vector<int>>& rows);
    static CodeOverFp load_file(const std::string& path);

    int p() const { return p_; }
    int length() const { return length_; }
    int dim() const { return static_cast<int>(gens_.size()); }
    const std::vector<std::vector<uint8_t>>& generators() const { return gens_; }

    bool contains(const std::vector<uint8_t>& word) const;
    std::vector<std::vector<uint8_t>> codewords() const;  // all p^dim words
    bool operator==(const CodeOverFp& o) const {
        return p_ == o.p_ && length_ == o.length_ && gens_ == o.gens_;
    }

private:
    int p_, length_;
    std::vector<std::vector<uint8_t>> gens_;
};

int weight(const std::vector<uint8_t>& w);

// weight -> count; includes weight 0 with count 1.
using WeightDistribution = std::map<int, Int>;

WeightDistribution weight_distribution(const CodeOverFp& c, std::uint64_t cap = 1u << 24);
std::string wd_string(const WeightDistribution& wd);
int minimal_weight(const CodeOverFp& c);

// Pless characterizations: a binary (24,12) code of minimal weight 8, or a
// ternary (12,6) code of minimal weight 6, is the corresponding Golay code.
bool is_binary_golay(const CodeOverFp& c);
bool is_ternary_golay(const CodeOverFp& c);

// The quotient data behind Gamma = (nL/nM) ∩ F.
struct QuotientPresentation {
    Int n = 0;                       // least n with nL ⊆ M
    IntMat l_in_m_num;               // numerators of L-generators over the M basis
    Int l_in_m_den = 1;              // common denominator
    std::vector<int> a_vertices;     // vertex indices of the alpha block
    std::vector<int> b_vertices;     // vertex indices of the beta block, paired for a2
};

struct GammaResult {
    QuotientPresentation quotient;
    CodeOverFp code;
    std::string alpha_token;
    std::string beta_token;
    int nu = 0;
    bool aut_a_trivial = false;  // Aut(A) ∩ Aut(P_c, Λ) is trivial
};

// Code construction for the seven large shallow holes: splits the type
// as alpha beta^nu, quotients by <A>, and intersects nL/nM with F. The
// type a1^25 routes through the distinguished vertex instead.
GammaResult gamma_from_hole(const Hole& hole);

// Y sets: vectors of prescribed weight whose shifted weights obey a
// congruence against every codeword.
std::vector<std::vector<uint8_t>> y_set(const CodeOverFp& gamma, int target_weight, int modulus,
                                        int residue);

struct ExtensionResult {
    std::vector<CodeOverFp> embeddings;   // the parity-extended images Gamma'
    std::vector<CodeOverFp> closures;     // Golay-sized closures
    WeightDistribution gamma_prime_wd;    // weight distribution of Gamma'
};

// Parity-coordinate extension recipes, keyed by the hole
// number (299, 303, 304, 306).
ExtensionResult golay_extension_search(const CodeOverFp& gamma, int recipe);

struct AutOrderResult {
    bool exact = false;
    Int order = 0;       // exact order, or a proven lower bound
    Int upper_bound = 0; // monomial group order when not exact
    std::uint64_t nodes = 0;
};

// Order of the monomial automorphism group by partition-refined backtracking
// over column images; sign vectors are solved linearly over F_3.
AutOrderResult code_aut_order(const CodeOverFp& c, std::uint64_t max_nodes = 50'000'000);

// Mathieu group orders used by the audits.
struct MathieuOrders {
    Int m11{7920}, m12{95040}, m21{20160}, m22{443520}, m23{10200960}, m24{244823040};
};

struct MathieuAuditEntry {
    std::string identity;
    bool checked = false;
    bool ok = false;
};

// Verifies the published identities between the g column and Mathieu orders.
std::vector<MathieuAuditEntry> mathieu_audit(const std::map<int, Int>& g_values);

struct VolumeAuditResult {
    Rat sum;          // sum of vol / |Aut|
    Rat target;       // 1 / |Co0|
    bool complete = false;  // all 307 classes present with data
    bool matches = false;
    int counted = 0;
    int skipped = 0;
};

// |Co0| = 2^22 3^9 5^4 7^2 11 13 23.
Int co0_order();

// Exact sum of vol/|Aut| over (volume, order) pairs, compared to 1/|Co0|.
VolumeAuditResult volume_audit(const std::vector<std::pair<Rat, Int>>& entries, int skipped,
                               int expected_classes = 307);

}  // namespace leech
