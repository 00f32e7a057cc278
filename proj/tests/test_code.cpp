#include <random>

#include "doctest.h"
#include "leech/catalog.hpp"
#include "leech/code.hpp"

using namespace leech;

namespace {
const std::string kData = std::string(LEECH_DATA_DIR);
CodeOverFp golay24() { return CodeOverFp::load_file(kData + "/golay24.txt"); }
CodeOverFp golay12() { return CodeOverFp::load_file(kData + "/golay12.txt"); }

Hole catalog_hole(const std::string& id) {
    static Catalog cat = ingest(kData + "/catalog.json");
    const HoleRecord* rec = cat.find(id);
    REQUIRE(rec != nullptr);
    return Hole::analyze(LatticeModel::standard(), *rec);
}
}  // namespace

TEST_CASE("Golay weight distributions and recognition") {
    CodeOverFp c24 = golay24();
    CHECK(wd_string(weight_distribution(c24)) == "0^1 8^759 12^2576 16^759 24^1");
    CHECK(is_binary_golay(c24));

    CodeOverFp c12 = golay12();
    CHECK(wd_string(weight_distribution(c12)) == "0^1 6^264 9^440 12^24");
    CHECK(is_ternary_golay(c12));

    // a (24,12) code containing a weight-4 word is not Golay
    std::vector<std::vector<int>> rows;
    for (const auto& g : c24.generators())
        rows.emplace_back(g.begin(), g.end());
    rows.resize(11);
    std::vector<int> short_word(24, 0);
    short_word[0] = short_word[1] = short_word[2] = short_word[3] = 1;
    rows.push_back(short_word);
    CodeOverFp planted = CodeOverFp::from_rows(2, 24, rows);
    REQUIRE(planted.dim() == 12);
    CHECK(!is_binary_golay(planted));

    CodeOverFp zero = CodeOverFp::from_rows(2, 8, {});
    CHECK(wd_string(weight_distribution(zero)) == "0^1");
}

TEST_CASE("weight distribution counts sum to p^dim and survive monomial moves") {
    CodeOverFp c12 = golay12();
    WeightDistribution wd = weight_distribution(c12);
    Int total = 0;
    for (const auto& [w, n] : wd) total += n;
    Int expect = 1;
    for (int i = 0; i < c12.dim(); ++i) expect *= 3;
    CHECK(total == expect);
    // permute columns and rescale one: same distribution
    std::vector<std::vector<int>> rows;
    for (const auto& g : c12.generators()) {
        std::vector<int> r(g.rbegin(), g.rend());
        r[3] = (2 * r[3]) % 3;
        rows.push_back(r);
    }
    CodeOverFp moved = CodeOverFp::from_rows(3, 12, rows);
    CHECK(weight_distribution(moved) == wd);
}

TEST_CASE("gamma quotients match the published data") {
    struct Expect {
        const char* id;
        long n;
        int p, len, dim;
        const char* wd;
    };
    const Expect table[] = {
        {"c293", 15, 3, 10, 5, "0^1 4^30 6^60 7^120 9^20 10^12"},
        {"c299", 14, 2, 21, 11, "0^1 6^168 8^210 10^1008 12^280 14^360 16^21"},
        {"c303", 18, 3, 11, 5, "0^1 6^132 9^110"},
        {"c304", 16, 2, 22, 11, "0^1 6^77 8^330 10^616 12^616 14^330 16^77 22^1"},
        {"c306", 18, 2, 23, 11, "0^1 8^506 12^1288 16^253"},
    };
    for (const auto& e : table) {
        Hole h = catalog_hole(e.id);
        GammaResult g = gamma_from_hole(h);
        CHECK(g.quotient.n == e.n);
        CHECK(g.code.p() == e.p);
        CHECK(g.code.length() == e.len);
        CHECK(g.code.dim() == e.dim);
        CHECK(wd_string(weight_distribution(g.code)) == e.wd);
        CHECK(g.aut_a_trivial);
    }
    // c305: minimal weight 6 makes it the ternary Golay code
    GammaResult g305 = gamma_from_hole(catalog_hole("c305"));
    CHECK(g305.quotient.n == 21);
    CHECK(is_ternary_golay(g305.code));
    // c307: the distinguished-vertex construction gives the binary Golay code
    GammaResult g307 = gamma_from_hole(catalog_hole("c307"));
    CHECK(g307.quotient.n == 10);
    CHECK(is_binary_golay(g307.code));
}

TEST_CASE("n is minimal: n/q L leaves M for prime divisors q") {
    Hole h = catalog_hole("c293");
    GammaResult g = gamma_from_hole(h);
    Int n = g.quotient.n;
    for (long q : {2L, 3L, 5L, 7L, 11L, 13L}) {
        if (n % q != 0) continue;
        Int reduced = n / q;
        bool integral = true;
        for (const auto& row : g.quotient.l_in_m_num)
            for (const auto& v : row)
                if ((v * reduced) % n != 0) integral = false;
        CHECK(!integral);
    }
}

TEST_CASE("gamma is independent of the a2 pair labeling") {
    const LatticeModel& m = LatticeModel::standard();
    static Catalog cat = ingest(kData + "/catalog.json");
    HoleRecord rec = *cat.find("c293");
    GammaResult base = gamma_from_hole(Hole::analyze(m, rec));
    WeightDistribution base_wd = weight_distribution(base.code);
    std::mt19937 rng(53);
    for (int trial = 0; trial < 3; ++trial) {
        HoleRecord shuffled = rec;
        Hole h0 = Hole::analyze(m, shuffled);
        // swap the two vertices of a few a2 components in record order
        for (const auto& comp : h0.graph().components) {
            if (comp.token() != "a2" || rng() % 2 == 0) continue;
            std::swap(shuffled.vertices[comp.nodes[0]], shuffled.vertices[comp.nodes[1]]);
        }
        GammaResult alt = gamma_from_hole(Hole::analyze(m, shuffled));
        CHECK(alt.quotient.n == base.quotient.n);
        CHECK(alt.code.dim() == base.code.dim());
        CHECK(weight_distribution(alt.code) == base_wd);
    }
}

TEST_CASE("y sets and the zero-code degenerate contract") {
    GammaResult g303 = gamma_from_hole(catalog_hole("c303"));
    CHECK(y_set(g303.code, 11, 3, 2).size() == 24);
    GammaResult g304 = gamma_from_hole(catalog_hole("c304"));
    CHECK(y_set(g304.code, 7, 4, 3).size() == 352);
    // zero code: the condition degenerates to the full weight slice
    CodeOverFp zero = CodeOverFp::from_rows(2, 5, {});
    CHECK(y_set(zero, 2, 1, 0).size() == 10);  // C(5,2)
}

TEST_CASE("extension recipes close to Golay codes") {
    GammaResult g299 = gamma_from_hole(catalog_hole("c299"));
    ExtensionResult e299 = golay_extension_search(g299.code, 299);
    CHECK(e299.embeddings.size() == 6);
    CHECK(wd_string(e299.gamma_prime_wd) == "0^1 8^378 12^1288 16^381");
    for (const auto& c : e299.closures) CHECK(is_binary_golay(c));

    GammaResult g304 = gamma_from_hole(catalog_hole("c304"));
    ExtensionResult e304 = golay_extension_search(g304.code, 304);
    CHECK(wd_string(e304.gamma_prime_wd) == "0^1 8^407 12^1232 16^407 24^1");
    REQUIRE(e304.closures.size() == 2);
    for (const auto& c : e304.closures) CHECK(is_binary_golay(c));

    GammaResult g303 = gamma_from_hole(catalog_hole("c303"));
    ExtensionResult e303 = golay_extension_search(g303.code, 303);
    REQUIRE(e303.closures.size() == 2);
    for (const auto& c : e303.closures) CHECK(is_ternary_golay(c));

    GammaResult g306 = gamma_from_hole(catalog_hole("c306"));
    ExtensionResult e306 = golay_extension_search(g306.code, 306);
    REQUIRE(e306.closures.size() == 1);
    CHECK(is_binary_golay(e306.closures[0]));
}

TEST_CASE("code automorphism orders") {
    GammaResult g293 = gamma_from_hole(catalog_hole("c293"));
    AutOrderResult r = code_aut_order(g293.code);
    CHECK(r.exact);
    CHECK(r.order == 1440);

    CodeOverFp zero = CodeOverFp::from_rows(2, 5, {});
    AutOrderResult z = code_aut_order(zero);
    CHECK(z.exact);
    CHECK(z.order == 120);  // the full symmetric group

    // budget exhaustion reports bounds instead of hanging
    AutOrderResult capped = code_aut_order(golay24(), 1000);
    CHECK(!capped.exact);
    CHECK(capped.upper_bound > 0);
}

TEST_CASE("mathieu identity table") {
    std::map<int, Int> g = {{299, Int(120960)},  {304, Int(887040)}, {306, Int(10200960)},
                            {307, Int(244823040)}, {303, Int(7920)},   {305, Int(190080)}};
    auto entries = mathieu_audit(g);
    for (const auto& e : entries) {
        CHECK(e.checked);
        CHECK(e.ok);
    }
    g.erase(303);
    auto partial = mathieu_audit(g);
    int skipped = 0;
    for (const auto& e : partial)
        if (!e.checked) ++skipped;
    CHECK(skipped == 1);
}

TEST_CASE("volume audit bookkeeping") {
    CHECK(co0_order() == Int("8315553613086720000"));
    std::vector<std::pair<Rat, Int>> entries = {{make_rat(1, 100), Int(4)}};
    VolumeAuditResult res = volume_audit(entries, 0);
    CHECK(!res.complete);
    CHECK(res.counted == 1);
    CHECK(res.sum == make_rat(1, 400));
    CHECK(res.target == make_rat(1, co0_order()));
}
