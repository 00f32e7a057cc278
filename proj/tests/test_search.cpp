#include "d24_fixture.hpp"
#include "doctest.h"
#include "leech/congruence.hpp"
#include "leech/search.hpp"

using namespace leech;

TEST_CASE("templates from type strings") {
    DistanceTemplate a2 = DistanceTemplate::from_type("a2");
    CHECK(a2.size == 2);
    CHECK(a2.dist2[0][1] == 6);
    DistanceTemplate pair = DistanceTemplate::from_type("a1^2");
    CHECK(pair.dist2[0][1] == 4);
    DistanceTemplate d24 = DistanceTemplate::from_type("D24");
    CHECK(d24.size == 25);
    CHECK(!d24.has_double_edges());
    DistanceTemplate a124 = DistanceTemplate::from_type("A1^24");
    CHECK(a124.has_double_edges());
    CHECK_THROWS_AS(find_congruent_subset(LatticeModel::standard(), a124), wrong_shape);
}

TEST_CASE("tiny searches hit the shells") {
    const LatticeModel& m = LatticeModel::standard();
    auto pair4 = find_congruent_subset(m, DistanceTemplate::from_type("a1^2"));
    REQUIRE(pair4.has_value());
    CHECK(m.dist2_ll((*pair4)[0], (*pair4)[1]) == 4);
    auto pair6 = find_congruent_subset(m, DistanceTemplate::from_type("a2"));
    REQUIRE(pair6.has_value());
    CHECK(m.dist2_ll((*pair6)[0], (*pair6)[1]) == 6);
}

TEST_CASE("searches are deterministic") {
    const LatticeModel& m = LatticeModel::standard();
    DistanceTemplate t = DistanceTemplate::from_type("a5 a2^10");
    auto s1 = find_congruent_subset(m, t);
    auto s2 = find_congruent_subset(m, t);
    REQUIRE(s1.has_value());
    CHECK(*s1 == *s2);
}

TEST_CASE("found subsets validate as holes") {
    const LatticeModel& m = LatticeModel::standard();
    for (const char* type : {"a5 a2^10", "d4^4 a1^9", "a1^25"}) {
        DistanceTemplate t = DistanceTemplate::from_type(type);
        auto sol = find_congruent_subset(m, t);
        REQUIRE(sol.has_value());
        HoleRecord rec;
        rec.id = type;
        rec.claimed_type = type;
        rec.vertices = *sol;
        ValidationReport rep = validate_hole(m, rec);
        CHECK(rep.ok);
        CHECK(!rep.deep);
    }
}

TEST_CASE("a searched D24 subset gives a hole equivalent to the bundled one") {
    const LatticeModel& m = LatticeModel::standard();
    DistanceTemplate t = DistanceTemplate::from_type("D24");
    auto sol = find_congruent_subset(m, t);
    REQUIRE(sol.has_value());
    HoleRecord rec;
    rec.id = "searched";
    rec.claimed_type = "D24";
    rec.vertices = *sol;
    Hole found = Hole::analyze(m, rec);
    CHECK(found.deep());
    Hole bundled = Hole::analyze(m, d24_record());
    EquivalenceResult eq = equivalent(bundled, found);
    CHECK(eq.equivalent);
}

TEST_CASE("budget exhaustion reports cleanly") {
    const LatticeModel& m = LatticeModel::standard();
    DistanceTemplate t = DistanceTemplate::from_type("d4 a1^21");
    SubsetSearchOptions opt;
    opt.max_nodes = 3;
    SubsetSearchStats stats;
    auto sol = find_congruent_subset(m, t, opt, &stats);
    CHECK(!sol.has_value());
    CHECK(!stats.exhausted);  // budget stop, not exhaustion
}

TEST_CASE("unique types: no second class appears within the budget") {
    const LatticeModel& m = LatticeModel::standard();
    DistanceTemplate t = DistanceTemplate::from_type("a1^25");
    SubsetSearchOptions opt;
    opt.budget_seconds = 5;
    SubsetSearchStats stats;
    auto reps = enumerate_classes(m, t, 2, opt, &stats);
    REQUIRE(reps.size() == 1);  // the class is unique; the search times out
    CHECK(!stats.exhausted);
}
