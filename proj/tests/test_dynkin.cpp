#include "doctest.h"
#include "leech/dynkin.hpp"

using namespace leech;

namespace {

// Builds a squared-distance matrix from an edge list (6 = single, 8 = double).
std::vector<std::vector<int>> dist_from_edges(int n, const std::vector<std::tuple<int, int, int>>& edges) {
    std::vector<std::vector<int>> d(n, std::vector<int>(n, 4));
    for (int i = 0; i < n; ++i) d[i][i] = 0;
    for (auto [a, b, w] : edges) d[a][b] = d[b][a] = w;
    return d;
}

std::vector<std::tuple<int, int, int>> path_edges(int n) {
    std::vector<std::tuple<int, int, int>> e;
    for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1, 6);
    return e;
}

}  // namespace

TEST_CASE("paths classify as ordinary a_k") {
    for (int k = 1; k <= 9; ++k) {
        auto g = dynkin_classify_dist(dist_from_edges(k, path_edges(k)));
        REQUIRE(g.components.size() == 1);
        CHECK(g.components[0].token() == "a" + std::to_string(k));
        CHECK(!g.components[0].extended);
    }
}

TEST_CASE("cycles classify as extended A_k") {
    for (int n = 3; n <= 8; ++n) {
        auto edges = path_edges(n);
        edges.emplace_back(0, n - 1, 6);
        auto g = dynkin_classify_dist(dist_from_edges(n, edges));
        REQUIRE(g.components.size() == 1);
        CHECK(g.components[0].token() == "A" + std::to_string(n - 1));
        CHECK(g.components[0].extended);
    }
}

TEST_CASE("double edge pair is extended A1") {
    auto g = dynkin_classify_dist(dist_from_edges(2, {{0, 1, 8}}));
    CHECK(g.components[0].token() == "A1");
    CHECK(g.components[0].extended);
}

TEST_CASE("forks and stars") {
    // ordinary d4: hub 0 with leaves 1,2,3
    auto d4 = dynkin_classify_dist(dist_from_edges(4, {{0, 1, 6}, {0, 2, 6}, {0, 3, 6}}));
    CHECK(d4.components[0].token() == "d4");
    // ordinary d6: two leaves at the hub plus a tail
    auto d6 = dynkin_classify_dist(
        dist_from_edges(6, {{0, 1, 6}, {0, 2, 6}, {0, 3, 6}, {3, 4, 6}, {4, 5, 6}}));
    CHECK(d6.components[0].token() == "d6");
    // extended D4: 4-star
    auto D4 = dynkin_classify_dist(
        dist_from_edges(5, {{0, 1, 6}, {0, 2, 6}, {0, 3, 6}, {0, 4, 6}}));
    CHECK(D4.components[0].token() == "D4");
    CHECK(D4.components[0].extended);
    // extended D5: forks at both ends of a 2-path
    auto D5 = dynkin_classify_dist(
        dist_from_edges(6, {{0, 2, 6}, {1, 2, 6}, {2, 3, 6}, {3, 4, 6}, {3, 5, 6}}));
    CHECK(D5.components[0].token() == "D5");
    // e6: arms 1,2,2
    auto e6 = dynkin_classify_dist(
        dist_from_edges(6, {{0, 1, 6}, {0, 2, 6}, {2, 3, 6}, {0, 4, 6}, {4, 5, 6}}));
    CHECK(e6.components[0].token() == "e6");
    // extended E6: arms 2,2,2
    auto E6 = dynkin_classify_dist(dist_from_edges(
        7, {{0, 1, 6}, {1, 2, 6}, {0, 3, 6}, {3, 4, 6}, {0, 5, 6}, {5, 6, 6}}));
    CHECK(E6.components[0].token() == "E6");
    CHECK(E6.components[0].extended);
}

TEST_CASE("unknown diagrams are rejected") {
    // triangle with a pendant: cycle plus branch
    auto bad = dist_from_edges(4, {{0, 1, 6}, {1, 2, 6}, {0, 2, 6}, {2, 3, 6}});
    CHECK_THROWS_AS(dynkin_classify_dist(bad), unknown_diagram);
    // double edge inside a 3-node component
    auto bad2 = dist_from_edges(3, {{0, 1, 8}, {1, 2, 6}});
    CHECK_THROWS_AS(dynkin_classify_dist(bad2), unknown_diagram);
    // distance outside {4,6,8}
    auto bad3 = dist_from_edges(2, {{0, 1, 10}});
    CHECK_THROWS_AS(dynkin_classify_dist(bad3), unknown_diagram);
}

TEST_CASE("type strings and comparison") {
    std::vector<DynkinComponent> comps;
    for (int i = 0; i < 9; ++i) comps.push_back({'a', 1, false, {}});
    for (int i = 0; i < 4; ++i) comps.push_back({'d', 4, false, {}});
    CHECK(type_string_of(comps) == "d4^4 a1^9");
    CHECK(same_type("a5 a2^10", "a2^10 a5"));
    CHECK(!same_type("a5 a2^10", "a5 a2^9 a1"));
    CHECK(same_type("D24", "D24"));
    CHECK(!same_type("D24", "d24"));
    CHECK_THROWS_AS(parse_type("q7"), bad_format);
}

TEST_CASE("two points at distance rules") {
    // nodes at squared distance 6 form a2; at 4 they are a1 a1
    auto a2 = dynkin_classify_dist(dist_from_edges(2, {{0, 1, 6}}));
    CHECK(a2.type_string() == "a2");
    auto a1a1 = dynkin_classify_dist(dist_from_edges(2, {}));
    CHECK(a1a1.type_string() == "a1^2");
}
