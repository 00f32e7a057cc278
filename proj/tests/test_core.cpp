#include <random>

#include "doctest.h"
#include "leech/matrix.hpp"
#include "leech/surd.hpp"

using namespace leech;

TEST_CASE("rationals stay canonical through arithmetic") {
    Rat a = make_rat(2, 4);
    CHECK(num(a) == 1);
    CHECK(den(a) == 2);
    Rat b = parse_rat("-6/8");
    CHECK(rat_str(b) == "-3/4");
    // round trip (p/q + r/s) - r/s == p/q in lowest terms
    std::mt19937 rng(7);
    for (int i = 0; i < 200; ++i) {
        Rat x = make_rat((int)(rng() % 2000) - 1000, 1 + rng() % 50);
        Rat y = make_rat((int)(rng() % 2000) - 1000, 1 + rng() % 50);
        Rat z = (x + y) - y;
        CHECK(z == x);
        CHECK(gcd(num(z), den(z)) == 1);
    }
    CHECK_THROWS_AS(rat_div(Rat(1), Rat(0)), domain_error);
    CHECK_THROWS_AS(make_rat(1, 0), domain_error);
}

TEST_CASE("linear_solve on basic examples") {
    QMatrix id3 = QMatrix::identity(3);
    RatVec b{Rat(1), Rat(2), Rat(3)};
    CHECK(linear_solve(id3, b) == b);

    QMatrix a(2, 2);
    a.at(0, 0) = 2; a.at(0, 1) = 1;
    a.at(1, 0) = 1; a.at(1, 1) = 1;
    RatVec rhs{Rat(3), Rat(2)};
    RatVec x = linear_solve(a, rhs);
    CHECK(x[0] == 1);
    CHECK(x[1] == 1);
    // A * x == b exactly
    CHECK(a.at(0, 0) * x[0] + a.at(0, 1) * x[1] == rhs[0]);

    QMatrix s(2, 2);
    s.at(0, 0) = 1; s.at(0, 1) = 1;
    s.at(1, 0) = 2; s.at(1, 1) = 2;
    CHECK_THROWS_AS(linear_solve(s, rhs), singular_matrix);
}

TEST_CASE("det basics and multiplicativity") {
    CHECK(det(QMatrix::identity(24)) == 1);
    QMatrix d(2, 2);
    d.at(0, 0) = 2;
    d.at(1, 1) = 3;
    CHECK(det(d) == 6);

    std::mt19937 rng(11);
    for (int n = 2; n <= 6; ++n) {
        QMatrix a(n, n), b(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                a.at(i, j) = (int)(rng() % 11) - 5;
                b.at(i, j) = (int)(rng() % 11) - 5;
            }
        CHECK(det(matmul(a, b)) == det(a) * det(b));
    }
}

TEST_CASE("random A*solve(A,b) == b") {
    std::mt19937 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        int n = 2 + trial % 5;
        QMatrix a(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) a.at(i, j) = make_rat((int)(rng() % 19) - 9, 1 + rng() % 4);
        if (det(a) == 0) continue;
        RatVec b(n);
        for (int i = 0; i < n; ++i) b[i] = make_rat((int)(rng() % 19) - 9, 1 + rng() % 4);
        RatVec x = linear_solve(a, b);
        for (int i = 0; i < n; ++i) {
            Rat s;
            for (int j = 0; j < n; ++j) s += a.at(i, j) * x[j];
            CHECK(s == b[i]);
        }
    }
}

TEST_CASE("surd sign by squaring") {
    CHECK(Surd(Rat(0), Rat(0), 2).sign() == 0);
    CHECK(Surd(Rat(3), Rat(-2), 2).sign() == 1);   // 9 > 8
    CHECK(Surd(Rat(-3), Rat(2), 2).sign() == -1);  // 8 < 9
    // 0 + 1*sqrt(2) vs 1 + 0*sqrt(2)
    CHECK(surd_cmp(Surd(Rat(0), Rat(1), 2), Surd(Rat(1))) > 0);
    CHECK(surd_cmp(Surd(Rat(2), Rat(5), 7), Surd(Rat(2), Rat(5), 7)) == 0);
    CHECK_THROWS_AS(surd_cmp(Surd(Rat(1), Rat(1), 2), Surd(Rat(0), Rat(1), 3)), mixed_radicand);
}

TEST_CASE("surd sign agrees with double evaluation on random values") {
    std::mt19937 rng(17);
    for (int i = 0; i < 1000; ++i) {
        Rat a = make_rat((int)(rng() % 200) - 100, 1 + rng() % 9);
        Rat b = make_rat((int)(rng() % 200) - 100, 1 + rng() % 9);
        long n = 2 + rng() % 50;
        Surd s(a, b, n);
        double v = s.approx();
        if (std::abs(v) < 1e-9) continue;  // too close for the float check
        CHECK(s.sign() == (v > 0 ? 1 : -1));
    }
}

TEST_CASE("surd normalization and floor") {
    // sqrt(8) = 2 sqrt(2)
    Surd s(Rat(0), Rat(1), 8);
    CHECK(s.radicand() == 2);
    CHECK(s.coeff() == 2);
    // sqrt(4) folds to rational
    CHECK(Surd(Rat(1), Rat(3), 4).is_rational());
    CHECK(Surd(Rat(1), Rat(3), 4).rational_part() == 7);

    CHECK(Surd::sqrt_of(make_rat(1, 4324)).str() == "1/2162*sqrt(1081)");
    CHECK(Surd(Rat(0), Rat(1), 2).floor() == 1);
    CHECK(Surd(Rat(0), Rat(-1), 2).floor() == -2);
    CHECK(Surd(Rat(10), make_rat(-1, 3), 2).floor() == 9);
    CHECK(floor_sqrt_rat(Rat(8648)) == 92);
    CHECK(floor_sqrt_rat(Rat(8649)) == 93);
}

TEST_CASE("two-radical differences") {
    RootDiff zero(Rat(1), Rat(2), Rat(1), Rat(2));
    CHECK(zero.sign() == 0);
    RootDiff d(Rat(1), Rat(3), Rat(1), Rat(2));  // sqrt3 - sqrt2 ~ 0.318
    CHECK(d.sign() == 1);
    CHECK(d.cmp_rat(Rat(0)) == 1);
    CHECK(d.cmp_rat(Rat(1)) == -1);
    CHECK(d.cmp_rat(make_rat(3, 10)) == 1);
    CHECK(d.cmp_rat(make_rat(32, 100)) == -1);
    RootDiff single(Rat(2), Rat(2), Rat(0), Rat(0));
    CHECK(single.is_surd());
    CHECK(single.to_surd() == Surd(Rat(0), Rat(2), 2));
}

TEST_CASE("integer lattice utilities") {
    IntMat m = {{Int(2), Int(0)}, {Int(0), Int(2)}, {Int(1), Int(1)}};
    IntMat h = hnf(m);
    REQUIRE(h.size() == 2);
    CHECK(h[0][0] == 1);
    CHECK(h[1][1] == 2);
    // intersection of 2Z^2 + (1,1)Z with 3Z^2
    IntMat a = {{Int(2), Int(0)}, {Int(1), Int(1)}};
    IntMat b = {{Int(3), Int(0)}, {Int(0), Int(3)}};
    IntMat inter = lattice_intersection(a, b);
    // indices: [Z^2 : A] = 2, [Z^2 : B] = 9, A+B = Z^2 so [Z^2 : A cap B] = 18
    REQUIRE(inter.size() == 2);
    Int d = inter[0][0] * inter[1][1];
    CHECK(d == 18);
}
