#pragma once

#include <string>

#include "leech/rat.hpp"

namespace leech {

// Removes the largest square factor: n = s^2 * m with m squarefree.
// Returns {s, m}. Uses trial division plus a perfect-square check, which is
// exact for every radicand this project produces.
std::pair<Int, Int> extract_square(Int n);

// floor(sqrt(p/q)) for p/q >= 0.
Int floor_sqrt_rat(const Rat& r);

// The real number a + b*sqrt(n) with n >= 0 squarefree; n in {0,1} is folded
// into the rational part. Arithmetic stays within one radicand.
class Surd {
public:
    Surd() : a_(0), b_(0), n_(0) {}
    Surd(Rat a) : a_(std::move(a)), b_(0), n_(0) {}  // NOLINT: implicit by design
    Surd(Rat a, Rat b, Int n);

    static Surd sqrt_of(const Rat& r);  // sqrt(r), r >= 0

    const Rat& rational_part() const { return a_; }
    const Rat& coeff() const { return b_; }
    const Int& radicand() const { return n_; }
    bool is_rational() const { return b_ == 0; }

    Surd operator+(const Surd& o) const;
    Surd operator-(const Surd& o) const;
    Surd operator-() const { return Surd(-a_, -b_, n_); }
    Surd operator*(const Surd& o) const;
    Surd operator*(const Rat& r) const { return Surd(a_ * r, b_ * r, n_); }
    Surd operator/(const Rat& r) const { return Surd(rat_div(a_, r), rat_div(b_, r), n_); }
    bool operator==(const Surd& o) const { return a_ == o.a_ && b_ == o.b_ && n_ == o.n_; }

    int sign() const;
    Int floor() const;
    double approx() const;
    std::string str() const;

private:
    Rat a_, b_;
    Int n_;
};

inline int surd_sign(const Surd& x) { return x.sign(); }

// Exact ordering; throws mixed_radicand when both irrational parts live over
// different radicands.
int surd_cmp(const Surd& x, const Surd& y);

// c1*sqrt(r1) - c2*sqrt(r2) with c_i >= 0 and rational radicands r_i >= 0.
// Covers sigma(c, r) and the shallow beta(c, d), whose two radicals do not
// share a radicand.
class RootDiff {
public:
    RootDiff(Rat c1, Rat r1, Rat c2, Rat r2);

    int sign() const;
    // sign of (value - t)
    int cmp_rat(const Rat& t) const;
    bool is_zero() const { return sign() == 0; }
    // Valid when one of the two radical terms vanishes.
    bool is_surd() const;
    Surd to_surd() const;
    double approx() const;
    std::string str() const;

    const Rat& pos_coeff() const { return c1_; }
    const Rat& pos_radicand() const { return r1_; }
    const Rat& neg_coeff() const { return c2_; }
    const Rat& neg_radicand() const { return r2_; }

private:
    Rat c1_, r1_, c2_, r2_;
};

}  // namespace leech
