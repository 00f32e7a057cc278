#pragma once

#include <string>
#include <vector>

#include "leech/hole.hpp"
#include "leech/surd.hpp"

namespace leech {

// The invariant tuple (s, m, N, theta^2) driving the chamber bound.
struct BoundProfile {
    std::string id;
    bool deep = false;
    bool s_infinite = false;
    Rat s;  // meaningful when !s_infinite
    Int m;
    Int n;
    Rat theta2;
    Rat r2;

    static BoundProfile from(const std::string& id, const HoleInvariants& inv);
};

// phi(d) = sqrt(1081) (529 d + 1) / 23.
Surd phi(long d);
Int phi_floor(long d);

// The positive root beta(c, d) of Psi_c: a single surd for deep holes, a
// two-radical difference for shallow ones.
struct BetaValue {
    bool single = true;
    Surd surd;
    RootDiff diff{Rat(0), Rat(0), Rat(0), Rat(0)};

    int cmp_rat(const Rat& t) const;  // sign of beta - t
    Int floor() const;
    double approx() const;
    std::string str() const;
};

BetaValue beta(const BoundProfile& p, long d);

// Exact sign of Psi_c(t) = (4/m^2 + d) - (4 sqrt(R^2 - theta^2)/m) t + (R^2 - 2) t^2.
int psi_sign(const BoundProfile& p, long d, const Rat& t);

// S_I: b^2 divides N^2 d, and (shallow only) b^2 <= s d.
std::vector<Int> set_I(const BoundProfile& p, long d);

// S_II = {1, ..., floor(sqrt(d / (2 - theta^2)))}.
Int set_II_max(const BoundProfile& p, long d);

// S_III as a contiguous integer range [lo, hi]; empty when lo > hi.
struct IntRange {
    Int lo, hi;
    bool empty() const { return lo > hi; }
};
IntRange set_III(const BoundProfile& p, long d);

struct HoleSets {
    std::string id;
    std::vector<Int> s_i;
    Int s_ii_max;
    IntRange s_iii;
};

struct SetSResult {
    long d = 0;
    std::vector<HoleSets> per_hole;
    // Union as disjoint sorted ranges.
    std::vector<IntRange> s_union;
    Surd phi_bound;
    bool catalog_complete = false;  // all 307 classes present

    bool union_is_initial_segment(const Int& upto) const;
    bool union_contains(const Int& b) const;
};

SetSResult set_S(const std::vector<BoundProfile>& profiles, long d);

struct ClaimEntry {
    std::string id;
    bool claim1 = false;
    bool claim2 = false;
    bool claim3 = false;
    bool skipped3 = false;  // the extremal hole is excluded from claim 3
    std::string witness;
};

struct ClaimReport {
    std::vector<ClaimEntry> entries;
    bool all_pass = false;
    // Claim 2 and the membership checks are run for every even d in [2, d_max].
    long d_max = 20;
};

ClaimReport verify_claims(const std::vector<BoundProfile>& profiles, long d_max = 20);

// A vector (a, b, v) of U + Leech(-1), with <(a,b,v),(a',b',v')> =
// a b' + a' b - <v, v'>.
struct HypVector26 {
    Int a, b;
    LatticeVector v;
};

Int hyp_inner(const LatticeModel& model, const HypVector26& x, const HypVector26& y);

// r_lambda = (lambda^2/2 - 1, 1, lambda).
HypVector26 root_of(const LatticeModel& model, const LatticeVector& lambda);

struct ChamberCheckReport {
    bool norm_ok = false;       // 2ab - <v,v> = d
    long violations = 0;        // lambdas with <x, r_lambda> < 0
    long boundary = 0;          // lambdas with <x, r_lambda> = 0
    bool distance_form_ok = true;  // sign agreement with the distance form
    std::string detail;
};

// Checks the chamber conditions of x against a finite candidate list and,
// when b >= sqrt(d/2), the equivalence with the distance form
// ||v/b - lambda||^2 >= 2 - d/b^2.
ChamberCheckReport chamber_check(const LatticeModel& model, const HypVector26& x, long d,
                                 const std::vector<LatticeVector>& lambdas);

}  // namespace leech
