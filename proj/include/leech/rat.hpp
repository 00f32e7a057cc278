#pragma once

#include <gmpxx.h>

#include <string>

#include "leech/errors.hpp"

namespace leech {

// Arbitrary-precision integers and rationals. mpq_class keeps values
// canonical (lowest terms, positive denominator) through arithmetic, which
// is exactly the invariant Rat needs; construction from raw num/den goes
// through make_rat so the canonical form is never skipped.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(Int num, Int den) {
    if (den == 0) throw domain_error("rational with zero denominator");
    Rat r(std::move(num), std::move(den));
    r.canonicalize();
    return r;
}

inline Rat rat_div(const Rat& a, const Rat& b) {
    if (b == 0) throw domain_error("division by zero");
    return a / b;
}

inline const Int& num(const Rat& r) { return r.get_num(); }
inline const Int& den(const Rat& r) { return r.get_den(); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

// floor(p/q) for any sign of p.
inline Int floor_rat(const Rat& r) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& r) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), num(r).get_mpz_t(), den(r).get_mpz_t());
    return q;
}

// Nearest integer, ties toward +infinity.
inline Int round_rat(const Rat& r) { return floor_rat(r + Rat(1, 2)); }

inline Int lcm(const Int& a, const Int& b) {
    Int r;
    mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int gcd(const Int& a, const Int& b) {
    Int r;
    mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

// floor(sqrt(n)), n >= 0.
inline Int isqrt(const Int& n) {
    if (n < 0) throw domain_error("isqrt of negative");
    Int r;
    mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
    return r;
}

inline bool is_perfect_square(const Int& n) {
    return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Parses "p", "-p", or "p/q".
inline Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        return make_rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
    } catch (const std::invalid_argument&) {
        throw bad_format("cannot parse rational: " + s);
    }
}

inline std::string rat_str(const Rat& r) {
    if (is_integer(r)) return num(r).get_str();
    return num(r).get_str() + "/" + den(r).get_str();
}

}  // namespace leech
