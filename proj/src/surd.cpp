#include "leech/surd.hpp"

#include <cmath>
#include <sstream>

#include "leech/errors.hpp"

namespace leech {

std::pair<Int, Int> extract_square(Int n) {
    if (n < 0) throw domain_error("negative radicand");
    Int s = 1;
    if (n == 0) return {s, n};
    for (Int d = 2; d * d <= n && d < 100000; ++d) {
        Int dd = d * d;
        while (n % dd == 0) {
            n /= dd;
            s *= d;
        }
    }
    if (is_perfect_square(n)) {
        s *= isqrt(n);
        n = 1;
    }
    return {s, n};
}

Int floor_sqrt_rat(const Rat& r) {
    if (r < 0) throw domain_error("sqrt of negative");
    // floor(sqrt(p/q)) = floor(sqrt(pq)/q) = floor(isqrt(pq)/q)
    Int pq = num(r) * den(r);
    Int f = isqrt(pq);
    Int out;
    mpz_fdiv_q(out.get_mpz_t(), f.get_mpz_t(), den(r).get_mpz_t());
    return out;
}

Surd::Surd(Rat a, Rat b, Int n) : a_(std::move(a)), b_(std::move(b)), n_(std::move(n)) {
    if (n_ < 0) throw domain_error("negative radicand");
    if (b_ == 0) {
        n_ = 0;
        return;
    }
    auto [s, m] = extract_square(n_);
    n_ = m;
    b_ *= Rat(s);
    if (n_ <= 1) {
        a_ += b_ * Rat(n_);  // n in {0,1}: the radical is rational
        b_ = 0;
        n_ = 0;
    }
}

Surd Surd::sqrt_of(const Rat& r) {
    if (r < 0) throw domain_error("sqrt of negative");
    // sqrt(p/q) = sqrt(pq)/q
    return Surd(Rat(0), make_rat(1, den(r)), num(r) * den(r));
}

Surd Surd::operator+(const Surd& o) const {
    if (is_rational()) return Surd(a_ + o.a_, o.b_, o.n_);
    if (o.is_rational()) return Surd(a_ + o.a_, b_, n_);
    if (n_ != o.n_) throw mixed_radicand("surd addition across radicands");
    return Surd(a_ + o.a_, b_ + o.b_, n_);
}

Surd Surd::operator-(const Surd& o) const { return *this + (-o); }

Surd Surd::operator*(const Surd& o) const {
    if (is_rational()) return Surd(a_ * o.a_, a_ * o.b_, o.n_);
    if (o.is_rational()) return Surd(a_ * o.a_, b_ * o.a_, n_);
    if (n_ != o.n_) throw mixed_radicand("surd multiplication across radicands");
    return Surd(a_ * o.a_ + b_ * o.b_ * Rat(n_), a_ * o.b_ + b_ * o.a_, n_);
}

int Surd::sign() const {
    int sa = sgn(a_);
    if (b_ == 0) return sa;
    int sb = sgn(b_);
    if (a_ == 0) return sb;
    if (sa == sb) return sa;
    // Opposite signs: compare a^2 against b^2 n.
    Rat lhs = a_ * a_;
    Rat rhs = b_ * b_ * Rat(n_);
    int c = cmp(lhs, rhs);
    if (c == 0) return 0;  // only possible when n is a perfect square (folded)
    // |a| dominates  =>  the sign of a wins.
    return c > 0 ? sa : sb;
}

Int Surd::floor() const {
    if (b_ == 0) return floor_rat(a_);
    // Write the value as (A + B*sqrt(n))/C with integers.
    Int C = lcm(den(a_), den(b_));
    Int A = num(a_) * (C / den(a_));
    Int B = num(b_) * (C / den(b_));
    Int seed;
    if (B >= 0) {
        Int f = isqrt(B * B * n_);
        mpz_fdiv_q(seed.get_mpz_t(), Int(A + f).get_mpz_t(), C.get_mpz_t());
    } else {
        Int g = isqrt(B * B * n_);
        mpz_fdiv_q(seed.get_mpz_t(), Int(A - g - 1).get_mpz_t(), C.get_mpz_t());
    }
    // Exact fix-up (at most a couple of steps).
    while ((*this - Surd(Rat(seed + 1))).sign() >= 0) ++seed;
    while ((*this - Surd(Rat(seed))).sign() < 0) --seed;
    return seed;
}

double Surd::approx() const {
    return a_.get_d() + b_.get_d() * std::sqrt(n_.get_d());
}

std::string Surd::str() const {
    if (b_ == 0) return rat_str(a_);
    std::ostringstream os;
    if (a_ != 0) os << rat_str(a_) << (b_ > 0 ? " + " : " - ");
    else if (b_ < 0) os << "-";
    Rat ab = abs(b_);
    if (ab != 1) os << rat_str(ab) << "*";
    os << "sqrt(" << n_.get_str() << ")";
    return os.str();
}

int surd_cmp(const Surd& x, const Surd& y) {
    if (!x.is_rational() && !y.is_rational() && x.radicand() != y.radicand())
        throw mixed_radicand("surd comparison across radicands");
    return (x - y).sign();
}

RootDiff::RootDiff(Rat c1, Rat r1, Rat c2, Rat r2)
    : c1_(std::move(c1)), r1_(std::move(r1)), c2_(std::move(c2)), r2_(std::move(r2)) {
    if (c1_ < 0 || c2_ < 0 || r1_ < 0 || r2_ < 0)
        throw domain_error("RootDiff requires nonnegative coefficients and radicands");
    if (c1_ == 0) r1_ = 0;
    if (r1_ == 0) c1_ = 0;
    if (c2_ == 0) r2_ = 0;
    if (r2_ == 0) c2_ = 0;
}

int RootDiff::sign() const {
    // compare c1^2 r1 against c2^2 r2 (both sides nonnegative)
    return cmp(c1_ * c1_ * r1_, c2_ * c2_ * r2_);
}

int RootDiff::cmp_rat(const Rat& t) const {
    // sign of X - Y where X = c1 sqrt(r1) >= 0 and Y = t + c2 sqrt(r2).
    Surd y = Surd(t) + Surd::sqrt_of(r2_) * c2_;
    int sy = y.sign();
    Rat x2 = c1_ * c1_ * r1_;
    if (sy < 0) return 1;  // X >= 0 > Y
    if (sy == 0) return x2 > 0 ? 1 : 0;
    // Both sides nonnegative: compare squares; y^2 stays a single-radicand surd.
    Surd diff = Surd(x2) - y * y;
    return diff.sign();
}

bool RootDiff::is_surd() const { return c1_ == 0 || c2_ == 0; }

Surd RootDiff::to_surd() const {
    if (c1_ == 0 && c2_ == 0) return Surd(Rat(0));
    if (c2_ == 0) return Surd::sqrt_of(r1_) * c1_;
    if (c1_ == 0) return -(Surd::sqrt_of(r2_) * c2_);
    throw mixed_radicand("two-radical value is not a single surd");
}

double RootDiff::approx() const {
    return c1_.get_d() * std::sqrt(r1_.get_d()) - c2_.get_d() * std::sqrt(r2_.get_d());
}

std::string RootDiff::str() const {
    std::ostringstream os;
    if (c1_ == 0 && c2_ == 0) return "0";
    if (c1_ != 0) os << rat_str(c1_) << "*sqrt(" << rat_str(r1_) << ")";
    if (c2_ != 0) {
        if (c1_ != 0) os << " - ";
        else os << "-";
        os << rat_str(c2_) << "*sqrt(" << rat_str(r2_) << ")";
    }
    return os.str();
}

}  // namespace leech
