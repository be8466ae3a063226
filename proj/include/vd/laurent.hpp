#pragma once

// Formal rational functions in a single variable t with exact rational
// coefficients, represented as a quotient of two Laurent polynomials.
// The main use is evaluating weights whose dynamical parameter must be sent
// to zero *as a limit*: compute with t kept formal, then call eval0().

#include <map>
#include <sstream>
#include <string>
#include <utility>

#include "vd/errors.hpp"
#include "vd/rational.hpp"

namespace vd {

class Laurent {
public:
    using Poly = std::map<long, Rat>; // exponent -> coefficient, no zero coefficients

    Laurent() : num_(), den_{{0, Rat(1)}} {}
    /* implicit */ Laurent(const Rat& c) : den_{{0, Rat(1)}} {
        if (c != 0) num_[0] = c;
    }
    /* implicit */ Laurent(long c) : Laurent(Rat(c)) {}

    // The formal variable t.
    static Laurent var() {
        Laurent v;
        v.num_[1] = Rat(1);
        return v;
    }

    bool is_zero() const { return num_.empty(); }

    friend Laurent operator+(const Laurent& a, const Laurent& b) {
        return Laurent(padd(pmul(a.num_, b.den_), pmul(b.num_, a.den_)),
                       pmul(a.den_, b.den_));
    }
    friend Laurent operator-(const Laurent& a, const Laurent& b) {
        return Laurent(psub(pmul(a.num_, b.den_), pmul(b.num_, a.den_)),
                       pmul(a.den_, b.den_));
    }
    friend Laurent operator*(const Laurent& a, const Laurent& b) {
        return Laurent(pmul(a.num_, b.num_), pmul(a.den_, b.den_));
    }
    friend Laurent operator/(const Laurent& a, const Laurent& b) {
        if (b.num_.empty()) throw division_by_zero("formal division by zero");
        return Laurent(pmul(a.num_, b.den_), pmul(a.den_, b.num_));
    }
    Laurent operator-() const { return Laurent(Rat(0)) - *this; }
    Laurent& operator+=(const Laurent& o) { return *this = *this + o; }
    Laurent& operator-=(const Laurent& o) { return *this = *this - o; }
    Laurent& operator*=(const Laurent& o) { return *this = *this * o; }
    Laurent& operator/=(const Laurent& o) { return *this = *this / o; }

    friend bool operator==(const Laurent& a, const Laurent& b) {
        return pmul(a.num_, b.den_) == pmul(b.num_, a.den_);
    }
    friend bool operator!=(const Laurent& a, const Laurent& b) { return !(a == b); }

    Laurent pow(long e) const {
        if (e < 0) return (Laurent(Rat(1)) / *this).pow(-e);
        Laurent r(Rat(1));
        Laurent b = *this;
        long k = e;
        while (k > 0) {
            if (k & 1) r *= b;
            b *= b;
            k >>= 1;
        }
        return r;
    }

    // Limit t -> 0.  Throws divergent_limit when the limit does not exist.
    Rat eval0() const {
        if (num_.empty()) return Rat(0);
        const long vn = num_.begin()->first;
        const long vd = den_.begin()->first;
        if (vn < vd) throw divergent_limit("formal expression diverges as t -> 0");
        if (vn > vd) return Rat(0);
        return num_.begin()->second / den_.begin()->second;
    }

    // True when the expression is a constant (no dependence on t).
    bool is_constant() const {
        if (num_.empty()) return true;
        return num_.size() == 1 && den_.size() == 1 &&
               num_.begin()->first == den_.begin()->first;
    }

    std::string str() const {
        auto poly_str = [](const Poly& p) {
            if (p.empty()) return std::string("0");
            std::ostringstream os;
            bool first = true;
            for (const auto& [e, c] : p) {
                if (!first) os << " + ";
                first = false;
                os << c.get_str();
                if (e != 0) os << "*t^" << e;
            }
            return os.str();
        };
        return "(" + poly_str(num_) + ") / (" + poly_str(den_) + ")";
    }

private:
    Laurent(Poly n, Poly d) : num_(std::move(n)), den_(std::move(d)) {
        strip(num_);
        strip(den_);
        if (den_.empty()) throw division_by_zero("formal denominator vanished");
        if (num_.empty()) den_ = Poly{{0, Rat(1)}};
    }

    static void strip(Poly& p) {
        for (auto it = p.begin(); it != p.end();) {
            if (it->second == 0)
                it = p.erase(it);
            else
                ++it;
        }
    }
    static Poly pmul(const Poly& a, const Poly& b) {
        Poly r;
        for (const auto& [ea, ca] : a)
            for (const auto& [eb, cb] : b) r[ea + eb] += ca * cb;
        strip(r);
        return r;
    }
    static Poly padd(Poly a, const Poly& b) {
        for (const auto& [e, c] : b) a[e] += c;
        strip(a);
        return a;
    }
    static Poly psub(Poly a, const Poly& b) {
        for (const auto& [e, c] : b) a[e] -= c;
        strip(a);
        return a;
    }

    Poly num_;
    Poly den_;
};

template <>
struct num_ops<Laurent> {
    static constexpr bool exact = true;
    static Laurent zero() { return Laurent(Rat(0)); }
    static Laurent one() { return Laurent(Rat(1)); }
    static Laurent from_long(long v) { return Laurent(Rat(v)); }
    static bool is_zero(const Laurent& x) { return x.is_zero(); }
    static bool is_one(const Laurent& x) { return x == Laurent(Rat(1)); }
    static Laurent pow_int(const Laurent& b, long e) { return b.pow(e); }
    // No meaningful absolute value / double conversion for formal objects.
    static double to_double(const Laurent& x) { return x.eval0().get_d(); }
};

} // namespace vd
