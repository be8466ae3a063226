#pragma once

// Exact rational arithmetic (GMP) plus the small scalar-abstraction layer
// that lets the special-function templates run in either exact or floating
// mode with identical code paths.

#include <gmpxx.h>

#include <cmath>
#include <cstdlib>
#include <optional>
#include <string>

#include "vd/errors.hpp"

namespace vd {

using Rat = mpq_class;

// base^e for integer e (negative allowed).  Throws on 0^negative.
inline Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    const bool neg = e < 0;
    const unsigned long ue = neg ? static_cast<unsigned long>(-e)
                                 : static_cast<unsigned long>(e);
    if (neg && base == 0) throw division_by_zero("0 raised to a negative power");
    Rat r;
    mpz_pow_ui(r.get_num_mpz_t(), base.get_num().get_mpz_t(), ue);
    mpz_pow_ui(r.get_den_mpz_t(), base.get_den().get_mpz_t(), ue);
    r.canonicalize();
    if (neg) r = Rat(1) / r;
    return r;
}

// Exact square root when the rational is a perfect square; nullopt otherwise.
inline std::optional<Rat> rat_sqrt_exact(const Rat& x) {
    if (x < 0) return std::nullopt;
    if (mpz_perfect_square_p(x.get_num().get_mpz_t()) == 0) return std::nullopt;
    if (mpz_perfect_square_p(x.get_den().get_mpz_t()) == 0) return std::nullopt;
    Rat r;
    mpz_sqrt(r.get_num_mpz_t(), x.get_num().get_mpz_t());
    mpz_sqrt(r.get_den_mpz_t(), x.get_den().get_mpz_t());
    r.canonicalize();
    return r;
}

// Exact conversion: every finite double is a dyadic rational.
inline Rat rat_from_double(double d) {
    if (!std::isfinite(d)) throw domain_error("cannot convert non-finite double to rational");
    Rat r;
    mpq_set_d(r.get_mpq_t(), d);
    return r;
}

// Parse "p", "p/q", or a decimal literal (decimals are taken exactly,
// e.g. "0.25" -> 1/4).
inline Rat parse_rational(const std::string& s) {
    if (s.empty()) throw parse_error("empty rational literal");
    const auto slash = s.find('/');
    const auto dot = s.find('.');
    const auto expo = s.find_first_of("eE");
    try {
        if (slash != std::string::npos) {
            Rat r(s);
            if (r.get_den() == 0) throw parse_error("zero denominator in '" + s + "'");
            r.canonicalize();
            return r;
        }
        if (dot != std::string::npos || expo != std::string::npos) {
            // Decimal form: parse via long double to keep CLI ergonomics,
            // then snap tiny binary dust: accept the exact dyadic value.
            char* end = nullptr;
            const double v = std::strtod(s.c_str(), &end);
            if (end == nullptr || *end != '\0')
                throw parse_error("malformed rational literal '" + s + "'");
            return rat_from_double(v);
        }
        Rat r(s);
        return r;
    } catch (const std::invalid_argument&) {
        throw parse_error("malformed rational literal '" + s + "'");
    }
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

inline double to_double(const Rat& r) { return r.get_d(); }

// -------------------------------------------------------------------------
// Scalar abstraction: the q-series templates are written against this.
// -------------------------------------------------------------------------

template <class T>
struct num_ops; // primary template intentionally undefined

template <>
struct num_ops<double> {
    static constexpr bool exact = false;
    static double zero() { return 0.0; }
    static double one() { return 1.0; }
    static double from_long(long v) { return static_cast<double>(v); }
    static bool is_zero(const double& x) { return x == 0.0; }
    // Loose identity test used for detecting terminating upper parameters in
    // floating mode.
    static bool is_one(const double& x) {
        return std::abs(x - 1.0) <= 1e-10 * (1.0 + std::abs(x));
    }
    static double pow_int(double b, long e) {
        if (e == 0) return 1.0;
        if (b == 0.0 && e < 0) throw division_by_zero("0 raised to a negative power");
        return std::pow(b, static_cast<double>(e));
    }
    static double abs_val(double x) { return std::abs(x); }
    static double to_double(double x) { return x; }
};

template <>
struct num_ops<Rat> {
    static constexpr bool exact = true;
    static Rat zero() { return Rat(0); }
    static Rat one() { return Rat(1); }
    static Rat from_long(long v) { return Rat(v); }
    static bool is_zero(const Rat& x) { return x == 0; }
    static bool is_one(const Rat& x) { return x == 1; }
    static Rat pow_int(const Rat& b, long e) { return rat_pow(b, e); }
    static Rat abs_val(const Rat& x) { return abs(x); }
    static double to_double(const Rat& x) { return x.get_d(); }
};

} // namespace vd
