#pragma once

// q-deformed special functions: Pochhammer symbols, symmetric q-integers and
// factorials, terminating basic hypergeometric series (in the convention
// WITHOUT the (-1)^k q^binom(k,2) compensation factor), very-well-poised
// series, Racah--Wilson functions with their discrete orthogonality weight
// and norm, q-deformed 6j recoupling coefficients, dual q-Krawtchouk
// functions, and the two q-exponentials.
//
// Every series routine runs in exact rational or floating arithmetic through
// the same template; exact mode demands termination, floating mode accepts
// convergence to a relative tolerance.

#include <cmath>
#include <type_traits>
#include <cstdlib>
#include <string>
#include <vector>

#include "vd/errors.hpp"
#include "vd/rational.hpp"

namespace vd {

// (a; q)_n for signed n:
//   n >= 0:  prod_{j=0}^{n-1} (1 - q^j a)
//   n <  0:  prod_{j=1}^{-n} 1 / (1 - q^{-j} a)
template <class T>
T q_pochhammer(const T& a, const std::type_identity_t<T>& q, long n) {
    using N = num_ops<T>;
    T r = N::one();
    if (n >= 0) {
        T qj = N::one();
        for (long j = 0; j < n; ++j) {
            r = r * (N::one() - qj * a);
            qj = qj * q;
        }
        return r;
    }
    for (long j = 1; j <= -n; ++j) {
        const T f = N::one() - N::pow_int(q, -j) * a;
        if (N::is_zero(f)) throw division_by_zero("pole in q-Pochhammer with negative index");
        r = r / f;
    }
    return r;
}

// Symmetric q-integer [n] = (q^n - q^{-n}) / (q - q^{-1}).
template <class T>
T q_number(long n, const T& q) {
    using N = num_ops<T>;
    if (N::is_zero(q)) throw invalid_base("q-integer needs q != 0");
    const T d = q - N::pow_int(q, -1);
    if (N::is_zero(d)) throw invalid_base("q-integer undefined at q^2 = 1");
    return (N::pow_int(q, n) - N::pow_int(q, -n)) / d;
}

// Symmetric q-factorial [n]! = [1][2]...[n], evaluated in product form
// (q^2; q^2)_n / (q^{-1} - q)^n * q^{-n(n+1)/2}, which needs only integer
// powers of q.
template <class T>
T q_factorial(long n, const T& q) {
    using N = num_ops<T>;
    if (n < 0) throw domain_error("q-factorial of a negative integer");
    if (n == 0) return N::one();
    const T d = N::pow_int(q, -1) - q;
    if (N::is_zero(d)) throw invalid_base("q-factorial undefined at q^2 = 1");
    const T q2 = q * q;
    return q_pochhammer(q2, q2, n) / N::pow_int(d, n) * N::pow_int(q, -n * (n + 1) / 2);
}

// Factorial ratio [a+n]! / [a]! for integer a, extended to negative n by
// [a+n]!/[a]! = 1 / ([a]!/[a+n]!).
template <class T>
T q_factorial_ratio(long a, long n, const T& q) {
    using N = num_ops<T>;
    if (n < 0) return N::one() / q_factorial_ratio(a + n, -n, q);
    if (n == 0) return N::one();
    const T d = N::pow_int(q, -1) - q;
    if (N::is_zero(d)) throw invalid_base("q-factorial ratio undefined at q^2 = 1");
    const T q2 = q * q;
    return q_pochhammer(N::pow_int(q, 2 * (a + 1)), q2, n) / N::pow_int(d, n) *
           N::pow_int(q, -n * a - n * (n + 1) / 2);
}

// Gaussian binomial coefficient in base q.
template <class T>
T q_binomial(long n, long k, const T& q) {
    using N = num_ops<T>;
    if (k < 0 || k > n) return N::zero();
    return q_pochhammer(q, q, n) / (q_pochhammer(q, q, k) * q_pochhammer(q, q, n - k));
}

// -------------------------------------------------------------------------
// Basic hypergeometric series sum_{k>=0} z^k / (q;q)_k *
//   prod_j (a_j;q)_k / prod_i (b_i;q)_k   (no (-1)^k q^binom(k,2) factor).
// -------------------------------------------------------------------------

template <class T>
struct HypergeometricSpec {
    std::vector<T> upper;
    std::vector<T> lower;
    T base;
    T argument;
    long max_terms = 4000;
};

template <class T>
T basic_hypergeometric(const HypergeometricSpec<T>& s) {
    using N = num_ops<T>;
    const T& q = s.base;
    T sum = N::one();
    T term = N::one();
    double scale = 1.0;
    int small_streak = 0;
    for (long k = 0;; ++k) {
        if (k >= s.max_terms) {
            if constexpr (N::exact)
                throw non_terminating_exact(
                    "exact hypergeometric sum did not terminate within the term budget");
            else
                throw no_convergence("hypergeometric sum did not converge within the term budget");
        }
        // term_{k+1} = term_k * z * prod(1 - a q^k) / ((1 - q^{k+1}) prod(1 - b q^k))
        const T qk = N::pow_int(q, k);
        T num = s.argument;
        for (const T& a : s.upper) num = num * (N::one() - a * qk);
        if (N::is_zero(num)) return sum; // series terminated
        T den = N::one() - N::pow_int(q, k + 1);
        for (const T& b : s.lower) den = den * (N::one() - b * qk);
        if (N::is_zero(den))
            throw division_by_zero("lower-parameter pole in hypergeometric series");
        term = term * num / den;
        sum = sum + term;
        if constexpr (!N::exact) {
            const double at = std::abs(N::to_double(term));
            const double as = std::abs(N::to_double(sum));
            scale = std::max({scale, as, at});
            if (at <= 1e-13 * scale) {
                if (++small_streak >= 2) return sum;
            } else {
                small_streak = 0;
            }
        }
    }
}

// Very-well-poised series
//   sum_k z^k (a1;q)_k/(q;q)_k * (1 - a1 q^{2k})/(1 - a1)
//         * prod_j (a_j;q)_k / (q a1/a_j; q)_k
// over the non-leading upper parameters a_j in `rest`.
template <class T>
T very_well_poised(const T& a1, const std::vector<T>& rest,
                   const std::type_identity_t<T>& q, const std::type_identity_t<T>& z,
                   long max_terms = 4000) {
    using N = num_ops<T>;
    const T one = N::one();
    if (N::is_one(a1)) throw domain_error("very-well-poised series undefined at a1 = 1");
    T sum = N::zero();
    T term = N::one(); // z^k (a1;q)_k/(q;q)_k prod (a_j;q)_k/(q a1/a_j;q)_k at k
    double scale = 1.0;
    int small_streak = 0;
    for (long k = 0;; ++k) {
        if (k >= max_terms) {
            if constexpr (N::exact)
                throw non_terminating_exact(
                    "exact very-well-poised sum did not terminate within the term budget");
            else
                throw no_convergence(
                    "very-well-poised sum did not converge within the term budget");
        }
        const T contrib = term * (one - a1 * N::pow_int(q, 2 * k)) / (one - a1);
        sum = sum + contrib;
        if constexpr (!N::exact) {
            const double at = std::abs(N::to_double(contrib));
            const double as = std::abs(N::to_double(sum));
            scale = std::max({scale, as, at});
            if (at <= 1e-13 * scale) {
                if (++small_streak >= 2) return sum;
            } else {
                small_streak = 0;
            }
        }
        const T qk = N::pow_int(q, k);
        T num = z * (one - a1 * qk);
        for (const T& a : rest) num = num * (one - a * qk);
        if (N::is_zero(num)) return sum; // terminated
        T den = one - N::pow_int(q, k + 1);
        for (const T& a : rest) {
            const T f = one - (q * a1 / a) * qk;
            den = den * f;
        }
        if (N::is_zero(den))
            throw division_by_zero("lower-parameter pole in very-well-poised series");
        term = term * num / den;
    }
}

// -------------------------------------------------------------------------
// Racah--Wilson functions on {0, ..., M}.
// -------------------------------------------------------------------------

// W_n(x) = 4phi3(q^{-n}, alpha beta q^{n+1}, q^{-x}, gamma q^{x-M};
//               alpha q, beta gamma q, q^{-M} | q, q).
template <class T>
T racah_wilson(long n, long x, const T& alpha, const std::type_identity_t<T>& beta,
               const std::type_identity_t<T>& gamma, long M,
               const std::type_identity_t<T>& q) {
    using N = num_ops<T>;
    HypergeometricSpec<T> s;
    s.upper = {N::pow_int(q, -n), alpha * beta * N::pow_int(q, n + 1), N::pow_int(q, -x),
               gamma * N::pow_int(q, x - M)};
    s.lower = {alpha * q, beta * gamma * q, N::pow_int(q, -M)};
    s.base = q;
    s.argument = q;
    s.max_terms = std::max<long>(4 * (M + 4), 64);
    return basic_hypergeometric(s);
}

// Discrete orthogonality weight at the node x.
template <class T>
T rw_weight(long x, const T& alpha, const std::type_identity_t<T>& beta,
            const std::type_identity_t<T>& gamma, long M, const std::type_identity_t<T>& q) {
    using N = num_ops<T>;
    const T one = N::one();
    const T qmM = N::pow_int(q, -M);
    const T num = q_pochhammer(T(qmM * gamma), q, x) * (one - qmM * N::pow_int(q, 2 * x) * gamma) *
                  q_pochhammer(T(alpha * q), q, x) * q_pochhammer(T(beta * gamma * q), q, x) *
                  q_pochhammer(qmM, q, x);
    const T den = q_pochhammer(q, q, x) * (one - qmM * gamma) *
                  q_pochhammer(T(qmM * gamma / alpha), q, x) *
                  q_pochhammer(T(qmM / beta), q, x) * q_pochhammer(T(gamma * q), q, x) *
                  N::pow_int(T(alpha * beta * q), x);
    if (N::is_zero(den)) throw division_by_zero("pole in Racah--Wilson weight");
    return num / den;
}

// Squared norm h_n in the orthogonality relation
//   sum_{x=0}^{M} W_n(x) W_m(x) w(x) = delta_{nm} h_n.
// The ratio of infinite products collapses to products of length M.
template <class T>
T rw_norm(long n, const T& alpha, const std::type_identity_t<T>& beta,
          const std::type_identity_t<T>& gamma, long M, const std::type_identity_t<T>& q) {
    using N = num_ops<T>;
    const T one = N::one();
    const T head =
        q_pochhammer(T(N::pow_int(q, -M + 1) * gamma), q, M) *
        q_pochhammer(T(N::pow_int(q, -M - 1) / (alpha * beta)), q, M) /
        (q_pochhammer(T(N::pow_int(q, -M) * gamma / alpha), q, M) *
         q_pochhammer(T(N::pow_int(q, -M) / beta), q, M));
    const T num = q_pochhammer(q, q, n) * (one - alpha * beta * q) *
                  q_pochhammer(T(beta * q), q, n) * q_pochhammer(T(alpha * q / gamma), q, n) *
                  q_pochhammer(T(alpha * beta * N::pow_int(q, M + 2)), q, n) *
                  N::pow_int(T(N::pow_int(q, -M) * gamma), n);
    const T den = q_pochhammer(T(alpha * beta * q), q, n) *
                  (one - alpha * beta * N::pow_int(q, 2 * n + 1)) *
                  q_pochhammer(T(alpha * q), q, n) * q_pochhammer(T(beta * gamma * q), q, n) *
                  q_pochhammer(N::pow_int(q, -M), q, n);
    if (N::is_zero(den)) throw division_by_zero("pole in Racah--Wilson norm");
    return head * num / den;
}

// -------------------------------------------------------------------------
// q-deformed 6j recoupling coefficient.  Spins are passed doubled
// (two_a = 2a, ...) so that half-integers stay integral; evaluation is
// floating-point.
// -------------------------------------------------------------------------

namespace detail {

inline double q6j_fact_doubled(long two_m, double q) {
    if (two_m < 0) throw domain_error("negative factorial argument in 6j evaluation");
    if (two_m % 2 != 0) throw domain_error("non-integer factorial argument in 6j evaluation");
    return q_factorial(two_m / 2, q);
}

// Triangle coefficient for a doubled triad; throws if the triad is invalid.
inline double q6j_triangle(long two_j1, long two_j2, long two_j3, double q) {
    const long t1 = -two_j1 + two_j2 + two_j3;
    const long t2 = two_j1 - two_j2 + two_j3;
    const long t3 = two_j1 + two_j2 - two_j3;
    const long t4 = two_j1 + two_j2 + two_j3 + 2;
    if (t1 < 0 || t2 < 0 || t3 < 0)
        throw domain_error("triangle inequality violated in 6j evaluation");
    const double num = q6j_fact_doubled(t1, q) * q6j_fact_doubled(t2, q) *
                       q6j_fact_doubled(t3, q);
    const double den = q6j_fact_doubled(t4, q);
    return std::sqrt(num / den);
}

} // namespace detail

// 6j symbol for the coupling scheme with triads (a,b,e), (a,c,f), (c,e,d),
// (d,b,f); arguments are doubled spins.
inline double q6j(long two_a, long two_b, long two_e, long two_d, long two_c, long two_f,
                  double q) {
    using detail::q6j_fact_doubled;
    const double delta = detail::q6j_triangle(two_a, two_b, two_e, q) *
                         detail::q6j_triangle(two_a, two_c, two_f, q) *
                         detail::q6j_triangle(two_c, two_e, two_d, q) *
                         detail::q6j_triangle(two_d, two_b, two_f, q);
    const double root =
        std::sqrt(q_number(two_e + 1, q) * q_number(two_f + 1, q));
    const long phase_exp = two_c + two_d + two_e;
    const double phase = (phase_exp % 2 == 0) ? 1.0 : -1.0;

    // All of the following combinations are integers (in doubled units: even).
    const long cde = two_c + two_d - two_e;
    const long bdf = two_b + two_d - two_f;
    const long acf = two_a + two_c - two_f;
    const long abe = two_a + two_b - two_e;
    const long efbc = two_e + two_f - two_b - two_c;
    const long efad = two_e + two_f - two_a - two_d;
    const long abcd1 = two_a + two_b + two_c + two_d + 2;

    const long wmin = std::max({0L, -efbc / 2, -efad / 2});
    const long wmax = std::min({cde / 2, bdf / 2, acf / 2, abe / 2});
    double sum = 0.0;
    for (long w = wmin; w <= wmax; ++w) {
        const double sgn = (w % 2 == 0) ? 1.0 : -1.0;
        const double num = q6j_fact_doubled(abcd1 - 2 * w, q);
        const double den =
            q6j_fact_doubled(cde - 2 * w, q) * q6j_fact_doubled(bdf - 2 * w, q) *
            q6j_fact_doubled(acf - 2 * w, q) * q6j_fact_doubled(abe - 2 * w, q) *
            q6j_fact_doubled(2 * w, q) * q6j_fact_doubled(2 * w + efbc, q) *
            q6j_fact_doubled(2 * w + efad, q);
        sum += sgn * num / den;
    }
    return phase * root * delta * sum;
}

// -------------------------------------------------------------------------
// Dual q-Krawtchouk functions on {0, ..., N}.
// -------------------------------------------------------------------------

// K_n(x; c, N) = 3phi2(q^{-n}, q^{-x}, -c q^{x-N}; q^{-N}, 0 | q, q).
template <class T>
T dual_q_krawtchouk(long n, long x, const T& c, long N, const std::type_identity_t<T>& q) {
    using Nm = num_ops<T>;
    HypergeometricSpec<T> s;
    s.upper = {Nm::pow_int(q, -n), Nm::pow_int(q, -x),
               Nm::zero() - c * Nm::pow_int(q, x - N)};
    s.lower = {Nm::pow_int(q, -N), Nm::zero()};
    s.base = q;
    s.argument = q;
    s.max_terms = std::max<long>(4 * (N + 4), 64);
    return basic_hypergeometric(s);
}

// Self-dual rescaling (-1)^n q^{-n rho} q^{n(N-1)/2} K_n(x; q^{2 rho}, N; q^2),
// evaluated in floating point (the exponents are generically half-integral).
inline double rescaled_krawtchouk(long n, long x, double rho, long N, double q) {
    if (q <= 0.0) throw domain_error("rescaled Krawtchouk evaluation needs q > 0");
    const double c = std::pow(q, 2.0 * rho);
    const double base = dual_q_krawtchouk(n, x, c, N, q * q);
    const double sgn = (n % 2 == 0) ? 1.0 : -1.0;
    return sgn * std::pow(q, -static_cast<double>(n) * rho) *
           std::pow(q, 0.5 * static_cast<double>(n) * static_cast<double>(N - 1)) * base;
}

// -------------------------------------------------------------------------
// q-exponentials, truncated at degree K (terms n = 0..K inclusive).
//   small: sum z^n / (q;q)_n          big: sum q^{binom(n,2)} z^n / (q;q)_n
// They are mutually inverse: e(z) * E(-z) = 1 up to O(z^{K+1}).
// -------------------------------------------------------------------------

template <class T>
T q_exp_small(const T& z, const std::type_identity_t<T>& q, long K) {
    using N = num_ops<T>;
    T sum = N::zero();
    T term = N::one();
    for (long n = 0; n <= K; ++n) {
        sum = sum + term;
        const T den = N::one() - N::pow_int(q, n + 1);
        if (N::is_zero(den)) throw division_by_zero("pole in q-exponential");
        term = term * z / den;
    }
    return sum;
}

template <class T>
T q_exp_big(const T& z, const std::type_identity_t<T>& q, long K) {
    using N = num_ops<T>;
    T sum = N::zero();
    T term = N::one();
    for (long n = 0; n <= K; ++n) {
        sum = sum + term;
        // term_{n+1}/term_n = q^n z / (1 - q^{n+1})
        const T den = N::one() - N::pow_int(q, n + 1);
        if (N::is_zero(den)) throw division_by_zero("pole in q-exponential");
        term = term * N::pow_int(q, n) * z / den;
    }
    return sum;
}

} // namespace vd
