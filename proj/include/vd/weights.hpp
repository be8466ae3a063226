#pragma once

// Vertex weights for the dynamic higher-spin model family:
//   * borodin_weight      — the six elementary dynamic six-vertex weights
//   * fused_psi           — the fused weight psi for arbitrary integer
//                           capacities (terminating very-well-poised sum)
//   * s_weight            — the stochastic S weight (fused weight under the
//                           standard base/spectral substitution)
//   * spin_half_S_matrix / spin_half_T_rev_matrix — the closed-form 4x4
//                           two-site transition matrices at spin 1/2
//   * pi_matrix           — the occupation-reversal permutation
//
// Parameter conventions (struct QParams): the carrier scalar baseQ is the
// square root of the model's deformation parameter q (q = baseQ^2), so that
// every half-integer power of q appearing in the formulas is an integer
// power of baseQ and stays exact in rational mode.  The dynamic parameter is
// alpha; alpha = 0 requests the non-dynamic limit, which is computed as an
// exact limit with the dynamic parameter kept formal (never by naive
// substitution into an expression that may hit 0/0).
//
// Exact zero/pole bookkeeping inside fused_psi: the fused weight is a limit
// of a product of factors (1 - C * baseQ^e) whose exponents depend linearly
// on the horizontal capacity.  Each factor carries a valuation: an exact
// zero with zero slope annihilates the product, while a zero with nonzero
// slope contributes one order of vanishing and a finite leading coefficient.
// Same-base zero pairs in the sum are combined algebraically before
// evaluation so that only removable 0/0 ratios ever appear.

#include <algorithm>
#include <array>
#include <map>
#include <vector>

#include "vd/config.hpp"
#include "vd/errors.hpp"
#include "vd/laurent.hpp"
#include "vd/rational.hpp"

namespace vd {

template <class T>
struct QParams {
    T baseQ;  // square root of the model deformation parameter q
    T z;      // spectral parameter
    T alpha;  // dynamic parameter; 0 encodes the non-dynamic limit
};

// One vertex: i1 arrows in from below, j1 in from the left, i2 out above,
// j2 out to the right.
struct ArrowConfig {
    long i1;
    long j1;
    long i2;
    long j2;
};

namespace detail {

template <class T>
void check_qparams(const QParams<T>& p) {
    if (p.baseQ == T(0) || p.baseQ == T(1) || p.baseQ == T(-1))
        throw invalid_base("baseQ must satisfy q = baseQ^2 not in {0, 1}");
    if (p.z == T(0)) throw domain_error("spectral parameter z must be nonzero");
}

// Multiplicative value with an order-of-vanishing valuation attached:
// represents c * eps^nu for an infinitesimal capacity shift eps.
template <class F>
struct Tracked {
    long nu;
    F c;

    Tracked operator*(const Tracked& o) const { return {nu + o.nu, F(c * o.c)}; }
    Tracked operator/(const Tracked& o) const {
        if (num_ops<F>::is_zero(o.c))
            throw pole_error("division by an exact-zero factor (uncancelled pole)");
        return {nu - o.nu, F(c / o.c)};
    }
};

// Evaluator for the fused weight over an exact field F (rationals, or formal
// rational functions of the dynamic parameter for the alpha -> 0 limit).
// rho is the base carrier: the weight formula's own q equals rho^2.
template <class F>
class PsiEngine {
  public:
    explicit PsiEngine(Rat rho) : rho_(std::move(rho)) {
        if (rho_ == 0 || rho_ == 1 || rho_ == -1)
            throw invalid_base("weight base must not be 0 or a root of unity");
    }

    // Factor base: C * rho^e, with capacity slope t (in q-log units).
    struct Arg {
        F C;
        long e;
        long t;
    };

    F rho_pow(long e) const { return F(rat_pow(rho_, e)); }

    Tracked<F> one() const { return {0, F(Rat(1))}; }

    // Tracked value of (1 - C * rho^e) with capacity slope t.
    Tracked<F> factor(const F& C, long e, long t) const {
        const F val = F(C * rho_pow(e));
        if (val == F(Rat(1))) {
            if (t == 0) return {0, F(Rat(0))};  // exact zero, slope-free
            return {1, F(Rat(-2 * t))};         // leading order; -2t since q = rho^2
        }
        return {0, F(F(Rat(1)) - val)};
    }

    // (a; q)_n for a = C * rho^e with slope t; q = rho^2; n may be negative.
    Tracked<F> poch(const Arg& a, long n) const {
        Tracked<F> out = one();
        if (n >= 0) {
            for (long i = 0; i < n; ++i) out = out * factor(a.C, a.e + 2 * i, a.t);
        } else {
            const long m = -n;
            Tracked<F> den = one();
            for (long i = 0; i < m; ++i) den = den * factor(a.C, a.e - 2 * m + 2 * i, a.t);
            out = out / den;
        }
        return out;
    }

    Arg qpow(long e, long t = 0) const { return {F(Rat(1)), 2 * e, t}; }

    // Sum tracked terms by valuation; negative-valuation residue means the
    // limit diverges, positive valuations vanish, the order-zero bucket is
    // the value.
    F tracked_sum(const std::vector<Tracked<F>>& terms) const {
        std::map<long, F> buckets;
        for (const auto& t : terms) {
            if (num_ops<F>::is_zero(t.c)) continue;
            auto it = buckets.find(t.nu);
            if (it == buckets.end())
                buckets.emplace(t.nu, t.c);
            else
                it->second = F(it->second + t.c);
        }
        for (const auto& [nu, c] : buckets)
            if (nu < 0 && !num_ops<F>::is_zero(c))
                throw divergent_limit("fused weight diverges: uncancelled pole residue");
        auto it = buckets.find(0);
        return it == buckets.end() ? F(Rat(0)) : it->second;
    }

    // Fused weight with vertical capacity Lam and horizontal capacity J;
    // u is the spectral argument, a the dynamic parameter.
    F psi(long i1, long j1, long i2, long j2, long Lam, long J, const F& u, const F& a) const {
        if (i1 + j1 != i2 + j2 || std::min(std::min(i1, j1), std::min(i2, j2)) < 0)
            return F(Rat(0));
        if (i1 > Lam || i2 > Lam || j1 > J || j2 > J) return F(Rat(0));
        if (num_ops<F>::is_zero(u)) throw domain_error("spectral argument u must be nonzero");
        if (num_ops<F>::is_zero(a)) throw domain_error("dynamic parameter must be nonzero here");

        const long sE = -Lam;  // rho-exponent of the spin parameter s = rho^{-Lam}
        const F ainv = F(F(Rat(1)) / a);
        // Inverse of the dynamic-spin combination kappa = q^{2 j1 - J} * a:
        // coefficient, rho-exponent, capacity slope.
        const F kC = ainv;
        const long kE = 2 * (J - 2 * j1);
        const long kT = 1;

        Tracked<F> pref = one();
        pref = pref * Tracked<F>{0, F(F(rho_pow(2 * (j2 - i1) * J)) *
                                      F(num_ops<F>::pow_int(u, j1) * rho_pow(-sE * j1)))};
        // combined pair: (q^{j2-J};q)_{j1} / (q^{j2-J};q)_{j1-j2} = (q^{j1-J};q)_{j2}
        pref = pref * poch({F(Rat(1)), 2 * (j1 - J), -1}, j2);
        pref = pref * poch({u, sE + 2 * J, 1}, i1 - j2);
        pref = pref * poch({F(Rat(1)), 2 * sE + 2 * (i1 - j2), 0}, j1);
        pref = pref / poch({u, sE, 0}, i1 + j1);
        pref = pref / poch(qpow(1), j2);
        pref = pref * poch({F(u * kC), -sE - 2 * i1 + kE, kT}, j2);
        pref = pref * poch({F(kC / u), 2 * (1 - i1 - J) - sE + kE, kT - 1}, j1);
        pref = pref * poch({kC, 2 + kE, kT}, j1);
        pref = pref * poch({kC, 2 * (j2 - 2 * i1 + 1) - 2 * sE + kE, kT}, i1 - j2);
        pref = pref / poch({kC, 2 * (1 - j2) + kE, kT}, j1);
        pref = pref / poch({kC, 2 * (j2 - i1 - J + 1) - 2 * sE + kE, kT - 1}, j1);
        pref = pref / poch({kC, 2 * (j2 - 2 * i1 - J) - 2 * sE + kE, kT - 1}, j2);
        pref = pref / poch({kC, 2 * (2 * j2 - 2 * i1 - J + 1) - 2 * sE + kE, kT - 1}, i1 - j2);

        // Very-well-poised terminating sum.  The leading parameter pairs with
        // one upper parameter at the same base; that pair is combined into a
        // single shifted factorial so no spurious 0/0 is evaluated.
        const Arg a1{kC, -2 * j2 + kE, kT};
        const std::array<Arg, 6> rest6 = {{
            qpow(-j1),
            qpow(-j2),
            {kC, 2 * (j1 - J) + kE, kT - 1},
            {kC, 2 * (1 - i1) - 2 * sE + kE, kT},
            {F(F(Rat(1)) / u), sE + 2 * (i1 - j2 + 1), 0},
            {u, sE + 2 * (i1 - j2 + J), 1},
        }};
        const Arg a10{kC, -2 * i1 + kE, kT};
        const Arg q1 = qpow(1);
        const long kmax = std::min(j1, j2);
        std::vector<Tracked<F>> terms;
        terms.reserve(static_cast<std::size_t>(kmax + 1));
        for (long k = 0; k <= kmax; ++k) {
            Tracked<F> t{0, rho_pow(2 * k)};
            t = t * poch(a1, k) / poch(q1, k);
            t = t * factor(a1.C, a1.e + 4 * k, a1.t) / factor(a1.C, a1.e, a1.t);
            for (const Arg& aj : rest6) {
                const Arg qa{F(a1.C / aj.C), 2 + a1.e - aj.e, a1.t - aj.t};
                t = t * poch(aj, k) / poch(qa, k);
            }
            t = t * poch(a10, k);
            t = t * poch(qpow(i1 - j2 + 1 + k), j2 - k);
            terms.push_back(pref * t);
        }
        return tracked_sum(terms);
    }

  private:
    Rat rho_;
};

// Dispatch: direct rational evaluation when the dynamic parameter is
// nonzero, exact formal limit when it is zero.
inline Rat psi_rational(const ArrowConfig& cfg, long cap_v, long cap_h, const Rat& rho,
                        const Rat& u, const Rat& alpha) {
    if (alpha != 0) {
        PsiEngine<Rat> eng(rho);
        return eng.psi(cfg.i1, cfg.j1, cfg.i2, cfg.j2, cap_v, cap_h, u, alpha);
    }
    PsiEngine<Laurent> eng(rho);
    const Laurent val = eng.psi(cfg.i1, cfg.j1, cfg.i2, cfg.j2, cap_v, cap_h, Laurent(u),
                                Laurent::var());
    return val.eval0();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Fused weight psi with vertical capacity two_lambda and horizontal capacity
// two_j (capacity = twice the spin).  The weight's own deformation parameter
// is q = baseQ^2; u is its spectral argument; params.z is not used here.
// ---------------------------------------------------------------------------

inline Rat fused_psi(const ArrowConfig& cfg, long two_lambda, long two_j, const Rat& u,
                     const QParams<Rat>& params) {
    detail::check_qparams(params);
    if (two_lambda < 0 || two_j < 0) throw domain_error("capacities must be non-negative");
    return detail::psi_rational(cfg, two_lambda, two_j, params.baseQ, u, params.alpha);
}

inline double fused_psi(const ArrowConfig& cfg, long two_lambda, long two_j, double u,
                        const QParams<double>& params) {
    const QParams<Rat> lifted{rat_from_double(params.baseQ), rat_from_double(params.z),
                              rat_from_double(params.alpha)};
    return fused_psi(cfg, two_lambda, two_j, rat_from_double(u), lifted).get_d();
}

// ---------------------------------------------------------------------------
// Stochastic S weight: the fused weight with base replaced by q^2 and
// spectral argument u = 1/(z q^{two_i}) where q = baseQ^2 is the model
// deformation parameter, two_i the vertical capacity, two_j the horizontal.
// ---------------------------------------------------------------------------

inline Rat s_weight(const ArrowConfig& cfg, long two_i, long two_j, const QParams<Rat>& params) {
    detail::check_qparams(params);
    if (two_i < 0 || two_j < 0) throw domain_error("capacities must be non-negative");
    const Rat rho = Rat(params.baseQ * params.baseQ);  // the S weight runs at base rho = q
    const Rat u = Rat(rat_pow(params.baseQ, -2 * two_i) / params.z);
    return detail::psi_rational(cfg, two_i, two_j, rho, u, params.alpha);
}

inline double s_weight(const ArrowConfig& cfg, long two_i, long two_j,
                       const QParams<double>& params) {
    const QParams<Rat> lifted{rat_from_double(params.baseQ), rat_from_double(params.z),
                              rat_from_double(params.alpha)};
    return s_weight(cfg, two_i, two_j, lifted).get_d();
}

// ---------------------------------------------------------------------------
// Elementary dynamic six-vertex weights.  lambda_exp is e^{2 pi i lambda}
// (the reciprocal of the alpha carried in QParams).  q is this family's own
// deformation parameter; its square root must exist in T (exact mode
// requires a perfect-square rational q).
// ---------------------------------------------------------------------------

enum class BorodinKind { a0, a1, b0, c1, d0, d1 };

namespace detail {

inline Rat sqrt_of(const Rat& q) {
    auto r = rat_sqrt_exact(q);
    if (!r) throw domain_error("exact mode needs a perfect-square rational q here");
    return *r;
}

inline double sqrt_of(double q) {
    if (q < 0) throw domain_error("negative q has no real square root");
    return std::sqrt(q);
}

}  // namespace detail

template <class T>
T borodin_weight(BorodinKind kind, const T& q, const T& lambda_exp, const T& w) {
    if (kind == BorodinKind::a0 || kind == BorodinKind::d1) return T(1);
    const T rq = detail::sqrt_of(q);  // q^{1/2}
    if (q == T(0)) throw domain_error("q must be nonzero");
    const T E = lambda_exp;
    const T den1 = T(T(1) - T(w / rq));  // 1 - q^{-1/2} w
    const T den2 = T(T(1) - E);
    if (den1 == T(0) || den2 == T(0))
        throw division_by_zero("elementary weight evaluated at a pole");
    switch (kind) {
        case BorodinKind::a1:
            return T(T(T(1) - T(rq * w)) / den1 * T(T(T(1) / q) - E) / den2);
        case BorodinKind::b0:
            return T(T(T(1) - T(T(1) / q)) / den1 * T(T(rq * w) - E) / den2);
        case BorodinKind::c1:
            return T(T(T(rq - T(T(1) / rq)) * w) / den1 * T(T(T(1) / T(rq * w)) - E) / den2);
        case BorodinKind::d0:
            return T(T(T(T(1) / q) - T(w / rq)) / den1 * T(q - E) / den2);
        default:
            return T(1);  // a0, d1 handled above
    }
}

// ---------------------------------------------------------------------------
// Closed-form 4x4 two-site spin-1/2 transition matrices, basis order
// (00, 01, 10, 11).  Both are row-stochastic.
// ---------------------------------------------------------------------------

template <class T>
Matrix<T> spin_half_S_matrix(const QParams<T>& params) {
    detail::check_qparams(params);
    const T q2 = num_ops<T>::pow_int(params.baseQ, 4);  // square of the model q
    const T z = params.z;
    const T a = params.alpha;
    const T den = T(T(T(z * q2) - T(1)) * T(T(1) - a));
    if (den == T(0)) throw division_by_zero("transition matrix evaluated at a pole");
    Matrix<T> M(4, 4, T(0));
    M(0, 0) = T(1);
    M(3, 3) = T(1);
    M(1, 1) = T(T(T(q2 - T(1)) * T(T(1) - T(a * z))) / den);
    M(1, 2) = T(T(T(q2 - a) * T(z - T(1))) / den);
    M(2, 1) = T(T(T(z - T(1)) * T(T(1) - T(a * q2))) / den);
    M(2, 2) = T(T(T(q2 - T(1)) * T(z - a)) / den);
    return M;
}

template <class T>
Matrix<T> spin_half_T_rev_matrix(const QParams<T>& params) {
    detail::check_qparams(params);
    const T q2 = num_ops<T>::pow_int(params.baseQ, 4);
    const T z = params.z;
    const T d = T(T(z * q2) - T(1));
    if (d == T(0)) throw division_by_zero("transition matrix evaluated at a pole");
    Matrix<T> M(4, 4, T(0));
    M(0, 0) = T(1);
    M(3, 3) = T(1);
    M(1, 1) = T(T(q2 - T(1)) / d);
    M(1, 2) = T(T(q2 * T(z - T(1))) / d);
    M(2, 1) = T(T(z - T(1)) / d);
    M(2, 2) = T(T(z * T(q2 - T(1))) / d);
    return M;
}

// Occupation-reversal permutation on a single site of capacity twoJ:
// basis vector |m> maps to |twoJ - m>.
template <class T = Rat>
Matrix<T> pi_matrix(long twoJ) {
    if (twoJ < 0) throw domain_error("capacity must be non-negative");
    const std::size_t n = static_cast<std::size_t>(twoJ + 1);
    Matrix<T> M(n, n, T(0));
    for (std::size_t m = 0; m < n; ++m) M(n - 1 - m, m) = T(1);
    return M;
}

}  // namespace vd
