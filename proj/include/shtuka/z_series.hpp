#pragma once

#include <random>

#include "shtuka/series.hpp"
#include "shtuka/trunc_ring.hpp"

namespace shtuka {

template <>
struct SeriesRing<TruncElem> {
    using Params = TruncRingPtr;
    static TruncElem zero(const Params& r) { return TruncElem::zero(r); }
    static TruncElem one(const Params& r) { return TruncElem::one(r); }
    static bool is_zero(const TruncElem& c) { return c.is_zero(); }
    static bool is_unit(const TruncElem& c) { return c.is_unit(); }
    static TruncElem inv(const TruncElem& c) { return c.inv(); }
    static bool same_ring(const Params& a, const Params& b) { return a && b && a->same(*b); }
    static long long nil_index(const Params& r) { return r->N; }
    static long long coeff_val(const TruncElem& c) {
        int v = c.valuation();
        return v == kValInfinity ? r_nil(c) : v;
    }
    static std::string str(const TruncElem& c) { return c.str(); }

private:
    static long long r_nil(const TruncElem& c) { return c.ring()->N; }
};

/// Truncated Laurent series in z (Center::Z) or in z - zeta
/// (Center::ZMinusZeta) over the base ring R_N.
using ZSeries = LaurentSeries<TruncElem>;

/// --- constructors -------------------------------------------------------

ZSeries zs_zero(const TruncRingPtr& r, Center c = Center::Z);
ZSeries zs_one(const TruncRingPtr& r, Center c = Center::Z);
ZSeries zs_const(const TruncRingPtr& r, const TruncElem& v, Center c = Center::Z);
/// The variable of the chosen center: z, resp. (z - zeta).
ZSeries zs_var(const TruncRingPtr& r, Center c = Center::Z);
/// z - a, with a in R_N, expressed in the z center.
ZSeries zs_z_minus(const TruncRingPtr& r, const TruncElem& a);

/// --- coefficientwise Frobenius -----------------------------------------

/// sigma fixes the series variable and raises coefficients to the q-th
/// power; exponents are untouched.
ZSeries zs_sigma(const ZSeries& f);

/// --- recentering z -> zeta + (z - zeta) ---------------------------------

/// Substitute z = zeta + (z - zeta).  Nonnegative powers expand binomially;
/// z^{-1} = (z-zeta)^{-1} sum_{k<N} (-zeta)^k (z-zeta)^{-k}, finite because
/// zeta is nilpotent.  Exact input gives exact output.
ZSeries recenter(const ZSeries& f);

/// C(n, k) mod p for any integer n (k >= 0), via Lucas and the reflection
/// C(n,k) = (-1)^k C(k-n-1, k) for n < 0.
int binom_mod_p(long long n, long long k, int p);

/// --- evaluation and splitting -------------------------------------------

/// The constant coefficient of f after recentering, computed directly as
/// sum_e c_e zeta^e.  Requires f integral; exact when f is exact or
/// prec >= N (the unknown tail is killed by zeta^N = 0).
TruncElem eval_at_zeta(const ZSeries& f);

/// Split an integral z-centered f as a0 + (z - zeta) * a1 with a0 = f(zeta).
std::pair<TruncElem, ZSeries> split_z_at_zeta(const ZSeries& f);

/// Split a zeta-centered series with no principal part as a0 + (z-zeta)*a1.
std::pair<TruncElem, ZSeries> split_at_zeta(const ZSeries& f);

/// Integral part (exponents >= 0) of f; `residual_val_at_least` verifies the
/// dropped principal coefficients all have I-adic valuation >= bound.
ZSeries drop_principal(const ZSeries& f);
bool principal_val_at_least(const ZSeries& f, int bound);

/// --- divisibility by (z - zeta)^k ---------------------------------------

/// Decided in zeta coordinates: recenter and inspect exponents < k.
bool divisible_by_zmzeta(const ZSeries& f, int k);
/// Same question decided in z coordinates: multiply by the inverse and
/// inspect the principal part (oracle for the recentering route).
bool divisible_by_zmzeta_zroute(const ZSeries& f, int k);

/// f is a unit of R[[z]]: integral, unit constant coefficient.
bool is_integral_unit(const ZSeries& f);

/// --- special elements ----------------------------------------------------

/// ell_minus = prod_{i >= 0} (1 - zeta^{q^i} / z), exact in R_N: factors
/// with q^i >= N equal 1.
ZSeries ell_minus(const TruncRingPtr& r);

/// l_0 = prod_{i >= 1} (1 - zeta^{q^i - 1}), truncated to R_N: the finite
/// product over q^i - 1 < N.  A unit (constant term 1).
TruncElem l_zero(const TruncRingPtr& r);

/// --- random data for property tests -------------------------------------

/// Random series with `count` random coefficients on [elo, ehi].
ZSeries random_zseries(const TruncRingPtr& r, std::mt19937_64& rng, int elo, int ehi,
                       int count = 4, Center c = Center::Z);
/// Random unit of R[[z]]: unit constant coefficient plus random integral terms.
ZSeries random_integral_unit(const TruncRingPtr& r, std::mt19937_64& rng, int ehi = 3,
                             int count = 3, Center c = Center::Z);

}  // namespace shtuka
