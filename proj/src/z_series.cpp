#include "shtuka/z_series.hpp"

namespace shtuka {

ZSeries zs_zero(const TruncRingPtr& r, Center c) { return ZSeries::zero(r, c); }
ZSeries zs_one(const TruncRingPtr& r, Center c) { return ZSeries::one(r, c); }
ZSeries zs_const(const TruncRingPtr& r, const TruncElem& v, Center c) {
    return ZSeries::constant(r, c, v);
}
ZSeries zs_var(const TruncRingPtr& r, Center c) {
    return ZSeries::monomial(r, c, 1, TruncElem::one(r));
}
ZSeries zs_z_minus(const TruncRingPtr& r, const TruncElem& a) {
    ZSeries s = zs_var(r, Center::Z);
    s.set(0, -a);
    return s;
}

ZSeries zs_sigma(const ZSeries& f) {
    ZSeries r(f.ring(), f.center(), f.prec());
    for (const auto& [e, c] : f.coeffs()) r.set(e, c.sigma());
    return r;
}

int binom_mod_p(long long n, long long k, int p) {
    if (k < 0) return 0;
    if (n < 0) {
        // C(n,k) = (-1)^k C(k-n-1, k)
        int sign = (k % 2 == 0) ? 1 : p - 1;
        return int((long long)sign * binom_mod_p(k - n - 1, k, p) % p);
    }
    if (k > n) return 0;
    // Lucas
    long long r = 1;
    while (k > 0 || n > 0) {
        long long ni = n % p, ki = k % p;
        if (ki > ni) return 0;
        long long c = 1;
        for (long long i = 0; i < ki; ++i) {
            c = c * ((ni - i) % p) % p;
            long long inv = 1, b = (i + 1) % p, e = p - 2;  // Fermat
            while (e > 0) {
                if (e & 1) inv = inv * b % p;
                b = b * b % p;
                e >>= 1;
            }
            c = c * inv % p;
        }
        r = r * c % p;
        n /= p;
        k /= p;
    }
    return int(r);
}

ZSeries recenter(const ZSeries& f) {
    if (f.center() != Center::Z) throw Error("recenter: input must be z-centered");
    const TruncRingPtr& ring = f.ring();
    const int N = ring->N;
    const int p = ring->field->p();
    int prec = f.is_exact() ? kPrecExact : clamp_prec((long long)f.prec() - (N - 1));
    ZSeries out(ring, Center::ZMinusZeta, prec);
    for (const auto& [e, c] : f.coeffs()) {
        if (e >= 0) {
            // z^e = sum_{j} C(e,j) zeta^{e-j} (z-zeta)^j, zeta^{e-j}=0 for e-j>=N
            for (int j = std::max(0, e - N + 1); j <= e; ++j) {
                int b = binom_mod_p(e, j, p);
                if (b == 0) continue;
                TruncElem t = (c * FqElem::from_int(ring->field, b)).shift(e - j, 0);
                out.add_to(j, t);
            }
        } else {
            // z^e = sum_{j<N} C(e,j) zeta^j (z-zeta)^{e-j}
            for (int j = 0; j < N; ++j) {
                int b = binom_mod_p(e, j, p);
                if (b == 0) continue;
                TruncElem t = (c * FqElem::from_int(ring->field, b)).shift(j, 0);
                out.add_to(e - j, t);
            }
        }
    }
    return out;
}

TruncElem eval_at_zeta(const ZSeries& f) {
    if (!f.integral())
        throw Error("eval_at_zeta: series has a principal part");
    const TruncRingPtr& ring = f.ring();
    if (!f.is_exact() && f.prec() < ring->N)
        throw PrecisionError("eval_at_zeta: window shorter than nilpotency order");
    TruncElem s = TruncElem::zero(ring);
    for (const auto& [e, c] : f.coeffs()) {
        if (e >= ring->N) break;
        s = s + c.shift(e, 0);
    }
    return s;
}

std::pair<TruncElem, ZSeries> split_z_at_zeta(const ZSeries& f) {
    if (f.center() != Center::Z) throw Error("split_z_at_zeta: expected z center");
    const TruncRingPtr& ring = f.ring();
    TruncElem a0 = eval_at_zeta(f);
    ZSeries num = f - zs_const(ring, a0);
    // (z - zeta)^{-1} is exact (finite by nilpotency), so no window is lost
    ZSeries a1 = num * zs_z_minus(ring, TruncElem::zeta(ring)).inv(ring->default_zprec());
    if (!a1.integral())
        throw Error("split_z_at_zeta: division by (z - zeta) left a principal part");
    return {a0, a1};
}

std::pair<TruncElem, ZSeries> split_at_zeta(const ZSeries& f) {
    if (f.center() != Center::ZMinusZeta) throw Error("split_at_zeta: expected z-zeta center");
    if (!f.integral()) throw Error("split_at_zeta: series has a principal part");
    if (f.prec() < 1) throw PrecisionError("split_at_zeta: empty window");
    TruncElem a0 = f.coefficient(0);
    ZSeries rest = f;
    rest.set(0, TruncElem::zero(f.ring()));
    return {a0, rest.shift(-1)};
}

ZSeries drop_principal(const ZSeries& f) {
    ZSeries r(f.ring(), f.center(), f.prec());
    for (const auto& [e, c] : f.coeffs())
        if (e >= 0) r.set(e, c);
    return r;
}

bool principal_val_at_least(const ZSeries& f, int bound) {
    for (const auto& [e, c] : f.coeffs()) {
        if (e >= 0) break;
        if (c.valuation() < bound) return false;
    }
    return true;
}

bool divisible_by_zmzeta(const ZSeries& f, int k) {
    ZSeries g = f.center() == Center::Z ? recenter(f) : f;
    if (!g.is_exact() && g.prec() < k)
        throw PrecisionError("divisibility: window too short to decide (z-zeta)^" +
                             std::to_string(k));
    for (const auto& [e, c] : g.coeffs()) {
        if (e >= k) break;
        if (!c.is_zero()) return false;
    }
    return true;
}

bool divisible_by_zmzeta_zroute(const ZSeries& f, int k) {
    if (f.center() != Center::Z) throw Error("divisibility: z-route expects z center");
    const TruncRingPtr& ring = f.ring();
    int window = f.is_exact() ? ring->default_zprec() : f.prec();
    ZSeries inv = zs_z_minus(ring, TruncElem::zeta(ring)).inv(window);
    ZSeries g = f * inv.pow(k, window);
    if (!g.is_exact() && g.prec() < 0)
        throw PrecisionError("divisibility: z-route window exhausted");
    return g.integral();
}

bool is_integral_unit(const ZSeries& f) {
    if (!f.integral()) return false;
    if (f.prec() < 1) throw PrecisionError("is_integral_unit: empty window");
    return f.coefficient(0).is_unit();
}

ZSeries ell_minus(const TruncRingPtr& r) {
    ZSeries prod = zs_one(r);
    for (long long piq = 1; piq < r->N; piq *= r->q()) {
        // factor 1 - zeta^{q^i} z^{-1}
        ZSeries f = zs_one(r);
        f.set(-1, TruncElem::monomial(r, int(piq), 0, FqElem::from_int(r->field, -1)));
        prod = prod * f;
    }
    return prod;
}

TruncElem l_zero(const TruncRingPtr& r) {
    TruncElem prod = TruncElem::one(r);
    for (long long piq = r->q(); piq - 1 < r->N; piq *= r->q()) {
        TruncElem f = TruncElem::one(r) -
                      TruncElem::monomial(r, int(piq - 1), 0, FqElem::one(r->field));
        prod = prod * f;
    }
    return prod;
}

ZSeries random_zseries(const TruncRingPtr& r, std::mt19937_64& rng, int elo, int ehi, int count,
                       Center c) {
    ZSeries s = ZSeries::zero(r, c);
    for (int k = 0; k < count; ++k) {
        int e = elo + int(uniform_below(rng, uint64_t(ehi - elo + 1)));
        s.add_to(e, random_trunc(r, rng, 3));
    }
    return s;
}

ZSeries random_integral_unit(const TruncRingPtr& r, std::mt19937_64& rng, int ehi, int count,
                             Center c) {
    ZSeries s = ZSeries::constant(r, c, random_trunc_unit(r, rng, 3));
    for (int k = 0; k < count; ++k) {
        int e = 1 + int(uniform_below(rng, uint64_t(ehi)));
        s.add_to(e, random_trunc(r, rng, 2));
    }
    return s;
}

}  // namespace shtuka
