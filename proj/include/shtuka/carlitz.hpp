#pragma once

#include <map>
#include <vector>

#include "shtuka/series.hpp"
#include "shtuka/field.hpp"

namespace shtuka {

/// Dense univariate polynomial over F_q in the variable zeta.
class FqPoly {
public:
    FqPoly() = default;
    explicit FqPoly(FieldPtr f) : f_(std::move(f)) {}
    FqPoly(FieldPtr f, std::vector<uint16_t> coeffs) : f_(std::move(f)), c_(std::move(coeffs)) {
        trim();
    }

    static FqPoly zero(const FieldPtr& f) { return FqPoly(f); }
    static FqPoly one(const FieldPtr& f) { return FqPoly(f, {1}); }
    static FqPoly monomial(const FieldPtr& f, int deg, const FqElem& c);

    const FieldPtr& field() const { return f_; }
    const std::vector<uint16_t>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return int(c_.size()) - 1; }  // -1 for zero
    FqElem coeff(int k) const;
    FqElem lead() const;
    /// Least exponent with nonzero coefficient (0 for the zero polynomial).
    int valuation() const;

    FqPoly operator+(const FqPoly& o) const;
    FqPoly operator-(const FqPoly& o) const;
    FqPoly operator-() const;
    FqPoly operator*(const FqPoly& o) const;
    FqPoly operator*(const FqElem& s) const;
    bool operator==(const FqPoly& o) const { return c_ == o.c_; }

    /// Quotient and remainder by a nonzero divisor.
    std::pair<FqPoly, FqPoly> divrem(const FqPoly& d) const;
    FqPoly monic() const;
    static FqPoly gcd(FqPoly a, FqPoly b);

    /// Substitute zeta -> zeta^k (k >= 1): spreads exponents.
    FqPoly subst_pow(long long k) const;

    std::string str() const;

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    FieldPtr f_;
    std::vector<uint16_t> c_;  // codes, ascending degree
};

/// Element of F_q(zeta) in lowest terms with monic denominator.
class RatZeta {
public:
    RatZeta() = default;
    RatZeta(FqPoly num, FqPoly den);
    static RatZeta zero(const FieldPtr& f) { return RatZeta(FqPoly::zero(f), FqPoly::one(f)); }
    static RatZeta one(const FieldPtr& f) { return RatZeta(FqPoly::one(f), FqPoly::one(f)); }
    static RatZeta from_poly(FqPoly p) {
        FieldPtr f = p.field();
        return RatZeta(std::move(p), FqPoly::one(f));
    }

    const FqPoly& num() const { return num_; }
    const FqPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == FqPoly::one(num_.field()) && den_.degree() == 0; }

    RatZeta operator+(const RatZeta& o) const;
    RatZeta operator-(const RatZeta& o) const;
    RatZeta operator-() const;
    RatZeta operator*(const RatZeta& o) const;
    RatZeta inv() const;
    bool operator==(const RatZeta& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatZeta& o) const { return !(*this == o); }

    /// b -> b^{q^i}, realised as the substitution zeta -> zeta^{q^i}
    /// (valid because the coefficients are F_q-rational).
    RatZeta frobenius(int i) const;

    std::string str() const;

private:
    FqPoly num_, den_;
};

/// Twisted polynomial sum_k c_k tau^k over F_q(zeta), tau b = b^q tau.
class TwistedPoly {
public:
    TwistedPoly() = default;
    explicit TwistedPoly(FieldPtr f) : f_(std::move(f)) {}
    TwistedPoly(FieldPtr f, std::vector<RatZeta> coeffs)
        : f_(std::move(f)), c_(std::move(coeffs)) {
        trim();
    }

    static TwistedPoly zero(const FieldPtr& f) { return TwistedPoly(f); }
    static TwistedPoly one(const FieldPtr& f) { return TwistedPoly(f, {RatZeta::one(f)}); }

    const FieldPtr& field() const { return f_; }
    int degree() const { return int(c_.size()) - 1; }
    RatZeta coeff(int k) const;
    bool is_zero() const { return c_.empty(); }

    TwistedPoly operator+(const TwistedPoly& o) const;
    TwistedPoly operator-(const TwistedPoly& o) const;
    /// Constant multiples: z * f (left) and f * z (right) differ by twists.
    TwistedPoly lmul_const(const RatZeta& z) const;
    TwistedPoly rmul_const(const RatZeta& z) const;
    bool operator==(const TwistedPoly& o) const { return c_ == o.c_; }

    /// Truncate to tau-degree <= T.
    TwistedPoly truncate(int T) const;

    std::string str() const;

private:
    friend TwistedPoly twisted_compose(const TwistedPoly&, const TwistedPoly&, int);
    friend TwistedPoly phi(const FieldPtr&, const std::vector<FqElem>&);
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }
    FieldPtr f_;
    std::vector<RatZeta> c_;
};

/// Operator composition (the twisted product), truncated at tau^{T+1}.
TwistedPoly twisted_compose(const TwistedPoly& f, const TwistedPoly& g, int T);

/// The module map t -> zeta + tau extended to a ring homomorphism on
/// F_q[t]; input is the dense t-coefficient vector.
TwistedPoly phi(const FieldPtr& f, const std::vector<FqElem>& a);

/// Exponential coefficients e_0 = 1, e_n = 1/((zeta^{q^n}-zeta)...(zeta^{q^n}-zeta^{q^{n-1}})).
std::vector<RatZeta> exp_coeffs(const FieldPtr& f, int T);
/// Logarithm coefficients c_0 = 1, c_n = 1/((zeta-zeta^q)...(zeta-zeta^{q^n})),
/// satisfying (zeta^{q^n} - zeta) c_n = -c_{n-1}.
std::vector<RatZeta> log_coeffs(const FieldPtr& f, int T);

/// ------------------------------------------------------------------------
/// The period coefficient ring: truncated Laurent series in zeta whose
/// coefficients are polynomials in h with h^D = 0.  This is where the
/// generic fibre lives: zeta is invertible here, h is nilpotent.

struct PeriodParams {
    FieldPtr field;
    int D = 1;            // h-degree cap (h^D = 0)
    int default_prec;     // window used when inverting exact elements

    PeriodParams(FieldPtr f, int d, int prec) : field(std::move(f)), D(d), default_prec(prec) {
        if (D < 1) throw Error("period: D must be >= 1");
        if (prec < 1) throw Error("period: precision must be >= 1");
    }
    bool same(const PeriodParams& o) const {
        return D == o.D && field->p() == o.field->p() && field->e() == o.field->e() &&
               field->modulus() == o.field->modulus();
    }
};

using PeriodParamsPtr = std::shared_ptr<const PeriodParams>;

PeriodParamsPtr make_period_params(const FieldPtr& f, int D, int prec);

/// A value sum_{d < D} h^d A_d(zeta) with each A_d a zeta-Laurent series
/// known modulo zeta^prec.
class PeriodValue {
public:
    using Key = std::pair<int, int>;  // (h_deg, zeta_exp)

    PeriodValue() = default;
    explicit PeriodValue(PeriodParamsPtr par, int prec = kPrecExact)
        : par_(std::move(par)), prec_(prec) {}

    static PeriodValue zero(const PeriodParamsPtr& p) { return PeriodValue(p); }
    static PeriodValue one(const PeriodParamsPtr& p) { return monomial(p, 0, 0, FqElem::one(p->field)); }
    static PeriodValue monomial(const PeriodParamsPtr& p, int h_deg, int zeta_exp,
                                const FqElem& c, int prec = kPrecExact);
    /// zeta^k (k may be negative)
    static PeriodValue zeta_pow(const PeriodParamsPtr& p, int k) {
        return monomial(p, 0, k, FqElem::one(p->field));
    }
    static PeriodValue hvar(const PeriodParamsPtr& p) {
        return monomial(p, 1, 0, FqElem::one(p->field));
    }

    const PeriodParamsPtr& params() const { return par_; }
    int prec() const { return prec_; }
    bool is_exact() const { return prec_ >= kPrecExact; }
    const std::map<Key, FqElem>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    /// Unit iff the h^0 part is nonzero (its lowest zeta-coefficient is then
    /// a unit of F_q, and h is nilpotent).
    bool is_unit() const;
    /// Minimal zeta-exponent over all terms (0 for the zero element).
    int zeta_val() const;
    /// Minimal h-degree over all terms (D for the zero element).
    int h_val() const;
    /// The h^d part as a PeriodValue.
    PeriodValue h_part(int d) const;
    FqElem coeff(int h_deg, int zeta_exp) const;

    PeriodValue operator+(const PeriodValue& o) const;
    PeriodValue operator-(const PeriodValue& o) const;
    PeriodValue operator-() const;
    PeriodValue operator*(const PeriodValue& o) const;
    PeriodValue operator*(const FqElem& c) const;
    bool operator==(const PeriodValue& o) const;
    bool operator!=(const PeriodValue& o) const { return !(*this == o); }

    /// Multiply by h^dh zeta^dz.
    PeriodValue shift(int dh, int dz) const;
    PeriodValue truncate(int prec) const;
    PeriodValue inv(int window) const;
    PeriodValue inv() const { return inv(par_->default_prec); }
    PeriodValue pow(long long k, int window) const;

    /// Frobenius: h^d zeta^e -> h^{qd} zeta^{qe}.
    PeriodValue sigma() const;

    /// Agreement of stored data below min(prec, o.prec) (per h-degree).
    bool agrees_with(const PeriodValue& o) const;

    std::string str() const;

private:
    void put(int h_deg, int zeta_exp, const FqElem& c);
    void check_same(const PeriodValue& o) const;

    PeriodParamsPtr par_;
    int prec_ = kPrecExact;
    std::map<Key, FqElem> terms_;
};

template <>
struct SeriesRing<PeriodValue> {
    using Params = PeriodParamsPtr;
    static PeriodValue zero(const Params& p) { return PeriodValue::zero(p); }
    static PeriodValue one(const Params& p) { return PeriodValue::one(p); }
    static bool is_zero(const PeriodValue& c) { return c.is_zero(); }
    static bool is_unit(const PeriodValue& c) { return c.is_unit(); }
    static PeriodValue inv(const PeriodValue& c) { return c.inv(); }
    static bool same_ring(const Params& a, const Params& b) { return a && b && a->same(*b); }
    static long long nil_index(const Params& p) { return p->D; }
    static long long coeff_val(const PeriodValue& c) {
        return c.is_zero() ? p_of(c) : c.h_val();
    }
    static std::string str(const PeriodValue& c) { return c.str(); }

private:
    static long long p_of(const PeriodValue& c) { return c.params() ? c.params()->D : 1; }
};

/// Series in (z - zeta) over the period coefficient ring: the generic-fibre
/// counterpart of the zeta-centered ZSeries.
using GfSeries = LaurentSeries<PeriodValue>;

/// Expand an exact rational as a zeta-Laurent to absolute precision P.
PeriodValue rat_to_laurent(const PeriodParamsPtr& par, const RatZeta& r, int P);

/// log(h) = sum_{n : q^n vanishing bound} c_n h^{q^n} with c_n expanded to
/// precision P; only h-degrees q^n < D survive.
PeriodValue log_eval(const PeriodParamsPtr& par, int P);

/// l_0 = prod_{i >= 1, q^i - 1 < P} (1 - zeta^{q^i - 1}) mod zeta^P.
PeriodValue l_zero_laurent(const PeriodParamsPtr& par, int P);

}  // namespace shtuka
