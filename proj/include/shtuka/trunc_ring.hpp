#pragma once

#include <cstdint>
#include <limits>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "shtuka/field.hpp"

namespace shtuka {

/// Parameters of the base ring R_N = F_q[zeta, h]/(zeta, h)^N: every monomial
/// of total degree >= N is zero.  The nilradical is I = (zeta, h), I^N = 0.
struct TruncRingParams {
    FieldPtr field;
    int N = 1;

    TruncRingParams(FieldPtr f, int n) : field(std::move(f)), N(n) {
        if (N < 1) throw Error("trunc: N must be >= 1");
        if (N > 4096) throw Error("trunc: N too large");
    }
    int q() const { return field->q(); }
    /// Default z-adic working precision for series over this ring.
    int default_zprec() const { return 2 * N + 8; }

    bool same(const TruncRingParams& o) const {
        return N == o.N && field->p() == o.field->p() && field->e() == o.field->e() &&
               field->modulus() == o.field->modulus();
    }
};

using TruncRingPtr = std::shared_ptr<const TruncRingParams>;

TruncRingPtr make_trunc_ring(const FieldPtr& f, int N);

/// Sentinel for v(0) = infinity.
inline constexpr int kValInfinity = std::numeric_limits<int>::max();

/// Element of R_N, stored as a sorted flat vector of
/// (key = zeta_exp << 16 | h_exp, nonzero coefficient code); the packed key
/// order is the lexicographic order on (zeta_exp, h_exp).
class TruncElem {
public:
    struct Term {
        uint32_t key;
        uint16_t code;
        int ze() const { return int(key >> 16); }
        int he() const { return int(key & 0xffffu); }
        bool operator==(const Term&) const = default;
    };
    using TermVec = std::vector<Term>;

    TruncElem() = default;
    explicit TruncElem(TruncRingPtr ring) : ring_(std::move(ring)) {}

    static TruncElem zero(const TruncRingPtr& r) { return TruncElem(r); }
    static TruncElem one(const TruncRingPtr& r) { return constant(r, FqElem::one(r->field)); }
    static TruncElem constant(const TruncRingPtr& r, const FqElem& c);
    static TruncElem from_int(const TruncRingPtr& r, long long v);
    /// c * zeta^i * h^j (dropped if i + j >= N).
    static TruncElem monomial(const TruncRingPtr& r, int i, int j, const FqElem& c);
    static TruncElem zeta(const TruncRingPtr& r) { return monomial(r, 1, 0, FqElem::one(r->field)); }
    static TruncElem hvar(const TruncRingPtr& r) { return monomial(r, 0, 1, FqElem::one(r->field)); }

    const TruncRingPtr& ring() const { return ring_; }
    const TermVec& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_one() const { return terms_.size() == 1 && terms_[0].key == 0 && terms_[0].code == 1; }

    /// I-adic valuation: minimal total degree of a stored monomial, kValInfinity for 0.
    int valuation() const;
    /// The coefficient of zeta^0 h^0.
    FqElem constant_term() const;
    FqElem coeff(int i, int j) const;
    /// A unit of R_N iff the constant term is nonzero in F_q.
    bool is_unit() const { return !terms_.empty() && terms_[0].key == 0; }
    /// True if every stored monomial is a pure zeta power (no h).
    bool is_zeta_only() const;
    /// True if every stored monomial is a pure h power (no zeta).
    bool is_h_only() const;

    TruncElem operator+(const TruncElem& o) const;
    TruncElem operator-(const TruncElem& o) const;
    TruncElem operator-() const;
    TruncElem operator*(const TruncElem& o) const;
    TruncElem operator*(const FqElem& c) const;
    bool operator==(const TruncElem& o) const;
    bool operator!=(const TruncElem& o) const { return !(*this == o); }

    /// Multiply by zeta^di h^dj, truncating.
    TruncElem shift(int di, int dj) const;

    /// Inverse of a unit: with a = c(1 - w), v(w) >= 1, returns
    /// c^{-1} sum_{k<N} w^k (exact, the sum is finite since I^N = 0).
    TruncElem inv() const;

    /// Frobenius a -> a^q.  Coefficients lie in F_q, so this is the monomial
    /// map zeta^i h^j -> zeta^{qi} h^{qj}.
    TruncElem sigma() const;

    /// Image in R_{N'} for N' <= N (truncate total degree >= N').
    TruncElem project(const TruncRingPtr& target) const;

    /// a^k, negative k through inv().
    TruncElem pow(long long k) const;

    std::string str() const;

private:
    friend class TruncBuilder;
    void check_same(const TruncElem& o) const;

    TruncRingPtr ring_;
    TermVec terms_;
};

/// Accumulator over a dense degree-triangle buffer; the workhorse behind
/// multiplication and the term-rewriting maps.
class TruncBuilder {
public:
    explicit TruncBuilder(TruncRingPtr ring);
    void add(int i, int j, uint16_t code);
    void add_term(const TruncElem::Term& t, int di = 0, int dj = 0);
    TruncElem take();

private:
    TruncRingPtr ring_;
    std::vector<uint16_t> buf_;  // triangular layout, only degrees < N
};

/// Uniformly random element supported on `count` random admissible monomials
/// (duplicates collapse).  Dense enough for property tests, sparse enough to
/// keep the classification grid fast.
TruncElem random_trunc(const TruncRingPtr& r, std::mt19937_64& rng, int count = 6);
/// Random unit (nonzero constant term).
TruncElem random_trunc_unit(const TruncRingPtr& r, std::mt19937_64& rng, int count = 6);
/// Random element of the nilradical I (valuation >= 1).
TruncElem random_trunc_nil(const TruncRingPtr& r, std::mt19937_64& rng, int count = 6);

}  // namespace shtuka
