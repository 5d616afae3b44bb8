#pragma once

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "shtuka/errors.hpp"

namespace shtuka {

/// Parameters of a finite field F_q, q = p^e, realised as F_p[x]/(modulus).
/// Elements are encoded as integers in [0, q): the code of (c_0, ..., c_{e-1})
/// is sum c_i p^i.  All arithmetic is table driven; tables are built once at
/// construction, which also verifies primality of p and irreducibility of the
/// modulus by trial factorization (intended for desk scale, e <= 4).
class FieldParams {
public:
    /// Prime field F_p.
    explicit FieldParams(int p);

    /// Extension field F_{p^e} with a monic irreducible modulus of degree e,
    /// coefficients listed in ascending order (constant first), each in [0,p).
    FieldParams(int p, int e, std::vector<int> modulus);

    int p() const { return p_; }
    int e() const { return e_; }
    int q() const { return q_; }
    const std::vector<int>& modulus() const { return modulus_; }

    uint16_t add(uint16_t a, uint16_t b) const { return add_[a * q_ + b]; }
    uint16_t sub(uint16_t a, uint16_t b) const { return add_[a * q_ + neg_[b]]; }
    uint16_t mul(uint16_t a, uint16_t b) const { return mul_[a * q_ + b]; }
    uint16_t neg(uint16_t a) const { return neg_[a]; }
    uint16_t inv(uint16_t a) const;
    uint16_t pow(uint16_t a, long long k) const;

    /// The canonical modulus this library ships for (p, e); used when the
    /// caller does not supply one.  Available for p in {2,3,5}, e <= 4.
    static std::vector<int> canonical_modulus(int p, int e);

    static std::shared_ptr<const FieldParams> make(int p, int e = 1,
                                                   const std::vector<int>* modulus = nullptr);

private:
    void build_tables();

    int p_ = 0;
    int e_ = 1;
    int q_ = 0;
    std::vector<int> modulus_;
    std::vector<uint16_t> add_;
    std::vector<uint16_t> mul_;
    std::vector<uint16_t> neg_;
    std::vector<uint16_t> inv_;
};

using FieldPtr = std::shared_ptr<const FieldParams>;

/// An element of F_q.  Value type: cheap to copy, immutable in practice.
class FqElem {
public:
    FqElem() = default;
    FqElem(FieldPtr f, uint16_t code) : f_(std::move(f)), code_(code) {}

    /// From an integer, reduced mod p (prime-field embedding).
    static FqElem from_int(const FieldPtr& f, long long v);
    /// From coefficient vector (ascending), each reduced mod p.
    static FqElem from_coeffs(const FieldPtr& f, const std::vector<int>& coeffs);
    static FqElem zero(const FieldPtr& f) { return FqElem(f, 0); }
    static FqElem one(const FieldPtr& f) { return FqElem(f, 1); }

    const FieldPtr& field() const { return f_; }
    uint16_t code() const { return code_; }
    bool is_zero() const { return code_ == 0; }
    bool is_one() const { return code_ == 1; }
    std::vector<int> coeffs() const;

    FqElem operator+(const FqElem& o) const { return FqElem(f_, fp(o).add(code_, o.code_)); }
    FqElem operator-(const FqElem& o) const { return FqElem(f_, fp(o).sub(code_, o.code_)); }
    FqElem operator*(const FqElem& o) const { return FqElem(f_, fp(o).mul(code_, o.code_)); }
    FqElem operator-() const { return FqElem(f_, f_->neg(code_)); }
    FqElem inv() const { return FqElem(f_, f_->inv(code_)); }
    FqElem pow(long long k) const { return FqElem(f_, f_->pow(code_, k)); }

    bool operator==(const FqElem& o) const;
    bool operator!=(const FqElem& o) const { return !(*this == o); }

    std::string str() const;

private:
    const FieldParams& fp(const FqElem& o) const;

    FieldPtr f_;
    uint16_t code_ = 0;
};

/// Deterministic uniform sampling helpers (hand rolled so seeded runs are
/// byte-identical across platforms; std::uniform_int_distribution is not).
uint64_t uniform_below(std::mt19937_64& rng, uint64_t n);
FqElem random_fq(const FieldPtr& f, std::mt19937_64& rng);
FqElem random_fq_nonzero(const FieldPtr& f, std::mt19937_64& rng);

}  // namespace shtuka
