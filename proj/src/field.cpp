#include "shtuka/field.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <sstream>

namespace shtuka {

namespace {

bool is_prime(int n) {
    if (n < 2) return false;
    for (int d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Dense polynomial arithmetic over F_p, used only to build the tables and to
// check irreducibility.  Coefficients ascending.
using Poly = std::vector<int>;

Poly poly_trim(Poly a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
    return a;
}

Poly poly_mul(const Poly& a, const Poly& b, int p) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            c[i + j] = (c[i + j] + a[i] * b[j]) % p;
    return poly_trim(c);
}

// Remainder of a by monic b.
Poly poly_mod(Poly a, const Poly& b, int p) {
    a = poly_trim(a);
    while (a.size() >= b.size()) {
        int lead = a.back();
        size_t shift = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) {
            a[shift + i] = ((a[shift + i] - lead * b[i]) % p + p) % p;
        }
        a = poly_trim(a);
    }
    return a;
}

bool poly_is_zero(const Poly& a) { return poly_trim(a).empty(); }

// Enumerate all monic polynomials of degree d over F_p.
void for_each_monic(int p, int d, const std::function<void(const Poly&)>& fn) {
    Poly c(d + 1, 0);
    c[d] = 1;
    long long total = 1;
    for (int i = 0; i < d; ++i) total *= p;
    for (long long code = 0; code < total; ++code) {
        long long v = code;
        for (int i = 0; i < d; ++i) {
            c[i] = int(v % p);
            v /= p;
        }
        fn(c);
    }
}

bool is_irreducible(const Poly& f, int p) {
    int d = int(f.size()) - 1;
    if (d < 1) return false;
    bool reducible = false;
    for (int k = 1; 2 * k <= d && !reducible; ++k) {
        for_each_monic(p, k, [&](const Poly& g) {
            if (!reducible && poly_is_zero(poly_mod(f, g, p))) reducible = true;
        });
    }
    return !reducible;
}

}  // namespace

FieldParams::FieldParams(int p) : FieldParams(p, 1, {}) {}

FieldParams::FieldParams(int p, int e, std::vector<int> modulus) : p_(p), e_(e) {
    if (!is_prime(p_)) throw Error("field: p = " + std::to_string(p_) + " is not prime");
    if (e_ < 1 || e_ > 4) throw Error("field: extension degree must be in [1,4]");
    q_ = 1;
    for (int i = 0; i < e_; ++i) q_ *= p_;
    if (q_ > 1024) throw Error("field: q too large for table-driven arithmetic");
    if (e_ == 1) {
        modulus_ = {0, 1};  // x, unused
    } else {
        if (modulus.empty()) modulus = canonical_modulus(p_, e_);
        if (int(modulus.size()) != e_ + 1)
            throw Error("field: modulus must have degree e");
        for (int& c : modulus) c = ((c % p_) + p_) % p_;
        if (modulus.back() != 1) throw Error("field: modulus must be monic");
        if (!is_irreducible(modulus, p_))
            throw Error("field: modulus is reducible over F_p");
        modulus_ = std::move(modulus);
    }
    build_tables();
}

void FieldParams::build_tables() {
    add_.assign(size_t(q_) * q_, 0);
    mul_.assign(size_t(q_) * q_, 0);
    neg_.assign(q_, 0);
    inv_.assign(q_, 0);

    auto decode = [&](int code) {
        Poly c(e_, 0);
        for (int i = 0; i < e_; ++i) {
            c[i] = code % p_;
            code /= p_;
        }
        return c;
    };
    auto encode = [&](const Poly& c) {
        int code = 0;
        for (int i = e_ - 1; i >= 0; --i) code = code * p_ + (i < int(c.size()) ? c[i] : 0);
        return uint16_t(code);
    };

    for (int a = 0; a < q_; ++a) {
        Poly pa = decode(a);
        Poly na(e_, 0);
        for (int i = 0; i < e_; ++i) na[i] = (p_ - pa[i]) % p_;
        neg_[a] = encode(na);
        for (int b = 0; b < q_; ++b) {
            Poly pb = decode(b);
            Poly s(e_, 0);
            for (int i = 0; i < e_; ++i) s[i] = (pa[i] + pb[i]) % p_;
            add_[size_t(a) * q_ + b] = encode(s);
            Poly prod = e_ == 1 ? Poly{(pa[0] * pb[0]) % p_}
                                : poly_mod(poly_mul(pa, pb, p_), modulus_, p_);
            mul_[size_t(a) * q_ + b] = encode(prod);
        }
    }
    for (int a = 1; a < q_; ++a) {
        for (int b = 1; b < q_; ++b) {
            if (mul_[size_t(a) * q_ + b] == 1) {
                inv_[a] = uint16_t(b);
                break;
            }
        }
        if (inv_[a] == 0) throw Error("field: internal, no inverse found");
    }
}

uint16_t FieldParams::inv(uint16_t a) const {
    if (a == 0) throw NotInvertibleError("field: inversion of zero");
    return inv_[a];
}

uint16_t FieldParams::pow(uint16_t a, long long k) const {
    if (k < 0) {
        a = inv(a);
        k = -k;
    }
    uint16_t r = 1, b = a;
    while (k > 0) {
        if (k & 1) r = mul(r, b);
        b = mul(b, b);
        k >>= 1;
    }
    return r;
}

std::vector<int> FieldParams::canonical_modulus(int p, int e) {
    if (p == 2 && e == 2) return {1, 1, 1};
    if (p == 2 && e == 3) return {1, 1, 0, 1};
    if (p == 2 && e == 4) return {1, 1, 0, 0, 1};
    if (p == 3 && e == 2) return {1, 0, 1};
    if (p == 3 && e == 3) return {1, 2, 0, 1};
    if (p == 3 && e == 4) return {2, 1, 0, 0, 1};
    if (p == 5 && e == 2) return {2, 0, 1};
    if (p == 5 && e == 3) return {1, 1, 0, 1};
    if (p == 5 && e == 4) return {2, 0, 0, 0, 1};
    throw Error("field: no canonical modulus shipped for p=" + std::to_string(p) +
                ", e=" + std::to_string(e));
}

std::shared_ptr<const FieldParams> FieldParams::make(int p, int e, const std::vector<int>* modulus) {
    if (e == 1) return std::make_shared<const FieldParams>(p);
    std::vector<int> m = modulus ? *modulus : canonical_modulus(p, e);
    return std::make_shared<const FieldParams>(p, e, std::move(m));
}

FqElem FqElem::from_int(const FieldPtr& f, long long v) {
    long long r = ((v % f->p()) + f->p()) % f->p();
    return FqElem(f, uint16_t(r));
}

FqElem FqElem::from_coeffs(const FieldPtr& f, const std::vector<int>& coeffs) {
    if (int(coeffs.size()) > f->e()) throw Error("field: too many coefficients");
    int code = 0;
    for (int i = f->e() - 1; i >= 0; --i) {
        int c = i < int(coeffs.size()) ? ((coeffs[i] % f->p()) + f->p()) % f->p() : 0;
        code = code * f->p() + c;
    }
    return FqElem(f, uint16_t(code));
}

std::vector<int> FqElem::coeffs() const {
    std::vector<int> c(f_->e(), 0);
    int v = code_;
    for (int i = 0; i < f_->e(); ++i) {
        c[i] = v % f_->p();
        v /= f_->p();
    }
    return c;
}

const FieldParams& FqElem::fp(const FqElem& o) const {
    if (f_.get() != o.f_.get() &&
        (f_->p() != o.f_->p() || f_->e() != o.f_->e() || f_->modulus() != o.f_->modulus()))
        throw RingMismatchError("field: mixing elements of different fields");
    return *f_;
}

bool FqElem::operator==(const FqElem& o) const {
    fp(o);
    return code_ == o.code_;
}

std::string FqElem::str() const {
    if (f_->e() == 1) return std::to_string(code_);
    std::ostringstream os;
    os << "[";
    auto c = coeffs();
    for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
    os << "]";
    return os.str();
}

uint64_t uniform_below(std::mt19937_64& rng, uint64_t n) {
    // rejection sampling on the top range keeps the draw unbiased
    uint64_t lim = std::numeric_limits<uint64_t>::max() - std::numeric_limits<uint64_t>::max() % n;
    uint64_t v;
    do {
        v = rng();
    } while (v >= lim);
    return v % n;
}

FqElem random_fq(const FieldPtr& f, std::mt19937_64& rng) {
    return FqElem(f, uint16_t(uniform_below(rng, uint64_t(f->q()))));
}

FqElem random_fq_nonzero(const FieldPtr& f, std::mt19937_64& rng) {
    return FqElem(f, uint16_t(1 + uniform_below(rng, uint64_t(f->q() - 1))));
}

}  // namespace shtuka
