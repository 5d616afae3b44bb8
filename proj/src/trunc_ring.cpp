#include "shtuka/trunc_ring.hpp"

#include <algorithm>
#include <sstream>

namespace shtuka {

namespace {

// triangular index of (i, j) with i + j = d < N:  T(d) + j
inline size_t tri(int i, int j) {
    int d = i + j;
    return size_t(d) * (d + 1) / 2 + size_t(j);
}
inline size_t tri_size(int N) { return size_t(N) * (N + 1) / 2; }

}  // namespace

TruncRingPtr make_trunc_ring(const FieldPtr& f, int N) {
    return std::make_shared<const TruncRingParams>(f, N);
}

TruncBuilder::TruncBuilder(TruncRingPtr ring) : ring_(std::move(ring)) {
    buf_.assign(tri_size(ring_->N), 0);
}

void TruncBuilder::add(int i, int j, uint16_t code) {
    if (code == 0 || i + j >= ring_->N) return;
    uint16_t& slot = buf_[tri(i, j)];
    slot = ring_->field->add(slot, code);
}

void TruncBuilder::add_term(const TruncElem::Term& t, int di, int dj) {
    add(t.ze() + di, t.he() + dj, t.code);
}

TruncElem TruncBuilder::take() {
    TruncElem out(ring_);
    for (int d = 0; d < ring_->N; ++d)
        for (int j = 0; j <= d; ++j) {
            uint16_t c = buf_[size_t(d) * (d + 1) / 2 + size_t(j)];
            if (c) out.terms_.push_back({uint32_t(d - j) << 16 | uint32_t(j), c});
        }
    std::sort(out.terms_.begin(), out.terms_.end(),
              [](const TruncElem::Term& a, const TruncElem::Term& b) { return a.key < b.key; });
    std::fill(buf_.begin(), buf_.end(), 0);
    return out;
}

TruncElem TruncElem::constant(const TruncRingPtr& r, const FqElem& c) {
    TruncElem t(r);
    if (!c.is_zero()) t.terms_.push_back({0, c.code()});
    return t;
}

TruncElem TruncElem::from_int(const TruncRingPtr& r, long long v) {
    return constant(r, FqElem::from_int(r->field, v));
}

TruncElem TruncElem::monomial(const TruncRingPtr& r, int i, int j, const FqElem& c) {
    if (i < 0 || j < 0) throw Error("trunc: negative exponent");
    TruncElem t(r);
    if (!c.is_zero() && i + j < r->N)
        t.terms_.push_back({uint32_t(i) << 16 | uint32_t(j), c.code()});
    return t;
}

int TruncElem::valuation() const {
    if (terms_.empty()) return kValInfinity;
    int v = kValInfinity;
    for (const Term& t : terms_) v = std::min(v, t.ze() + t.he());
    return v;
}

FqElem TruncElem::constant_term() const {
    if (!terms_.empty() && terms_[0].key == 0) return FqElem(ring_->field, terms_[0].code);
    return FqElem::zero(ring_->field);
}

FqElem TruncElem::coeff(int i, int j) const {
    uint32_t key = uint32_t(i) << 16 | uint32_t(j);
    auto it = std::lower_bound(terms_.begin(), terms_.end(), key,
                               [](const Term& t, uint32_t k) { return t.key < k; });
    if (it != terms_.end() && it->key == key) return FqElem(ring_->field, it->code);
    return FqElem::zero(ring_->field);
}

bool TruncElem::is_zeta_only() const {
    for (const Term& t : terms_)
        if (t.he() != 0) return false;
    return true;
}

bool TruncElem::is_h_only() const {
    for (const Term& t : terms_)
        if (t.ze() != 0) return false;
    return true;
}

void TruncElem::check_same(const TruncElem& o) const {
    if (!ring_ || !o.ring_ || !ring_->same(*o.ring_))
        throw RingMismatchError("trunc: mixing elements of different rings");
}

TruncElem TruncElem::operator+(const TruncElem& o) const {
    check_same(o);
    const FieldParams& f = *ring_->field;
    TruncElem r(ring_);
    r.terms_.reserve(terms_.size() + o.terms_.size());
    auto a = terms_.begin();
    auto b = o.terms_.begin();
    while (a != terms_.end() && b != o.terms_.end()) {
        if (a->key < b->key) {
            r.terms_.push_back(*a++);
        } else if (b->key < a->key) {
            r.terms_.push_back(*b++);
        } else {
            uint16_t c = f.add(a->code, b->code);
            if (c) r.terms_.push_back({a->key, c});
            ++a;
            ++b;
        }
    }
    r.terms_.insert(r.terms_.end(), a, terms_.end());
    r.terms_.insert(r.terms_.end(), b, o.terms_.end());
    return r;
}

TruncElem TruncElem::operator-() const {
    TruncElem r(ring_);
    r.terms_ = terms_;
    for (Term& t : r.terms_) t.code = ring_->field->neg(t.code);
    return r;
}

TruncElem TruncElem::operator-(const TruncElem& o) const { return *this + (-o); }

TruncElem TruncElem::operator*(const TruncElem& o) const {
    check_same(o);
    if (terms_.empty() || o.terms_.empty()) return TruncElem(ring_);
    if (is_one()) return o;
    if (o.is_one()) return *this;
    const FieldParams& f = *ring_->field;
    const int N = ring_->N;
    TruncBuilder acc(ring_);
    for (const Term& a : terms_) {
        int da = a.ze() + a.he();
        for (const Term& b : o.terms_) {
            if (da + b.ze() + b.he() >= N) continue;
            acc.add(a.ze() + b.ze(), a.he() + b.he(), f.mul(a.code, b.code));
        }
    }
    return acc.take();
}

TruncElem TruncElem::operator*(const FqElem& c) const {
    if (c.is_zero()) return TruncElem(ring_);
    const FieldParams& f = *ring_->field;
    TruncElem r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_) {
        uint16_t p = f.mul(t.code, c.code());
        if (p) r.terms_.push_back({t.key, p});
    }
    return r;
}

bool TruncElem::operator==(const TruncElem& o) const {
    check_same(o);
    return terms_ == o.terms_;
}

TruncElem TruncElem::shift(int di, int dj) const {
    if (di < 0 || dj < 0) throw Error("trunc: negative shift");
    const int N = ring_->N;
    TruncElem r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_)
        if (t.ze() + di + t.he() + dj < N)
            r.terms_.push_back({uint32_t(t.ze() + di) << 16 | uint32_t(t.he() + dj), t.code});
    return r;
}

TruncElem TruncElem::inv() const {
    if (!is_unit()) throw NotInvertibleError("trunc: inversion of non-unit (constant term 0)");
    FqElem c = constant_term();
    // a = c(1 - w) with v(w) >= 1; sum_{k<N} w^k via the product
    // (1+w)(1+w^2)(1+w^4)... which covers all k < 2^t >= N.
    FqElem cinv = c.inv();
    TruncElem w = (constant(ring_, c) - *this) * cinv;
    TruncElem s = one(ring_);
    TruncElem wp = w;
    for (int covered = 1; covered < ring_->N && !wp.is_zero(); covered *= 2) {
        s = s * (one(ring_) + wp);
        wp = wp * wp;
    }
    return s * cinv;
}

TruncElem TruncElem::sigma() const {
    const int q = ring_->q();
    const int N = ring_->N;
    TruncElem r(ring_);
    r.terms_.reserve(terms_.size());
    for (const Term& t : terms_)  // key order is preserved by scaling
        if ((t.ze() + t.he()) * q < N)
            r.terms_.push_back({uint32_t(t.ze() * q) << 16 | uint32_t(t.he() * q), t.code});
    return r;
}

TruncElem TruncElem::project(const TruncRingPtr& target) const {
    if (target->N > ring_->N) throw Error("trunc: project to larger ring");
    if (!target->field || target->field->q() != ring_->field->q())
        throw RingMismatchError("trunc: project across fields");
    TruncElem r(target);
    for (const Term& t : terms_)
        if (t.ze() + t.he() < target->N) r.terms_.push_back(t);
    return r;
}

TruncElem TruncElem::pow(long long k) const {
    if (k < 0) return inv().pow(-k);
    TruncElem r = one(ring_);
    TruncElem b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        if (k >>= 1) b = b * b;
    }
    return r;
}

std::string TruncElem::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
        if (!first) os << " + ";
        first = false;
        FqElem c(ring_->field, t.code);
        std::vector<std::string> parts;
        if (!c.is_one() || t.key == 0) parts.push_back(c.str());
        if (t.ze()) parts.push_back("zeta" + (t.ze() > 1 ? "^" + std::to_string(t.ze()) : ""));
        if (t.he()) parts.push_back("h" + (t.he() > 1 ? "^" + std::to_string(t.he()) : ""));
        for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    }
    return os.str();
}

TruncElem random_trunc(const TruncRingPtr& r, std::mt19937_64& rng, int count) {
    TruncBuilder acc(r);
    for (int k = 0; k < count; ++k) {
        int d = int(uniform_below(rng, uint64_t(r->N)));
        int i = int(uniform_below(rng, uint64_t(d + 1)));
        acc.add(i, d - i, uint16_t(uniform_below(rng, uint64_t(r->field->q()))));
    }
    return acc.take();
}

TruncElem random_trunc_unit(const TruncRingPtr& r, std::mt19937_64& rng, int count) {
    TruncElem t = random_trunc(r, rng, count);
    TruncElem fix = TruncElem::constant(r, random_fq_nonzero(r->field, rng) - t.constant_term());
    return t + fix;
}

TruncElem random_trunc_nil(const TruncRingPtr& r, std::mt19937_64& rng, int count) {
    TruncElem t = random_trunc(r, rng, count);
    return t - TruncElem::constant(r, t.constant_term());
}

}  // namespace shtuka
