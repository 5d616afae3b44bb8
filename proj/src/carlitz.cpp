#include "shtuka/carlitz.hpp"

#include <sstream>

namespace shtuka {

FqPoly FqPoly::monomial(const FieldPtr& f, int deg, const FqElem& c) {
    if (deg < 0) throw Error("poly: negative degree");
    FqPoly p(f);
    if (!c.is_zero()) {
        p.c_.assign(size_t(deg) + 1, 0);
        p.c_[size_t(deg)] = c.code();
    }
    return p;
}

FqElem FqPoly::coeff(int k) const {
    if (k < 0 || k >= int(c_.size())) return FqElem::zero(f_);
    return FqElem(f_, c_[size_t(k)]);
}

FqElem FqPoly::lead() const {
    if (c_.empty()) return FqElem::zero(f_);
    return FqElem(f_, c_.back());
}

int FqPoly::valuation() const {
    for (size_t k = 0; k < c_.size(); ++k)
        if (c_[k]) return int(k);
    return 0;
}

FqPoly FqPoly::operator+(const FqPoly& o) const {
    FqPoly r(f_);
    r.c_.assign(std::max(c_.size(), o.c_.size()), 0);
    for (size_t k = 0; k < r.c_.size(); ++k) {
        uint16_t a = k < c_.size() ? c_[k] : 0;
        uint16_t b = k < o.c_.size() ? o.c_[k] : 0;
        r.c_[k] = f_->add(a, b);
    }
    r.trim();
    return r;
}

FqPoly FqPoly::operator-() const {
    FqPoly r = *this;
    for (auto& x : r.c_) x = f_->neg(x);
    return r;
}

FqPoly FqPoly::operator-(const FqPoly& o) const { return *this + (-o); }

FqPoly FqPoly::operator*(const FqPoly& o) const {
    if (c_.empty() || o.c_.empty()) return FqPoly(f_);
    FqPoly r(f_);
    r.c_.assign(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i) {
        if (!c_[i]) continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            if (!o.c_[j]) continue;
            r.c_[i + j] = f_->add(r.c_[i + j], f_->mul(c_[i], o.c_[j]));
        }
    }
    r.trim();
    return r;
}

FqPoly FqPoly::operator*(const FqElem& s) const {
    if (s.is_zero()) return FqPoly(f_);
    FqPoly r = *this;
    for (auto& x : r.c_) x = f_->mul(x, s.code());
    r.trim();
    return r;
}

std::pair<FqPoly, FqPoly> FqPoly::divrem(const FqPoly& d) const {
    if (d.is_zero()) throw NotInvertibleError("poly: division by zero");
    FqPoly rem = *this;
    FqPoly quo(f_);
    if (degree() >= d.degree()) quo.c_.assign(size_t(degree() - d.degree()) + 1, 0);
    uint16_t dlinv = f_->inv(d.c_.back());
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
        int shift = rem.degree() - d.degree();
        uint16_t factor = f_->mul(rem.c_.back(), dlinv);
        quo.c_[size_t(shift)] = f_->add(quo.c_[size_t(shift)], factor);
        for (size_t k = 0; k < d.c_.size(); ++k)
            rem.c_[size_t(shift) + k] =
                f_->sub(rem.c_[size_t(shift) + k], f_->mul(factor, d.c_[k]));
        rem.trim();
    }
    quo.trim();
    return {quo, rem};
}

FqPoly FqPoly::monic() const {
    if (is_zero()) return *this;
    return *this * FqElem(f_, f_->inv(c_.back()));
}

FqPoly FqPoly::gcd(FqPoly a, FqPoly b) {
    while (!b.is_zero()) {
        FqPoly r = a.divrem(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

FqPoly FqPoly::subst_pow(long long k) const {
    if (k < 1) throw Error("poly: substitution power must be >= 1");
    if (c_.empty()) return FqPoly(f_);
    FqPoly r(f_);
    r.c_.assign(size_t((long long)(c_.size() - 1) * k) + 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        if (c_[i]) r.c_[size_t((long long)i * k)] = c_[i];
    return r;
}

std::string FqPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (!c_[k]) continue;
        if (!first) os << " + ";
        first = false;
        FqElem c(f_, c_[k]);
        if (k == 0 || !c.is_one()) os << c.str();
        if (k > 0) os << (c.is_one() ? "" : "*") << "zeta" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return os.str();
}

RatZeta::RatZeta(FqPoly num, FqPoly den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw NotInvertibleError("rat: zero denominator");
    if (num_.is_zero()) {
        den_ = FqPoly::one(num_.field());
        return;
    }
    FqPoly g = FqPoly::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divrem(g).first;
        den_ = den_.divrem(g).first;
    }
    FqElem lead = den_.lead();
    if (!lead.is_one()) {
        FqElem li = lead.inv();
        num_ = num_ * li;
        den_ = den_ * li;
    }
}

RatZeta RatZeta::operator+(const RatZeta& o) const {
    return RatZeta(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatZeta RatZeta::operator-() const { return RatZeta(-num_, den_); }
RatZeta RatZeta::operator-(const RatZeta& o) const { return *this + (-o); }

RatZeta RatZeta::operator*(const RatZeta& o) const {
    return RatZeta(num_ * o.num_, den_ * o.den_);
}

RatZeta RatZeta::inv() const {
    if (is_zero()) throw NotInvertibleError("rat: inversion of zero");
    return RatZeta(den_, num_);
}

RatZeta RatZeta::frobenius(int i) const {
    if (i == 0) return *this;
    long long k = 1;
    for (int t = 0; t < i; ++t) k *= num_.field()->q();
    return RatZeta(num_.subst_pow(k), den_.subst_pow(k));
}

std::string RatZeta::str() const {
    if (den_.degree() == 0) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

RatZeta TwistedPoly::coeff(int k) const {
    if (k < 0 || k >= int(c_.size())) return RatZeta::zero(f_);
    return c_[size_t(k)];
}

TwistedPoly TwistedPoly::operator+(const TwistedPoly& o) const {
    TwistedPoly r(f_);
    r.c_.assign(std::max(c_.size(), o.c_.size()), RatZeta::zero(f_));
    for (size_t k = 0; k < r.c_.size(); ++k) {
        if (k < c_.size()) r.c_[k] = r.c_[k] + c_[k];
        if (k < o.c_.size()) r.c_[k] = r.c_[k] + o.c_[k];
    }
    r.trim();
    return r;
}

TwistedPoly TwistedPoly::operator-(const TwistedPoly& o) const {
    TwistedPoly neg = o;
    for (auto& z : neg.c_) z = -z;
    return *this + neg;
}

TwistedPoly TwistedPoly::lmul_const(const RatZeta& z) const {
    TwistedPoly r = *this;
    for (auto& c : r.c_) c = z * c;
    r.trim();
    return r;
}

TwistedPoly TwistedPoly::rmul_const(const RatZeta& z) const {
    // (c tau^k) z = c z^{q^k} tau^k
    TwistedPoly r = *this;
    for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = r.c_[k] * z.frobenius(int(k));
    r.trim();
    return r;
}

TwistedPoly TwistedPoly::truncate(int T) const {
    TwistedPoly r = *this;
    if (int(r.c_.size()) > T + 1) r.c_.resize(size_t(T) + 1);
    r.trim();
    return r;
}

std::string TwistedPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[k].str() << ")";
        if (k > 0) os << "*tau" << (k > 1 ? "^" + std::to_string(k) : "");
    }
    return os.str();
}

TwistedPoly twisted_compose(const TwistedPoly& f, const TwistedPoly& g, int T) {
    const FieldPtr& fld = f.field();
    TwistedPoly r(fld);
    r.c_.assign(size_t(T) + 1, RatZeta::zero(fld));
    for (size_t i = 0; i < f.c_.size() && int(i) <= T; ++i) {
        if (f.c_[i].is_zero()) continue;
        for (size_t j = 0; j < g.c_.size() && int(i + j) <= T; ++j) {
            if (g.c_[j].is_zero()) continue;
            // (a tau^i)(b tau^j) = a b^{q^i} tau^{i+j}
            r.c_[i + j] = r.c_[i + j] + f.c_[i] * g.c_[j].frobenius(int(i));
        }
    }
    r.trim();
    return r;
}

TwistedPoly phi(const FieldPtr& f, const std::vector<FqElem>& a) {
    // Horner in t with t -> zeta + tau
    TwistedPoly acc = TwistedPoly::zero(f);
    RatZeta zeta = RatZeta::from_poly(FqPoly::monomial(f, 1, FqElem::one(f)));
    for (size_t k = a.size(); k-- > 0;) {
        // acc = acc * (zeta + tau) + a_k
        TwistedPoly shifted(f);
        shifted.c_.assign(acc.c_.size() + 1, RatZeta::zero(f));
        for (size_t i = 0; i < acc.c_.size(); ++i) {
            shifted.c_[i] = shifted.c_[i] + acc.c_[i] * zeta.frobenius(int(i));
            shifted.c_[i + 1] = shifted.c_[i + 1] + acc.c_[i];
        }
        shifted.trim();
        acc = shifted;
        if (!a[k].is_zero()) {
            TwistedPoly cst(f, {RatZeta::from_poly(FqPoly::monomial(f, 0, a[k]))});
            acc = acc + cst;
        }
    }
    return acc;
}

std::vector<RatZeta> exp_coeffs(const FieldPtr& f, int T) {
    std::vector<RatZeta> e;
    e.push_back(RatZeta::one(f));
    FqPoly zeta = FqPoly::monomial(f, 1, FqElem::one(f));
    long long qn = 1;
    for (int n = 1; n <= T; ++n) {
        qn *= f->q();
        FqPoly zqn = zeta.subst_pow(qn);  // zeta^{q^n}
        FqPoly den = FqPoly::one(f);
        long long qi = 1;
        for (int i = 0; i < n; ++i) {
            den = den * (zqn - zeta.subst_pow(qi));
            qi *= f->q();
        }
        e.push_back(RatZeta(FqPoly::one(f), den));
    }
    return e;
}

std::vector<RatZeta> log_coeffs(const FieldPtr& f, int T) {
    std::vector<RatZeta> c;
    c.push_back(RatZeta::one(f));
    FqPoly zeta = FqPoly::monomial(f, 1, FqElem::one(f));
    FqPoly den = FqPoly::one(f);
    long long qi = 1;
    for (int n = 1; n <= T; ++n) {
        qi *= f->q();
        den = den * (zeta - zeta.subst_pow(qi));
        c.push_back(RatZeta(FqPoly::one(f), den));
    }
    return c;
}

/// ------------------------------------------------------------------------

PeriodParamsPtr make_period_params(const FieldPtr& f, int D, int prec) {
    return std::make_shared<const PeriodParams>(f, D, prec);
}

PeriodValue PeriodValue::monomial(const PeriodParamsPtr& p, int h_deg, int zeta_exp,
                                  const FqElem& c, int prec) {
    PeriodValue v(p, prec);
    v.put(h_deg, zeta_exp, c);
    return v;
}

bool PeriodValue::is_unit() const {
    for (const auto& [k, c] : terms_)
        if (k.first == 0) return true;
    return false;
}

int PeriodValue::zeta_val() const {
    int v = 0;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (first || k.second < v) v = k.second;
        first = false;
    }
    return v;
}

int PeriodValue::h_val() const {
    if (terms_.empty()) return par_ ? par_->D : 1;
    return terms_.begin()->first.first;
}

PeriodValue PeriodValue::h_part(int d) const {
    PeriodValue r(par_, prec_);
    auto from = terms_.lower_bound({d, std::numeric_limits<int>::min()});
    for (auto it = from; it != terms_.end() && it->first.first == d; ++it)
        r.terms_.emplace(it->first, it->second);
    return r;
}

FqElem PeriodValue::coeff(int h_deg, int zeta_exp) const {
    auto it = terms_.find({h_deg, zeta_exp});
    return it == terms_.end() ? FqElem::zero(par_->field) : it->second;
}

void PeriodValue::put(int h_deg, int zeta_exp, const FqElem& c) {
    if (c.is_zero() || h_deg >= par_->D || h_deg < 0 || zeta_exp >= prec_) return;
    auto [it, fresh] = terms_.try_emplace({h_deg, zeta_exp}, c);
    if (!fresh) {
        it->second = it->second + c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

void PeriodValue::check_same(const PeriodValue& o) const {
    if (!par_ || !o.par_ || !par_->same(*o.par_))
        throw RingMismatchError("period: mixing coefficient rings");
}

PeriodValue PeriodValue::operator+(const PeriodValue& o) const {
    check_same(o);
    PeriodValue r(par_, std::min(prec_, o.prec_));
    for (const auto& [k, c] : terms_)
        if (k.second < r.prec_) r.terms_.emplace(k, c);
    for (const auto& [k, c] : o.terms_) {
        if (k.second >= r.prec_) continue;
        auto [it, fresh] = r.terms_.try_emplace(k, c);
        if (!fresh) {
            it->second = it->second + c;
            if (it->second.is_zero()) r.terms_.erase(it);
        }
    }
    return r;
}

PeriodValue PeriodValue::operator-() const {
    PeriodValue r(par_, prec_);
    for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
    return r;
}

PeriodValue PeriodValue::operator-(const PeriodValue& o) const { return *this + (-o); }

PeriodValue PeriodValue::operator*(const PeriodValue& o) const {
    check_same(o);
    int prec = kPrecExact;
    if (!is_exact() || !o.is_exact())
        prec = clamp_prec(
            std::min((long long)prec_ + o.zeta_val(), (long long)o.prec_ + zeta_val()));
    PeriodValue r(par_, prec);
    const int D = par_->D;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            if (ka.first + kb.first >= D) continue;
            if (ka.second + kb.second >= prec) continue;
            FqElem p = ca * cb;
            if (p.is_zero()) continue;
            Key k{ka.first + kb.first, ka.second + kb.second};
            auto [it, fresh] = r.terms_.try_emplace(k, p);
            if (!fresh) {
                it->second = it->second + p;
                if (it->second.is_zero()) r.terms_.erase(it);
            }
        }
    }
    return r;
}

PeriodValue PeriodValue::operator*(const FqElem& c) const {
    PeriodValue r(par_, prec_);
    if (c.is_zero()) return r;
    for (const auto& [k, a] : terms_) {
        FqElem p = a * c;
        if (!p.is_zero()) r.terms_.emplace(k, p);
    }
    return r;
}

bool PeriodValue::operator==(const PeriodValue& o) const {
    check_same(o);
    return prec_ == o.prec_ && terms_ == o.terms_;
}

PeriodValue PeriodValue::shift(int dh, int dz) const {
    PeriodValue r(par_, is_exact() ? kPrecExact : clamp_prec((long long)prec_ + dz));
    for (const auto& [k, c] : terms_) r.put(k.first + dh, k.second + dz, c);
    return r;
}

PeriodValue PeriodValue::truncate(int prec) const {
    PeriodValue r(par_, std::min(prec_, prec));
    for (const auto& [k, c] : terms_)
        if (k.second < r.prec_) r.terms_.emplace(k, c);
    return r;
}

PeriodValue PeriodValue::inv(int window) const {
    if (!is_unit()) throw NotInvertibleError("period: inversion of a non-unit (h | value)");
    // invert the h^0 Laurent part, then a finite geometric series over h
    PeriodValue a0 = h_part(0);
    int m = a0.zeta_val();
    // Laurent inversion over F_q by the positive recurrence
    FqElem lead = a0.coeff(0, m);
    FqElem linv = lead.inv();
    int width = std::max(1, window + m);
    std::map<int, FqElem> ainv;  // coefficients of a0^{-1} shifted: exponent offsets
    ainv[0] = linv;
    bool tail = a0.terms().size() > 1;
    if (tail) {
        for (int e = 1; e < width; ++e) {
            FqElem s = FqElem::zero(par_->field);
            for (const auto& [k, c] : a0.terms()) {
                int off = k.second - m;
                if (off < 1 || off > e) continue;
                auto it = ainv.find(e - off);
                if (it != ainv.end()) s = s + c * it->second;
            }
            if (!s.is_zero()) ainv[e] = -(linv * s);
        }
    }
    PeriodValue a0i(par_, tail ? clamp_prec((long long)width - m) : kPrecExact);
    for (const auto& [e, c] : ainv) a0i.put(0, e - m, c);
    if (!is_exact()) a0i = a0i.truncate(clamp_prec((long long)prec_ - 2 * m));

    PeriodValue rest = *this - a0;
    if (rest.is_zero()) return a0i;
    PeriodValue w = -(a0i * rest);  // h-valuation >= 1
    PeriodValue s = PeriodValue::one(par_);
    s = s.truncate(w.prec());
    PeriodValue wp = w;
    for (long long covered = 1; covered < par_->D && !wp.is_zero(); covered *= 2) {
        s = s * (PeriodValue::one(par_) + wp);
        wp = wp * wp;
    }
    return a0i * s;
}

PeriodValue PeriodValue::pow(long long k, int window) const {
    if (k < 0) return inv(window).pow(-k, window);
    PeriodValue r = PeriodValue::one(par_);
    PeriodValue b = *this;
    while (k > 0) {
        if (k & 1) r = r * b;
        if (k >>= 1) b = b * b;
    }
    return r;
}

PeriodValue PeriodValue::sigma() const {
    const int qv = par_->field->q();
    PeriodValue r(par_, is_exact() ? kPrecExact
                                   : clamp_prec((long long)prec_ * qv));
    for (const auto& [k, c] : terms_) r.put(k.first * qv, k.second * qv, c);
    return r;
}

bool PeriodValue::agrees_with(const PeriodValue& o) const {
    check_same(o);
    int hi = std::min(prec_, o.prec_);
    for (const auto& [k, c] : terms_) {
        if (k.second >= hi) continue;
        if (!(c == o.coeff(k.first, k.second))) return false;
    }
    for (const auto& [k, c] : o.terms_) {
        if (k.second >= hi) continue;
        if (coeff(k.first, k.second).is_zero() && !c.is_zero()) return false;
    }
    return true;
}

std::string PeriodValue::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        std::vector<std::string> parts;
        if (!c.is_one() || (k.first == 0 && k.second == 0)) parts.push_back(c.str());
        if (k.first) parts.push_back("h" + (k.first > 1 ? "^" + std::to_string(k.first) : ""));
        if (k.second)
            parts.push_back("zeta" + (k.second != 1 ? "^" + std::to_string(k.second) : ""));
        for (size_t i = 0; i < parts.size(); ++i) os << (i ? "*" : "") << parts[i];
    }
    if (!is_exact()) os << " + O(zeta^" + std::to_string(prec_) + ")";
    return os.str();
}

PeriodValue rat_to_laurent(const PeriodParamsPtr& par, const RatZeta& r, int P) {
    PeriodValue num(par);
    for (size_t k = 0; k < r.num().coeffs().size(); ++k)
        if (r.num().coeffs()[k])
            num = num + PeriodValue::monomial(par, 0, int(k),
                                              FqElem(par->field, r.num().coeffs()[k]));
    PeriodValue den(par);
    for (size_t k = 0; k < r.den().coeffs().size(); ++k)
        if (r.den().coeffs()[k])
            den = den + PeriodValue::monomial(par, 0, int(k),
                                              FqElem(par->field, r.den().coeffs()[k]));
    if (num.is_zero()) return PeriodValue::zero(par);
    return (num * den.inv(std::max(1, P - num.zeta_val()))).truncate(P);
}

PeriodValue log_eval(const PeriodParamsPtr& par, int P) {
    const FieldPtr& f = par->field;
    PeriodValue sum = PeriodValue::zero(par);
    PeriodValue den = PeriodValue::one(par);  // prod (zeta - zeta^{q^i})
    long long qn = 1;
    for (int n = 0; qn < par->D; ++n, qn *= f->q()) {
        if (n > 0) {
            long long qi = qn;  // q^n
            PeriodValue factor = PeriodValue::zeta_pow(par, 1) -
                                 PeriodValue::zeta_pow(par, int(qi));
            den = den * factor;
        }
        // c_n h^{q^n}, c_n expanded to precision P
        PeriodValue cn = n == 0 ? PeriodValue::one(par) : den.inv(P + 2 * n + 2).truncate(P);
        sum = sum + cn.shift(int(qn), 0);
    }
    return sum;
}

PeriodValue l_zero_laurent(const PeriodParamsPtr& par, int P) {
    PeriodValue prod = PeriodValue::one(par);
    long long qi = par->field->q();
    while (qi - 1 < P) {
        prod = prod * (PeriodValue::one(par) - PeriodValue::zeta_pow(par, int(qi - 1)));
        qi *= par->field->q();
    }
    return prod.truncate(P);
}

}  // namespace shtuka
