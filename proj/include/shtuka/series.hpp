#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>
#include <string>

#include "shtuka/errors.hpp"

namespace shtuka {

/// Which formal variable a series is expanded in.
enum class Center { Z, ZMinusZeta };

inline const char* center_name(Center c) { return c == Center::Z ? "z" : "z-zeta"; }

/// Precision sentinel: a series with prec >= kPrecExact is exact, i.e. the
/// stored support is the whole series (a Laurent polynomial).  Everything the
/// base formulas build is exact; finite precision enters only when inverting
/// a series with a non-nilpotent tail, where a window must be chosen.
inline constexpr int kPrecExact = (1 << 30) - 1;

inline int clamp_prec(long long p) {
    if (p >= kPrecExact) return kPrecExact;
    if (p < -kPrecExact) return -kPrecExact;
    return int(p);
}

/// Coefficient-ring hooks, specialised per ring.  `nil_index` bounds the
/// nilpotency of the maximal ideal (m^nil_index = 0) and `coeff_val` is the
/// m-adic valuation of a coefficient; both drive the finite geometric series
/// used by inversion.
template <typename R>
struct SeriesRing;

/// Truncated Laurent series over a local coefficient ring R.
///
/// A value represents  f = sum_{lo <= e < prec} c_e X^e + O(X^prec):
/// stored coefficients are exact, coefficients at exponents >= prec are
/// unknown, and the true series has no support below `lo`.  Arithmetic
/// propagates prec exactly (mul: prec = min(prec_a + lo_b, prec_b + lo_a));
/// exact inputs give exact outputs.
template <typename R>
class LaurentSeries {
public:
    using Ring = typename SeriesRing<R>::Params;
    using CoeffMap = std::map<int, R>;

    LaurentSeries() = default;
    LaurentSeries(Ring ring, Center center, int prec)
        : ring_(std::move(ring)), center_(center), lo_(prec), prec_(prec) {}

    static LaurentSeries zero(const Ring& r, Center c, int prec = kPrecExact) {
        return LaurentSeries(r, c, prec);
    }
    static LaurentSeries constant(const Ring& r, Center c, const R& v, int prec = kPrecExact) {
        LaurentSeries s(r, c, prec);
        s.set(0, v);
        return s;
    }
    static LaurentSeries one(const Ring& r, Center c, int prec = kPrecExact) {
        return constant(r, c, SeriesRing<R>::one(r), prec);
    }
    /// c * X^e
    static LaurentSeries monomial(const Ring& r, Center c, int e, const R& v,
                                  int prec = kPrecExact) {
        LaurentSeries s(r, c, prec);
        s.set(e, v);
        return s;
    }

    const Ring& ring() const { return ring_; }
    Center center() const { return center_; }
    int prec() const { return prec_; }
    int lo() const { return lo_; }
    bool is_exact() const { return prec_ >= kPrecExact; }
    const CoeffMap& coeffs() const { return coeffs_; }

    bool known_zero() const { return coeffs_.empty(); }

    /// Coefficient at exponent e; throws PrecisionError beyond the window.
    R coefficient(int e) const {
        if (e >= prec_)
            throw PrecisionError("series: coefficient at exponent " + std::to_string(e) +
                                 " beyond tracked precision " + std::to_string(prec_));
        auto it = coeffs_.find(e);
        return it == coeffs_.end() ? SeriesRing<R>::zero(ring_) : it->second;
    }

    /// Least exponent with nonzero coefficient; nullopt when no coefficient
    /// is stored (then the order is >= prec, or the series is exactly 0).
    std::optional<int> order() const {
        if (coeffs_.empty()) return std::nullopt;
        return coeffs_.begin()->first;
    }

    /// No stored coefficient at a negative exponent.
    bool integral() const { return coeffs_.empty() || coeffs_.begin()->first >= 0; }

    void set(int e, const R& v) {
        if (e >= prec_) return;
        if (SeriesRing<R>::is_zero(v))
            coeffs_.erase(e);
        else
            coeffs_[e] = v;
        normalize();
    }

    void add_to(int e, const R& v) {
        if (e >= prec_ || SeriesRing<R>::is_zero(v)) return;
        auto [it, fresh] = coeffs_.try_emplace(e, v);
        if (!fresh) {
            it->second = it->second + v;
            if (SeriesRing<R>::is_zero(it->second)) coeffs_.erase(it);
        }
        normalize();
    }

    LaurentSeries operator+(const LaurentSeries& o) const {
        check_compat(o);
        LaurentSeries r(ring_, center_, std::min(prec_, o.prec_));
        for (const auto& [e, c] : coeffs_)
            if (e < r.prec_) r.coeffs_[e] = c;
        for (const auto& [e, c] : o.coeffs_) {
            if (e >= r.prec_) continue;
            auto [it, fresh] = r.coeffs_.try_emplace(e, c);
            if (!fresh) {
                it->second = it->second + c;
                if (SeriesRing<R>::is_zero(it->second)) r.coeffs_.erase(it);
            }
        }
        r.normalize();
        return r;
    }

    LaurentSeries operator-() const {
        LaurentSeries r(ring_, center_, prec_);
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e, -c);
        r.normalize();
        return r;
    }

    LaurentSeries operator-(const LaurentSeries& o) const { return *this + (-o); }

    LaurentSeries operator*(const LaurentSeries& o) const {
        check_compat(o);
        int prec = kPrecExact;
        if (!is_exact() || !o.is_exact())
            prec = clamp_prec(std::min((long long)prec_ + o.lo_, (long long)o.prec_ + lo_));
        LaurentSeries r(ring_, center_, prec);
        for (const auto& [ea, ca] : coeffs_) {
            for (const auto& [eb, cb] : o.coeffs_) {
                if (ea + eb >= prec) continue;
                R p = ca * cb;
                if (SeriesRing<R>::is_zero(p)) continue;
                auto [it, fresh] = r.coeffs_.try_emplace(ea + eb, p);
                if (!fresh) {
                    it->second = it->second + p;
                    if (SeriesRing<R>::is_zero(it->second)) r.coeffs_.erase(it);
                }
            }
        }
        r.normalize();
        return r;
    }

    LaurentSeries operator*(const R& c) const {
        LaurentSeries r(ring_, center_, prec_);
        for (const auto& [e, a] : coeffs_) {
            R p = a * c;
            if (!SeriesRing<R>::is_zero(p)) r.coeffs_.emplace(e, p);
        }
        r.normalize();
        return r;
    }

    /// Multiply by X^k.
    LaurentSeries shift(int k) const {
        int np = is_exact() ? kPrecExact : clamp_prec((long long)prec_ + k);
        LaurentSeries r(ring_, center_, np);
        for (const auto& [e, c] : coeffs_) r.coeffs_.emplace(e + k, c);
        r.normalize();
        return r;
    }

    /// Restrict the window to precision at most p.
    LaurentSeries truncate(int p) const {
        LaurentSeries r(ring_, center_, std::min(prec_, p));
        for (const auto& [e, c] : coeffs_)
            if (e < r.prec_) r.coeffs_.emplace(e, c);
        r.normalize();
        return r;
    }

    /// Inverse, with coefficients guaranteed on exponents < `window` (or to
    /// the propagated precision if f is inexact, whichever is smaller; the
    /// result is exact whenever the inverse is itself a Laurent polynomial).
    ///
    /// Method: let u X^m be the lowest term whose coefficient is a unit of R
    /// (all lower coefficients then lie in the maximal ideal m_R).  Write
    /// f = u X^m (F_int + F_prin) with F_int the part at exponents >= m and
    /// F_prin the rest.  A := F_int^{-1} is a power-series inverse computed
    /// by the usual recurrence; v := A * F_prin has every coefficient in
    /// m_R, so (1 + v)^{-1} = sum_{k < nil} (-v)^k is a finite sum, and
    /// f^{-1} = u^{-1} X^{-m} A (1+v)^{-1}.  Intermediate terms are dropped
    /// above depth-dependent caps: a term at exponent E >= cap with
    /// coefficient valuation d can only reach the window after descending
    /// E - window, which costs at least (E - window)/maxdrop further depth,
    /// where maxdrop is the best exponent-drop-per-depth ratio among the
    /// negative terms of v; the drop rule keeps exactly the terms for which
    /// d + ceil((E - window') / maxdrop) < nil fails to prove vanishing.
    LaurentSeries inv(int window = 64) const {
        const long long nil = SeriesRing<R>::nil_index(ring_);
        int m = 0;
        bool found = false;
        for (const auto& [e, c] : coeffs_) {
            if (SeriesRing<R>::is_unit(c)) {
                m = e;
                found = true;
                break;
            }
        }
        if (!found) {
            if (is_exact())
                throw NotInvertibleError(
                    "series: not invertible (zero modulo the nilradical)");
            throw PrecisionError("series: no unit pivot within the tracked window");
        }
        R u = coefficient(m);
        // normalise pivot to 1 * X^0
        LaurentSeries f0 = shift(-m) * SeriesRing<R>::inv(u);
        // the unknown tail of f0 sits at exponents >= f0.prec >= 0, so the
        // principal part is a fully known finite object
        LaurentSeries fint(ring_, center_, f0.prec_);
        LaurentSeries fprin(ring_, center_, f0.prec_ >= 0 ? kPrecExact : f0.prec_);
        for (const auto& [e, c] : f0.coeffs_)
            (e >= 0 ? fint : fprin).coeffs_.emplace(e, c);
        fint.normalize();
        fprin.normalize();

        long long winp = window + m;  // window for f0^{-1}
        if (!is_exact()) winp = std::min(winp, (long long)f0.prec_);
        bool exact_result = is_exact();

        // best exponent descent per unit of coefficient depth among v-terms;
        // v = A*fprin has the same negative profile as fprin
        long long maxdrop = 0;
        for (const auto& [e, c] : fprin.coeffs_) {
            long long d = SeriesRing<R>::coeff_val(c);
            if (d < 1) d = 1;
            maxdrop = std::max(maxdrop, (-(long long)e + d - 1) / d);
        }
        auto cap_for_depth = [&](long long d) {
            return clamp_prec(winp + (nil - 1 - d) * maxdrop + 1);
        };

        // A = fint^{-1} by the power-series recurrence, width cap_for_depth(0)
        LaurentSeries a(ring_, center_, fint.is_exact() ? kPrecExact : fint.prec_);
        {
            int width = cap_for_depth(0);
            if (!fint.is_exact()) width = std::min(width, fint.prec_);
            R lead = fint.coefficient(0);  // equals 1 by construction
            R leadinv = SeriesRing<R>::inv(lead);
            std::map<int, R> acoef;
            acoef.emplace(0, leadinv);
            bool tail = fint.coeffs_.size() > 1;
            if (tail) {
                for (int e = 1; e < width; ++e) {
                    R s = SeriesRing<R>::zero(ring_);
                    for (const auto& [j, c] : fint.coeffs_) {
                        if (j < 1 || j > e) continue;
                        auto it = acoef.find(e - j);
                        if (it != acoef.end()) s = s + c * it->second;
                    }
                    if (!SeriesRing<R>::is_zero(s)) acoef.emplace(e, -(leadinv * s));
                }
                exact_result = false;  // infinite tail truncated at `width`
            }
            for (auto& [e, c] : acoef) a.coeffs_.emplace(e, std::move(c));
            if (tail && a.prec_ > width) a.prec_ = width;
            a.normalize();
        }

        LaurentSeries result = a;
        if (!fprin.known_zero()) {
            LaurentSeries v = -(a * fprin);
            // S = sum_{k < 2^t >= nil} v^k  via  prod_j (1 + v^{2^j})
            LaurentSeries s = one(ring_, center_, v.prec_);
            LaurentSeries vp = v;
            long long depth = 1;
            bool dropped = drop_above(v, cap_for_depth(1));
            dropped = drop_above(vp, cap_for_depth(1)) || dropped;
            for (long long covered = 1; covered < nil && !vp.known_zero(); covered *= 2) {
                s = s * (one(ring_, center_) + vp);
                dropped = drop_above(s, cap_for_depth(1)) || dropped;
                depth *= 2;
                if (covered * 2 < nil) {
                    vp = vp * vp;
                    dropped = drop_above(vp, cap_for_depth(std::min(depth, nil))) || dropped;
                }
            }
            result = a * s;
            if (dropped) exact_result = false;
        }
        result = result.shift(-m) * SeriesRing<R>::inv(u);
        if (!exact_result) {
            // perturbing f by O(X^prec) moves f^{-1} by O(X^{prec + 2 lo(f^{-1})})
            long long honest = (long long)prec_ + 2 * std::min((long long)result.lo(), 0LL);
            result = result.truncate(clamp_prec(std::min((long long)window, honest)));
        }
        return result;
    }

    LaurentSeries pow(long long k, int window = 64) const {
        if (k < 0) return inv(window).pow(-k, window);
        LaurentSeries r = one(ring_, center_);
        LaurentSeries b = *this;
        while (k > 0) {
            if (k & 1) r = r * b;
            if (k >>= 1) b = b * b;
        }
        return r;
    }

    /// Equality of stored data on the common window [*, min prec).
    bool agrees_with(const LaurentSeries& o) const {
        check_compat(o);
        int hi = std::min(prec_, o.prec_);
        for (const auto& [e, c] : coeffs_) {
            if (e >= hi) continue;
            auto jt = o.coeffs_.find(e);
            if (jt == o.coeffs_.end() ? !SeriesRing<R>::is_zero(c) : !(c == jt->second))
                return false;
        }
        for (const auto& [e, c] : o.coeffs_) {
            if (e >= hi) continue;
            if (coeffs_.find(e) == coeffs_.end() && !SeriesRing<R>::is_zero(c)) return false;
        }
        return true;
    }

    std::string str(const std::string& var) const {
        std::ostringstream os;
        bool first = true;
        for (const auto& [e, c] : coeffs_) {
            if (!first) os << " + ";
            first = false;
            os << "(" << SeriesRing<R>::str(c) << ")";
            if (e != 0) os << "*" << var << "^" << e;
        }
        if (first) os << "0";
        if (!is_exact()) os << " + O(" << var << "^" << prec_ << ")";
        return os.str();
    }

private:
    void check_compat(const LaurentSeries& o) const {
        if (center_ != o.center_) throw RingMismatchError("series: mixing centers");
        if (!SeriesRing<R>::same_ring(ring_, o.ring_))
            throw RingMismatchError("series: mixing coefficient rings");
    }

    // Drop stored terms at exponents >= cap without lowering prec.  Only
    // sound inside inv(), where the depth-budget argument shows the dropped
    // terms cannot contribute below the window.
    static bool drop_above(LaurentSeries& f, int cap) {
        bool dropped = false;
        auto it = f.coeffs_.lower_bound(cap);
        if (it != f.coeffs_.end()) {
            f.coeffs_.erase(it, f.coeffs_.end());
            dropped = true;
        }
        f.normalize();
        return dropped;
    }

    // lo stays a valid support bound; coefficients below prec are exact, so
    // the least stored exponent (or prec itself) is the honest bound.
    void normalize() {
        lo_ = coeffs_.empty() ? prec_ : std::min(coeffs_.begin()->first, prec_);
    }

    Ring ring_{};
    Center center_ = Center::Z;
    int lo_ = 0;
    int prec_ = 0;
    CoeffMap coeffs_;
};

}  // namespace shtuka
