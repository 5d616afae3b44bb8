#pragma once

#include <functional>
#include <vector>

#include "shtuka/z_series.hpp"

namespace shtuka {

/// r x r matrix of Laurent series sharing ring and center.  Generic in r
/// (realistically r <= 3; all shipped scenarios use r = 2).
template <typename R>
class MatrixSeries {
public:
    using Series = LaurentSeries<R>;
    using Ring = typename Series::Ring;

    MatrixSeries() = default;
    MatrixSeries(int r, Ring ring, Center center)
        : r_(r), ring_(std::move(ring)), center_(center),
          entries_(size_t(r) * r, Series::zero(ring_, center_)) {
        if (r < 1 || r > 3) throw Error("matrix: rank must be in [1,3]");
    }

    static MatrixSeries identity(int r, const Ring& ring, Center center) {
        MatrixSeries m(r, ring, center);
        for (int i = 0; i < r; ++i) m.at(i, i) = Series::one(ring, center);
        return m;
    }

    int rank() const { return r_; }
    const Ring& ring() const { return ring_; }
    Center center() const { return center_; }

    Series& at(int i, int j) { return entries_[size_t(i) * r_ + j]; }
    const Series& at(int i, int j) const { return entries_[size_t(i) * r_ + j]; }

    MatrixSeries operator*(const MatrixSeries& o) const {
        check_compat(o);
        MatrixSeries m(r_, ring_, center_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < r_; ++j) {
                Series s = at(i, 0) * o.at(0, j);
                for (int k = 1; k < r_; ++k) s = s + at(i, k) * o.at(k, j);
                m.at(i, j) = s;
            }
        return m;
    }

    MatrixSeries operator+(const MatrixSeries& o) const {
        check_compat(o);
        MatrixSeries m(r_, ring_, center_);
        for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] + o.entries_[k];
        return m;
    }

    MatrixSeries operator-(const MatrixSeries& o) const {
        check_compat(o);
        MatrixSeries m(r_, ring_, center_);
        for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] - o.entries_[k];
        return m;
    }

    MatrixSeries operator*(const Series& s) const {
        MatrixSeries m(r_, ring_, center_);
        for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k] * s;
        return m;
    }

    Series det() const {
        if (r_ == 1) return at(0, 0);
        if (r_ == 2) return at(0, 0) * at(1, 1) - at(0, 1) * at(1, 0);
        return at(0, 0) * (at(1, 1) * at(2, 2) - at(1, 2) * at(2, 1)) -
               at(0, 1) * (at(1, 0) * at(2, 2) - at(1, 2) * at(2, 0)) +
               at(0, 2) * (at(1, 0) * at(2, 1) - at(1, 1) * at(2, 0));
    }

    /// Adjugate: adj(A) * A = det(A) * id.
    MatrixSeries adjugate() const {
        MatrixSeries m(r_, ring_, center_);
        if (r_ == 1) {
            m.at(0, 0) = Series::one(ring_, center_);
            return m;
        }
        if (r_ == 2) {
            m.at(0, 0) = at(1, 1);
            m.at(1, 1) = at(0, 0);
            m.at(0, 1) = -at(0, 1);
            m.at(1, 0) = -at(1, 0);
            return m;
        }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                int r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
                // cofactor with rows/cols in cyclic order carries no extra sign
                m.at(j, i) = at(r0, c0) * at(r1, c1) - at(r0, c1) * at(r1, c0);
            }
        return m;
    }

    /// Inverse via adjugate / det; `window` bounds the det-inversion window.
    MatrixSeries inverse(int window = 64) const {
        Series d = det().inv(window);
        return adjugate() * d;
    }

    /// Entrywise truncation of every series to precision p.
    MatrixSeries truncate(int p) const {
        MatrixSeries m(r_, ring_, center_);
        for (size_t k = 0; k < entries_.size(); ++k) m.entries_[k] = entries_[k].truncate(p);
        return m;
    }

    bool agrees_with(const MatrixSeries& o) const {
        check_compat(o);
        for (size_t k = 0; k < entries_.size(); ++k)
            if (!entries_[k].agrees_with(o.entries_[k])) return false;
        return true;
    }

    std::string str(const std::string& var) const {
        std::string s = "[";
        for (int i = 0; i < r_; ++i) {
            s += i ? "; " : "";
            for (int j = 0; j < r_; ++j) s += (j ? ", " : "") + at(i, j).str(var);
        }
        return s + "]";
    }

private:
    void check_compat(const MatrixSeries& o) const {
        if (r_ != o.r_) throw RingMismatchError("matrix: shape mismatch");
        if (center_ != o.center_) throw RingMismatchError("matrix: center mismatch");
        if (!SeriesRing<R>::same_ring(ring_, o.ring_))
            throw RingMismatchError("matrix: ring mismatch");
    }

    int r_ = 0;
    Ring ring_{};
    Center center_ = Center::Z;
    std::vector<Series> entries_;
};

using MatSeries = MatrixSeries<TruncElem>;

/// Entrywise Frobenius (z fixed, coefficients to the q-th power).
MatSeries mat_sigma(const MatSeries& a);

/// Matrix of the induced map on the i-th exterior power, in the basis of
/// i-element index sets in lexicographic order (i = 1 gives A, i = r gives
/// [det A]).
MatSeries wedge(const MatSeries& a, int i);

/// Result of a boundedness test, with a witness string when it fails and a
/// per-exterior-power breakdown.
struct BoundReport {
    bool pass = false;
    std::vector<bool> wedge_ok;   // indices 1..r stored at [i-1]
    bool det_unit_ok = false;     // det * (z-zeta)^{-sum mu} a unit of R[[z]]
    std::string witness;
};

/// Check that tau is bounded by the decreasing cocharacter mu:
/// for each 1 <= i <= r every entry of wedge(tau, i) is divisible by
/// (z-zeta)^{mu_{r-i+1}+...+mu_r}, and for i = r the quotient
/// det(tau) * (z-zeta)^{-sum mu} is a unit of R[[z]].
BoundReport check_bounded(const MatSeries& tau, const std::vector<int>& mu);

/// Random GL_r(R[[z]]) element: unit diagonal times (id + E) with E strictly
/// nilpotent-or-positive, so invertibility needs no rejection sampling.
MatSeries random_gl_integral(int r, const TruncRingPtr& ring, std::mt19937_64& rng);

}  // namespace shtuka
