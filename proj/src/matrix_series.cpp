#include "shtuka/matrix_series.hpp"

namespace shtuka {

MatSeries mat_sigma(const MatSeries& a) {
    MatSeries m(a.rank(), a.ring(), a.center());
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) m.at(i, j) = zs_sigma(a.at(i, j));
    return m;
}

namespace {

// i-element subsets of {0..r-1} in lexicographic order
std::vector<std::vector<int>> subsets(int r, int i) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    std::function<void(int)> rec = [&](int start) {
        if (int(cur.size()) == i) {
            out.push_back(cur);
            return;
        }
        for (int k = start; k < r; ++k) {
            cur.push_back(k);
            rec(k + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// determinant of the submatrix with the given rows/cols (size 1 or 2 here)
ZSeries minor_det(const MatSeries& a, const std::vector<int>& rows,
                  const std::vector<int>& cols) {
    if (rows.size() == 1) return a.at(rows[0], cols[0]);
    if (rows.size() == 2)
        return a.at(rows[0], cols[0]) * a.at(rows[1], cols[1]) -
               a.at(rows[0], cols[1]) * a.at(rows[1], cols[0]);
    return a.det();
}

}  // namespace

MatSeries wedge(const MatSeries& a, int i) {
    if (i < 1 || i > a.rank()) throw Error("wedge: power out of range");
    auto idx = subsets(a.rank(), i);
    MatSeries m(int(idx.size()) <= 3 ? int(idx.size()) : 3, a.ring(), a.center());
    for (size_t bi = 0; bi < idx.size(); ++bi)
        for (size_t bj = 0; bj < idx.size(); ++bj)
            m.at(int(bi), int(bj)) = minor_det(a, idx[bi], idx[bj]);
    return m;
}

BoundReport check_bounded(const MatSeries& tau, const std::vector<int>& mu) {
    const int r = tau.rank();
    if (int(mu.size()) != r) throw Error("check_bounded: mu has wrong length");
    for (size_t k = 1; k < mu.size(); ++k)
        if (mu[k - 1] < mu[k]) throw Error("check_bounded: mu must be decreasing");
    BoundReport rep;
    rep.wedge_ok.assign(r, false);
    int total = 0;
    for (int m : mu) total += m;

    for (int i = 1; i <= r; ++i) {
        int s = 0;
        for (int k = r - i; k < r; ++k) s += mu[k];  // mu_{r-i+1} + ... + mu_r
        MatSeries w = wedge(tau, i);
        bool ok = true;
        for (int a = 0; a < w.rank() && ok; ++a)
            for (int b = 0; b < w.rank() && ok; ++b) {
                if (!divisible_by_zmzeta(w.at(a, b), s)) {
                    ok = false;
                    rep.witness = "wedge^" + std::to_string(i) + " entry (" + std::to_string(a) +
                                  "," + std::to_string(b) + ") not divisible by (z-zeta)^" +
                                  std::to_string(s);
                }
            }
        rep.wedge_ok[i - 1] = ok;
    }

    // equality at i = r: det * (z-zeta)^{-sum mu} must be a unit of R[[z]]
    ZSeries d = tau.det();
    const TruncRingPtr& ring = tau.ring();
    int window = d.is_exact() ? ring->default_zprec() : d.prec();
    ZSeries q = d * zs_z_minus(ring, TruncElem::zeta(ring)).inv(window).pow(total, window);
    rep.det_unit_ok = is_integral_unit(q);
    if (!rep.det_unit_ok && rep.witness.empty())
        rep.witness = "det * (z-zeta)^{-" + std::to_string(total) + "} is not a unit of R[[z]]";

    rep.pass = rep.det_unit_ok;
    for (bool b : rep.wedge_ok) rep.pass = rep.pass && b;
    return rep;
}

MatSeries random_gl_integral(int r, const TruncRingPtr& ring, std::mt19937_64& rng) {
    MatSeries m = MatSeries::identity(r, ring, Center::Z);
    for (int i = 0; i < r; ++i)
        m.at(i, i) = zs_const(ring, random_trunc_unit(ring, rng, 3));
    MatSeries e(r, ring, Center::Z);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            // strictly nilpotent constant term, random short positive tail
            ZSeries s = zs_const(ring, random_trunc_nil(ring, rng, 2));
            int tail = int(uniform_below(rng, 3));
            for (int t = 0; t < tail; ++t)
                s.add_to(1 + int(uniform_below(rng, 2)), random_trunc(ring, rng, 2));
            e.at(i, j) = s;
        }
    return m * (MatSeries::identity(r, ring, Center::Z) + e);
}

}  // namespace shtuka
