#pragma once

#include "shtuka/carlitz.hpp"
#include "shtuka/shtuka.hpp"

namespace shtuka {

/// The z-isocrystal datum (D, tau_D) with the weight bound omega.  Shipped
/// instance: tau_D = diag(z, 1), omega = (0, -1) = (-mu_2, -mu_1).
struct IsocrystalDatum {
    int r = 2;
    std::vector<std::vector<std::map<int, int>>> tau_poly;
    std::vector<int> omega;

    static IsocrystalDatum standard_gl2();
};

/// A Hodge-Pink lattice Q inside GF((z-zeta))^2, presented by a generator
/// matrix whose columns span Q over GF[[z-zeta]].  The coefficients live in
/// the generic-fibre ring (zeta invertible, h nilpotent of order D).
struct HPLattice {
    PeriodParamsPtr par;
    MatrixSeries<PeriodValue> gens;  // zeta-centered
    int amp_lo = 0, amp_hi = 1;      // (z-zeta)^{-amp_lo} p <= Q <= (z-zeta)^{-amp_hi} p
};

/// A point of the Grassmannian of lines in GF^2, as a projective pair with a
/// chart marker ("s0=1" normalises the first coordinate).
struct GrassLine {
    PeriodValue s0, s1;
    std::string chart;
    /// The affine slope in the chart (s1 when chart is "s0=1").
    const PeriodValue& slope() const { return chart == "s0=1" ? s1 : s0; }
};

/// Build the lattice of the universal point at coords (k, l, h, n) directly
/// over the generic fibre: the generator matrix is
///   [[ z^k (z-zeta)^{-1} prod_{i>=1} z/(z-zeta^{q^i}), 0 ],
///    [ -z^l sum_{i>=0} h^{q^i}/((z-zeta)...(z-zeta^{q^i})), z^l ]]
/// with the zeta-only product extended to the precision bound q^i - 1 < P
/// and the h-sum truncated by h^D = 0, D = q^n.
HPLattice universal_lattice(const PeriodParamsPtr& par, int k, int l, const PeriodValue& h);

/// The lattice attached to a verified triple: classify to canonical
/// coordinates and rebuild over the generic fibre at zeta-precision P.
/// Requires the classified h to be zeta-free (a polynomial in h alone);
/// mixed parameters cannot be lifted to the generic fibre beyond the
/// truncation order soundly.
HPLattice compute_q_x(const ShtukaTriple& t, const FixedDatum& fixed, int P);

struct OmegaReport {
    bool cols_bounded = false;   // every generator in (z-zeta)^{omega_r} p
    bool p_in_q = false;         // p <= Q (inverse matrix integral)
    bool det_eq = false;         // det * (z-zeta)^{-sum omega} a unit (i = r equality)
    bool proper_low = false;     // p != Q
    bool proper_high = false;    // Q != (z-zeta)^{-1} p
    std::string witness;
    bool pass() const { return cols_bounded && p_in_q && det_eq; }
};

/// Boundedness by omega for the r = 2 case (shipped omega = (0, -1)).
OmegaReport check_bounded_omega(const HPLattice& q, const std::vector<int>& omega);

/// The induced line Fil^1: constant-coefficient extraction of (z-zeta)Q
/// modulo (z-zeta)p, normalised in a projective chart.  Requires the proper
/// inclusions p < Q < (z-zeta)^{-1} p.
GrassLine fil1(const HPLattice& q);

/// The period value l_0 * zeta^{l-k} * log(h) at zeta-precision P and
/// h-truncation D.
PeriodValue period(const FieldPtr& f, int k, int l, int P, int D);

/// Lift a z-centered series with zeta-only coefficients into the generic
/// fibre (z = zeta + (z-zeta) with zeta invertible).  Sound for P <= N.
GfSeries lift_zeta_series(const ZSeries& f, const PeriodParamsPtr& par, int window);

/// Pure-zeta (resp. zeta-free) trunc-ring elements as period values.
PeriodValue lift_trunc(const TruncElem& a, const PeriodParamsPtr& par);

/// Random GL_2 over GF[[z-zeta]] for basis-independence tests.
MatrixSeries<PeriodValue> random_gl_gf(const PeriodParamsPtr& par, std::mt19937_64& rng,
                                       int window);

}  // namespace shtuka
