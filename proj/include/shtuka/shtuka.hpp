#pragma once

#include <string>
#include <vector>

#include "shtuka/matrix_series.hpp"

namespace shtuka {

/// The fixed datum (M, b) over F_q together with the bound mu.  b is stored
/// as integer z-polynomial entries and embedded into a base ring on demand.
/// The shipped instance is b = diag(z, 1), mu = (1, 0).
struct FixedDatum {
    int r = 2;
    // b_poly[i][j] maps z-exponent -> integer coefficient
    std::vector<std::vector<std::map<int, int>>> b_poly;
    std::vector<int> mu;

    static FixedDatum standard_gl2();
    MatSeries embed(const TruncRingPtr& ring) const;
};

/// A point of the moduli functor over R_N, N = q^n: the pair (tau, eta) in
/// a fixed basis, with tau = eta^{-1} b sigma*eta and tau bounded by mu.
struct ShtukaTriple {
    TruncRingPtr ring;
    int n = 0;  // level: N = q^n
    MatSeries tau;
    MatSeries eta;
};

/// Canonical coordinates of a point: the component (i, j) and the parameter
/// h in the nilradical I (v(h) >= 1), at level n.
struct RZCoords {
    int i = 0;
    int j = 0;
    TruncElem h;
    int n = 0;
};

/// eta_{n,h} = [[prod_{i<n} z/(z - zeta^{q^i}), 0],
///             [-sum_{i<n} h^{q^i} / ((z-zeta)...(z-zeta^{q^i})), 1]].
/// Exact: every inverse is finite by nilpotency.  Requires v(h) >= 1.
MatSeries eta_nh(const TruncRingPtr& ring, int n, const TruncElem& h);

/// The universal point at coords (i, j, h, n):
/// tau = [[z-zeta, 0], [h, 1]], eta = diag(z^i, z^j) * eta_{n,h},
/// over the ring of h (which must have N = q^n).
ShtukaTriple universal_point(const RZCoords& c);

/// Left action of diag(z^a, z^b) in J on the quasi-isogeny; tau unchanged.
ShtukaTriple j_act(int a, int b, const ShtukaTriple& t);

/// Project a triple to the ring R_{N'}, N' = q^{n'} <= N (level reduction).
ShtukaTriple project_triple(const ShtukaTriple& t, int n_target);

struct VerifyReport {
    bool intertwine_ok = false;  // b sigma*eta = eta tau (as matrices)
    bool bounded_ok = false;     // tau bounded by mu
    bool residue_ok = false;     // mod-I reduction is (b, diag(z^i, z^j)) up to iso
    int i = 0, j = 0;            // component read off mod I
    std::string message;
    bool pass() const { return intertwine_ok && bounded_ok && residue_ok; }
};

/// Full membership check for a candidate triple.
VerifyReport verify_point(const ShtukaTriple& t, const FixedDatum& fixed);

/// Reduced normal form over the residue field: for gbar in GL_2(F_q((z)))
/// satisfying the functor's conditions, returns (i, j) and an integral
/// k in GL_2(F_q[[z]]) with gbar = diag(z^i, z^j) k.  Input lives over a
/// ring with N = 1 (where R = F_q).
struct NormalForm {
    int i = 0, j = 0;
    MatSeries k;
};
NormalForm reduced_normal_form(const MatSeries& gbar);

/// One inductive normalization step: given eta with
/// eta == eta_{n,h_prior} mod I^{q^n} (component already stripped), produce
/// (h_tilde, g) with  eta * g^{-1} == eta_{n+1,h_tilde} mod I^{q^{n+1}}  and
/// h_tilde == h_prior mod I^{q^n}.
struct StepResult {
    TruncElem h_tilde;
    MatSeries g;
};
StepResult normalize_step(const MatSeries& eta, const TruncElem& h_prior, int n,
                          const FixedDatum& fixed);

/// Classify a verified point: reduce mod I for (i, j), strip the component,
/// then run the normalization induction to level m (N = q^m), threading h
/// upward.  Canonical: isomorphic inputs yield equal coordinates.
RZCoords classify(const ShtukaTriple& t, const FixedDatum& fixed);

/// Random twist: right-multiply eta by a random element of GL_2(R[[z]]);
/// represents the same point of the functor.
ShtukaTriple twist(const ShtukaTriple& t, std::mt19937_64& rng);

}  // namespace shtuka
