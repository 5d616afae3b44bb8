#include "shtuka/shtuka.hpp"

namespace shtuka {

namespace {

MatSeries diag_zpow(const TruncRingPtr& ring, int a, int b) {
    MatSeries m(2, ring, Center::Z);
    m.at(0, 0) = ZSeries::monomial(ring, Center::Z, a, TruncElem::one(ring));
    m.at(1, 1) = ZSeries::monomial(ring, Center::Z, b, TruncElem::one(ring));
    return m;
}

// all coefficients of every entry of a - b have I-adic valuation >= bound
bool residual_val_at_least(const MatSeries& a, const MatSeries& b, int bound) {
    for (int i = 0; i < a.rank(); ++i)
        for (int j = 0; j < a.rank(); ++j) {
            ZSeries d = a.at(i, j) - b.at(i, j);
            for (const auto& [e, c] : d.coeffs())
                if (c.valuation() < bound) return false;
        }
    return true;
}

// embed an N=1 (residue field) matrix into the ambient ring
MatSeries lift_residue(const MatSeries& m, const TruncRingPtr& ring) {
    MatSeries out(m.rank(), ring, m.center());
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) {
            ZSeries s(ring, m.center(), m.at(i, j).prec());
            for (const auto& [e, c] : m.at(i, j).coeffs())
                s.set(e, TruncElem::constant(ring, FqElem(ring->field, c.constant_term().code())));
            out.at(i, j) = s;
        }
    return out;
}

MatSeries project_matrix(const MatSeries& m, const TruncRingPtr& target) {
    MatSeries out(m.rank(), target, m.center());
    for (int i = 0; i < m.rank(); ++i)
        for (int j = 0; j < m.rank(); ++j) {
            ZSeries s(target, m.center(), m.at(i, j).prec());
            for (const auto& [e, c] : m.at(i, j).coeffs()) s.set(e, c.project(target));
            out.at(i, j) = s;
        }
    return out;
}

// level m with N = q^m, or -1
int level_of(const TruncRingPtr& ring) {
    int m = 0;
    long long v = 1;
    while (v < ring->N) {
        v *= ring->q();
        ++m;
    }
    return v == ring->N ? m : -1;
}

long long ipow(long long b, int e) {
    long long r = 1;
    while (e-- > 0) r *= b;
    return r;
}

}  // namespace

FixedDatum FixedDatum::standard_gl2() {
    FixedDatum f;
    f.r = 2;
    f.b_poly.assign(2, std::vector<std::map<int, int>>(2));
    f.b_poly[0][0] = {{1, 1}};  // z
    f.b_poly[1][1] = {{0, 1}};  // 1
    f.mu = {1, 0};
    return f;
}

MatSeries FixedDatum::embed(const TruncRingPtr& ring) const {
    MatSeries m(r, ring, Center::Z);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            for (const auto& [e, c] : b_poly[i][j])
                m.at(i, j).set(e, TruncElem::from_int(ring, c));
    return m;
}

MatSeries eta_nh(const TruncRingPtr& ring, int n, const TruncElem& h) {
    if (!h.is_zero() && h.valuation() < 1)
        throw MembershipError("eta_nh: h must lie in the nilradical (v(h) >= 1)");
    MatSeries m = MatSeries::identity(2, ring, Center::Z);
    ZSeries prod = zs_one(ring);
    ZSeries denom = zs_one(ring);   // (z - zeta)...(z - zeta^{q^i}), inverted exactly
    ZSeries sum = ZSeries::zero(ring, Center::Z);
    TruncElem zeta_pow = TruncElem::zeta(ring);  // zeta^{q^i}
    TruncElem h_pow = h;                         // h^{q^i}
    for (int i = 0; i < n; ++i) {
        ZSeries factor = zs_z_minus(ring, zeta_pow);
        prod = prod * (zs_var(ring) * factor.inv());
        denom = denom * factor;
        sum = sum + denom.inv() * h_pow;
        zeta_pow = zeta_pow.sigma();
        h_pow = h_pow.sigma();
    }
    m.at(0, 0) = prod;
    m.at(1, 0) = -sum;
    return m;
}

ShtukaTriple universal_point(const RZCoords& c) {
    const TruncRingPtr& ring = c.h.ring();
    if (!ring) throw Error("universal_point: coords carry no ring");
    if (level_of(ring) != c.n || ipow(ring->q(), c.n) != ring->N)
        throw MembershipError("universal_point: ring must have N = q^n");
    MatSeries tau(2, ring, Center::Z);
    tau.at(0, 0) = zs_z_minus(ring, TruncElem::zeta(ring));
    tau.at(1, 0) = zs_const(ring, c.h);
    tau.at(1, 1) = zs_one(ring);
    MatSeries eta = diag_zpow(ring, c.i, c.j) * eta_nh(ring, c.n, c.h);
    return ShtukaTriple{ring, c.n, std::move(tau), std::move(eta)};
}

ShtukaTriple j_act(int a, int b, const ShtukaTriple& t) {
    ShtukaTriple out = t;
    out.eta = diag_zpow(t.ring, a, b) * t.eta;
    return out;
}

ShtukaTriple project_triple(const ShtukaTriple& t, int n_target) {
    if (n_target > t.n) throw Error("project_triple: target level above source");
    auto target = make_trunc_ring(t.ring->field, int(ipow(t.ring->q(), n_target)));
    return ShtukaTriple{target, n_target, project_matrix(t.tau, target),
                        project_matrix(t.eta, target)};
}

VerifyReport verify_point(const ShtukaTriple& t, const FixedDatum& fixed) {
    VerifyReport rep;
    MatSeries b = fixed.embed(t.ring);
    // (a) b sigma*eta = eta tau avoids inverting eta
    MatSeries lhs = b * mat_sigma(t.eta);
    MatSeries rhs = t.eta * t.tau;
    rep.intertwine_ok = lhs.agrees_with(rhs);
    if (!rep.intertwine_ok) rep.message = "eta does not intertwine b with tau";

    auto bound = check_bounded(t.tau, fixed.mu);
    rep.bounded_ok = bound.pass;
    if (!bound.pass && rep.message.empty()) rep.message = bound.witness;

    try {
        auto ring1 = make_trunc_ring(t.ring->field, 1);
        MatSeries etabar = project_matrix(t.eta, ring1);
        MatSeries taubar = project_matrix(t.tau, ring1);
        NormalForm nf = reduced_normal_form(etabar);
        rep.i = nf.i;
        rep.j = nf.j;
        // residue iso: k tau = b sigma*k = b k over F_q
        MatSeries lhs1 = nf.k * taubar;
        MatSeries rhs1 = fixed.embed(ring1) * nf.k;
        rep.residue_ok = lhs1.agrees_with(rhs1);
        if (!rep.residue_ok && rep.message.empty())
            rep.message = "mod-I reduction is not isomorphic to (b, diag(z^i, z^j))";
    } catch (const Error& e) {
        rep.residue_ok = false;
        if (rep.message.empty()) rep.message = std::string("residue check: ") + e.what();
    }
    return rep;
}

NormalForm reduced_normal_form(const MatSeries& gbar) {
    const TruncRingPtr& ring = gbar.ring();
    if (ring->N != 1) throw Error("reduced_normal_form: expects a residue-field matrix (N = 1)");
    if (gbar.rank() != 2) throw Error("reduced_normal_form: only rank 2 supported");

    auto ord = [](const ZSeries& s) -> long long {
        auto o = s.order();
        if (o) return *o;
        if (s.is_exact()) return kValInfinity;
        throw PrecisionError("reduced_normal_form: order not visible in window");
    };

    MatSeries g = gbar;
    bool swapped = false;
    if (ord(g.at(0, 0)) > ord(g.at(0, 1))) {
        swapped = true;
        MatSeries s(2, ring, Center::Z);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s.at(i, j) = gbar.at(i, 1 - j);
        g = s;
    }
    long long m = ord(g.at(0, 0));
    long long n = std::min(ord(g.at(1, 0)), ord(g.at(1, 1)));
    if (m >= kValInfinity || n >= kValInfinity)
        throw MembershipError("reduced_normal_form: matrix is singular over F_q((z))");

    MatSeries k = diag_zpow(ring, int(-m), int(-n)) * g;
    if (swapped) {
        MatSeries s(2, ring, Center::Z);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) s.at(i, j) = k.at(i, 1 - j);
        k = s;
    }
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (!k.at(i, j).integral())
                throw MembershipError("reduced_normal_form: normalised matrix not integral");
    if (!is_integral_unit(k.det()))
        throw MembershipError("reduced_normal_form: input violates the functor's conditions");
    return NormalForm{int(m), int(n), std::move(k)};
}

namespace {

// shared machinery for the standalone op and the classify loop; eta_inv is
// the exact-to-window inverse of the (stripped) eta at this level
StepResult normalize_step_impl(const MatSeries& eta_inv, const MatSeries& tau,
                               const TruncElem& h_prior, int n, int window) {
    const TruncRingPtr& ring = eta_inv.ring();
    const long long qn = ipow(ring->q(), n);
    const long long qn1 = qn * ring->q();

    // expected shape of tau at this level
    MatSeries tau_expect(2, ring, Center::Z);
    tau_expect.at(0, 0) = zs_z_minus(ring, TruncElem::zeta(ring));
    tau_expect.at(1, 0) = zs_const(ring, h_prior);
    tau_expect.at(1, 1) = zs_one(ring);
    if (!residual_val_at_least(tau, tau_expect, int(std::min<long long>(qn, kValInfinity))))
        throw MembershipError("normalize_step: tau residual not in I^{q^n}");

    // lifts of b and 1 + d from eta^{-1}; their principal parts must sit in
    // I^{q^{n+1}} (effectivity of tau), and dropping them is the chosen lift
    const ZSeries& b_raw = eta_inv.at(0, 1);
    const ZSeries& dd_raw = eta_inv.at(1, 1);
    if (!principal_val_at_least(b_raw, int(qn1)) || !principal_val_at_least(dd_raw, int(qn1)))
        throw MembershipError("normalize_step: eta^{-1} principal parts too shallow");
    ZSeries b0 = drop_principal(b_raw);
    ZSeries e = drop_principal(dd_raw);
    if (!is_integral_unit(e))
        throw MembershipError("normalize_step: (1 + d) is not a unit of R[[z]]");

    // u = det(tau) / (z - zeta), a unit of R[[z]]
    ZSeries u_raw = tau.det() * zs_z_minus(ring, TruncElem::zeta(ring)).inv(window);
    if (!principal_val_at_least(u_raw, int(qn1)))
        throw MembershipError("normalize_step: det(tau) not divisible by (z - zeta)");
    ZSeries u = drop_principal(u_raw);
    if (!is_integral_unit(u))
        throw MembershipError("normalize_step: det(tau)/(z - zeta) is not a unit");

    ZSeries uinv = u.inv(window);
    ZSeries einv = e.inv(window);
    auto [d0, d1] = split_z_at_zeta(einv);

    if (!principal_val_at_least(tau.at(1, 0), int(qn1)))
        throw MembershipError("normalize_step: tau_21 not integral mod I^{q^{n+1}}");
    ZSeries t21 = drop_principal(tau.at(1, 0));
    auto [w0, w1] = split_z_at_zeta(t21);

    TruncElem h_tilde = w0 * d0;
    if (!(h_tilde - h_prior).is_zero() && (h_tilde - h_prior).valuation() < qn)
        throw MembershipError("normalize_step: h did not stabilise mod I^{q^n}");

    MatSeries g1(2, ring, Center::Z);
    g1.at(0, 0) = e * uinv;
    g1.at(0, 1) = -(b0 * uinv);
    g1.at(1, 1) = einv;
    // the (2,1) entry is -(w0 d1 + (1+d)^{-1} w1): moving the d1-correction
    // into the bracket flips its sign (visible only in odd characteristic)
    MatSeries g2 = MatSeries::identity(2, ring, Center::Z);
    g2.at(1, 0) = -(d1 * w0) - einv * w1;
    return StepResult{h_tilde, g2 * g1};
}

// the initial inversion spends ~2N of window on principal depth and every
// level pays ~N more for the division by (z - zeta); size accordingly
int classify_window(const TruncRingPtr& ring, int m) {
    return (m + 5) * ring->N + 8 * (m + 2);
}

}  // namespace

StepResult normalize_step(const MatSeries& eta, const TruncElem& h_prior, int n,
                          const FixedDatum& fixed) {
    const TruncRingPtr& ring = eta.ring();
    int window = classify_window(ring, n + 1);
    MatSeries eta_inv = eta.inverse(window);
    MatSeries tau = eta_inv * fixed.embed(ring) * mat_sigma(eta);
    return normalize_step_impl(eta_inv, tau, h_prior, n, window);
}

RZCoords classify(const ShtukaTriple& t, const FixedDatum& fixed) {
    const TruncRingPtr& ring = t.ring;
    const int m = level_of(ring);
    if (m < 0) throw MembershipError("classify: ring truncation order is not a power of q");

    VerifyReport rep = verify_point(t, fixed);
    if (!rep.pass()) throw MembershipError("classify: not a point of the functor: " + rep.message);

    const int window = classify_window(ring, m);

    // component (i, j) and the integral part of the mod-I reduction
    auto ring1 = make_trunc_ring(ring->field, 1);
    NormalForm nf = reduced_normal_form(project_matrix(t.eta, ring1));

    // strip the component and the residue twist:  eta0 = diag^{-1} eta kbar^{-1}
    MatSeries kbar_inv_lift = lift_residue(nf.k.inverse(window), ring);
    MatSeries kbar_lift = lift_residue(nf.k, ring);
    MatSeries eta0 = diag_zpow(ring, -nf.i, -nf.j) * t.eta * kbar_inv_lift;

    // the one expensive inversion; later levels update it incrementally
    MatSeries eta_inv = kbar_lift * t.eta.inverse(window) * diag_zpow(ring, nf.i, nf.j);
    MatSeries tau = eta_inv * fixed.embed(ring) * mat_sigma(eta0);

    TruncElem h = TruncElem::zero(ring);
    for (int n = 0; n < m; ++n) {
        if (!residual_val_at_least(eta_inv, eta_nh(ring, n, h).inverse(window),
                                   int(ipow(ring->q(), n))))
            throw MembershipError("classify: eta residual escaped I^{q^n} at level " +
                                  std::to_string(n));
        StepResult st = normalize_step_impl(eta_inv, tau, h, n, window);
        h = st.h_tilde;
        MatSeries ginv = st.g.inverse(window);
        eta_inv = st.g * eta_inv;
        tau = st.g * tau * mat_sigma(ginv);
    }

    if (!residual_val_at_least(eta_inv, eta_nh(ring, m, h).inverse(window), ring->N))
        throw MembershipError("classify: final normal form mismatch");
    return RZCoords{rep.i, rep.j, h, m};
}

ShtukaTriple twist(const ShtukaTriple& t, std::mt19937_64& rng) {
    MatSeries k = random_gl_integral(2, t.ring, rng);
    int window = t.ring->default_zprec();
    ShtukaTriple out = t;
    out.eta = t.eta * k;
    out.tau = k.inverse(window) * t.tau * mat_sigma(k);
    return out;
}

}  // namespace shtuka
