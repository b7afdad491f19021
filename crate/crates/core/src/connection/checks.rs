//! Axiom and theorem checkers over frame connections.

use alloc::string::String;
use alloc::vec::Vec;

use crate::contact::ContactMetricStructure;
use crate::report::{AxiomReport, Probe};
use crate::scalar::Scalar;
use crate::tensor::{vec_add, vec_is_zero, vec_scale, vec_sub, Role};

use super::{bi_legendrian, levi_civita, tanaka_webster, tilde_connection, FrameConnection};

fn expect_vec(
    p: &mut Probe,
    s: &ContactMetricStructure,
    lhs: &[Scalar],
    rhs: &[Scalar],
    lhs_label: impl FnOnce() -> String,
    rhs_label: impl FnOnce() -> String,
) {
    if lhs != rhs && !p.failed() {
        let (l, r) = (lhs_label(), rhs_label());
        p.expect(false, || alloc::format!("{l} = {} vs {r} = {}", s.fmt(lhs), s.fmt(rhs)));
    }
}

fn outside(s: &ContactMetricStructure, v: &[Scalar], keep: &[Role]) -> Vec<Scalar> {
    let geom = s.geometry();
    v.iter()
        .enumerate()
        .map(|(a, x)| if keep.contains(&geom.role(a)) { Scalar::zero(geom.chart()) } else { x.clone() })
        .collect()
}

fn parallel_g(c: &FrameConnection, s: &ContactMetricStructure) -> Option<String> {
    c.bilinear_defect(s.g_matrix())
        .map(|(i, j, k, v)| alloc::format!("(∇_{}g)({},{}) = {v}", s.name(i), s.name(j), s.name(k)))
}

fn parallel_phi(c: &FrameConnection, s: &ContactMetricStructure) -> Option<String> {
    c.endo_defect(s.phi_matrix())
        .map(|(i, j, v)| alloc::format!("(∇_{}φ){} = {}", s.name(i), s.name(j), s.fmt(&v)))
}

fn parallel_deta(c: &FrameConnection, s: &ContactMetricStructure) -> Option<String> {
    c.bilinear_defect(s.deta_matrix())
        .map(|(i, j, k, v)| alloc::format!("(∇_{}dη)({},{}) = {v}", s.name(i), s.name(j), s.name(k)))
}

/// The four Tanno conditions characterizing the Tanaka-Webster connection.
pub fn check_tanno_axioms(c: &FrameConnection, s: &ContactMetricStructure) -> AxiomReport {
    let d = s.geometry().dim();
    let lc = levi_civita(s);
    let mut r = AxiomReport::new(alloc::format!("Tanno axioms for {}", c.name()));

    r.record("(i) ∇g = 0", parallel_g(c, s));
    let mut p = Probe::new();
    for i in 0..d {
        for j in 0..d {
            let v = c.nabla_form(s.eta(), &s.unit(i), &s.unit(j));
            p.expect(v.is_zero(), || alloc::format!("(∇_{}η)({}) = {v}", s.name(i), s.name(j)));
        }
    }
    r.record("(i) ∇η = 0", p.finish());
    let mut p = Probe::new();
    for i in 0..d {
        let v = c.nabla(&s.unit(i), s.xi());
        p.expect(vec_is_zero(&v), || alloc::format!("∇_{}ξ = {}", s.name(i), s.fmt(&v)));
    }
    r.record("(i) ∇ξ = 0", p.finish());

    let mut p = Probe::new();
    for i in 0..d {
        let ei = s.unit(i);
        let vh = vec_add(&ei, &s.h(&ei));
        for j in 0..d {
            let ej = s.unit(j);
            let lhs = c.nabla_endo(s.phi_matrix(), &ei, &ej);
            let mut rhs = lc.nabla_endo(s.phi_matrix(), &ei, &ej);
            rhs = vec_sub(&rhs, &vec_scale(s.xi(), &s.g(&vh, &ej)));
            rhs = vec_add(&rhs, &vec_scale(&vh, &s.eta()[j]));
            expect_vec(
                &mut p,
                s,
                &lhs,
                &rhs,
                || alloc::format!("(∇_{}φ){}", s.name(i), s.name(j)),
                || String::from("(∇̂_Vφ)W - g(V+hV,W)ξ + η(W)(V+hV)"),
            );
        }
    }
    r.record("(ii) (∇_Vφ)W = (∇̂_Vφ)W - g(V+hV,W)ξ + η(W)(V+hV)", p.finish());

    // Every failing frame element is listed.
    let mut fails = Vec::new();
    for a in 0..d {
        let ea = s.unit(a);
        let lhs = c.torsion(s.xi(), &s.phi(&ea));
        let rhs = vec_scale(&s.phi(&c.torsion(s.xi(), &ea)), &Scalar::integer(s.geometry().chart(), -1));
        if lhs != rhs {
            fails.push(alloc::format!(
                "T(ξ,φ{0}) = {1} vs -φT(ξ,{0}) = {2}",
                s.name(a),
                s.fmt(&lhs),
                s.fmt(&rhs)
            ));
        }
    }
    r.record("(iii) T(ξ,φV) = -φT(ξ,V)", (!fails.is_empty()).then(|| fails.join("; ")));

    let didx = s.d_indices();
    let two = Scalar::integer(s.geometry().chart(), 2);
    let mut p = Probe::new();
    for &a in &didx {
        for &b in &didx {
            if b <= a {
                continue;
            }
            let (ea, eb) = (s.unit(a), s.unit(b));
            let lhs = c.torsion(&ea, &eb);
            let rhs = vec_scale(s.xi(), &(&two * &s.deta(&ea, &eb)));
            expect_vec(&mut p, s, &lhs, &rhs, || alloc::format!("T({},{})", s.name(a), s.name(b)), || {
                String::from("2dη(Z,Z')ξ")
            });
        }
    }
    r.record("(iv) T(Z,Z') = 2dη(Z,Z')ξ on 𝒟", p.finish());
    r
}

/// Defining properties of the bi-Legendrian connection of the frame blocks.
pub fn check_bilegendrian_axioms(c: &FrameConnection, s: &ContactMetricStructure) -> AxiomReport {
    let geom = s.geometry();
    let d = geom.dim();
    let (lidx, qidx) = (s.l_indices(), s.q_indices());
    let mut r = AxiomReport::new(alloc::format!("bi-Legendrian axioms for {}", c.name()));

    for (label, role, idx) in [("∇L ⊂ L", Role::L, &lidx), ("∇Q ⊂ Q", Role::Q, &qidx)] {
        let mut p = Probe::new();
        for i in 0..d {
            for &j in idx {
                let out = outside(s, c.coefficient(i, j), &[role]);
                p.expect(vec_is_zero(&out), || {
                    alloc::format!("∇_{}{} has component {} outside the block", s.name(i), s.name(j), s.fmt(&out))
                });
            }
        }
        r.record(label, p.finish());
    }
    let mut p = Probe::new();
    for i in 0..d {
        let out = outside(s, &c.nabla(&s.unit(i), s.xi()), &[Role::Reeb]);
        p.expect(vec_is_zero(&out), || alloc::format!("∇_{}ξ has component {}", s.name(i), s.fmt(&out)));
    }
    r.record("∇ℝξ ⊂ ℝξ", p.finish());
    r.record("∇dη = 0", parallel_deta(c, s));

    let two = Scalar::integer(geom.chart(), 2);
    let mut p = Probe::new();
    for &a in &lidx {
        for &b in &qidx {
            let (ea, eb) = (s.unit(a), s.unit(b));
            let rhs = vec_scale(s.xi(), &(&two * &s.deta(&ea, &eb)));
            expect_vec(&mut p, s, &c.torsion(&ea, &eb), &rhs, || alloc::format!("T({},{})", s.name(a), s.name(b)), || {
                String::from("2dη(X,Y)ξ")
            });
        }
    }
    r.record("T(X,Y) = 2dη(X,Y)ξ", p.finish());

    let mut p = Probe::new();
    for a in 0..d {
        let ea = s.unit(a);
        let vl = geom.project(&ea, &[Role::L]);
        let vq = geom.project(&ea, &[Role::Q]);
        let rhs = vec_add(
            &geom.project(&geom.bracket(s.xi(), &vl), &[Role::Q]),
            &geom.project(&geom.bracket(s.xi(), &vq), &[Role::L]),
        );
        expect_vec(&mut p, s, &c.torsion(&ea, s.xi()), &rhs, || alloc::format!("T({},ξ)", s.name(a)), || {
            String::from("[ξ,V_L]_Q + [ξ,V_Q]_L")
        });
    }
    r.record("T(V,ξ) = [ξ,V_L]_Q + [ξ,V_Q]_L", p.finish());

    for (label, idx, other) in [("T(X,X') = -[X,X']_Q", &lidx, Role::Q), ("T(Y,Y') = -[Y,Y']_L", &qidx, Role::L)] {
        let mut p = Probe::new();
        for &a in idx {
            for &b in idx {
                if b <= a {
                    continue;
                }
                let (ea, eb) = (s.unit(a), s.unit(b));
                let rhs = vec_scale(&geom.project(&geom.bracket(&ea, &eb), &[other]), &Scalar::integer(geom.chart(), -1));
                expect_vec(&mut p, s, &c.torsion(&ea, &eb), &rhs, || alloc::format!("T({},{})", s.name(a), s.name(b)), || {
                    String::from("-[·,·] projected")
                });
            }
        }
        r.record(label, p.finish());
    }
    r
}

/// Independently evaluated metric conditions on the bi-Legendrian connection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MetricConditions {
    pub metric: bool,
    pub phi_parallel: bool,
    pub explicit_form: bool,
    pub bundle_like: bool,
    /// Total geodesicity of both foliations; only evaluated when both blocks are integrable.
    pub totally_geodesic: Option<bool>,
}

impl MetricConditions {
    pub fn evaluate(s: &ContactMetricStructure, bl: &FrameConnection) -> MetricConditions {
        let geom = s.geometry();
        let (lidx, qidx) = (s.l_indices(), s.q_indices());
        let reeb = s.reeb();
        let metric = parallel_g(bl, s).is_none();
        let phi_parallel = parallel_phi(bl, s).is_none();

        let mut explicit_form = true;
        'outer: for (idx, role) in [(&lidx, Role::L), (&qidx, Role::Q)] {
            for &a in idx {
                let ea = s.unit(a);
                let hout = outside(s, &s.h(&ea), &[role]);
                if !vec_is_zero(&hout) {
                    explicit_form = false;
                    break 'outer;
                }
                for &b in idx {
                    let eb = s.unit(b);
                    let expected = geom.project(
                        &vec_scale(&s.phi(&geom.bracket(&ea, &s.phi(&eb))), &Scalar::integer(geom.chart(), -1)),
                        &[role],
                    );
                    if bl.coefficient(a, b) != expected.as_slice() {
                        explicit_form = false;
                        break 'outer;
                    }
                }
            }
        }

        let lie_g = |u: usize, a: usize, b: usize| -> Scalar {
            let (eu, ea, eb) = (s.unit(u), s.unit(a), s.unit(b));
            let gab = s.g(&ea, &eb);
            &(&geom.derive_along(&eu, &gab) - &s.g(&geom.bracket(&eu, &ea), &eb)) - &s.g(&ea, &geom.bracket(&eu, &eb))
        };
        let mut bundle_like = true;
        'bl: for (movers, targets) in [(&lidx, &qidx), (&qidx, &lidx)] {
            for &u in movers.iter().chain(core::iter::once(&reeb)) {
                for &a in targets.iter() {
                    for &b in targets.iter() {
                        if !lie_g(u, a, b).is_zero() {
                            bundle_like = false;
                            break 'bl;
                        }
                    }
                }
            }
        }

        let totally_geodesic = (s.block_is_integrable(Role::L) && s.block_is_integrable(Role::Q)).then(|| {
            let lc = levi_civita(s);
            [(&lidx, &qidx), (&qidx, &lidx)].iter().all(|(own, other)| {
                own.iter().all(|&a| {
                    own.iter().all(|&b| {
                        let v = lc.coefficient(a, b);
                        other.iter().chain(core::iter::once(&reeb)).all(|&t| s.g(v, &s.unit(t)).is_zero())
                    })
                })
            })
        });
        MetricConditions { metric, phi_parallel, explicit_form, bundle_like, totally_geodesic }
    }

    fn flags(&self) -> Vec<(&'static str, bool)> {
        let mut f = alloc::vec![
            ("(i) ∇g = 0", self.metric),
            ("(ii) ∇φ = 0", self.phi_parallel),
            ("(iii) explicit leaf derivatives, hL ⊂ L, hQ ⊂ Q", self.explicit_form),
            ("(iv) g bundle-like for L⊕ℝξ and Q⊕ℝξ", self.bundle_like),
        ];
        if let Some(t) = self.totally_geodesic {
            f.push(("(v) L and Q totally geodesic", t));
        }
        f
    }

    /// True iff every evaluated condition has the same truth value.
    pub fn all_equal(&self) -> bool {
        let f = self.flags();
        f.iter().all(|(_, v)| *v == f[0].1)
    }
}

/// Equivalence of the metric conditions on the bi-Legendrian connection.
pub fn check_metric_equivalences(s: &ContactMetricStructure) -> AxiomReport {
    let mut r = AxiomReport::new("metric bi-Legendrian equivalences");
    let bl = match bi_legendrian(s) {
        Ok(c) => c,
        Err(e) => {
            r.record("bi-Legendrian connection exists", Some(alloc::format!("{e}")));
            return r;
        }
    };
    let m = MetricConditions::evaluate(s, &bl);
    let core4 = [m.metric, m.phi_parallel, m.explicit_form, m.bundle_like];
    let flags = m.flags();
    let agree = core4.iter().all(|v| *v == core4[0]);
    r.record_bool("(i)-(iv) equivalent", agree, "conditions disagree").with_flags(&flags[..4]);
    match m.totally_geodesic {
        Some(t) => {
            r.record_bool("(v) equivalent to (i)-(iv) when L, Q integrable", t == core4[0], "total geodesicity disagrees")
                .with_flags(&flags);
        }
        None => {
            r.not_applicable("(v) equivalent to (i)-(iv) when L, Q integrable", "L or Q is not integrable");
        }
    }
    r
}

/// Flags entering the coincidence statements between the bi-Legendrian and
/// Tanaka-Webster connections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoincidenceFlags {
    pub flat_l: bool,
    pub flat_q: bool,
    pub metric: bool,
    pub integrable_l: bool,
    pub integrable_q: bool,
    pub sasakian: bool,
    pub k_contact: bool,
    pub coincide: bool,
    pub tw_preserves_l: bool,
}

impl CoincidenceFlags {
    fn as_pairs(&self) -> Vec<(&'static str, bool)> {
        alloc::vec![
            ("flat(L)", self.flat_l),
            ("flat(Q)", self.flat_q),
            ("∇g=0", self.metric),
            ("integrable(L)", self.integrable_l),
            ("integrable(Q)", self.integrable_q),
            ("sasakian", self.sasakian),
            ("∇=*∇", self.coincide),
        ]
    }
}

pub fn coincidence_flags(s: &ContactMetricStructure, bl: &FrameConnection, tw: &FrameConnection) -> CoincidenceFlags {
    let d = s.geometry().dim();
    let lidx = s.l_indices();
    let tw_preserves_l =
        (0..d).all(|i| lidx.iter().all(|&j| vec_is_zero(&outside(s, tw.coefficient(i, j), &[Role::L]))));
    CoincidenceFlags {
        flat_l: s.is_flat(Role::L),
        flat_q: s.is_flat(Role::Q),
        metric: parallel_g(bl, s).is_none(),
        integrable_l: s.block_is_integrable(Role::L),
        integrable_q: s.block_is_integrable(Role::Q),
        sasakian: s.is_sasakian(),
        k_contact: s.is_k_contact(),
        coincide: bl.same_coefficients(tw),
        tw_preserves_l,
    }
}

/// Coincidence of the bi-Legendrian and Tanaka-Webster connections. Each
/// statement is asserted only where its hypotheses hold; the flags are
/// attached to every check.
pub fn check_coincidence_theorem(s: &ContactMetricStructure) -> AxiomReport {
    let mut r = AxiomReport::new("bi-Legendrian versus Tanaka-Webster");
    let bl = match bi_legendrian(s) {
        Ok(c) => c,
        Err(e) => {
            r.record("bi-Legendrian connection exists", Some(alloc::format!("{e}")));
            return r;
        }
    };
    let tw = tanaka_webster(s);
    let f = coincidence_flags(s, &bl, &tw);
    let flags = f.as_pairs();
    let geom = s.geometry();
    let (lidx, qidx) = (s.l_indices(), s.q_indices());

    let name = "∇ = *∇ iff L, Q integrable and Sasakian (L, Q flat, ∇g = 0)";
    if f.flat_l && f.flat_q && f.metric {
        let rhs = f.integrable_l && f.integrable_q && f.sasakian;
        let w = alloc::format!("∇=*∇ is {} but integrable ∧ Sasakian is {rhs}", f.coincide);
        r.record_bool(name, f.coincide == rhs, w).with_flags(&flags);
    } else {
        r.not_applicable(name, "hypotheses do not hold").with_flags(&flags);
    }

    let name = "*∇L ⊂ L implies L, Q integrable and ∇ = *∇ (Sasakian, L flat)";
    if f.sasakian && f.flat_l && f.tw_preserves_l {
        let ok = f.integrable_l && f.integrable_q && f.coincide;
        r.record_bool(name, ok, tw.first_difference(&bl).unwrap_or_else(|| String::from("not integrable")))
            .with_flags(&flags);
    } else {
        r.not_applicable(name, "hypotheses do not hold").with_flags(&flags);
    }

    let name = "conjugate of a flat L is flat (K-contact)";
    if f.k_contact && f.flat_l {
        r.record_bool(name, f.flat_q, "Q is not flat").with_flags(&flags);
    } else {
        r.not_applicable(name, "hypotheses do not hold").with_flags(&flags);
    }

    let name = "hX = [ξ,φX]_L = -(φ[ξ,X])_L and hY = [ξ,φY]_Q = -(φ[ξ,Y])_Q";
    if f.flat_l && f.flat_q && f.metric && f.coincide {
        let mut p = Probe::new();
        for (idx, role) in [(&lidx, Role::L), (&qidx, Role::Q)] {
            for &a in idx.iter() {
                let ea = s.unit(a);
                let hx = s.h(&ea);
                let b1 = geom.project(&geom.bracket(s.xi(), &s.phi(&ea)), &[role]);
                let b2 = vec_scale(&geom.project(&s.phi(&geom.bracket(s.xi(), &ea)), &[role]), &Scalar::integer(geom.chart(), -1));
                expect_vec(&mut p, s, &hx, &b1, || alloc::format!("h{}", s.name(a)), || String::from("[ξ,φV]"));
                expect_vec(&mut p, s, &hx, &b2, || alloc::format!("h{}", s.name(a)), || String::from("-(φ[ξ,V])"));
            }
        }
        r.record(name, p.finish()).with_flags(&flags);
    } else {
        r.not_applicable(name, "hypotheses do not hold").with_flags(&flags);
    }

    let name = "∇ - ∇̂ = S with S(V,ξ) = S(ξ,V) = φV, S(Z,Z') = dη(Z,Z')ξ, ∇_XX' = ∇̂_XX', ∇_YY' = ∇̂_YY'";
    if f.sasakian && f.flat_l && f.integrable_l && f.integrable_q && f.metric {
        let lc = levi_civita(s);
        r.record(name, difference_identities(s, &bl, &lc)).with_flags(&flags);
    } else {
        r.not_applicable(name, "hypotheses do not hold").with_flags(&flags);
    }
    r
}

/// First violation of the difference-tensor identities between `c` and the
/// Levi-Civita connection `lc`.
pub(crate) fn difference_identities(
    s: &ContactMetricStructure,
    c: &FrameConnection,
    lc: &FrameConnection,
) -> Option<String> {
    let diff = c.difference(lc).expect("same frame");
    let d = s.geometry().dim();
    let reeb = s.reeb();
    let mut p = Probe::new();
    for a in 0..d {
        let ea = s.unit(a);
        let phi = s.phi(&ea);
        expect_vec(&mut p, s, &diff.apply(&ea, s.xi()), &phi, || alloc::format!("S({},ξ)", s.name(a)), || {
            alloc::format!("φ{}", s.name(a))
        });
        expect_vec(&mut p, s, &diff.apply(s.xi(), &ea), &phi, || alloc::format!("S(ξ,{})", s.name(a)), || {
            alloc::format!("φ{}", s.name(a))
        });
    }
    for a in (0..d).filter(|&a| a != reeb) {
        for b in (0..d).filter(|&b| b != reeb) {
            let (ea, eb) = (s.unit(a), s.unit(b));
            let rhs = vec_scale(s.xi(), &s.deta(&ea, &eb));
            expect_vec(&mut p, s, &diff.apply(&ea, &eb), &rhs, || alloc::format!("S({},{})", s.name(a), s.name(b)), || {
                String::from("dη(Z,Z')ξ")
            });
        }
    }
    for idx in [s.l_indices(), s.q_indices()] {
        for &a in &idx {
            for &b in &idx {
                expect_vec(&mut p, s, c.coefficient(a, b), lc.coefficient(a, b), || {
                    alloc::format!("∇_{}{}", s.name(a), s.name(b))
                }, || alloc::format!("∇̂_{}{}", s.name(a), s.name(b)));
            }
        }
    }
    p.finish()
}

/// The canonical connection `∇̃`: its three characterizing properties and
/// its relation to the K-contact and Sasakian conditions.
pub fn check_tilde_theorem(s: &ContactMetricStructure) -> AxiomReport {
    let c = tilde_connection(s);
    let geom = s.geometry();
    let d = geom.dim();
    let mut r = AxiomReport::new("canonical connection ∇̃");

    let mut p = Probe::new();
    for i in 0..d {
        let v = c.nabla(&s.unit(i), s.xi());
        p.expect(vec_is_zero(&v), || alloc::format!("∇̃_{}ξ = {}", s.name(i), s.fmt(&v)));
    }
    r.record("(i) ∇̃ξ = 0", p.finish());

    let two = Scalar::integer(geom.chart(), 2);
    let mut p = Probe::new();
    for a in 0..d {
        for b in a + 1..d {
            let (ea, eb) = (s.unit(a), s.unit(b));
            let rhs = vec_scale(s.xi(), &(&two * &s.deta(&ea, &eb)));
            expect_vec(&mut p, s, &c.torsion(&ea, &eb), &rhs, || alloc::format!("T̃({},{})", s.name(a), s.name(b)), || {
                String::from("2dη(V,W)ξ")
            });
        }
    }
    r.record("(ii) T̃(V,W) = 2dη(V,W)ξ", p.finish()).with_note("torsion is measured against the two-form dη");

    let didx = s.d_indices();
    let mut p = Probe::new();
    for &i in &didx {
        for &j in &didx {
            for &k in &didx {
                let v = c.nabla_bilinear(s.g_matrix(), &s.unit(i), &s.unit(j), &s.unit(k));
                p.expect(v.is_zero(), || alloc::format!("(∇̃_{}g)({},{}) = {v}", s.name(i), s.name(j), s.name(k)));
            }
        }
    }
    r.record("(iii) (∇̃_Z g)(Z',Z'') = 0 on 𝒟", p.finish());

    let k_contact = s.is_k_contact();
    let g_par = parallel_g(&c, s).is_none();
    let sasakian = s.is_sasakian();
    let phi_par = parallel_phi(&c, s).is_none();
    r.record_bool("K-contact iff ∇̃g = 0", k_contact == g_par, alloc::format!("K-contact is {k_contact}, ∇̃g=0 is {g_par}"))
        .with_flags(&[("k-contact", k_contact), ("∇̃g=0", g_par)]);
    r.record_bool("Sasakian iff ∇̃φ = 0", sasakian == phi_par, alloc::format!("Sasakian is {sasakian}, ∇̃φ=0 is {phi_par}"))
        .with_flags(&[("sasakian", sasakian), ("∇̃φ=0", phi_par)]);
    if sasakian {
        let tw = tanaka_webster(s);
        r.record("Sasakian implies ∇̃ = *∇", c.first_difference(&tw));
    } else {
        r.not_applicable("Sasakian implies ∇̃ = *∇", "structure is not Sasakian");
    }
    r
}

/// Sasakian and K-contact predicates, each cross-checked against an
/// independent criterion.
pub fn sasakian_report(s: &ContactMetricStructure) -> AxiomReport {
    let mut r = AxiomReport::new("normality");
    let lc = levi_civita(s);
    let d = s.geometry().dim();
    let mut p = Probe::new();
    for i in 0..d {
        let ei = s.unit(i);
        for j in 0..d {
            let ej = s.unit(j);
            let lhs = lc.nabla_endo(s.phi_matrix(), &ei, &ej);
            let rhs = vec_sub(&vec_scale(s.xi(), &s.g(&ei, &ej)), &vec_scale(&ei, &s.eta()[j]));
            expect_vec(&mut p, s, &lhs, &rhs, || alloc::format!("(∇̂_{}φ){}", s.name(i), s.name(j)), || {
                String::from("g(V,W)ξ - η(W)V")
            });
        }
    }
    let via_lc = p.finish();
    let normal = s.normality_witness();
    let sasakian = normal.is_none();
    let flags = [("N=0", sasakian), ("(∇̂_Vφ)W = g(V,W)ξ - η(W)V", via_lc.is_none())];
    let agree = r
        .record_bool(
            "normality agrees with the covariant criterion",
            sasakian == via_lc.is_none(),
            normal.clone().or(via_lc.clone()).unwrap_or_default(),
        )
        .with_flags(&flags);
    if let Some(w) = normal {
        agree.with_note(alloc::format!("not normal: {w}"));
    }
    let k = s.is_k_contact();
    let killing = s.xi_is_killing();
    r.record_bool("h = 0 iff ξ Killing", k == killing, alloc::format!("h=0 is {k}, 𝓛_ξg=0 is {killing}"))
        .with_flags(&[("h=0", k), ("𝓛_ξg=0", killing)]);
    r
}

/// Identities relating the Levi-Civita and Tanaka-Webster connections to the
/// structure tensors.
pub fn check_connection_identities(s: &ContactMetricStructure) -> AxiomReport {
    let mut r = AxiomReport::new("connection identities");
    let lc = levi_civita(s);
    let tw = tanaka_webster(s);
    let geom = s.geometry();
    let d = geom.dim();
    let chart = geom.chart();

    let mut p = Probe::new();
    for a in 0..d {
        for b in a + 1..d {
            let t = lc.torsion(&s.unit(a), &s.unit(b));
            p.expect(vec_is_zero(&t), || alloc::format!("T̂({},{}) = {}", s.name(a), s.name(b), s.fmt(&t)));
        }
    }
    r.record("Levi-Civita is torsion-free", p.finish());
    r.record("Levi-Civita is metric", parallel_g(&lc, s));

    let mut p = Probe::new();
    for a in 0..d {
        let ea = s.unit(a);
        let rhs = vec_scale(&vec_add(&s.phi(&ea), &s.phi(&s.h(&ea))), &Scalar::integer(chart, -1));
        expect_vec(&mut p, s, &lc.nabla(&ea, s.xi()), &rhs, || alloc::format!("∇̂_{}ξ", s.name(a)), || {
            alloc::format!("-φ{0} - φh{0}", s.name(a))
        });
    }
    r.record("∇̂_Vξ = -φV - φhV", p.finish());

    let two = Scalar::integer(chart, 2);
    let mut p = Probe::new();
    for a in 0..d {
        for b in a + 1..d {
            let (ea, eb) = (s.unit(a), s.unit(b));
            let mut rhs = vec_scale(&s.phi(&s.h(&ea)), &s.eta()[b]);
            rhs = vec_sub(&rhs, &vec_scale(&s.phi(&s.h(&eb)), &s.eta()[a]));
            rhs = vec_add(&rhs, &vec_scale(s.xi(), &(&two * &s.g(&ea, &s.phi(&eb)))));
            expect_vec(&mut p, s, &tw.torsion(&ea, &eb), &rhs, || alloc::format!("*T({},{})", s.name(a), s.name(b)), || {
                String::from("η(W)φhV - η(V)φhW + 2g(V,φW)ξ")
            });
        }
    }
    r.record("*T(V,W) = η(W)φhV - η(V)φhW + 2g(V,φW)ξ", p.finish());
    r
}
