//! Symplectic charts, Lagrangian distributions, the bi-Lagrangian
//! connection and the Kähler structure of a flat bi-Lagrangian frame.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_traits::Zero;
use thiserror::Error;

use crate::connection::{levi_civita_frame, FrameConnection};
use crate::contact::NamedFields;
use crate::report::{AxiomReport, Probe};
use crate::scalar::{Rational, Scalar};
use crate::tensor::{
    vec_is_zero, Distribution, EndoField, Frame, FrameGeometry, Matrix, MetricField, Role, TensorError, TwoForm, VectorField,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum SymplecticError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{0}")]
    Shape(String),
    #[error("distribution has rank {found}, expected {expected}")]
    Rank { expected: usize, found: usize },
    #[error("frame blocks are not Lagrangian")]
    NotLagrangian,
    #[error("frame is not in Darboux form: {0}")]
    NotDarboux(String),
    #[error("bi-Lagrangian connection is not flat: {0}")]
    NotFlat(String),
}

#[derive(Clone, Debug)]
pub struct SymplecticStructure {
    geom: Arc<FrameGeometry>,
    omega: TwoForm,
    omega_f: Matrix,
}

impl SymplecticStructure {
    /// Builds the structure on the adapted frame `f ∪ g`. Frames are expanded
    /// with the Euclidean pairing of the chart.
    pub fn new(omega: TwoForm, f: NamedFields, g: NamedFields) -> Result<SymplecticStructure, SymplecticError> {
        let chart = omega.chart().clone();
        let n = f.len();
        if n == 0 || g.len() != n {
            return Err(SymplecticError::Shape(alloc::format!(
                "need n ≥ 1 generators in each block, got {} and {}",
                f.len(),
                g.len()
            )));
        }
        let manifold_dim = chart.dim() - usize::from(chart.relation().is_some());
        if manifold_dim != 2 * n {
            return Err(SymplecticError::Shape(alloc::format!(
                "manifold dimension {manifold_dim} does not match 2n with n = {n}"
            )));
        }
        let mut entries: Vec<(String, VectorField, Role)> = Vec::with_capacity(2 * n);
        entries.extend(f.into_iter().map(|(s, v)| (s, v, Role::F)));
        entries.extend(g.into_iter().map(|(s, v)| (s, v, Role::G)));
        let geom = FrameGeometry::new(Frame::new(entries)?, MetricField::euclidean(&chart))?;
        let fields = geom.frame().fields();
        let rows: Vec<Vec<Scalar>> =
            fields.iter().map(|a| fields.iter().map(|b| omega.apply(a, b)).collect()).collect();
        let omega_f = Matrix::from_rows(&chart, rows)?;
        Ok(SymplecticStructure { geom: Arc::new(geom), omega, omega_f })
    }

    pub fn geometry(&self) -> &Arc<FrameGeometry> {
        &self.geom
    }

    pub fn n(&self) -> usize {
        self.geom.dim() / 2
    }

    pub fn omega(&self) -> &TwoForm {
        &self.omega
    }

    /// `ω(e_a, e_b)` on the adapted frame.
    pub fn omega_matrix(&self) -> &Matrix {
        &self.omega_f
    }

    pub fn f_indices(&self) -> Vec<usize> {
        self.geom.indices(Role::F)
    }

    pub fn g_indices(&self) -> Vec<usize> {
        self.geom.indices(Role::G)
    }

    fn name(&self, a: usize) -> &str {
        &self.geom.names()[a]
    }

    fn fmt(&self, v: &[Scalar]) -> String {
        self.geom.format(v)
    }

    /// Non-degeneracy and closedness of `ω`.
    pub fn validate(&self) -> AxiomReport {
        let mut r = AxiomReport::new("symplectic structure");
        let det = self.omega_f.det();
        r.record_bool("ω non-degenerate", !det.is_zero(), "det ω = 0");
        let geom = &self.geom;
        let d = geom.dim();
        let om = |v: &[Scalar], w: &[Scalar]| self.omega_f.bilinear(v, w);
        let mut p = Probe::new();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let (ea, eb, ec) = (geom.unit(a), geom.unit(b), geom.unit(c));
                    let mut v = Scalar::zero(geom.chart());
                    for (x, y, z) in [(&ea, &eb, &ec), (&eb, &ec, &ea), (&ec, &ea, &eb)] {
                        v = &v + &geom.derive_along(x, &om(y, z));
                        v = &v - &om(&geom.bracket(x, y), z);
                    }
                    p.expect(v.is_zero(), || {
                        alloc::format!("dω({},{},{}) ∝ {v}", self.name(a), self.name(b), self.name(c))
                    });
                }
            }
        }
        r.record("dω = 0", p.finish());
        for (label, role) in [("F Lagrangian", Role::F), ("G Lagrangian", Role::G)] {
            r.record_bool(label, self.block_is_lagrangian(role), "ω does not vanish on the block");
        }
        r
    }

    pub fn block_is_lagrangian(&self, role: Role) -> bool {
        let idx = self.geom.indices(role);
        idx.iter().all(|&a| idx.iter().all(|&b| self.omega_f.get(a, b).is_zero()))
    }

    /// Rank `n` and `ω` vanishing on every pair of generators.
    pub fn lagrangian_check(&self, dist: &Distribution) -> Result<bool, SymplecticError> {
        if !dist.chart().same(self.geom.chart()) {
            return Err(TensorError::ChartMismatch.into());
        }
        if dist.rank() != self.n() {
            return Err(SymplecticError::Rank { expected: self.n(), found: dist.rank() });
        }
        let fs = dist.fields();
        Ok(fs.iter().all(|a| fs.iter().all(|b| self.omega.apply(a, b).is_zero())))
    }

    /// The unique `H` with `ω(H, e_k) = V(ω(W,e_k)) − ω(W,[V,e_k])` for all `k`.
    pub fn h_operator(&self, v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>, SymplecticError> {
        let geom = &self.geom;
        let inv = self.omega_f.transpose().inverse().map_err(|_| TensorError::DegenerateGram)?;
        let rhs: Vec<Scalar> = (0..geom.dim())
            .map(|k| {
                let ek = geom.unit(k);
                &geom.derive_along(v, &self.omega_f.bilinear(w, &ek)) - &self.omega_f.bilinear(w, &geom.bracket(v, &ek))
            })
            .collect();
        Ok(inv.mul_vec(&rhs))
    }
}

/// The bi-Lagrangian connection of the frame blocks `(F, G)`:
/// `∇_W X = H(W_F, X)_F + [W_G, X]_F` for `X ∈ F`, and symmetrically for `G`.
pub fn bi_lagrangian(s: &SymplecticStructure) -> Result<FrameConnection, SymplecticError> {
    if !s.block_is_lagrangian(Role::F) || !s.block_is_lagrangian(Role::G) {
        return Err(SymplecticError::NotLagrangian);
    }
    let geom = s.geometry().clone();
    let d = geom.dim();
    let mut gamma = alloc::vec![alloc::vec![geom.zero(); d]; d];
    for j in 0..d {
        let own = geom.role(j);
        let ej = geom.unit(j);
        for (i, slot) in gamma.iter_mut().enumerate() {
            let ei = geom.unit(i);
            let raw = if geom.role(i) == own { s.h_operator(&ei, &ej)? } else { geom.bracket(&ei, &ej) };
            slot[j] = geom.project(&raw, &[own]);
        }
    }
    Ok(FrameConnection::new("bl", geom, gamma))
}

/// `∇ω = 0`, `∇F ⊂ F`, `∇G ⊂ G` and `T(X,Y) = 0` for `X ∈ F`, `Y ∈ G`.
pub fn check_bilagrangian_axioms(c: &FrameConnection, s: &SymplecticStructure) -> AxiomReport {
    let geom = s.geometry();
    let d = geom.dim();
    let mut r = AxiomReport::new(alloc::format!("bi-Lagrangian axioms for {}", c.name()));
    r.record(
        "∇ω = 0",
        c.bilinear_defect(s.omega_matrix())
            .map(|(i, j, k, v)| alloc::format!("(∇_{}ω)({},{}) = {v}", s.name(i), s.name(j), s.name(k))),
    );
    for (label, role) in [("∇F ⊂ F", Role::F), ("∇G ⊂ G", Role::G)] {
        let other = if role == Role::F { Role::G } else { Role::F };
        let mut p = Probe::new();
        for i in 0..d {
            for &j in &geom.indices(role) {
                let out = geom.project(c.coefficient(i, j), &[other]);
                p.expect(vec_is_zero(&out), || {
                    alloc::format!("∇_{}{} has component {}", s.name(i), s.name(j), s.fmt(&out))
                });
            }
        }
        r.record(label, p.finish());
    }
    let mut p = Probe::new();
    for &a in &s.f_indices() {
        for &b in &s.g_indices() {
            let t = c.torsion(&geom.unit(a), &geom.unit(b));
            p.expect(vec_is_zero(&t), || alloc::format!("T({},{}) = {}", s.name(a), s.name(b), s.fmt(&t)));
        }
    }
    r.record("T(X,Y) = 0", p.finish());
    r
}

/// First nonzero curvature component of `c` on frame triples.
pub fn curvature_witness(c: &FrameConnection) -> Option<String> {
    let geom = c.geometry();
    let d = geom.dim();
    for a in 0..d {
        for b in a + 1..d {
            for k in 0..d {
                let v = c.curvature(&geom.unit(a), &geom.unit(b), &geom.unit(k));
                if !vec_is_zero(&v) {
                    let names = geom.names();
                    return Some(alloc::format!("R({},{}){} = {}", names[a], names[b], names[k], geom.format(&v)));
                }
            }
        }
    }
    None
}

/// Kähler data assembled from a flat bi-Lagrangian Darboux frame.
#[derive(Clone, Debug)]
pub struct KahlerData {
    pub j: EndoField,
    pub g: MetricField,
    /// `J` on the adapted frame; column `a` is `J e_a`.
    pub j_frame: Matrix,
    /// `g(e_a, e_b)` on the adapted frame.
    pub g_frame: Matrix,
    /// The bi-Lagrangian connection preserves `g`.
    pub g_parallel: bool,
    /// The bi-Lagrangian connection preserves `J`.
    pub j_parallel: bool,
    pub report: AxiomReport,
}

const SAMPLES: [(i64, i64); 4] = [(0, 1), (1, 1), (-1, 2), (3, 1)];

/// `J F_i = G_i`, `J G_i = −F_i`, `g(V,W) = −ω(V,JW)`, with a report on the
/// Hermitian and parallelism properties.
pub fn kahler_from_flat_bilagrangian(s: &SymplecticStructure) -> Result<KahlerData, SymplecticError> {
    let geom = s.geometry();
    let chart = geom.chart();
    let d = geom.dim();
    let (fi, gi) = (s.f_indices(), s.g_indices());
    let bl = bi_lagrangian(s)?;
    if let Some(w) = curvature_witness(&bl) {
        return Err(SymplecticError::NotFlat(w));
    }
    let half = Scalar::ratio(chart, -1, 2);
    for (a, &ia) in fi.iter().enumerate() {
        for (b, &ib) in gi.iter().enumerate() {
            let expected = if a == b { half.clone() } else { Scalar::zero(chart) };
            if s.omega_matrix().get(ia, ib) != &expected {
                return Err(SymplecticError::NotDarboux(alloc::format!(
                    "ω({},{}) = {}",
                    s.name(ia),
                    s.name(ib),
                    s.omega_matrix().get(ia, ib)
                )));
            }
        }
    }

    let mut jf = Matrix::zeros(chart, d, d);
    for (&f, &g) in fi.iter().zip(&gi) {
        jf.set(g, f, Scalar::one(chart));
        jf.set(f, g, Scalar::integer(chart, -1));
    }
    let gf = s.omega_matrix().mul(&jf).scale(&Scalar::integer(chart, -1));

    let cols: Vec<Vec<Scalar>> = geom.frame().fields().iter().map(|v| v.components().to_vec()).collect();
    let p = Matrix::from_columns(chart, &cols)?;
    let pinv = p.inverse()?;
    let j_chart = p.mul(&jf).mul(&pinv);
    let g_chart = s.omega().matrix().mul(&j_chart).scale(&Scalar::integer(chart, -1));
    let j = EndoField::new(j_chart)?;
    let g = MetricField::new(g_chart)?;

    let mut r = AxiomReport::new("Kähler structure of a flat bi-Lagrangian frame");
    let minus_i = Matrix::identity(chart, d).scale(&Scalar::integer(chart, -1));
    r.record_bool("J² = -I", jf.mul(&jf) == minus_i, "J² ≠ -I");
    let jt = jf.transpose();
    r.record_bool("g(JV,JW) = g(V,W)", jt.mul(&gf).mul(&jf) == gf, "J is not g-orthogonal");
    r.record_bool(
        "ω(JV,JW) = ω(V,W)",
        jt.mul(s.omega_matrix()).mul(&jf) == *s.omega_matrix(),
        "J is not ω-compatible",
    );
    r.record_bool("g symmetric", gf.transpose() == gf, "g is not symmetric");
    r.record("g positive definite at sample points", positive_definite_at_samples(g.matrix()));

    let g_par = bl.bilinear_defect(&gf);
    let j_par = bl.endo_defect(&jf);
    let (g_parallel, j_parallel) = (g_par.is_none(), j_par.is_none());
    let parallel_frame = bl.is_zero();
    let flags = [("frame parallel", parallel_frame), ("∇g=0", g_par.is_none()), ("∇J=0", j_par.is_none())];
    r.record_bool(
        "∇g = 0 iff ∇J = 0",
        g_par.is_none() == j_par.is_none(),
        alloc::format!("∇g=0 is {}, ∇J=0 is {}", g_par.is_none(), j_par.is_none()),
    )
    .with_flags(&flags);
    if parallel_frame {
        let names = geom.names();
        r.record("∇J = 0", j_par.map(|(i, k, v)| alloc::format!("(∇_{}J){} = {}", names[i], names[k], geom.format(&v))));
        r.record("∇g = 0", g_par.map(|(i, a, b, v)| alloc::format!("(∇_{}g)({},{}) = {v}", names[i], names[a], names[b])));
        let lc = levi_civita_frame(geom, &gf)?;
        r.record("bi-Lagrangian = Levi-Civita", bl.first_difference(&lc));
    } else {
        for name in ["∇J = 0", "∇g = 0", "bi-Lagrangian = Levi-Civita"] {
            r.not_applicable(name, "adapted frame is not parallel").with_flags(&flags);
        }
    }
    Ok(KahlerData { j, g, j_frame: jf, g_frame: gf, g_parallel, j_parallel, report: r })
}

/// Leading principal minors of `m` at a few rational points; `None` when all
/// are positive.
pub fn positive_definite_at_samples(m: &Matrix) -> Option<String> {
    let chart = m.chart();
    let nv = chart.nvars();
    for (k, &(num, den)) in SAMPLES.iter().enumerate() {
        let point: Vec<Rational> = (0..nv)
            .map(|i| crate::scalar::rational(num + i as i64 * (k as i64 + 1), den))
            .collect();
        for size in 1..=m.rows() {
            let mut sub = Matrix::zeros(chart, size, size);
            for i in 0..size {
                for j in 0..size {
                    sub.set(i, j, m.get(i, j).clone());
                }
            }
            let minor = match sub.det().evaluate(&point) {
                Ok(v) => v,
                Err(_) => continue,
            };
            if minor <= Rational::zero() {
                return Some(alloc::format!("leading minor of size {size} is {minor} at sample {k}"));
            }
        }
    }
    None
}
