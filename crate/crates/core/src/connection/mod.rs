//! Linear connections as coefficient tables on a frame.
//!
//! `Γ[i][j]` holds the frame components of `∇_{e_i} e_j`. All four contact
//! connections (Levi-Civita, Tanaka-Webster, the canonical `∇̃` and the
//! bi-Legendrian one) live on the same adapted frame, so equality of
//! connections is a componentwise test.

mod checks;

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::contact::{ContactError, ContactMetricStructure};
use crate::scalar::Scalar;
use crate::tensor::{vec_add, vec_is_zero, vec_scale, vec_sub, FrameGeometry, Matrix, Role, TensorError, VectorField};

pub use checks::{
    check_bilegendrian_axioms, check_coincidence_theorem, check_connection_identities, check_metric_equivalences,
    check_tanno_axioms, check_tilde_theorem, coincidence_flags, sasakian_report, CoincidenceFlags, MetricConditions,
};

#[derive(Clone, Debug)]
pub struct FrameConnection {
    name: String,
    geom: Arc<FrameGeometry>,
    gamma: Vec<Vec<Vec<Scalar>>>,
}

/// `S(e_i, e_j) = ∇¹_{e_i} e_j − ∇²_{e_i} e_j`.
#[derive(Clone, Debug)]
pub struct DifferenceTensor {
    pub table: Vec<Vec<Vec<Scalar>>>,
}

impl DifferenceTensor {
    pub fn is_zero(&self) -> bool {
        self.table.iter().flatten().all(|v| vec_is_zero(v))
    }

    pub fn get(&self, i: usize, j: usize) -> &[Scalar] {
        &self.table[i][j]
    }

    /// `S(v, w) = Σ vⁱ wʲ S(e_i, e_j)`; tensorial in both arguments.
    pub fn apply(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let d = v.len();
        let chart = v[0].chart().clone();
        let mut out = alloc::vec![Scalar::zero(&chart); d];
        for i in 0..d {
            for j in 0..d {
                if v[i].is_zero() || w[j].is_zero() {
                    continue;
                }
                out = vec_add(&out, &vec_scale(&self.table[i][j], &(&v[i] * &w[j])));
            }
        }
        out
    }
}

impl FrameConnection {
    pub fn new(name: impl Into<String>, geom: Arc<FrameGeometry>, gamma: Vec<Vec<Vec<Scalar>>>) -> FrameConnection {
        FrameConnection { name: name.into(), geom, gamma }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn geometry(&self) -> &Arc<FrameGeometry> {
        &self.geom
    }

    pub fn dim(&self) -> usize {
        self.geom.dim()
    }

    /// Frame components of `∇_{e_i} e_j`.
    pub fn coefficient(&self, i: usize, j: usize) -> &[Scalar] {
        &self.gamma[i][j]
    }

    pub fn coefficients(&self) -> &[Vec<Vec<Scalar>>] {
        &self.gamma
    }

    pub fn is_zero(&self) -> bool {
        self.gamma.iter().flatten().all(|v| vec_is_zero(v))
    }

    /// `(∇_v w)ᵏ = v(wᵏ) + Σ vⁱ wʲ Γᵏ_ij`.
    pub fn nabla(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out: Vec<Scalar> = (0..d).map(|k| self.geom.derive_along(v, &w[k])).collect();
        for i in 0..d {
            if v[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if w[j].is_zero() {
                    continue;
                }
                let c = &v[i] * &w[j];
                for (k, g) in self.gamma[i][j].iter().enumerate() {
                    if !g.is_zero() {
                        out[k] = &out[k] + &(&c * g);
                    }
                }
            }
        }
        out
    }

    /// `∇_V W` for chart-level fields, through frame expansion.
    pub fn nabla_fields(&self, v: &VectorField, w: &VectorField) -> VectorField {
        let r = self.nabla(&self.geom.expand(v), &self.geom.expand(w));
        self.geom.recombine(&r)
    }

    /// `T(v,w) = ∇_v w − ∇_w v − [v,w]`.
    pub fn torsion(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        vec_sub(&vec_sub(&self.nabla(v, w), &self.nabla(w, v)), &self.geom.bracket(v, w))
    }

    /// `R(v,w)u = ∇_v ∇_w u − ∇_w ∇_v u − ∇_{[v,w]} u`.
    pub fn curvature(&self, v: &[Scalar], w: &[Scalar], u: &[Scalar]) -> Vec<Scalar> {
        let a = self.nabla(v, &self.nabla(w, u));
        let b = self.nabla(w, &self.nabla(v, u));
        let c = self.nabla(&self.geom.bracket(v, w), u);
        vec_sub(&vec_sub(&a, &b), &c)
    }

    /// `(∇_v B)(a,b) = v(B(a,b)) − B(∇_v a, b) − B(a, ∇_v b)` for a bilinear form
    /// given by its frame matrix.
    pub fn nabla_bilinear(&self, m: &Matrix, v: &[Scalar], a: &[Scalar], b: &[Scalar]) -> Scalar {
        let val = self.geom.derive_along(v, &m.bilinear(a, b));
        &(&val - &m.bilinear(&self.nabla(v, a), b)) - &m.bilinear(a, &self.nabla(v, b))
    }

    /// `(∇_v A) w = ∇_v (A w) − A ∇_v w`.
    pub fn nabla_endo(&self, m: &Matrix, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        vec_sub(&self.nabla(v, &m.mul_vec(w)), &m.mul_vec(&self.nabla(v, w)))
    }

    /// `(∇_v α)(w) = v(α(w)) − α(∇_v w)`.
    pub fn nabla_form(&self, alpha: &[Scalar], v: &[Scalar], w: &[Scalar]) -> Scalar {
        &self.geom.derive_along(v, &self.geom.dot(alpha, w)) - &self.geom.dot(alpha, &self.nabla(v, w))
    }

    /// First frame triple `(i, j, k)` with `(∇_{e_i} B)(e_j, e_k) ≠ 0`.
    pub fn bilinear_defect(&self, m: &Matrix) -> Option<(usize, usize, usize, Scalar)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let v = self.nabla_bilinear(m, &self.geom.unit(i), &self.geom.unit(j), &self.geom.unit(k));
                    if !v.is_zero() {
                        return Some((i, j, k, v));
                    }
                }
            }
        }
        None
    }

    /// First frame pair `(i, j)` with `(∇_{e_i} A) e_j ≠ 0`.
    pub fn endo_defect(&self, m: &Matrix) -> Option<(usize, usize, Vec<Scalar>)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                let v = self.nabla_endo(m, &self.geom.unit(i), &self.geom.unit(j));
                if !vec_is_zero(&v) {
                    return Some((i, j, v));
                }
            }
        }
        None
    }

    pub fn is_parallel_bilinear(&self, m: &Matrix) -> bool {
        self.bilinear_defect(m).is_none()
    }

    pub fn is_parallel_endo(&self, m: &Matrix) -> bool {
        self.endo_defect(m).is_none()
    }

    pub fn difference(&self, other: &FrameConnection) -> Result<DifferenceTensor, TensorError> {
        if !Arc::ptr_eq(&self.geom, &other.geom) && self.geom.names() != other.geom.names() {
            return Err(TensorError::ChartMismatch);
        }
        let table = self
            .gamma
            .iter()
            .zip(&other.gamma)
            .map(|(ri, si)| ri.iter().zip(si).map(|(a, b)| vec_sub(a, b)).collect())
            .collect();
        Ok(DifferenceTensor { table })
    }

    /// First `(i, j)` where the two tables differ, formatted.
    pub fn first_difference(&self, other: &FrameConnection) -> Option<String> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                if self.gamma[i][j] != other.gamma[i][j] {
                    let names = self.geom.names();
                    return Some(alloc::format!(
                        "{0}: ∇_{2}{3} = {4} vs {1}: ∇_{2}{3} = {5}",
                        self.name,
                        other.name,
                        names[i],
                        names[j],
                        self.geom.format(&self.gamma[i][j]),
                        other.geom.format(&other.gamma[i][j])
                    ));
                }
            }
        }
        None
    }

    pub fn same_coefficients(&self, other: &FrameConnection) -> bool {
        self.first_difference(other).is_none()
    }

    /// The table restricted to the given frame indices (rows, columns and
    /// components), e.g. dropping the Reeb direction.
    pub fn restricted(&self, idx: &[usize]) -> Vec<Vec<Vec<Scalar>>> {
        idx.iter()
            .map(|&i| idx.iter().map(|&j| idx.iter().map(|&k| self.gamma[i][j][k].clone()).collect()).collect())
            .collect()
    }
}

/// Koszul formula on a frame with metric matrix `g`:
/// `2g(∇_{e_i}e_j, e_k) = e_i g_jk + e_j g_ki − e_k g_ij + g([e_i,e_j],e_k) − g([e_j,e_k],e_i) + g([e_k,e_i],e_j)`.
pub fn levi_civita_frame(geom: &Arc<FrameGeometry>, g: &Matrix) -> Result<FrameConnection, TensorError> {
    let d = geom.dim();
    let chart = geom.chart().clone();
    let ginv = g.inverse().map_err(|_| TensorError::DegenerateGram)?;
    let half = Scalar::ratio(&chart, 1, 2);
    let gb = |a: usize, b: usize, k: usize| -> Scalar { g.bilinear(geom.structure(a, b), &geom.unit(k)) };
    let mut gamma = alloc::vec![alloc::vec![Vec::new(); d]; d];
    for i in 0..d {
        for j in 0..d {
            let lower: Vec<Scalar> = (0..d)
                .map(|k| {
                    let s = &(&(&geom.derive(i, g.get(j, k)) + &geom.derive(j, g.get(k, i))) - &geom.derive(k, g.get(i, j)))
                        + &(&(&gb(i, j, k) - &gb(j, k, i)) + &gb(k, i, j));
                    &s * &half
                })
                .collect();
            gamma[i][j] = ginv.mul_vec(&lower);
        }
    }
    Ok(FrameConnection::new("lc", geom.clone(), gamma))
}

pub fn levi_civita(s: &ContactMetricStructure) -> FrameConnection {
    levi_civita_frame(s.geometry(), s.g_matrix()).expect("metric is non-degenerate on a valid structure")
}

/// `*∇_V W = ∇̂_V W + η(V)φW + η(W)(φV + φhV) + dη(V + hV, W)ξ`.
pub fn tanaka_webster(s: &ContactMetricStructure) -> FrameConnection {
    let lc = levi_civita(s);
    let geom = s.geometry().clone();
    let d = geom.dim();
    let mut gamma = alloc::vec![alloc::vec![Vec::new(); d]; d];
    for i in 0..d {
        let ei = s.unit(i);
        let phi_i = s.phi(&ei);
        let phih_i = s.phi(&s.h(&ei));
        let ei_h = vec_add(&ei, &s.h(&ei));
        for j in 0..d {
            let ej = s.unit(j);
            let mut v = lc.coefficient(i, j).to_vec();
            v = vec_add(&v, &vec_scale(&s.phi(&ej), &s.eta()[i]));
            v = vec_add(&v, &vec_scale(&vec_add(&phi_i, &phih_i), &s.eta()[j]));
            v = vec_add(&v, &vec_scale(s.xi(), &s.deta(&ei_h, &ej)));
            gamma[i][j] = v;
        }
    }
    FrameConnection::new("tw", geom, gamma)
}

/// `∇̃_Z Z' = (∇̂_Z Z')_𝒟`, `∇̃_ξ Z = [ξ,Z]`, `∇̃ξ = 0`.
pub fn tilde_connection(s: &ContactMetricStructure) -> FrameConnection {
    let lc = levi_civita(s);
    let geom = s.geometry().clone();
    let d = geom.dim();
    let reeb = s.reeb();
    let mut gamma = alloc::vec![alloc::vec![geom.zero(); d]; d];
    for i in 0..d {
        for j in 0..d {
            if j == reeb {
                continue;
            }
            gamma[i][j] = if i == reeb {
                geom.bracket(s.xi(), &s.unit(j))
            } else {
                s.project_d(lc.coefficient(i, j))
            };
        }
    }
    FrameConnection::new("tilde", geom, gamma)
}

/// The unique `H ∈ 𝒟` with `dη(H, Z_k) = V(dη(W,Z_k)) − dη(W,[V,Z_k])` for
/// every `Z_k` in the `𝒟`-part of the frame.
pub fn h_operator(s: &ContactMetricStructure, v: &[Scalar], w: &[Scalar]) -> Result<Vec<Scalar>, ContactError> {
    let geom = s.geometry();
    let didx = s.d_indices();
    let chart = geom.chart();
    let m = didx.len();
    let mut block = Matrix::zeros(chart, m, m);
    for (a, &ia) in didx.iter().enumerate() {
        for (k, &ik) in didx.iter().enumerate() {
            block.set(k, a, s.deta_matrix().get(ia, ik).clone());
        }
    }
    let inv = block.inverse().map_err(|_| TensorError::DegenerateGram)?;
    let rhs: Vec<Scalar> = didx
        .iter()
        .map(|&k| {
            let zk = s.unit(k);
            &geom.derive_along(v, &s.deta(w, &zk)) - &s.deta(w, &geom.bracket(v, &zk))
        })
        .collect();
    let sol = inv.mul_vec(&rhs);
    let mut h = geom.zero();
    for (a, &ia) in didx.iter().enumerate() {
        h[ia] = sol[a].clone();
    }
    Ok(h)
}

/// The bi-Legendrian connection of the frame blocks `(L, Q)`:
/// `∇_W X = H(W_L, X)_L + [W_Q, X]_L + [W_ξ, X]_L` for `X ∈ L`, symmetrically
/// for `Q`, and `∇ξ = 0`.
pub fn bi_legendrian(s: &ContactMetricStructure) -> Result<FrameConnection, ContactError> {
    let geom = s.geometry().clone();
    for role in [Role::L, Role::Q] {
        if !s.block_is_legendrian(role) {
            return Err(ContactError::NotLegendrian);
        }
    }
    let d = geom.dim();
    let mut gamma = alloc::vec![alloc::vec![geom.zero(); d]; d];
    for j in 0..d {
        let own = geom.role(j);
        if own == Role::Reeb {
            continue;
        }
        let ej = s.unit(j);
        for i in 0..d {
            let ei = s.unit(i);
            let raw = if geom.role(i) == own { h_operator(s, &ei, &ej)? } else { geom.bracket(&ei, &ej) };
            gamma[i][j] = geom.project(&raw, &[own]);
        }
    }
    Ok(FrameConnection::new("bl", geom, gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::tensor::{vec_is_zero, VectorField};

    fn entry(id: &str, n: Option<usize>) -> ContactMetricStructure {
        catalog::lookup(id, n, None).unwrap().contact().unwrap().clone()
    }

    #[test]
    fn standard_bi_legendrian_vanishes_and_matches_tanaka_webster() {
        for n in 1..=2 {
            let s = entry("r2n1", Some(n));
            let bl = bi_legendrian(&s).unwrap();
            assert!(bl.is_zero());
            assert!(bl.same_coefficients(&tanaka_webster(&s)));
            assert!(bl.is_parallel_endo(s.phi_matrix()));
        }
    }

    #[test]
    fn sphere_bi_legendrian_vanishes() {
        let s = entry("s3", None);
        assert!(bi_legendrian(&s).unwrap().is_zero());
        assert!(!bi_legendrian(&s).unwrap().same_coefficients(&tanaka_webster(&s)));
    }

    /// Levi-Civita of the sphere computed by projecting the ambient flat
    /// derivative onto the tangent space.
    fn ambient_nabla(x: &VectorField, y: &VectorField) -> VectorField {
        let chart = x.chart();
        let comps: Vec<Scalar> = y.components().iter().map(|c| x.apply(c)).collect();
        let d = VectorField::new(chart, comps).unwrap();
        let normal: Vec<Scalar> =
            chart.coords().iter().map(|c| Scalar::coordinate(chart, c).unwrap()).collect();
        let nd = crate::tensor::dot(normal.iter().zip(d.components()), chart);
        let n = VectorField::new(chart, normal).unwrap();
        d.sub(&n.scale(&nd))
    }

    #[test]
    fn sphere_sectional_curvature_is_one() {
        let s = entry("s3", None);
        let geom = s.geometry();
        let (x, y) = (geom.field(0).clone(), geom.field(1).clone());
        let r = ambient_nabla(&x, &ambient_nabla(&y, &y))
            .sub(&ambient_nabla(&y, &ambient_nabla(&x, &y)))
            .sub(&ambient_nabla(&x.lie_bracket(&y).unwrap(), &y));
        let oracle = s.metric_field().apply(&r, &x);
        let one = Scalar::one(geom.chart());
        assert_eq!(oracle, one);

        let lc = levi_civita(&s);
        let (ex, ey) = (s.unit(0), s.unit(1));
        assert_eq!(s.g(&lc.curvature(&ex, &ey, &ey), &ex), one);
        for (a, b) in [(0, 0), (0, 1), (1, 0), (1, 1)] {
            let frame = geom.recombine(&lc.nabla(&s.unit(a), &s.unit(b)));
            assert_eq!(frame, ambient_nabla(geom.field(a), geom.field(b)));
        }
    }

    #[test]
    fn kappa_mu_torsion_values() {
        let s = entry("kappa-mu", Some(3));
        let bl = bi_legendrian(&s).unwrap();
        let x1 = s.unit(0);
        let minus2 = Scalar::integer(s.geometry().chart(), -2);
        assert_eq!(bl.torsion(s.xi(), &s.phi(&x1)), vec_scale(&x1, &minus2));
        assert!(vec_is_zero(&s.phi(&bl.torsion(s.xi(), &x1))));
        assert!(bl.is_parallel_bilinear(s.g_matrix()));
        assert!(bl.is_parallel_endo(s.phi_matrix()));
    }

    #[test]
    fn h_operator_solves_its_defining_equation() {
        let s = catalog::perturbed_r3("x^2 + y").unwrap().contact().unwrap().clone();
        let geom = s.geometry();
        for v in 0..3 {
            for w in 0..3 {
                let (ev, ew) = (s.unit(v), s.unit(w));
                let h = h_operator(&s, &ev, &ew).unwrap();
                assert!(s.eta_of(&h).is_zero());
                for &z in &s.d_indices() {
                    let ez = s.unit(z);
                    let rhs = &geom.derive_along(&ev, &s.deta(&ew, &ez)) - &s.deta(&ew, &geom.bracket(&ev, &ez));
                    assert_eq!(s.deta(&h, &ez), rhs);
                }
            }
        }
    }

    #[test]
    fn constructions_satisfy_their_axioms_everywhere() {
        for (id, n) in [("r2n1", Some(2)), ("s3", None), ("kappa-mu", Some(3)), ("perturbed-r3", None)] {
            let s = entry(id, n);
            let tw = tanaka_webster(&s);
            assert!(check_tanno_axioms(&tw, &s).passed(), "{id}");
            let bl = bi_legendrian(&s).unwrap();
            assert!(check_bilegendrian_axioms(&bl, &s).passed(), "{id}");
            assert!(check_tilde_theorem(&s).passed(), "{id}");
            assert!(check_connection_identities(&s).passed(), "{id}");
            let lc = levi_civita(&s);
            assert!(lc.is_parallel_bilinear(s.g_matrix()), "{id}");
        }
    }

    #[test]
    fn single_coefficient_perturbations_are_detected() {
        let s = entry("r2n1", Some(1));
        let tw = tanaka_webster(&s);
        let d = s.geometry().dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let mut gamma = tw.coefficients().to_vec();
                    gamma[i][j][k] = &gamma[i][j][k] + &Scalar::one(s.geometry().chart());
                    let c = FrameConnection::new("perturbed", s.geometry().clone(), gamma);
                    let both = check_tanno_axioms(&c, &s).passed() && check_bilegendrian_axioms(&c, &s).passed();
                    assert!(!both, "perturbing Γ[{i}][{j}][{k}] went unnoticed");
                }
            }
        }
    }

    #[test]
    fn difference_tensor_on_r3() {
        let s = entry("r2n1", Some(1));
        let bl = bi_legendrian(&s).unwrap();
        let lc = levi_civita(&s);
        assert_eq!(checks::difference_identities(&s, &bl, &lc), None);
        let diff = bl.difference(&lc).unwrap();
        assert!(!diff.is_zero());
    }
}
