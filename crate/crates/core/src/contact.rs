//! Contact metric structures on an adapted frame.
//!
//! A [`ContactMetricStructure`] keeps the chart-level tensors `(η, ξ, φ, g)`
//! and their frame-level images on an adapted frame `(L-block, Q-block, ξ)`:
//! `η_a = η(e_a)`, the frame expansion of `ξ`, the matrix of `φ`
//! (column `a` is `φ e_a`), `g_ab` and `dη_ab`. Every identity is checked on
//! frame elements, which suffices because all of them are tensorial.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use thiserror::Error;

use crate::report::{AxiomReport, Probe};
use crate::scalar::Scalar;
use crate::tensor::{
    vec_add, vec_is_zero, vec_scale, vec_sub, Distribution, EndoField, Frame, FrameGeometry, Matrix, MetricField,
    OneForm, Role, TensorError, VectorField,
};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum ContactError {
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error("{0}")]
    Shape(String),
    #[error("distribution has rank {found}, expected {expected}")]
    Rank { expected: usize, found: usize },
    #[error("distribution is not Legendrian")]
    NotLegendrian,
    #[error("argument `{0}` does not lie in the distribution")]
    OutsideDistribution(String),
}

impl From<crate::scalar::ScalarError> for ContactError {
    fn from(e: crate::scalar::ScalarError) -> Self {
        ContactError::Tensor(TensorError::Scalar(e))
    }
}

/// Legendrian frame block: named generators.
pub type NamedFields = Vec<(String, VectorField)>;

#[derive(Clone, Debug)]
pub struct ContactMetricStructure {
    geom: Arc<FrameGeometry>,
    eta: OneForm,
    xi: VectorField,
    phi: EndoField,
    g: MetricField,
    eta_f: Vec<Scalar>,
    xi_f: Vec<Scalar>,
    phi_f: Matrix,
    g_f: Matrix,
    deta_f: Matrix,
    h_f: Matrix,
}

impl ContactMetricStructure {
    /// Builds the structure on the adapted frame `l ∪ q ∪ {ξ}`.
    pub fn new(
        eta: OneForm,
        xi: VectorField,
        phi: EndoField,
        g: MetricField,
        l: NamedFields,
        q: NamedFields,
        reeb_name: &str,
    ) -> Result<ContactMetricStructure, ContactError> {
        let chart = eta.chart().clone();
        if !xi.chart().same(&chart) || !phi.chart().same(&chart) || !g.chart().same(&chart) {
            return Err(TensorError::ChartMismatch.into());
        }
        let n = l.len();
        if n == 0 || q.len() != n {
            return Err(ContactError::Shape(alloc::format!(
                "need n ≥ 1 generators in each block, got {} and {}",
                l.len(),
                q.len()
            )));
        }
        let manifold_dim = chart.dim() - usize::from(chart.relation().is_some());
        if manifold_dim != 2 * n + 1 {
            return Err(ContactError::Shape(alloc::format!(
                "manifold dimension {manifold_dim} does not match 2n+1 with n = {n}"
            )));
        }
        let mut entries: Vec<(String, VectorField, Role)> = Vec::with_capacity(2 * n + 1);
        entries.extend(l.into_iter().map(|(s, f)| (s, f, Role::L)));
        entries.extend(q.into_iter().map(|(s, f)| (s, f, Role::Q)));
        entries.push((String::from(reeb_name), xi.clone(), Role::Reeb));
        let geom = FrameGeometry::new(Frame::new(entries)?, g.clone())?;
        Ok(ContactMetricStructure::from_geometry(Arc::new(geom), eta, xi, phi, g))
    }

    /// As [`ContactMetricStructure::new`], with the Q-block `φ(l)`.
    pub fn with_conjugate(
        eta: OneForm,
        xi: VectorField,
        phi: EndoField,
        g: MetricField,
        l: NamedFields,
        q_names: Vec<String>,
        reeb_name: &str,
    ) -> Result<ContactMetricStructure, ContactError> {
        if q_names.len() != l.len() {
            return Err(ContactError::Shape(String::from("one name per conjugate generator")));
        }
        let q = q_names.into_iter().zip(&l).map(|(name, (_, f))| (name, phi.apply(f))).collect();
        ContactMetricStructure::new(eta, xi, phi, g, l, q, reeb_name)
    }

    fn from_geometry(
        geom: Arc<FrameGeometry>,
        eta: OneForm,
        xi: VectorField,
        phi: EndoField,
        g: MetricField,
    ) -> ContactMetricStructure {
        let d = geom.dim();
        let chart = geom.chart().clone();
        let fields = geom.frame().fields();
        let eta_f: Vec<Scalar> = fields.iter().map(|e| eta.apply(e)).collect();
        let xi_f = geom.expand(&xi);
        let cols: Vec<Vec<Scalar>> = fields.iter().map(|e| geom.expand(&phi.apply(e))).collect();
        let phi_f = Matrix::from_columns(&chart, &cols).expect("square");
        let g_f = geom.gram().clone();
        let half = Scalar::ratio(&chart, 1, 2);
        let mut deta_f = Matrix::zeros(&chart, d, d);
        for a in 0..d {
            for b in a + 1..d {
                let v = &(&geom.derive(a, &eta_f[b]) - &geom.derive(b, &eta_f[a])) - &geom.dot(geom.structure(a, b), &eta_f);
                let v = &v * &half;
                deta_f.set(b, a, -&v);
                deta_f.set(a, b, v);
            }
        }
        let mut s = ContactMetricStructure {
            geom,
            eta,
            xi,
            phi,
            g,
            eta_f,
            xi_f,
            phi_f,
            g_f,
            deta_f,
            h_f: Matrix::zeros(&chart, d, d),
        };
        let hcols: Vec<Vec<Scalar>> = (0..d)
            .map(|j| {
                let e = s.geom.unit(j);
                let lie = vec_sub(&s.geom.bracket(&s.xi_f, &s.phi(&e)), &s.phi(&s.geom.bracket(&s.xi_f, &e)));
                vec_scale(&lie, &half)
            })
            .collect();
        s.h_f = Matrix::from_columns(&chart, &hcols).expect("square");
        s
    }

    pub fn geometry(&self) -> &Arc<FrameGeometry> {
        &self.geom
    }

    pub fn n(&self) -> usize {
        self.geom.indices(Role::L).len()
    }

    pub fn eta_form(&self) -> &OneForm {
        &self.eta
    }

    pub fn reeb_field(&self) -> &VectorField {
        &self.xi
    }

    pub fn phi_field(&self) -> &EndoField {
        &self.phi
    }

    pub fn metric_field(&self) -> &MetricField {
        &self.g
    }

    pub fn reeb(&self) -> usize {
        self.geom.reeb().expect("adapted frame has a Reeb element")
    }

    pub fn l_indices(&self) -> Vec<usize> {
        self.geom.indices(Role::L)
    }

    pub fn q_indices(&self) -> Vec<usize> {
        self.geom.indices(Role::Q)
    }

    /// Indices of the contact distribution `𝒟 = L ⊕ Q`.
    pub fn d_indices(&self) -> Vec<usize> {
        (0..self.geom.dim()).filter(|&a| self.geom.role(a) != Role::Reeb).collect()
    }

    /// Frame-level `η`, `ξ`, `φ`, `g`, `dη` and `h`.
    pub fn eta(&self) -> &[Scalar] {
        &self.eta_f
    }

    pub fn xi(&self) -> &[Scalar] {
        &self.xi_f
    }

    pub fn phi_matrix(&self) -> &Matrix {
        &self.phi_f
    }

    pub fn g_matrix(&self) -> &Matrix {
        &self.g_f
    }

    pub fn deta_matrix(&self) -> &Matrix {
        &self.deta_f
    }

    /// `h = ½ 𝓛_ξ φ` on the frame.
    pub fn h_matrix(&self) -> &Matrix {
        &self.h_f
    }

    pub fn phi(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.phi_f.mul_vec(v)
    }

    pub fn h(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.h_f.mul_vec(v)
    }

    pub fn g(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        self.g_f.bilinear(v, w)
    }

    pub fn eta_of(&self, v: &[Scalar]) -> Scalar {
        self.geom.dot(&self.eta_f, v)
    }

    pub fn deta(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        self.deta_f.bilinear(v, w)
    }

    pub fn unit(&self, a: usize) -> Vec<Scalar> {
        self.geom.unit(a)
    }

    pub fn name(&self, a: usize) -> &str {
        &self.geom.names()[a]
    }

    pub fn fmt(&self, v: &[Scalar]) -> String {
        self.geom.format(v)
    }

    /// Projection onto `𝒟` along `ξ`: `V − η(V)ξ`.
    pub fn project_d(&self, v: &[Scalar]) -> Vec<Scalar> {
        vec_sub(v, &vec_scale(&self.xi_f, &self.eta_of(v)))
    }

    /// Checks every defining identity of a contact metric structure on frame
    /// elements; failures carry the offending nonzero value.
    pub fn validate(&self) -> AxiomReport {
        let d = self.geom.dim();
        let chart = self.geom.chart().clone();
        let one = Scalar::one(&chart);
        let mut r = AxiomReport::new("contact metric structure");

        let v = &self.eta_of(&self.xi_f) - &one;
        r.record("η(ξ) = 1", (!v.is_zero()).then(|| alloc::format!("η(ξ) - 1 = {v}")));

        let mut p = Probe::new();
        for b in 0..d {
            let v = self.deta(&self.xi_f, &self.unit(b));
            p.expect(v.is_zero(), || alloc::format!("dη(ξ,{}) = {v}", self.name(b)));
        }
        r.record("dη(ξ,·) = 0", p.finish());

        let mut p = Probe::new();
        for a in 0..d {
            let e = self.unit(a);
            let lhs = self.phi(&self.phi(&e));
            let rhs = vec_add(&vec_scale(&e, &-&one), &vec_scale(&self.xi_f, &self.eta_f[a]));
            p.expect(lhs == rhs, || {
                alloc::format!("φ²{0} = {1} vs -{0} + η({0})ξ = {2}", self.name(a), self.fmt(&lhs), self.fmt(&rhs))
            });
        }
        r.record("φ² = -I + η⊗ξ", p.finish());

        let mut p = Probe::new();
        for a in 0..d {
            for b in a + 1..d {
                let lhs = self.deta_f.get(a, b).clone();
                let rhs = self.g(&self.unit(a), &self.phi(&self.unit(b)));
                p.expect(lhs == rhs, || {
                    alloc::format!("dη({0},{1}) = {lhs} vs g({0},φ{1}) = {rhs}", self.name(a), self.name(b))
                });
            }
        }
        r.record("dη(V,W) = g(V,φW)", p.finish());

        let mut p = Probe::new();
        for a in 0..d {
            let v = &self.g(&self.unit(a), &self.xi_f) - &self.eta_f[a];
            p.expect(v.is_zero(), || alloc::format!("g({0},ξ) - η({0}) = {v}", self.name(a)));
        }
        r.record("g(V,ξ) = η(V)", p.finish());

        let phixi = self.phi(&self.xi_f);
        r.record("φξ = 0", (!vec_is_zero(&phixi)).then(|| alloc::format!("φξ = {}", self.fmt(&phixi))));

        let mut p = Probe::new();
        for a in 0..d {
            let v = self.eta_of(&self.phi(&self.unit(a)));
            p.expect(v.is_zero(), || alloc::format!("η(φ{}) = {v}", self.name(a)));
        }
        r.record("η∘φ = 0", p.finish());

        let mut p = Probe::new();
        for a in 0..d {
            for b in a..d {
                let (ea, eb) = (self.unit(a), self.unit(b));
                let lhs = self.g(&self.phi(&ea), &self.phi(&eb));
                let rhs = &self.g_f.get(a, b).clone() - &(&self.eta_f[a] * &self.eta_f[b]);
                p.expect(lhs == rhs, || {
                    alloc::format!("g(φ{0},φ{1}) = {lhs} vs g({0},{1}) - η({0})η({1}) = {rhs}", self.name(a), self.name(b))
                });
            }
        }
        r.record("g(φV,φW) = g(V,W) - η(V)η(W)", p.finish());

        let mut p = Probe::new();
        for a in 0..d {
            for b in 0..d {
                let (ea, eb) = (self.unit(a), self.unit(b));
                let v = &self.g(&self.phi(&ea), &eb) + &self.g(&ea, &self.phi(&eb));
                p.expect(v.is_zero(), || alloc::format!("g(φ{0},{1}) + g({0},φ{1}) = {v}", self.name(a), self.name(b)));
            }
        }
        r.record("g(φV,W) = -g(V,φW)", p.finish());

        let didx = self.d_indices();
        let mut block = Matrix::zeros(&chart, didx.len(), didx.len());
        for (i, &a) in didx.iter().enumerate() {
            for (j, &b) in didx.iter().enumerate() {
                block.set(i, j, self.deta_f.get(a, b).clone());
            }
        }
        let det = block.det();
        r.record("dη non-degenerate on 𝒟", det.is_zero().then(|| String::from("det dη|𝒟 = 0")));
        r
    }

    /// Properties of `h`: `hξ = 0`, g-symmetry and `hφ + φh = 0`.
    pub fn h_report(&self) -> AxiomReport {
        let d = self.geom.dim();
        let mut r = AxiomReport::new("tensor h");
        let hxi = self.h(&self.xi_f);
        r.record("hξ = 0", (!vec_is_zero(&hxi)).then(|| alloc::format!("hξ = {}", self.fmt(&hxi))));
        let mut p = Probe::new();
        for a in 0..d {
            for b in a + 1..d {
                let (ea, eb) = (self.unit(a), self.unit(b));
                let v = &self.g(&self.h(&ea), &eb) - &self.g(&ea, &self.h(&eb));
                p.expect(v.is_zero(), || alloc::format!("g(h{0},{1}) - g({0},h{1}) = {v}", self.name(a), self.name(b)));
            }
        }
        r.record("h is g-symmetric", p.finish());
        let mut p = Probe::new();
        for a in 0..d {
            let e = self.unit(a);
            let v = vec_add(&self.h(&self.phi(&e)), &self.phi(&self.h(&e)));
            p.expect(vec_is_zero(&v), || alloc::format!("hφ{0} + φh{0} = {1}", self.name(a), self.fmt(&v)));
        }
        r.record("hφ + φh = 0", p.finish());
        r
    }

    /// `N(V,W) = [φ,φ](V,W) + 2dη(V,W)ξ`, with
    /// `[φ,φ](V,W) = φ²[V,W] + [φV,φW] − φ[φV,W] − φ[V,φW]`.
    pub fn normality(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let geom = &self.geom;
        let (pv, pw) = (self.phi(v), self.phi(w));
        let mut n = self.phi(&self.phi(&geom.bracket(v, w)));
        n = vec_add(&n, &geom.bracket(&pv, &pw));
        n = vec_sub(&n, &self.phi(&geom.bracket(&pv, w)));
        n = vec_sub(&n, &self.phi(&geom.bracket(v, &pw)));
        let two = Scalar::integer(geom.chart(), 2);
        vec_add(&n, &vec_scale(&self.xi_f, &(&two * &self.deta(v, w))))
    }

    /// First frame pair with `N ≠ 0`, as a witness string.
    pub fn normality_witness(&self) -> Option<String> {
        let d = self.geom.dim();
        for a in 0..d {
            for b in a + 1..d {
                let n = self.normality(&self.unit(a), &self.unit(b));
                if !vec_is_zero(&n) {
                    return Some(alloc::format!("N({},{}) = {}", self.name(a), self.name(b), self.fmt(&n)));
                }
            }
        }
        None
    }

    /// Normal contact metric structure, i.e. `N ≡ 0`.
    pub fn is_sasakian(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// `h ≡ 0`.
    pub fn is_k_contact(&self) -> bool {
        self.h_f.is_zero()
    }

    /// `(𝓛_ξ g)(e_a, e_b)` on the frame.
    pub fn lie_xi_g(&self) -> Matrix {
        let d = self.geom.dim();
        let geom = &self.geom;
        let mut m = Matrix::zeros(geom.chart(), d, d);
        for a in 0..d {
            let ba = geom.bracket(&self.xi_f, &self.unit(a));
            for b in a..d {
                let bb = geom.bracket(&self.xi_f, &self.unit(b));
                let v = &(&geom.derive_along(&self.xi_f, self.g_f.get(a, b)) - &self.g(&ba, &self.unit(b)))
                    - &self.g(&self.unit(a), &bb);
                m.set(b, a, v.clone());
                m.set(a, b, v);
            }
        }
        m
    }

    /// `ξ` is Killing.
    pub fn xi_is_killing(&self) -> bool {
        self.lie_xi_g().is_zero()
    }

    /// Chart-level Legendrian test: rank `n`, `η(X) = 0`, `dη(X,X') = 0`.
    pub fn legendrian_check(&self, dist: &Distribution) -> Result<bool, ContactError> {
        if dist.rank() != self.n() {
            return Err(ContactError::Rank { expected: self.n(), found: dist.rank() });
        }
        if !dist.chart().same(self.eta.chart()) {
            return Err(TensorError::ChartMismatch.into());
        }
        let deta = self.eta.exterior_derivative();
        let fields = dist.fields();
        for (i, x) in fields.iter().enumerate() {
            if !self.eta.apply(x).is_zero() {
                return Ok(false);
            }
            for y in &fields[i + 1..] {
                if !deta.apply(x, y).is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `φL`, checked Legendrian and g-orthogonal to `L`.
    pub fn conjugate_distribution(&self, dist: &Distribution) -> Result<Distribution, ContactError> {
        if !self.legendrian_check(dist)? {
            return Err(ContactError::NotLegendrian);
        }
        let q = Distribution::new(dist.fields().iter().map(|x| self.phi.apply(x)).collect())?;
        debug_assert!(self.legendrian_check(&q)?);
        for x in dist.fields() {
            for y in q.fields() {
                debug_assert!(self.g.apply(x, y).is_zero());
            }
        }
        Ok(q)
    }

    /// Legendrian test for a frame block.
    pub fn block_is_legendrian(&self, role: Role) -> bool {
        let idx = self.geom.indices(role);
        idx.len() == self.n()
            && idx.iter().all(|&a| self.eta_f[a].is_zero() && idx.iter().all(|&b| self.deta_f.get(a, b).is_zero()))
    }

    /// `Π(X,X') = −(𝓛_X 𝓛_{X'} η)(ξ)` for frame vectors in the block `role`.
    pub fn pang_form(&self, role: Role, x: &[Scalar], x2: &[Scalar]) -> Result<Scalar, ContactError> {
        for v in [x, x2] {
            if let Some(a) = (0..v.len()).find(|&a| self.geom.role(a) != role && !v[a].is_zero()) {
                return Err(ContactError::OutsideDistribution(alloc::format!("{} (component {})", self.fmt(v), self.name(a))));
            }
        }
        let geom = &self.geom;
        let d = geom.dim();
        // α = 𝓛_{X'} η on the frame: α_c = X'(η_c) − η([X', e_c]).
        let alpha: Vec<Scalar> = (0..d)
            .map(|c| &geom.derive_along(x2, &self.eta_f[c]) - &self.eta_of(&geom.bracket(x2, &self.unit(c))))
            .collect();
        let alpha_xi = geom.dot(&alpha, &self.xi_f);
        let v = &geom.derive_along(x, &alpha_xi) - &geom.dot(&alpha, &geom.bracket(x, &self.xi_f));
        Ok(-v)
    }

    /// Pang form on the generators of a block.
    pub fn pang_matrix(&self, role: Role) -> Matrix {
        let idx = self.geom.indices(role);
        let mut m = Matrix::zeros(self.geom.chart(), idx.len(), idx.len());
        for (i, &a) in idx.iter().enumerate() {
            for (j, &b) in idx.iter().enumerate() {
                let v = self.pang_form(role, &self.unit(a), &self.unit(b)).expect("block generators");
                m.set(i, j, v);
            }
        }
        m
    }

    /// Flat / degenerate / non-degenerate classification of a Legendrian block.
    pub fn classify(&self, role: Role) -> Result<Classification, ContactError> {
        if !self.block_is_legendrian(role) {
            return Err(ContactError::NotLegendrian);
        }
        let idx = self.geom.indices(role);
        let mut witnesses = Vec::new();
        let mut all_zero = true;
        for &a in &idx {
            let br = self.geom.bracket(&self.xi_f, &self.unit(a));
            let outside: Vec<Scalar> = (0..br.len())
                .map(|c| if idx.contains(&c) { Scalar::zero(self.geom.chart()) } else { br[c].clone() })
                .collect();
            all_zero &= vec_is_zero(&outside);
            witnesses.push((alloc::format!("[ξ,{}] outside block", self.name(a)), self.fmt(&outside)));
        }
        let pang = self.pang_matrix(role);
        let verdict = if pang.is_zero() {
            Flatness::Flat
        } else if pang.det().is_zero() {
            Flatness::Degenerate
        } else {
            Flatness::NonDegenerate
        };
        Ok(Classification { verdict, consistent: all_zero == (verdict == Flatness::Flat), witnesses, pang })
    }

    pub fn is_flat(&self, role: Role) -> bool {
        self.classify(role).map(|c| c.verdict == Flatness::Flat).unwrap_or(false)
    }

    pub fn block_is_integrable(&self, role: Role) -> bool {
        self.geom.block_is_integrable(role)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Flatness {
    Flat,
    Degenerate,
    NonDegenerate,
}

impl Flatness {
    pub fn as_str(self) -> &'static str {
        match self {
            Flatness::Flat => "flat",
            Flatness::Degenerate => "degenerate",
            Flatness::NonDegenerate => "non-degenerate",
        }
    }
}

/// Result of [`ContactMetricStructure::classify`]. The verdict is generic:
/// it is decided by identically-zero tests, so a distribution that is flat
/// only on a subvariety is reported by its behaviour on an open dense set.
#[derive(Clone, Debug)]
pub struct Classification {
    pub verdict: Flatness,
    /// The bracket criterion (all `[ξ,X]` stay in the block) agrees with the verdict.
    pub consistent: bool,
    pub witnesses: Vec<(String, String)>,
    pub pang: Matrix,
}
