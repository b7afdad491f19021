//! Vector fields, forms, endomorphisms and metrics with scalar coefficients.
//!
//! Components are taken along the chart basis: coordinate vector fields on a
//! coordinate chart, or the declared left-invariant frame on a Lie-frame chart.
//! Two-forms follow the convention `2 u∧v = u⊗v − v⊗u`, so
//! `(dx∧dy)(∂x, ∂y) = 1/2`.

mod frame;
mod matrix;
mod structure;

use alloc::string::String;
use alloc::vec::Vec;

use thiserror::Error;

use crate::scalar::{Backend, Chart, Scalar, ScalarError};

pub use frame::{format_frame_vector, vec_add, vec_is_zero, vec_scale, vec_sub, Frame, FrameGeometry, Role};
pub use matrix::{dot, Matrix};
pub use structure::StructureConstants;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum TensorError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("operands live on different charts")]
    ChartMismatch,
    #[error("expected {expected} components, found {found}")]
    Dimension { expected: usize, found: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("Gram matrix of the frame is degenerate")]
    DegenerateGram,
    #[error("chart has no relation")]
    NoRelation,
    #[error("vector field `{0}` is not tangent to the relation variety")]
    NotTangent(String),
    #[error("frame has no fields tagged {0:?}")]
    MissingRole(Role),
    #[error("structure constants: {0}")]
    Structure(String),
    #[error("{0} is not antisymmetric")]
    NotAntisymmetric(&'static str),
    #[error("{0} is not symmetric")]
    NotSymmetric(&'static str),
    #[error("spanning fields are linearly dependent")]
    Dependent,
}

fn parse_all(chart: &Chart, texts: &[&str]) -> Result<Vec<Scalar>, TensorError> {
    let v = texts.iter().map(|t| Scalar::parse(t, chart)).collect::<Result<Vec<_>, _>>()?;
    if v.len() != chart.dim() {
        return Err(TensorError::Dimension { expected: chart.dim(), found: v.len() });
    }
    Ok(v)
}

fn check_components(chart: &Chart, comps: &[Scalar]) -> Result<(), TensorError> {
    if comps.len() != chart.dim() {
        return Err(TensorError::Dimension { expected: chart.dim(), found: comps.len() });
    }
    if comps.iter().any(|c| !c.chart().same(chart)) {
        return Err(TensorError::ChartMismatch);
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VectorField {
    chart: Chart,
    comps: Vec<Scalar>,
}

impl VectorField {
    pub fn new(chart: &Chart, comps: Vec<Scalar>) -> Result<VectorField, TensorError> {
        check_components(chart, &comps)?;
        Ok(VectorField { chart: chart.clone(), comps })
    }

    pub fn parse(chart: &Chart, texts: &[&str]) -> Result<VectorField, TensorError> {
        Ok(VectorField { chart: chart.clone(), comps: parse_all(chart, texts)? })
    }

    pub fn zero(chart: &Chart) -> VectorField {
        VectorField { chart: chart.clone(), comps: alloc::vec![Scalar::zero(chart); chart.dim()] }
    }

    /// The `i`-th chart basis field.
    pub fn basis(chart: &Chart, i: usize) -> VectorField {
        let mut v = VectorField::zero(chart);
        v.comps[i] = Scalar::one(chart);
        v
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Scalar::is_zero)
    }

    /// Directional derivative `V(f)`. Zero for every scalar on a Lie frame.
    pub fn apply(&self, f: &Scalar) -> Scalar {
        match self.chart.backend() {
            Backend::LieFrame(_) => Scalar::zero(&self.chart),
            Backend::Coordinates => {
                let mut acc = Scalar::zero(&self.chart);
                if f.is_constant() {
                    return acc;
                }
                for (i, v) in self.comps.iter().enumerate() {
                    if !v.is_zero() {
                        acc = &acc + &(v * &f.partial(i));
                    }
                }
                acc
            }
        }
    }

    pub fn lie_bracket(&self, other: &VectorField) -> Result<VectorField, TensorError> {
        if !self.chart.same(&other.chart) {
            return Err(TensorError::ChartMismatch);
        }
        let comps = match self.chart.backend() {
            Backend::Coordinates => self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(v, w)| &self.apply(w) - &other.apply(v))
                .collect(),
            Backend::LieFrame(c) => c.bracket_components(&self.comps, &other.comps, &self.chart),
        };
        Ok(VectorField { chart: self.chart.clone(), comps })
    }

    pub fn add(&self, other: &VectorField) -> VectorField {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a + b).collect();
        VectorField { chart: self.chart.clone(), comps }
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a - b).collect();
        VectorField { chart: self.chart.clone(), comps }
    }

    pub fn scale(&self, f: &Scalar) -> VectorField {
        VectorField { chart: self.chart.clone(), comps: self.comps.iter().map(|a| a * f).collect() }
    }

    /// True iff `V` annihilates the chart relation modulo the relation.
    pub fn check_tangency(&self) -> Result<bool, TensorError> {
        let rel = self.chart.relation_poly().ok_or(TensorError::NoRelation)?;
        let mut acc = Scalar::zero(&self.chart);
        for (i, v) in self.comps.iter().enumerate() {
            let d = Scalar::from_poly(&self.chart, rel.derivative(i));
            acc = &acc + &(v * &d);
        }
        Ok(acc.is_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct OneForm {
    chart: Chart,
    comps: Vec<Scalar>,
}

impl OneForm {
    pub fn new(chart: &Chart, comps: Vec<Scalar>) -> Result<OneForm, TensorError> {
        check_components(chart, &comps)?;
        Ok(OneForm { chart: chart.clone(), comps })
    }

    pub fn parse(chart: &Chart, texts: &[&str]) -> Result<OneForm, TensorError> {
        Ok(OneForm { chart: chart.clone(), comps: parse_all(chart, texts)? })
    }

    /// The differential `df`.
    pub fn differential(f: &Scalar) -> OneForm {
        let chart = f.chart();
        let comps = (0..chart.dim()).map(|i| VectorField::basis(chart, i).apply(f)).collect();
        OneForm { chart: chart.clone(), comps }
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn components(&self) -> &[Scalar] {
        &self.comps
    }

    pub fn apply(&self, v: &VectorField) -> Scalar {
        dot(self.comps.iter().zip(&v.comps), &self.chart)
    }

    /// `dα(V,W) = ½(V α(W) − W α(V) − α([V,W]))`.
    pub fn exterior_derivative(&self) -> TwoForm {
        let n = self.chart.dim();
        let basis: Vec<VectorField> = (0..n).map(|i| VectorField::basis(&self.chart, i)).collect();
        let half = Scalar::ratio(&self.chart, 1, 2);
        let mut m = Matrix::zeros(&self.chart, n, n);
        for i in 0..n {
            for j in i + 1..n {
                let br = basis[i].lie_bracket(&basis[j]).expect("same chart");
                let v = &(&basis[i].apply(&self.comps[j]) - &basis[j].apply(&self.comps[i])) - &self.apply(&br);
                let v = &v * &half;
                m.set(j, i, -&v);
                m.set(i, j, v);
            }
        }
        TwoForm { m }
    }

    /// `(𝓛_V α)(W) = V(α(W)) − α([V,W])`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<OneForm, TensorError> {
        let n = self.chart.dim();
        let mut comps = Vec::with_capacity(n);
        for i in 0..n {
            let e = VectorField::basis(&self.chart, i);
            comps.push(&v.apply(&self.comps[i]) - &self.apply(&v.lie_bracket(&e)?));
        }
        Ok(OneForm { chart: self.chart.clone(), comps })
    }
}

/// Antisymmetric bilinear form; `ω(V,W) = Σ m_ij vⁱ wʲ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoForm {
    m: Matrix,
}

impl TwoForm {
    pub fn new(m: Matrix) -> Result<TwoForm, TensorError> {
        if !m.is_square() || m.rows() != m.chart().dim() {
            return Err(TensorError::Dimension { expected: m.chart().dim(), found: m.rows() });
        }
        if !m.symmetry_defects(-1).is_empty() {
            return Err(TensorError::NotAntisymmetric("two-form"));
        }
        Ok(TwoForm { m })
    }

    /// `α∧β = ½(α⊗β − β⊗α)`.
    pub fn wedge(a: &OneForm, b: &OneForm) -> TwoForm {
        let chart = &a.chart;
        let n = chart.dim();
        let half = Scalar::ratio(chart, 1, 2);
        let mut m = Matrix::zeros(chart, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = &(&a.comps[i] * &b.comps[j]) - &(&b.comps[i] * &a.comps[j]);
                m.set(i, j, &v * &half);
            }
        }
        TwoForm { m }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn chart(&self) -> &Chart {
        self.m.chart()
    }

    pub fn apply(&self, v: &VectorField, w: &VectorField) -> Scalar {
        self.m.bilinear(&v.comps, &w.comps)
    }

    pub fn add(&self, other: &TwoForm) -> TwoForm {
        TwoForm { m: self.m.add(&other.m) }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }
}

/// Endomorphism field; `(A V)ⁱ = Σ m_ij vʲ`.
#[derive(Clone, Debug, PartialEq)]
pub struct EndoField {
    m: Matrix,
}

impl EndoField {
    pub fn new(m: Matrix) -> Result<EndoField, TensorError> {
        if !m.is_square() || m.rows() != m.chart().dim() {
            return Err(TensorError::Dimension { expected: m.chart().dim(), found: m.rows() });
        }
        Ok(EndoField { m })
    }

    pub fn parse(chart: &Chart, rows: &[Vec<&str>]) -> Result<EndoField, TensorError> {
        EndoField::new(Matrix::parse(chart, rows)?)
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn chart(&self) -> &Chart {
        self.m.chart()
    }

    pub fn apply(&self, v: &VectorField) -> VectorField {
        VectorField { chart: v.chart.clone(), comps: self.m.mul_vec(&v.comps) }
    }

    pub fn compose(&self, other: &EndoField) -> EndoField {
        EndoField { m: self.m.mul(&other.m) }
    }

    /// `(𝓛_V A)W = [V, AW] − A[V,W]`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<EndoField, TensorError> {
        let chart = self.chart();
        let n = chart.dim();
        let mut cols = Vec::with_capacity(n);
        for j in 0..n {
            let e = VectorField::basis(chart, j);
            let col = v.lie_bracket(&self.apply(&e))?.sub(&self.apply(&v.lie_bracket(&e)?));
            cols.push(col.comps);
        }
        Ok(EndoField { m: Matrix::from_columns(chart, &cols)? })
    }
}

/// Symmetric bilinear form; `g(V,W) = Σ m_ij vⁱ wʲ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricField {
    m: Matrix,
}

impl MetricField {
    pub fn new(m: Matrix) -> Result<MetricField, TensorError> {
        if !m.is_square() || m.rows() != m.chart().dim() {
            return Err(TensorError::Dimension { expected: m.chart().dim(), found: m.rows() });
        }
        if !m.symmetry_defects(1).is_empty() {
            return Err(TensorError::NotSymmetric("metric"));
        }
        Ok(MetricField { m })
    }

    pub fn parse(chart: &Chart, rows: &[Vec<&str>]) -> Result<MetricField, TensorError> {
        MetricField::new(Matrix::parse(chart, rows)?)
    }

    /// The identity matrix in the chart basis.
    pub fn euclidean(chart: &Chart) -> MetricField {
        MetricField { m: Matrix::identity(chart, chart.dim()) }
    }

    pub fn matrix(&self) -> &Matrix {
        &self.m
    }

    pub fn chart(&self) -> &Chart {
        self.m.chart()
    }

    pub fn apply(&self, v: &VectorField, w: &VectorField) -> Scalar {
        self.m.bilinear(&v.comps, &w.comps)
    }

    pub fn scale(&self, s: &Scalar) -> MetricField {
        MetricField { m: self.m.scale(s) }
    }

    /// `(𝓛_V g)(A,B) = V(g(A,B)) − g([V,A],B) − g(A,[V,B])`.
    pub fn lie_derivative(&self, v: &VectorField) -> Result<MetricField, TensorError> {
        let chart = self.chart();
        let n = chart.dim();
        let basis: Vec<VectorField> = (0..n).map(|i| VectorField::basis(chart, i)).collect();
        let brackets = basis.iter().map(|e| v.lie_bracket(e)).collect::<Result<Vec<_>, _>>()?;
        let mut m = Matrix::zeros(chart, n, n);
        for i in 0..n {
            for j in i..n {
                let s = &(&v.apply(self.m.get(i, j)) - &self.apply(&brackets[i], &basis[j]))
                    - &self.apply(&basis[i], &brackets[j]);
                m.set(j, i, s.clone());
                m.set(i, j, s);
            }
        }
        Ok(MetricField { m })
    }
}

/// A distribution given by spanning vector fields.
#[derive(Clone, Debug, PartialEq)]
pub struct Distribution {
    fields: Vec<VectorField>,
}

impl Distribution {
    pub fn new(fields: Vec<VectorField>) -> Result<Distribution, TensorError> {
        let Some(first) = fields.first() else {
            return Err(TensorError::Dimension { expected: 1, found: 0 });
        };
        let chart = first.chart().clone();
        if fields.iter().any(|f| !f.chart().same(&chart)) {
            return Err(TensorError::ChartMismatch);
        }
        let d = Distribution { fields };
        if d.gram(&MetricField::euclidean(&chart)).det().is_zero() {
            return Err(TensorError::Dependent);
        }
        Ok(d)
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn rank(&self) -> usize {
        self.fields.len()
    }

    pub fn chart(&self) -> &Chart {
        self.fields[0].chart()
    }

    fn gram(&self, pairing: &MetricField) -> Matrix {
        let k = self.fields.len();
        let mut m = Matrix::zeros(self.chart(), k, k);
        for i in 0..k {
            for j in 0..k {
                m.set(i, j, pairing.apply(&self.fields[i], &self.fields[j]));
            }
        }
        m
    }

    /// The part of `v` orthogonal (w.r.t. `pairing`) to the span.
    pub fn residual(&self, v: &VectorField, pairing: &MetricField) -> Result<VectorField, TensorError> {
        let ginv = self.gram(pairing).inverse().map_err(|_| TensorError::DegenerateGram)?;
        let rhs: Vec<Scalar> = self.fields.iter().map(|f| pairing.apply(v, f)).collect();
        let c = ginv.mul_vec(&rhs);
        let mut r = v.clone();
        for (ci, f) in c.iter().zip(&self.fields) {
            r = r.sub(&f.scale(ci));
        }
        Ok(r)
    }

    /// Frobenius test: every bracket of spanning fields has zero residual.
    pub fn is_integrable_with(&self, pairing: &MetricField) -> Result<bool, TensorError> {
        for i in 0..self.fields.len() {
            for j in i + 1..self.fields.len() {
                let b = self.fields[i].lie_bracket(&self.fields[j])?;
                if !self.residual(&b, pairing)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Frobenius test with the Euclidean pairing of the chart basis.
    pub fn is_integrable(&self) -> Result<bool, TensorError> {
        self.is_integrable_with(&MetricField::euclidean(self.chart()))
    }
}
