//! Frames and frame-level calculus.
//!
//! A [`FrameGeometry`] fixes an ordered frame `e_a` together with a pairing
//! used to expand arbitrary fields in it. Vectors are then plain coefficient
//! lists `v = Σ vᵃ e_a`, and brackets use the structure functions
//! `[e_a, e_b] = Σ_c C^c_ab e_c`, computed once.

use alloc::string::String;
use alloc::vec::Vec;

use crate::scalar::{Chart, Scalar};

use super::{dot, Matrix, MetricField, TensorError, VectorField};

/// Block membership of a frame element.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    /// First Legendrian block.
    L,
    /// Conjugate Legendrian block.
    Q,
    /// The Reeb direction.
    Reeb,
    /// First Lagrangian block.
    F,
    /// Second Lagrangian block.
    G,
    Untagged,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Frame {
    names: Vec<String>,
    fields: Vec<VectorField>,
    roles: Vec<Role>,
}

impl Frame {
    pub fn new(entries: Vec<(String, VectorField, Role)>) -> Result<Frame, TensorError> {
        let mut names = Vec::with_capacity(entries.len());
        let mut fields = Vec::with_capacity(entries.len());
        let mut roles = Vec::with_capacity(entries.len());
        for (n, f, r) in entries {
            if names.contains(&n) {
                return Err(TensorError::Structure(alloc::format!("duplicate frame name `{n}`")));
            }
            names.push(n);
            fields.push(f);
            roles.push(r);
        }
        let Some(first) = fields.first() else {
            return Err(TensorError::Dimension { expected: 1, found: 0 });
        };
        let chart = first.chart().clone();
        if fields.iter().any(|f| !f.chart().same(&chart)) {
            return Err(TensorError::ChartMismatch);
        }
        Ok(Frame { names, fields, roles })
    }

    /// The chart basis itself, with the given roles.
    pub fn chart_basis(chart: &Chart, roles: Vec<Role>) -> Result<Frame, TensorError> {
        if roles.len() != chart.dim() {
            return Err(TensorError::Dimension { expected: chart.dim(), found: roles.len() });
        }
        let entries = roles
            .into_iter()
            .enumerate()
            .map(|(i, r)| (chart.basis_names()[i].clone(), VectorField::basis(chart, i), r))
            .collect();
        Frame::new(entries)
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn fields(&self) -> &[VectorField] {
        &self.fields
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn len(&self) -> usize {
        self.fields.len()
    }

    pub fn is_empty(&self) -> bool {
        self.fields.is_empty()
    }

    pub fn chart(&self) -> &Chart {
        self.fields[0].chart()
    }
}

#[derive(Clone, Debug)]
pub struct FrameGeometry {
    frame: Frame,
    pairing: MetricField,
    gram: Matrix,
    gram_inv: Matrix,
    structure: Vec<Vec<Vec<Scalar>>>,
}

impl FrameGeometry {
    /// Precomputes the Gram matrix of `frame` under `pairing`, its inverse and
    /// the structure functions. On an embedded chart every frame field must be
    /// tangent to the relation variety.
    pub fn new(frame: Frame, pairing: MetricField) -> Result<FrameGeometry, TensorError> {
        let chart = frame.chart().clone();
        if !pairing.chart().same(&chart) {
            return Err(TensorError::ChartMismatch);
        }
        if chart.relation().is_some() {
            for (n, f) in frame.names.iter().zip(&frame.fields) {
                if !f.check_tangency()? {
                    return Err(TensorError::NotTangent(n.clone()));
                }
            }
        }
        let d = frame.len();
        let mut gram = Matrix::zeros(&chart, d, d);
        for i in 0..d {
            for j in i..d {
                let s = pairing.apply(&frame.fields[i], &frame.fields[j]);
                gram.set(j, i, s.clone());
                gram.set(i, j, s);
            }
        }
        let gram_inv = gram.inverse().map_err(|_| TensorError::DegenerateGram)?;
        let mut geom = FrameGeometry { frame, pairing, gram, gram_inv, structure: Vec::new() };
        let mut structure = alloc::vec![alloc::vec![Vec::new(); d]; d];
        for a in 0..d {
            structure[a][a] = geom.zero();
            for b in a + 1..d {
                let br = geom.frame.fields[a].lie_bracket(&geom.frame.fields[b])?;
                let c = geom.expand(&br);
                structure[b][a] = c.iter().map(|s| -s).collect();
                structure[a][b] = c;
            }
        }
        geom.structure = structure;
        Ok(geom)
    }

    pub fn chart(&self) -> &Chart {
        self.frame.chart()
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn pairing(&self) -> &MetricField {
        &self.pairing
    }

    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn dim(&self) -> usize {
        self.frame.len()
    }

    pub fn names(&self) -> &[String] {
        &self.frame.names
    }

    pub fn role(&self, a: usize) -> Role {
        self.frame.roles[a]
    }

    pub fn indices(&self, role: Role) -> Vec<usize> {
        (0..self.dim()).filter(|&a| self.frame.roles[a] == role).collect()
    }

    pub fn reeb(&self) -> Option<usize> {
        self.frame.roles.iter().position(|&r| r == Role::Reeb)
    }

    pub fn zero(&self) -> Vec<Scalar> {
        alloc::vec![Scalar::zero(self.chart()); self.dim()]
    }

    pub fn unit(&self, a: usize) -> Vec<Scalar> {
        let mut v = self.zero();
        v[a] = Scalar::one(self.chart());
        v
    }

    /// Coefficients `c` with `Σ cᵃ e_a` the pairing-orthogonal projection of
    /// `v` onto the span of the frame (exactly `v` when the frame spans).
    pub fn expand(&self, v: &VectorField) -> Vec<Scalar> {
        let rhs: Vec<Scalar> = self.frame.fields.iter().map(|e| self.pairing.apply(v, e)).collect();
        self.gram_inv.mul_vec(&rhs)
    }

    pub fn recombine(&self, c: &[Scalar]) -> VectorField {
        let mut v = VectorField::zero(self.chart());
        for (ci, e) in c.iter().zip(&self.frame.fields) {
            if !ci.is_zero() {
                v = v.add(&e.scale(ci));
            }
        }
        v
    }

    pub fn field(&self, a: usize) -> &VectorField {
        &self.frame.fields[a]
    }

    /// `e_a(f)`.
    pub fn derive(&self, a: usize, f: &Scalar) -> Scalar {
        self.frame.fields[a].apply(f)
    }

    /// `v(f)` for a frame vector `v`.
    pub fn derive_along(&self, v: &[Scalar], f: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(self.chart());
        if f.is_constant() {
            return acc;
        }
        for (a, va) in v.iter().enumerate() {
            if !va.is_zero() {
                acc = &acc + &(va * &self.derive(a, f));
            }
        }
        acc
    }

    /// Frame coefficients of `[e_a, e_b]`.
    pub fn structure(&self, a: usize, b: usize) -> &[Scalar] {
        &self.structure[a][b]
    }

    /// `[v, w]ᶜ = v(wᶜ) − w(vᶜ) + Σ vᵃ wᵇ Cᶜ_ab`.
    pub fn bracket(&self, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let d = self.dim();
        let mut out: Vec<Scalar> = (0..d).map(|c| &self.derive_along(v, &w[c]) - &self.derive_along(w, &v[c])).collect();
        for a in 0..d {
            if v[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if a == b || w[b].is_zero() {
                    continue;
                }
                let vw = &v[a] * &w[b];
                for (c, s) in self.structure[a][b].iter().enumerate() {
                    if !s.is_zero() {
                        out[c] = &out[c] + &(&vw * s);
                    }
                }
            }
        }
        out
    }

    /// Keeps the components whose role is in `roles`.
    pub fn project(&self, v: &[Scalar], roles: &[Role]) -> Vec<Scalar> {
        v.iter()
            .enumerate()
            .map(|(a, s)| if roles.contains(&self.frame.roles[a]) { s.clone() } else { Scalar::zero(self.chart()) })
            .collect()
    }

    pub fn require(&self, role: Role) -> Result<Vec<usize>, TensorError> {
        let idx = self.indices(role);
        if idx.is_empty() {
            return Err(TensorError::MissingRole(role));
        }
        Ok(idx)
    }

    /// Frobenius test for the span of a block: no bracket of two block
    /// elements has a component outside the block.
    pub fn block_is_integrable(&self, role: Role) -> bool {
        let idx = self.indices(role);
        idx.iter().all(|&a| {
            idx.iter().all(|&b| {
                self.structure[a][b].iter().enumerate().all(|(c, s)| idx.contains(&c) || s.is_zero())
            })
        })
    }

    /// Frame vector display, e.g. `2*Y - xi`.
    pub fn format(&self, v: &[Scalar]) -> String {
        format_frame_vector(self.names(), v)
    }

    pub fn dot(&self, a: &[Scalar], b: &[Scalar]) -> Scalar {
        dot(a.iter().zip(b), self.chart())
    }
}

pub fn format_frame_vector(names: &[String], v: &[Scalar]) -> String {
    let mut out = String::new();
    for (s, name) in v.iter().zip(names) {
        if s.is_zero() {
            continue;
        }
        let (neg, mag) = match s.constant_value() {
            Some(q) if q < num_traits::Zero::zero() => (true, Scalar::constant(s.chart(), -q)),
            _ => (false, s.clone()),
        };
        let term = if mag.is_one() {
            name.clone()
        } else if mag.is_constant() {
            alloc::format!("{}*{name}", mag.to_expr())
        } else {
            alloc::format!("({})*{name}", mag.to_expr())
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&term);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

pub fn vec_add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn vec_sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn vec_scale(a: &[Scalar], s: &Scalar) -> Vec<Scalar> {
    a.iter().map(|x| x * s).collect()
}

pub fn vec_is_zero(a: &[Scalar]) -> bool {
    a.iter().all(Scalar::is_zero)
}
