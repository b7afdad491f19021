use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::scalar::{is_identifier, Chart, Rational, Scalar};

use super::TensorError;

/// Structure constants `[e_a, e_b] = Σ_k c[a][b][k] e_k` of a Lie algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    names: Vec<String>,
    table: Vec<Vec<Vec<Rational>>>,
}

impl StructureConstants {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<StructureConstants, TensorError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if !is_identifier(n) || names[..i].contains(n) {
                return Err(TensorError::Structure(alloc::format!("bad or duplicate basis name `{n}`")));
            }
        }
        let d = names.len();
        let table = alloc::vec![alloc::vec![alloc::vec![Rational::zero(); d]; d]; d];
        Ok(StructureConstants { names, table })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Sets `[e_a, e_b]` and, by antisymmetry, `[e_b, e_a]`.
    pub fn set_bracket(&mut self, a: usize, b: usize, value: Vec<Rational>) -> Result<(), TensorError> {
        if value.len() != self.dim() {
            return Err(TensorError::Dimension { expected: self.dim(), found: value.len() });
        }
        if a == b {
            if value.iter().any(|c| !c.is_zero()) {
                return Err(TensorError::Structure(alloc::format!(
                    "[{0}, {0}] must vanish",
                    self.names[a]
                )));
            }
            return Ok(());
        }
        self.table[b][a] = value.iter().map(|c| -c).collect();
        self.table[a][b] = value;
        Ok(())
    }

    pub fn bracket(&self, a: usize, b: usize) -> &[Rational] {
        &self.table[a][b]
    }

    pub(crate) fn bracket_components(&self, v: &[Scalar], w: &[Scalar], chart: &Chart) -> Vec<Scalar> {
        let d = self.dim();
        let mut out = alloc::vec![Scalar::zero(chart); d];
        for a in 0..d {
            if v[a].is_zero() {
                continue;
            }
            for b in 0..d {
                if w[b].is_zero() || a == b {
                    continue;
                }
                let vw = &v[a] * &w[b];
                for (k, c) in self.table[a][b].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] = &out[k] + &vw.scale(c);
                    }
                }
            }
        }
        out
    }

    /// Index triples `(a, b, c)` with `a < b < c` violating the Jacobi identity.
    pub fn jacobi_failures(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let nested = |x: usize, y: usize, z: usize, k: usize| -> Rational {
            let mut acc = Rational::zero();
            for m in 0..d {
                let c = &self.table[x][y][m];
                if !c.is_zero() {
                    acc += c * &self.table[m][z][k];
                }
            }
            acc
        };
        let mut out = Vec::new();
        for a in 0..d {
            for b in a + 1..d {
                for c in b + 1..d {
                    let bad = (0..d).any(|k| !(nested(a, b, c, k) + nested(b, c, a, k) + nested(c, a, b, k)).is_zero());
                    if bad {
                        out.push((a, b, c));
                    }
                }
            }
        }
        out
    }
}
