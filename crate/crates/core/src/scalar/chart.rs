use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use super::poly::{Poly, Relation};
use super::{Scalar, ScalarError};
use crate::tensor::StructureConstants;

/// How vector fields on a chart are represented and differentiated.
#[derive(Clone, PartialEq, Debug)]
pub enum Backend {
    /// Components along coordinate vector fields; scalars are functions of the coordinates.
    Coordinates,
    /// Components along a left-invariant frame with constant structure constants;
    /// every scalar is a constant.
    LieFrame(StructureConstants),
}

#[derive(PartialEq, Debug)]
struct ChartData {
    coords: Vec<String>,
    relation: Option<Relation>,
    backend: Backend,
}

/// A coordinate system (optionally cut down by one polynomial relation) or a
/// Lie-algebra frame. Cheap to clone; scalars and fields hold a handle.
#[derive(Clone)]
pub struct Chart(Arc<ChartData>);

impl fmt::Debug for Chart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Chart")
            .field("coords", &self.0.coords)
            .field("relation", &self.relation_expr())
            .field("lie_frame", &matches!(self.0.backend, Backend::LieFrame(_)))
            .finish()
    }
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn check_names(names: &[String]) -> Result<(), ScalarError> {
    for (i, n) in names.iter().enumerate() {
        if !is_identifier(n) {
            return Err(ScalarError::InvalidChart(alloc::format!("`{n}` is not an identifier")));
        }
        if names[..i].contains(n) {
            return Err(ScalarError::InvalidChart(alloc::format!("duplicate coordinate `{n}`")));
        }
    }
    Ok(())
}

impl Chart {
    pub fn coordinates<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Chart, ScalarError> {
        let coords: Vec<String> = names.into_iter().map(Into::into).collect();
        check_names(&coords)?;
        Ok(Chart(Arc::new(ChartData { coords, relation: None, backend: Backend::Coordinates })))
    }

    /// Chart on the zero set of `relation` inside the ambient coordinates.
    pub fn embedded<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
        relation: &str,
    ) -> Result<Chart, ScalarError> {
        let ambient = Chart::coordinates(names)?;
        let r = Scalar::parse(relation, &ambient)?;
        if !r.den().is_constant() {
            return Err(ScalarError::InvalidRelation(String::from("relation must be a polynomial")));
        }
        let poly = r.num().clone();
        let rel = Relation::new(poly).ok_or_else(|| {
            ScalarError::InvalidRelation(String::from(
                "relation must be nonconstant with a constant leading coefficient in some coordinate",
            ))
        })?;
        Ok(Chart(Arc::new(ChartData {
            coords: ambient.0.coords.clone(),
            relation: Some(rel),
            backend: Backend::Coordinates,
        })))
    }

    pub fn lie_frame(constants: StructureConstants) -> Chart {
        Chart(Arc::new(ChartData {
            coords: Vec::new(),
            relation: None,
            backend: Backend::LieFrame(constants),
        }))
    }

    /// Scalar variables (empty on a Lie frame).
    pub fn coords(&self) -> &[String] {
        &self.0.coords
    }

    pub fn nvars(&self) -> usize {
        self.0.coords.len()
    }

    /// Number of components of a vector field.
    pub fn dim(&self) -> usize {
        match &self.0.backend {
            Backend::Coordinates => self.0.coords.len(),
            Backend::LieFrame(c) => c.dim(),
        }
    }

    /// Names of the basis directions (coordinates or Lie frame elements).
    pub fn basis_names(&self) -> &[String] {
        match &self.0.backend {
            Backend::Coordinates => &self.0.coords,
            Backend::LieFrame(c) => c.names(),
        }
    }

    pub fn backend(&self) -> &Backend {
        &self.0.backend
    }

    pub fn structure_constants(&self) -> Option<&StructureConstants> {
        match &self.0.backend {
            Backend::LieFrame(c) => Some(c),
            Backend::Coordinates => None,
        }
    }

    pub fn relation(&self) -> Option<&Relation> {
        self.0.relation.as_ref()
    }

    pub fn relation_expr(&self) -> Option<String> {
        self.0.relation.as_ref().map(|r| r.poly().to_expr(&self.0.coords))
    }

    /// The relation as a scalar, unreduced (reduction would make it zero).
    pub fn relation_poly(&self) -> Option<&Poly> {
        self.0.relation.as_ref().map(Relation::poly)
    }

    pub fn coord_index(&self, name: &str) -> Option<usize> {
        self.0.coords.iter().position(|c| c == name)
    }

    pub fn basis_index(&self, name: &str) -> Option<usize> {
        self.basis_names().iter().position(|c| c == name)
    }

    pub fn same(&self, other: &Chart) -> bool {
        self == other
    }
}
