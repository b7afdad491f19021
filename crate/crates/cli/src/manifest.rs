//! JSON manifests describing a contact metric or symplectic structure.
//!
//! Expressions travel as strings in the scalar grammar. On a Lie frame chart
//! the components are constants with respect to the left-invariant basis.
//!
//! ```json
//! {
//!   "schema_version": 1,
//!   "name": "s3",
//!   "chart": { "backend": "coordinates", "coords": ["x1", "x2", "x3", "x4"],
//!              "relation": "x1^2 + x2^2 + x3^2 + x4^2 - 1" },
//!   "contact": { "eta": [...], "xi": [...], "phi": [[...]], "g": [[...]],
//!                "l": [{ "name": "X", "components": [...] }], "q": [...], "reeb": "xi" }
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use sasaki_core::catalog::{CatalogEntry, Expectation, Origin, Property, Subject};
use sasaki_core::contact::{ContactMetricStructure, NamedFields};
use sasaki_core::scalar::{rational, Chart, Rational, Scalar};
use sasaki_core::symplectic::SymplecticStructure;
use sasaki_core::tensor::{EndoField, FrameGeometry, Matrix, MetricField, OneForm, Role, StructureConstants, TwoForm, VectorField};

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema_version: u32,
    pub name: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    pub chart: ChartSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contact: Option<ContactSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symplectic: Option<SymplecticSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub expected: Vec<ExpectationSpec>,
    /// Suites run by `check` when no `--suite` is given.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub checks: Vec<String>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Backend {
    #[default]
    Coordinates,
    LieFrame,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ChartSpec {
    #[serde(default)]
    pub backend: Backend,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub coords: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relation: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub brackets: Vec<BracketSpec>,
}

/// `[left, right] = Σ value[name]·name`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketSpec {
    pub left: String,
    pub right: String,
    pub value: BTreeMap<String, String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FieldSpec {
    pub name: String,
    pub components: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContactSpec {
    pub eta: Vec<String>,
    pub xi: Vec<String>,
    pub phi: Vec<Vec<String>>,
    pub g: Vec<Vec<String>>,
    pub l: Vec<FieldSpec>,
    pub q: Vec<FieldSpec>,
    #[serde(default = "default_reeb")]
    pub reeb: String,
}

fn default_reeb() -> String {
    String::from("xi")
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymplecticSpec {
    pub omega: Vec<Vec<String>>,
    pub f: Vec<FieldSpec>,
    pub g: Vec<FieldSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectationSpec {
    pub property: String,
    pub value: bool,
    pub origin: String,
}

impl Manifest {
    /// Parses JSON, reporting schema violations with their path.
    pub fn from_json(text: &str) -> Result<Manifest, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let m: Manifest = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            CliError::manifest(path, e.into_inner())
        })?;
        if m.schema_version != SCHEMA_VERSION {
            return Err(CliError::manifest(
                "schema_version",
                format!("unsupported version {}, expected {SCHEMA_VERSION}", m.schema_version),
            ));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    /// Builds the structure, resolving names and parsing every expression.
    pub fn build(&self) -> Result<CatalogEntry, CliError> {
        let chart = self.chart.build()?;
        let subject = match (&self.contact, &self.symplectic) {
            (Some(c), None) => Subject::Contact(c.build(&chart)?),
            (None, Some(s)) => Subject::Symplectic(s.build(&chart)?),
            _ => return Err(CliError::manifest(".", "give exactly one of `contact` and `symplectic`")),
        };
        let expected = self
            .expected
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let property = Property::from_name(&e.property)
                    .ok_or_else(|| CliError::manifest(format!("expected[{i}].property"), format!("unknown property `{}`", e.property)))?;
                let origin = Origin::from_name(&e.origin)
                    .ok_or_else(|| CliError::manifest(format!("expected[{i}].origin"), format!("unknown origin `{}`", e.origin)))?;
                Ok(Expectation { property, value: e.value, origin })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(CatalogEntry {
            id: self.name.clone(),
            params: self.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect(),
            subject,
            expected,
        })
    }

    /// Manifest reproducing `entry` exactly.
    pub fn from_entry(entry: &CatalogEntry) -> Manifest {
        let (chart, contact, symplectic) = match &entry.subject {
            Subject::Contact(s) => (s.geometry().chart(), Some(ContactSpec::from_structure(s)), None),
            Subject::Symplectic(s) => (s.geometry().chart(), None, Some(SymplecticSpec::from_structure(s))),
        };
        Manifest {
            schema_version: SCHEMA_VERSION,
            name: entry.id.clone(),
            params: entry.params.iter().cloned().collect(),
            chart: ChartSpec::from_chart(chart),
            contact,
            symplectic,
            expected: entry
                .expected
                .iter()
                .map(|e| ExpectationSpec {
                    property: e.property.as_str().to_string(),
                    value: e.value,
                    origin: e.origin.as_str().to_string(),
                })
                .collect(),
            checks: Vec::new(),
        }
    }
}

impl ChartSpec {
    fn build(&self) -> Result<Chart, CliError> {
        match self.backend {
            Backend::Coordinates => {
                if !self.basis.is_empty() || !self.brackets.is_empty() {
                    return Err(CliError::manifest("chart", "`basis` and `brackets` need backend `lie-frame`"));
                }
                match &self.relation {
                    Some(r) => Chart::embedded(self.coords.clone(), r).map_err(|e| CliError::manifest("chart.relation", e)),
                    None => Chart::coordinates(self.coords.clone()).map_err(|e| CliError::manifest("chart.coords", e)),
                }
            }
            Backend::LieFrame => {
                if !self.coords.is_empty() || self.relation.is_some() {
                    return Err(CliError::manifest("chart", "`coords` and `relation` need backend `coordinates`"));
                }
                let mut sc = StructureConstants::new(self.basis.clone()).map_err(|e| CliError::manifest("chart.basis", e))?;
                let index = |path: String, name: &str| {
                    sc.index(name).ok_or_else(|| CliError::manifest(path, format!("unknown basis element `{name}`")))
                };
                let mut table = Vec::with_capacity(self.brackets.len());
                for (i, b) in self.brackets.iter().enumerate() {
                    let here = format!("chart.brackets[{i}]");
                    let (l, r) = (index(format!("{here}.left"), &b.left)?, index(format!("{here}.right"), &b.right)?);
                    let mut value = vec![rational(0, 1); self.basis.len()];
                    for (name, text) in &b.value {
                        let path = format!("{here}.value.{name}");
                        let k = index(path.clone(), name)?;
                        value[k] = parse_rational(text).map_err(|m| CliError::manifest(path, m))?;
                    }
                    table.push((here, l, r, value));
                }
                for (here, l, r, value) in table {
                    sc.set_bracket(l, r, value).map_err(|e| CliError::manifest(here, e))?;
                }
                if let Some(&(a, b, c)) = sc.jacobi_failures().first() {
                    let n = sc.names();
                    return Err(CliError::manifest(
                        "chart.brackets",
                        format!("Jacobi identity fails on ({}, {}, {})", n[a], n[b], n[c]),
                    ));
                }
                Ok(Chart::lie_frame(sc))
            }
        }
    }

    fn from_chart(chart: &Chart) -> ChartSpec {
        match chart.structure_constants() {
            Some(sc) => {
                let names = sc.names();
                let mut brackets = Vec::new();
                for a in 0..sc.dim() {
                    for b in a + 1..sc.dim() {
                        let value: BTreeMap<String, String> = sc
                            .bracket(a, b)
                            .iter()
                            .zip(names)
                            .filter(|(q, _)| !num_is_zero(q))
                            .map(|(q, n)| (n.clone(), rational_text(q)))
                            .collect();
                        if !value.is_empty() {
                            brackets.push(BracketSpec { left: names[a].clone(), right: names[b].clone(), value });
                        }
                    }
                }
                ChartSpec { backend: Backend::LieFrame, coords: Vec::new(), relation: None, basis: names.to_vec(), brackets }
            }
            None => ChartSpec {
                backend: Backend::Coordinates,
                coords: chart.coords().to_vec(),
                relation: chart.relation_expr(),
                basis: Vec::new(),
                brackets: Vec::new(),
            },
        }
    }
}

fn num_is_zero(q: &Rational) -> bool {
    *q == rational(0, 1)
}

fn rational_text(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

fn parse_rational(text: &str) -> Result<Rational, String> {
    let empty = Chart::coordinates(Vec::<String>::new()).expect("empty chart");
    let s = Scalar::parse(text, &empty).map_err(|e| e.to_string())?;
    s.constant_value().ok_or_else(|| format!("`{text}` is not a rational constant"))
}

fn scalar(chart: &Chart, path: &str, text: &str) -> Result<Scalar, CliError> {
    Scalar::parse(text, chart).map_err(|e| CliError::manifest(path, e))
}

fn components(chart: &Chart, path: &str, texts: &[String]) -> Result<Vec<Scalar>, CliError> {
    if texts.len() != chart.dim() {
        return Err(CliError::manifest(path, format!("expected {} components, got {}", chart.dim(), texts.len())));
    }
    texts.iter().enumerate().map(|(i, t)| scalar(chart, &format!("{path}[{i}]"), t)).collect()
}

fn matrix(chart: &Chart, path: &str, rows: &[Vec<String>]) -> Result<Matrix, CliError> {
    if rows.len() != chart.dim() {
        return Err(CliError::manifest(path, format!("expected {} rows, got {}", chart.dim(), rows.len())));
    }
    let rows = rows
        .iter()
        .enumerate()
        .map(|(i, r)| components(chart, &format!("{path}[{i}]"), r))
        .collect::<Result<Vec<_>, _>>()?;
    Matrix::from_rows(chart, rows).map_err(|e| CliError::manifest(path, e))
}

fn fields(chart: &Chart, path: &str, specs: &[FieldSpec]) -> Result<NamedFields, CliError> {
    specs
        .iter()
        .enumerate()
        .map(|(i, f)| {
            let here = format!("{path}[{i}].components");
            let v = VectorField::new(chart, components(chart, &here, &f.components)?).map_err(|e| CliError::manifest(&here, e))?;
            Ok((f.name.clone(), v))
        })
        .collect()
}

fn texts(v: &[Scalar]) -> Vec<String> {
    v.iter().map(Scalar::to_expr).collect()
}

fn matrix_texts(m: &Matrix) -> Vec<Vec<String>> {
    m.to_rows().iter().map(|r| texts(r)).collect()
}

fn field_specs(geom: &FrameGeometry, role: Role) -> Vec<FieldSpec> {
    geom.indices(role)
        .into_iter()
        .map(|a| FieldSpec { name: geom.names()[a].clone(), components: texts(geom.field(a).components()) })
        .collect()
}

impl ContactSpec {
    fn build(&self, chart: &Chart) -> Result<ContactMetricStructure, CliError> {
        let eta = OneForm::new(chart, components(chart, "contact.eta", &self.eta)?).map_err(|e| CliError::manifest("contact.eta", e))?;
        let xi = VectorField::new(chart, components(chart, "contact.xi", &self.xi)?).map_err(|e| CliError::manifest("contact.xi", e))?;
        let phi = EndoField::new(matrix(chart, "contact.phi", &self.phi)?).map_err(|e| CliError::manifest("contact.phi", e))?;
        let g = MetricField::new(matrix(chart, "contact.g", &self.g)?).map_err(|e| CliError::manifest("contact.g", e))?;
        let l = fields(chart, "contact.l", &self.l)?;
        let q = fields(chart, "contact.q", &self.q)?;
        ContactMetricStructure::new(eta, xi, phi, g, l, q, &self.reeb).map_err(|e| CliError::manifest("contact", e))
    }

    fn from_structure(s: &ContactMetricStructure) -> ContactSpec {
        let geom = s.geometry();
        ContactSpec {
            eta: texts(s.eta_form().components()),
            xi: texts(s.reeb_field().components()),
            phi: matrix_texts(s.phi_field().matrix()),
            g: matrix_texts(s.metric_field().matrix()),
            l: field_specs(geom, Role::L),
            q: field_specs(geom, Role::Q),
            reeb: geom.names()[s.reeb()].clone(),
        }
    }
}

impl SymplecticSpec {
    fn build(&self, chart: &Chart) -> Result<SymplecticStructure, CliError> {
        let omega = TwoForm::new(matrix(chart, "symplectic.omega", &self.omega)?).map_err(|e| CliError::manifest("symplectic.omega", e))?;
        let f = fields(chart, "symplectic.f", &self.f)?;
        let g = fields(chart, "symplectic.g", &self.g)?;
        SymplecticStructure::new(omega, f, g).map_err(|e| CliError::manifest("symplectic", e))
    }

    fn from_structure(s: &SymplecticStructure) -> SymplecticSpec {
        let geom = s.geometry();
        SymplecticSpec { omega: matrix_texts(s.omega().matrix()), f: field_specs(geom, Role::F), g: field_specs(geom, Role::G) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use sasaki_core::catalog;

    #[test]
    fn schema_errors_carry_their_path() {
        let text = r#"{"schema_version": 1, "name": "t", "chart": {"coords": ["x"]}, "contact": {"eta": "dz"}}"#;
        match Manifest::from_json(text) {
            Err(CliError::Manifest { path, .. }) => assert_eq!(path, "contact.eta"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn expression_errors_carry_their_path() {
        let mut m = Manifest::from_entry(&catalog::lookup("r2n1", None, None).unwrap());
        m.contact.as_mut().unwrap().phi[1][0] = String::from("x +");
        match m.build() {
            Err(CliError::Manifest { path, .. }) => assert_eq!(path, "contact.phi[1][0]"),
            other => panic!("unexpected {:?}", other.map(|e| e.label())),
        }
    }

    #[test]
    fn unsupported_version_is_rejected() {
        let mut m = Manifest::from_entry(&catalog::lookup("s3", None, None).unwrap());
        m.schema_version = 7;
        assert!(matches!(Manifest::from_json(&m.to_json()), Err(CliError::Manifest { .. })));
    }

    #[test]
    fn lie_frame_round_trips() {
        let entry = catalog::lookup("kappa-mu", None, None).unwrap();
        let m = Manifest::from_entry(&entry);
        assert_eq!(m.chart.backend, Backend::LieFrame);
        let back = Manifest::from_json(&m.to_json()).unwrap();
        assert_eq!(back, m);
        assert_eq!(Manifest::from_entry(&back.build().unwrap()), m);
    }

    #[test]
    fn failing_jacobi_is_an_input_error() {
        let mut m = Manifest::from_entry(&catalog::lookup("kappa-mu", None, None).unwrap());
        m.chart.brackets[0].value.insert(String::from("xi"), String::from("5"));
        match m.build() {
            Err(CliError::Manifest { path, message }) => {
                assert_eq!(path, "chart.brackets");
                assert!(message.contains("Jacobi"));
            }
            other => panic!("unexpected {:?}", other.map(|e| e.label())),
        }
    }
}
