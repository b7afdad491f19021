//! Built-in structures with their expected properties.
//!
//! | id | structure |
//! |----|-----------|
//! | `r2n1` | standard Sasakian ℝ^{2n+1}, `L = ∂y`, `Q = ∂x + y∂z` |
//! | `s3` | unit sphere in ℝ⁴ with its standard Sasakian structure |
//! | `kappa-mu` | left-invariant (κ,μ) = (0,4) structure on a Lie group, n ≥ 3 |
//! | `darboux` | Darboux chart with `L = ∂y`, `Q = φL` |
//! | `darboux-verbatim` | as `darboux` with the unnormalized metric (negative control) |
//! | `perturbed-r3` | ℝ³ with `L = ∂y + f(∂x + y∂z)`, `Q = φL` |
//! | `r2n` | ℝ²ⁿ with `ω = Σ dx∧dy`, `F = ∂y`, `G = ∂x` |
//! | `perturbed-r2` | ℝ² with `F = ∂y`, `G = ∂x + y∂y` (non-metric negative control) |

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use thiserror::Error;

use crate::connection::{bi_legendrian, coincidence_flags, tanaka_webster, MetricConditions};
use crate::contact::{ContactError, ContactMetricStructure, NamedFields};
use crate::scalar::{rational, Chart, Scalar, ScalarError};
use crate::symplectic::{bi_lagrangian, kahler_from_flat_bilagrangian, SymplecticError, SymplecticStructure};
use crate::tensor::{EndoField, Matrix, MetricField, OneForm, Role, StructureConstants, TensorError, TwoForm, VectorField};

#[derive(Clone, Debug, PartialEq, Error)]
pub enum CatalogError {
    #[error("unknown catalog id `{0}`")]
    UnknownId(String),
    #[error("parameter {name} = {value} out of range ({range})")]
    Parameter { name: &'static str, value: usize, range: &'static str },
    #[error("Jacobi identity fails on ({0}, {1}, {2})")]
    Jacobi(String, String, String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Tensor(#[from] TensorError),
    #[error(transparent)]
    Contact(#[from] ContactError),
    #[error(transparent)]
    Symplectic(#[from] SymplecticError),
}

/// How an expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Origin {
    /// Stated for this example in the literature.
    Published,
    /// Immediate from the definitions.
    Definitional,
    /// Obtained by an independent computation.
    Computed,
}

impl Origin {
    pub const ALL: [Origin; 3] = [Origin::Published, Origin::Definitional, Origin::Computed];

    pub fn from_name(name: &str) -> Option<Origin> {
        Origin::ALL.into_iter().find(|o| o.as_str() == name)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Origin::Published => "published",
            Origin::Definitional => "definitional",
            Origin::Computed => "computed",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Property {
    Valid,
    Sasakian,
    KContact,
    FlatL,
    FlatQ,
    IntegrableL,
    IntegrableQ,
    /// Bi-Legendrian (or bi-Lagrangian) connection is metric.
    BlMetric,
    BlPhiParallel,
    BlEqualsTanakaWebster,
    BlCoefficientsZero,
    BlCurvatureZero,
    KahlerChecksPass,
}

impl Property {
    pub const ALL: [Property; 13] = [
        Property::Valid,
        Property::Sasakian,
        Property::KContact,
        Property::FlatL,
        Property::FlatQ,
        Property::IntegrableL,
        Property::IntegrableQ,
        Property::BlMetric,
        Property::BlPhiParallel,
        Property::BlEqualsTanakaWebster,
        Property::BlCoefficientsZero,
        Property::BlCurvatureZero,
        Property::KahlerChecksPass,
    ];

    pub fn from_name(name: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.as_str() == name)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Property::Valid => "valid",
            Property::Sasakian => "sasakian",
            Property::KContact => "k-contact",
            Property::FlatL => "flat(L)",
            Property::FlatQ => "flat(Q)",
            Property::IntegrableL => "integrable(L)",
            Property::IntegrableQ => "integrable(Q)",
            Property::BlMetric => "∇g=0",
            Property::BlPhiParallel => "∇φ=0",
            Property::BlEqualsTanakaWebster => "∇=*∇",
            Property::BlCoefficientsZero => "Γ=0",
            Property::BlCurvatureZero => "R=0",
            Property::KahlerChecksPass => "kähler",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub property: Property,
    pub value: bool,
    pub origin: Origin,
}

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Subject {
    Contact(ContactMetricStructure),
    Symplectic(SymplecticStructure),
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub id: String,
    pub params: Vec<(String, String)>,
    pub subject: Subject,
    pub expected: Vec<Expectation>,
}

impl CatalogEntry {
    pub fn contact(&self) -> Option<&ContactMetricStructure> {
        match &self.subject {
            Subject::Contact(s) => Some(s),
            Subject::Symplectic(_) => None,
        }
    }

    pub fn symplectic(&self) -> Option<&SymplecticStructure> {
        match &self.subject {
            Subject::Symplectic(s) => Some(s),
            Subject::Contact(_) => None,
        }
    }

    /// Current value of `property`, or `None` if it does not apply to the subject.
    pub fn evaluate(&self, property: Property) -> Option<bool> {
        match &self.subject {
            Subject::Contact(s) => evaluate_contact(s, property),
            Subject::Symplectic(s) => evaluate_symplectic(s, property),
        }
    }

    /// Expectations whose evaluated value differs, with the value found.
    pub fn mismatches(&self) -> Vec<(Expectation, Option<bool>)> {
        self.expected
            .iter()
            .filter_map(|e| {
                let got = self.evaluate(e.property);
                (got != Some(e.value)).then_some((*e, got))
            })
            .collect()
    }

    /// Human-readable label such as `r2n1(n=2)`.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.id.clone();
        }
        let ps: Vec<String> = self.params.iter().map(|(k, v)| alloc::format!("{k}={v}")).collect();
        alloc::format!("{}({})", self.id, ps.join(", "))
    }
}

fn evaluate_contact(s: &ContactMetricStructure, property: Property) -> Option<bool> {
    let bl = || bi_legendrian(s).ok();
    Some(match property {
        Property::Valid => s.validate().passed(),
        Property::Sasakian => s.is_sasakian(),
        Property::KContact => s.is_k_contact(),
        Property::FlatL => s.is_flat(Role::L),
        Property::FlatQ => s.is_flat(Role::Q),
        Property::IntegrableL => s.block_is_integrable(Role::L),
        Property::IntegrableQ => s.block_is_integrable(Role::Q),
        Property::BlMetric => MetricConditions::evaluate(s, &bl()?).metric,
        Property::BlPhiParallel => MetricConditions::evaluate(s, &bl()?).phi_parallel,
        Property::BlEqualsTanakaWebster => coincidence_flags(s, &bl()?, &tanaka_webster(s)).coincide,
        Property::BlCoefficientsZero => bl()?.is_zero(),
        Property::BlCurvatureZero => crate::symplectic::curvature_witness(&bl()?).is_none(),
        Property::KahlerChecksPass => return None,
    })
}

fn evaluate_symplectic(s: &SymplecticStructure, property: Property) -> Option<bool> {
    let bl = || bi_lagrangian(s).ok();
    Some(match property {
        Property::Valid => s.validate().passed(),
        Property::BlCoefficientsZero => bl()?.is_zero(),
        Property::BlCurvatureZero => crate::symplectic::curvature_witness(&bl()?).is_none(),
        Property::BlMetric => kahler_from_flat_bilagrangian(s).ok()?.g_parallel,
        Property::KahlerChecksPass => kahler_from_flat_bilagrangian(s).ok()?.report.passed(),
        _ => return None,
    })
}

/// Catalog ids accepted by [`lookup`].
pub const IDS: [&str; 8] =
    ["r2n1", "s3", "kappa-mu", "darboux", "darboux-verbatim", "perturbed-r3", "r2n", "perturbed-r2"];

/// Builds a catalog entry. `n` defaults to 1 (3 for `kappa-mu`); `f`
/// defaults to `x`.
pub fn lookup(id: &str, n: Option<usize>, f: Option<&str>) -> Result<CatalogEntry, CatalogError> {
    match id {
        "r2n1" => standard_sasakian(n.unwrap_or(1)),
        "s3" => s3(),
        "kappa-mu" => kappa_mu_group(n.unwrap_or(3)),
        "darboux" => darboux_sasakian(n.unwrap_or(1)),
        "darboux-verbatim" => darboux_verbatim(n.unwrap_or(1)),
        "perturbed-r3" => perturbed_r3(f.unwrap_or("x")),
        "r2n" => standard_symplectic(n.unwrap_or(1)),
        "perturbed-r2" => perturbed_r2(),
        other => Err(CatalogError::UnknownId(other.to_string())),
    }
}

fn expect(list: &[(Property, bool, Origin)]) -> Vec<Expectation> {
    list.iter().map(|&(property, value, origin)| Expectation { property, value, origin }).collect()
}

fn check_n(n: usize, min: usize, range: &'static str) -> Result<(), CatalogError> {
    if n < min || n > 8 {
        return Err(CatalogError::Parameter { name: "n", value: n, range });
    }
    Ok(())
}

/// Coordinate names `x, y(, z)` for n = 1, else `x1..xn, y1..yn(, z)`.
pub fn darboux_names(n: usize, with_z: bool) -> (Vec<String>, Vec<String>) {
    let (xs, ys) = if n == 1 {
        (alloc::vec![String::from("x")], alloc::vec![String::from("y")])
    } else {
        ((1..=n).map(|i| alloc::format!("x{i}")).collect(), (1..=n).map(|i| alloc::format!("y{i}")).collect())
    };
    let mut all = xs.clone();
    all.extend(ys.iter().cloned());
    if with_z {
        all.push(String::from("z"));
    }
    (all, ys)
}

fn numbered(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| alloc::format!("{prefix}{i}")).collect()
}

/// `(η, ξ, φ)` of the Darboux chart: `η = dz − Σ y dx`, `ξ = ∂z`.
fn darboux_tensors(chart: &Chart, n: usize, ys: &[String]) -> Result<(OneForm, VectorField, EndoField), CatalogError> {
    let d = 2 * n + 1;
    let yv: Vec<Scalar> = ys.iter().map(|y| Scalar::coordinate(chart, y)).collect::<Result<_, _>>()?;
    let mut eta = alloc::vec![Scalar::zero(chart); d];
    for i in 0..n {
        eta[i] = -&yv[i];
    }
    eta[2 * n] = Scalar::one(chart);
    let eta = OneForm::new(chart, eta)?;
    let xi = VectorField::basis(chart, 2 * n);
    let mut phi = Matrix::zeros(chart, d, d);
    for i in 0..n {
        phi.set(i, n + i, Scalar::one(chart));
        phi.set(n + i, i, Scalar::integer(chart, -1));
        phi.set(2 * n, n + i, yv[i].clone());
    }
    Ok((eta, xi, EndoField::new(phi)?))
}

/// `η⊗η + c·Σ(dx² + dy²)`.
fn darboux_metric(chart: &Chart, eta: &OneForm, n: usize, c: Scalar) -> Result<MetricField, CatalogError> {
    let d = 2 * n + 1;
    let e = eta.components();
    let mut m = Matrix::zeros(chart, d, d);
    for a in 0..d {
        for b in 0..d {
            let mut v = &e[a] * &e[b];
            if a == b && a < 2 * n {
                v = &v + &c;
            }
            m.set(a, b, v);
        }
    }
    Ok(MetricField::new(m)?)
}

fn darboux_l(chart: &Chart, n: usize) -> NamedFields {
    numbered("X", n).into_iter().enumerate().map(|(i, name)| (name, VectorField::basis(chart, n + i))).collect()
}

fn sasakian_expectations(origin_tw: Origin) -> Vec<Expectation> {
    expect(&[
        (Property::Valid, true, Origin::Published),
        (Property::Sasakian, true, Origin::Published),
        (Property::KContact, true, Origin::Definitional),
        (Property::FlatL, true, Origin::Computed),
        (Property::FlatQ, true, Origin::Computed),
        (Property::IntegrableL, true, Origin::Definitional),
        (Property::IntegrableQ, true, Origin::Published),
        (Property::BlMetric, true, Origin::Computed),
        (Property::BlPhiParallel, true, Origin::Computed),
        (Property::BlEqualsTanakaWebster, true, origin_tw),
        (Property::BlCoefficientsZero, true, Origin::Computed),
        (Property::BlCurvatureZero, true, Origin::Published),
    ])
}

/// Standard Sasakian ℝ^{2n+1} with `X_i = ∂y_i`, `Y_i = ∂x_i + y_i∂z`.
pub fn standard_sasakian(n: usize) -> Result<CatalogEntry, CatalogError> {
    check_n(n, 1, "1 ≤ n ≤ 8")?;
    let (coords, ys) = darboux_names(n, true);
    let chart = Chart::coordinates(coords)?;
    let (eta, xi, phi) = darboux_tensors(&chart, n, &ys)?;
    let g = darboux_metric(&chart, &eta, n, Scalar::ratio(&chart, 1, 2))?;
    let l = darboux_l(&chart, n);
    let q = numbered("Y", n)
        .into_iter()
        .enumerate()
        .map(|(i, name)| {
            let mut c = alloc::vec![Scalar::zero(&chart); 2 * n + 1];
            c[i] = Scalar::one(&chart);
            c[2 * n] = Scalar::coordinate(&chart, &ys[i])?;
            Ok((name, VectorField::new(&chart, c)?))
        })
        .collect::<Result<NamedFields, CatalogError>>()?;
    let s = ContactMetricStructure::new(eta, xi, phi, g, l, q, "xi")?;
    Ok(CatalogEntry {
        id: String::from("r2n1"),
        params: alloc::vec![(String::from("n"), n.to_string())],
        subject: Subject::Contact(s),
        expected: sasakian_expectations(Origin::Published),
    })
}

/// Darboux chart with `L = ∂y` and `Q = φL`.
pub fn darboux_sasakian(n: usize) -> Result<CatalogEntry, CatalogError> {
    check_n(n, 1, "1 ≤ n ≤ 8")?;
    let (coords, ys) = darboux_names(n, true);
    let chart = Chart::coordinates(coords)?;
    let (eta, xi, phi) = darboux_tensors(&chart, n, &ys)?;
    let g = darboux_metric(&chart, &eta, n, Scalar::ratio(&chart, 1, 2))?;
    let s = ContactMetricStructure::with_conjugate(eta, xi, phi, g, darboux_l(&chart, n), numbered("Y", n), "xi")?;
    Ok(CatalogEntry {
        id: String::from("darboux"),
        params: alloc::vec![(String::from("n"), n.to_string())],
        subject: Subject::Contact(s),
        expected: sasakian_expectations(Origin::Published),
    })
}

/// The Darboux chart with the metric `η⊗η + Σ(dx² + dy²)`. It satisfies
/// every identity except `dη(V,W) = g(V,φW)`, which holds only up to a
/// factor 2.
pub fn darboux_verbatim(n: usize) -> Result<CatalogEntry, CatalogError> {
    check_n(n, 1, "1 ≤ n ≤ 8")?;
    let (coords, ys) = darboux_names(n, true);
    let chart = Chart::coordinates(coords)?;
    let (eta, xi, phi) = darboux_tensors(&chart, n, &ys)?;
    let g = darboux_metric(&chart, &eta, n, Scalar::one(&chart))?;
    let s = ContactMetricStructure::with_conjugate(eta, xi, phi, g, darboux_l(&chart, n), numbered("Y", n), "xi")?;
    Ok(CatalogEntry {
        id: String::from("darboux-verbatim"),
        params: alloc::vec![(String::from("n"), n.to_string())],
        subject: Subject::Contact(s),
        expected: expect(&[(Property::Valid, false, Origin::Computed)]),
    })
}

/// The unit sphere `Σ x_i² = 1` with `X = x2∂1 − x1∂2 − x4∂3 + x3∂4`, `Y = φX`.
pub fn s3() -> Result<CatalogEntry, CatalogError> {
    let chart = Chart::embedded(["x1", "x2", "x3", "x4"], "x1^2 + x2^2 + x3^2 + x4^2 - 1")?;
    let eta = OneForm::parse(&chart, &["x3", "x4", "-x1", "-x2"])?;
    let xi = VectorField::parse(&chart, &["x3", "x4", "-x1", "-x2"])?;
    let phi = EndoField::parse(
        &chart,
        &[
            alloc::vec!["0", "0", "-1", "0"],
            alloc::vec!["0", "0", "0", "-1"],
            alloc::vec!["1", "0", "0", "0"],
            alloc::vec!["0", "1", "0", "0"],
        ],
    )?;
    let g = MetricField::euclidean(&chart);
    let x = VectorField::parse(&chart, &["x2", "-x1", "-x4", "x3"])?;
    let s = ContactMetricStructure::with_conjugate(
        eta,
        xi,
        phi,
        g,
        alloc::vec![(String::from("X"), x)],
        alloc::vec![String::from("Y")],
        "xi",
    )?;
    Ok(CatalogEntry {
        id: String::from("s3"),
        params: Vec::new(),
        subject: Subject::Contact(s),
        expected: expect(&[
            (Property::Valid, true, Origin::Published),
            (Property::Sasakian, true, Origin::Published),
            (Property::KContact, true, Origin::Definitional),
            (Property::FlatL, false, Origin::Published),
            (Property::FlatQ, false, Origin::Published),
            (Property::IntegrableL, true, Origin::Definitional),
            (Property::IntegrableQ, true, Origin::Definitional),
            (Property::BlMetric, true, Origin::Published),
            (Property::BlPhiParallel, true, Origin::Published),
            (Property::BlEqualsTanakaWebster, false, Origin::Published),
            (Property::BlCoefficientsZero, true, Origin::Published),
        ]),
    })
}

/// Structure constants of the (κ,μ) = (0,4) Lie algebra on
/// `X1..Xn, Y1..Yn, xi`.
pub fn kappa_mu_constants(n: usize) -> Result<StructureConstants, CatalogError> {
    check_n(n, 3, "3 ≤ n ≤ 8")?;
    let mut names = numbered("X", n);
    names.extend(numbered("Y", n));
    names.push(String::from("xi"));
    let d = 2 * n + 1;
    let (x, y, xi) = (|i: usize| i - 1, |i: usize| n + i - 1, 2 * n);
    let mut sc = StructureConstants::new(names)?;
    let vec = |terms: &[(usize, i64)]| {
        let mut v = alloc::vec![rational(0, 1); d];
        for &(k, c) in terms {
            v[k] = rational(c, 1);
        }
        v
    };
    for j in (1..=n).filter(|&j| j != 2) {
        sc.set_bracket(y(2), y(j), vec(&[(y(j), 2)]))?;
        sc.set_bracket(x(2), y(j), vec(&[(x(j), 2)]))?;
    }
    sc.set_bracket(x(1), y(1), vec(&[(xi, 2), (x(2), -2)]))?;
    for h in 3..=n {
        sc.set_bracket(x(h), y(h), vec(&[(xi, 2), (x(2), -2)]))?;
    }
    sc.set_bracket(x(2), y(2), vec(&[(xi, 2)]))?;
    for j in 1..=n {
        sc.set_bracket(xi, y(j), vec(&[(x(j), 2)]))?;
    }
    if let Some(&(a, b, c)) = sc.jacobi_failures().first() {
        let nm = sc.names();
        return Err(CatalogError::Jacobi(nm[a].clone(), nm[b].clone(), nm[c].clone()));
    }
    Ok(sc)
}

/// Left-invariant contact metric structure with orthonormal frame
/// `X1..Xn, Y1..Yn, xi`, `φX_i = Y_i`, `φY_i = −X_i`, `η = g(ξ,·)`.
pub fn kappa_mu_group(n: usize) -> Result<CatalogEntry, CatalogError> {
    let sc = kappa_mu_constants(n)?;
    let chart = Chart::lie_frame(sc);
    let d = 2 * n + 1;
    let mut eta = alloc::vec![Scalar::zero(&chart); d];
    eta[2 * n] = Scalar::one(&chart);
    let eta = OneForm::new(&chart, eta)?;
    let xi = VectorField::basis(&chart, 2 * n);
    let mut phi = Matrix::zeros(&chart, d, d);
    for i in 0..n {
        phi.set(n + i, i, Scalar::one(&chart));
        phi.set(i, n + i, Scalar::integer(&chart, -1));
    }
    let phi = EndoField::new(phi)?;
    let g = MetricField::euclidean(&chart);
    let l = numbered("X", n).into_iter().enumerate().map(|(i, nm)| (nm, VectorField::basis(&chart, i))).collect();
    let q = numbered("Y", n).into_iter().enumerate().map(|(i, nm)| (nm, VectorField::basis(&chart, n + i))).collect();
    let s = ContactMetricStructure::new(eta, xi, phi, g, l, q, "xi")?;
    Ok(CatalogEntry {
        id: String::from("kappa-mu"),
        params: alloc::vec![(String::from("n"), n.to_string())],
        subject: Subject::Contact(s),
        expected: expect(&[
            (Property::Valid, true, Origin::Published),
            (Property::Sasakian, false, Origin::Published),
            (Property::KContact, false, Origin::Published),
            (Property::FlatL, true, Origin::Computed),
            (Property::FlatQ, false, Origin::Computed),
            (Property::IntegrableL, true, Origin::Published),
            (Property::IntegrableQ, true, Origin::Published),
            (Property::BlMetric, true, Origin::Published),
            (Property::BlPhiParallel, true, Origin::Published),
            (Property::BlEqualsTanakaWebster, false, Origin::Published),
        ]),
    })
}

/// Standard ℝ³ with `X = ∂y + f(∂x + y∂z)` and `Y = φX`.
pub fn perturbed_r3(f: &str) -> Result<CatalogEntry, CatalogError> {
    let chart = Chart::coordinates(["x", "y", "z"])?;
    let (eta, xi, phi) = darboux_tensors(&chart, 1, &[String::from("y")])?;
    let g = darboux_metric(&chart, &eta, 1, Scalar::ratio(&chart, 1, 2))?;
    let fs = Scalar::parse(f, &chart)?;
    let y = Scalar::coordinate(&chart, "y")?;
    let x = VectorField::new(&chart, alloc::vec![fs.clone(), Scalar::one(&chart), &fs * &y])?;
    let s = ContactMetricStructure::with_conjugate(
        eta,
        xi,
        phi,
        g,
        alloc::vec![(String::from("X"), x)],
        alloc::vec![String::from("Y")],
        "xi",
    )?;
    Ok(CatalogEntry {
        id: String::from("perturbed-r3"),
        params: alloc::vec![(String::from("f"), fs.to_expr())],
        subject: Subject::Contact(s),
        expected: expect(&[
            (Property::Valid, true, Origin::Definitional),
            (Property::Sasakian, true, Origin::Definitional),
            (Property::IntegrableL, true, Origin::Definitional),
            (Property::IntegrableQ, true, Origin::Definitional),
        ]),
    })
}

fn symplectic_chart(n: usize) -> Result<(Chart, TwoForm), CatalogError> {
    let (coords, _) = darboux_names(n, false);
    let chart = Chart::coordinates(coords)?;
    let mut omega: Option<TwoForm> = None;
    for i in 0..n {
        let dx = OneForm::differential(&Scalar::coordinate(&chart, &chart.coords()[i].clone())?);
        let dy = OneForm::differential(&Scalar::coordinate(&chart, &chart.coords()[n + i].clone())?);
        let w = TwoForm::wedge(&dx, &dy);
        omega = Some(match omega {
            Some(o) => o.add(&w),
            None => w,
        });
    }
    Ok((chart, omega.expect("n ≥ 1")))
}

/// ℝ²ⁿ with `ω = Σ dx_i∧dy_i`, `F = span{∂y_i}` (named `Y_i`), `G = span{∂x_i}` (named `X_i`).
pub fn standard_symplectic(n: usize) -> Result<CatalogEntry, CatalogError> {
    check_n(n, 1, "1 ≤ n ≤ 8")?;
    let (chart, omega) = symplectic_chart(n)?;
    let f = numbered("Y", n).into_iter().enumerate().map(|(i, nm)| (nm, VectorField::basis(&chart, n + i))).collect();
    let g = numbered("X", n).into_iter().enumerate().map(|(i, nm)| (nm, VectorField::basis(&chart, i))).collect();
    let s = SymplecticStructure::new(omega, f, g)?;
    Ok(CatalogEntry {
        id: String::from("r2n"),
        params: alloc::vec![(String::from("n"), n.to_string())],
        subject: Subject::Symplectic(s),
        expected: expect(&[
            (Property::Valid, true, Origin::Definitional),
            (Property::BlCoefficientsZero, true, Origin::Computed),
            (Property::BlCurvatureZero, true, Origin::Computed),
            (Property::BlMetric, true, Origin::Computed),
            (Property::KahlerChecksPass, true, Origin::Computed),
        ]),
    })
}

/// ℝ² with `F = span{∂y}` and `G = span{∂x + y∂y}`: a flat bi-Lagrangian
/// frame that is not parallel, so the assembled metric is not parallel.
pub fn perturbed_r2() -> Result<CatalogEntry, CatalogError> {
    let (chart, omega) = symplectic_chart(1)?;
    let f = alloc::vec![(String::from("Y"), VectorField::basis(&chart, 1))];
    let g = alloc::vec![(String::from("X"), VectorField::parse(&chart, &["1", "y"])?)];
    let s = SymplecticStructure::new(omega, f, g)?;
    Ok(CatalogEntry {
        id: String::from("perturbed-r2"),
        params: Vec::new(),
        subject: Subject::Symplectic(s),
        expected: expect(&[
            (Property::Valid, true, Origin::Definitional),
            (Property::BlCoefficientsZero, false, Origin::Computed),
            (Property::BlCurvatureZero, true, Origin::Computed),
            (Property::BlMetric, false, Origin::Computed),
        ]),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entries() -> Vec<CatalogEntry> {
        let mut v = Vec::new();
        for n in 1..=2 {
            v.push(standard_sasakian(n).unwrap());
            v.push(darboux_sasakian(n).unwrap());
            v.push(standard_symplectic(n).unwrap());
        }
        v.push(s3().unwrap());
        v.push(kappa_mu_group(3).unwrap());
        v.push(darboux_verbatim(1).unwrap());
        v.push(perturbed_r3("x").unwrap());
        v.push(perturbed_r2().unwrap());
        v
    }

    #[test]
    fn names_round_trip() {
        for p in Property::ALL {
            assert_eq!(Property::from_name(p.as_str()), Some(p));
        }
        for o in Origin::ALL {
            assert_eq!(Origin::from_name(o.as_str()), Some(o));
        }
        assert_eq!(Property::from_name("sasakian?"), None);
    }

    #[test]
    fn expectations_hold() {
        for e in entries() {
            let bad = e.mismatches();
            assert!(bad.is_empty(), "{}: {:?}", e.label(), bad);
        }
    }

    #[test]
    fn lookup_rejects_unknown_and_small_n() {
        assert!(matches!(lookup("torus", None, None), Err(CatalogError::UnknownId(_))));
        assert!(matches!(lookup("kappa-mu", Some(2), None), Err(CatalogError::Parameter { .. })));
        assert!(matches!(lookup("perturbed-r3", None, Some("x +")), Err(CatalogError::Scalar(_))));
    }
}
