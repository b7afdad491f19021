//! Command dispatch over a resolved subject.

use std::path::PathBuf;
use std::time::Instant;

use sasaki_core::catalog::{self, CatalogEntry, Subject};
use sasaki_core::connection::{
    bi_legendrian, check_bilegendrian_axioms, check_coincidence_theorem, check_connection_identities,
    check_metric_equivalences, check_tanno_axioms, check_tilde_theorem, levi_civita, levi_civita_frame, sasakian_report,
    tanaka_webster, tilde_connection, FrameConnection,
};
use sasaki_core::contact::ContactMetricStructure;
use sasaki_core::report::{AxiomReport, Verdict};
use sasaki_core::symplectic::{bi_lagrangian, check_bilagrangian_axioms, kahler_from_flat_bilagrangian, SymplecticStructure};
use sasaki_core::tensor::{Matrix, Role};

use crate::error::CliError;
use crate::manifest::Manifest;
use crate::report::{CheckRecord, Report, SubjectInfo};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum ConnectionKind {
    /// Levi-Civita
    Lc,
    /// Tanaka-Webster
    Tw,
    /// canonical connection ∇̃
    Tilde,
    /// bi-Legendrian (bi-Lagrangian on symplectic subjects)
    Bl,
}

impl ConnectionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ConnectionKind::Lc => "lc",
            ConnectionKind::Tw => "tw",
            ConnectionKind::Tilde => "tilde",
            ConnectionKind::Bl => "bl",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    Tanno,
    Bilegendrian,
    MetricEquiv,
    Coincidence,
    TildeTheorem,
    Identities,
    Normality,
    Appendix,
}

impl Suite {
    pub const CONTACT: [Suite; 7] = [
        Suite::Tanno,
        Suite::Bilegendrian,
        Suite::MetricEquiv,
        Suite::Coincidence,
        Suite::TildeTheorem,
        Suite::Identities,
        Suite::Normality,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Tanno => "tanno",
            Suite::Bilegendrian => "bilegendrian",
            Suite::MetricEquiv => "metric-equiv",
            Suite::Coincidence => "coincidence",
            Suite::TildeTheorem => "tilde-theorem",
            Suite::Identities => "identities",
            Suite::Normality => "normality",
            Suite::Appendix => "appendix",
        }
    }

    pub fn from_name(name: &str) -> Option<Suite> {
        Suite::CONTACT.into_iter().chain([Suite::Appendix]).find(|s| s.as_str() == name)
    }
}

/// Where the subject comes from.
#[derive(Clone, Debug, Default)]
pub struct Source {
    pub catalog: Option<String>,
    pub manifest: Option<PathBuf>,
    pub n: Option<usize>,
    pub f: Option<String>,
}

pub struct Resolved {
    pub entry: CatalogEntry,
    pub info: SubjectInfo,
    pub manifest: Option<Manifest>,
}

impl Source {
    pub fn resolve(&self) -> Result<Resolved, CliError> {
        match (&self.catalog, &self.manifest) {
            (Some(id), None) => {
                let entry = catalog::lookup(id, self.n, self.f.as_deref())?;
                let info = subject_info("catalog", &entry, None);
                Ok(Resolved { entry, info, manifest: None })
            }
            (None, Some(path)) => {
                let shown = path.display().to_string();
                let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
                let m = Manifest::from_json(&text)?;
                let entry = m.build()?;
                let info = subject_info("manifest", &entry, Some(shown));
                Ok(Resolved { entry, info, manifest: Some(m) })
            }
            _ => Err(CliError::NoSubject),
        }
    }
}

fn subject_info(source: &str, entry: &CatalogEntry, path: Option<String>) -> SubjectInfo {
    SubjectInfo {
        source: source.to_string(),
        id: entry.id.clone(),
        label: entry.label(),
        kind: kind(entry).to_string(),
        path,
    }
}

fn kind(entry: &CatalogEntry) -> &'static str {
    match entry.subject {
        Subject::Contact(_) => "contact",
        Subject::Symplectic(_) => "symplectic",
    }
}

#[derive(Clone, Debug)]
pub enum Command {
    Validate,
    Classify,
    Connection(ConnectionKind),
    /// `None` runs the manifest's requested suites, or every applicable one.
    Check { suite: Option<Suite>, connection: Option<ConnectionKind> },
    Compare(ConnectionKind, ConnectionKind),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Classify => "classify",
            Command::Connection(_) => "connection",
            Command::Check { .. } => "check",
            Command::Compare(..) => "compare",
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Options {
    pub max_witness_len: Option<usize>,
    pub timing: bool,
}

fn need_contact<'a>(cmd: &str, entry: &'a CatalogEntry) -> Result<&'a ContactMetricStructure, CliError> {
    entry.contact().ok_or_else(|| CliError::WrongSubject { command: cmd.to_string(), needed: "contact", found: kind(entry) })
}

fn need_symplectic<'a>(cmd: &str, entry: &'a CatalogEntry) -> Result<&'a SymplecticStructure, CliError> {
    entry
        .symplectic()
        .ok_or_else(|| CliError::WrongSubject { command: cmd.to_string(), needed: "symplectic", found: kind(entry) })
}

/// Builds the requested connection on the subject.
pub fn build_connection(entry: &CatalogEntry, which: ConnectionKind) -> Result<FrameConnection, CliError> {
    let fail = |e: &dyn std::fmt::Display| CliError::Connection(which.as_str().to_string(), e.to_string());
    match (&entry.subject, which) {
        (Subject::Contact(s), ConnectionKind::Lc) => Ok(levi_civita(s)),
        (Subject::Contact(s), ConnectionKind::Tw) => Ok(tanaka_webster(s)),
        (Subject::Contact(s), ConnectionKind::Tilde) => Ok(tilde_connection(s)),
        (Subject::Contact(s), ConnectionKind::Bl) => bi_legendrian(s).map_err(|e| fail(&e)),
        (Subject::Symplectic(s), ConnectionKind::Bl) => bi_lagrangian(s).map_err(|e| fail(&e)),
        (Subject::Symplectic(s), ConnectionKind::Lc) => {
            let k = kahler_from_flat_bilagrangian(s).map_err(|e| fail(&e))?;
            levi_civita_frame(s.geometry(), &k.g_frame).map_err(|e| fail(&e))
        }
        (Subject::Symplectic(_), _) => Err(fail(&"only lc and bl exist on symplectic subjects")),
    }
}

/// Runs `cmd` on the resolved subject and sets the exit code.
pub fn run(cmd: &Command, subject: &Resolved, opts: &Options) -> Result<Report, CliError> {
    let start = Instant::now();
    let entry = &subject.entry;
    let mut report = Report::new(cmd.name(), subject.info.clone());
    match cmd {
        Command::Validate => validate(entry, &mut report),
        Command::Classify => classify(need_contact("classify", entry)?, &mut report)?,
        Command::Connection(which) => {
            report.connection = Some(which.as_str().to_string());
            let c = build_connection(entry, *which)?;
            report.add_report(None, &connection_axioms(entry, &c, *which));
            coefficient_rows(&c, &mut report);
        }
        Command::Check { suite, connection } => {
            let suites = match suite {
                Some(s) => vec![*s],
                None => default_suites(subject)?,
            };
            if let [single] = suites[..] {
                report.suite = Some(single.as_str().to_string());
            }
            report.connection = connection.map(|c| c.as_str().to_string());
            for s in suites {
                let r = run_suite(entry, s, *connection)?;
                report.add_report(Some(s.as_str()), &r);
            }
        }
        Command::Compare(a, b) => {
            report.connection = Some(format!("{} vs {}", a.as_str(), b.as_str()));
            let (ca, cb) = (build_connection(entry, *a)?, build_connection(entry, *b)?);
            let mut r = AxiomReport::new("comparison");
            r.record(format!("{} = {}", a.as_str(), b.as_str()), ca.first_difference(&cb));
            report.add_report(None, &r);
            difference_rows(&ca, &cb, &mut report);
        }
    }
    if let Some(limit) = opts.max_witness_len {
        report.truncate_witnesses(limit);
    }
    if opts.timing {
        report.elapsed_ms = Some(u64::try_from(start.elapsed().as_millis()).unwrap_or(u64::MAX));
    }
    report.finish();
    Ok(report)
}

fn validate(entry: &CatalogEntry, report: &mut Report) {
    match &entry.subject {
        Subject::Contact(s) => {
            report.add_report(None, &s.validate());
            report.add_report(None, &s.h_report());
        }
        Subject::Symplectic(s) => report.add_report(None, &s.validate()),
    }
    for e in &entry.expected {
        let name = format!("expected: {} is {}", e.property.as_str(), e.value);
        let got = entry.evaluate(e.property);
        let mut rec = CheckRecord {
            suite: None,
            name,
            verdict: String::new(),
            witness: None,
            truncated: false,
            hypothesis_flags: Vec::new(),
            note: None,
            origin: Some(e.origin.as_str().to_string()),
        };
        let verdict = match got {
            Some(v) if v == e.value => Verdict::Pass,
            Some(v) => {
                rec.witness = Some(format!("{} is {v}", e.property.as_str()));
                Verdict::Fail
            }
            None => {
                rec.note = Some(String::from("property does not apply to this subject"));
                Verdict::NotApplicable
            }
        };
        rec.verdict = verdict.as_str().to_string();
        report.checks.push(rec);
    }
}

fn classify(s: &ContactMetricStructure, report: &mut Report) -> Result<(), CliError> {
    let mut r = AxiomReport::new("classification");
    for (label, role) in [("L", Role::L), ("Q", Role::Q)] {
        r.record_bool(format!("{label} Legendrian"), s.block_is_legendrian(role), "dη does not vanish on the block");
        let c = s.classify(role).map_err(|e| CliError::Connection(String::from("classify"), e.to_string()))?;
        let witness = c.witnesses.iter().map(|(k, v)| format!("{k} = {v}")).collect::<Vec<_>>().join("; ");
        r.record_bool(format!("{label} Pang form agrees with the bracket criterion"), c.consistent, witness);
        report.add_row(label, c.verdict.as_str());
        report.add_row(format!("Π({label})"), matrix_text(&c.pang));
        report.add_row(format!("integrable({label})"), s.block_is_integrable(role).to_string());
    }
    report.add_report(None, &r);
    Ok(())
}

fn matrix_text(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|x| x.to_expr()).collect::<Vec<_>>().join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// The characterizing checks of a single connection.
fn connection_axioms(entry: &CatalogEntry, c: &FrameConnection, which: ConnectionKind) -> AxiomReport {
    match (&entry.subject, which) {
        (Subject::Contact(s), ConnectionKind::Tw) => check_tanno_axioms(c, s),
        (Subject::Contact(s), ConnectionKind::Bl) => check_bilegendrian_axioms(c, s),
        (Subject::Contact(s), ConnectionKind::Tilde) => check_tilde_theorem(s),
        (Subject::Symplectic(s), ConnectionKind::Bl) => check_bilagrangian_axioms(c, s),
        (subject, _) => {
            let geom = c.geometry();
            let d = c.dim();
            let mut r = AxiomReport::new("Levi-Civita");
            let torsion = (0..d)
                .flat_map(|a| (0..d).map(move |b| (a, b)))
                .map(|(a, b)| (a, b, c.torsion(&geom.unit(a), &geom.unit(b))))
                .find(|(_, _, t)| t.iter().any(|x| !x.is_zero()));
            r.record(
                "torsion-free",
                torsion.map(|(a, b, t)| format!("T({},{}) = {}", geom.names()[a], geom.names()[b], geom.format(&t))),
            );
            let g = match subject {
                Subject::Contact(s) => Some(s.g_matrix().clone()),
                Subject::Symplectic(s) => kahler_from_flat_bilagrangian(s).ok().map(|k| k.g_frame),
            };
            if let Some(g) = g {
                r.record_bool("metric", c.is_parallel_bilinear(&g), "∇g ≠ 0");
            }
            r
        }
    }
}

fn default_suites(subject: &Resolved) -> Result<Vec<Suite>, CliError> {
    let requested = subject.manifest.as_ref().map(|m| m.checks.clone()).unwrap_or_default();
    if requested.is_empty() {
        return Ok(match subject.entry.subject {
            Subject::Contact(_) => Suite::CONTACT.to_vec(),
            Subject::Symplectic(_) => vec![Suite::Appendix],
        });
    }
    requested
        .iter()
        .enumerate()
        .map(|(i, name)| {
            Suite::from_name(name).ok_or_else(|| CliError::manifest(format!("checks[{i}]"), format!("unknown suite `{name}`")))
        })
        .collect()
}

fn run_suite(entry: &CatalogEntry, suite: Suite, connection: Option<ConnectionKind>) -> Result<AxiomReport, CliError> {
    let name = suite.as_str();
    if suite == Suite::Appendix {
        return appendix(need_symplectic(name, entry)?);
    }
    let s = need_contact(name, entry)?;
    Ok(match suite {
        Suite::Tanno => check_tanno_axioms(&build_connection(entry, connection.unwrap_or(ConnectionKind::Tw))?, s),
        Suite::Bilegendrian => check_bilegendrian_axioms(&build_connection(entry, connection.unwrap_or(ConnectionKind::Bl))?, s),
        Suite::MetricEquiv => check_metric_equivalences(s),
        Suite::Coincidence => check_coincidence_theorem(s),
        Suite::TildeTheorem => check_tilde_theorem(s),
        Suite::Identities => check_connection_identities(s),
        Suite::Normality => sasakian_report(s),
        Suite::Appendix => unreachable!("handled above"),
    })
}

fn appendix(s: &SymplecticStructure) -> Result<AxiomReport, CliError> {
    let mut r = s.validate();
    match bi_lagrangian(s) {
        Ok(c) => r.extend(check_bilagrangian_axioms(&c, s)),
        Err(e) => {
            r.record("bi-Lagrangian connection exists", Some(e.to_string()));
            return Ok(r);
        }
    }
    match kahler_from_flat_bilagrangian(s) {
        Ok(k) => r.extend(k.report),
        Err(e) => {
            r.record("flat Darboux bi-Lagrangian frame", Some(e.to_string()));
        }
    }
    Ok(r)
}

fn coefficient_rows(c: &FrameConnection, report: &mut Report) {
    let geom = c.geometry();
    let names = geom.names();
    for i in 0..c.dim() {
        for j in 0..c.dim() {
            let v = c.coefficient(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                report.add_row(format!("∇_{}{}", names[i], names[j]), geom.format(v));
            }
        }
    }
}

fn difference_rows(a: &FrameConnection, b: &FrameConnection, report: &mut Report) {
    let geom = a.geometry();
    let names = geom.names();
    let diff = a.difference(b).expect("connections share the frame");
    for i in 0..a.dim() {
        for j in 0..a.dim() {
            let v = diff.get(i, j);
            if v.iter().any(|x| !x.is_zero()) {
                report.add_row(format!("S({},{})", names[i], names[j]), geom.format(v));
            }
        }
    }
}

/// Round-trips the subject through a manifest; used by `export`.
pub fn export(subject: &Resolved) -> Manifest {
    let mut m = Manifest::from_entry(&subject.entry);
    if let Some(src) = &subject.manifest {
        m.checks = src.checks.clone();
    }
    m
}
