use std::io::Write;

use sasaki_cli::run::{export, Resolved};
use sasaki_cli::{run, Command, ConnectionKind, Manifest, Options, Report, Source, Suite};

const CONNECTIONS: [ConnectionKind; 4] = [ConnectionKind::Lc, ConnectionKind::Tw, ConnectionKind::Tilde, ConnectionKind::Bl];

fn commands(contact: bool) -> Vec<Command> {
    let mut out = vec![Command::Validate];
    if contact {
        out.push(Command::Classify);
        out.extend(Suite::CONTACT.map(|s| Command::Check { suite: Some(s), connection: None }));
        out.push(Command::Check { suite: Some(Suite::Tanno), connection: Some(ConnectionKind::Bl) });
        out.extend(CONNECTIONS.map(Command::Connection));
        out.push(Command::Compare(ConnectionKind::Bl, ConnectionKind::Tw));
    } else {
        out.push(Command::Check { suite: Some(Suite::Appendix), connection: None });
        out.push(Command::Connection(ConnectionKind::Bl));
    }
    out
}

/// Everything except where the subject came from.
fn verdicts(r: Result<Report, sasaki_cli::CliError>) -> String {
    match r {
        Ok(r) => format!("{:?}\n{:?}\n{}", r.checks, r.table, r.exit),
        Err(e) => format!("error: {e}"),
    }
}

fn round_trip(id: &str, n: Option<usize>) {
    let original = Source { catalog: Some(id.to_string()), n, ..Source::default() }.resolve().unwrap();
    let manifest = export(&original);
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(manifest.to_json().as_bytes()).unwrap();
    let imported: Resolved = Source { manifest: Some(file.path().to_path_buf()), ..Source::default() }.resolve().unwrap();

    assert_eq!(imported.info.label, original.info.label);
    assert_eq!(export(&imported), manifest, "{id}: re-export differs");
    let contact = original.entry.contact().is_some();
    for cmd in commands(contact) {
        let a = verdicts(run(&cmd, &original, &Options::default()));
        let b = verdicts(run(&cmd, &imported, &Options::default()));
        assert_eq!(a, b, "{id}: {cmd:?} differs after import");
    }
}

#[test]
fn sphere_round_trips() {
    round_trip("s3", None);
}

#[test]
fn lie_group_round_trips() {
    round_trip("kappa-mu", None);
}

#[test]
fn coordinate_entries_round_trip() {
    round_trip("r2n1", Some(2));
    round_trip("darboux", Some(1));
    round_trip("darboux-verbatim", Some(1));
    round_trip("perturbed-r3", None);
}

#[test]
fn symplectic_entries_round_trip() {
    round_trip("r2n", Some(2));
    round_trip("perturbed-r2", None);
}

#[test]
fn requested_checks_drive_the_default_suites() {
    let original = Source { catalog: Some(String::from("s3")), ..Source::default() }.resolve().unwrap();
    let mut m: Manifest = export(&original);
    m.checks = vec![String::from("normality"), String::from("coincidence")];
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(m.to_json().as_bytes()).unwrap();
    let imported = Source { manifest: Some(file.path().to_path_buf()), ..Source::default() }.resolve().unwrap();
    let r = run(&Command::Check { suite: None, connection: None }, &imported, &Options::default()).unwrap();
    let suites: Vec<&str> = r.checks.iter().filter_map(|c| c.suite.as_deref()).collect();
    assert!(suites.iter().all(|s| *s == "normality" || *s == "coincidence"));
    assert!(suites.contains(&"normality") && suites.contains(&"coincidence"));
    assert_eq!(r.suite, None);

    m.checks = vec![String::from("nonsense")];
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(m.to_json().as_bytes()).unwrap();
    let bad = Source { manifest: Some(file.path().to_path_buf()), ..Source::default() }.resolve().unwrap();
    assert!(run(&Command::Check { suite: None, connection: None }, &bad, &Options::default()).is_err());
}
