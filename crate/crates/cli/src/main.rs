use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use sasaki_cli::report::REPORT_SCHEMA_VERSION;
use sasaki_cli::run::{export, Resolved};
use sasaki_cli::{run, CliError, Command, ConnectionKind, Options, Source, Suite, EXIT_INPUT};

#[derive(Parser)]
#[command(name = "sasaki", version, about = "Exact checks for contact metric and symplectic structures")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Structure axioms and the subject's expected properties.
    Validate(Common),
    /// Legendrian classification of L and Q.
    Classify(Common),
    /// Coefficient table of a connection on the adapted frame.
    Connection {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "bl")]
        connection: ConnectionKind,
    },
    /// Named theorem suite; without --suite, the manifest's list or all.
    Check {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum)]
        suite: Option<Suite>,
        /// Connection checked by the tanno and bilegendrian suites.
        #[arg(long, value_enum)]
        connection: Option<ConnectionKind>,
    },
    /// Difference tensor of two connections.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value = "bl")]
        connection: ConnectionKind,
        #[arg(long = "with", value_enum, default_value = "tw")]
        other: ConnectionKind,
    },
    /// Write the subject as a manifest.
    Export {
        #[command(flatten)]
        source: SourceArgs,
        /// Output file (stdout when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct SourceArgs {
    /// Catalog id: r2n1, s3, kappa-mu, darboux, darboux-verbatim, perturbed-r3, r2n, perturbed-r2.
    #[arg(long)]
    catalog: Option<String>,
    #[arg(long)]
    manifest: Option<PathBuf>,
    /// Dimension parameter of catalog entries.
    #[arg(long)]
    n: Option<usize>,
    /// Perturbation function of perturbed-r3.
    #[arg(long)]
    f: Option<String>,
}

#[derive(Args)]
struct Common {
    #[command(flatten)]
    source: SourceArgs,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Truncate witnesses longer than N characters.
    #[arg(long, value_name = "N")]
    max_witness_len: Option<usize>,
    /// Include elapsed time (makes output nondeterministic).
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

impl SourceArgs {
    fn source(&self) -> Source {
        Source { catalog: self.catalog.clone(), manifest: self.manifest.clone(), n: self.n, f: self.f.clone() }
    }
}

fn input_error(command: &str, format: Format, e: &CliError) -> ExitCode {
    eprintln!("error: {e}");
    if format == Format::Json {
        let doc = serde_json::json!({
            "schema_version": REPORT_SCHEMA_VERSION,
            "command": command,
            "error": e.to_string(),
            "exit": EXIT_INPUT,
        });
        println!("{}", serde_json::to_string_pretty(&doc).expect("serializes"));
    }
    ExitCode::from(EXIT_INPUT as u8)
}

fn execute(command: Command, common: &Common) -> ExitCode {
    let result = common.source.source().resolve().and_then(|subject: Resolved| {
        let opts = Options { max_witness_len: common.max_witness_len, timing: common.timing };
        run(&command, &subject, &opts)
    });
    match result {
        Ok(report) => {
            let out = match common.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            print!("{out}");
            ExitCode::from(report.exit as u8)
        }
        Err(e) => input_error(command.name(), common.format, &e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Cmd::Validate(common) => execute(Command::Validate, &common),
        Cmd::Classify(common) => execute(Command::Classify, &common),
        Cmd::Connection { common, connection } => execute(Command::Connection(connection), &common),
        Cmd::Check { common, suite, connection } => execute(Command::Check { suite, connection }, &common),
        Cmd::Compare { common, connection, other } => execute(Command::Compare(connection, other), &common),
        Cmd::Export { source, output } => {
            let subject = match source.source().resolve() {
                Ok(s) => s,
                Err(e) => return input_error("export", Format::Text, &e),
            };
            let text = export(&subject).to_json();
            let written = match &output {
                Some(path) => std::fs::write(path, text)
                    .map_err(|source| CliError::Io { path: path.display().to_string(), source }),
                None => std::io::stdout()
                    .write_all(text.as_bytes())
                    .map_err(|source| CliError::Io { path: String::from("stdout"), source }),
            };
            match written {
                Ok(()) => ExitCode::SUCCESS,
                Err(e) => input_error("export", Format::Text, &e),
            }
        }
    }
}
