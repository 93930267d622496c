use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use z2z2_core::matrep::{
    family_rep, closure_report, composition_report, identification_report, is_exceptional, prove_no_rep,
    verify_rep, DEFAULT_BUDGET,
};
use z2z2_core::models::{model_report, Model};
use z2z2_core::structure::{
    apply_equivalence, normalize, round_trip_report, table_entry, ConstantsRecord, TableLabel,
};
use z2z2_core::superspace::{bch_report, covderiv_report, riccati_report, superfield_report, Case};
use z2z2_core::{Check, Field, Report, Scalar};

#[derive(Parser)]
#[command(name = "z2z2", version, about = "Exact checks for minimal Z2xZ2-graded Lie (super)algebras")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every randomized suite.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Cmd {
    /// Audit every row of both classification tables.
    VerifyTables {
        #[arg(long, value_parser = parse_field, default_value = "R")]
        field: Field,
    },
    /// Reduce a JSON constants record to its table row.
    Normalize {
        /// Expected kind of the record (algebra, superalgebra or z2).
        #[arg(long)]
        kind: Option<String>,
        #[arg(long = "in")]
        input: PathBuf,
        /// Overrides the record's field.
        #[arg(long, value_parser = parse_field)]
        field: Option<Field>,
    },
    /// Matrix representations.
    Rep {
        #[command(subcommand)]
        action: RepCmd,
    },
    /// Coefficients of the BCH generating function.
    Bch {
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
    /// Regular solution of the Riccati equation for a constant C.
    Riccati {
        #[arg(long, value_parser = parse_scalar, default_value = "-1", allow_hyphen_values = true)]
        c: Scalar,
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
    /// Superspace transformations and covariant derivatives.
    Covderiv {
        /// s10, s10-, a4 or a8.
        #[arg(long)]
        case: String,
        #[arg(long, default_value_t = 16)]
        order: usize,
    },
    /// Worldline models.
    Model {
        #[command(subcommand)]
        action: ModelCmd,
    },
    /// Every suite.
    All {
        #[arg(long, default_value_t = 16)]
        order: usize,
        /// Normalization round trips.
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        /// Random draws per representation family.
        #[arg(long, default_value_t = 100)]
        draws: usize,
    },
}

#[derive(Subcommand)]
enum RepCmd {
    /// Check the brackets of one family variant at given parameters.
    Verify(RepArgs),
    /// Print the matrices of one family variant.
    Emit(RepArgs),
    /// Search for a representation of an excluded row.
    ProveNone {
        label: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
    },
    /// Every family variant at random parameters.
    Closure {
        #[arg(long, default_value_t = 100)]
        draws: usize,
    },
}

#[derive(clap::Args)]
struct RepArgs {
    /// Table label, e.g. A7 or S10_{eps=-1}.
    label: String,
    #[arg(long, default_value = "general")]
    variant: String,
    /// Representation parameter, e.g. --param lambda=1/2.
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, Scalar)>,
}

#[derive(Subcommand)]
enum ModelCmd {
    /// a1, s7-classical or s7-quantum.
    Check {
        model: String,
        /// cos²γ as an exact rational.
        #[arg(long, value_parser = parse_scalar, default_value = "1/4")]
        cos2: Scalar,
    },
}

fn parse_field(s: &str) -> Result<Field, String> {
    s.parse().map_err(|_| format!("expected R or C, got {s:?}"))
}

fn parse_scalar(s: &str) -> Result<Scalar, String> {
    s.parse().map_err(|_| format!("not an exact scalar: {s:?}"))
}

fn parse_param(s: &str) -> Result<(String, Scalar), String> {
    let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got {s:?}"))?;
    Ok((k.trim().to_string(), parse_scalar(v.trim())?))
}

/// Input problems that are not check failures.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Self {
        Usage(e.to_string())
    }
}

fn normalize_record(kind: Option<&str>, input: &PathBuf, field: Option<Field>) -> Result<Report, Usage> {
    let text = std::fs::read_to_string(input).map_err(|e| Usage(format!("{}: {e}", input.display())))?;
    let rec: ConstantsRecord = serde_json::from_str(&text)?;
    if let Some(k) = kind {
        if k != rec.kind {
            return Err(Usage(format!("--kind {k} but the record is of kind {}", rec.kind)));
        }
    }
    let field = field.unwrap_or(rec.field);
    let c = rec.parse()?;
    let mut rep = Report::new();
    let nonzero: Vec<String> =
        c.residuals().into_iter().filter(|(_, v)| !v.is_zero()).map(|(n, v)| format!("{n} = {}", v.render())).collect();
    rep.push(
        Check::from_bool("input satisfies the graded Jacobi identity", nonzero.is_empty(), nonzero.join(", "))
            .anchor("constraints on the structure constants"),
    );
    if !nonzero.is_empty() {
        return Ok(rep);
    }
    match normalize(&c, field) {
        Ok(n) => {
            let entry = table_entry(&n.label)?;
            let img = apply_equivalence(&c, &n.witness)?;
            rep.push(
                Check::pass(format!("normalizes to {} over {field}", n.label))
                    .anchor("classification tables")
                    .certificate(json!({ "label": n.label.to_string(), "witness": n.witness })),
            );
            rep.push(Check::from_bool("witness maps the input onto the table entry", img == entry, format!("{img:?}")));
        }
        Err(e) => rep.push(Check::fail("normalization", e.to_string())),
    }
    Ok(rep)
}

fn rep_args(a: &RepArgs) -> Result<(TableLabel, z2z2_core::matrep::Representation), Usage> {
    let label: TableLabel = a.label.parse()?;
    let params: BTreeMap<String, Scalar> = a.params.iter().cloned().collect();
    let rep = family_rep(&label, &a.variant, &params)?;
    Ok((label, rep))
}

fn prove_none_check(label: &TableLabel, budget: usize) -> Result<Check, Usage> {
    Ok(prove_no_rep(label, budget)?.to_check(label))
}

fn exceptional_labels() -> Vec<TableLabel> {
    ["A5", "A6_{x=1/10}", "S13_{eps=1}", "S13_{eps=-1}"]
        .iter()
        .map(|s| s.parse::<TableLabel>().expect("valid label"))
        .filter(is_exceptional)
        .collect()
}

fn run(cli: &Cli) -> Result<(Report, Option<serde_json::Value>), Usage> {
    let mut extra = None;
    let rep = match &cli.cmd {
        Cmd::VerifyTables { field } => verify_tables_report(*field),
        Cmd::Normalize { kind, input, field } => normalize_record(kind.as_deref(), input, *field)?,
        Cmd::Rep { action } => match action {
            RepCmd::Verify(a) => {
                let (label, r) = rep_args(a)?;
                verify_rep(&r).to_report(&format!("{label}[{}]: ", a.variant), r.names())
            }
            RepCmd::Emit(a) => {
                let (label, r) = rep_args(a)?;
                let mut rep = Report::new();
                rep.push(Check::pass(format!("{label}[{}] materialized", a.variant)).certificate(r.to_json()));
                extra = Some(r.to_json());
                rep
            }
            RepCmd::ProveNone { label, budget } => {
                let label: TableLabel = label.parse()?;
                let mut rep = Report::new();
                rep.push(prove_none_check(&label, *budget)?);
                rep
            }
            RepCmd::Closure { draws } => closure_report(*draws, cli.seed),
        },
        Cmd::Bch { order } => bch_report(*order),
        Cmd::Riccati { c, order } => riccati_report(c, *order),
        Cmd::Covderiv { case, order } => {
            let case: Case = case.parse()?;
            covderiv_report(case, *order)
        }
        Cmd::Model { action: ModelCmd::Check { model, cos2 } } => {
            let m: Model = model.parse()?;
            model_report(m, cos2)
        }
        Cmd::All { order, samples, draws } => {
            let mut rep = Report::new();
            rep.extend(verify_tables_report(Field::Real));
            rep.extend(verify_tables_report(Field::Complex));
            rep.extend(round_trip_report(*samples, cli.seed));
            rep.extend(closure_report(*draws, cli.seed));
            for label in exceptional_labels() {
                rep.push(prove_none_check(&label, DEFAULT_BUDGET)?);
            }
            rep.extend(composition_report(false));
            rep.extend(composition_report(true));
            rep.extend(identification_report());
            rep.extend(superfield_report());
            rep.extend(bch_report(*order));
            rep.extend(riccati_report(&Scalar::int(-1), *order));
            for case in Case::all() {
                rep.extend(covderiv_report(case, *order));
            }
            for m in [Model::A1, Model::S7Classical, Model::S7Quantum] {
                rep.extend(model_report(m, &Scalar::frac(1, 4)));
            }
            rep
        }
    };
    Ok((rep, extra))
}

fn verify_tables_report(field: Field) -> Report {
    z2z2_core::structure::verify_tables(field)
}

fn command_echo() -> String {
    std::env::args().skip(1).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (mut rep, extra) = match run(&cli) {
        Ok(r) => r,
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    rep.command = Some(command_echo());
    match cli.format {
        Format::Json => println!("{}", rep.to_json()),
        Format::Text => {
            print!("{}", rep.to_text());
            if let Some(v) = extra {
                println!("{}", serde_json::to_string_pretty(&v).expect("json value"));
            }
        }
    }
    if rep.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
