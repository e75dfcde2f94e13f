use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use theta5::arithfn::{divisor_table, partitions_upto, DivisorKernel};
use theta5::exact::{fmt_rat_strict, parse_rat};
use theta5::identities::{self, IdentityReport, VariantSelection};
use theta5::numeric::{run_numeric, NumericCheck, NumericConfig, NumericReport};
use theta5::theta::{eta_q, eta_quotient, theta_const, theta_const_product, EtaQuotientSpec};
use theta5::{BigRat, Error, FracSeries, ThetaChar};

#[derive(Parser)]
#[command(name = "theta5", version, about = "Level-five theta constants, eta quotients and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Object {
    Theta,
    ThetaProduct,
    Eta,
    EtaQuotient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum VariantArg {
    AsStated,
    Corrected,
    All,
}

impl From<VariantArg> for VariantSelection {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::AsStated => VariantSelection::AsStated,
            VariantArg::Corrected => VariantSelection::Corrected,
            VariantArg::All => VariantSelection::All,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// List catalog identities and numeric checks.
    List {
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Expand a theta constant, an eta function or an eta quotient.
    Expand {
        #[arg(long, value_enum)]
        object: Object,
        /// Characteristic `e,e'`, e.g. `1,1/5`.
        #[arg(long = "char")]
        ch: Option<String>,
        /// Order of the z-derivative (theta only).
        #[arg(long, default_value_t = 0)]
        deriv: u32,
        /// Eta quotient `mult:exp/mult:exp`, e.g. `5:5/1:-1`.
        #[arg(long)]
        spec: Option<String>,
        /// Multiplier m of η(mτ).
        #[arg(long, default_value = "1")]
        mult: String,
        #[arg(long, default_value = "20")]
        order: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verify catalog identities (and, with --all, the numeric checks).
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        id: Vec<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "20")]
        order: String,
        #[arg(long, value_enum, default_value = "as-stated")]
        variant: VariantArg,
        /// Skip the numeric checks.
        #[arg(long)]
        exact_only: bool,
        /// Run catalog entries one at a time.
        #[arg(long)]
        sequential: bool,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate a divisor-sum kernel.
    Coeffs {
        #[arg(long)]
        kernel: DivisorKernel,
        #[arg(long)]
        upto: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Tabulate the partition function.
    Partitions {
        #[arg(long)]
        upto: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run the seeded numeric checks.
    NumericCheck {
        #[arg(long)]
        id: Vec<NumericCheck>,
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides each check's pinned tolerance.
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// One entry of a `verify` document.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum ReportDoc {
    Exact(IdentityReport),
    Numeric(NumericReport),
}

enum Outcome {
    Pass,
    Fail,
    Broken,
}

impl Outcome {
    fn code(self) -> ExitCode {
        ExitCode::from(match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Broken => 2,
        })
    }
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn order_arg(s: &str) -> Result<BigRat, Error> {
    let o = parse_rat(s)?;
    if o <= BigRat::from_integer(0.into()) {
        return Err(Error::InvalidArgument("order must be positive".into()));
    }
    Ok(o)
}

fn expand(
    object: Object,
    ch: Option<&str>,
    deriv: u32,
    spec: Option<&str>,
    mult: &str,
    order: &BigRat,
) -> Result<FracSeries, Error> {
    let need_char = || -> Result<ThetaChar, Error> {
        ch.ok_or_else(|| Error::InvalidArgument("--char is required for theta objects".into()))?.parse()
    };
    match object {
        Object::Theta => theta_const(&need_char()?, deriv, order),
        Object::ThetaProduct => theta_const_product(&need_char()?, order),
        Object::Eta => eta_q(&parse_rat(mult)?, order),
        Object::EtaQuotient => {
            let spec: EtaQuotientSpec =
                spec.ok_or_else(|| Error::InvalidArgument("--spec is required for eta quotients".into()))?.parse()?;
            eta_quotient(&spec, order)
        }
    }
}

fn list(format: Format) -> String {
    let cat = identities::catalog();
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Row<'a> {
                id: &'a str,
                kind: &'a str,
                title: &'a str,
                location: &'a str,
                variants: Vec<String>,
            }
            let mut rows: Vec<Row> = cat
                .iter()
                .map(|e| Row {
                    id: e.id,
                    kind: "exact",
                    title: e.title,
                    location: e.location,
                    variants: e.variants.iter().map(|v| v.to_string()).collect(),
                })
                .collect();
            rows.extend(NumericCheck::ALL.iter().map(|c| Row {
                id: c.id(),
                kind: "numeric",
                title: c.title(),
                location: "numeric",
                variants: Vec::new(),
            }));
            json(&rows)
        }
        Format::Text => {
            let mut out = String::new();
            for e in &cat {
                let variants: Vec<_> = e.variants.iter().map(|v| v.name()).collect();
                let _ = writeln!(out, "{:<6} {:<22} {:<28} {}", e.id, variants.join(","), e.location, e.title);
            }
            for c in NumericCheck::ALL {
                let _ = writeln!(out, "{:<6} {:<22} {:<28} {}", c.id(), "numeric", "z-dependent", c.title());
            }
            out
        }
    }
}

fn summarize(exact: &[IdentityReport], numeric: &[NumericReport]) -> Outcome {
    if exact.iter().any(|r| r.error.is_some() && r.legs == 0) || numeric.iter().any(|r| r.error.is_some()) {
        Outcome::Broken
    } else if exact.iter().all(|r| r.passed) && numeric.iter().all(|r| r.passed) {
        Outcome::Pass
    } else {
        Outcome::Fail
    }
}

fn render_reports(exact: Vec<IdentityReport>, numeric: Vec<NumericReport>, format: Format) -> (String, Outcome) {
    let outcome = summarize(&exact, &numeric);
    let text = match format {
        Format::Json => {
            let docs: Vec<ReportDoc> =
                exact.into_iter().map(ReportDoc::Exact).chain(numeric.into_iter().map(ReportDoc::Numeric)).collect();
            json(&docs)
        }
        Format::Text => {
            let mut out = String::new();
            for r in &exact {
                let _ = writeln!(out, "{}", r.summary_line());
            }
            for r in &numeric {
                let _ = writeln!(out, "{}", r.summary_line());
            }
            let total = exact.len() + numeric.len();
            let passed = exact.iter().filter(|r| r.passed).count() + numeric.iter().filter(|r| r.passed).count();
            let _ = writeln!(out, "{passed}/{total} passed");
            out
        }
    };
    (text, outcome)
}

fn run(cli: Cli) -> Result<(String, Outcome), Error> {
    match cli.command {
        Command::List { format } => Ok((list(format), Outcome::Pass)),
        Command::Expand { object, ch, deriv, spec, mult, order, format } => {
            let order = order_arg(&order)?;
            let f = expand(object, ch.as_deref(), deriv, spec.as_deref(), &mult, &order)?;
            let text = match format {
                Format::Text => format!("{}\n", f.render()),
                Format::Json => json(&f.to_doc()),
            };
            Ok((text, Outcome::Pass))
        }
        Command::Verify { id, all, order, variant, exact_only, sequential, format } => {
            let order = order_arg(&order)?;
            let selection = VariantSelection::from(variant);
            let cfg = NumericConfig::default();
            let mut exact = Vec::new();
            let mut numeric = Vec::new();
            if all {
                exact = identities::verify_all(&order, !sequential, selection);
                if !exact_only {
                    numeric = NumericCheck::ALL.iter().map(|&c| run_numeric(c, None, None, &cfg, !sequential)).collect();
                }
            } else {
                for i in &id {
                    match i.parse::<NumericCheck>() {
                        Ok(c) if !exact_only => numeric.push(run_numeric(c, None, None, &cfg, !sequential)),
                        Ok(_) => {}
                        Err(_) => exact.extend(identities::verify_selected(i, &order, selection)?),
                    }
                }
            }
            Ok(render_reports(exact, numeric, format))
        }
        Command::Coeffs { kernel, upto, format } => {
            let table = divisor_table(kernel, upto);
            let text = match format {
                Format::Json => json(&table.iter().map(fmt_rat_strict).collect::<Vec<_>>()),
                Format::Text => table.iter().enumerate().fold(String::new(), |mut out, (i, v)| {
                    let _ = writeln!(out, "{} {}", i + 1, v);
                    out
                }),
            };
            Ok((text, Outcome::Pass))
        }
        Command::Partitions { upto, format } => {
            let p = partitions_upto(upto);
            let text = match format {
                Format::Json => json(&p.iter().map(|v| v.to_string()).collect::<Vec<_>>()),
                Format::Text => p.iter().enumerate().fold(String::new(), |mut out, (n, v)| {
                    let _ = writeln!(out, "{n} {v}");
                    out
                }),
            };
            Ok((text, Outcome::Pass))
        }
        Command::NumericCheck { id, samples, seed, tol, format } => {
            let mut cfg = NumericConfig::default();
            if let Some(s) = seed {
                cfg = cfg.with_seed(s);
            }
            let checks = if id.is_empty() { NumericCheck::ALL.to_vec() } else { id };
            let reports = checks.into_iter().map(|c| run_numeric(c, samples, tol, &cfg, true)).collect();
            Ok(render_reports(Vec::new(), reports, format))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok((text, outcome)) => {
            print!("{text}");
            outcome.code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
