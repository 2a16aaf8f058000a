//! `qbps`: command-line front end for quasi-BPS combinatorics.

mod codec;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qbps_core::bps::{compare_summands, dd_generators, decompose_weight, from_summand, is_good_weight, magic_generators};
use qbps_core::lattice::{rho, DimVec, GenericWeight, Weight};
use qbps_core::oracle::self_check;
use qbps_core::rational::fmt_q;
use qbps_core::sod::{framed_summands, preprojective_summands, unframed_summands, SlopeWindow};
use qbps_core::structure::{serre_report, support_gate, DimP};
use qbps_core::zonotope::{w_polytope, FacetCap};
use qbps_core::{Error, GenericReal, Quiver, Result};
use serde_json::{json, Value};

use codec::*;

#[derive(Parser)]
#[command(name = "qbps", version, about = "Exact combinatorics of quasi-BPS categories for symmetric quivers")]
struct Cli {
    /// Quiver as a JSON file path or inline JSON.
    #[arg(long, global = true)]
    quiver: Option<String>,
    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "tsv")]
    json: bool,
    /// Emit flattened `path<TAB>value` lines instead of JSON.
    #[arg(long, global = true)]
    tsv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quiver with its assumption flags.
    Describe,
    /// Build a derived quiver.
    Build {
        #[command(subcommand)]
        kind: BuildKind,
    },
    /// Dominant weights in the magic window, or in the quasi-BPS window with `--mu`.
    MagicGens {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        /// Weight `δ` as JSON, zero when omitted.
        #[arg(long)]
        delta: Option<String>,
        /// Use the framed polytope with the perturbed weight `δ + μσ`.
        #[arg(long)]
        mu: Option<String>,
        /// Report which generators lie on the boundary of the polytope.
        #[arg(long)]
        boundary: bool,
    },
    /// Decompose a dominant weight into a summand label.
    Decompose {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        /// Dominant weight as JSON.
        #[arg(long, allow_hyphen_values = true)]
        chi: String,
        /// Weight `δ` as JSON, zero when omitted.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Canonical generator of a summand label.
    FromSummand {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        /// Summand label as JSON.
        #[arg(long)]
        label: String,
        /// Weight `δ` as JSON, zero when omitted.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Order of two summand labels.
    Compare {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        /// First summand label as JSON.
        #[arg(long)]
        a: String,
        /// Second summand label as JSON.
        #[arg(long)]
        b: String,
    },
    /// Enumerate semiorthogonal summands.
    Sod {
        #[command(subcommand)]
        kind: SodKind,
    },
    /// Hypothesis checks.
    Check {
        #[command(subcommand)]
        kind: CheckKind,
    },
    /// Run the oracle self-check.
    Verify,
}

#[derive(Subcommand)]
enum BuildKind {
    /// Add an opposite arrow for every arrow.
    Double,
    /// Double and add one loop at every vertex.
    Triple,
    /// Add a framing vertex with `alpha` arrows to every gauge vertex.
    Frame {
        #[arg(long)]
        alpha: i64,
    },
    /// Very symmetric companion with `A` arrows between every pair of vertices.
    Companion {
        /// Defaults to the smallest admissible value.
        #[arg(long = "A")]
        a: Option<usize>,
    },
}

#[derive(Args)]
struct WindowArgs {
    /// Dimension vector as JSON.
    #[arg(long)]
    d: String,
    /// Closed slope window `lo,hi`.
    #[arg(long, allow_hyphen_values = true)]
    window: String,
}

#[derive(Subcommand)]
enum SodKind {
    /// Summands of the framed window `[μ, μ + alpha)`.
    Framed {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        /// Generic real `q`, `q:+1` or `q:-1`.
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        alpha: i64,
        /// Weight `δ` as JSON, zero when omitted.
        #[arg(long)]
        delta: Option<String>,
    },
    /// Summands of fixed total weight with slopes in a window.
    Unframed {
        /// Total weight, a rational.
        #[arg(long, allow_hyphen_values = true)]
        w: String,
        #[command(flatten)]
        window: WindowArgs,
    },
    /// Summands for the preprojective algebra of the quiver.
    Preprojective {
        #[command(flatten)]
        window: WindowArgs,
    },
}

#[derive(Subcommand)]
enum CheckKind {
    /// Whether `δ + μσ` avoids the boundary of the polytope.
    GoodWeight {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        /// Weight `δ` as JSON, zero when omitted.
        #[arg(long)]
        delta: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Support gate for an integer `v`.
    Support {
        #[arg(long, allow_hyphen_values = true)]
        v: i64,
        /// Dimension vector as JSON.
        #[arg(long)]
        d: Option<String>,
        /// Total dimension, instead of `--d`.
        #[arg(long)]
        dbar: Option<usize>,
    },
    /// Structural flags, `dim P` and the support gate.
    Structure {
        /// Dimension vector as JSON.
        #[arg(long)]
        d: String,
        #[arg(long, allow_hyphen_values = true, default_value_t = 1)]
        v: i64,
    },
}

/// Output document plus an exit status for successful runs.
struct Output {
    value: Value,
    status: u8,
}

impl From<Value> for Output {
    fn from(value: Value) -> Self {
        Self { value, status: 0 }
    }
}

fn read_json(arg: &str) -> Result<Value> {
    let text = if arg.trim_start().starts_with(['{', '[']) || arg.trim().parse::<f64>().is_ok() {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| Error::Invalid(format!("cannot read {arg:?}: {e}")))?
    };
    serde_json::from_str(&text).map_err(|e| Error::Invalid(format!("malformed JSON: {e}")))
}

fn quiver(cli: &Cli) -> Result<Quiver> {
    match &cli.quiver {
        Some(q) => parse_quiver(&read_json(q)?),
        None => Err(Error::Invalid("this command needs --quiver".into())),
    }
}

fn dim(q: &Quiver, s: &str) -> Result<DimVec> {
    parse_dim(q, &read_json(s)?)
}

fn weight_or_zero(q: &Quiver, d: &DimVec, s: Option<&str>) -> Result<Weight> {
    match s {
        Some(s) => parse_weight(q, d, &read_json(s)?),
        None => Ok(Weight::zero(d.total())),
    }
}

fn window(s: &str) -> Result<SlopeWindow> {
    let Some((lo, hi)) = s.split_once(',') else {
        return Err(Error::Invalid(format!("window must be \"lo,hi\", got {s:?}")));
    };
    Ok(SlopeWindow::new(lo.parse()?, hi.parse()?))
}

fn describe(q: &Quiver) -> Value {
    let f = q.flags();
    json!({
        "quiver": quiver_json(q),
        "gauge_vertices": q.gauge_count(),
        "framed": q.framing().is_some(),
        "symmetric": f.symmetric,
        "same_parity_loops": f.same_parity_loops,
        "assum1": f.assum1,
        "assum11": f.assum11,
        "very_symmetric": f.very_symmetric,
        "alpha_min": q.alpha_min(),
    })
}

fn flag(b: bool) -> Value {
    if b {
        Value::Bool(true)
    } else {
        Value::String("unknown".into())
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Describe => Ok(describe(&quiver(cli)?).into()),
        Command::Build { kind } => {
            let q = quiver(cli)?;
            Ok(match kind {
                BuildKind::Double => quiver_json(&q.double()),
                BuildKind::Triple => quiver_json(&q.triple()),
                BuildKind::Frame { alpha } => quiver_json(&q.frame(*alpha)?),
                BuildKind::Companion { a } => {
                    let (qc, u) = q.very_symmetric_companion(*a)?;
                    let names = q.vertices();
                    json!({
                        "quiver": quiver_json(&qc),
                        "u_spec": u.edges.iter().map(|&(s, t)| json!([names[s], names[t]])).collect::<Vec<_>>(),
                    })
                }
            }
            .into())
        }
        Command::MagicGens { d, delta, mu, boundary } => {
            let q = quiver(cli)?;
            let d = dim(&q, d)?;
            let delta = weight_or_zero(&q, &d, delta.as_deref())?;
            let gens = match mu {
                Some(mu) => dd_generators(&q, &d, &GenericWeight::shifted(&delta, &mu.parse()?))?,
                None => magic_generators(&q, &d, &delta)?,
            };
            let mut out = json!({
                "d": dim_json(&q, &d),
                "delta": weight_json(&q, &d, &delta),
                "generators": gens.iter().map(|g| weight_json(&q, &d, g)).collect::<Vec<_>>(),
                "count": gens.len(),
            });
            if *boundary {
                if mu.is_some() {
                    return Err(Error::Invalid("--boundary applies to the magic window only".into()));
                }
                let z = w_polytope(&q, &d)?;
                let r = rho(&d);
                let mut on = Vec::new();
                for g in &gens {
                    on.push(z.on_boundary(&(&(g + &r) - &delta))?);
                }
                out["boundary"] = json!(on);
                out["boundary_count"] = json!(on.iter().filter(|&&b| b).count());
            }
            Ok(out.into())
        }
        Command::Decompose { d, chi, delta } => {
            let q = quiver(cli)?;
            let d = dim(&q, d)?;
            let chi = parse_weight(&q, &d, &read_json(chi)?)?;
            let delta = weight_or_zero(&q, &d, delta.as_deref())?;
            Ok(decomposition_json(&q, &d, &decompose_weight(&q, &d, &chi, &delta)?).into())
        }
        Command::FromSummand { d, label, delta } => {
            let q = quiver(cli)?;
            let d = dim(&q, d)?;
            let label = parse_label(&q, &read_json(label)?)?;
            let delta = weight_or_zero(&q, &d, delta.as_deref())?;
            let chi = from_summand(&q, &d, &label, &delta)?;
            Ok(json!({"label": label_json(&q, &label), "chi": weight_json(&q, &d, &chi)}).into())
        }
        Command::Compare { d, a, b } => {
            let q = quiver(cli)?;
            let d = dim(&q, d)?;
            let a = parse_label(&q, &read_json(a)?)?;
            let b = parse_label(&q, &read_json(b)?)?;
            Ok(json!({"order": compare_summands(&q, &d, &a, &b)?.name()}).into())
        }
        Command::Sod { kind } => {
            let q = quiver(cli)?;
            let report = match kind {
                SodKind::Framed { d, mu, alpha, delta } => {
                    let d = dim(&q, d)?;
                    let delta = weight_or_zero(&q, &d, delta.as_deref())?;
                    framed_summands(&q, &d, &mu.parse::<GenericReal>()?, *alpha, &delta)?
                }
                SodKind::Unframed { w, window: wa } => {
                    let d = dim(&q, &wa.d)?;
                    unframed_summands(&q, &d, &qbps_core::rational::parse_q(w)?, &window(&wa.window)?)?
                }
                SodKind::Preprojective { window: wa } => {
                    let d = dim(&q, &wa.d)?;
                    preprojective_summands(&q, &d, &window(&wa.window)?)?
                }
            };
            Ok(sod_json(&report).into())
        }
        Command::Check { kind } => match kind {
            CheckKind::GoodWeight { d, delta, mu } => {
                let q = quiver(cli)?;
                let d = dim(&q, d)?;
                let delta = weight_or_zero(&q, &d, delta.as_deref())?;
                let g = match mu {
                    Some(mu) => GenericWeight::shifted(&delta, &mu.parse()?),
                    None => GenericWeight::exact(delta),
                };
                Ok(json!({"good": is_good_weight(&q, &d, &g)?}).into())
            }
            CheckKind::Support { v, d, dbar } => {
                let (total, parity) = match (d, dbar) {
                    (Some(d), _) => {
                        let q = quiver(cli)?;
                        (dim(&q, d)?.total(), Some(q.assum1()))
                    }
                    (None, Some(n)) => (*n, None),
                    (None, None) => return Err(Error::Invalid("check support needs --d or --dbar".into())),
                };
                let g = support_gate(total, *v)?;
                let mut out = json!({"gate": g.gate});
                if !g.witnesses.is_empty() {
                    out["witnesses"] = json!(g
                        .witnesses
                        .iter()
                        .map(|(dp, vp)| json!({"dbar": dp, "v": fmt_q(vp)}))
                        .collect::<Vec<_>>());
                }
                if let Some(p) = parity {
                    out["parity"] = json!(p);
                }
                Ok(out.into())
            }
            CheckKind::Structure { d, v } => {
                let q = quiver(cli)?;
                let d = dim(&q, d)?;
                let r = serre_report(&q, &d, *v)?;
                let (dim_p, status) = match r.dim_p {
                    DimP::Value(n) => (json!(n), 0),
                    DimP::NotAsserted { .. } => (json!("not asserted"), 3),
                };
                let f = r.flags;
                Ok(Output {
                    value: json!({
                        "alpha": r.alpha,
                        "parity": r.parity,
                        "gate": r.gate.gate,
                        "witnesses": r.gate.witnesses.iter().map(|(dp, vp)| json!({"dbar": dp, "v": fmt_q(vp)})).collect::<Vec<_>>(),
                        "dim_P": dim_p,
                        "flags": {
                            "XY_gorenstein": flag(f.xy_gorenstein),
                            "P_classical_normal": flag(f.p_classical_normal),
                            "P_gorenstein": flag(f.p_gorenstein),
                            "serre_trivial_applicable": flag(f.serre_trivial_applicable),
                            "indecomposable_applicable": flag(f.indecomposable_applicable),
                            "regular_proper_applicable": flag(f.regular_proper_applicable),
                        },
                    }),
                    status,
                })
            }
        },
        Command::Verify => {
            let lines = self_check();
            let pass = lines.iter().all(|l| l.pass);
            Ok(Output {
                value: json!({
                    "checks": lines.iter().map(|l| json!({"name": l.name, "pass": l.pass, "detail": l.detail})).collect::<Vec<_>>(),
                    "pass": pass,
                }),
                status: if pass { 0 } else { 1 },
            })
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Invalid(_) => 2,
        Error::Precondition(_) | Error::NotAsserted(_) | Error::CapExceeded { .. } => 3,
        Error::Internal(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Ok(cap) = std::env::var("QBPS_FACET_CAP") {
        match FacetCap::parse(&cap) {
            Ok(c) => c.set_global(),
            Err(e) => {
                eprintln!("error: QBPS_FACET_CAP: {e}");
                return ExitCode::from(2);
            }
        }
    }
    match run(&cli) {
        Ok(out) => {
            let text = if cli.tsv {
                to_tsv(&out.value)
            } else {
                let mut s = serde_json::to_string_pretty(&out.value).expect("JSON values serialize");
                s.push('\n');
                s
            };
            print!("{text}");
            ExitCode::from(out.status)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
