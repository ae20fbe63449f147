//! `spectra`: computes spectra of finite category models and checks their
//! topology, supports and group actions from the command line.
//!
//! Exit status: 0 when every requested check passes, 1 when a check fails,
//! 2 on unreadable or invalid input, 3 when a capacity limit is exceeded.

mod input;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use esp_core::checks::{self, Battery, SuiteReport};
use esp_core::equivariance::invariant_subcats;
use esp_core::io;
use esp_core::lattice::{enumerate_by_filter, Kind, Lattice, DEFAULT_INDEC_LIMIT};
use esp_core::model::validate_model;
use esp_core::random::RandomConfig;
use esp_core::spectrum::build_spectrum;
use esp_core::topology::DEFAULT_FAMILY_CAP;
use esp_core::FiniteSpace;
use serde::Serialize;
use serde_json::{json, Value};

use input::{Context, Failure, FamilySpec, Status};

#[derive(Parser, Debug)]
#[command(
    name = "spectra",
    version,
    about = "Spectra of finite extriangulated category models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Write the JSON report here instead of printing it.
    #[arg(long, value_name = "PATH")]
    report: Option<PathBuf>,
    /// Cap on indecomposables for exhaustive enumeration.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_INDEC_LIMIT)]
    limit: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check model, space or bridge files without computing anything else.
    Validate {
        #[arg(long)]
        model: Option<PathBuf>,
        #[arg(long)]
        space: Option<PathBuf>,
        #[arg(long)]
        bridge: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// List the subcategories of one kind, or one family of primes.
    Lattice {
        #[arg(long)]
        model: PathBuf,
        /// as, thick, serre, tt-ideal, nc-two-sided, matsui, balmer or nc.
        #[arg(long, value_parser = FamilySpec::parse)]
        kind: FamilySpec,
        /// Also compare against the filter of all subsets.
        #[arg(long)]
        oracle: bool,
        #[command(flatten)]
        out: Output,
    },
    /// Build the spectrum of a family and check soberness and spectrality.
    Spectrum {
        #[arg(long)]
        model: PathBuf,
        /// as, thick, serre, tt-ideal, nc-two-sided, matsui, balmer, nc or custom:FILE.
        #[arg(long, value_parser = FamilySpec::parse)]
        family: FamilySpec,
        /// Write the specialization Hasse diagram as DOT.
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Topological properties and laws of a finite space.
    Topology {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, value_name = "PATH")]
        dot: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Checks on a support against the spectrum of a family.
    Support {
        #[arg(long)]
        model: PathBuf,
        #[arg(long)]
        support: PathBuf,
        #[arg(long, value_parser = FamilySpec::parse, default_value = "thick")]
        family: FamilySpec,
        #[arg(long, value_enum)]
        check: SupportCheck,
        #[command(flatten)]
        out: Output,
    },
    /// Checks on a group action bridge.
    Action {
        #[arg(long)]
        bridge: PathBuf,
        #[arg(long, value_enum)]
        check: ActionCheck,
        /// Subcategory kind for the correspondence check.
        #[arg(long, value_enum, default_value = "thick")]
        kind: CorrespondenceKind,
        #[command(flatten)]
        out: Output,
    },
    /// Run the full law battery on a model, the fixtures, or seeded random models.
    Suite {
        #[arg(long, conflicts_with_all = ["fixtures", "random"])]
        model: Option<PathBuf>,
        #[arg(long, conflicts_with = "random")]
        fixtures: bool,
        /// Number of random models.
        #[arg(long, value_name = "N")]
        random: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SupportCheck {
    Classifying,
    Compatible,
    Immersion,
    ImmersionDual,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum ActionCheck {
    Correspondence,
    Spectrum,
    GMatsui,
    GSerre,
    GBalmer,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CorrespondenceKind {
    As,
    Thick,
    Serre,
}

impl From<CorrespondenceKind> for Kind {
    fn from(k: CorrespondenceKind) -> Self {
        match k {
            CorrespondenceKind::As => Kind::As,
            CorrespondenceKind::Thick => Kind::Thick,
            CorrespondenceKind::Serre => Kind::Serre,
        }
    }
}

/// A finished command: its report and whether its checks passed.
struct Outcome {
    kind: &'static str,
    passed: bool,
    body: Value,
}

impl Outcome {
    fn new<T: Serialize>(kind: &'static str, passed: bool, body: &T) -> input::Result<Self> {
        let body = serde_json::to_value(body).map_err(|e| Failure::input(e.to_string()))?;
        Ok(Self { kind, passed, body })
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn write_dot(path: &Path, space: &FiniteSpace, name: &str) -> input::Result<()> {
    io::write_atomic(path, &space.to_dot(name)).context(&path.display().to_string())
}

fn validate(
    model: Option<&Path>,
    space: Option<&Path>,
    bridge: Option<&Path>,
) -> input::Result<Outcome> {
    if model.is_none() && space.is_none() && bridge.is_none() {
        return Err(Failure::input(
            "validate needs --model, --space or --bridge",
        ));
    }
    let mut body = serde_json::Map::new();
    let mut passed = true;
    if let Some(path) = model {
        let report = validate_model(&input::model_doc(path)?);
        passed &= report.is_valid();
        body.insert(
            "model".into(),
            json!({"valid": report.is_valid(), "issues": report.messages()}),
        );
    }
    if let Some(path) = space {
        let s = input::space(path)?;
        body.insert(
            "space".into(),
            json!({"valid": true, "points": s.len(), "t0": s.is_t0()}),
        );
    }
    if let Some(path) = bridge {
        let b = input::bridge(path)?;
        body.insert(
            "bridge".into(),
            json!({"valid": true, "group_order": b.action().len(), "base": b.base().hash(), "eq": b.eq().hash()}),
        );
    }
    Outcome::new("validate", passed, &body)
}

fn lattice(model: &Path, kind: &FamilySpec, oracle: bool, limit: usize) -> input::Result<Outcome> {
    let m = input::model(model)?;
    let family = kind.build(&m, limit)?;
    let mut body = json!({
        "model_hash": m.hash(),
        "count": family.len(),
        "family": to_value(&family.to_doc(&m)),
    });
    let mut passed = true;
    if oracle {
        let FamilySpec::Kind(k) = kind else {
            return Err(Failure::input(
                "--oracle applies to subcategory kinds, not prime families",
            ));
        };
        let filtered = enumerate_by_filter(&m, *k, limit).context("oracle")?;
        passed = filtered.same_members(&family);
        body["oracle_agrees"] = json!(passed);
    }
    Outcome::new("lattice", passed, &body)
}

fn spectrum(
    model: &Path,
    family: &FamilySpec,
    dot: Option<&Path>,
    limit: usize,
) -> input::Result<Outcome> {
    let m = input::model(model)?;
    let fam = family.build(&m, limit)?;
    let spec = build_spectrum(&m, &fam).context("spectrum")?;
    let sober = spec.sober_report();
    let spectral = spec.spectral_report().context("spectral check")?;
    if let Some(path) = dot {
        write_dot(path, spec.space(), "spectrum")?;
    }
    let passed = sober.sober && sober.criterion && spectral.agree;
    let body = json!({
        "model_hash": m.hash(),
        "spectrum": to_value(&spec.to_doc(DEFAULT_FAMILY_CAP)),
        "sober": to_value(&sober),
        "spectral": to_value(&spectral),
    });
    Outcome::new("spectrum", passed, &body)
}

fn laws_json(b: &Battery) -> Value {
    to_value(&b.laws())
}

fn topology(path: &Path, dot: Option<&Path>) -> input::Result<Outcome> {
    let s = input::space(path)?;
    let mut b = Battery::new();
    checks::space_laws(&mut b, &s).context("topology laws")?;
    if let Some(d) = dot {
        write_dot(d, &s, "space")?;
    }
    let irreducible: Vec<Vec<String>> = s
        .irreducible_closed_sets()
        .iter()
        .map(|z| s.set_names(z))
        .collect();
    let dual = s
        .hochster_dual()
        .ok()
        .map(|d| to_value(&d.to_doc(DEFAULT_FAMILY_CAP)));
    let edges: Vec<[&str; 2]> = s
        .hasse_edges()
        .into_iter()
        .map(|(x, y)| [s.label(x), s.label(y)])
        .collect();
    let body = json!({
        "points": s.len(),
        "t0": s.is_t0(),
        "sober": s.is_sober(),
        "spectral": s.is_spectral(),
        "noetherian": s.is_noetherian(),
        "irreducible_closed_sets": irreducible,
        "specialization_covers": edges,
        "hochster_dual": dual,
        "laws": laws_json(&b),
    });
    Outcome::new("topology", b.passed(), &body)
}

fn support(
    model: &Path,
    support_path: &Path,
    family: &FamilySpec,
    check: SupportCheck,
    limit: usize,
) -> input::Result<Outcome> {
    let m = input::model(model)?;
    let sup = input::support(&m, support_path)?;
    let fam = family.build(&m, limit)?;
    let (passed, body) = match check {
        SupportCheck::Classifying => {
            let r = if sup.is_closed() {
                sup.is_classifying_closed()
            } else {
                sup.is_classifying_open()
            }
            .context("classifying")?;
            (r.classifying, to_value(&r))
        }
        SupportCheck::Compatible => {
            let witness = sup.compatibility_witness(&fam);
            let point = witness.map(|x| sup.space().label(x).to_string());
            (
                witness.is_none(),
                json!({"compatible": witness.is_none(), "incompatible_point": point}),
            )
        }
        SupportCheck::Immersion => {
            let spec = build_spectrum(&m, &fam).context("spectrum")?;
            let r = sup.immersion_j(&spec).context("immersion")?;
            (r.compatible && r.consistent(), to_value(&r))
        }
        SupportCheck::ImmersionDual => {
            let spec = build_spectrum(&m, &fam).context("spectrum")?;
            let r = sup.immersion_j_dual(&spec).context("dual immersion")?;
            (r.base.compatible && r.consistent(), to_value(&r))
        }
    };
    Outcome::new(
        "support",
        passed,
        &json!({"model_hash": m.hash(), "check": body}),
    )
}

fn action(path: &Path, check: ActionCheck, kind: CorrespondenceKind) -> input::Result<Outcome> {
    let bridge = input::bridge(path)?;
    let (passed, body) = match check {
        ActionCheck::Correspondence => {
            let r = bridge
                .verify_correspondence(kind.into())
                .context("correspondence")?;
            (r.holds, to_value(&r))
        }
        ActionCheck::Spectrum => {
            let c = invariant_subcats(bridge.base(), bridge.action(), Kind::Thick)
                .context("invariant subcategories")?;
            let d = Lattice::new(bridge.eq())
                .enumerate(Kind::Thick)
                .context("target family")?;
            let r = bridge
                .action_spectrum_check(&c, &d)
                .context("action spectrum")?;
            (r.holds, to_value(&r))
        }
        ActionCheck::GMatsui => {
            let r = bridge.g_matsui_check().context("G-Matsui")?;
            (r.holds, to_value(&r))
        }
        ActionCheck::GSerre => {
            let r = bridge.g_serre_check().context("G-Serre")?;
            (r.holds, to_value(&r))
        }
        ActionCheck::GBalmer => {
            let r = bridge.equibalmer_check().context("G-Balmer")?;
            (r.homeomorphism && r.orbit_intersections_agree, to_value(&r))
        }
    };
    Outcome::new("action", passed, &body)
}

fn suite(
    model: Option<&Path>,
    fixtures: bool,
    random: Option<usize>,
    seed: u64,
    limit: usize,
) -> input::Result<Outcome> {
    let report: SuiteReport = match (model, fixtures, random) {
        (Some(path), _, _) => {
            checks::model_suite(&input::model(path)?, limit, seed).context("suite")?
        }
        (None, true, _) => checks::fixture_suite(limit).context("suite")?,
        (None, false, Some(n)) => {
            checks::random_suite(seed, n, &RandomConfig::default(), limit).context("suite")?
        }
        (None, false, None) => {
            return Err(Failure::input(
                "suite needs --model, --fixtures or --random N",
            ))
        }
    };
    Outcome::new("suite", report.passed, &report)
}

fn run(command: Command) -> input::Result<(Outcome, Output)> {
    Ok(match command {
        Command::Validate {
            model,
            space,
            bridge,
            out,
        } => (
            validate(model.as_deref(), space.as_deref(), bridge.as_deref())?,
            out,
        ),
        Command::Lattice {
            model,
            kind,
            oracle,
            out,
        } => (lattice(&model, &kind, oracle, out.limit)?, out),
        Command::Spectrum {
            model,
            family,
            dot,
            out,
        } => (spectrum(&model, &family, dot.as_deref(), out.limit)?, out),
        Command::Topology { space, dot, out } => (topology(&space, dot.as_deref())?, out),
        Command::Support {
            model,
            support: s,
            family,
            check,
            out,
        } => (support(&model, &s, &family, check, out.limit)?, out),
        Command::Action {
            bridge,
            check,
            kind,
            out,
        } => (action(&bridge, check, kind)?, out),
        Command::Suite {
            model,
            fixtures,
            random,
            seed,
            out,
        } => (
            suite(model.as_deref(), fixtures, random, seed, out.limit)?,
            out,
        ),
    })
}

fn emit(outcome: &Outcome, out: &Output) -> input::Result<()> {
    let mut body = outcome.body.clone();
    if let Value::Object(map) = &mut body {
        map.insert("passed".into(), json!(outcome.passed));
    }
    let text =
        io::to_pretty(&io::report(outcome.kind, &body).context("report")?).context("report")?;
    match &out.report {
        Some(path) => {
            io::write_atomic(path, &text).context(&path.display().to_string())?;
            println!(
                "{}: {} ({})",
                outcome.kind,
                if outcome.passed { "pass" } else { "FAIL" },
                path.display()
            );
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.command).and_then(|(outcome, out)| {
        emit(&outcome, &out)?;
        Ok(outcome.passed)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(Status::CheckFailed as u8),
        Err(f) => {
            eprintln!("error: {f}");
            ExitCode::from(f.status as u8)
        }
    }
}
