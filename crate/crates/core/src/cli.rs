//! Command-line front end.
//!
//! Every command reads JSON, runs its checks and writes JSON. Exit status is
//! 0 when all checks pass, 1 when some check fails and 2 for unreadable or
//! malformed input.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::corpus::CorpusEntry;
use crate::dlinalg::DMatrix;
use crate::dualpair::{build_moment_lift, stable_range_lift, DualPair};
use crate::error::{Error, Result};
use crate::hermitian::HermitianModule;
use crate::random::DEFAULT_BOUND;
use crate::report::{Check, Report};
use crate::scalars::AlgebraSpec;
use crate::tableaux::{build_module, TableauSpec};
use crate::verify::{self, anchor, structural_checks, VerifyOptions};

#[derive(Parser, Debug)]
#[command(name = "orbitlift", version, about = "Exact nilpotent orbits, sl2-triples and theta lifts")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check that a tableau is admissible and builds a valid sl2-triple.
    Validate(Common),
    /// Lift a tableau to the larger member of the dual pair and check the lift.
    Lift(Common),
    /// Print the sl2-triple of a tableau with its grading checks.
    Triple(Common),
    /// Moment maps of a given T, or a stable-range T for a given X.
    Moment(Common),
    /// Run every suite on a generated (or supplied) corpus.
    VerifyAll(Common),
    /// Dimensions of the graded pieces of V and of the Lie algebra.
    Dims(Common),
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Input JSON file, `-` for stdin.
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Samples per randomized suite.
    #[arg(long, default_value_t = 100)]
    pub samples: usize,
    /// Largest tableau size in the generated corpus.
    #[arg(long, default_value_t = 8)]
    pub max_part: usize,
    /// Bound on numerators and denominators of random rationals.
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    pub bound: i64,
    /// Dimension of the target module for `lift`; smallest possible when omitted.
    #[arg(long)]
    pub dim_vtilde: Option<usize>,
    /// Also write the full lift (T, X, X̃, checks) here.
    #[arg(long)]
    pub dump: Option<PathBuf>,
}

/// Outcome of one command: exit status and the text to emit.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub text: String,
}

fn read_input(path: &Option<PathBuf>) -> Result<Value> {
    let text = match path.as_deref() {
        None => return Err(Error::Parse("--input is required".into())),
        Some(p) if p == Path::new("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        Some(p) => fs::read_to_string(p)?,
    };
    Ok(serde_json::from_str(&text)?)
}

fn document(checks: Vec<Check>, mut body: Value) -> Outcome {
    let report = Report::new(checks);
    let ok = report.passed();
    body["status"] = json!(if ok { "pass" } else { "fail" });
    body["checks"] = serde_json::to_value(report.checks()).expect("checks serialize");
    let mut text = serde_json::to_string_pretty(&body).expect("json");
    text.push('\n');
    Outcome { code: if ok { 0 } else { 1 }, text }
}

fn entry_of(spec: &TableauSpec) -> CorpusEntry {
    CorpusEntry { id: spec.tableau.label(), epsilon: spec.epsilon, tableau: spec.tableau.clone() }
}

fn validate(c: &Common) -> Result<Outcome> {
    Ok(validate_spec(&TableauSpec::from_json(&read_input(&c.input)?)?))
}

/// Admissibility, sl2 relations and Jordan type of one tableau, as the
/// `validate` command reports them.
pub fn validate_spec(spec: &TableauSpec) -> Outcome {
    let t = &spec.tableau;
    let id = t.label();
    let admissible = t.is_admissible(spec.epsilon);
    let mut checks = vec![Check::from_bool(format!("{id}/admissible"), anchor::BUILD, admissible, || {
        json!({"row_signs": t.rows().iter().map(|r| r.induced_sign()).collect::<Vec<_>>()})
    })];
    if admissible {
        checks.extend(
            structural_checks(&entry_of(spec))
                .into_iter()
                .filter(|c| c.id.ends_with("sl2.relations") || c.id.ends_with("jordan.round_trip")),
        );
    }
    document(
        checks,
        json!({"label": id, "partition": t.partition(), "dim": t.size(), "epsilon": spec.epsilon}),
    )
}

fn triple(c: &Common) -> Result<Outcome> {
    let spec = TableauSpec::from_json(&read_input(&c.input)?)?;
    let built = build_module(&spec.tableau, spec.epsilon)?;
    let checks = structural_checks(&entry_of(&spec))
        .into_iter()
        .filter(|c| !c.id.contains("/lift."))
        .collect();
    let t = &built.triple;
    Ok(document(
        checks,
        json!({"module": built.module.to_json(), "X": t.x(), "H": t.h(), "Y": t.y()}),
    ))
}

fn dims(c: &Common) -> Result<Outcome> {
    let spec = TableauSpec::from_json(&read_input(&c.input)?)?;
    let built = build_module(&spec.tableau, spec.epsilon)?;
    let g = built.triple.grade()?;
    let mx = g.mx_dimension_report()?;
    let sum = |keep: &dyn Fn(i64) -> bool| -> usize { g.g_dims().iter().filter(|(d, _)| keep(**d)).map(|(_, n)| n).sum() };
    let body = json!({
        "v_dims": g.v_dims(),
        "g_dims": g.g_dims(),
        "dim_g": built.module.lie_algebra_dim(),
        "dim_u": sum(&|d| d <= -2),
        "dim_n": sum(&|d| d <= -1),
        "dim_p": sum(&|d| d <= 0),
        "dim_m": mx.centralizer_dim,
        "mx": mx,
    });
    let check = Check::from_bool(format!("{}/grading.mx", spec.tableau.label()), anchor::MX, mx.holds(), || json!(mx));
    Ok(document(vec![check], body))
}

fn lift(c: &Common) -> Result<Outcome> {
    let input = read_input(&c.input)?;
    let spec = TableauSpec::from_json(&input)?;
    let new_row_form = match input.get("new_row_form") {
        Some(v) => Some(HermitianModule::from_json(v)?),
        None => None,
    };
    let lift = build_moment_lift(&spec.tableau, spec.epsilon, c.dim_vtilde, new_row_form)?;
    let id = spec.tableau.label();
    let lc = lift.checks()?;
    let mut checks = vec![Check::from_bool(format!("{id}/lift.moment"), anchor::LIFT, lc.all(), || json!(lc))];
    checks.extend(structural_checks(&entry_of(&spec)).into_iter().filter(|c| c.id.ends_with("lift.pairing") && c.id.starts_with(&id)));
    if c.dim_vtilde.is_some() {
        // structural checks use the smallest target; drop them when another was asked for
        checks.retain(|c| c.id.ends_with("lift.moment"));
    }
    if let Some(path) = &c.dump {
        fs::write(path, serde_json::to_string_pretty(&lift.to_json()?)? + "\n")?;
    }
    let lifted = TableauSpec { epsilon: -spec.epsilon, tableau: lift.lifted().clone() };
    Ok(document(
        checks,
        json!({
            "label": lift.lifted().label(),
            "partition": lift.lifted().partition(),
            "dim_vtilde": lift.lifted().size(),
            "lifted": lifted.to_json(),
        }),
    ))
}

fn moment(c: &Common) -> Result<Outcome> {
    let input = read_input(&c.input)?;
    let field = |k: &str| input.get(k).ok_or_else(|| Error::Parse(format!("missing field {k:?}")));
    let v = HermitianModule::from_json(field("V")?)?;
    let vt = HermitianModule::from_json(field("Vtilde")?)?;
    let alg: AlgebraSpec = v.algebra().clone();
    let pair = DualPair::new(v, vt)?;
    let mut checks = Vec::new();
    let t = if let Some(x) = input.get("X") {
        let x = DMatrix::from_json_value(&alg, x)?;
        let t = stable_range_lift(&pair, &x)?;
        let (phi, _) = pair.moment(&t)?;
        checks.push(Check::from_bool("stable_range/moment", anchor::STABLE_RANGE, phi == x, || json!({"T*T": phi})));
        checks.push(Check::from_bool("stable_range/injective", anchor::STABLE_RANGE, t.rank() == t.cols(), || {
            json!({"rank": t.rank()})
        }));
        t
    } else {
        DMatrix::from_json_value(&alg, field("T")?)?
    };
    let (phi, phi_t) = pair.moment(&t)?;
    let in_g = pair.v().is_lie_algebra_element(&phi) && pair.vtilde().is_lie_algebra_element(&phi_t);
    checks.push(Check::from_bool("moment/lie_algebra", anchor::MOMENT, in_g, || json!("moment image not skew-adjoint")));
    let nil = phi.is_nilpotent() == phi_t.is_nilpotent();
    checks.push(Check::from_bool("moment/nilpotency", anchor::MOMENT, nil, || json!("nilpotency differs")));
    Ok(document(
        checks,
        json!({"T": t, "phi": phi, "phi_tilde": phi_t, "nilpotent": phi.is_nilpotent()}),
    ))
}

fn verify_all(c: &Common) -> Result<Outcome> {
    let corpus = match &c.input {
        None => None,
        Some(_) => {
            let v = read_input(&c.input)?;
            let list = v.as_array().ok_or_else(|| Error::Parse("corpus must be a JSON array of tableaux".into()))?;
            let mut entries = Vec::new();
            for (i, item) in list.iter().enumerate() {
                let spec = TableauSpec::from_json(item)?;
                entries.push(CorpusEntry {
                    id: format!("input#{i:04}/{}", spec.tableau.label()),
                    epsilon: spec.epsilon,
                    tableau: spec.tableau,
                });
            }
            Some(entries)
        }
    };
    let opts = VerifyOptions {
        seed: c.seed,
        samples: c.samples,
        bound: c.bound,
        max_size: c.max_part,
        random_max_size: c.max_part.min(4),
    };
    let report = verify::verify_all(&opts, corpus)?;
    Ok(Outcome { code: if report.passed() { 0 } else { 1 }, text: report.to_jsonl() })
}

/// Runs a parsed command. Schema and input errors map to exit status 2.
pub fn run(cli: &Cli) -> Outcome {
    let (common, result) = match &cli.command {
        Command::Validate(c) => (c, validate(c)),
        Command::Lift(c) => (c, lift(c)),
        Command::Triple(c) => (c, triple(c)),
        Command::Moment(c) => (c, moment(c)),
        Command::VerifyAll(c) => (c, verify_all(c)),
        Command::Dims(c) => (c, dims(c)),
    };
    let outcome = match result {
        Ok(o) => o,
        Err(e) => Outcome { code: 2, text: format!("{}\n", json!({"error": e.to_string()})) },
    };
    if let Some(path) = &common.output {
        if let Err(e) = fs::write(path, &outcome.text) {
            return Outcome { code: 2, text: format!("{}\n", json!({"error": e.to_string()})) };
        }
        return Outcome { code: outcome.code, text: String::new() };
    }
    outcome
}

/// Caps rayon's pool from `ORBITLIFT_THREADS` when set.
pub fn configure_threads() {
    if let Some(n) = std::env::var("ORBITLIFT_THREADS").ok().and_then(|v| v.parse::<usize>().ok()) {
        // fails only if the pool already exists, in which case the cap is moot
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}
