//! Command-line front end: argument parsing, the resolved run configuration,
//! and the JSON reports of each subcommand.

use std::collections::BTreeMap;
use std::fmt;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::divdiff::{identities, max_fact, set_max_fact};
use crate::error::GtError;
use crate::exactalg::{json::PolyJson, num_vars, point_from_rows, ParamScalar, MAX_RANK, MAX_VARS};
use crate::gtmodule::{
    gamma_indices, gamma_poly, verify_relations, weyl_dimension, FinDimModule, Generator, GlModule, LinComb, QMatrix,
};
use crate::singular::{
    derived_basis_at, derived_basis_window, fingerprints_distinct, gamma_action_on_eigenspace, is_fully_critical,
    is_normal_form, normalize, singularity, support_window, DerivedTableau, EvaluatedLattice,
};
use crate::symcomb::{is_block_descending, IntegralPoint};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Parser, Debug)]
#[command(name = "gtkit", version, about = "Exact Gelfand-Tsetlin modules for gl(n)")]
pub struct Cli {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone, Default)]
pub struct CommonArgs {
    /// Seed for randomized trials.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Largest |S_eta| for which dual bases are built (overrides GTKIT_MAX_FACT).
    #[arg(long, global = true)]
    pub bound: Option<u64>,
    /// Write the report to this file instead of stdout.
    #[arg(long, visible_alias = "emit", global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Generator matrices of the finite-dimensional module V(λ).
    Vlambda {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weight: Vec<i64>,
    },
    /// Dimension, commutation relations and central elements of V(λ).
    VerifyFindim {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        weight: Vec<i64>,
    },
    /// The polynomial γ_{k,i}.
    Gamma {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        i: usize,
    },
    /// Singularity, normal form and criticality of a point.
    Singularity {
        /// Point file: JSON rows of {"rat", "sym"} entries.
        #[arg(long)]
        point: PathBuf,
    },
    /// Derived tableaux of the point's lattice in a window.
    Derived {
        /// Point file: JSON rows of {"rat", "sym"} entries.
        #[arg(long)]
        point: PathBuf,
        /// Window radius in the sup norm of z.
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
    /// Action of one generator on one derived tableau.
    Act {
        /// Point file: JSON rows of {"rat", "sym"} entries.
        #[arg(long)]
        point: PathBuf,
        #[arg(long)]
        gen: Generator,
        /// Integral point as JSON rows, e.g. [[0],[1,0],[0,0,-1]].
        #[arg(long)]
        on: PathBuf,
        /// Shuffle in cycle notation on 1-based slots, or `id`.
        #[arg(long, default_value = "id")]
        shuffle: String,
    },
    /// Characters and multiplicities in a window.
    Support {
        /// Point file: JSON rows of {"rat", "sym"} entries.
        #[arg(long)]
        point: PathBuf,
        /// Window radius in the sup norm of z.
        #[arg(long, default_value_t = 2)]
        radius: i64,
    },
    /// Certifies the module of a fully critical point on a window.
    Certify {
        /// Point file: JSON rows of {"rat", "sym"} entries.
        #[arg(long)]
        point: PathBuf,
        /// Which checks to run.
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Window radius in the sup norm of z.
        #[arg(long, default_value_t = 1)]
        radius: i64,
    },
    /// Randomized and exhaustive divided-difference identity checks.
    VerifyIdentities {
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    All,
    /// Every generator on every window tableau stays in the lattice.
    Lattice,
    /// The gl(n) relations on every window tableau.
    Relations,
    /// Nilpotency of c - γ on each eigenspace, multiplicities and distinct characters.
    Gt,
}

/// The fully resolved configuration of one run; embedded in every report.
#[derive(Clone, Debug, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub point: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub on: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub weight: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<Generator>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shuffle: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    pub bound: u64,
    pub jobs: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    /// Resolves defaults (`η!` bound from the environment, worker count).
    pub fn from_cli(cli: &Cli) -> RunConfig {
        let c = &cli.common;
        let mut cfg = RunConfig {
            command: String::new(),
            point: None,
            on: None,
            radius: None,
            weight: None,
            generator: None,
            shuffle: None,
            k: None,
            i: None,
            suite: None,
            trials: None,
            bound: c.bound.unwrap_or_else(max_fact),
            jobs: c.jobs.unwrap_or_else(rayon::current_num_threads),
            output: c.output.clone(),
            seed: c.seed,
        };
        match &cli.command {
            Command::Vlambda { weight } => {
                cfg.command = "vlambda".into();
                cfg.weight = Some(weight.clone());
            }
            Command::VerifyFindim { weight } => {
                cfg.command = "verify-findim".into();
                cfg.weight = Some(weight.clone());
            }
            Command::Gamma { k, i } => {
                cfg.command = "gamma".into();
                cfg.k = Some(*k);
                cfg.i = Some(*i);
            }
            Command::Singularity { point } => {
                cfg.command = "singularity".into();
                cfg.point = Some(point.clone());
            }
            Command::Derived { point, radius } => {
                cfg.command = "derived".into();
                cfg.point = Some(point.clone());
                cfg.radius = Some(*radius);
            }
            Command::Act { point, gen, on, shuffle } => {
                cfg.command = "act".into();
                cfg.point = Some(point.clone());
                cfg.generator = Some(*gen);
                cfg.on = Some(on.clone());
                cfg.shuffle = Some(shuffle.clone());
            }
            Command::Support { point, radius } => {
                cfg.command = "support".into();
                cfg.point = Some(point.clone());
                cfg.radius = Some(*radius);
            }
            Command::Certify { point, suite, radius } => {
                cfg.command = "certify".into();
                cfg.point = Some(point.clone());
                cfg.suite = Some(*suite);
                cfg.radius = Some(*radius);
            }
            Command::VerifyIdentities { trials } => {
                cfg.command = "verify-identities".into();
                cfg.trials = Some(*trials);
            }
        }
        cfg
    }
}

/// Why a run could not produce a report.
#[derive(Debug)]
pub enum RunError {
    /// Missing files, malformed JSON, inconsistent flags.
    Input(String),
    /// An error raised by one of the library modules.
    Domain(GtError),
}

impl RunError {
    pub fn name(&self) -> &'static str {
        match self {
            RunError::Input(_) => "InputError",
            RunError::Domain(e) => e.name(),
        }
    }
}

impl fmt::Display for RunError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RunError::Input(m) => write!(f, "{}", m),
            RunError::Domain(e) => write!(f, "{}", e),
        }
    }
}

impl From<GtError> for RunError {
    fn from(e: GtError) -> Self {
        RunError::Domain(e)
    }
}

type RunResult<T> = std::result::Result<T, RunError>;

/// One named check of a report.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: &'static str,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

impl Check {
    fn new(name: &str, trials: usize, failures: &[String]) -> Check {
        Check {
            name: name.to_string(),
            status: if failures.is_empty() { "pass" } else { "fail" },
            trials,
            counterexample: failures.first().cloned(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub result: Value,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> RunResult<T> {
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Input(format!("{}: {}", path.display(), e)))?;
    serde_json::from_str(&text).map_err(|e| RunError::Input(format!("{}: malformed JSON: {}", path.display(), e)))
}

/// A point file: rows `1..=n` of `{"rat": "p/q", "sym": {"t1": "c"}}` entries.
pub fn read_point(path: &Path) -> RunResult<Vec<ParamScalar>> {
    let rows: Vec<Vec<ParamScalar>> = read_json(path)?;
    Ok(point_from_rows(&rows)?)
}

fn point_rows(v: &[ParamScalar]) -> Vec<Vec<ParamScalar>> {
    let mut out = Vec::new();
    let mut k = 1;
    while num_vars(k) <= v.len() {
        out.push(v[num_vars(k - 1)..num_vars(k)].to_vec());
        k += 1;
    }
    out
}

fn point_strings(v: &[ParamScalar]) -> Vec<Vec<String>> {
    point_rows(v).iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
}

fn need<T: Clone>(x: &Option<T>, what: &str) -> RunResult<T> {
    x.clone().ok_or_else(|| RunError::Input(format!("missing --{}", what)))
}

fn nonnegative(r: i64) -> RunResult<i64> {
    if r < 0 {
        return Err(RunError::Input(format!("radius must be nonnegative, got {}", r)));
    }
    Ok(r)
}

/// Executes the configured subcommand.
pub fn run(config: &RunConfig) -> RunResult<Report> {
    if config.bound == 0 {
        return Err(RunError::Input("the bound must be at least 1".into()));
    }
    set_max_fact(Some(config.bound));
    let (result, checks) = match config.command.as_str() {
        "vlambda" => vlambda(&need(&config.weight, "weight")?)?,
        "verify-findim" => verify_findim(&need(&config.weight, "weight")?)?,
        "gamma" => gamma(need(&config.k, "k")?, need(&config.i, "i")?)?,
        "singularity" => singularity_report(&read_point(&need(&config.point, "point")?)?)?,
        "derived" => {
            derived(&read_point(&need(&config.point, "point")?)?, nonnegative(need(&config.radius, "radius")?)?)?
        }
        "act" => {
            let v = read_point(&need(&config.point, "point")?)?;
            let rows: Vec<Vec<i64>> = read_json(&need(&config.on, "on")?)?;
            act(&v, need(&config.generator, "gen")?, &rows, &need(&config.shuffle, "shuffle")?)?
        }
        "support" => {
            support(&read_point(&need(&config.point, "point")?)?, nonnegative(need(&config.radius, "radius")?)?)?
        }
        "certify" => certify(
            &read_point(&need(&config.point, "point")?)?,
            need(&config.suite, "suite")?,
            nonnegative(need(&config.radius, "radius")?)?,
        )?,
        "verify-identities" => verify_identities(need(&config.trials, "trials")?, config.seed, config.bound),
        other => return Err(RunError::Input(format!("unknown command {:?}", other))),
    };
    let passed = checks.iter().all(Check::passed);
    Ok(Report { tool: "gtkit", version: VERSION, config: config.clone(), result, checks, passed })
}

type Outcome = RunResult<(Value, Vec<Check>)>;

fn matrix_strings(m: &QMatrix) -> Vec<Vec<String>> {
    m.rows().iter().map(|r| r.iter().map(|q| q.to_string()).collect()).collect()
}

fn basis_rows(n: usize, flat: &[i64]) -> Vec<Vec<i64>> {
    (1..=n).map(|k| flat[num_vars(k - 1)..num_vars(k)].to_vec()).collect()
}

fn vlambda(weight: &[i64]) -> Outcome {
    let m = FinDimModule::new(weight)?;
    let n = weight.len();
    let matrices: BTreeMap<String, Vec<Vec<String>>> =
        m.generators().iter().map(|(g, mat)| (g.to_string(), matrix_strings(mat))).collect();
    let basis: Vec<Vec<Vec<i64>>> = m.basis().iter().map(|b| basis_rows(n, b)).collect();
    Ok((json!({ "weight": weight, "dimension": m.dim(), "basis": basis, "matrices": matrices }), Vec::new()))
}

fn verify_findim(weight: &[i64]) -> Outcome {
    let m = FinDimModule::new(weight)?;
    let weyl = weyl_dimension(weight);
    let n = weight.len();
    let dim_fail: Vec<String> = if m.dim() as u64 == weyl {
        vec![]
    } else {
        vec![format!("dimension {} but Weyl formula gives {}", m.dim(), weyl)]
    };
    let comm: Vec<String> =
        m.commutator_failures().iter().map(|(a, b, c, d)| format!("[E{}{}, E{}{}]", a, b, c, d)).collect();
    let central: Vec<String> = m.central_failures()?.iter().map(|(k, i)| format!("c_{{{},{}}}", k, i)).collect();
    let checks = vec![
        Check::new("dimension", 1, &dim_fail),
        Check::new("commutators", n.pow(4), &comm),
        Check::new("central_diagonal", gamma_indices(n).len(), &central),
    ];
    Ok((json!({ "weight": weight, "dimension": m.dim(), "weyl_dimension": weyl }), checks))
}

fn gamma(k: usize, i: usize) -> Outcome {
    if k == 0 || i == 0 || i > k || num_vars(k) > MAX_VARS {
        return Err(RunError::Input(format!("need 1 <= i <= k and k <= {}", MAX_RANK)));
    }
    let p = gamma_poly(k, i)?;
    let result = json!({
        "k": k,
        "i": i,
        "polynomial": p.to_string(),
        "terms": PolyJson::from_poly(&p, num_vars(k)),
    });
    Ok((result, Vec::new()))
}

fn singularity_report(v: &[ParamScalar]) -> Outcome {
    let p = singularity(v)?;
    let nf = normalize(v)?;
    let result = json!({
        "point": point_strings(v),
        "singularity": p.eta.to_string(),
        "singularity_rows": p.eta,
        "classes": p.classes,
        "normal_form": is_normal_form(v)?,
        "fully_critical": is_fully_critical(v)?,
        "normalization": {
            "sigma": nf.sigma.to_string(),
            "shift": nf.shift.rows(),
            "point": point_strings(&nf.point),
        },
    });
    Ok((result, Vec::new()))
}

fn tableau_json(d: &DerivedTableau) -> Value {
    json!({ "label": d.to_string(), "z": d.z.rows()[..d.z.rank() - 1], "shuffle": d.nu.to_string() })
}

fn derived(v: &[ParamScalar], r: i64) -> Outcome {
    let eta = singularity(v)?.eta;
    let window = derived_basis_window(&eta, r)?;
    let list: Vec<Value> = window.iter().map(tableau_json).collect();
    Ok((json!({ "singularity": eta.to_string(), "radius": r, "count": window.len(), "tableaux": list }), Vec::new()))
}

fn act(v: &[ParamScalar], g: Generator, rows: &[Vec<i64>], shuffle: &str) -> Outcome {
    let m = EvaluatedLattice::for_point(v.to_vec())?;
    let eta = m.lattice().refinement().clone();
    let n = eta.rank();
    g.check(n)?;
    let z = IntegralPoint::from_rows(n, rows)?;
    if !is_block_descending(&z, &eta) {
        return Err(GtError::NotInNormalForm.into());
    }
    let nu = eta.parse_permutation(shuffle)?;
    let d = DerivedTableau { z: z.clone(), nu };
    if !derived_basis_at(&eta, &z)?.contains(&d) {
        return Err(RunError::Input(format!(
            "{} is not a derived tableau: the shuffle must increase on ε(z)-blocks",
            d
        )));
    }
    let lattice: Vec<Value> = m
        .lattice()
        .act(g, &d)?
        .iter()
        .map(|(t, c)| json!({ "tableau": tableau_json(t), "coefficient": c.to_string() }))
        .collect();
    let evaluated: Vec<Value> =
        m.act_basis(g, &d)?.iter().map(|(t, c)| json!({ "tableau": tableau_json(t), "coefficient": c })).collect();
    let checks = vec![Check::new("coefficients_in_b_eta", lattice.len(), &[])];
    let result = json!({
        "singularity": eta.to_string(),
        "generator": g,
        "tableau": tableau_json(&d),
        "lattice": lattice,
        "evaluated": evaluated,
    });
    Ok((result, checks))
}

fn support(v: &[ParamScalar], r: i64) -> Outcome {
    let eta = singularity(v)?.eta;
    let entries = support_window(v, r)?;
    let mult: Vec<String> = entries
        .iter()
        .filter(|e| e.multiplicity as usize != e.derived_count)
        .map(|e| format!("z={:?}: multiplicity {} vs {} derived tableaux", e.z, e.multiplicity, e.derived_count))
        .collect();
    let distinct =
        if fingerprints_distinct(&entries) { vec![] } else { vec!["two window points share a character".to_string()] };
    let checks = vec![
        Check::new("multiplicity", entries.len(), &mult),
        Check::new("distinct_characters", entries.len(), &distinct),
    ];
    let result =
        json!({ "singularity": eta.to_string(), "radius": r, "characters": entries.len(), "support": entries });
    Ok((result, checks))
}

fn certify(v: &[ParamScalar], suite: Suite, r: i64) -> Outcome {
    let m = EvaluatedLattice::for_point(v.to_vec())?;
    let eta = m.lattice().refinement().clone();
    let n = eta.rank();
    let window = derived_basis_window(&eta, r)?;
    let mut checks = Vec::new();
    let mut summary = BTreeMap::new();
    summary.insert("singularity", json!(eta.to_string()));
    summary.insert("radius", json!(r));
    summary.insert("derived_tableaux", json!(window.len()));

    if matches!(suite, Suite::All | Suite::Lattice) {
        let jobs: Vec<(Generator, &DerivedTableau)> =
            Generator::all(n).into_iter().flat_map(|g| window.iter().map(move |d| (g, d))).collect();
        let fails: Vec<String> = jobs
            .par_iter()
            .filter_map(|(g, d)| match m.lattice().act(*g, d) {
                Ok(_) => None,
                Err(e) => Some(format!("{} on {}: {}", g, d, e)),
            })
            .collect();
        checks.push(Check::new("lattice_closure", jobs.len(), &fails));
    }
    if matches!(suite, Suite::All | Suite::Relations) {
        let results: Vec<RunResult<Vec<String>>> = window
            .par_iter()
            .map(|d| {
                let rs = verify_relations(&m, &LinComb::basis(d.clone()), 3)?;
                Ok(rs.into_iter().filter(|c| !c.passed).map(|c| format!("{} on {}", c.name, d)).collect())
            })
            .collect();
        let mut fails = Vec::new();
        for r in results {
            fails.extend(r?);
        }
        checks.push(Check::new("gl_relations", window.len(), &fails));
    }
    if matches!(suite, Suite::All | Suite::Gt) {
        let zs: Vec<IntegralPoint> =
            IntegralPoint::window(n, r).into_iter().filter(|z| is_block_descending(z, &eta)).collect();
        let results: Vec<RunResult<(Vec<String>, usize)>> = zs
            .par_iter()
            .map(|z| {
                let mut bad = Vec::new();
                let mut top = 0;
                for (k, i) in gamma_indices(n) {
                    let a = gamma_action_on_eigenspace(&m, k, i, z)?;
                    top = top.max(a.min_exponents.iter().copied().max().unwrap_or(0));
                    if !a.nilpotency_holds() {
                        bad.push(format!("c_{{{},{}}} at z={}: exponents {:?}", k, i, z, a.min_exponents));
                    }
                }
                Ok((bad, top))
            })
            .collect();
        let mut fails = Vec::new();
        let mut top = 0;
        for r in results {
            let (b, t) = r?;
            fails.extend(b);
            top = top.max(t);
        }
        checks.push(Check::new("gt_nilpotency", zs.len() * gamma_indices(n).len(), &fails));
        summary.insert("max_nilpotency_exponent", json!(top));
        let (support_value, support_checks) = support(v, r)?;
        checks.extend(support_checks);
        summary.insert("characters", support_value["characters"].clone());
    }
    Ok((json!(summary), checks))
}

fn verify_identities(trials: usize, seed: u64, bound: u64) -> (Value, Vec<Check>) {
    let reports = identities::full_suite(trials, seed, bound);
    let checks = reports
        .iter()
        .map(|r| Check {
            name: format!("{} {}", r.name, r.refinement),
            status: if r.passed() { "pass" } else { "fail" },
            trials: r.trials,
            counterexample: r.counterexample.clone(),
        })
        .collect();
    let etas: Vec<String> =
        identities::test_refinements().iter().filter(|e| e.factorial() <= bound).map(|e| e.to_string()).collect();
    (json!({ "refinements": etas, "trials": trials }), checks)
}
