//! Verification suites behind the `ercd` binary.

use std::path::{Path, PathBuf};
use std::sync::Arc;
use std::time::Instant;

use ercd_core::algebra::{
    build_gammas, build_spin_tensor, check_anticommutation, check_fw_invariance, check_so8, ort_rank, so6_generators,
    NamedOp,
};
use ercd_core::amplitudes::{
    a_from_b, equation_residual, synth_dirac_bosonic, synth_dirac_fermionic, synth_fw_bosonic, synth_fw_fermionic,
    AmplitudeKind, AmplitudeSet, Picture, UMat,
};
use ercd_core::bosonic::{
    build_breve_basis, build_breve_spin, build_w, check_conjugation, check_spin_forms, check_su2_closure,
    check_w_identities,
};
use ercd_core::charges::{charge_total_count_report, conservation_sweep, ChargeReport, SpinChoice, SpinLabel};
use ercd_core::field::SpinorFieldK;
use ercd_core::grid::{GridSpec, MomentumGrid, MomentumSample};
use ercd_core::linalg::{CMat4, CVec4};
use ercd_core::poincare::{
    casimir_check, check_fw_commutation_all, check_poincare_algebra, check_structure_table, compare_orderings,
    refinement_study, structure_table, Generators, Ordering, Profile, TestField,
};
use ercd_core::report::{all_pass, max_residual, RelationReport};
use ercd_core::spectral::{dirac_hamiltonian, dirac_spinors, rk4_propagate, v_minus, v_plus, Equation, GAMMA};
use ercd_core::ErcdError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Core(#[from] ErcdError),
    #[error("invalid config: {0}")]
    Config(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OrderingChoice {
    Left,
    Right,
    #[default]
    Symmetric,
    Both,
}

impl std::str::FromStr for OrderingChoice {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "left" => Ok(Self::Left),
            "right" => Ok(Self::Right),
            "symmetric" => Ok(Self::Symmetric),
            "both" => Ok(Self::Both),
            _ => Err(format!("unknown ordering '{s}' (left|right|symmetric|both)")),
        }
    }
}

/// Flat run configuration. Unset grid fields fall back to the command's
/// default grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub counts: Option<[usize; 3]>,
    pub dk: Option<f64>,
    pub mass: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub suites: Vec<String>,
    pub times: Vec<f64>,
    pub refine: usize,
    pub ordering: OrderingChoice,
    pub modes: String,
    /// Number of random amplitude sets; unset uses the command default.
    pub sets: Option<usize>,
    pub tau_alg: f64,
    pub tau_prop: f64,
    pub tau_unitary: f64,
    pub tau_cons: f64,
    pub tau_spec: f64,
    pub tau_exact: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            counts: None,
            dk: None,
            mass: 1.0,
            seed: 42,
            out: None,
            suites: Vec::new(),
            times: vec![0.0, 0.5, 1.0, 2.5, 10.0],
            refine: 0,
            ordering: OrderingChoice::Symmetric,
            modes: "random".into(),
            sets: None,
            tau_alg: 1e-12,
            tau_prop: 1e-11,
            tau_unitary: 1e-14,
            tau_cons: 1e-10,
            tau_spec: 1e-6,
            tau_exact: 1e-10,
        }
    }
}

impl RunConfig {
    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.to_owned(),
            source,
        })?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<()> {
        if let Some(c) = self.counts {
            if c.iter().any(|&n| n == 0 || n % 2 == 0) {
                return Err(CliError::Config(format!("counts must be odd, got {c:?}")));
            }
        }
        if let Some(dk) = self.dk {
            if !(dk > 0.0 && dk.is_finite()) {
                return Err(CliError::Config(format!("dk must be positive, got {dk}")));
            }
        }
        if !(self.mass > 0.0 && self.mass.is_finite()) {
            return Err(CliError::Config(format!("mass must be positive, got {}", self.mass)));
        }
        let taus = [
            ("tau_alg", self.tau_alg),
            ("tau_prop", self.tau_prop),
            ("tau_unitary", self.tau_unitary),
            ("tau_cons", self.tau_cons),
            ("tau_spec", self.tau_spec),
            ("tau_exact", self.tau_exact),
        ];
        for (name, t) in taus {
            if t.is_nan() || t <= 0.0 {
                return Err(CliError::Config(format!("{name} must be positive, got {t}")));
            }
        }
        if self.times.iter().any(|t| !t.is_finite()) {
            return Err(CliError::Config("times must be finite".into()));
        }
        if self.sets == Some(0) {
            return Err(CliError::Config("sets must be at least 1".into()));
        }
        parse_modes(&self.modes)?;
        Ok(())
    }

    fn grid(&self, default_count: usize) -> Result<Arc<MomentumGrid>> {
        let spec = GridSpec {
            counts: self.counts.unwrap_or([default_count; 3]),
            dk: self.dk.unwrap_or(0.5),
            m: self.mass,
        };
        Ok(Arc::new(MomentumGrid::new(spec)?))
    }

    fn wants(&self, suite: &str) -> bool {
        self.suites.is_empty() || self.suites.iter().any(|s| s == suite)
    }
}

/// How amplitude sets are chosen for the duality suites.
#[derive(Clone, Debug, PartialEq)]
pub enum Modes {
    Random,
    /// All four slots set to one at a single node.
    Single([f64; 3]),
}

pub fn parse_modes(s: &str) -> Result<Modes> {
    if s == "random" {
        return Ok(Modes::Random);
    }
    let bad = || CliError::Config(format!("modes must be 'random', 'single:k=0' or 'single:k=x,y,z', got '{s}'"));
    let k = s.strip_prefix("single:k=").ok_or_else(bad)?;
    if k == "0" {
        return Ok(Modes::Single([0.0; 3]));
    }
    let parts: Vec<f64> = k
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|_| bad()))
        .collect::<Result<_>>()?;
    match parts.as_slice() {
        [x, y, z] => Ok(Modes::Single([*x, *y, *z])),
        _ => Err(bad()),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub failed: usize,
    pub max_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub name: String,
    pub pass: bool,
    pub summary: Summary,
    pub relations: Vec<RelationReport>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub charges: Vec<ChargeReport>,
    #[serde(skip_serializing_if = "Value::is_null", default)]
    pub data: Value,
}

impl SuiteReport {
    fn new(name: &str, relations: Vec<RelationReport>) -> Self {
        Self::with(name, relations, Vec::new(), Value::Null)
    }

    fn with(name: &str, relations: Vec<RelationReport>, charges: Vec<ChargeReport>, data: Value) -> Self {
        let failed = relations.iter().filter(|r| !r.pass).count() + charges.iter().filter(|c| !c.pass).count();
        let max_res = max_residual(&relations).max(charges.iter().map(|c| c.max_drift).fold(0.0, f64::max));
        SuiteReport {
            name: name.into(),
            pass: all_pass(&relations) && charges.iter().all(|c| c.pass),
            summary: Summary {
                checks: relations.len() + charges.len(),
                failed,
                max_residual: max_res,
            },
            relations,
            charges,
            data,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub command: String,
    pub config: RunConfig,
    pub suites: Vec<SuiteReport>,
    pub pass: bool,
    pub wall_time_s: f64,
}

impl Report {
    fn new(command: &str, cfg: &RunConfig, suites: Vec<SuiteReport>, started: Instant) -> Self {
        Report {
            tool: "ercd".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config: cfg.clone(),
            pass: suites.iter().all(|s| s.pass),
            suites,
            wall_time_s: started.elapsed().as_secs_f64(),
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// Write to `cfg.out` when set.
    pub fn write(&self) -> Result<()> {
        if let Some(path) = &self.config.out {
            std::fs::write(path, self.to_json()? + "\n").map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
        }
        Ok(())
    }
}

/// Check the output location before spending time on the suites.
pub fn check_out_dir(cfg: &RunConfig) -> Result<()> {
    if let Some(path) = &cfg.out {
        let dir = match path.parent() {
            Some(p) if !p.as_os_str().is_empty() => p,
            _ => Path::new("."),
        };
        if !dir.is_dir() {
            return Err(CliError::Io {
                path: path.clone(),
                source: std::io::Error::new(std::io::ErrorKind::NotFound, "output directory does not exist"),
            });
        }
    }
    Ok(())
}

fn fw_samples(grid: &MomentumGrid) -> Vec<MomentumSample> {
    let mut s = grid.corners();
    s.push(MomentumSample { k: [0.0; 3], m: grid.mass() });
    s.push(MomentumSample {
        k: [0.5, -1.0, 1.5],
        m: grid.mass(),
    });
    s
}

pub fn cmd_verify_algebra(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let started = Instant::now();
    let grid = cfg.grid(9)?;
    let g = build_gammas();
    let t = build_spin_tensor(&g);
    let w = build_w();
    let b = build_breve_basis();
    let s = build_breve_spin(&b);
    let mut suites = Vec::new();
    if cfg.wants("anticomm") {
        suites.push(SuiteReport::new("anticomm", check_anticommutation(&g, cfg.tau_alg)));
    }
    if cfg.wants("so8") {
        suites.push(SuiteReport::new("so8", check_so8(&t, cfg.tau_alg)));
    }
    if cfg.wants("rank") {
        let rank = ort_rank(&t);
        suites.push(SuiteReport::with(
            "rank",
            vec![RelationReport::new("ort_rank=29", rank.abs_diff(29) as f64, 0.5)],
            Vec::new(),
            json!({ "rank": rank }),
        ));
    }
    if cfg.wants("so6") {
        let ops = so6_generators(&t);
        let reports = check_fw_invariance(&ops, &fw_samples(&grid), &cfg.times, cfg.tau_alg)?;
        let gamma5 = NamedOp {
            name: "gamma5".into(),
            op: *g.gamma(5),
        };
        let control = check_fw_invariance(
            &[gamma5],
            &[MomentumSample::new([0.5, -1.0, 1.5], cfg.mass)?],
            &[1.0],
            cfg.tau_alg,
        )?;
        let control = RelationReport::at_least("negative_control(gamma5)", control[0].residual, 1e-2);
        let mut rel = reports;
        rel.push(control);
        suites.push(SuiteReport::new("so6", rel));
    }
    if cfg.wants("w") {
        suites.push(SuiteReport::new("w", check_w_identities(&w, cfg.tau_alg)));
    }
    if cfg.wants("conjugation") {
        suites.push(SuiteReport::new("conjugation", check_conjugation(&w, &g, &b, cfg.tau_alg)));
    }
    if cfg.wants("spin") {
        let mut rel = check_spin_forms(&s, cfg.tau_alg);
        rel.extend(check_su2_closure(&s, cfg.tau_alg));
        suites.push(SuiteReport::new("spin", rel));
    }
    Ok(Report::new("verify-algebra", cfg, suites, started))
}

fn amplitude_sets(cfg: &RunConfig, kind: AmplitudeKind, grid: &Arc<MomentumGrid>, default: usize) -> Result<Vec<AmplitudeSet>> {
    match parse_modes(&cfg.modes)? {
        Modes::Random => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            Ok((0..cfg.sets.unwrap_or(default))
                .map(|_| AmplitudeSet::random(kind, grid.clone(), &mut rng))
                .collect())
        }
        Modes::Single(k) => {
            let idx = grid
                .find(k)
                .ok_or_else(|| CliError::Config(format!("momentum {k:?} is not a grid node")))?;
            let one = CVec4([1.0.into(); 4]);
            Ok(vec![AmplitudeSet::single(kind, grid.clone(), idx, one)])
        }
    }
}

fn max_over_nodes(grid: &MomentumGrid, f: impl Fn(&MomentumSample) -> ercd_core::Result<f64>) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for s in grid.nodes() {
        worst = worst.max(f(s)?);
    }
    Ok(worst)
}

fn swap_branches(f: &SpinorFieldK) -> SpinorFieldK {
    SpinorFieldK::from_branches(f.grid().clone(), f.t, f.negative.clone(), f.positive.clone()).expect("same grid")
}

pub fn cmd_verify_duality(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let started = Instant::now();
    let grid = cfg.grid(9)?;
    let tol = cfg.tau_prop;
    let mut suites = Vec::new();
    if cfg.wants("fw_link") {
        let id = CMat4::identity();
        let vv = max_over_nodes(&grid, |s| Ok((v_plus(s)? * v_minus(s)?).max_abs_diff(&id)))?;
        let h = max_over_nodes(&grid, |s| {
            let lhs = v_plus(s)? * GAMMA[0].scale_re(s.omega()) * v_minus(s)?;
            Ok(lhs.max_abs_diff(&dirac_hamiltonian(s)))
        })?;
        let spinors = max_over_nodes(&grid, |s| {
            let sp = dirac_spinors(s)?;
            let vp = v_plus(s)?;
            let vn = v_plus(&s.negated())?;
            let d = [
                (vp * CVec4::ort(1) - sp.v1_minus).max_abs(),
                (vp * CVec4::ort(2) - sp.v2_minus).max_abs(),
                (vn * CVec4::ort(3) - sp.v1_plus).max_abs(),
                (vn * CVec4::ort(4) - sp.v2_plus).max_abs(),
            ];
            Ok(d.into_iter().fold(0.0, f64::max))
        })?;
        suites.push(SuiteReport::new(
            "fw_link",
            vec![
                RelationReport::new("v_plus*v_minus=I", vv, tol),
                RelationReport::new("v_plus*gamma0*omega*v_minus=H", h, tol),
                RelationReport::new("v_plus*d_r=v_r", spinors, tol),
            ],
        ));
    }
    if cfg.wants("solutions") {
        let fermi = amplitude_sets(cfg, AmplitudeKind::Fermionic, &grid, 5)?;
        let bose = amplitude_sets(cfg, AmplitudeKind::BosonicB, &grid, 5)?;
        type Synth = fn(&AmplitudeSet) -> ercd_core::Result<SpinorFieldK>;
        let families: [(&str, Equation, &Vec<AmplitudeSet>, Synth); 4] = [
            ("fermionic_fw", Equation::Fw, &fermi, synth_fw_fermionic),
            ("fermionic_dirac", Equation::Dirac, &fermi, synth_dirac_fermionic),
            ("bosonic_fw", Equation::Fw, &bose, synth_fw_bosonic),
            ("bosonic_dirac", Equation::Dirac, &bose, synth_dirac_bosonic),
        ];
        let mut rel = Vec::new();
        for (name, eq, sets, synth) in families {
            let mut worst: f64 = 0.0;
            let mut control = f64::INFINITY;
            let mut norm: f64 = 0.0;
            for a in sets {
                let f = synth(a)?;
                let scale = f.max_abs().max(f64::MIN_POSITIVE);
                for &t in &cfg.times {
                    worst = worst.max(equation_residual(&f, eq, t) / scale);
                    norm = norm.max(norm_drift(&f, eq, t));
                }
                let t = cfg.times.iter().copied().find(|t| *t != 0.0).unwrap_or(1.0);
                control = control.min(equation_residual(&swap_branches(&f), eq, t) / scale);
            }
            rel.push(RelationReport::new(format!("{name}_residual"), worst, tol));
            rel.push(RelationReport::at_least(format!("{name}_negative_control"), control, 1e-2));
            rel.push(RelationReport::new(format!("{name}_norm_drift"), norm, 1e-12));
        }
        suites.push(SuiteReport::new("solutions", rel));
    }
    if cfg.wants("square") {
        let sets = amplitude_sets(cfg, AmplitudeKind::BosonicB, &grid, 50)?;
        let mut worst: f64 = 0.0;
        for b in &sets {
            let lhs = synth_dirac_bosonic(b)?;
            let rhs = synth_dirac_fermionic(&a_from_b(b)?)?;
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
        suites.push(SuiteReport::with(
            "square",
            vec![RelationReport::new("dirac_bosonic=dirac_fermionic(a_from_b)", worst, tol)],
            Vec::new(),
            json!({ "sets": sets.len(), "seed": cfg.seed }),
        ));
    }
    if cfg.wants("umat") {
        let u = UMat::new();
        let id = CMat4::identity();
        let rel = vec![
            RelationReport::new("a_from_b*b_from_a=I", (u.a_from_b * u.b_from_a).max_abs_diff(&id), cfg.tau_unitary),
            RelationReport::new("b_from_a*a_from_b=I", (u.b_from_a * u.a_from_b).max_abs_diff(&id), cfg.tau_unitary),
            RelationReport::new(
                "a_from_b_unitary",
                (u.a_from_b.adjoint() * u.a_from_b).max_abs_diff(&id),
                cfg.tau_unitary,
            ),
            RelationReport::new(
                "b_from_a_unitary",
                (u.b_from_a.adjoint() * u.b_from_a).max_abs_diff(&id),
                cfg.tau_unitary,
            ),
        ];
        suites.push(SuiteReport::new("umat", rel));
    }
    if cfg.wants("rk4") {
        let (rel, data) = rk4_study(cfg, &grid)?;
        suites.push(SuiteReport::with("rk4", rel, Vec::new(), data));
    }
    Ok(Report::new("verify-duality", cfg, suites, started))
}

/// Error of RK4 against the closed form for 4 dyadic step counts.
fn rk4_study(cfg: &RunConfig, grid: &Arc<MomentumGrid>) -> Result<(Vec<RelationReport>, Value)> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let a = AmplitudeSet::random(AmplitudeKind::Fermionic, grid.clone(), &mut rng);
    let f = synth_dirac_fermionic(&a)?;
    let t = 1.0;
    let exact = ercd_core::spectral::propagate(Equation::Dirac, &f, t);
    let steps = [16usize, 32, 64, 128];
    let errors: Vec<f64> = steps
        .iter()
        .map(|&n| Ok(rk4_propagate(Equation::Dirac, &f, t, n)?.max_abs_diff(&exact)))
        .collect::<Result<_>>()?;
    let orders: Vec<f64> = errors.windows(2).map(|w| (w[0] / w[1]).log2()).collect();
    let min_order = orders.iter().copied().fold(f64::INFINITY, f64::min);
    Ok((
        vec![RelationReport::at_least("rk4_order", min_order, 3.7)],
        json!({ "steps": steps, "errors": errors, "orders": orders }),
    ))
}

pub fn cmd_charges(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let started = Instant::now();
    let grid = cfg.grid(9)?;
    let mut suites = Vec::new();
    if cfg.wants("conservation") {
        let fermi = amplitude_sets(cfg, AmplitudeKind::Fermionic, &grid, 20)?;
        let bose = amplitude_sets(cfg, AmplitudeKind::BosonicB, &grid, 20)?;
        let mut charges = Vec::new();
        for label in SpinLabel::ALL {
            let spin = SpinChoice::new(label);
            let sets = if label == SpinLabel::Bose { &bose } else { &fermi };
            // one report per component: the worst drift over all sets
            let mut worst: Vec<Option<ChargeReport>> = vec![None; 3];
            for a in sets {
                for r in conservation_sweep(a, &spin, &cfg.times, Picture::Fw, cfg.tau_cons)? {
                    let slot = &mut worst[r.component - 1];
                    if slot.as_ref().is_none_or(|w| r.max_drift > w.max_drift) {
                        *slot = Some(r);
                    }
                }
            }
            charges.extend(worst.into_iter().flatten());
        }
        suites.push(SuiteReport::with(
            "conservation",
            Vec::new(),
            charges,
            json!({ "sets_per_family": fermi.len(), "seed": cfg.seed }),
        ));
    }
    if cfg.wants("bookkeeping") {
        let rows = charge_total_count_report();
        let per_family = |f: &str| rows.iter().filter(|r| r.family == f).count() as f64;
        let rel = vec![
            RelationReport::new("fermionic_laws=22", (per_family("fermionic") - 22.0).abs(), 0.5),
            RelationReport::new("bosonic_laws=22", (per_family("bosonic") - 22.0).abs(), 0.5),
        ];
        suites.push(SuiteReport::with("bookkeeping", rel, Vec::new(), serde_json::to_value(&rows)?));
    }
    Ok(Report::new("charges", cfg, suites, started))
}

pub fn cmd_poincare(cfg: &RunConfig) -> Result<Report> {
    cfg.validate()?;
    let started = Instant::now();
    let grid = cfg.grid(33)?;
    let ordering = match cfg.ordering {
        OrderingChoice::Left => Ordering::Left,
        OrderingChoice::Right => Ordering::Right,
        OrderingChoice::Symmetric | OrderingChoice::Both => Ordering::Symmetric,
    };
    let gens = Generators::new(ordering);
    let profile = Profile::standard();
    let f = TestField::from_profile(&profile, grid.clone())?;
    let t = cfg.times.iter().copied().find(|t| *t != 0.0).unwrap_or(1.0);
    let mut suites = Vec::new();
    if cfg.wants("structure") {
        suites.push(SuiteReport::with(
            "structure",
            check_structure_table(0.0),
            Vec::new(),
            serde_json::to_value(structure_table())?,
        ));
    }
    if cfg.wants("casimir") {
        let c = casimir_check(&f)?;
        suites.push(SuiteReport::new(
            "casimir",
            vec![
                RelationReport::new("c1=-m2", c.c1_residual, cfg.tau_exact),
                RelationReport::new("c2=-2m2diag(I3,0)", c.c2_residual, cfg.tau_alg),
            ],
        ));
    }
    if cfg.wants("fw_commutation") {
        let rel = check_fw_commutation_all(&gens, &f, t, cfg.tau_spec, cfg.tau_exact)?;
        suites.push(SuiteReport::new("fw_commutation", rel));
    }
    if cfg.wants("algebra") {
        let rel = check_poincare_algebra(&gens, &f, cfg.tau_spec, cfg.tau_exact);
        suites.push(SuiteReport::new("algebra", rel));
    }
    if cfg.refine > 0 && cfg.wants("refinement") {
        let table = refinement_study(&gens, &profile, &grid, t, cfg.refine)?;
        let rel = table
            .iter()
            .enumerate()
            .flat_map(|(level, rows)| {
                rows.iter()
                    .map(move |r| RelationReport::at_least(format!("refine{}({})", level + 1, r.generator), r.ratio, 8.0))
            })
            .collect();
        suites.push(SuiteReport::with("refinement", rel, Vec::new(), serde_json::to_value(&table)?));
    }
    if cfg.ordering == OrderingChoice::Both && cfg.wants("ordering") {
        let mut other = profile.clone();
        other.positive = CVec4::ort(2);
        other.negative = CVec4::ort(3);
        let h = TestField::from_profile(&other, grid.clone())?;
        let cmp = compare_orderings(&[Ordering::Left, Ordering::Right], &f, &h);
        let rel = cmp
            .variants
            .iter()
            .map(|v| {
                RelationReport::new(
                    format!("boost_algebra({})", serde_json::to_value(v.ordering).unwrap_or_default().as_str().unwrap_or("")),
                    v.max_boost_residual,
                    cfg.tau_spec,
                )
            })
            .collect();
        suites.push(SuiteReport::with("ordering", rel, Vec::new(), serde_json::to_value(&cmp)?));
    }
    Ok(Report::new("poincare", cfg, suites, started))
}

/// Apply ERCD_THREADS to the global rayon pool.
pub fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("ERCD_THREADS") {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::Config(format!("ERCD_THREADS must be a positive integer, got '{v}'")))?;
        if n == 0 {
            return Err(CliError::Config("ERCD_THREADS must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Config(e.to_string()))?;
    }
    Ok(())
}

/// Relative change of the quadrature norm under exact propagation.
pub fn norm_drift(f: &SpinorFieldK, eq: Equation, t: f64) -> f64 {
    let n0 = f.norm();
    (ercd_core::spectral::propagate(eq, f, t).norm() - n0).abs() / n0
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse() {
        assert_eq!(parse_modes("random").unwrap(), Modes::Random);
        assert_eq!(parse_modes("single:k=0").unwrap(), Modes::Single([0.0; 3]));
        assert_eq!(parse_modes("single:k=0.5,-1,1.5").unwrap(), Modes::Single([0.5, -1.0, 1.5]));
        assert!(parse_modes("single:k=1,2").is_err());
        assert!(parse_modes("all").is_err());
    }

    #[test]
    fn config_round_trips_and_validates() {
        let cfg = RunConfig::default();
        let back: RunConfig = serde_json::from_str(&serde_json::to_string(&cfg).unwrap()).unwrap();
        assert_eq!(back, cfg);
        let partial: RunConfig = serde_json::from_str(r#"{"seed": 3}"#).unwrap();
        assert_eq!(partial.seed, 3);
        assert_eq!(partial.tau_alg, 1e-12);
        for bad in [
            RunConfig { counts: Some([9, 4, 9]), ..RunConfig::default() },
            RunConfig { dk: Some(0.0), ..RunConfig::default() },
            RunConfig { tau_spec: 0.0, ..RunConfig::default() },
            RunConfig { sets: Some(0), ..RunConfig::default() },
            RunConfig { times: vec![f64::NAN], ..RunConfig::default() },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn suite_roll_up() {
        let s = SuiteReport::new(
            "x",
            vec![RelationReport::new("a", 1e-3, 1e-6), RelationReport::at_least("b", 10.0, 8.0)],
        );
        assert!(!s.pass);
        assert_eq!(s.summary.failed, 1);
        assert_eq!(s.summary.max_residual, 1e-3);
    }
}
