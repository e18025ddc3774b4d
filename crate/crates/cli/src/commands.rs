use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};

use qmachine::compound::{chsh_report, estimate_correlation, singlet_correlation};
use qmachine::hilbert::{born_probability, density_from_ball_point, projector_for, spin_state_for, trace_probability};
use qmachine::machine::{epsilon_probability, run_trials, transition_probability};
use qmachine::spa::{
    axiom_report, build_spin_sps, check_axiom1, coproduct as build_coproduct, covering_counterexample,
    FiniteStatePropertySpace, SpsDocument,
};
use qmachine::{BallPoint, Direction, MachineExperiment, Vec3};

use crate::output::{emit, num, Csv};
use crate::Common;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable or malformed input.
    Input(String),
    /// A checked property did not hold, or a search hit its cap.
    Invariant(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::Invariant(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => write!(f, "input error: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violated: {m}"),
        }
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    emit(path, text).map_err(|e| CliError::Input(format!("cannot write output: {e}")))
}

/// `n` evenly spaced points from `a` to `b` inclusive.
fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn require_grid(grid: usize) -> Result<(), CliError> {
    if grid == 0 {
        return Err(CliError::Input("--grid must be at least 1".into()));
    }
    Ok(())
}

fn require_trials(trials: u64) -> Result<(), CliError> {
    if trials == 0 {
        return Err(CliError::Input("--trials must be at least 1".into()));
    }
    Ok(())
}

fn check(violations: Vec<String>) -> Result<(), CliError> {
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Invariant(violations.join("; ")))
    }
}

pub fn probe(common: &Common, grid: usize) -> Result<(), CliError> {
    require_grid(grid)?;
    let tol = common.tolerance.unwrap_or(1e-12);
    let u = Direction::Z;
    let p = projector_for(&u);
    let mut csv = Csv::new(&["gamma", "mu1_machine", "mu1_born", "mu1_trace", "max_abs_diff"]);
    let mut bad = Vec::new();
    for gamma in linspace(0.0, PI, grid) {
        let v = Direction::in_xz_plane(gamma);
        let w = BallPoint::surface(v);
        let machine = transition_probability(&u, &w).0;
        let born = born_probability(&spin_state_for(&v), &p).map_err(|e| CliError::Invariant(e.to_string()))?;
        let trace = trace_probability(&density_from_ball_point(&w), &p);
        let diff = (machine - born).abs().max((machine - trace).abs()).max((born - trace).abs());
        if diff > tol {
            bad.push(format!("gamma={gamma}: max diff {diff:e} > {tol:e}"));
        }
        csv.row(&[num(gamma), num(machine), num(born), num(trace), num(diff)]);
    }
    write_out(common.out.as_deref(), &csv.finish("probe", common.seed, &[("grid", grid.to_string())]))?;
    check(bad)
}

pub fn simulate(common: &Common, grid: usize, trials: u64) -> Result<(), CliError> {
    require_grid(grid)?;
    require_trials(trials)?;
    let tol = common.tolerance.unwrap_or(2.0 / (trials as f64).sqrt());
    let e = MachineExperiment::quantum(Direction::Z);
    let mut csv = Csv::new(&["gamma", "seed", "n_trials", "count_o1", "count_o2", "freq_o1", "analytic_o1", "abs_dev"]);
    let mut bad = Vec::new();
    for (k, gamma) in linspace(0.0, PI, grid).into_iter().enumerate() {
        let w = BallPoint::surface(Direction::in_xz_plane(gamma));
        let seed = common.seed.wrapping_add(k as u64);
        let r = run_trials(&e, &w, trials, seed).map_err(input)?;
        if r.deviation() > tol {
            bad.push(format!("gamma={gamma}: deviation {} > {tol}", r.deviation()));
        }
        csv.row(&[
            num(gamma),
            seed.to_string(),
            r.n_trials.to_string(),
            r.count_o1.to_string(),
            r.count_o2.to_string(),
            num(r.freq_o1),
            num(r.analytic_o1),
            num(r.deviation()),
        ]);
    }
    let extra = [("grid", grid.to_string()), ("trials", trials.to_string())];
    write_out(common.out.as_deref(), &csv.finish("simulate", common.seed, &extra))?;
    check(bad)
}

pub fn epsilon(common: &Common, grid: usize, trials: u64, widths: &[f64]) -> Result<(), CliError> {
    require_grid(grid)?;
    require_trials(trials)?;
    if widths.is_empty() {
        return Err(CliError::Input("--epsilon needs at least one value".into()));
    }
    let tol = common.tolerance.unwrap_or(2.0 / (trials as f64).sqrt());
    let u = Direction::Z;
    let mut csv = Csv::new(&["epsilon", "x", "seed", "mu1_analytic", "mu1_quantum", "freq_o1", "n_trials", "abs_dev"]);
    let mut bad = Vec::new();
    let mut row = 0u64;
    for &eps in widths {
        let e = MachineExperiment::new(u, eps).map_err(input)?;
        for x in linspace(-1.0, 1.0, grid) {
            let w = BallPoint::new(Vec3::new(0.0, 0.0, x)).map_err(input)?;
            let analytic = epsilon_probability(&e, &w).0;
            let quantum = transition_probability(&u, &w).0;
            let seed = common.seed.wrapping_add(row);
            row += 1;
            let r = run_trials(&e, &w, trials, seed).map_err(input)?;
            if r.deviation() > tol {
                bad.push(format!("epsilon={eps} x={x}: deviation {} > {tol}", r.deviation()));
            }
            if eps == 1.0 && (analytic - quantum).abs() > 1e-12 {
                bad.push(format!("x={x}: epsilon=1 differs from the quantum probability"));
            }
            csv.row(&[
                num(eps),
                num(x),
                seed.to_string(),
                num(analytic),
                num(quantum),
                num(r.freq_o1),
                trials.to_string(),
                num(r.deviation()),
            ]);
        }
    }
    let list: Vec<String> = widths.iter().map(|w| w.to_string()).collect();
    let extra = [("grid", grid.to_string()), ("trials", trials.to_string()), ("epsilon", list.join(";"))];
    write_out(common.out.as_deref(), &csv.finish("epsilon", common.seed, &extra))?;
    check(bad)
}

pub fn bell(common: &Common, grid: usize, trials: u64, chsh: bool) -> Result<(), CliError> {
    require_grid(grid)?;
    require_trials(trials)?;
    let scale = 1.0 / (trials as f64).sqrt();
    let tol = common.tolerance.unwrap_or(5.0 * scale);
    let angles: Vec<f64> = (0..grid).map(|k| 2.0 * PI * k as f64 / grid as f64).collect();
    let mut csv = Csv::new(&["theta_a", "theta_b", "seed", "n_trials", "e_rod", "e_singlet", "abs_diff"]);
    let mut bad = Vec::new();
    let mut row = 0u64;
    for &ta in &angles {
        for &tb in &angles {
            let (a, b) = (Direction::in_xz_plane(ta), Direction::in_xz_plane(tb));
            let seed = common.seed.wrapping_add(row);
            row += 1;
            let r = estimate_correlation(&a, &b, trials, seed).map_err(input)?;
            let qm = singlet_correlation(&a, &b).map_err(|e| CliError::Invariant(e.to_string()))?;
            let diff = (r.e - qm).abs();
            if diff > tol {
                bad.push(format!("theta_a={ta} theta_b={tb}: |E_rod - E_qm| = {diff} > {tol}"));
            }
            csv.row(&[num(ta), num(tb), seed.to_string(), trials.to_string(), num(r.e), num(qm), num(diff)]);
        }
    }
    let mut summary = None;
    if chsh {
        let tol_s = common.tolerance.map_or(10.0 * scale, |t| 2.0 * t);
        let d = |t: f64| Direction::in_xz_plane(t);
        let seed = common.seed.wrapping_add(row);
        let rep = chsh_report(&d(0.0), &d(PI / 2.0), &d(PI / 4.0), &d(3.0 * PI / 4.0), trials, seed).map_err(input)?;
        let dev = (rep.s - 2.0 * 2f64.sqrt()).abs();
        if dev > tol_s {
            bad.push(format!("S = {} is {dev} from 2√2 (tolerance {tol_s})", rep.s));
        }
        csv.comment(&format!("S = {}", num(rep.s)));
        csv.comment(&format!(
            "chsh angles a=0 a'=pi/2 b=pi/4 b'=3pi/4 seed={seed} E=[{}]",
            rep.correlations.iter().map(|c| num(c.e)).collect::<Vec<_>>().join(";")
        ));
        summary = Some(rep.s);
    }
    let extra = [("grid", grid.to_string()), ("trials", trials.to_string())];
    write_out(common.out.as_deref(), &csv.finish("bell", common.seed, &extra))?;
    if let (Some(s), Some(_)) = (summary, &common.out) {
        println!("S = {}", num(s));
    }
    check(bad)
}

fn read_document(path: &Path) -> Result<SpsDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    SpsDocument::from_json(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn structural_checks(sps: &FiniteStatePropertySpace, what: &str) -> Vec<String> {
    let mut bad = Vec::new();
    if !sps.duality_holds() {
        bad.push(format!("{what}: duality between ξ and κ fails"));
    }
    if !sps.actuality_is_upward_closed() {
        bad.push(format!("{what}: actual properties are not closed upward"));
    }
    bad
}

fn report_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

pub fn lattice(common: &Common, path: &Path) -> Result<(), CliError> {
    let doc = read_document(path)?;
    let sps = doc.to_space().map_err(input)?;
    let ortho = doc.ortho_indices().map_err(input)?;
    let report = axiom_report(&sps, ortho.as_deref()).map_err(input)?;
    write_out(common.out.as_deref(), &report_json(&report))?;
    let mut bad = structural_checks(&sps, "input");
    for (name, v) in report.verdicts() {
        if let qmachine::spa::Verdict::Inconclusive { reason } = v {
            bad.push(format!("{name} inconclusive: {reason}"));
        }
    }
    check(bad)
}

fn load_or_default(inputs: &[PathBuf]) -> Result<(FiniteStatePropertySpace, FiniteStatePropertySpace), CliError> {
    match inputs {
        [] => {
            let bit = build_spin_sps(&[Direction::Z, -Direction::Z], &[]).map_err(input)?;
            Ok((bit.clone(), bit))
        }
        [a, b] => Ok((
            read_document(a)?.to_space().map_err(input)?,
            read_document(b)?.to_space().map_err(input)?,
        )),
        _ => Err(CliError::Input("coproduct takes exactly two --in documents or none".into())),
    }
}

pub fn coproduct(common: &Common, inputs: &[PathBuf], report_path: Option<&Path>) -> Result<(), CliError> {
    let out = common.out.as_deref().ok_or_else(|| CliError::Input("coproduct needs --out".into()))?;
    let report_path = report_path.map(Path::to_path_buf).unwrap_or_else(|| {
        let mut p = out.as_os_str().to_owned();
        p.push(".report.json");
        PathBuf::from(p)
    });
    let (s1, s2) = load_or_default(inputs)?;
    for (k, s) in [(1, &s1), (2, &s2)] {
        if !check_axiom1(s).holds() {
            return Err(CliError::Input(format!("input {k} does not satisfy Axiom 1")));
        }
    }
    let c = build_coproduct(&s1, &s2).map_err(input)?;
    let report = axiom_report(&c.sps, None).map_err(input)?;
    write_out(Some(out), &SpsDocument::from_space(&c.sps, None).to_json())?;
    write_out(Some(&report_path), &report_json(&report))?;

    let mut bad = structural_checks(&c.sps, "coproduct");
    if !report.axiom1.holds() {
        bad.push("coproduct does not satisfy Axiom 1".into());
    }
    for p in 0..c.sps.n_states() {
        let ok1 = (0..s1.n_properties()).all(|a| s1.is_actual(c.m1(p), a) == c.sps.is_actual(p, c.n1[a]));
        let ok2 = (0..s2.n_properties()).all(|a| s2.is_actual(c.m2(p), a) == c.sps.is_actual(p, c.n2[a]));
        if !(ok1 && ok2) {
            bad.push(format!("embeddings do not commute with actuality at state {}", c.sps.states()[p]));
        }
    }
    let nontrivial = |s: &FiniteStatePropertySpace| s.property_lattice().map(|pl| pl.lattice.len() > 2).unwrap_or(false);
    if nontrivial(&s1) && nontrivial(&s2) {
        let l = c.sps.property_lattice().map_err(|e| CliError::Invariant(e.to_string()))?.lattice;
        match covering_counterexample(&l) {
            Some(w) => {
                let m = l.order();
                let j = l.join(w.a, w.t);
                let strict = |x: usize, y: usize| m.leq(x, y) && !m.leq(y, x);
                if !(l.meet(w.a, w.t) == l.bottom() && strict(w.a, w.b) && strict(w.b, j)) {
                    bad.push("covering witness does not verify".into());
                }
            }
            None => bad.push("covering law holds on a coproduct of nontrivial systems".into()),
        }
    }
    if report.any_inconclusive() {
        bad.push("a checker hit its cap".into());
    }
    check(bad)
}
