#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use triathlon_contest::model::{AthleteRecord, GlobalParams, Scenario};
use triathlon_contest::stage2::{ContestInstance, ContestMember};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random contest with delta, c in [0.1, 10], psi in [1, 2] and, when
/// `weighted`, w in [0.5, 2].
pub fn random_instance(rng: &mut ChaCha8Rng, m: usize, weighted: bool) -> ContestInstance {
    let members = (1..=m)
        .map(|i| {
            let w = if weighted { rng.gen_range(0.5..2.0) } else { 1.0 };
            ContestMember::new(
                i.to_string(),
                rng.gen_range(0.1..10.0),
                rng.gen_range(0.1..10.0),
                rng.gen_range(1.0..2.0),
                w,
            )
            .unwrap()
        })
        .collect();
    ContestInstance::new(members).unwrap()
}

/// Random field with eta = 0.5, psi bounds [1, 2] and outside options drawn
/// so that continuation is contested (U^T in [lo, hi] times delta).
pub fn random_scenario(rng: &mut ChaCha8Rng, n: usize, lo: f64, hi: f64) -> Scenario {
    let globals = GlobalParams::new(0.001, 0.01, 0.5);
    let athletes = (1..=n)
        .map(|i| {
            let mut a = AthleteRecord::new(i.to_string(), rng.gen_range(0.2..5.0), rng.gen_range(0.2..5.0));
            a.t_swim = rng.gen_range(1400.0..1700.0);
            a.r_swim = i as u32;
            a.draft_share = rng.gen_range(0.0..1.0);
            a.weight = rng.gen_range(0.5..2.0);
            let target = rng.gen_range(lo..hi) * a.prize_diff;
            a.theta = target + globals.alpha * a.t_swim + globals.beta * f64::from(a.r_swim);
            a
        })
        .collect();
    Scenario::new(athletes, globals).unwrap()
}

/// Scenario of unit athletes (delta = c = 1, D = 0) with the given outside options.
pub fn unit_field(outside: &[f64]) -> Scenario {
    let globals = GlobalParams::new(0.001, 0.01, 0.5);
    let athletes = outside
        .iter()
        .enumerate()
        .map(|(k, &u)| {
            let mut a = AthleteRecord::new((k + 1).to_string(), 1.0, 1.0);
            a.r_swim = 1;
            a.theta = u + globals.beta;
            a
        })
        .collect();
    Scenario::new(athletes, globals).unwrap()
}

/// Continuation value of member `idx` of the full field when its multiplier
/// is overridden to `psi`.
pub fn value_at_psi(s: &Scenario, idx: usize, psi: f64) -> f64 {
    use triathlon_contest::stage2::{solve_stage2, ContestInstance};
    let all: Vec<usize> = (0..s.len()).collect();
    let inst = ContestInstance::from_scenario(s, &all).unwrap();
    let member = inst.member(idx).with_psi(psi).unwrap();
    solve_stage2(&inst.replace(idx, member), &s.settings).unwrap().continuation_values[idx]
}

/// Sets athlete `idx`'s outside option to the fraction `t` of the way between
/// its continuation values at the two multiplier bounds.
pub fn place_outside_option(s: &mut Scenario, idx: usize, t: f64) {
    let lo = value_at_psi(s, idx, s.globals.psi_lo);
    let hi = value_at_psi(s, idx, s.globals.psi_hi);
    let target = lo + t * (hi - lo);
    let current = s.outside_option(idx);
    s.athletes[idx].theta += target - current;
}

/// Golden CLI invocations, run from `data/`: (golden file stem, arguments).
pub const GOLDEN_CASES: &[(&str, &[&str])] = &[
    ("symmetric_pair_solve", &["solve", "symmetric_pair.json"]),
    ("symmetric_pair_welfare", &["welfare", "symmetric_pair.json"]),
    ("symmetric_pair_spe_tree", &["--output", "tree", "spe", "--mode", "all", "symmetric_pair.json"]),
    ("heterogeneous_triple_solve", &["solve", "heterogeneous_triple.json"]),
    ("heterogeneous_triple_spe", &["spe", "--mode", "all", "heterogeneous_triple.json"]),
    ("heterogeneous_triple_cutoff", &["cutoff", "--athlete", "3", "heterogeneous_triple.json"]),
    ("heterogeneous_triple_welfare", &["welfare", "--set", "1,2", "heterogeneous_triple.json"]),
    (
        "heterogeneous_triple_sweep_csv",
        &["--output", "csv", "sweep", "--param", "D_1", "--grid", "0:0.75:4", "heterogeneous_triple.json"],
    ),
    ("high_outside_dropout_spe", &["spe", "--mode", "all", "high_outside_dropout.json"]),
    ("high_outside_dropout_spe_iterative", &["spe", "--mode", "iterative", "high_outside_dropout.json"]),
    (
        "high_outside_dropout_sweep_full_spe",
        &["sweep", "--param", "theta_2", "--grid", "0:10:5", "--full-spe", "high_outside_dropout.json"],
    ),
];

pub fn data_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

pub fn golden_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// Runs the built binary from `data/`.
pub fn run_bin(args: &[&str]) -> std::process::Output {
    std::process::Command::new(env!("CARGO_BIN_EXE_tricontest"))
        .args(args)
        .current_dir(data_dir())
        .env_remove("TRICONTEST_OUTPUT_DIR")
        .output()
        .expect("binary runs")
}
