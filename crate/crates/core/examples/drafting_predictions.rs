//! Parameter sweeps and the canonical drafting predictions.

use std::collections::BTreeMap;

use triathlon_contest::analysis::{linspace, prediction_report, sweep, PredictionOptions, SweepParam, SweepStage};
use triathlon_contest::scenario::load_scenario;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/data/heterogeneous_triple.json");
    let scenario = load_scenario(path)?;

    let param: SweepParam = "D_1".parse()?;
    for r in sweep(&scenario, &param, &linspace(0.0, 1.0, 6), SweepStage::Stage2Only)? {
        let a = r.athlete("1").unwrap();
        println!("D_1 = {:.1}: psi {:.3}  p_1 {:.6}  e_1 {:.6}", r.value, a.psi, a.prob, a.effort);
    }

    // Group-size-dependent drafting benefit, supplied as a table.
    let psi_table: BTreeMap<usize, f64> = (2..=10).map(|m| (m, 1.0 + 0.9 * (1.0 - (-(m as f64 - 1.0) / 3.0).exp()))).collect();
    let opts = PredictionOptions {
        psi_table: Some(psi_table),
        ..PredictionOptions::default()
    };
    let report = prediction_report(&scenario, &opts)?;
    println!("drafting raises success: {:?}", report.drafting_raises_success.verdict);
    println!("group size lowers effort: {:?}", report.group_size_lowers_effort.verdict);
    println!("drafting raises continuation: {:?}", report.drafting_raises_continuation.verdict);
    if let Some(t) = report.trade_off {
        println!("effort peaks at m = {} (interior: {})", t.effort_maximiser, t.interior_optimum);
    }
    Ok(())
}
