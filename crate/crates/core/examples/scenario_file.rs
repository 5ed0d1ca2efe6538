//! Load a scenario document, solve it and write an edited copy.
//!
//! `cargo run --example scenario_file -- crates/core/data/high_outside_dropout.json`

use triathlon_contest::scenario::{load_scenario, scenario_to_json};
use triathlon_contest::stage1::{SetChoice, Stage1Options, Stage1Solver};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/high_outside_dropout.json").into());
    let mut scenario = load_scenario(&path)?;
    for (k, a) in scenario.athletes.iter().enumerate() {
        println!("{}: psi {:.3}, outside option {:.4}", a.id, scenario.psi(k), scenario.outside_option(k));
    }

    let report = |s: &triathlon_contest::Scenario| -> triathlon_contest::Result<()> {
        let solver = Stage1Solver::new(s);
        let spe = &solver.assemble_spe(SetChoice::First, &Stage1Options::default())?[0];
        println!("S* = {:?} via {}", spe.continuation_set.ids(s), spe.method);
        Ok(())
    };
    report(&scenario)?;

    // Remove the lucrative outside option and look again.
    for a in &mut scenario.athletes {
        a.theta = 0.0;
    }
    report(&scenario)?;
    print!("{}", scenario_to_json(&scenario));
    Ok(())
}
