//! Endogenous participation: enumerate equilibrium continuation sets and
//! compare with iterating the best-continuation operator.

use triathlon_contest::model::{AthleteRecord, GlobalParams, Scenario};
use triathlon_contest::stage1::{ContinuationSet, SetChoice, Stage1Options, Stage1Solver};

fn main() -> triathlon_contest::Result<()> {
    let globals = GlobalParams::new(0.001, 0.01, 0.5);
    let spec = [("1", 2.0, 1.0, 0.0, 0.3), ("2", 1.0, 1.0, 0.4, 0.1), ("3", 1.0, 1.5, 0.0, 0.35), ("4", 0.8, 1.0, 0.8, 0.2)];
    let athletes = spec
        .iter()
        .enumerate()
        .map(|(k, &(id, delta, cost, draft, outside))| {
            let mut a = AthleteRecord::new(id, cost, delta);
            a.r_swim = k as u32 + 1;
            a.draft_share = draft;
            a.theta = outside + globals.beta * f64::from(a.r_swim);
            a
        })
        .collect();
    let scenario = Scenario::new(athletes, globals)?;
    let solver = Stage1Solver::new(&scenario);

    for set in solver.enumerate_equilibrium_sets(12)? {
        println!("equilibrium set {:?}", set.ids(&scenario));
    }
    let iterated = solver.iterate_continuation_operator(&ContinuationSet::all(4), &Stage1Options::default())?;
    let trace: Vec<_> = iterated.trace.iter().map(|s| s.ids(&scenario)).collect();
    println!("operator path {trace:?} -> {:?} ({})", iterated.set.ids(&scenario), iterated.method);

    let spe = &solver.assemble_spe(SetChoice::First, &Stage1Options::default())?[0];
    for (a, (action, payoff)) in scenario.athletes.iter().zip(spe.actions.iter().zip(&spe.payoffs)) {
        println!("{}: {action} payoff {payoff:.6}", a.id);
    }
    println!("Stage-2 solves cached: {}", solver.cached_sets());
    Ok(())
}
