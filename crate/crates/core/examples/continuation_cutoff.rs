//! How much drafting does an athlete need before racing on beats quitting?

use triathlon_contest::model::{AthleteRecord, GlobalParams, Scenario};
use triathlon_contest::stage1::{ContinuationSet, CutoffVerdict, Stage1Solver};

fn main() -> triathlon_contest::Result<()> {
    let globals = GlobalParams::new(0.001, 0.01, 0.5);
    let mut rival = AthleteRecord::new("rival", 1.0, 1.0);
    rival.r_swim = 1;
    rival.theta = -1.0;

    for outside in [0.2, 0.40, 0.44, 0.6] {
        let mut focal = AthleteRecord::new("focal", 1.0, 1.0);
        focal.r_swim = 2;
        focal.theta = outside + globals.beta * 2.0;
        let scenario = Scenario::new(vec![rival.clone(), focal], globals)?;
        let solver = Stage1Solver::new(&scenario);
        let cutoff = solver.cutoff_psi(&ContinuationSet::all(2), 1, 1e-10)?;
        let text = match cutoff.verdict {
            CutoffVerdict::Interior(psi) => format!("continue once psi >= {psi:.6}"),
            CutoffVerdict::AlwaysContinue => "continues at any drafting level".into(),
            CutoffVerdict::AlwaysWithdraw => "withdraws at any drafting level".into(),
        };
        println!("outside option {outside:.2}: {text}");
    }
    Ok(())
}
