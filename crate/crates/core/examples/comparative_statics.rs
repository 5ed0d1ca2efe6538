//! Implicit-function derivatives of contest outcomes, checked against
//! central differences.

use triathlon_contest::analysis::{sensitivity_report, Parameter, Target};
use triathlon_contest::stage2::{ContestInstance, ContestMember, SolverSettings};

fn main() -> triathlon_contest::Result<()> {
    let contest = ContestInstance::new(vec![
        ContestMember::unweighted("1", 1.0, 1.0, 1.3)?,
        ContestMember::unweighted("2", 1.5, 1.2, 1.0)?,
        ContestMember::unweighted("3", 0.8, 0.9, 1.1)?,
    ])?;
    let settings = SolverSettings::default();
    println!("{:<14} {:<10} {:>14} {:>14} {:>10}", "target", "param", "analytic", "finite diff", "rel err");
    for param in [Parameter::Psi(0), Parameter::Delta(0), Parameter::Cost(0)] {
        for target in [Target::TotalEffort, Target::Prob(0), Target::Effort(0), Target::Prob(1)] {
            let r = sensitivity_report(&contest, target, param, 1e-5, &settings)?;
            println!(
                "{:<14} {:<10} {:>14.8} {:>14.8} {:>10.1e}",
                format!("{target:?}"),
                format!("{param:?}"),
                r.analytic,
                r.finite_diff,
                r.rel_err
            );
        }
    }
    Ok(())
}
