//! Two racers with different weights: numerical solve vs the closed form.

use triathlon_contest::stage2::{closed_form_two_player, solve_stage2, ContestInstance, ContestMember, SolverSettings};

fn main() -> triathlon_contest::Result<()> {
    let contest = ContestInstance::new(vec![
        ContestMember::new("fast-swimmer", 2.0, 1.0, 1.25, 1.0)?,
        ContestMember::new("strong-runner", 1.5, 0.8, 1.0, 1.4)?,
    ])?;
    let solved = solve_stage2(&contest, &SolverSettings::default())?;
    let closed = closed_form_two_player(&contest)?;

    println!("{:<14} {:>14} {:>14} {:>14}", "athlete", "effort", "closed form", "win prob");
    for k in 0..2 {
        println!(
            "{:<14} {:>14.10} {:>14.10} {:>14.10}",
            solved.ids[k], solved.efforts[k], closed.efforts[k], solved.probs[k]
        );
    }
    println!("total effort {:.10}, residual {:.1e}", solved.total_effort, solved.residual);
    Ok(())
}
