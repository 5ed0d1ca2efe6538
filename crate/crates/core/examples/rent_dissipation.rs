//! Share of the prize pool burnt as effort cost in symmetric fields.

use triathlon_contest::analysis::welfare_of;
use triathlon_contest::stage2::{solve_stage2, ContestInstance, SolverSettings};

fn main() -> triathlon_contest::Result<()> {
    println!("{:>4} {:>12} {:>12} {:>12}", "m", "welfare", "cost", "rent ratio");
    for m in [2, 3, 4, 6, 10, 20, 50] {
        let contest = ContestInstance::symmetric(m, 1.0, 1.0, 1.0)?;
        let w = welfare_of(&contest, &solve_stage2(&contest, &SolverSettings::default())?);
        println!("{m:>4} {:>12.6} {:>12.6} {:>12.6}", w.total_welfare, w.aggregate_cost, w.rent_ratio);
    }
    Ok(())
}
