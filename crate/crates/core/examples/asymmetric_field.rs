//! A five-athlete field: equilibrium, deviation check and payoff curvature.

use triathlon_contest::stage2::{payoff_curvature, solve_stage2, verify_nash, ContestInstance, ContestMember, SolverSettings};

fn main() -> triathlon_contest::Result<()> {
    let field = [("A", 3.0, 1.0, 1.6), ("B", 2.0, 0.7, 1.2), ("C", 2.0, 1.4, 1.0), ("D", 1.0, 0.5, 1.9), ("E", 0.6, 2.0, 1.0)];
    let members = field
        .iter()
        .map(|&(id, delta, cost, psi)| ContestMember::unweighted(id, delta, cost, psi))
        .collect::<Result<Vec<_>, _>>()?;
    let contest = ContestInstance::new(members)?;
    let eq = solve_stage2(&contest, &SolverSettings::default())?;

    for k in 0..eq.len() {
        println!(
            "{}: e = {:.6}  p = {:.6}  W = {:.6}",
            eq.ids[k], eq.efforts[k], eq.probs[k], eq.continuation_values[k]
        );
    }

    let nash = verify_nash(&contest, &eq.profile(), 1e-6)?;
    println!("largest unilateral gain {:.2e} (passed: {})", nash.max_gain, nash.passed);

    let curv = payoff_curvature(&contest, &eq.profile(), 0)?;
    println!(
        "d2U_A/de_A2 = {:.6} (finite difference {:.6}); cross partials {:?}",
        curv.second_derivative, curv.second_derivative_fd, curv.cross_partials
    );
    Ok(())
}
