//! Stage-2 (bike-run) Tullock contest among a fixed set of continuers.
//!
//! With weights the solver works in the weighted aggregate
//! `X = sum_j w_j e_j`. Writing `x_i = w_i e_i` and `d_i = delta_i w_i^2`,
//! the first-order conditions give `p_i = d_i / (k_i X^2 + d_i)`, so the
//! equilibrium aggregate is the unique positive root of
//!
//! ```text
//! g(X) = sum_i d_i / (k_i X^2 + d_i) - 1
//! ```
//!
//! `g(0) = m - 1` and `g` is strictly decreasing, so the root is found by
//! geometric bracketing followed by bisection. For unit weights `X` is plain
//! total effort.

use crate::error::{Error, Result};
use crate::model::{effective_cost, psi_of, EffortProfile, Scenario};

/// Root-finder settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverSettings {
    /// Maximum accepted `|g|` at the returned root.
    pub abs_tol: f64,
    /// Iteration cap, applied separately to bracketing and bisection.
    pub max_iter: usize,
    /// Factor by which the upper bracket grows until `g` turns negative.
    pub bracket_growth: f64,
}

impl Default for SolverSettings {
    fn default() -> Self {
        SolverSettings {
            abs_tol: 1e-12,
            max_iter: 200,
            bracket_growth: 4.0,
        }
    }
}

impl SolverSettings {
    pub fn validate(&self) -> Result<()> {
        if !(self.abs_tol.is_finite() && self.abs_tol > 0.0) {
            return Err(Error::validation("solver.abs_tol", "must be > 0"));
        }
        if self.max_iter == 0 {
            return Err(Error::validation("solver.max_iter", "must be >= 1"));
        }
        if !(self.bracket_growth.is_finite() && self.bracket_growth > 1.0) {
            return Err(Error::validation("solver.bracket_growth", "must be > 1"));
        }
        Ok(())
    }
}

/// One continuer as seen by the Stage-2 contest.
#[derive(Debug, Clone, PartialEq)]
pub struct ContestMember {
    pub id: String,
    /// Raw prize differential `delta_i`.
    pub prize_diff: f64,
    pub base_cost: f64,
    pub psi: f64,
    pub weight: f64,
    /// Effective cost slope `c_i / psi_i`.
    pub k: f64,
}

impl ContestMember {
    pub fn new(id: impl Into<String>, prize_diff: f64, base_cost: f64, psi: f64, weight: f64) -> Result<Self> {
        for (name, v) in [
            ("prize_diff", prize_diff),
            ("base_cost", base_cost),
            ("psi", psi),
            ("weight", weight),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::domain(name, "finite and > 0", v));
            }
        }
        Ok(ContestMember {
            id: id.into(),
            prize_diff,
            base_cost,
            psi,
            weight,
            k: base_cost / psi,
        })
    }

    /// Unit-weight member.
    pub fn unweighted(id: impl Into<String>, prize_diff: f64, base_cost: f64, psi: f64) -> Result<Self> {
        Self::new(id, prize_diff, base_cost, psi, 1.0)
    }

    /// Weighted prize `delta_i w_i^2`.
    pub fn delta_eff(&self) -> f64 {
        self.prize_diff * self.weight * self.weight
    }

    pub fn with_psi(&self, psi: f64) -> Result<Self> {
        Self::new(self.id.clone(), self.prize_diff, self.base_cost, psi, self.weight)
    }

    pub fn with_prize_diff(&self, prize_diff: f64) -> Result<Self> {
        Self::new(self.id.clone(), prize_diff, self.base_cost, self.psi, self.weight)
    }

    pub fn with_base_cost(&self, base_cost: f64) -> Result<Self> {
        Self::new(self.id.clone(), self.prize_diff, base_cost, self.psi, self.weight)
    }
}

/// The set of continuers `S` with their contest parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct ContestInstance {
    members: Vec<ContestMember>,
    psi_bounds: Option<(f64, f64)>,
}

impl ContestInstance {
    pub fn new(members: Vec<ContestMember>) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::Usage("a contest needs at least one member".into()));
        }
        Ok(ContestInstance {
            members,
            psi_bounds: None,
        })
    }

    /// Symmetric unit-weight contest of `m` identical members with ids `1..=m`.
    pub fn symmetric(m: usize, prize_diff: f64, base_cost: f64, psi: f64) -> Result<Self> {
        let members = (1..=m)
            .map(|i| ContestMember::unweighted(i.to_string(), prize_diff, base_cost, psi))
            .collect::<Result<Vec<_>>>()?;
        Self::new(members)
    }

    /// Contest among the scenario athletes at `indices`, with the
    /// reduced-drag multiplier and effective cost `c (1 - eta D)`.
    pub fn from_scenario(scenario: &Scenario, indices: &[usize]) -> Result<Self> {
        let eta = scenario.globals.eta;
        let members = indices
            .iter()
            .map(|&idx| {
                let a = scenario
                    .athletes
                    .get(idx)
                    .ok_or_else(|| Error::Usage(format!("athlete index {idx} out of range")))?;
                let psi = psi_of(a.draft_share, eta)?;
                let mut m = ContestMember::new(a.id.clone(), a.prize_diff, a.base_cost, psi, a.weight)?;
                m.k = effective_cost(a.base_cost, a.draft_share, eta)?;
                Ok(m)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut inst = Self::new(members)?;
        inst.psi_bounds = Some((scenario.globals.psi_lo, scenario.globals.psi_hi));
        Ok(inst)
    }

    pub fn with_psi_bounds(mut self, lo: f64, hi: f64) -> Self {
        self.psi_bounds = Some((lo, hi));
        self
    }

    pub fn psi_bounds(&self) -> Option<(f64, f64)> {
        self.psi_bounds
    }

    pub fn members(&self) -> &[ContestMember] {
        &self.members
    }

    pub fn member(&self, idx: usize) -> &ContestMember {
        &self.members[idx]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.members.iter().position(|m| m.id == id)
    }

    pub fn weights(&self) -> Vec<f64> {
        self.members.iter().map(|m| m.weight).collect()
    }

    pub fn is_unweighted(&self) -> bool {
        self.members.iter().all(|m| m.weight == 1.0)
    }

    /// Copy with member `idx` replaced.
    pub fn replace(&self, idx: usize, member: ContestMember) -> Self {
        let mut next = self.clone();
        next.members[idx] = member;
        next
    }
}

/// Unique interior equilibrium of one Stage-2 contest.
#[derive(Debug, Clone, PartialEq)]
pub struct Stage2Equilibrium {
    pub ids: Vec<String>,
    /// Root of the aggregate equation (weighted total effort; plain total
    /// effort for unit weights).
    pub total_effort: f64,
    pub efforts: Vec<f64>,
    pub probs: Vec<f64>,
    /// `W_i = p_i delta_i - k_i e_i^2 / 2`.
    pub continuation_values: Vec<f64>,
    /// `|g|` at the returned root.
    pub residual: f64,
}

impl Stage2Equilibrium {
    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn position(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|m| m == id)
    }

    pub fn profile(&self) -> EffortProfile {
        EffortProfile::new(self.efforts.clone()).expect("equilibrium efforts are nonnegative")
    }

    fn from_aggregate(instance: &ContestInstance, aggregate: f64) -> Self {
        let mut probs = Vec::with_capacity(instance.len());
        let mut efforts = Vec::with_capacity(instance.len());
        let mut values = Vec::with_capacity(instance.len());
        for m in instance.members() {
            let d = m.delta_eff();
            let p = d / (m.k * aggregate * aggregate + d);
            let e = p * aggregate / m.weight;
            probs.push(p);
            efforts.push(e);
            values.push(p * m.prize_diff - 0.5 * m.k * e * e);
        }
        Stage2Equilibrium {
            ids: instance.members().iter().map(|m| m.id.clone()).collect(),
            total_effort: aggregate,
            efforts,
            probs,
            continuation_values: values,
            residual: aggregate_equation(aggregate, instance).abs(),
        }
    }
}

/// `g(X) = sum_i d_i / (k_i X^2 + d_i) - 1`.
pub fn aggregate_equation(aggregate: f64, instance: &ContestInstance) -> f64 {
    let x2 = aggregate * aggregate;
    instance
        .members()
        .iter()
        .map(|m| {
            let d = m.delta_eff();
            d / (m.k * x2 + d)
        })
        .sum::<f64>()
        - 1.0
}

/// `g'(X) = -sum_i 2 d_i k_i X / (k_i X^2 + d_i)^2`.
pub fn aggregate_slope(aggregate: f64, instance: &ContestInstance) -> f64 {
    let x2 = aggregate * aggregate;
    -instance
        .members()
        .iter()
        .map(|m| {
            let d = m.delta_eff();
            let den = m.k * x2 + d;
            2.0 * d * m.k * aggregate / (den * den)
        })
        .sum::<f64>()
}

/// Equilibrium aggregate `X* > 0` for a contest with at least two members.
pub fn solve_total_effort(instance: &ContestInstance, settings: &SolverSettings) -> Result<f64> {
    solve_total_effort_from(instance, settings, 1.0)
}

/// As [`solve_total_effort`], starting the bracket search at `[0, initial_upper]`.
///
/// Bisection continues until the bracket cannot be split further, then the
/// endpoint with the smaller residual is accepted if it meets `abs_tol`.
pub fn solve_total_effort_from(instance: &ContestInstance, settings: &SolverSettings, initial_upper: f64) -> Result<f64> {
    if instance.len() < 2 {
        return Err(Error::Usage(format!(
            "aggregate equation needs at least 2 members, got {}",
            instance.len()
        )));
    }
    if !(initial_upper.is_finite() && initial_upper > 0.0) {
        return Err(Error::domain("initial_upper", "finite and > 0", initial_upper));
    }
    let g = |x: f64| aggregate_equation(x, instance);

    let (mut lo, mut g_lo) = (0.0, g(0.0));
    let (mut hi, mut g_hi) = (initial_upper, g(initial_upper));
    let mut grown = 0;
    while g_hi > 0.0 {
        if grown >= settings.max_iter || !hi.is_finite() {
            return Err(Error::Convergence {
                lo,
                hi,
                residual: g_hi.abs(),
                iterations: grown,
            });
        }
        lo = hi;
        g_lo = g_hi;
        hi *= settings.bracket_growth;
        g_hi = g(hi);
        grown += 1;
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }

    let mut iterations = 0;
    while iterations < settings.max_iter {
        let mid = lo + 0.5 * (hi - lo);
        if mid <= lo || mid >= hi {
            break;
        }
        let g_mid = g(mid);
        iterations += 1;
        if g_mid == 0.0 {
            return Ok(mid);
        }
        if g_mid > 0.0 {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
            g_hi = g_mid;
        }
    }
    let (best, residual) = if g_lo.abs() <= g_hi.abs() && lo > 0.0 {
        (lo, g_lo.abs())
    } else {
        (hi, g_hi.abs())
    };
    if residual <= settings.abs_tol {
        Ok(best)
    } else {
        Err(Error::Convergence {
            lo,
            hi,
            residual,
            iterations,
        })
    }
}

/// Solves the contest. A single member races uncontested: `p = 1`, `e = 0`,
/// `W = delta`.
pub fn solve_stage2(instance: &ContestInstance, settings: &SolverSettings) -> Result<Stage2Equilibrium> {
    if instance.len() == 1 {
        let m = instance.member(0);
        return Ok(Stage2Equilibrium {
            ids: vec![m.id.clone()],
            total_effort: 0.0,
            efforts: vec![0.0],
            probs: vec![1.0],
            continuation_values: vec![m.prize_diff],
            residual: 0.0,
        });
    }
    let aggregate = solve_total_effort(instance, settings)?;
    Ok(Stage2Equilibrium::from_aggregate(instance, aggregate))
}

/// Closed-form equilibrium of a two-member contest via the effective
/// advantage ratio `R = (delta_i / k_i) / (delta_j / k_j)`.
pub fn closed_form_two_player(instance: &ContestInstance) -> Result<Stage2Equilibrium> {
    if instance.len() != 2 {
        return Err(Error::Usage(format!(
            "two-player closed form needs exactly 2 members, got {}",
            instance.len()
        )));
    }
    let (a, b) = (instance.member(0), instance.member(1));
    let ratio = (a.prize_diff / a.k) / (b.prize_diff / b.k);
    let rho = ratio.sqrt() * a.weight / b.weight;
    let p_a = rho / (1.0 + rho);
    let p_b = 1.0 / (1.0 + rho);
    let shape = rho.sqrt() / (1.0 + rho);
    let e_a = (a.prize_diff / a.k).sqrt() * shape;
    let e_b = (b.prize_diff / b.k).sqrt() * shape;
    let aggregate = a.weight * e_a + b.weight * e_b;
    Ok(Stage2Equilibrium {
        ids: vec![a.id.clone(), b.id.clone()],
        total_effort: aggregate,
        efforts: vec![e_a, e_b],
        probs: vec![p_a, p_b],
        continuation_values: vec![
            p_a * a.prize_diff - 0.5 * a.k * e_a * e_a,
            p_b * b.prize_diff - 0.5 * b.k * e_b * e_b,
        ],
        residual: aggregate_equation(aggregate, instance).abs(),
    })
}

/// Per-athlete effort, total effort and win probability of a symmetric contest.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricSolution {
    pub effort: f64,
    pub total_effort: f64,
    pub prob: f64,
}

pub fn closed_form_symmetric(m: usize, prize_diff: f64, base_cost: f64, psi: f64) -> Result<SymmetricSolution> {
    if m < 2 {
        return Err(Error::Usage(format!("symmetric closed form needs m >= 2, got {m}")));
    }
    for (name, v) in [("prize_diff", prize_diff), ("base_cost", base_cost), ("psi", psi)] {
        if !(v.is_finite() && v > 0.0) {
            return Err(Error::domain(name, "finite and > 0", v));
        }
    }
    let mf = m as f64;
    let effort = (prize_diff * psi / base_cost).sqrt() * ((mf - 1.0) / (mf * mf)).sqrt();
    Ok(SymmetricSolution {
        effort,
        total_effort: mf * effort,
        prob: 1.0 / mf,
    })
}

/// Outcome of the unilateral-deviation check.
#[derive(Debug, Clone, PartialEq)]
pub struct NashReport {
    /// Largest payoff improvement any member can reach alone (never negative).
    pub max_gain: f64,
    /// Member achieving `max_gain`, if any member can gain at all.
    pub worst_deviator: Option<String>,
    pub tolerance: f64,
    pub passed: bool,
}

/// Checks a profile for profitable unilateral deviations.
///
/// Each member's payoff is maximised by golden-section search over
/// `[0, max(4 E, sqrt(delta/k))]` with rivals held fixed (the second bound
/// always contains the best response). This path never touches the
/// aggregate equation.
pub fn verify_nash(instance: &ContestInstance, profile: &EffortProfile, deviation_tol: f64) -> Result<NashReport> {
    let efforts = profile.as_slice();
    if efforts.len() != instance.len() {
        return Err(Error::Usage(format!(
            "profile has {} entries for {} members",
            efforts.len(),
            instance.len()
        )));
    }
    let mut max_gain = 0.0;
    let mut worst = None;
    if instance.len() > 1 {
        let total: f64 = efforts.iter().sum();
        let weighted: f64 = instance.members().iter().zip(efforts).map(|(m, e)| m.weight * e).sum();
        for (i, m) in instance.members().iter().enumerate() {
            let rivals = weighted - m.weight * efforts[i];
            let payoff = |x: f64| {
                let own = m.weight * x;
                let prize = if own + rivals > 0.0 { m.prize_diff * own / (own + rivals) } else { 0.0 };
                prize - 0.5 * m.k * x * x
            };
            let current = payoff(efforts[i]);
            let best = if rivals <= 0.0 {
                // Any positive effort wins for sure; the supremum is approached as e -> 0+.
                m.prize_diff
            } else {
                let upper = (4.0 * total).max((m.prize_diff / m.k).sqrt());
                let x = golden_section_max(payoff, 0.0, upper);
                payoff(x).max(payoff(0.0))
            };
            let gain = best - current;
            if gain > max_gain {
                max_gain = gain;
                worst = Some(m.id.clone());
            }
        }
    }
    Ok(NashReport {
        max_gain,
        worst_deviator: worst,
        tolerance: deviation_tol,
        passed: max_gain <= deviation_tol,
    })
}

fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a) <= 1e-14 * b.abs().max(1e-300) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    0.5 * (a + b)
}

/// Hessian row of member `idx`'s Stage-2 payoff, analytic and by central
/// differences.
#[derive(Debug, Clone, PartialEq)]
pub struct Curvature {
    /// `d^2 U_i / d e_i^2 = -2 delta_i w_i^2 R_i / X^3 - k_i`, `R_i` the rivals' weighted effort.
    pub second_derivative: f64,
    /// `(j, d^2 U_i / d e_i d e_j)` for every `j != i`:
    /// `delta_i w_i w_j (2 w_i e_i - X) / X^3`.
    pub cross_partials: Vec<(usize, f64)>,
    pub second_derivative_fd: f64,
    pub cross_partials_fd: Vec<(usize, f64)>,
    /// Largest analytic/finite-difference gap, relative to
    /// `max(|analytic|, |second_derivative|)`.
    pub max_rel_err: f64,
}

pub fn payoff_curvature(instance: &ContestInstance, profile: &EffortProfile, idx: usize) -> Result<Curvature> {
    let efforts = profile.as_slice();
    if efforts.len() != instance.len() || idx >= instance.len() {
        return Err(Error::Usage("profile or member index does not match the instance".into()));
    }
    let weights = instance.weights();
    let aggregate: f64 = weights.iter().zip(efforts).map(|(w, e)| w * e).sum();
    if aggregate <= 0.0 {
        return Err(Error::DegenerateProfile);
    }
    let me = instance.member(idx);
    let (d, w, k) = (me.prize_diff, me.weight, me.k);
    let rivals = aggregate - w * efforts[idx];
    let x3 = aggregate.powi(3);
    let second = -2.0 * d * w * w * rivals / x3 - k;
    let cross: Vec<(usize, f64)> = (0..instance.len())
        .filter(|&j| j != idx)
        .map(|j| (j, d * w * weights[j] * (2.0 * w * efforts[idx] - aggregate) / x3))
        .collect();

    // Smooth extension of U_i; valid for small negative perturbations while X > 0.
    let payoff = |v: &[f64]| {
        let total: f64 = weights.iter().zip(v).map(|(w, e)| w * e).sum();
        d * w * v[idx] / total - 0.5 * k * v[idx] * v[idx]
    };
    let h = 1e-4 * aggregate / weights.iter().sum::<f64>();
    let shifted = |di: f64, j: Option<(usize, f64)>| {
        let mut v = efforts.to_vec();
        v[idx] += di;
        if let Some((j, dj)) = j {
            v[j] += dj;
        }
        payoff(&v)
    };
    let second_fd = (shifted(h, None) - 2.0 * shifted(0.0, None) + shifted(-h, None)) / (h * h);
    let cross_fd: Vec<(usize, f64)> = cross
        .iter()
        .map(|&(j, _)| {
            let v = (shifted(h, Some((j, h))) - shifted(h, Some((j, -h))) - shifted(-h, Some((j, h)))
                + shifted(-h, Some((j, -h))))
                / (4.0 * h * h);
            (j, v)
        })
        .collect();
    let rel = |a: f64, b: f64| (a - b).abs() / a.abs().max(second.abs());
    let max_rel_err = cross
        .iter()
        .zip(&cross_fd)
        .map(|(&(_, a), &(_, b))| rel(a, b))
        .fold(rel(second, second_fd), f64::max);
    Ok(Curvature {
        second_derivative: second,
        cross_partials: cross,
        second_derivative_fd: second_fd,
        cross_partials_fd: cross_fd,
        max_rel_err,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn settings() -> SolverSettings {
        SolverSettings::default()
    }

    fn triple() -> ContestInstance {
        ContestInstance::new(vec![
            ContestMember::unweighted("1", 1.0, 1.0, 1.0).unwrap(),
            ContestMember::unweighted("2", 2.0, 1.0, 1.0).unwrap(),
            ContestMember::unweighted("3", 1.0, 2.0, 1.0).unwrap(),
        ])
        .unwrap()
    }

    /// Plain bisection on the unweighted aggregate equation written out
    /// independently of `aggregate_equation`.
    fn reference_root(params: &[(f64, f64, f64)]) -> f64 {
        let g = |e: f64| params.iter().map(|&(d, c, psi)| d / (c * e * e / psi + d)).sum::<f64>() - 1.0;
        let (mut lo, mut hi) = (0.0, 100.0);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if g(mid) > 0.0 {
                lo = mid
            } else {
                hi = mid
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn aggregate_equation_examples() {
        let two = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(aggregate_equation(0.0, &two), 1.0);
        assert_eq!(aggregate_equation(1.0, &two), 0.0);
        let three = ContestInstance::symmetric(3, 1.0, 1.0, 1.0).unwrap();
        assert!((aggregate_equation(2.0, &three) + 0.4).abs() < 1e-15);
        assert_eq!(aggregate_equation(0.0, &three), 2.0);
    }

    #[test]
    fn total_effort_examples() {
        let two = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
        assert!((solve_total_effort(&two, &settings()).unwrap() - 1.0).abs() < 1e-10);
        let three = ContestInstance::symmetric(3, 1.0, 1.0, 1.0).unwrap();
        assert!((solve_total_effort(&three, &settings()).unwrap() - 2f64.sqrt()).abs() < 1e-6);

        let oracle = reference_root(&[(1.0, 1.0, 1.0), (2.0, 1.0, 1.0), (1.0, 2.0, 1.0)]);
        assert!((oracle - 1.45227).abs() < 1e-4, "oracle {oracle}");
        let x = solve_total_effort(&triple(), &settings()).unwrap();
        assert!((x - oracle).abs() < 1e-10);
        assert!(aggregate_equation(x, &triple()).abs() <= 1e-12);
    }

    #[test]
    fn single_member_needs_degenerate_path() {
        let one = ContestInstance::symmetric(1, 7.0, 1.0, 1.0).unwrap();
        assert!(matches!(solve_total_effort(&one, &settings()), Err(Error::Usage(_))));
        let eq = solve_stage2(&one, &settings()).unwrap();
        assert_eq!(eq.probs, vec![1.0]);
        assert_eq!(eq.efforts, vec![0.0]);
        assert_eq!(eq.continuation_values, vec![7.0]);
    }

    #[test]
    fn iteration_cap_reports_bracket() {
        let inst = ContestInstance::symmetric(2, 1e6, 1e-6, 1.0).unwrap();
        let tight = SolverSettings {
            max_iter: 2,
            ..settings()
        };
        match solve_total_effort(&inst, &tight) {
            Err(Error::Convergence { lo, hi, .. }) => assert!(lo < hi),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn stage2_examples() {
        let two = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
        let eq = solve_stage2(&two, &settings()).unwrap();
        for i in 0..2 {
            assert!((eq.probs[i] - 0.5).abs() < 1e-12);
            assert!((eq.efforts[i] - 0.5).abs() < 1e-12);
            assert!((eq.continuation_values[i] - 0.375).abs() < 1e-12);
        }

        let eq = solve_stage2(&triple(), &settings()).unwrap();
        for (p, want) in eq.probs.iter().zip([0.3216, 0.4867, 0.1916]) {
            assert!((p - want).abs() < 1e-3, "{p} vs {want}");
        }
        for (e, p) in eq.efforts.iter().zip(&eq.probs) {
            assert!((e - p * eq.total_effort).abs() < 1e-15);
        }
        assert!((eq.probs.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn two_player_examples() {
        let sym = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
        let eq = closed_form_two_player(&sym).unwrap();
        assert_eq!(eq.probs, vec![0.5, 0.5]);
        assert_eq!(eq.efforts, vec![0.5, 0.5]);

        let asym = ContestInstance::new(vec![
            ContestMember::unweighted("i", 2.0, 1.0, 1.0).unwrap(),
            ContestMember::unweighted("j", 1.0, 1.0, 1.0).unwrap(),
        ])
        .unwrap();
        let eq = closed_form_two_player(&asym).unwrap();
        assert!((eq.probs[0] - 0.58579).abs() < 1e-5);
        assert!((eq.efforts[0] - 0.69663).abs() < 1e-5);
        assert!((eq.efforts[1] - 0.49258).abs() < 1e-5);

        let weighted = ContestInstance::new(vec![
            ContestMember::new("i", 1.0, 1.0, 1.0, 2.0).unwrap(),
            ContestMember::new("j", 1.0, 1.0, 1.0, 1.0).unwrap(),
        ])
        .unwrap();
        let eq = closed_form_two_player(&weighted).unwrap();
        assert!((eq.probs[0] - 2.0 / 3.0).abs() < 1e-12);
        let solved = solve_stage2(&weighted, &settings()).unwrap();
        assert!((solved.probs[0] - 2.0 / 3.0).abs() < 1e-9);
        for i in 0..2 {
            assert!((solved.efforts[i] - eq.efforts[i]).abs() < 1e-9);
        }

        assert!(matches!(closed_form_two_player(&triple()), Err(Error::Usage(_))));
    }

    #[test]
    fn symmetric_examples() {
        let s = closed_form_symmetric(2, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(s.effort, 0.5);
        assert_eq!(s.prob, 0.5);
        assert!((closed_form_symmetric(4, 1.0, 1.0, 1.0).unwrap().effort - (3f64 / 16.0).sqrt()).abs() < 1e-15);
        assert_eq!(closed_form_symmetric(2, 4.0, 1.0, 1.0).unwrap().effort, 1.0);
        assert!(matches!(closed_form_symmetric(1, 1.0, 1.0, 1.0), Err(Error::Usage(_))));
    }

    #[test]
    fn nash_examples() {
        let two = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
        let eq = solve_stage2(&two, &settings()).unwrap();
        let report = verify_nash(&two, &eq.profile(), 1e-8).unwrap();
        assert!(report.passed && report.max_gain <= 1e-8);

        let perturbed = EffortProfile::new(vec![0.6, 0.5]).unwrap();
        let report = verify_nash(&two, &perturbed, 1e-4).unwrap();
        assert!(!report.passed && report.max_gain > 1e-4);

        let one = ContestInstance::symmetric(1, 3.0, 1.0, 1.0).unwrap();
        let eq = solve_stage2(&one, &settings()).unwrap();
        let report = verify_nash(&one, &eq.profile(), 1e-12).unwrap();
        assert_eq!(report.max_gain, 0.0);
        assert!(report.passed);
    }

    #[test]
    fn curvature_examples() {
        let two = ContestInstance::symmetric(2, 1.0, 1.0, 1.0).unwrap();
        let at = EffortProfile::new(vec![0.5, 0.5]).unwrap();
        let c = payoff_curvature(&two, &at, 0).unwrap();
        assert!((c.second_derivative + 2.0).abs() < 1e-12);
        assert!(c.cross_partials[0].1.abs() < 1e-12);
        assert!(c.max_rel_err < 1e-6, "{c:?}");

        let skewed = EffortProfile::new(vec![0.9, 0.1]).unwrap();
        let c = payoff_curvature(&two, &skewed, 0).unwrap();
        assert!((c.cross_partials[0].1 - 0.8).abs() < 1e-12);
        assert!(c.max_rel_err < 1e-6, "{c:?}");

        let zero = EffortProfile::new(vec![0.0, 0.0]).unwrap();
        assert_eq!(payoff_curvature(&two, &zero, 0), Err(Error::DegenerateProfile));
    }

    #[test]
    fn weighted_curvature_matches_differences() {
        let inst = ContestInstance::new(vec![
            ContestMember::new("a", 2.0, 1.5, 1.2, 0.7).unwrap(),
            ContestMember::new("b", 1.0, 0.5, 1.0, 1.8).unwrap(),
            ContestMember::new("c", 3.0, 2.0, 1.6, 1.1).unwrap(),
        ])
        .unwrap();
        let prof = EffortProfile::new(vec![0.3, 0.8, 0.45]).unwrap();
        for i in 0..3 {
            let c = payoff_curvature(&inst, &prof, i).unwrap();
            assert!(c.second_derivative < 0.0);
            assert!(c.max_rel_err < 1e-6, "{c:?}");
        }
    }
}
