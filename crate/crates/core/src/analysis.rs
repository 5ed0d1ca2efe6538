//! Comparative statics, welfare accounting, parameter sweeps and the
//! monotonicity predictions of the model.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::model::Scenario;
use crate::stage1::{Action, ContinuationSet, SetChoice, SpeMethod, Stage1Options, Stage1Solver};
use crate::stage2::{
    aggregate_slope, closed_form_symmetric, solve_stage2, solve_total_effort, ContestInstance, SolverSettings,
    Stage2Equilibrium,
};

/// Relative error below which an analytic derivative is accepted.
pub const SENSITIVITY_REL_TOL: f64 = 1e-4;

/// Primitive a derivative is taken with respect to; indices are member
/// positions in the contest instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    Psi(usize),
    Delta(usize),
    Cost(usize),
}

impl Parameter {
    fn member(&self) -> usize {
        match *self {
            Parameter::Psi(i) | Parameter::Delta(i) | Parameter::Cost(i) => i,
        }
    }
}

/// Equilibrium quantity being differentiated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    TotalEffort,
    Prob(usize),
    Effort(usize),
}

/// `d h_i / d theta` for the term `h_i = d_i / (k_i X^2 + d_i)`, with `k = c / psi`.
fn term_partial(instance: &ContestInstance, aggregate: f64, param: Parameter) -> f64 {
    let m = instance.member(param.member());
    let d = m.delta_eff();
    let x2 = aggregate * aggregate;
    let den = m.k * x2 + d;
    let den2 = den * den;
    match param {
        Parameter::Psi(_) => d * m.base_cost * x2 / (m.psi * m.psi * den2),
        Parameter::Delta(_) => m.weight * m.weight * m.k * x2 / den2,
        Parameter::Cost(_) => -d * x2 / (m.psi * den2),
    }
}

fn check_param(instance: &ContestInstance, param: Parameter) -> Result<()> {
    if instance.len() < 2 {
        return Err(Error::Usage("derivatives need an interior equilibrium (m >= 2)".into()));
    }
    if param.member() >= instance.len() {
        return Err(Error::Usage(format!("member index {} out of range", param.member())));
    }
    Ok(())
}

/// Implicit-function derivative `dX*/d theta = -g_theta / g_X` at a solved aggregate.
pub fn total_effort_derivative(instance: &ContestInstance, aggregate: f64, param: Parameter) -> Result<f64> {
    check_param(instance, param)?;
    Ok(-term_partial(instance, aggregate, param) / aggregate_slope(aggregate, instance))
}

#[allow(non_snake_case)]
/// `dE*/d theta` for the contest's equilibrium aggregate.
pub fn dE_dparam(instance: &ContestInstance, param: Parameter, settings: &SolverSettings) -> Result<f64> {
    check_param(instance, param)?;
    let aggregate = solve_total_effort(instance, settings)?;
    total_effort_derivative(instance, aggregate, param)
}

/// Analytic derivative of any target, by the chain rule through
/// `p_j = h_j(X*)` and `e_j = p_j X* / w_j`.
pub fn analytic_derivative(instance: &ContestInstance, target: Target, param: Parameter, settings: &SolverSettings) -> Result<f64> {
    check_param(instance, param)?;
    let aggregate = solve_total_effort(instance, settings)?;
    let dx = total_effort_derivative(instance, aggregate, param)?;
    let prob_derivative = |j: usize| {
        let m = instance.member(j);
        let d = m.delta_eff();
        let den = m.k * aggregate * aggregate + d;
        let through_x = -2.0 * d * m.k * aggregate / (den * den) * dx;
        let direct = if j == param.member() { term_partial(instance, aggregate, param) } else { 0.0 };
        (d / den, through_x + direct)
    };
    match target {
        Target::TotalEffort => Ok(dx),
        Target::Prob(j) => {
            check_target(instance, j)?;
            Ok(prob_derivative(j).1)
        }
        Target::Effort(j) => {
            check_target(instance, j)?;
            let (p, dp) = prob_derivative(j);
            Ok((dp * aggregate + p * dx) / instance.member(j).weight)
        }
    }
}

fn check_target(instance: &ContestInstance, j: usize) -> Result<()> {
    if j >= instance.len() {
        return Err(Error::Usage(format!("target member index {j} out of range")));
    }
    Ok(())
}

fn target_value(eq: &Stage2Equilibrium, target: Target) -> f64 {
    match target {
        Target::TotalEffort => eq.total_effort,
        Target::Prob(j) => eq.probs[j],
        Target::Effort(j) => eq.efforts[j],
    }
}

fn perturbed(instance: &ContestInstance, param: Parameter, delta: f64) -> Result<ContestInstance> {
    let i = param.member();
    let m = instance.member(i);
    let next = match param {
        Parameter::Psi(_) => m.with_psi(m.psi + delta)?,
        Parameter::Delta(_) => m.with_prize_diff(m.prize_diff + delta)?,
        Parameter::Cost(_) => m.with_base_cost(m.base_cost + delta)?,
    };
    Ok(instance.replace(i, next))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityReport {
    pub target: Target,
    pub parameter: Parameter,
    pub analytic: f64,
    pub finite_diff: f64,
    /// `|analytic - finite_diff| / max(|analytic|, 1e-12)`.
    pub rel_err: f64,
    pub passed: bool,
}

/// Compares the analytic derivative with a central difference of step
/// `step`, re-solving Stage 2 on both sides.
pub fn sensitivity_report(
    instance: &ContestInstance,
    target: Target,
    param: Parameter,
    step: f64,
    settings: &SolverSettings,
) -> Result<SensitivityReport> {
    check_param(instance, param)?;
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::domain("step", "finite and > 0", step));
    }
    let m = instance.member(param.member());
    let value = match param {
        Parameter::Psi(_) => m.psi,
        Parameter::Delta(_) => m.prize_diff,
        Parameter::Cost(_) => m.base_cost,
    };
    if value - step <= 0.0 {
        return Err(Error::domain("step", "smaller than the perturbed parameter", step));
    }
    if let (Parameter::Psi(_), Some((lo, hi))) = (param, instance.psi_bounds()) {
        if value - step < lo || value + step > hi {
            return Err(Error::domain("step", "small enough to stay within psi_bounds", step));
        }
    }
    let analytic = analytic_derivative(instance, target, param, settings)?;
    let up = solve_stage2(&perturbed(instance, param, step)?, settings)?;
    let down = solve_stage2(&perturbed(instance, param, -step)?, settings)?;
    let finite_diff = (target_value(&up, target) - target_value(&down, target)) / (2.0 * step);
    let rel_err = (analytic - finite_diff).abs() / analytic.abs().max(1e-12);
    Ok(SensitivityReport {
        target,
        parameter: param,
        analytic,
        finite_diff,
        rel_err,
        passed: rel_err <= SENSITIVITY_REL_TOL,
    })
}

/// Aggregate welfare and rent dissipation of one contest.
#[derive(Debug, Clone, PartialEq)]
pub struct WelfareReport {
    pub set: Vec<String>,
    /// `sum_i (p_i delta_i - k_i e_i^2 / 2)`.
    pub total_welfare: f64,
    /// `sum_i k_i e_i^2 / 2`.
    pub aggregate_cost: f64,
    /// `sum_i p_i delta_i`.
    pub aggregate_prize_intake: f64,
    /// `aggregate_cost / aggregate_prize_intake`.
    pub rent_ratio: f64,
}

pub fn welfare_of(instance: &ContestInstance, eq: &Stage2Equilibrium) -> WelfareReport {
    let mut cost = 0.0;
    let mut intake = 0.0;
    let mut welfare = 0.0;
    for (k, m) in instance.members().iter().enumerate() {
        cost += 0.5 * m.k * eq.efforts[k] * eq.efforts[k];
        intake += eq.probs[k] * m.prize_diff;
        welfare += eq.continuation_values[k];
    }
    WelfareReport {
        set: eq.ids.clone(),
        total_welfare: welfare,
        aggregate_cost: cost,
        aggregate_prize_intake: intake,
        rent_ratio: cost / intake,
    }
}

pub fn welfare_report(scenario: &Scenario, set: &ContinuationSet) -> Result<WelfareReport> {
    if set.is_empty() {
        return Err(Error::Usage("welfare needs a nonempty set".into()));
    }
    let instance = ContestInstance::from_scenario(scenario, set.indices())?;
    let eq = solve_stage2(&instance, &scenario.settings)?;
    Ok(welfare_of(&instance, &eq))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AthleteField {
    DraftShare,
    BaseCost,
    PrizeDiff,
    Weight,
    Theta,
    SwimTime,
}

impl AthleteField {
    fn name(&self) -> &'static str {
        match self {
            AthleteField::DraftShare => "draft_share",
            AthleteField::BaseCost => "base_cost",
            AthleteField::PrizeDiff => "prize_diff",
            AthleteField::Weight => "weight",
            AthleteField::Theta => "theta",
            AthleteField::SwimTime => "t_swim",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "draft_share" | "D" => AthleteField::DraftShare,
            "base_cost" | "c" => AthleteField::BaseCost,
            "prize_diff" | "delta" => AthleteField::PrizeDiff,
            "weight" | "w" => AthleteField::Weight,
            "theta" => AthleteField::Theta,
            "t_swim" | "t" => AthleteField::SwimTime,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GlobalField {
    Alpha,
    Beta,
    Eta,
}

/// A scenario coordinate a sweep can move.
///
/// Paths: `athletes.<id>.<field>` (short form `<field>_<id>`, e.g. `D_1`),
/// `globals.<alpha|beta|eta>` (or the bare name), and `m` for the group size.
/// Sweeping `m` replaces the field by `m` copies of the first athlete; the
/// copies keep the template id for the first and add `#k` for the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SweepParam {
    Athlete { id: String, field: AthleteField },
    Global(GlobalField),
    GroupSize,
}

impl FromStr for SweepParam {
    type Err = Error;

    fn from_str(path: &str) -> Result<Self> {
        let bad = || Error::Usage(format!("unrecognised sweep parameter `{path}`"));
        let global = |s: &str| match s {
            "alpha" => Some(GlobalField::Alpha),
            "beta" => Some(GlobalField::Beta),
            "eta" => Some(GlobalField::Eta),
            _ => None,
        };
        if path == "m" || path == "group_size" {
            return Ok(SweepParam::GroupSize);
        }
        if let Some(rest) = path.strip_prefix("globals.") {
            return global(rest).map(SweepParam::Global).ok_or_else(bad);
        }
        if let Some(g) = global(path) {
            return Ok(SweepParam::Global(g));
        }
        if let Some(rest) = path.strip_prefix("athletes.") {
            let (id, field) = rest.rsplit_once('.').ok_or_else(bad)?;
            let field = AthleteField::parse(field).ok_or_else(bad)?;
            return Ok(SweepParam::Athlete { id: id.into(), field });
        }
        let (field, id) = path.split_once('_').ok_or_else(bad)?;
        let field = AthleteField::parse(field).ok_or_else(bad)?;
        if id.is_empty() {
            return Err(bad());
        }
        Ok(SweepParam::Athlete { id: id.into(), field })
    }
}

impl fmt::Display for SweepParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepParam::Athlete { id, field } => write!(f, "athletes.{id}.{}", field.name()),
            SweepParam::Global(GlobalField::Alpha) => f.write_str("globals.alpha"),
            SweepParam::Global(GlobalField::Beta) => f.write_str("globals.beta"),
            SweepParam::Global(GlobalField::Eta) => f.write_str("globals.eta"),
            SweepParam::GroupSize => f.write_str("m"),
        }
    }
}

impl SweepParam {
    /// Copy of `scenario` with this coordinate set to `value`, re-validated.
    pub fn apply(&self, scenario: &Scenario, value: f64) -> Result<Scenario> {
        let mut next = scenario.clone();
        match self {
            SweepParam::Athlete { id, field } => {
                let idx = scenario
                    .index_of(id)
                    .ok_or_else(|| Error::Usage(format!("unknown athlete id `{id}`")))?;
                let a = &mut next.athletes[idx];
                match field {
                    AthleteField::DraftShare => a.draft_share = value,
                    AthleteField::BaseCost => a.base_cost = value,
                    AthleteField::PrizeDiff => a.prize_diff = value,
                    AthleteField::Weight => a.weight = value,
                    AthleteField::Theta => a.theta = value,
                    AthleteField::SwimTime => a.t_swim = value,
                }
            }
            SweepParam::Global(g) => match g {
                GlobalField::Alpha => next.globals.alpha = value,
                GlobalField::Beta => next.globals.beta = value,
                GlobalField::Eta => {
                    next.globals.eta = value;
                    next.globals.psi_hi = next.globals.psi_hi.max(1.0 / (1.0 - value));
                }
            },
            SweepParam::GroupSize => {
                if value.fract() != 0.0 || value < 2.0 {
                    return Err(Error::domain("m", "an integer >= 2", value));
                }
                let template = &scenario.athletes[0];
                next.athletes = (0..value as usize)
                    .map(|k| {
                        let mut a = template.clone();
                        if k > 0 {
                            a.id = format!("{}#{}", template.id, k + 1);
                        }
                        a
                    })
                    .collect();
                next.graph.edges.clear();
            }
        }
        next.validate()?;
        Ok(next)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepStage {
    /// Stage 2 among the whole field at every point.
    Stage2Only,
    /// Stage-1 equilibrium selection at every point, then Stage 2 on `S*`.
    FullSpe,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AthleteOutcome {
    pub id: String,
    pub psi: f64,
    pub k: f64,
    pub effort: f64,
    pub prob: f64,
    /// Continuation value for racers, outside option for those who withdraw.
    pub payoff: f64,
    pub action: Action,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub parameter: String,
    pub value: f64,
    pub continuation_set: Vec<String>,
    pub method: Option<SpeMethod>,
    pub total_effort: f64,
    pub athletes: Vec<AthleteOutcome>,
}

impl SweepRecord {
    pub fn athlete(&self, id: &str) -> Option<&AthleteOutcome> {
        self.athletes.iter().find(|a| a.id == id)
    }
}

/// Evenly spaced grid from an `A:B:N` specification (both ends inclusive).
pub fn parse_grid(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::Usage(format!("grid `{spec}` is not of the form A:B:N"));
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let b: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
    Ok(linspace(a, b, n))
}

pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn spe_choice(n: usize, opts: &Stage1Options) -> SetChoice {
    if n <= opts.max_enumeration {
        SetChoice::First
    } else {
        SetChoice::Iterative
    }
}

fn sweep_point(scenario: &Scenario, param: &SweepParam, value: f64, stage: SweepStage) -> Result<SweepRecord> {
    let s = param.apply(scenario, value)?;
    let (set, eq, method) = match stage {
        SweepStage::Stage2Only => {
            let set = ContinuationSet::all(s.len());
            let eq = solve_stage2(&ContestInstance::from_scenario(&s, set.indices())?, &s.settings)?;
            (set, eq, None)
        }
        SweepStage::FullSpe => {
            let opts = Stage1Options::default();
            let spe = Stage1Solver::new(&s)
                .assemble_spe(spe_choice(s.len(), &opts), &opts)?
                .into_iter()
                .next()
                .expect("assemble_spe returns at least one result");
            (spe.continuation_set, spe.stage2, Some(spe.method))
        }
    };
    let athletes = (0..s.len())
        .map(|idx| {
            let a = &s.athletes[idx];
            let psi = s.psi(idx);
            let k = a.base_cost * (1.0 - s.globals.eta * a.draft_share);
            match set.indices().binary_search(&idx) {
                Ok(pos) => AthleteOutcome {
                    id: a.id.clone(),
                    psi,
                    k,
                    effort: eq.efforts[pos],
                    prob: eq.probs[pos],
                    payoff: eq.continuation_values[pos],
                    action: Action::Continue,
                },
                Err(_) => AthleteOutcome {
                    id: a.id.clone(),
                    psi,
                    k,
                    effort: 0.0,
                    prob: 0.0,
                    payoff: s.outside_option(idx),
                    action: Action::Withdraw,
                },
            }
        })
        .collect();
    Ok(SweepRecord {
        parameter: param.to_string(),
        value,
        continuation_set: set.ids(&s),
        method,
        total_effort: eq.total_effort,
        athletes,
    })
}

/// Solves the scenario at every grid value; records follow grid order.
pub fn sweep(scenario: &Scenario, param: &SweepParam, grid: &[f64], stage: SweepStage) -> Result<Vec<SweepRecord>> {
    if grid.is_empty() {
        return Err(Error::Usage("sweep grid is empty".into()));
    }
    if let Some(k) = grid.windows(2).position(|w| w[1].partial_cmp(&w[0]) != Some(std::cmp::Ordering::Greater)) {
        return Err(Error::Usage(format!("sweep grid must be strictly increasing (grid[{}])", k + 1)));
    }
    grid.par_iter()
        .enumerate()
        .map(|(k, &value)| {
            sweep_point(scenario, param, value, stage).map_err(|e| match e {
                Error::Validation { path, reason } => Error::Validation {
                    path: format!("grid[{k}] = {value} ({path})"),
                    reason,
                },
                Error::Domain { field, expected, value: v } => Error::Domain {
                    field: format!("grid[{k}] ({field})"),
                    expected,
                    value: v,
                },
                other => other,
            })
        })
        .collect()
}

/// Illustrative drafting multiplier as a function of group size.
pub type PsiTable = BTreeMap<usize, f64>;

#[derive(Debug, Clone, PartialEq)]
pub enum Verdict {
    Pass,
    Fail,
    NotApplicable(String),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionCheck {
    pub verdict: Verdict,
    /// `(grid value, observed quantity)` pairs the verdict was based on.
    pub series: Vec<(f64, f64)>,
    pub detail: String,
}

/// Symmetric effort under a group-size-dependent multiplier; descriptive only.
#[derive(Debug, Clone, PartialEq)]
pub struct TradeOffReport {
    /// `(m, psi(m), e*(m))`.
    pub series: Vec<(usize, f64, f64)>,
    pub monotone_decreasing: bool,
    /// Group size with the largest per-athlete effort.
    pub effort_maximiser: usize,
    /// Whether the maximiser lies strictly inside the table's range.
    pub interior_optimum: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionReport {
    /// The realised continuation set has fewer than two racers.
    pub insufficient_contest: bool,
    /// More drafting raises the focal racer's win probability and effort.
    pub drafting_raises_success: PredictionCheck,
    /// Symmetric per-athlete effort falls with group size.
    pub group_size_lowers_effort: PredictionCheck,
    /// More drafting never turns Continue into Withdraw.
    pub drafting_raises_continuation: PredictionCheck,
    pub trade_off: Option<TradeOffReport>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PredictionOptions {
    /// Scenario index of the athlete whose drafting share is swept.
    pub focal: usize,
    pub draft_grid: Vec<f64>,
    pub group_sizes: Vec<f64>,
    pub psi_table: Option<PsiTable>,
}

impl Default for PredictionOptions {
    fn default() -> Self {
        PredictionOptions {
            focal: 0,
            draft_grid: linspace(0.0, 1.0, 11),
            group_sizes: (2..=10).map(f64::from).collect(),
            psi_table: None,
        }
    }
}

fn strictly(series: &[(f64, f64)], increasing: bool) -> bool {
    series
        .windows(2)
        .all(|w| if increasing { w[1].1 > w[0].1 } else { w[1].1 < w[0].1 })
}

fn check(pass: bool, series: Vec<(f64, f64)>, detail: String) -> PredictionCheck {
    PredictionCheck {
        verdict: if pass { Verdict::Pass } else { Verdict::Fail },
        series,
        detail,
    }
}

/// Runs the canonical drafting, group-size and continuation sweeps.
pub fn prediction_report(scenario: &Scenario, opts: &PredictionOptions) -> Result<PredictionReport> {
    if opts.focal >= scenario.len() {
        return Err(Error::Usage(format!("focal index {} out of range", opts.focal)));
    }
    let s1 = Stage1Options::default();
    let spe = Stage1Solver::new(scenario)
        .assemble_spe(spe_choice(scenario.len(), &s1), &s1)?
        .into_iter()
        .next()
        .expect("assemble_spe returns at least one result");
    let realised = spe.continuation_set;
    let insufficient_contest = realised.len() < 2;

    let drafting_raises_success = if insufficient_contest {
        PredictionCheck {
            verdict: Verdict::NotApplicable("insufficient contest size: fewer than two racers".into()),
            series: Vec::new(),
            detail: format!("realised set {:?}", realised.ids(scenario)),
        }
    } else {
        let racers = if realised.len() == scenario.len() {
            scenario.clone()
        } else {
            let mut sub = scenario.clone();
            sub.athletes = realised.indices().iter().map(|&i| scenario.athletes[i].clone()).collect();
            sub.graph.edges.retain(|(a, b)| {
                sub.athletes.iter().any(|x| &x.id == a) && sub.athletes.iter().any(|x| &x.id == b)
            });
            sub
        };
        let focal_idx = if realised.contains(opts.focal) { opts.focal } else { realised.indices()[0] };
        let focal = scenario.athletes[focal_idx].id.clone();
        let param = SweepParam::Athlete {
            id: focal.clone(),
            field: AthleteField::DraftShare,
        };
        let records = sweep(&racers, &param, &opts.draft_grid, SweepStage::Stage2Only)?;
        let probs: Vec<(f64, f64)> = records.iter().map(|r| (r.value, r.athlete(&focal).unwrap().prob)).collect();
        let efforts: Vec<(f64, f64)> = records.iter().map(|r| (r.value, r.athlete(&focal).unwrap().effort)).collect();
        let pass = strictly(&probs, true) && strictly(&efforts, true);
        check(
            pass,
            probs,
            format!(
                "athlete {focal}: p* and e* strictly increasing in draft_share: {pass} (effort series {:?})",
                efforts.iter().map(|x| x.1).collect::<Vec<_>>()
            ),
        )
    };

    let records = sweep(scenario, &SweepParam::GroupSize, &opts.group_sizes, SweepStage::Stage2Only)?;
    let template = scenario.athletes[0].id.clone();
    let efforts: Vec<(f64, f64)> = records.iter().map(|r| (r.value, r.athlete(&template).unwrap().effort)).collect();
    let pass = strictly(&efforts, false);
    let group_size_lowers_effort = check(pass, efforts, format!("symmetric e* strictly decreasing in m: {pass}"));

    let focal = scenario.athletes[opts.focal].id.clone();
    let param = SweepParam::Athlete {
        id: focal.clone(),
        field: AthleteField::DraftShare,
    };
    let records = sweep(scenario, &param, &opts.draft_grid, SweepStage::FullSpe)?;
    let actions: Vec<(f64, f64)> = records
        .iter()
        .map(|r| {
            let cont = r.athlete(&focal).unwrap().action == Action::Continue;
            (r.value, if cont { 1.0 } else { 0.0 })
        })
        .collect();
    let exits = actions.windows(2).filter(|w| w[1].1 < w[0].1).count();
    let switches = actions.windows(2).filter(|w| w[1].1 != w[0].1).count();
    let drafting_raises_continuation = check(
        exits == 0,
        actions,
        format!("athlete {focal}: {switches} action switch(es), {exits} Continue->Withdraw"),
    );

    let trade_off = match &opts.psi_table {
        Some(table) => Some(trade_off_report(scenario, table)?),
        None => None,
    };

    Ok(PredictionReport {
        insufficient_contest,
        drafting_raises_success,
        group_size_lowers_effort,
        drafting_raises_continuation,
        trade_off,
    })
}

/// Symmetric per-athlete effort of the first athlete's type when the
/// multiplier follows `table` in the group size.
pub fn trade_off_report(scenario: &Scenario, table: &PsiTable) -> Result<TradeOffReport> {
    let template = &scenario.athletes[0];
    let series = table
        .iter()
        .map(|(&m, &psi)| {
            closed_form_symmetric(m, template.prize_diff, template.base_cost, psi).map(|s| (m, psi, s.effort))
        })
        .collect::<Result<Vec<_>>>()?;
    if series.is_empty() {
        return Err(Error::Usage("psi table is empty".into()));
    }
    let monotone_decreasing = series.windows(2).all(|w| w[1].2 < w[0].2);
    let (pos, &(effort_maximiser, _, _)) = series
        .iter()
        .enumerate()
        .fold(None, |best: Option<(usize, &(usize, f64, f64))>, (k, item)| match best {
            Some((_, b)) if b.2 >= item.2 => best,
            _ => Some((k, item)),
        })
        .expect("nonempty");
    Ok(TradeOffReport {
        interior_optimum: pos > 0 && pos + 1 < series.len(),
        series,
        monotone_decreasing,
        effort_maximiser,
    })
}
