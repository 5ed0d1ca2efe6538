//! Domain types and the primitive maps of the contest: drafting multiplier,
//! effective cost, outside option, contest success function and the
//! per-athlete Stage-2 payoff.

use std::collections::{BTreeSet, HashSet};

use crate::error::{Error, Result};
use crate::stage2::SolverSettings;

/// Absolute tolerance used for comparisons against zero.
pub const ZERO_TOL: f64 = 1e-12;

/// One athlete's post-swim state, economic parameters and outside-option term.
#[derive(Debug, Clone, PartialEq)]
pub struct AthleteRecord {
    pub id: String,
    /// Swim time in seconds.
    pub t_swim: f64,
    /// Swim rank, 1 is first out of the water.
    pub r_swim: u32,
    /// Share of the swim spent drafting, in `[0, 1]`.
    pub draft_share: f64,
    /// Baseline quadratic cost coefficient.
    pub base_cost: f64,
    /// Winner-loser prize differential.
    pub prize_diff: f64,
    /// Contest weight in the success function.
    pub weight: f64,
    /// Idiosyncratic outside-option term.
    pub theta: f64,
}

impl AthleteRecord {
    /// A record with neutral swim state (`t = 0`, rank 1, no drafting),
    /// unit weight and `theta = 0`.
    pub fn new(id: impl Into<String>, base_cost: f64, prize_diff: f64) -> Self {
        AthleteRecord {
            id: id.into(),
            t_swim: 0.0,
            r_swim: 1,
            draft_share: 0.0,
            base_cost,
            prize_diff,
            weight: 1.0,
            theta: 0.0,
        }
    }

    pub fn validate(&self, path: &str) -> Result<()> {
        let field = |name: &str| format!("{path}.{name}");
        if self.id.is_empty() {
            return Err(Error::validation(field("id"), "must be non-empty"));
        }
        if !(self.t_swim.is_finite() && self.t_swim >= 0.0) {
            return Err(Error::validation(field("t_swim"), "must be finite and >= 0"));
        }
        if self.r_swim < 1 {
            return Err(Error::validation(field("r_swim"), "must be >= 1"));
        }
        if !(0.0..=1.0).contains(&self.draft_share) {
            return Err(Error::validation(field("draft_share"), "must lie in [0,1]"));
        }
        for (name, v) in [
            ("base_cost", self.base_cost),
            ("prize_diff", self.prize_diff),
            ("weight", self.weight),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::validation(field(name), "must be finite and > 0"));
            }
        }
        if !self.theta.is_finite() {
            return Err(Error::validation(field("theta"), "must be finite"));
        }
        Ok(())
    }
}

/// Field-wide penalty and drag parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GlobalParams {
    /// Utility lost per second of swim time on withdrawal.
    pub alpha: f64,
    /// Utility lost per swim rank on withdrawal.
    pub beta: f64,
    /// Drag-reduction sensitivity, in `(0, 1)`.
    pub eta: f64,
    pub psi_lo: f64,
    pub psi_hi: f64,
}

impl GlobalParams {
    /// Parameters whose multiplier bounds are exactly the reduced-drag range
    /// `[1, 1/(1 - eta)]`.
    pub fn new(alpha: f64, beta: f64, eta: f64) -> Self {
        GlobalParams {
            alpha,
            beta,
            eta,
            psi_lo: 1.0,
            psi_hi: 1.0 / (1.0 - eta),
        }
    }

    pub fn with_psi_bounds(mut self, lo: f64, hi: f64) -> Self {
        self.psi_lo = lo;
        self.psi_hi = hi;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha.is_finite() && self.alpha > 0.0) {
            return Err(Error::validation("globals.alpha", "must be > 0"));
        }
        if !(self.beta.is_finite() && self.beta > 0.0) {
            return Err(Error::validation("globals.beta", "must be > 0"));
        }
        if !(self.eta > 0.0 && self.eta < 1.0) {
            return Err(Error::validation("globals.eta", "must lie in the open interval (0,1)"));
        }
        if !(self.psi_lo.is_finite() && self.psi_lo > 0.0 && self.psi_lo <= self.psi_hi && self.psi_hi.is_finite()) {
            return Err(Error::validation(
                "globals.psi_bounds",
                "must satisfy 0 < psi_lo <= psi_hi < inf",
            ));
        }
        let top = 1.0 / (1.0 - self.eta);
        if self.psi_lo > 1.0 || self.psi_hi < top * (1.0 - 1e-12) {
            return Err(Error::validation(
                "globals.psi_bounds",
                format!("must contain the reduced-drag range [1, {top}]"),
            ));
        }
        Ok(())
    }
}

/// Directed drafting relations observed in the swim (drafter, draftee).
///
/// Stored for completeness; the reduced-drag multiplier does not read it.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct DraftingGraph {
    pub edges: BTreeSet<(String, String)>,
}

impl DraftingGraph {
    pub fn validate(&self, ids: &HashSet<&str>) -> Result<()> {
        for (k, (from, to)) in self.edges.iter().enumerate() {
            if from == to {
                return Err(Error::validation(format!("graph[{k}]"), format!("self-loop on `{from}`")));
            }
            for end in [from, to] {
                if !ids.contains(end.as_str()) {
                    return Err(Error::validation(format!("graph[{k}]"), format!("unknown athlete id `{end}`")));
                }
            }
        }
        Ok(())
    }
}

/// The full field entering the swim-to-bike transition.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub athletes: Vec<AthleteRecord>,
    pub globals: GlobalParams,
    pub graph: DraftingGraph,
    pub settings: SolverSettings,
}

impl Scenario {
    /// Builds and validates a scenario with default solver settings and an
    /// empty drafting graph.
    pub fn new(athletes: Vec<AthleteRecord>, globals: GlobalParams) -> Result<Self> {
        let scenario = Scenario {
            athletes,
            globals,
            graph: DraftingGraph::default(),
            settings: SolverSettings::default(),
        };
        scenario.validate()?;
        Ok(scenario)
    }

    pub fn validate(&self) -> Result<()> {
        self.globals.validate()?;
        if self.athletes.len() < 2 {
            return Err(Error::validation("athletes", "at least 2 athletes are required"));
        }
        let mut ids = HashSet::new();
        for (k, a) in self.athletes.iter().enumerate() {
            a.validate(&format!("athletes[{k}]"))?;
            if !ids.insert(a.id.as_str()) {
                return Err(Error::validation(format!("athletes[{k}].id"), format!("duplicate id `{}`", a.id)));
            }
        }
        self.graph.validate(&ids)?;
        self.settings.validate()
    }

    pub fn len(&self) -> usize {
        self.athletes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.athletes.is_empty()
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.athletes.iter().position(|a| a.id == id)
    }

    /// Drafting multiplier of athlete `idx` under the reduced-drag model.
    pub fn psi(&self, idx: usize) -> f64 {
        1.0 / (1.0 - self.globals.eta * self.athletes[idx].draft_share)
    }

    pub fn outside_option(&self, idx: usize) -> f64 {
        outside_option(&self.athletes[idx], &self.globals)
    }
}

/// A nonnegative effort vector aligned with some ordered member list.
#[derive(Debug, Clone, PartialEq)]
pub struct EffortProfile(Vec<f64>);

impl EffortProfile {
    pub fn new(efforts: Vec<f64>) -> Result<Self> {
        for (k, &e) in efforts.iter().enumerate() {
            if !(e.is_finite() && e >= 0.0) {
                return Err(Error::domain(format!("efforts[{k}]"), "finite and >= 0", e));
            }
        }
        Ok(EffortProfile(efforts))
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// Hook for drafting-multiplier maps `psi = Psi(D, m, r, G)`.
pub trait DraftingMultiplier {
    fn multiplier(&self, draft_share: f64, group_size: usize, swim_rank: u32, graph: &DraftingGraph) -> Result<f64>;
}

/// The reduced-drag map `psi = 1 / (1 - eta D)`; ignores group size, rank and graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedDrag {
    pub eta: f64,
}

impl DraftingMultiplier for ReducedDrag {
    fn multiplier(&self, draft_share: f64, _group_size: usize, _swim_rank: u32, _graph: &DraftingGraph) -> Result<f64> {
        psi_of(draft_share, self.eta)
    }
}

fn check_drag_inputs(draft_share: f64, eta: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&draft_share) {
        return Err(Error::domain("draft_share", "in [0,1]", draft_share));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::domain("eta", "in (0,1)", eta));
    }
    Ok(())
}

/// Reduced-drag multiplier `1 / (1 - eta D)`, in `[1, 1/(1 - eta)]`.
pub fn psi_of(draft_share: f64, eta: f64) -> Result<f64> {
    check_drag_inputs(draft_share, eta)?;
    Ok(1.0 / (1.0 - eta * draft_share))
}

/// Effective quadratic cost slope `c (1 - eta D)`, equal to `c / psi`.
pub fn effective_cost(base_cost: f64, draft_share: f64, eta: f64) -> Result<f64> {
    check_drag_inputs(draft_share, eta)?;
    if !(base_cost.is_finite() && base_cost > 0.0) {
        return Err(Error::domain("base_cost", "finite and > 0", base_cost));
    }
    Ok(base_cost * (1.0 - eta * draft_share))
}

/// Payoff from withdrawing after the swim: `-alpha t - beta r + theta`.
pub fn outside_option(athlete: &AthleteRecord, globals: &GlobalParams) -> f64 {
    -globals.alpha * athlete.t_swim - globals.beta * f64::from(athlete.r_swim) + athlete.theta
}

/// Contest success function `p_i = w_i e_i / sum_j w_j e_j`.
pub fn win_probabilities(profile: &EffortProfile, weights: &[f64]) -> Result<Vec<f64>> {
    let efforts = profile.as_slice();
    if efforts.len() != weights.len() {
        return Err(Error::Usage(format!(
            "{} efforts but {} weights",
            efforts.len(),
            weights.len()
        )));
    }
    let total: f64 = efforts.iter().zip(weights).map(|(e, w)| e * w).sum();
    if total <= 0.0 {
        return Err(Error::DegenerateProfile);
    }
    Ok(efforts.iter().zip(weights).map(|(e, w)| w * e / total).collect())
}

/// Stage-2 expected utility of member `idx`, dropping effort-independent terms:
/// `p_i delta - k e_i^2 / 2`.
pub fn stage2_payoff(idx: usize, profile: &EffortProfile, delta: f64, k: f64, weights: &[f64]) -> Result<f64> {
    let probs = win_probabilities(profile, weights)?;
    let e = *profile
        .as_slice()
        .get(idx)
        .ok_or_else(|| Error::Usage(format!("member index {idx} out of range")))?;
    Ok(probs[idx] * delta - 0.5 * k * e * e)
}
