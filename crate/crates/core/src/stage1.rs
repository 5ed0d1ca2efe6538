//! Stage-1 continuation decisions: continuation values, net benefits,
//! drafting cutoffs, equilibrium continuation sets and assembled
//! subgame-perfect equilibria.
//!
//! An athlete outside a set `S` is evaluated on `S ∪ {i}`, the set they
//! would create by entering. A set `S*` is an equilibrium continuation set
//! when every member has `V_i(S*) >= 0` and every outsider has
//! `V_i(S* ∪ {i}) <= 0`, both up to [`ZERO_TOL`].

use std::collections::{HashMap, HashSet};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::model::{Scenario, ZERO_TOL};
use crate::stage2::{solve_stage2, verify_nash, ContestInstance, NashReport, Stage2Equilibrium};

/// Tolerance for the unilateral-deviation check run on every assembled SPE.
pub const SPE_NASH_TOL: f64 = 1e-6;

/// A nonempty-or-empty set of athletes, stored as sorted scenario indices.
///
/// Ordering is lexicographic on the sorted index tuple.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContinuationSet(Vec<usize>);

impl ContinuationSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        ContinuationSet(v)
    }

    /// Every athlete of an `n`-athlete field.
    pub fn all(n: usize) -> Self {
        ContinuationSet((0..n).collect())
    }

    pub fn singleton(idx: usize) -> Self {
        ContinuationSet(vec![idx])
    }

    fn from_mask(mask: u64, n: usize) -> Self {
        ContinuationSet((0..n).filter(|i| mask & (1 << i) != 0).collect())
    }

    pub fn from_ids<S: AsRef<str>>(scenario: &Scenario, ids: &[S]) -> Result<Self> {
        ids.iter()
            .map(|id| {
                let id = id.as_ref();
                scenario
                    .index_of(id)
                    .ok_or_else(|| Error::Usage(format!("unknown athlete id `{id}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn contains(&self, idx: usize) -> bool {
        self.0.binary_search(&idx).is_ok()
    }

    pub fn with(&self, idx: usize) -> Self {
        let mut v = self.0.clone();
        if let Err(pos) = v.binary_search(&idx) {
            v.insert(pos, idx);
        }
        ContinuationSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn ids(&self, scenario: &Scenario) -> Vec<String> {
        self.0.iter().map(|&i| scenario.athletes[i].id.clone()).collect()
    }

    fn check(&self, scenario: &Scenario) -> Result<()> {
        if self.is_empty() {
            return Err(Error::Usage("continuation set must be nonempty".into()));
        }
        if let Some(&bad) = self.0.iter().find(|&&i| i >= scenario.len()) {
            return Err(Error::Usage(format!("athlete index {bad} out of range")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Action {
    Continue,
    Withdraw,
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Action::Continue => "Continue",
            Action::Withdraw => "Withdraw",
        })
    }
}

/// `V_i = W_i(set) - U_i^T`, where `set` is the set actually evaluated.
#[derive(Debug, Clone, PartialEq)]
pub struct NetBenefit {
    pub athlete: String,
    pub set: ContinuationSet,
    pub continuation_value: f64,
    pub outside_option: f64,
    pub net: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CutoffVerdict {
    /// `V_i >= 0` iff `psi_i >= psi_star`.
    Interior(f64),
    /// `V_i >= 0` on the whole multiplier range.
    AlwaysContinue,
    /// `V_i < 0` on the whole multiplier range.
    AlwaysWithdraw,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CutoffResult {
    pub athlete: String,
    pub set: ContinuationSet,
    pub verdict: CutoffVerdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpeMethod {
    Enumeration,
    Iteration,
    SingletonFallback,
}

impl fmt::Display for SpeMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpeMethod::Enumeration => "Enumeration",
            SpeMethod::Iteration => "Iteration",
            SpeMethod::SingletonFallback => "SingletonFallback",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetChoice {
    /// Lexicographically first enumerated equilibrium set.
    First,
    /// Every enumerated equilibrium set.
    All,
    /// Fixed point of the continuation operator started from the full field.
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Stage1Options {
    /// Largest field for which exhaustive enumeration is allowed.
    pub max_enumeration: usize,
    /// Operator rounds before giving up; `None` means `2n`.
    pub max_rounds: Option<usize>,
}

impl Default for Stage1Options {
    fn default() -> Self {
        Stage1Options {
            max_enumeration: 12,
            max_rounds: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationOutcome {
    pub set: ContinuationSet,
    /// Visited sets, starting with the initial one.
    pub trace: Vec<ContinuationSet>,
    pub rounds: usize,
    pub method: SpeMethod,
    /// Whether `set` satisfies both equilibrium conditions on re-check.
    pub verified: bool,
}

/// A subgame-perfect equilibrium: continuation set plus its Stage-2 play.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeResult {
    pub continuation_set: ContinuationSet,
    pub stage2: Stage2Equilibrium,
    /// Indexed like `scenario.athletes`.
    pub actions: Vec<Action>,
    /// `W_i(S*)` for members, `U_i^T` for everyone else.
    pub payoffs: Vec<f64>,
    pub method: SpeMethod,
    pub conditions_hold: bool,
    pub nash: NashReport,
}

type Cache = Mutex<HashMap<ContinuationSet, Arc<Stage2Equilibrium>>>;

/// Stage-1 solver bound to one scenario, memoising Stage-2 solves per set.
pub struct Stage1Solver<'a> {
    scenario: &'a Scenario,
    cache: Option<Cache>,
}

impl<'a> Stage1Solver<'a> {
    pub fn new(scenario: &'a Scenario) -> Self {
        Stage1Solver {
            scenario,
            cache: Some(Mutex::new(HashMap::new())),
        }
    }

    /// Solver that re-solves Stage 2 on every query.
    pub fn without_cache(scenario: &'a Scenario) -> Self {
        Stage1Solver { scenario, cache: None }
    }

    pub fn scenario(&self) -> &'a Scenario {
        self.scenario
    }

    /// Number of distinct sets solved so far (0 without a cache).
    pub fn cached_sets(&self) -> usize {
        self.cache.as_ref().map_or(0, |c| c.lock().unwrap().len())
    }

    /// Stage-2 equilibrium of `set`.
    pub fn equilibrium(&self, set: &ContinuationSet) -> Result<Arc<Stage2Equilibrium>> {
        set.check(self.scenario)?;
        if let Some(cache) = &self.cache {
            if let Some(hit) = cache.lock().unwrap().get(set) {
                return Ok(Arc::clone(hit));
            }
        }
        let instance = ContestInstance::from_scenario(self.scenario, set.indices())?;
        let eq = Arc::new(solve_stage2(&instance, &self.scenario.settings)?);
        if let Some(cache) = &self.cache {
            cache.lock().unwrap().entry(set.clone()).or_insert_with(|| Arc::clone(&eq));
        }
        Ok(eq)
    }

    /// `W_i(S)` for a member `idx` of `set`.
    pub fn continuation_value(&self, set: &ContinuationSet, idx: usize) -> Result<f64> {
        if !set.contains(idx) {
            return Err(Error::Usage(format!("athlete index {idx} is not in the set")));
        }
        let eq = self.equilibrium(set)?;
        let pos = set.indices().binary_search(&idx).expect("member");
        Ok(eq.continuation_values[pos])
    }

    /// Net benefit of continuing; outsiders are evaluated on `set ∪ {idx}`.
    pub fn net_benefit(&self, set: &ContinuationSet, idx: usize) -> Result<NetBenefit> {
        if idx >= self.scenario.len() {
            return Err(Error::Usage(format!("athlete index {idx} out of range")));
        }
        let evaluated = set.with(idx);
        let w = self.continuation_value(&evaluated, idx)?;
        let u = self.scenario.outside_option(idx);
        Ok(NetBenefit {
            athlete: self.scenario.athletes[idx].id.clone(),
            set: evaluated,
            continuation_value: w,
            outside_option: u,
            net: w - u,
        })
    }

    /// Net benefit of member `idx` with its multiplier overridden to `psi`.
    fn net_benefit_at_psi(&self, instance: &ContestInstance, pos: usize, psi: f64, outside: f64) -> Result<f64> {
        let member = instance.member(pos).with_psi(psi)?;
        let eq = solve_stage2(&instance.replace(pos, member), &self.scenario.settings)?;
        Ok(eq.continuation_values[pos] - outside)
    }

    /// Drafting-multiplier threshold for member `idx` of `set`, treating
    /// `psi_idx` as free on the scenario's multiplier bounds.
    pub fn cutoff_psi(&self, set: &ContinuationSet, idx: usize, tol: f64) -> Result<CutoffResult> {
        set.check(self.scenario)?;
        let pos = set
            .indices()
            .binary_search(&idx)
            .map_err(|_| Error::Usage(format!("athlete index {idx} is not in the set")))?;
        let instance = ContestInstance::from_scenario(self.scenario, set.indices())?;
        let outside = self.scenario.outside_option(idx);
        let (mut lo, mut hi) = (self.scenario.globals.psi_lo, self.scenario.globals.psi_hi);
        let v = |psi: f64| self.net_benefit_at_psi(&instance, pos, psi, outside);

        let verdict = if v(lo)? >= 0.0 {
            CutoffVerdict::AlwaysContinue
        } else if v(hi)? < 0.0 {
            CutoffVerdict::AlwaysWithdraw
        } else {
            let mut best = hi;
            for _ in 0..200 {
                let mid = lo + 0.5 * (hi - lo);
                if mid <= lo || mid >= hi {
                    break;
                }
                let vm = v(mid)?;
                if vm.abs() <= tol {
                    best = mid;
                    break;
                }
                if vm < 0.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
                best = hi;
            }
            CutoffVerdict::Interior(best)
        };
        Ok(CutoffResult {
            athlete: self.scenario.athletes[idx].id.clone(),
            set: set.clone(),
            verdict,
        })
    }

    /// Direct check of both equilibrium conditions for `set`.
    pub fn satisfies_conditions(&self, set: &ContinuationSet) -> Result<bool> {
        set.check(self.scenario)?;
        for idx in 0..self.scenario.len() {
            let v = self.net_benefit(set, idx)?.net;
            let ok = if set.contains(idx) { v >= -ZERO_TOL } else { v <= ZERO_TOL };
            if !ok {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every nonempty equilibrium continuation set, lexicographically ordered.
    pub fn enumerate_equilibrium_sets(&self, max_n: usize) -> Result<Vec<ContinuationSet>> {
        let n = self.scenario.len();
        if n > max_n || n >= 64 {
            return Err(Error::TooLarge { n, max: max_n.min(63) });
        }
        let mut found = Vec::new();
        for mask in 1..(1u64 << n) {
            let set = ContinuationSet::from_mask(mask, n);
            if self.satisfies_conditions(&set)? {
                found.push(set);
            }
        }
        found.sort();
        Ok(found)
    }

    /// `{i : V_i(S) >= 0}` over the whole field.
    fn operator(&self, set: &ContinuationSet) -> Result<ContinuationSet> {
        let mut next = Vec::new();
        for idx in 0..self.scenario.len() {
            if self.net_benefit(set, idx)?.net >= -ZERO_TOL {
                next.push(idx);
            }
        }
        Ok(ContinuationSet::new(next))
    }

    /// Singleton with the largest `V_i({i})`; ties go to the lower index.
    fn singleton_fallback(&self) -> Result<ContinuationSet> {
        let mut best: Option<(usize, f64)> = None;
        for idx in 0..self.scenario.len() {
            let v = self.net_benefit(&ContinuationSet::singleton(idx), idx)?.net;
            if best.is_none_or(|(_, b)| v > b) {
                best = Some((idx, v));
            }
        }
        Ok(ContinuationSet::singleton(best.expect("n >= 2").0))
    }

    /// Iterates `S <- {i : V_i(S) >= 0}` from `start` until a fixed point.
    ///
    /// An empty image triggers the singleton fallback. A revisited set or an
    /// exhausted round budget falls back to enumeration when the field is
    /// small enough, otherwise it is reported as non-convergence.
    pub fn iterate_continuation_operator(&self, start: &ContinuationSet, opts: &Stage1Options) -> Result<IterationOutcome> {
        start.check(self.scenario)?;
        let n = self.scenario.len();
        let max_rounds = opts.max_rounds.unwrap_or(2 * n);
        let mut trace = vec![start.clone()];
        let mut visited: HashSet<ContinuationSet> = trace.iter().cloned().collect();
        let mut current = start.clone();
        let mut rounds = 0;
        while rounds < max_rounds {
            let next = self.operator(&current)?;
            rounds += 1;
            if next.is_empty() {
                let set = self.singleton_fallback()?;
                let verified = self.satisfies_conditions(&set)?;
                trace.push(next);
                return Ok(IterationOutcome {
                    set,
                    trace,
                    rounds,
                    method: SpeMethod::SingletonFallback,
                    verified,
                });
            }
            if next == current {
                let verified = self.satisfies_conditions(&current)?;
                return Ok(IterationOutcome {
                    set: current,
                    trace,
                    rounds,
                    method: SpeMethod::Iteration,
                    verified,
                });
            }
            let seen = !visited.insert(next.clone());
            trace.push(next.clone());
            if seen {
                break;
            }
            current = next;
        }

        if n > opts.max_enumeration {
            return Err(Error::NonConvergence {
                rounds,
                trace: trace.iter().map(|s| s.ids(self.scenario)).collect(),
            });
        }
        let (set, method) = match self.enumerate_equilibrium_sets(opts.max_enumeration)?.into_iter().next() {
            Some(set) => (set, SpeMethod::Enumeration),
            None => (self.singleton_fallback()?, SpeMethod::SingletonFallback),
        };
        let verified = self.satisfies_conditions(&set)?;
        Ok(IterationOutcome {
            set,
            trace,
            rounds,
            method,
            verified,
        })
    }

    fn build_spe(&self, set: ContinuationSet, method: SpeMethod) -> Result<SpeResult> {
        let stage2 = (*self.equilibrium(&set)?).clone();
        let instance = ContestInstance::from_scenario(self.scenario, set.indices())?;
        let nash = verify_nash(&instance, &stage2.profile(), SPE_NASH_TOL)?;
        let conditions_hold = self.satisfies_conditions(&set)?;
        let mut actions = Vec::with_capacity(self.scenario.len());
        let mut payoffs = Vec::with_capacity(self.scenario.len());
        for idx in 0..self.scenario.len() {
            match set.indices().binary_search(&idx) {
                Ok(pos) => {
                    actions.push(Action::Continue);
                    payoffs.push(stage2.continuation_values[pos]);
                }
                Err(_) => {
                    actions.push(Action::Withdraw);
                    payoffs.push(self.scenario.outside_option(idx));
                }
            }
        }
        Ok(SpeResult {
            continuation_set: set,
            stage2,
            actions,
            payoffs,
            method,
            conditions_hold,
            nash,
        })
    }

    /// Subgame-perfect equilibria for the chosen Stage-1 selection.
    ///
    /// When no equilibrium set exists the singleton-fallback profile is
    /// returned, flagged by its method.
    pub fn assemble_spe(&self, choice: SetChoice, opts: &Stage1Options) -> Result<Vec<SpeResult>> {
        let picks: Vec<(ContinuationSet, SpeMethod)> = match choice {
            SetChoice::First | SetChoice::All => {
                let sets = self.enumerate_equilibrium_sets(opts.max_enumeration)?;
                if sets.is_empty() {
                    vec![(self.singleton_fallback()?, SpeMethod::SingletonFallback)]
                } else if choice == SetChoice::First {
                    vec![(sets[0].clone(), SpeMethod::Enumeration)]
                } else {
                    sets.into_iter().map(|s| (s, SpeMethod::Enumeration)).collect()
                }
            }
            SetChoice::Iterative => {
                let out = self.iterate_continuation_operator(&ContinuationSet::all(self.scenario.len()), opts)?;
                vec![(out.set, out.method)]
            }
        };
        picks.into_iter().map(|(set, method)| self.build_spe(set, method)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{AthleteRecord, GlobalParams};

    /// Two unit athletes (delta = c = 1, no drafting) with outside options
    /// `u1`, `u2`, and bounds `[0.5, 2]`.
    fn pair(u1: f64, u2: f64) -> Scenario {
        let globals = GlobalParams::new(1.0, 1.0, 0.5).with_psi_bounds(0.5, 2.0);
        let mk = |id: &str, u: f64| {
            let mut a = AthleteRecord::new(id, 1.0, 1.0);
            // U^T = -alpha*0 - beta*1 + theta
            a.theta = u + 1.0;
            a
        };
        Scenario::new(vec![mk("1", u1), mk("2", u2)], globals).unwrap()
    }

    fn set(ids: &[usize]) -> ContinuationSet {
        ContinuationSet::new(ids.iter().copied())
    }

    #[test]
    fn continuation_value_examples() {
        let s = pair(0.0, 0.0);
        let solver = Stage1Solver::new(&s);
        assert!((solver.continuation_value(&set(&[0, 1]), 0).unwrap() - 0.375).abs() < 1e-12);
        assert_eq!(solver.continuation_value(&set(&[0]), 0).unwrap(), 1.0);
        assert!(solver.continuation_value(&set(&[0]), 1).is_err());

        let globals = GlobalParams::new(1.0, 1.0, 0.5);
        let mut b = AthleteRecord::new("2", 1.0, 2.0);
        b.weight = 1.0;
        let triple = Scenario::new(
            vec![AthleteRecord::new("1", 1.0, 1.0), b, AthleteRecord::new("3", 2.0, 1.0)],
            globals,
        )
        .unwrap();
        let solver = Stage1Solver::new(&triple);
        let w2 = solver.continuation_value(&ContinuationSet::all(3), 1).unwrap();
        assert!((w2 - 0.7236).abs() < 1e-3, "{w2}");
    }

    #[test]
    fn net_benefit_examples() {
        let s = pair(0.1, 0.375);
        let solver = Stage1Solver::new(&s);
        let nb = solver.net_benefit(&set(&[0, 1]), 0).unwrap();
        assert!((nb.net - 0.275).abs() < 1e-12);
        assert_eq!(nb.net, nb.continuation_value - nb.outside_option);
        let nb = solver.net_benefit(&set(&[0, 1]), 1).unwrap();
        assert!(nb.net.abs() < 1e-12);

        // outsider evaluated on the set it would create
        let nb = solver.net_benefit(&set(&[0]), 1).unwrap();
        assert_eq!(nb.set, set(&[0, 1]));
    }

    #[test]
    fn cutoff_examples() {
        let s = pair(0.0, 0.375);
        let solver = Stage1Solver::new(&s);
        match solver.cutoff_psi(&set(&[0, 1]), 1, 1e-10).unwrap().verdict {
            CutoffVerdict::Interior(p) => assert!((p - 1.0).abs() < 1e-6, "{p}"),
            v => panic!("unexpected {v:?}"),
        }
        let s = pair(0.0, -10.0);
        let r = Stage1Solver::new(&s).cutoff_psi(&set(&[0, 1]), 1, 1e-10).unwrap();
        assert_eq!(r.verdict, CutoffVerdict::AlwaysContinue);
        let s = pair(0.0, 10.0);
        let r = Stage1Solver::new(&s).cutoff_psi(&set(&[0, 1]), 1, 1e-10).unwrap();
        assert_eq!(r.verdict, CutoffVerdict::AlwaysWithdraw);
        assert!(Stage1Solver::new(&s).cutoff_psi(&set(&[0]), 1, 1e-10).is_err());
    }

    #[test]
    fn enumeration_examples() {
        let s = pair(0.0, 0.0);
        assert_eq!(Stage1Solver::new(&s).enumerate_equilibrium_sets(12).unwrap(), vec![set(&[0, 1])]);
        let s = pair(0.0, 10.0);
        assert_eq!(Stage1Solver::new(&s).enumerate_equilibrium_sets(12).unwrap(), vec![set(&[0])]);
        let s = pair(10.0, 10.0);
        assert!(Stage1Solver::new(&s).enumerate_equilibrium_sets(12).unwrap().is_empty());
        assert!(matches!(
            Stage1Solver::new(&s).enumerate_equilibrium_sets(1),
            Err(Error::TooLarge { n: 2, max: 1 })
        ));
    }

    #[test]
    fn weak_inequalities_admit_indifferent_athletes() {
        // V_2({1,2}) = 0 exactly: both {1} and {1,2} qualify.
        let s = pair(0.0, 0.375);
        let sets = Stage1Solver::new(&s).enumerate_equilibrium_sets(12).unwrap();
        assert_eq!(sets, vec![set(&[0]), set(&[0, 1])]);
    }

    #[test]
    fn iteration_examples() {
        let opts = Stage1Options::default();
        let s = pair(0.0, 0.0);
        let out = Stage1Solver::new(&s).iterate_continuation_operator(&set(&[0, 1]), &opts).unwrap();
        assert_eq!((out.set.clone(), out.rounds, out.method), (set(&[0, 1]), 1, SpeMethod::Iteration));
        assert!(out.verified);

        let s = pair(0.0, 10.0);
        let out = Stage1Solver::new(&s).iterate_continuation_operator(&set(&[0, 1]), &opts).unwrap();
        assert_eq!(out.set, set(&[0]));
        assert!(out.rounds <= 2 && out.verified);

        let s = pair(10.0, 10.0);
        let out = Stage1Solver::new(&s).iterate_continuation_operator(&set(&[0, 1]), &opts).unwrap();
        assert_eq!(out.method, SpeMethod::SingletonFallback);
        assert_eq!(out.set, set(&[0]));
        assert!(!out.verified);

        // the athlete losing less by racing alone is picked
        let s = pair(10.0, 9.0);
        let out = Stage1Solver::new(&s).iterate_continuation_operator(&set(&[0, 1]), &opts).unwrap();
        assert_eq!(out.set, set(&[1]));
    }

    #[test]
    fn spe_examples() {
        let opts = Stage1Options::default();
        let s = pair(0.0, 0.0);
        let spe = Stage1Solver::new(&s).assemble_spe(SetChoice::All, &opts).unwrap();
        assert_eq!(spe.len(), 1);
        assert_eq!(spe[0].continuation_set, set(&[0, 1]));
        assert!(spe[0].payoffs.iter().all(|p| (p - 0.375).abs() < 1e-12));
        assert!(spe[0].conditions_hold && spe[0].nash.passed);

        let s = pair(0.0, 10.0);
        let spe = Stage1Solver::new(&s).assemble_spe(SetChoice::First, &opts).unwrap();
        assert_eq!(spe[0].continuation_set, set(&[0]));
        assert_eq!(spe[0].actions, vec![Action::Continue, Action::Withdraw]);
        assert_eq!(spe[0].payoffs, vec![1.0, 10.0]);

        let s = pair(10.0, 10.0);
        for choice in [SetChoice::First, SetChoice::All, SetChoice::Iterative] {
            let spe = Stage1Solver::new(&s).assemble_spe(choice, &opts).unwrap();
            assert_eq!(spe.len(), 1);
            assert_eq!(spe[0].method, SpeMethod::SingletonFallback);
            assert!(!spe[0].conditions_hold);
        }
    }

    #[test]
    fn cache_is_transparent() {
        let s = pair(0.2, 0.3);
        let a = Stage1Solver::new(&s);
        let b = Stage1Solver::without_cache(&s);
        for choice in [SetChoice::All, SetChoice::Iterative] {
            assert_eq!(
                a.assemble_spe(choice, &Stage1Options::default()).unwrap(),
                b.assemble_spe(choice, &Stage1Options::default()).unwrap()
            );
        }
        assert!(a.cached_sets() > 0);
        assert_eq!(b.cached_sets(), 0);
    }

    #[test]
    fn set_helpers() {
        let s = pair(0.0, 0.0);
        let c = ContinuationSet::from_ids(&s, &["2", "1", "2"]).unwrap();
        assert_eq!(c, set(&[0, 1]));
        assert_eq!(c.ids(&s), vec!["1", "2"]);
        assert!(ContinuationSet::from_ids(&s, &["7"]).is_err());
        assert!(set(&[0]) < set(&[0, 1]) && set(&[0, 1]) < set(&[1]));
    }
}
