//! Decision, search and exhaustive enumeration built on parity counting.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::algebra::tau;
use crate::engine::{self, default_lambda, default_trials, EngineParams, ParityVector};
use crate::error::{domain, Error, Result};
use crate::oracle::Oracle;
use crate::rng::Stream;
use crate::system::{sample_invertible, Assignment, F2Matrix, PolySystem, Preprocessed};

/// User-facing knobs. `None` fields take their size-dependent defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct SolverParams {
    /// Top-level inner fraction; defaults to `1 - tau(d)`.
    pub kappa0: Option<f64>,
    /// Defaults to `max(1/floor(n/2), 0.05)`.
    pub lambda: Option<f64>,
    /// Odd trial count; defaults to `48n + 1`.
    pub t: Option<usize>,
    /// Isolation trials per hash size are `vv_c * n`.
    pub vv_c: usize,
    /// Change-of-variables iterations in enumeration; defaults to `2n`.
    pub r: Option<usize>,
    /// Sample budget for solution-count estimation.
    pub budget: Option<u64>,
    /// Fresh-randomness restarts of search after a failed verification.
    pub retries: usize,
}

impl Default for SolverParams {
    fn default() -> Self {
        SolverParams {
            kappa0: None,
            lambda: None,
            t: None,
            vv_c: 4,
            r: None,
            budget: None,
            retries: 3,
        }
    }
}

impl SolverParams {
    pub fn engine(&self, n: usize) -> Result<EngineParams> {
        EngineParams::new(
            self.lambda.unwrap_or_else(|| default_lambda(n)),
            self.t.unwrap_or_else(|| default_trials(n)),
        )
    }

    pub fn kappa0(&self, d: usize) -> Result<f64> {
        match self.kappa0 {
            Some(k) => Ok(k),
            None => Ok(1.0 - tau(d.max(2))?),
        }
    }

    pub fn iterations(&self, n: usize) -> usize {
        self.r.unwrap_or(2 * n)
    }
}

/// Result of one solver call.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Parity(bool),
    Decide(bool),
    Search(Option<Assignment>),
    Exhaust(Vec<Assignment>),
}

impl SolveOutcome {
    pub fn mode(&self) -> &'static str {
        match self {
            SolveOutcome::Parity(_) => "parity",
            SolveOutcome::Decide(_) => "decide",
            SolveOutcome::Search(_) => "search",
            SolveOutcome::Exhaust(_) => "exhaust",
        }
    }
}

impl fmt::Display for SolveOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SolveOutcome::Parity(p) => write!(f, "{}", *p as u8),
            SolveOutcome::Decide(true) => f.write_str("satisfiable"),
            SolveOutcome::Decide(false) | SolveOutcome::Search(None) => {
                f.write_str("unsatisfiable")
            }
            SolveOutcome::Search(Some(a)) => write!(f, "{a}"),
            SolveOutcome::Exhaust(list) => {
                write!(f, "{} solution(s)", list.len())?;
                for a in list {
                    write!(f, "\n{a}")?;
                }
                Ok(())
            }
        }
    }
}

/// Outcome of sampling for the solution count.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CountEstimate {
    Estimate(f64),
    BelowThreshold,
}

/// Parameters of one enumeration run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IsolationPlan {
    pub r: usize,
    pub n1: usize,
    pub estimate: Option<f64>,
}

impl IsolationPlan {
    /// `n1 = floor((1 - tau) n)` below the threshold, else `floor(n - log2 K - 2)`.
    pub fn from_estimate(n: usize, d: usize, r: usize, est: CountEstimate) -> Result<Self> {
        let n1 = match est {
            CountEstimate::BelowThreshold => {
                ((1.0 - tau(d.max(2))?) * n as f64 + 1e-9).floor() as usize
            }
            CountEstimate::Estimate(k) => {
                let raw = (n as f64 - k.log2() - 2.0 + 1e-9).floor();
                raw.clamp(0.0, n as f64) as usize
            }
        };
        Ok(IsolationPlan {
            r,
            n1: n1.min(n),
            estimate: match est {
                CountEstimate::Estimate(k) => Some(k),
                CountEstimate::BelowThreshold => None,
            },
        })
    }
}

/// Outcome of preprocessing shared by every mode.
enum Reduced {
    Unsat,
    Trivial(usize),
    Linear(PolySystem),
    General(PolySystem),
}

fn reduce(sys: &PolySystem) -> Reduced {
    match sys.preprocess() {
        Preprocessed::Inconsistent => Reduced::Unsat,
        Preprocessed::System(s) if s.m() == 0 => Reduced::Trivial(s.n()),
        Preprocessed::System(s) if s.max_degree() <= 1 => Reduced::Linear(s),
        Preprocessed::System(s) => Reduced::General(s),
    }
}

/// Parity of the solution count.
pub fn parity(sys: &PolySystem, params: &SolverParams, stream: Stream) -> Result<bool> {
    match reduce(sys) {
        Reduced::Unsat => Ok(false),
        Reduced::Trivial(n) => Ok(n == 0),
        Reduced::Linear(s) => Ok(s.solve_linear()?.is_some_and(|a| a.basis.is_empty())),
        Reduced::General(s) => {
            let kappa0 = params.kappa0(s.d())?;
            engine::parity_count(&s, kappa0, &params.engine(s.n())?, stream)
        }
    }
}

/// Satisfiability by random affine hashing. A `true` answer is wrong only
/// if parity counting erred; `false` is wrong only if no trial isolated an
/// odd number of solutions.
pub fn decide(sys: &PolySystem, params: &SolverParams, stream: Stream) -> Result<bool> {
    let s = match reduce(sys) {
        Reduced::Unsat => return Ok(false),
        Reduced::Trivial(_) => return Ok(true),
        Reduced::Linear(s) => return Ok(s.solve_linear()?.is_some()),
        Reduced::General(s) => s,
    };
    let n = s.n();
    let kappa0 = params.kappa0(s.d())?;
    let engine = params.engine(n)?;
    let trials = (params.vv_c * n).max(1);
    for k in 0..=n {
        for j in 0..trials {
            let st = stream.child(k as u64).child(j as u64);
            let hashed = s.add_affine_equations(k, &mut st.fork("hash").rng());
            if engine::parity_count(&hashed, kappa0, &engine, st.fork("count"))? {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// One solution, fixing variables one at a time with [`decide`].
pub fn search(
    sys: &PolySystem,
    params: &SolverParams,
    stream: Stream,
) -> Result<Option<Assignment>> {
    let n = sys.n();
    match reduce(sys) {
        Reduced::Unsat => return Ok(None),
        Reduced::Trivial(_) => return Ok(Some(Assignment::new(n, 0)?)),
        Reduced::Linear(s) => {
            return s
                .solve_linear()?
                .map(|a| Assignment::new(n, a.particular))
                .transpose();
        }
        Reduced::General(_) => {}
    }
    if !decide(sys, params, stream.fork("root"))? {
        return Ok(None);
    }
    for attempt in 0..=params.retries {
        let st = stream.child(attempt as u64);
        let mut cur = sys.clone();
        let mut bits = 0u64;
        for i in 0..n {
            let zero = cur.restrict(0, false)?;
            if decide(&zero, params, st.child(i as u64))? {
                cur = zero;
            } else {
                bits |= 1 << i;
                cur = cur.restrict(0, true)?;
            }
        }
        if sys.is_solution(bits) {
            return Ok(Some(Assignment::new(n, bits)?));
        }
    }
    Err(Error::InternalRetryExhausted(params.retries + 1))
}

/// Inner suffix of the isolated solution with outer part `y`, read off the
/// parities with each inner variable fixed to zero.
pub fn recover_bits(fixed: &[ParityVector], y: u64) -> Option<u64> {
    let mut z = 0u64;
    for (i, v) in fixed.iter().enumerate() {
        if !v.at(y)? {
            z |= 1 << i;
        }
    }
    Some(z)
}

/// Samples uniform points until `max(32, 4n)` hits or the budget runs out.
pub fn estimate_solution_count(
    sys: &PolySystem,
    budget: Option<u64>,
    stream: Stream,
) -> Result<CountEstimate> {
    use rand::Rng;
    let n = sys.n();
    if n > 62 {
        return domain("estimation supports at most 62 variables");
    }
    let tau_d = tau(sys.d().max(2))?;
    let target = (4 * n as u64).max(32);
    let budget = budget.unwrap_or_else(|| default_budget(n, tau_d, target));
    let mut rng = stream.rng();
    let mask = if n == 0 { 0 } else { u64::MAX >> (64 - n) };
    let (mut hits, mut samples) = (0u64, 0u64);
    while hits < target && samples < budget {
        samples += 1;
        if sys.is_solution(rng.random::<u64>() & mask) {
            hits += 1;
        }
    }
    if hits == 0 {
        return Ok(CountEstimate::BelowThreshold);
    }
    let k = hits as f64 / samples as f64 * (n as f64).exp2();
    if hits < target || k <= (tau_d * n as f64 - 2.0).exp2() {
        Ok(CountEstimate::BelowThreshold)
    } else {
        Ok(CountEstimate::Estimate(k))
    }
}

// Enough samples to expect twice the hit target right at the threshold.
fn default_budget(n: usize, tau_d: f64, target: u64) -> u64 {
    let at_threshold = ((1.0 - tau_d) * n as f64 + 3.0).exp2();
    (target as f64 * at_threshold).min(1e15) as u64
}

/// Picks the partition for [`exhaust`].
pub fn isolation_plan(
    sys: &PolySystem,
    params: &SolverParams,
    stream: Stream,
) -> Result<IsolationPlan> {
    let est = estimate_solution_count(sys, params.budget, stream)?;
    IsolationPlan::from_estimate(sys.n(), sys.d(), params.iterations(sys.n()), est)
}

/// Every solution, with high probability. Each returned assignment is
/// checked against the system, so the output never contains a non-solution.
pub fn exhaust(sys: &PolySystem, params: &SolverParams, stream: Stream) -> Result<Vec<Assignment>> {
    let n = sys.n();
    let s = match reduce(sys) {
        Reduced::Unsat => return Ok(Vec::new()),
        Reduced::Trivial(_) => return (0u64..1 << n).map(|x| Assignment::new(n, x)).collect(),
        Reduced::Linear(s) => {
            let Some(space) = s.solve_linear()? else {
                return Ok(Vec::new());
            };
            let set: BTreeSet<u64> = space.points().collect();
            return set.into_iter().map(|x| Assignment::new(n, x)).collect();
        }
        Reduced::General(s) => s,
    };
    let plan = isolation_plan(&s, params, stream.fork("estimate"))?;
    let found = exhaust_with_plan(&s, params, &plan, stream)?;
    found.into_iter().map(|x| Assignment::new(n, x)).collect()
}

/// Enumeration with an explicit partition; returns solution encodings.
pub fn exhaust_with_plan(
    sys: &PolySystem,
    params: &SolverParams,
    plan: &IsolationPlan,
    stream: Stream,
) -> Result<BTreeSet<u64>> {
    let n = sys.n();
    let n1 = plan.n1;
    if n1 > n {
        return domain(format!("split size {n1} exceeds variable count {n}"));
    }
    let outer_n = n - n1;
    let base_engine = params.engine(n)?;
    let fixed_engine = params.engine(n.saturating_sub(1))?;
    let mut found = BTreeSet::new();
    for k in 0..plan.r {
        let st = stream.child(k as u64);
        let (b, _) = sample_invertible(n, &mut st.fork("basis").rng());
        let e = sys.change_variables(&b)?;
        let base = engine::mult_parity_count(&e, n1, outer_n, &base_engine, st.fork("base"))?;
        let mut fixed = Vec::with_capacity(n1);
        for i in 0..n1 {
            let sub = e.restrict(outer_n + i, false)?;
            let v = engine::mult_parity_count(
                &sub,
                n1 - 1,
                outer_n,
                &fixed_engine,
                st.child(i as u64),
            )?;
            fixed.push(v);
        }
        for (r, y) in base.outer().points().into_iter().enumerate() {
            if !base.get(r) {
                continue;
            }
            let z = recover_bits(&fixed, y).expect("same outer set");
            let x = b.apply(y | (z << outer_n));
            if sys.is_solution(x) {
                found.insert(x);
            }
        }
    }
    Ok(found)
}

/// For each solution `x`, whether `B^{-1} x` is the only solution of the
/// transformed system with its outer part.
pub fn isolation_check(
    sys: &PolySystem,
    b: &F2Matrix,
    n1: usize,
    oracle: &Oracle,
) -> Result<Vec<(Assignment, bool)>> {
    let n = sys.n();
    if n1 > n {
        return domain(format!("split size {n1} exceeds variable count {n}"));
    }
    let b_inv = b.inverse()?;
    let sols = oracle.solutions(sys)?;
    let outer_mask = (1u64 << (n - n1)) - 1;
    let mut per_prefix: HashMap<u64, usize> = HashMap::new();
    for a in &sols {
        *per_prefix
            .entry(b_inv.apply(a.bits()) & outer_mask)
            .or_default() += 1;
    }
    Ok(sols
        .into_iter()
        .map(|a| {
            let y = b_inv.apply(a.bits()) & outer_mask;
            let alone = per_prefix[&y] == 1;
            (a, alone)
        })
        .collect())
}

/// Dispatches on a mode name.
pub fn solve(
    mode: &str,
    sys: &PolySystem,
    params: &SolverParams,
    stream: Stream,
) -> Result<SolveOutcome> {
    Ok(match mode {
        "parity" => SolveOutcome::Parity(parity(sys, params, stream)?),
        "decide" => SolveOutcome::Decide(decide(sys, params, stream)?),
        "search" => SolveOutcome::Search(search(sys, params, stream)?),
        "exhaust" => SolveOutcome::Exhaust(exhaust(sys, params, stream)?),
        other => return domain(format!("unknown mode {other:?}")),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::AnfPoly;
    use crate::system::generate::{plant, random_system};

    fn sys(n: usize, polys: &[&[u64]]) -> PolySystem {
        let ps = polys
            .iter()
            .map(|m| AnfPoly::from_monomials(n, 2, m.iter().copied()).unwrap())
            .collect();
        PolySystem::new(n, 2, ps).unwrap()
    }

    fn fast() -> SolverParams {
        SolverParams {
            t: Some(49),
            ..Default::default()
        }
    }

    #[test]
    fn contradiction_everywhere() {
        let s = sys(3, &[&[0b001], &[0b001, 0]]);
        assert!(!decide(&s, &fast(), Stream::new(0)).unwrap());
        assert_eq!(search(&s, &fast(), Stream::new(0)).unwrap(), None);
        assert!(exhaust(&s, &fast(), Stream::new(0)).unwrap().is_empty());
    }

    #[test]
    fn forced_bits() {
        // {x1, x2 + 1, x1*x3 + x2*x3}
        let s = sys(3, &[&[0b001], &[0b010, 0], &[0b101, 0b110]]);
        let a = search(&s, &fast(), Stream::new(1)).unwrap().unwrap();
        assert_eq!(a.to_string(), "010");
    }

    #[test]
    fn two_point_enumeration() {
        let s = sys(2, &[&[0b01, 0b10]]);
        let got: Vec<String> = exhaust(&s, &fast(), Stream::new(2))
            .unwrap()
            .iter()
            .map(|a| a.to_string())
            .collect();
        assert_eq!(got, ["00", "11"]);
    }

    #[test]
    fn recover_extremes() {
        let outer = crate::algebra::WSet::new(2, 2).unwrap();
        let ones = ParityVector::new(1, outer.clone(), crate::algebra::BitTable::ones(4)).unwrap();
        let zeros = ParityVector::new(1, outer, crate::algebra::BitTable::zeros(4)).unwrap();
        assert_eq!(recover_bits(&[ones.clone(), ones.clone()], 3), Some(0));
        assert_eq!(recover_bits(&[zeros.clone(), zeros], 3), Some(0b11));
        assert_eq!(recover_bits(&[ones], 4), None);
    }

    #[test]
    fn estimate_edges() {
        let all = PolySystem::empty(10, 2).unwrap();
        match estimate_solution_count(&all, None, Stream::new(3)).unwrap() {
            CountEstimate::Estimate(k) => assert!((512.0..=2048.0).contains(&k)),
            other => panic!("{other:?}"),
        }
        let none = sys(4, &[&[0]]);
        assert_eq!(
            estimate_solution_count(&none, Some(1000), Stream::new(3)).unwrap(),
            CountEstimate::BelowThreshold
        );
    }

    #[test]
    fn isolation_edges() {
        let mut rng = Stream::new(4).rng();
        let s = plant(&random_system(6, 2, 10, &mut rng), 0b101101);
        let (b, _) = sample_invertible(6, &mut rng);
        let flags = isolation_check(&s, &b, 0, &Oracle::default()).unwrap();
        assert!(flags.iter().all(|(_, iso)| *iso));
    }

    #[test]
    fn small_random_agree_with_oracle() {
        let mut rng = Stream::new(5).rng();
        let oracle = Oracle::default();
        for seed in 0..6 {
            let s = random_system(7, 2, 7, &mut rng);
            let want = oracle.solutions(&s).unwrap();
            let st = Stream::new(seed);
            assert_eq!(decide(&s, &fast(), st).unwrap(), !want.is_empty());
            assert_eq!(exhaust(&s, &fast(), st).unwrap(), want);
            if let Some(a) = search(&s, &fast(), st).unwrap() {
                assert!(s.is_solution(a.bits()));
            } else {
                assert!(want.is_empty());
            }
        }
    }
}
