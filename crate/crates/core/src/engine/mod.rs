//! Parity counting: brute-force multiple parity, the recursive
//! probabilistic-polynomial engine with majority scoreboards, and the
//! top-level parity count.

mod params;
mod profile;

use rayon::prelude::*;

use crate::algebra::anf::{Domain, TruthTable};
use crate::algebra::mobius::{embeds, mixed_counted, mixed_dense, rows_transform};
use crate::algebra::{wset, AnfPoly, BitTable, WSet};
use crate::error::{domain, Result};
use crate::rng::Stream;
use crate::system::PolySystem;

pub use params::{
    default_lambda, default_trials, inner_weight, log2_ball_size, plan_schedule, top_split,
    EngineParams, LevelPlan,
};
pub use profile::{Census, LevelStats};

/// Multiple parity-counting output: bit `i` is
/// `sum_z F(W^{n-n1}_w[i], z)` over all `z in {0,1}^{n1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParityVector {
    n1: usize,
    outer: WSet,
    bits: BitTable,
}

impl ParityVector {
    pub fn new(n1: usize, outer: WSet, bits: BitTable) -> Result<Self> {
        if bits.len() != outer.size() {
            return domain(format!(
                "parity vector has {} bits, W-set has {} points",
                bits.len(),
                outer.size()
            ));
        }
        Ok(ParityVector { n1, outer, bits })
    }

    pub fn n1(&self) -> usize {
        self.n1
    }

    pub fn w(&self) -> usize {
        self.outer.w()
    }

    pub fn outer(&self) -> &WSet {
        &self.outer
    }

    pub fn bits(&self) -> &BitTable {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits.get(i)
    }

    /// Parity for outer assignment `y`, if `y` lies in the W-set.
    pub fn at(&self, y: u64) -> Option<bool> {
        self.outer
            .contains(y)
            .then(|| self.bits.get(self.outer.rank_unchecked(y)))
    }

    /// XOR of all entries.
    pub fn total(&self) -> bool {
        self.bits.count_ones() % 2 == 1
    }
}

/// Vote counters, one per scoreboard entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scoreboard {
    t: usize,
    counters: Vec<u16>,
}

impl Scoreboard {
    pub fn new(entries: usize, t: usize) -> Self {
        assert!(
            t % 2 == 1 && t <= u16::MAX as usize,
            "trial count must be odd and fit 16 bits"
        );
        Scoreboard {
            t,
            counters: vec![0; entries],
        }
    }

    pub fn len(&self) -> usize {
        self.counters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counters.is_empty()
    }

    /// Adds one trial's votes for parity 1.
    pub fn record(&mut self, votes: &BitTable) {
        debug_assert_eq!(votes.len(), self.counters.len());
        for i in votes.ones_iter() {
            self.counters[i] += 1;
        }
    }

    pub fn merge(&mut self, other: &Scoreboard) {
        for (a, b) in self.counters.iter_mut().zip(&other.counters) {
            *a += *b;
        }
    }

    pub fn counter(&self, i: usize) -> u16 {
        self.counters[i]
    }

    /// Strict majority over `t` trials.
    pub fn majority(&self, i: usize) -> bool {
        2 * self.counters[i] as usize > self.t
    }
}

/// Evaluates every equation on `W^{n-n1}_w x {0,1}^{n1}`, multiplies the
/// complements, and folds each cube row to its parity.
pub fn brute_force_mult_parity(sys: &PolySystem, n1: usize, w: usize) -> Result<ParityVector> {
    check_instance(sys, n1, w)?;
    Ok(brute_force(sys, n1, w).0)
}

fn check_instance(sys: &PolySystem, n1: usize, w: usize) -> Result<()> {
    if n1 > sys.n() {
        return domain(format!(
            "split size {n1} exceeds variable count {}",
            sys.n()
        ));
    }
    if w > sys.n() - n1 {
        return domain(format!(
            "weight bound {w} exceeds {} outer variables",
            sys.n() - n1
        ));
    }
    Ok(())
}

fn brute_force(sys: &PolySystem, n1: usize, w: usize) -> (ParityVector, u64) {
    let n = sys.n();
    let outer = WSet::new(n - n1, w).expect("checked by caller");
    let row = 1usize << n1;
    let mut work = 0;
    let bits = if embeds(n - n1, w, n1) {
        let src = wset::plan(n, sys.d()).expect("validated system");
        let mut evals = BitTable::ones(1usize << n);
        for p in sys.polys() {
            let (pe, wk) = mixed_dense(p.coeffs().ones_iter().map(|r| src.points[r]), n, n1, w);
            evals.and_not_assign(&pe);
            work += wk;
        }
        let plan = wset::plan(n - n1, w).expect("checked by caller");
        BitTable::from_bools(
            plan.points
                .iter()
                .map(|&y| evals.range_parity(y as usize * row, row)),
        )
    } else {
        let mut evals = BitTable::ones(outer.size() * row);
        for p in sys.polys() {
            let (pe, wk) = mixed_counted(p, n1, w, false).expect("checked by caller");
            evals.and_not_assign(pe.bits());
            work += wk;
        }
        BitTable::from_bools((0..outer.size()).map(|i| evals.range_parity(i * row, row)))
    };
    (ParityVector { n1, outer, bits }, work)
}

/// Randomized multiple parity counting.
///
/// Correct on every entry except with probability about `2^-n` at the
/// default `t = 48n + 1`.
pub fn mult_parity_count(
    sys: &PolySystem,
    n1: usize,
    w: usize,
    params: &EngineParams,
    stream: Stream,
) -> Result<ParityVector> {
    mult_parity_count_profiled(sys, n1, w, params, stream).map(|(v, _)| v)
}

pub fn mult_parity_count_profiled(
    sys: &PolySystem,
    n1: usize,
    w: usize,
    params: &EngineParams,
    stream: Stream,
) -> Result<(ParityVector, Census)> {
    check_instance(sys, n1, w)?;
    if params.t.is_multiple_of(2) {
        return domain("trial count must be odd");
    }
    let mut census = Census::default();
    let v = node(sys, n1, w, params, stream, 0, &mut census)?;
    Ok((v, census))
}

fn node(
    sys: &PolySystem,
    n1: usize,
    w: usize,
    params: &EngineParams,
    stream: Stream,
    level: usize,
    census: &mut Census,
) -> Result<ParityVector> {
    let n = sys.n();
    let Some(n2) = params.inner_split(n, n1) else {
        let (v, work) = brute_force(sys, n1, w);
        let stats = census.level_mut(level);
        if stats.nodes == 0 {
            stats.n1 = n1;
            stats.n2 = None;
            stats.w = w;
            stats.outer_points = v.len();
            stats.domain_points = v.len() << n1;
        }
        stats.nodes += 1;
        stats.brute_force_nodes += 1;
        stats.transform_work += work;
        return Ok(v);
    };

    let ell = n2 + 2;
    let w_inner = inner_weight(n, sys.d(), n2);
    let outer = WSet::new(n - n1, w)?;
    let cube = n1 - n2;
    let entries = outer.size() << cube;
    let inner_plan = wset::plan(n - n2, w_inner)?;

    let trial = |k: usize| -> Result<(BitTable, Census)> {
        let s = stream.child(k as u64);
        let combos = sys.random_combinations(ell, &mut s.fork("combine").rng());
        let mut sub = Census::default();
        let v1 = node(
            &combos,
            n2,
            w_inner,
            params,
            s.fork("recurse"),
            level + 1,
            &mut sub,
        )?;
        // interpolate G(y, u) from its values on W^{n-n2}_{w'}
        let mut coeffs = v1.bits;
        let mut work = rows_transform(&mut coeffs, &inner_plan, 0);
        let g = AnfPoly::from_coeffs(n - n2, w_inner, coeffs)?;
        let (evals, wk) = mixed_counted(&g, cube, w, false)?;
        work += wk;
        sub.level_mut(level).transform_work += work;
        Ok((evals.into_bits(), sub))
    };

    let (board, sub) = (0..params.t)
        .into_par_iter()
        .try_fold(
            || (Scoreboard::new(entries, params.t), Census::default()),
            |(mut board, mut acc), k| {
                let (votes, sub) = trial(k)?;
                board.record(&votes);
                acc.merge(&sub);
                Ok::<_, crate::error::Error>((board, acc))
            },
        )
        .try_reduce(
            || (Scoreboard::new(entries, params.t), Census::default()),
            |(mut a, mut ca), (b, cb)| {
                a.merge(&b);
                ca.merge(&cb);
                Ok((a, ca))
            },
        )?;

    census.merge(&sub);
    let stats = census.level_mut(level);
    stats.n1 = n1;
    stats.n2 = Some(n2);
    stats.w = w;
    stats.outer_points = outer.size();
    stats.domain_points = entries;
    stats.interpolation_points = inner_plan.wset.size();
    stats.nodes += 1;
    stats.trials += params.t as u64;

    let row = 1usize << cube;
    let bits = BitTable::from_bools(
        (0..outer.size()).map(|i| (0..row).fold(false, |acc, u| acc ^ board.majority(i * row + u))),
    );
    Ok(ParityVector { n1, outer, bits })
}

/// Parity of the number of solutions, via one multiple parity-counting call
/// with `n1 = floor(kappa0 n)` and the full outer cube.
pub fn parity_count(
    sys: &PolySystem,
    kappa0: f64,
    params: &EngineParams,
    stream: Stream,
) -> Result<bool> {
    recursion_profile(sys, kappa0, params, stream).map(|(p, _)| p)
}

/// Runs [`parity_count`] and returns its per-level work census alongside the result.
pub fn recursion_profile(
    sys: &PolySystem,
    kappa0: f64,
    params: &EngineParams,
    stream: Stream,
) -> Result<(bool, Census)> {
    let d = sys.d().max(1);
    let limit = 1.0 / (2.0 * d as f64 - 1.0);
    if !(kappa0 > 0.0 && kappa0 <= limit + 1e-12) {
        return domain(format!("kappa0 must lie in (0, {limit}], got {kappa0}"));
    }
    let n1 = top_split(sys.n(), kappa0);
    let (v, census) = mult_parity_count_profiled(sys, n1, sys.n() - n1, params, stream)?;
    Ok((v.total(), census))
}

/// The parity vector as evaluations on its W-set domain.
impl From<ParityVector> for TruthTable {
    fn from(v: ParityVector) -> TruthTable {
        let dom = Domain {
            outer: v.outer,
            cube_vars: 0,
        };
        TruthTable::new(dom, v.bits).expect("lengths agree")
    }
}
