//! Hamming-ball point sets `W^n_w` with their canonical ordering.
//!
//! Points are ordered by Hamming weight, then by integer value within a weight
//! class (bit `i` of the integer is variable `x_{i+1}`). With this ordering
//! `W^n_w` is a prefix of `W^n_{w'}` whenever `w <= w'`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{domain, Result};

/// Largest variable count representable by a `u64` point.
pub const MAX_VARS: usize = 63;

fn binomials() -> &'static [[u64; 65]; 65] {
    static TABLE: OnceLock<Box<[[u64; 65]; 65]>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = Box::new([[0u64; 65]; 65]);
        for n in 0..65 {
            t[n][0] = 1;
            for k in 1..=n {
                t[n][k] = t[n - 1][k - 1].saturating_add(if k < n { t[n - 1][k] } else { 0 });
            }
        }
        t
    })
}

/// `C(n, k)`, zero when `k > n`.
#[inline]
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n || n > 64 {
        0
    } else {
        binomials()[n][k]
    }
}

/// `sum_{i <= w} C(n, i)`.
pub fn ball_size(n: usize, w: usize) -> u64 {
    (0..=w.min(n)).map(|i| binomial(n, i)).sum()
}

/// The set of `n`-bit points of weight at most `w`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WSet {
    n: usize,
    w: usize,
    /// `offsets[k]` is the rank of the first point of weight `k`; length `w + 2`.
    offsets: Vec<usize>,
}

impl WSet {
    pub fn new(n: usize, w: usize) -> Result<Self> {
        if n > MAX_VARS {
            return domain(format!(
                "{n} variables exceeds the supported maximum {MAX_VARS}"
            ));
        }
        if w > n {
            return domain(format!("weight bound {w} exceeds variable count {n}"));
        }
        let mut offsets = Vec::with_capacity(w + 2);
        let mut acc = 0usize;
        offsets.push(0);
        for k in 0..=w {
            acc += binomial(n, k) as usize;
            offsets.push(acc);
        }
        Ok(WSet { n, w, offsets })
    }

    /// Convenience constructor that clamps `w` to `n`.
    pub fn clamped(n: usize, w: usize) -> Result<Self> {
        WSet::new(n, w.min(n))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn w(&self) -> usize {
        self.w
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.offsets[self.w + 1]
    }

    /// Whether `point` belongs to the set.
    #[inline]
    pub fn contains(&self, point: u64) -> bool {
        (self.n == 64 || point >> self.n == 0) && point.count_ones() as usize <= self.w
    }

    /// Canonical index of `point`.
    pub fn rank(&self, point: u64) -> Result<usize> {
        if point >> self.n != 0 {
            return domain(format!(
                "point {point:#x} has bits beyond {} variables",
                self.n
            ));
        }
        let k = point.count_ones() as usize;
        if k > self.w {
            return domain(format!("point weight {k} exceeds bound {}", self.w));
        }
        Ok(self.rank_unchecked(point))
    }

    #[inline]
    pub(crate) fn rank_unchecked(&self, point: u64) -> usize {
        let k = point.count_ones() as usize;
        let mut r = self.offsets[k];
        let mut p = point;
        let mut i = 1;
        while p != 0 {
            let c = p.trailing_zeros() as usize;
            r += binomial(c, i) as usize;
            p &= p - 1;
            i += 1;
        }
        r
    }

    /// The point with canonical index `index`.
    pub fn unrank(&self, index: usize) -> Result<u64> {
        if index >= self.size() {
            return domain(format!(
                "index {index} out of range for |W| = {}",
                self.size()
            ));
        }
        let k = self.offsets.partition_point(|&o| o <= index) - 1;
        let mut r = (index - self.offsets[k]) as u64;
        let mut point = 0u64;
        let mut c = self.n;
        for i in (1..=k).rev() {
            // largest c' < c with C(c', i) <= r
            c -= 1;
            while binomial(c, i) > r {
                c -= 1;
            }
            point |= 1 << c;
            r -= binomial(c, i);
        }
        Ok(point)
    }

    /// All points in canonical order.
    pub fn points(&self) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.size());
        for k in 0..=self.w {
            if k == 0 {
                out.push(0);
                continue;
            }
            let last = if self.n == 64 {
                u64::MAX
            } else {
                (1u64 << self.n) - 1
            };
            let mut p: u64 = (1u64 << k) - 1;
            loop {
                out.push(p);
                if p == last & !((1u64 << (self.n - k)) - 1) {
                    break;
                }
                // Gosper's hack: next larger integer with the same popcount.
                let c = p & p.wrapping_neg();
                let r = p + c;
                p = (((r ^ p) >> 2) / c) | r;
            }
        }
        out
    }
}

/// Precomputed butterfly schedule for the subset transform restricted to a W-set.
#[derive(Debug)]
pub struct WSetPlan {
    pub wset: WSet,
    pub points: Vec<u64>,
    /// For each variable, the `(rank(p), rank(p | bit))` pairs with both ends in the set.
    pub stages: Vec<Vec<(u32, u32)>>,
}

impl WSetPlan {
    fn build(wset: WSet) -> WSetPlan {
        assert!(
            wset.size() <= u32::MAX as usize,
            "W-set too large for a butterfly plan"
        );
        let points = wset.points();
        let mut stages = Vec::with_capacity(wset.n());
        for j in 0..wset.n() {
            let bit = 1u64 << j;
            let stage: Vec<(u32, u32)> = points
                .iter()
                .enumerate()
                .filter(|(_, &p)| p & bit == 0 && (p.count_ones() as usize) < wset.w())
                .map(|(r, &p)| (r as u32, wset.rank_unchecked(p | bit) as u32))
                .collect();
            stages.push(stage);
        }
        WSetPlan {
            wset,
            points,
            stages,
        }
    }

    /// Total number of pairs across all stages.
    pub fn pair_count(&self) -> usize {
        self.stages.iter().map(Vec::len).sum()
    }
}

type PlanCache = HashMap<(usize, usize), Arc<WSetPlan>>;

/// Shared, lazily built plan for `W^n_w`.
pub fn plan(n: usize, w: usize) -> Result<Arc<WSetPlan>> {
    static CACHE: OnceLock<Mutex<PlanCache>> = OnceLock::new();
    let wset = WSet::new(n, w)?;
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(n, w)) {
        return Ok(Arc::clone(p));
    }
    let built = Arc::new(WSetPlan::build(wset));
    let mut guard = cache.lock().unwrap();
    Ok(Arc::clone(guard.entry((n, w)).or_insert(built)))
}
