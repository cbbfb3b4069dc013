use crate::algebra::wset::ball_size;
use crate::error::{domain, Result};

// Guards the floor against `lambda * n` landing a hair below an integer.
const FLOOR_SLACK: f64 = 1e-9;

/// Parameters of the recursive parity engine.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineParams {
    /// Per-level shrink of the inner block, as a fraction of `n`.
    pub lambda: f64,
    /// Number of probabilistic-polynomial trials per node; must be odd.
    pub t: usize,
}

impl EngineParams {
    pub fn new(lambda: f64, t: usize) -> Result<Self> {
        if !(lambda > 0.0 && lambda < 1.0) {
            return domain(format!("lambda must lie in (0, 1), got {lambda}"));
        }
        if t.is_multiple_of(2) || t > u16::MAX as usize {
            return domain(format!(
                "trial count must be odd and at most {}, got {t}",
                u16::MAX
            ));
        }
        Ok(EngineParams { lambda, t })
    }

    /// Desk-scale defaults for an `n`-variable system: `t = 48n + 1` and
    /// `lambda = max(1/floor(n/2), 0.05)`.
    pub fn for_vars(n: usize) -> Self {
        EngineParams {
            lambda: default_lambda(n),
            t: default_trials(n),
        }
    }

    /// Inner block size `n2 = floor(n1 - lambda n)` for a node with `n1` inner
    /// variables, forced below `n1` when `lambda n < 1`. `None` means the node
    /// is solved by brute force.
    pub fn inner_split(&self, n: usize, n1: usize) -> Option<usize> {
        let raw = (n1 as f64 - self.lambda * n as f64 + FLOOR_SLACK).floor() as i64;
        let n2 = raw.min(n1 as i64 - 1);
        (n2 > 0).then_some(n2 as usize)
    }
}

pub fn default_trials(n: usize) -> usize {
    48 * n + 1
}

pub fn default_lambda(n: usize) -> f64 {
    let half = n / 2;
    if half == 0 {
        0.5
    } else {
        (1.0 / half as f64).clamp(0.05, 0.5)
    }
}

/// `floor(kappa0 * n)`.
pub fn top_split(n: usize, kappa0: f64) -> usize {
    ((kappa0 * n as f64 + FLOOR_SLACK).floor() as usize).min(n)
}

/// Weight bound of the recursive instance: `d * ell - n2` clamped to `n - n2`.
pub fn inner_weight(n: usize, d: usize, n2: usize) -> usize {
    let ell = n2 + 2;
    (d * ell).saturating_sub(n2).min(n - n2)
}

/// One level of the recursion schedule.
#[derive(Debug, Clone, PartialEq)]
pub struct LevelPlan {
    pub level: usize,
    pub n1: usize,
    /// `None` at the brute-force level.
    pub n2: Option<usize>,
    pub ell: Option<usize>,
    pub w: usize,
    /// `log2 |W^{n - n1}_w|`.
    pub log2_outer_points: f64,
    /// `log2` of the number of nodes at this level, `level * log2 t`.
    pub log2_nodes: f64,
}

/// Level schedule of `ParityCount` without executing anything.
pub fn plan_schedule(n: usize, d: usize, kappa0: f64, params: &EngineParams) -> Vec<LevelPlan> {
    let mut out = Vec::new();
    let mut n1 = top_split(n, kappa0);
    let mut w = n - n1;
    let mut level = 0;
    loop {
        let n2 = params.inner_split(n, n1);
        out.push(LevelPlan {
            level,
            n1,
            n2,
            ell: n2.map(|v| v + 2),
            w,
            log2_outer_points: log2_ball_size(n - n1, w),
            log2_nodes: level as f64 * (params.t as f64).log2(),
        });
        let Some(n2) = n2 else { break };
        w = inner_weight(n, d, n2);
        n1 = n2;
        level += 1;
    }
    out
}

/// `log2 sum_{i <= w} C(n, i)`, exact for small `n` and in floating point beyond.
pub fn log2_ball_size(n: usize, w: usize) -> f64 {
    if n <= 62 {
        return (ball_size(n, w) as f64).log2();
    }
    let w = w.min(n);
    let mut log_terms = Vec::with_capacity(w + 1);
    let mut log_c = 0.0f64;
    log_terms.push(0.0);
    for i in 1..=w {
        log_c += ((n - i + 1) as f64).log2() - (i as f64).log2();
        log_terms.push(log_c);
    }
    let max = log_terms.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    max + log_terms
        .iter()
        .map(|l| (l - max).exp2())
        .sum::<f64>()
        .log2()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trial_count_must_be_odd() {
        assert!(EngineParams::new(0.1, 4).is_err());
        assert!(EngineParams::new(0.0, 5).is_err());
        assert!(EngineParams::new(0.1, 5).is_ok());
        assert_eq!(EngineParams::for_vars(10).t, 481);
    }

    #[test]
    fn progress_is_forced() {
        let p = EngineParams::new(0.01, 3).unwrap();
        // lambda n < 1 would stall; the split drops by one instead
        assert_eq!(p.inner_split(10, 4), Some(3));
        assert_eq!(p.inner_split(10, 1), None);
    }

    #[test]
    fn schedule_hand_computed() {
        // n = 40, kappa0 = 0.3, lambda = 0.1: n1 = 12, then 8, 4, and 0 triggers brute force
        let p = EngineParams::new(0.1, 48 * 40 + 1).unwrap();
        let s = plan_schedule(40, 2, 0.3, &p);
        let splits: Vec<_> = s.iter().map(|l| (l.n1, l.n2, l.w)).collect();
        assert_eq!(
            splits,
            vec![(12, Some(8), 28), (8, Some(4), 12), (4, None, 8)]
        );
        // depth is at most kappa0 / lambda - 1
        assert!(s.len() - 1 <= 2);
    }

    #[test]
    fn float_ball_size_matches_exact() {
        let exact = (ball_size(60, 20) as f64).log2();
        let mut approx = 0.0;
        let mut c = 0.0f64;
        let mut terms = vec![0.0];
        for i in 1..=20 {
            c += ((60 - i + 1) as f64).log2() - (i as f64).log2();
            terms.push(c);
        }
        let m = terms.iter().cloned().fold(f64::MIN, f64::max);
        approx += m + terms.iter().map(|l| (l - m).exp2()).sum::<f64>().log2();
        assert!((exact - approx).abs() < 1e-9);
        assert!(log2_ball_size(100, 100) - 100.0 < 1e-9);
    }
}
