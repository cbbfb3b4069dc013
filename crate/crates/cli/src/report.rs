//! Output records. Every result line carries the seed and resolved parameters
//! it was produced with.

use serde::Serialize;

use f2mq::engine::{Census, LevelPlan};
use f2mq::solver::SolveOutcome;

#[derive(Debug, Clone, Serialize)]
pub struct SolveEcho {
    pub command: &'static str,
    pub mode: &'static str,
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub lambda: f64,
    pub kappa0: f64,
    pub t: usize,
    pub r: usize,
    pub vv_c: usize,
}

impl SolveEcho {
    pub fn text(&self) -> String {
        format!(
            "# f2mq solve mode={} seed={} n={} d={} m={} lambda={} kappa0={:.6} t={} r={} vv_c={}",
            self.mode,
            self.seed,
            self.n,
            self.d,
            self.m,
            self.lambda,
            self.kappa0,
            self.t,
            self.r,
            self.vv_c
        )
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum ResultRecord {
    Parity {
        parity: u8,
    },
    Decide {
        satisfiable: bool,
    },
    Search {
        solution: Option<String>,
    },
    Exhaust {
        count: usize,
        solutions: Vec<String>,
    },
}

impl From<&SolveOutcome> for ResultRecord {
    fn from(o: &SolveOutcome) -> Self {
        match o {
            SolveOutcome::Parity(p) => ResultRecord::Parity { parity: *p as u8 },
            SolveOutcome::Decide(b) => ResultRecord::Decide { satisfiable: *b },
            SolveOutcome::Search(a) => ResultRecord::Search {
                solution: a.as_ref().map(|a| a.to_string()),
            },
            SolveOutcome::Exhaust(list) => ResultRecord::Exhaust {
                count: list.len(),
                solutions: list.iter().map(|a| a.to_string()).collect(),
            },
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveRecord {
    pub echo: SolveEcho,
    pub result: ResultRecord,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<&'static str>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyRecord {
    pub command: &'static str,
    pub n: usize,
    pub m: usize,
    pub assignment: String,
    pub solution: bool,
    /// 1-based indices of the equations that evaluate to 1.
    pub violated: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchEcho {
    pub command: &'static str,
    pub seed: u64,
    pub lambda: Option<f64>,
    pub kappa0: Option<f64>,
    pub t: Option<usize>,
    pub plan_only: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct LevelRecord {
    pub level: usize,
    pub n1: usize,
    pub n2: Option<usize>,
    pub w: usize,
    pub outer_points: usize,
    pub domain_points: usize,
    pub interpolation_points: usize,
    pub nodes: u64,
    pub brute_force_nodes: u64,
    pub trials: u64,
    pub transform_work: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct BenchRecord {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub m: usize,
    pub instance: usize,
    pub lambda: f64,
    pub kappa0: f64,
    pub t: usize,
    pub parity: u8,
    pub total_nodes: u64,
    pub total_transform_work: u64,
    pub levels: Vec<LevelRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl BenchRecord {
    pub fn levels_from(census: &Census) -> Vec<LevelRecord> {
        census
            .levels
            .iter()
            .map(|l| LevelRecord {
                level: l.level,
                n1: l.n1,
                n2: l.n2,
                w: l.w,
                outer_points: l.outer_points,
                domain_points: l.domain_points,
                interpolation_points: l.interpolation_points,
                nodes: l.nodes,
                brute_force_nodes: l.brute_force_nodes,
                trials: l.trials,
                transform_work: l.transform_work,
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanLevelRecord {
    pub level: usize,
    pub n1: usize,
    pub n2: Option<usize>,
    pub ell: Option<usize>,
    pub w: usize,
    pub log2_outer_points: f64,
    pub log2_nodes: f64,
}

impl From<&LevelPlan> for PlanLevelRecord {
    fn from(p: &LevelPlan) -> Self {
        PlanLevelRecord {
            level: p.level,
            n1: p.n1,
            n2: p.n2,
            ell: p.ell,
            w: p.w,
            log2_outer_points: p.log2_outer_points,
            log2_nodes: p.log2_nodes,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanRecord {
    pub seed: u64,
    pub n: usize,
    pub d: usize,
    pub lambda: f64,
    pub kappa0: f64,
    pub t: usize,
    pub depth: usize,
    pub levels: Vec<PlanLevelRecord>,
}

pub fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("records serialize")
}
