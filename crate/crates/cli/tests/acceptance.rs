//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any
//! failure. Independent reference computations live in this file.

use std::collections::BTreeSet;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::Rng;

use f2mq::algebra::*;
use f2mq::engine::{brute_force_mult_parity, mult_parity_count_profiled, EngineParams, Scoreboard};
use f2mq::oracle::{oracle_mult_parity, Oracle};
use f2mq::solver::{self, CountEstimate, SolverParams};
use f2mq::system::generate::{affine_subspace_system, plant, random_poly, random_system};
use f2mq::system::sample_invertible;
use f2mq::{PolySystem, Stream};

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(pass: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        pass,
        detail: detail.into(),
    }
}

fn main() -> ExitCode {
    type Check = fn() -> Verdict;
    let criteria: [(&str, Check, Duration); 10] = [
        ("tau numerics", c1_tau, Duration::from_secs(1)),
        ("Mobius suite", c2_mobius, Duration::from_secs(30)),
        (
            "base-case oracle equivalence",
            c3_base,
            Duration::from_secs(120),
        ),
        (
            "recursive-engine oracle equivalence",
            c4_recursive,
            Duration::from_secs(600),
        ),
        (
            "probabilistic-polynomial statistics",
            c5_probabilistic,
            Duration::from_secs(60),
        ),
        (
            "majority amplification",
            c6_majority,
            Duration::from_secs(60),
        ),
        ("end-to-end solver", c7_solver, Duration::from_secs(600)),
        ("isolation bound", c8_isolation, Duration::from_secs(60)),
        (
            "solution-count estimation",
            c9_estimate,
            Duration::from_secs(60),
        ),
        ("determinism", c10_determinism, Duration::MAX),
    ];
    let only: Vec<usize> = std::env::args()
        .skip(1)
        .filter_map(|a| a.parse().ok())
        .collect();
    let mut failed = 0;
    for (i, (name, check, budget)) in criteria.iter().enumerate() {
        let id = i + 1;
        if !only.is_empty() && !only.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let v = check();
        let took = start.elapsed();
        let in_time = took <= *budget;
        let pass = v.pass && in_time;
        if !pass {
            failed += 1;
        }
        let budget_note = if *budget == Duration::MAX {
            String::new()
        } else {
            format!(" / budget {:.0}s", budget.as_secs_f64())
        };
        println!(
            "{} criterion {id:>2} {name}: {} [{:.2}s{budget_note}]",
            if pass { "PASS" } else { "FAIL" },
            v.detail,
            took.as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

fn sigma(p: f64, trials: f64) -> f64 {
    (p * (1.0 - p) / trials).sqrt()
}

// Reference evaluation: XOR of the monomials contained in x.
fn ref_eval(monomials: &[u64], x: u64) -> bool {
    monomials.iter().filter(|&&u| x & u == u).count() % 2 == 1
}

// Positive root of x^d = x + 1 by bisection.
fn ref_tau(d: usize) -> f64 {
    let (mut lo, mut hi) = (1.0f64, 2.0f64);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid.powi(d as i32) - mid - 1.0 > 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (d as f64 - 1.0) * lo.log2()
}

fn c1_tau() -> Verdict {
    let t2 = tau(2).unwrap();
    let t3 = tau(3).unwrap();
    let t4 = tau(4).unwrap();
    let mut ok =
        t2 > 0.6942 && t2 < 0.6943 && (t3 - 0.8114).abs() <= 1e-4 && (t4 - 0.8633).abs() <= 1e-4;
    let mut bracket = true;
    let mut agree = 0.0f64;
    for d in 2..=16 {
        let t = tau(d).unwrap();
        let df = d as f64;
        bracket &= 1.0 - 1.0 / (2.0 * df - 1.0) <= t && t < 1.0 - 1.0 / (2.0 * df);
        agree = agree
            .max((t - ref_tau(d)).abs())
            .max((t - tau_by_maximization(d).unwrap()).abs());
    }
    ok &= bracket && agree < 1e-6;
    verdict(
        ok,
        format!("tau(2)={t2:.6} tau(3)={t3:.6} tau(4)={t4:.6}; bracket d=2..16 {bracket}; max route gap {agree:.1e}"),
    )
}

fn random_bits(len: usize, rng: &mut impl Rng) -> BitTable {
    BitTable::from_bools((0..len).map(|_| rng.random::<bool>()))
}

fn c2_mobius() -> Verdict {
    let mut rng = Stream::new(2).rng();
    let mut failures = Vec::new();
    // involution on the full cube
    for n in 0..=14 {
        for _ in 0..4 {
            let tt =
                TruthTable::new(Domain::full(n).unwrap(), random_bits(1 << n, &mut rng)).unwrap();
            let anf = mobius_full(&tt).unwrap();
            let twice = mobius_full(&evaluate_full(&anf)).unwrap();
            if evaluate_full(&anf).bits() != tt.bits() || twice != anf {
                failures.push(format!("involution n={n}"));
            }
        }
    }
    // each coefficient is the sum of f over the submasks of its monomial
    for n in 0..=12 {
        let tt = TruthTable::new(Domain::full(n).unwrap(), random_bits(1 << n, &mut rng)).unwrap();
        let anf = mobius_full(&tt).unwrap();
        for u in 0u64..1 << n {
            let mut s = u;
            let mut acc = false;
            loop {
                acc ^= tt.get(s as usize);
                if s == 0 {
                    break;
                }
                s = (s - 1) & u;
            }
            if anf.coeff(u) != acc {
                failures.push(format!("subset sum n={n} u={u:#x}"));
                break;
            }
        }
    }
    // degree-d round trip through W^n_d
    for n in 1..=12 {
        for d in 0..=4.min(n) {
            let p = random_poly(n, d, &mut rng);
            let monos = p.monomials();
            let ws = WSet::new(n, d).unwrap();
            let evals = BitTable::from_bools(ws.points().iter().map(|&x| ref_eval(&monos, x)));
            let back =
                mobius_truncated(&TruthTable::new(Domain::ball(n, d).unwrap(), evals).unwrap())
                    .unwrap();
            if back != p {
                failures.push(format!("round trip n={n} d={d}"));
            }
        }
    }
    // mixed product domain against pointwise evaluation
    for n in 1..=12 {
        for d in [1, 2, 3] {
            let d = d.min(n);
            let p = random_poly(n, d, &mut rng);
            let monos = p.monomials();
            for n1 in 0..=n {
                for d1 in d.min(n - n1)..=(n - n1).min(d + 2) {
                    let tt = mobius_mixed(&p, n1, d1).unwrap();
                    let dom = tt.domain().clone();
                    if (0..tt.len()).any(|i| tt.get(i) != ref_eval(&monos, dom.point(i))) {
                        failures.push(format!("mixed n={n} d={d} n1={n1} d1={d1}"));
                    }
                }
            }
        }
    }
    verdict(
        failures.is_empty(),
        if failures.is_empty() {
            "involution n<=14, subset sums n<=12, W-set round trip n<=12 d<=4, mixed pointwise n<=12: all exact".into()
        } else {
            format!("{} mismatches, first: {}", failures.len(), failures[0])
        },
    )
}

fn c3_base() -> Verdict {
    let mut rng = Stream::new(3).rng();
    let mut configs = 0;
    let mut failures = 0;
    let mut runs = 0;
    for n in [4usize, 7, 10, 12, 14] {
        for d in [2usize, 3] {
            let mut splits = BTreeSet::new();
            for n1 in [0, 1, n / 3, n / 2, n] {
                for w in [0, d.min(n - n1), (n - n1) / 2, n - n1] {
                    splits.insert((n1, w));
                }
            }
            for &(n1, w) in &splits {
                configs += 1;
                for _ in 0..200 {
                    let m = rng.random_range(1..=n + 2);
                    let sys = random_system(n, d, m, &mut rng);
                    runs += 1;
                    if brute_force_mult_parity(&sys, n1, w).unwrap()
                        != oracle_mult_parity(&sys, n1, w).unwrap()
                    {
                        failures += 1;
                    }
                }
            }
        }
    }
    verdict(
        failures == 0,
        format!("{configs} (n,d,n1,w) configurations x 200 instances, n<=14, d in {{2,3}}: {failures}/{runs} mismatches"),
    )
}

fn c4_recursive() -> Verdict {
    let mut details = Vec::new();
    let mut ok = true;
    // (n, n1, lambda n = 2): one recursive level above brute force
    for (n, n1) in [(8usize, 3usize), (10, 4), (12, 4)] {
        let params = EngineParams::new(2.0 / n as f64, 48 * n + 1).unwrap();
        let mut rng = Stream::new(40 + n as u64).rng();
        let mut matches = 0;
        let mut depth_ok = true;
        for seed in 0..100u64 {
            let sys = random_system(n, 2, n, &mut rng);
            let (got, census) =
                mult_parity_count_profiled(&sys, n1, n - n1, &params, Stream::new(seed)).unwrap();
            depth_ok &= census.depth() >= 2 && census.levels[1].nodes == params.t as u64;
            if got == oracle_mult_parity(&sys, n1, n - n1).unwrap() {
                matches += 1;
            }
        }
        ok &= matches >= 99 && depth_ok;
        details.push(format!("n={n}: {matches}/100"));
    }
    verdict(
        ok,
        format!("t=48n+1, one recursive level: {}", details.join(", ")),
    )
}

fn c5_probabilistic() -> Verdict {
    let n = 8;
    let mut rng = Stream::new(5).rng();
    let base = random_system(n, 2, 6, &mut rng);
    let sys = plant(&base, 0b1011_0010);
    let solution = 0b1011_0010u64;
    let non_solution = (0u64..1 << n).find(|&x| !sys.is_solution(x)).unwrap();
    const SEEDS: u64 = 10_000;
    let mut ok = true;
    let mut details = Vec::new();
    for ell in [2usize, 4, 6] {
        let mut zeros = 0u64;
        let mut sol_ones = 0u64;
        for seed in 0..SEEDS {
            let r = sys.random_combinations(ell, &mut Stream::new(seed).child(ell as u64).rng());
            // F~(x) = prod_i (1 + R_i(x)) is 1 exactly when every R_i vanishes
            if !r.is_solution(non_solution) {
                zeros += 1;
            }
            if r.is_solution(solution) {
                sol_ones += 1;
            }
        }
        let p = 1.0 - (-(ell as f64)).exp2();
        let freq = zeros as f64 / SEEDS as f64;
        let bound = p - 3.0 * sigma(p, SEEDS as f64);
        ok &= freq >= bound && sol_ones == SEEDS;
        details.push(format!("l={ell}: {freq:.4} >= {bound:.4}"));
    }
    verdict(ok, format!("{}; solutions always 1", details.join(", ")))
}

fn c6_majority() -> Verdict {
    const ENTRIES: usize = 100_000;
    let mut ok = true;
    let mut details = Vec::new();
    for t in [25usize, 49, 97] {
        let mut rng = Stream::new(6).child(t as u64).rng();
        let truth = random_bits(ENTRIES, &mut rng);
        let mut board = Scoreboard::new(ENTRIES, t);
        for _ in 0..t {
            // a vote is wrong exactly when a uniform draw from {0,1,2,3} is 0
            let votes = BitTable::from_bools(
                (0..ENTRIES).map(|i| truth.get(i) ^ (rng.random_range(0..4u8) == 0)),
            );
            board.record(&votes);
        }
        let wrong = (0..ENTRIES)
            .filter(|&i| board.majority(i) != truth.get(i))
            .count();
        let q = (-(t as f64) / 24.0).exp();
        let freq = wrong as f64 / ENTRIES as f64;
        let bound = q + 3.0 * sigma(q, ENTRIES as f64);
        ok &= freq <= bound;
        details.push(format!("t={t}: {freq:.5} <= {bound:.5}"));
    }
    verdict(ok, details.join(", "))
}

fn instance(kind: usize, n: usize, d: usize, rng: &mut impl Rng) -> PolySystem {
    match kind {
        0 => random_system(n, d, 2 * n, rng),
        1 => random_system(n, d, n, rng),
        2 => affine_subspace_system(n, d, 0, rng),
        3 => affine_subspace_system(n, d, 2, rng),
        _ => affine_subspace_system(n, d, n - 3, rng),
    }
}

fn c7_solver() -> Verdict {
    let oracle = Oracle::default();
    let params = SolverParams::default();
    let mut ok = true;
    let mut unsound = 0;
    let mut details = Vec::new();
    let mut kinds_seen = [0usize; 3];
    for n in [8usize, 10] {
        for d in [2usize, 3] {
            let mut rng = Stream::new(70).child(n as u64).child(d as u64).rng();
            let mut agree = 0;
            for i in 0..100usize {
                let sys = instance(i % 5, n, d, &mut rng);
                let want = oracle.solutions(&sys).unwrap();
                match want.len() {
                    0 => kinds_seen[0] += 1,
                    1 => kinds_seen[1] += 1,
                    _ => kinds_seen[2] += 1,
                }
                let st = Stream::new(i as u64);
                let dec = solver::decide(&sys, &params, st.fork("decide")).unwrap();
                let found = solver::search(&sys, &params, st.fork("search"));
                let all = solver::exhaust(&sys, &params, st.fork("exhaust")).unwrap();
                unsound += all.iter().filter(|a| !sys.is_solution(a.bits())).count();
                let search_ok = match found {
                    Ok(Some(a)) => sys.is_solution(a.bits()),
                    Ok(None) => want.is_empty(),
                    Err(_) => false,
                };
                if dec == !want.is_empty() && search_ok && all == want {
                    agree += 1;
                }
            }
            ok &= agree >= 99;
            details.push(format!("n={n} d={d}: {agree}/100"));
        }
    }
    ok &= unsound == 0;
    verdict(
        ok,
        format!(
            "{}; {unsound} unsound outputs; instances with K=0/K=1/K>1: {}/{}/{}",
            details.join(", "),
            kinds_seen[0],
            kinds_seen[1],
            kinds_seen[2]
        ),
    )
}

fn c8_isolation() -> Verdict {
    const TRIALS: usize = 1000;
    let oracle = Oracle::default();
    let mut ok = true;
    let mut details = Vec::new();
    // (n, dim, n1) with 2^dim * 2^(n1 - n) <= 1/2
    for (n, dim, n1) in [(10usize, 2usize, 7usize), (10, 4, 5), (12, 3, 8)] {
        let mut rng = Stream::new(8).child(n as u64).child(dim as u64).rng();
        let sys = affine_subspace_system(n, 2, dim, &mut rng);
        let k = oracle.count(&sys).unwrap() as usize;
        assert_eq!(k, 1 << dim);
        assert!((k as f64) * ((n1 as f64) - (n as f64)).exp2() <= 0.5);
        let mut isolated = vec![0usize; k];
        for _ in 0..TRIALS {
            let (b, _) = sample_invertible(n, &mut rng);
            let flags = solver::isolation_check(&sys, &b, n1, &oracle).unwrap();
            for (j, (_, iso)) in flags.iter().enumerate() {
                isolated[j] += *iso as usize;
            }
        }
        let bound = 0.5 - 3.0 * sigma(0.5, TRIALS as f64);
        let worst = isolated.iter().copied().min().unwrap() as f64 / TRIALS as f64;
        ok &= worst >= bound;
        details.push(format!("n={n} K={k} n1={n1}: min {worst:.3} >= {bound:.3}"));
    }
    verdict(ok, details.join(", "))
}

fn c9_estimate() -> Verdict {
    let oracle = Oracle::default();
    let mut ok = true;
    let mut details = Vec::new();
    for n in [10usize, 13, 16] {
        let mut rng = Stream::new(9).child(n as u64).rng();
        let sys = affine_subspace_system(n, 2, n - 2, &mut rng);
        let k = oracle.count(&sys).unwrap() as f64;
        assert_eq!(k, (1u64 << (n - 2)) as f64);
        let mut within = 0;
        for seed in 0..100 {
            if let CountEstimate::Estimate(e) =
                solver::estimate_solution_count(&sys, None, Stream::new(seed)).unwrap()
            {
                if (0.5..=2.0).contains(&(e / k)) {
                    within += 1;
                }
            }
        }
        ok &= within >= 99;
        details.push(format!("n={n}: {within}/100"));
    }
    verdict(
        ok,
        format!("K=2^(n-2), ratio in [1/2, 2]: {}", details.join(", ")),
    )
}

fn run_cli(args: &[&str]) -> Vec<u8> {
    let o = Command::new(env!("CARGO_BIN_EXE_f2mq"))
        .args(args)
        .output()
        .expect("binary runs");
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    o.stdout
}

fn c10_determinism() -> Verdict {
    let dir = std::env::temp_dir().join(format!("f2mq-accept-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("det.mq");
    let path = file.to_str().unwrap();
    run_cli(&[
        "gen",
        "-n",
        "10",
        "-d",
        "2",
        "-m",
        "10",
        "--planted",
        "--seed",
        "77",
        "-o",
        path,
    ]);
    let mut commands: Vec<Vec<&str>> = ["parity", "decide", "search", "exhaust"]
        .iter()
        .map(|m| {
            vec![
                "--format", "ndjson", "solve", "--mode", m, "--seed", "5", "-i", path,
            ]
        })
        .collect();
    commands.push(vec![
        "--format",
        "ndjson",
        "bench",
        "--vars",
        "8,10",
        "--instances",
        "2",
        "--seed",
        "5",
        "--deterministic",
    ]);
    let mut identical = 0;
    for cmd in &commands {
        let reference = run_cli(cmd);
        let same = ["1", "1", "2", "4"].iter().enumerate().all(|(i, threads)| {
            let mut full: Vec<&str> = vec!["--threads", threads];
            full.extend(cmd.iter().copied());
            let out = if i == 0 { run_cli(cmd) } else { run_cli(&full) };
            out == reference
        });
        identical += same as usize;
    }
    verdict(
        identical == commands.len(),
        format!(
            "{identical}/{} commands byte-identical across repeated runs and --threads 1/2/4",
            commands.len()
        ),
    )
}
