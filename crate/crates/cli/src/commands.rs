use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use rand::Rng;

use f2mq::algebra::ball_size;
use f2mq::engine::{
    default_lambda, default_trials, plan_schedule, recursion_profile, EngineParams,
};
use f2mq::oracle::Oracle;
use f2mq::solver::{self, SolveOutcome, SolverParams};
use f2mq::system::format::{parse_system, serialize_system};
use f2mq::system::generate::{plant, random_system};
use f2mq::{Assignment, PolySystem, Stream};

use crate::args::{BenchArgs, Cli, Command, Format, GenArgs, SolveArgs, Tuning, VerifyArgs};
use crate::report::*;
use crate::Status;

pub fn run(cli: Cli) -> Result<Status> {
    if let Some(threads) = cli.threads {
        if threads == 0 {
            bail!("--threads must be positive");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let mut out = io::stdout().lock();
    match cli.command {
        Command::Gen(a) => gen(&a, &mut out),
        Command::Solve(a) => solve(&a, cli.format, &mut out),
        Command::Verify(a) => verify(&a, cli.format, &mut out),
        Command::Bench(a) => bench(&a, cli.format, &mut out),
    }
}

fn read_input(path: Option<&Path>) -> Result<String> {
    match path {
        Some(p) if p != Path::new("-") => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .context("reading stdin")?;
            Ok(s)
        }
    }
}

fn load(path: Option<&Path>) -> Result<PolySystem> {
    let text = read_input(path)?;
    let name = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
    parse_system(&text).with_context(|| format!("parsing {name}"))
}

fn solver_params(t: &Tuning) -> SolverParams {
    SolverParams {
        kappa0: t.kappa0,
        lambda: t.lambda,
        t: t.t,
        vv_c: t.vv_c,
        r: t.r,
        ..SolverParams::default()
    }
}

fn gen(a: &GenArgs, out: &mut impl Write) -> Result<Status> {
    if a.vars > 63 {
        bail!("at most 63 variables are supported");
    }
    if a.degree > a.vars {
        bail!("degree {} exceeds the variable count {}", a.degree, a.vars);
    }
    let room = ball_size(a.vars, a.degree);
    if a.equations as u64 > room {
        bail!(
            "{} equations exceed the {} monomials of degree <= {}",
            a.equations,
            room,
            a.degree
        );
    }
    let mut rng = Stream::new(a.seed).rng();
    let mut sys = random_system(a.vars, a.degree, a.equations, &mut rng);
    let mut text = format!(
        "# f2mq gen seed={} n={} d={} m={} planted={}\n",
        a.seed, a.vars, a.degree, a.equations, a.planted
    );
    if a.planted {
        let mask = if a.vars == 0 {
            0
        } else {
            u64::MAX >> (64 - a.vars)
        };
        let x = rng.random::<u64>() & mask;
        sys = plant(&sys, x);
        text.push_str(&format!("# planted {}\n", Assignment::new(a.vars, x)?));
    }
    text.push_str(&serialize_system(&sys));
    match &a.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Status::Ok)
}

fn oracle_agrees(outcome: &SolveOutcome, sys: &PolySystem, cap: usize) -> Result<bool> {
    let oracle = Oracle::with_cap(cap);
    let sols = oracle.solutions(sys)?;
    Ok(match outcome {
        SolveOutcome::Parity(p) => *p == (sols.len() % 2 == 1),
        SolveOutcome::Decide(b) => *b == !sols.is_empty(),
        SolveOutcome::Search(Some(a)) => sys.is_solution(a.bits()),
        SolveOutcome::Search(None) => sols.is_empty(),
        SolveOutcome::Exhaust(list) => *list == sols,
    })
}

fn solve(a: &SolveArgs, format: Format, out: &mut impl Write) -> Result<Status> {
    let sys = load(a.input.as_deref())?;
    let params = solver_params(&a.tuning);
    let (n, d) = (sys.n(), sys.d());
    let engine = params.engine(n)?;
    let kappa0 = params.kappa0(d)?;
    let echo = SolveEcho {
        command: "solve",
        mode: a.mode.name(),
        seed: a.tuning.seed,
        n,
        d,
        m: sys.m(),
        lambda: engine.lambda,
        kappa0,
        t: engine.t,
        r: params.iterations(n),
        vv_c: params.vv_c,
    };
    if a.oracle_check && n > a.oracle_cap {
        bail!(
            "oracle check needs n <= {}, input has n = {n}",
            a.oracle_cap
        );
    }
    let outcome = solver::solve(a.mode.name(), &sys, &params, Stream::new(a.tuning.seed))?;
    let oracle = if a.oracle_check {
        Some(if oracle_agrees(&outcome, &sys, a.oracle_cap)? {
            "MATCH"
        } else {
            "MISMATCH"
        })
    } else {
        None
    };
    match format {
        Format::Text => {
            writeln!(out, "{}", echo.text())?;
            writeln!(out, "{outcome}")?;
            if let Some(o) = oracle {
                writeln!(out, "oracle: {o}")?;
            }
        }
        Format::Ndjson => {
            let rec = SolveRecord {
                echo,
                result: ResultRecord::from(&outcome),
                oracle,
            };
            writeln!(out, "{}", json(&rec))?;
        }
    }
    Ok(if oracle == Some("MISMATCH") {
        Status::OracleMismatch
    } else {
        Status::Ok
    })
}

fn verify(a: &VerifyArgs, format: Format, out: &mut impl Write) -> Result<Status> {
    let sys = load(a.input.as_deref())?;
    let x: Assignment = a.assignment.parse().context("parsing the assignment")?;
    if x.n() != sys.n() {
        bail!(
            "assignment has {} bits, system has {} variables",
            x.n(),
            sys.n()
        );
    }
    let eval = sys.evaluate(&x);
    let violated: Vec<usize> = eval.values.ones_iter().map(|j| j + 1).collect();
    let rec = VerifyRecord {
        command: "verify",
        n: sys.n(),
        m: sys.m(),
        assignment: x.to_string(),
        solution: eval.is_solution,
        violated,
    };
    match format {
        Format::Text => {
            writeln!(
                out,
                "# f2mq verify n={} m={} assignment={}",
                rec.n, rec.m, rec.assignment
            )?;
            if rec.solution {
                writeln!(out, "solution")?;
            } else {
                let list: Vec<String> = rec.violated.iter().map(|j| j.to_string()).collect();
                writeln!(
                    out,
                    "not a solution (equations {} evaluate to 1)",
                    list.join(", ")
                )?;
            }
        }
        Format::Ndjson => writeln!(out, "{}", json(&rec))?,
    }
    Ok(if rec.solution {
        Status::Ok
    } else {
        Status::NotASolution
    })
}

fn bench(a: &BenchArgs, format: Format, out: &mut impl Write) -> Result<Status> {
    let tune = &a.tuning;
    let params = solver_params(tune);
    let echo = BenchEcho {
        command: "bench",
        seed: tune.seed,
        lambda: tune.lambda,
        kappa0: tune.kappa0,
        t: tune.t,
        plan_only: a.plan_only,
    };
    match format {
        Format::Text => writeln!(
            out,
            "# f2mq bench seed={} lambda={} kappa0={} t={} plan_only={}",
            tune.seed,
            opt(tune.lambda),
            opt(tune.kappa0),
            opt(tune.t),
            a.plan_only
        )?,
        Format::Ndjson => writeln!(out, "{}", json(&serde_json::json!({ "echo": echo })))?,
    }
    let root = Stream::new(tune.seed);
    for &n in &a.vars {
        for &d in &a.degrees {
            let kappa0 = params.kappa0(d)?;
            if a.plan_only {
                // Dry runs may use trial counts beyond the 16-bit scoreboard.
                let engine = EngineParams {
                    lambda: tune.lambda.unwrap_or_else(|| default_lambda(n)),
                    t: tune.t.unwrap_or_else(|| default_trials(n)),
                };
                if !(engine.lambda > 0.0 && engine.lambda < 1.0) {
                    bail!("lambda must lie in (0, 1)");
                }
                let plan = plan_schedule(n, d, kappa0, &engine);
                let rec = PlanRecord {
                    seed: tune.seed,
                    n,
                    d,
                    lambda: engine.lambda,
                    kappa0,
                    t: engine.t,
                    depth: plan.len(),
                    levels: plan.iter().map(PlanLevelRecord::from).collect(),
                };
                match format {
                    Format::Ndjson => writeln!(out, "{}", json(&rec))?,
                    Format::Text => {
                        write!(out, "n={n} d={d} lambda={} t={} levels:", rec.lambda, rec.t)?;
                        for l in &rec.levels {
                            write!(
                                out,
                                " [n1={} w={} log2|W|={:.2} log2 nodes={:.2}]",
                                l.n1, l.w, l.log2_outer_points, l.log2_nodes
                            )?;
                        }
                        writeln!(out)?;
                    }
                }
                continue;
            }
            if n > 63 || d > n {
                bail!("cannot run n = {n}, d = {d}");
            }
            let m = a.equations.unwrap_or(n).min(ball_size(n, d) as usize);
            let engine = params.engine(n)?;
            for i in 0..a.instances {
                let st = root.child(n as u64).child(d as u64).child(i as u64);
                let sys = random_system(n, d, m, &mut st.fork("instance").rng());
                let start = Instant::now();
                let (parity, census) =
                    recursion_profile(&sys, kappa0, &engine, st.fork("profile"))?;
                let wall = start.elapsed().as_secs_f64() * 1e3;
                let rec = BenchRecord {
                    seed: tune.seed,
                    n,
                    d,
                    m,
                    instance: i,
                    lambda: engine.lambda,
                    kappa0,
                    t: engine.t,
                    parity: parity as u8,
                    total_nodes: census.total_nodes(),
                    total_transform_work: census.total_transform_work(),
                    levels: BenchRecord::levels_from(&census),
                    wall_ms: (!a.deterministic).then_some(wall),
                };
                match format {
                    Format::Ndjson => writeln!(out, "{}", json(&rec))?,
                    Format::Text => {
                        let nodes: Vec<String> =
                            rec.levels.iter().map(|l| l.nodes.to_string()).collect();
                        write!(
                            out,
                            "n={n} d={d} m={m} instance={i} parity={} nodes/level=[{}] work={}",
                            rec.parity,
                            nodes.join(", "),
                            rec.total_transform_work
                        )?;
                        if let Some(w) = rec.wall_ms {
                            write!(out, " wall_ms={w:.3}")?;
                        }
                        writeln!(out)?;
                    }
                }
            }
        }
    }
    Ok(Status::Ok)
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map_or_else(|| "default".to_string(), |v| v.to_string())
}
