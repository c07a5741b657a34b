mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use macmahon::fforacle::{
    oracle_vs_class, ChainInstance, FpMatrix, QuiverInstance, DEFAULT_BUDGET,
};
use macmahon::motivic::{
    bb_identity_check, class_fixed_component, corollary_check, stable_class_check, theorem3_check,
    Rank,
};
use macmahon::partitions::{
    diagram_tuples, partitions, plane_partitions, DiagramTuple, PlanePartition, YoungDiagram,
};
use macmahon::series::{exps, TruncationProfile, Var};
use macmahon::torus::{d_plus_formula, default_alpha, tangent_character};
use macmahon::{json, suite, vuletic, Error};
use serde_json::json;

use report::{Format, Report};

const EXIT_MISMATCH: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

/// Checks identities between plane-partition generating functions and
/// motivic classes of fixed loci, with exact integer arithmetic.
#[derive(Parser, Debug)]
#[command(name = "macmahon", version)]
struct Cli {
    /// Output format for the report on stdout.
    #[arg(long, value_enum, global = true, default_value_t = Format::Json)]
    format: Format,
    /// Number of worker threads.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Print elapsed times on stderr.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List combinatorial objects.
    #[command(subcommand)]
    Enumerate(Enumerate),
    /// Check one identity at explicit truncation orders.
    #[command(subcommand)]
    Verify(Verify),
    /// Classes of the fixed components for given rank and weight.
    Classes {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Tangent weights at the fixed point of a tuple of Young diagrams.
    Tangent {
        /// For example "[[2,1],[1]]".
        #[arg(long)]
        tuple: String,
        /// Slope of the subtorus; defaults to n + 2.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<i64>,
    },
    /// Count points over a prime field by exhaustive search.
    CountPoints(CountPoints),
    /// Run the full desk-scale suite.
    All {
        #[arg(long, required = true)]
        desk_scale: bool,
    },
}

#[derive(Subcommand, Debug)]
enum Enumerate {
    /// Plane partitions of weight n.
    Pp {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        max_entry: Option<u32>,
    },
    /// Partitions of n.
    Partitions {
        #[arg(long)]
        n: u32,
    },
    /// r-tuples of Young diagrams of total weight n.
    Tuples {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: u32,
    },
}

#[derive(Subcommand, Debug)]
enum Verify {
    /// Generalized MacMahon identity in q, t, s.
    Vuletic {
        #[arg(long, default_value_t = 4)]
        s_order: u32,
        #[arg(long, default_value_t = 6)]
        q_order: u32,
        #[arg(long, default_value_t = 4)]
        t_order: u32,
    },
    /// F_π(L, 0) against the stable class, partition by partition.
    Theorem2 {
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
        #[arg(long, default_value_t = 8)]
        l_order: u32,
    },
    /// Generating series of the fixed components at rank r ("inf" allowed).
    Theorem3 {
        #[arg(long)]
        r: Rank,
        #[arg(long, default_value_t = 4)]
        t_order: u32,
        #[arg(long, default_value_t = 6)]
        q_order: u32,
    },
    /// Stable generating series against ∏ (1 − L^i t^j)^(−j).
    Corollary {
        #[arg(long, default_value_t = 4)]
        t_order: u32,
        #[arg(long, default_value_t = 8)]
        l_order: u32,
    },
    /// Sum over fixed components against the class of the moduli space.
    Bb {
        #[arg(long)]
        r: u32,
        #[arg(long)]
        n: u32,
    },
    /// Plane-partition counts against ∏ (1 − s^k)^(−k).
    Macmahon {
        #[arg(long, default_value_t = 8)]
        s_order: u32,
    },
}

#[derive(Args, Debug)]
#[command(group = clap::ArgGroup::new("instance").required(true).args(["grid", "chain_mu"]))]
struct CountPoints {
    /// Plane partition giving the grid dimensions.
    #[arg(long)]
    grid: Option<String>,
    /// Dimensions μ of the chain.
    #[arg(long, requires = "chain_nu")]
    chain_mu: Option<String>,
    /// Dimensions ν of the targets.
    #[arg(long, requires = "chain_mu")]
    chain_nu: Option<String>,
    /// The maps h as a JSON list of matrices; coordinate projections by default.
    #[arg(long, requires = "chain_mu")]
    h: Option<String>,
    #[arg(long)]
    p: u32,
    /// Largest search space, in matrix tuples, that will be attempted.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_USAGE);
        }
    }
    let start = Instant::now();
    let result = run(&cli);
    if cli.timing {
        eprintln!("elapsed: {:.3}s", start.elapsed().as_secs_f64());
    }
    match result {
        Ok(report) => {
            print!("{}", report.render(cli.format));
            ExitCode::from(if report.ok { 0 } else { EXIT_MISMATCH })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::BudgetExceeded { .. } => EXIT_BUDGET,
                _ => EXIT_USAGE,
            })
        }
    }
}

fn run(cli: &Cli) -> macmahon::Result<Report> {
    match &cli.command {
        Command::Enumerate(e) => enumerate(e),
        Command::Verify(v) => verify(v),
        Command::Classes { r, n } => classes(*r, *n),
        Command::Tangent { tuple, alpha } => tangent(tuple, *alpha),
        Command::CountPoints(c) => count_points(c),
        Command::All { .. } => Ok(all(cli.timing)),
    }
}

fn enumerate(e: &Enumerate) -> macmahon::Result<Report> {
    let items: Vec<String> = match e {
        Enumerate::Pp { n, max_entry } => plane_partitions(*n, *max_entry)
            .iter()
            .map(|p| p.to_string())
            .collect(),
        Enumerate::Partitions { n } => partitions(*n).iter().map(|p| p.to_string()).collect(),
        Enumerate::Tuples { r, n } => {
            if *r == 0 {
                return Err(Error::Parse("r must be at least 1".into()));
            }
            diagram_tuples(*r, *n)
                .iter()
                .map(|p| p.to_string())
                .collect()
        }
    };
    let rows = items.iter().map(|s| vec![s.clone()]).collect();
    Ok(
        Report::new(json!({ "count": items.len(), "items": items }), true)
            .with_table(&["item"], rows),
    )
}

fn verify(v: &Verify) -> macmahon::Result<Report> {
    match *v {
        Verify::Vuletic {
            s_order,
            q_order,
            t_order,
        } => {
            let profile =
                TruncationProfile::new(&[(Var::Q, q_order), (Var::T, t_order), (Var::S, s_order)]);
            let diff = vuletic::lhs(&profile)?.first_difference(&vuletic::rhs(&profile)?)?;
            let num = macmahon::partitions::plane_partitions_up_to(s_order, None).len();
            Ok(Report::new(
                json!({
                    "match": diff.is_none(),
                    "orders": json::profile(&profile),
                    "num_partitions": num,
                    "first_difference": json::difference(&diff),
                }),
                diff.is_none(),
            ))
        }
        Verify::Theorem2 {
            max_weight,
            l_order,
        } => {
            let entries = stable_class_check(max_weight, l_order)?;
            let ok = entries.iter().all(|e| e.matches());
            let rows = entries
                .iter()
                .map(|e| {
                    vec![
                        e.partition.to_string(),
                        e.matches().to_string(),
                        e.factored_equal.to_string(),
                    ]
                })
                .collect();
            Ok(Report::new(
                json!({
                    "match": ok,
                    "max_weight": max_weight,
                    "l_order": l_order,
                    "entries": entries.iter().map(json::stable_class_entry).collect::<Vec<_>>(),
                }),
                ok,
            )
            .with_table(&["partition", "match", "factored_equal"], rows))
        }
        Verify::Theorem3 {
            r,
            t_order,
            q_order,
        } => {
            let c = theorem3_check(r, t_order, q_order)?;
            let mut v = json::comparison(&c);
            v["r"] = json!(r.to_string());
            Ok(Report::new(v, c.matches()))
        }
        Verify::Corollary { t_order, l_order } => {
            let c = corollary_check(t_order, l_order)?;
            Ok(Report::new(json::comparison(&c), c.matches()))
        }
        Verify::Bb { r, n } => {
            if r == 0 {
                return Err(Error::Parse("r must be at least 1".into()));
            }
            let b = bb_identity_check(r, n)?;
            let rows = vec![
                vec!["lhs".into(), b.lhs.to_string()],
                vec!["rhs".into(), b.rhs.to_string()],
            ];
            Ok(Report::new(json::bb(&b), b.matches()).with_table(&["side", "polynomial"], rows))
        }
        Verify::Macmahon { s_order } => {
            let enumerated: Vec<String> = (0..=s_order)
                .map(|n| plane_partitions(n, None).len().to_string())
                .collect();
            let s = vuletic::macmahon_factors(s_order)
                .expand(&TruncationProfile::new(&[(Var::S, s_order)]))?;
            let expanded: Vec<String> = (0..=s_order)
                .map(|k| s.coeff(&exps(&[(Var::S, k)])).to_string())
                .collect();
            let ok = enumerated == expanded;
            let rows = (0..=s_order as usize)
                .map(|k| vec![k.to_string(), enumerated[k].clone(), expanded[k].clone()])
                .collect();
            Ok(Report::new(
                json!({ "match": ok, "enumerated": enumerated, "expanded": expanded }),
                ok,
            )
            .with_table(&["n", "enumerated", "expanded"], rows))
        }
    }
}

fn classes(r: u32, n: u32) -> macmahon::Result<Report> {
    let mut entries = Vec::new();
    let mut rows = Vec::new();
    for pi in plane_partitions(n, Some(r)) {
        let class = class_fixed_component(r, &pi)?;
        let poly = class
            .polynomial()
            .expect("finite rank classes are polynomials");
        let d_plus = d_plus_formula(&pi, r)?;
        entries.push(json!({
            "partition": pi.to_string(),
            "chi": pi.chi(),
            "d_plus": d_plus,
            "class": json::poly(poly),
            "class_display": poly.to_string(),
        }));
        rows.push(vec![
            pi.to_string(),
            pi.chi().to_string(),
            d_plus.to_string(),
            poly.to_string(),
        ]);
    }
    Ok(
        Report::new(json!({ "r": r, "n": n, "components": entries }), true)
            .with_table(&["partition", "chi", "d_plus", "class"], rows),
    )
}

fn tangent(tuple: &str, alpha: Option<i64>) -> macmahon::Result<Report> {
    let d: DiagramTuple = tuple.parse()?;
    let n = d.weight();
    let r = d.rank();
    let alpha = alpha.unwrap_or_else(|| default_alpha(n));
    let pi = d.plane_partition()?;
    let ch = tangent_character(&d);
    let expected = d_plus_formula(&pi, r as u32)?;
    let size_ok = ch.len() as u64 == 2 * r as u64 * n;
    let d_plus_ok = ch.positive(alpha) as u64 == expected;
    let mut v = json::tangent(&ch, alpha);
    v["tuple"] = json!(d.to_string());
    v["partition"] = json!(pi.to_string());
    v["dimension"] = json!(ch.len());
    v["expected_dimension"] = json!(2 * r as u64 * n);
    v["d_plus"] = json!(ch.positive(alpha));
    v["expected_d_plus"] = json!(expected);
    v["match"] = json!(size_ok && d_plus_ok);
    let rows = ch
        .terms
        .iter()
        .map(|w| {
            vec![
                w.source.to_string(),
                w.target.to_string(),
                w.k1.to_string(),
                w.k2.to_string(),
                w.pairing(alpha).to_string(),
            ]
        })
        .collect();
    Ok(Report::new(v, size_ok && d_plus_ok)
        .with_table(&["source", "target", "k1", "k2", "pairing"], rows))
}

fn parse_matrices(s: &str, p: u32) -> macmahon::Result<Vec<FpMatrix>> {
    let raw: Vec<Vec<Vec<u32>>> =
        serde_json::from_str(s).map_err(|e| Error::Parse(format!("h: {e}")))?;
    raw.iter().map(|m| FpMatrix::from_rows(p, m)).collect()
}

fn count_points(c: &CountPoints) -> macmahon::Result<Report> {
    let (inst, description) = if let Some(grid) = &c.grid {
        let partition: PlanePartition = grid.parse()?;
        let d = json!({ "grid": partition.to_string() });
        (QuiverInstance::Grid { partition, p: c.p }, d)
    } else {
        let mu: YoungDiagram = c.chain_mu.as_deref().unwrap_or_default().parse()?;
        let nu: YoungDiagram = c.chain_nu.as_deref().unwrap_or_default().parse()?;
        let inst = match &c.h {
            Some(h) => ChainInstance::new(c.p, mu, nu, parse_matrices(h, c.p)?)?,
            None => ChainInstance::with_projections(c.p, mu, nu)?,
        };
        let h: Vec<Vec<Vec<u8>>> = inst
            .h()
            .iter()
            .map(|m| {
                (0..m.rows())
                    .map(|i| (0..m.cols()).map(|j| m.get(i, j)).collect())
                    .collect()
            })
            .collect();
        let d = json!({ "mu": inst.mu().to_string(), "nu": inst.nu().to_string(), "h": h });
        (QuiverInstance::Chain(inst), d)
    };
    let report = oracle_vs_class(&inst, c.budget)?;
    let mut v = json::oracle(&report);
    v["instance"] = description;
    v["p"] = json!(c.p);
    v["raw_size"] = json!(inst.raw_size()?.to_string());
    Ok(Report::new(v, report.matches()))
}

fn all(timing: bool) -> Report {
    let outcomes = suite::run_all();
    for o in &outcomes {
        if timing {
            eprintln!("check {} {}: {:.3}s", o.id, o.name, o.elapsed.as_secs_f64());
        }
        if !o.within_limit() {
            eprintln!(
                "check {} {} exceeded its limit: {:.3}s > {}s",
                o.id,
                o.name,
                o.elapsed.as_secs_f64(),
                o.limit.as_secs()
            );
        }
    }
    let ok = outcomes.iter().all(|o| o.ok());
    let rows = outcomes
        .iter()
        .map(|o| {
            vec![
                o.id.to_string(),
                o.name.to_string(),
                if o.passed { "PASS" } else { "FAIL" }.to_string(),
                o.limit.as_secs().to_string(),
            ]
        })
        .collect();
    Report::new(
        json!({
            "passed": outcomes.iter().all(|o| o.passed),
            "checks": outcomes.iter().map(|o| o.to_json(false)).collect::<Vec<_>>(),
        }),
        ok,
    )
    .with_table(&["id", "name", "result", "limit_seconds"], rows)
}
