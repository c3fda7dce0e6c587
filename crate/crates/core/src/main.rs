use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use k3aut::classify::{classify_order, compare_with_reference, ClassifyOptions, Status};
use k3aut::cli_io::{
    digest, parse_assignment, parse_constraint, parse_vector, reference, reference_text_table, render, Format,
    RunReport, TextTable,
};
use k3aut::fibration::{
    check_automorphism, euler_check, family_model, fiber_analysis, specialize, DiagonalAction, FibrationError,
    WeierstrassModel,
};
use k3aut::intsolve::Relation;
use k3aut::lattices::{parse_lattice_expr, summary, ExternalLattices, LatticeError};
use k3aut::lefschetz::{enumerate_dims, holo_solve, ChiVector, DimConstraint, EigenDims, HoloBounds};
use k3aut::numtheory::divisors_desc;

#[derive(Parser)]
#[command(name = "k3aut", version, about = "Fixed loci of purely non-symplectic automorphisms of K3 surfaces")]
struct Cli {
    /// Output format: json, csv or table.
    #[arg(long, global = true, default_value = "table")]
    format: Format,
    /// Include wall-clock timing in json output.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Eigenspace dimension vectors (d_n, ..., d_1).
    Dims {
        n: u64,
        /// Constraint such as d22=2 or d1>=3 (repeatable).
        #[arg(long = "fix")]
        fix: Vec<String>,
    },
    /// Euler characteristics of the fixed loci of all powers.
    Chi {
        n: u64,
        /// Dimension vector (d_n, ..., d_1).
        #[arg(long)]
        d: String,
    },
    /// Solutions of the holomorphic Lefschetz identity.
    Holo {
        n: u64,
        /// sigma acts on the 2-form by zeta_n^omega.
        #[arg(long, default_value_t = 1)]
        omega: i64,
        /// Upper bound for every a_i.
        #[arg(long, default_value_t = 24)]
        bound: i64,
        #[arg(long, default_value_t = -10, allow_hyphen_values = true)]
        alpha_min: i64,
        #[arg(long, default_value_t = 2, allow_hyphen_values = true)]
        alpha_max: i64,
        /// Linear constraint, e.g. "a1+a3 <= 2" or "a2 == 1 mod 3" (repeatable).
        #[arg(long = "constrain", allow_hyphen_values = true)]
        constrain: Vec<String>,
    },
    /// Full classification for order n.
    Classify {
        n: u64,
        /// Fix d_n (default: every d_n >= 1).
        #[arg(long)]
        dn: Option<u64>,
        /// Compare admissible rows with a reference table; exit 1 on differences.
        #[arg(long)]
        diff: Option<String>,
        /// Do not attach the recorded geometric eliminations.
        #[arg(long)]
        no_geometric: bool,
        /// Only show rows that survive the arithmetic checks.
        #[arg(long)]
        admissible_only: bool,
    },
    /// Singular fibers of a Weierstrass model.
    Fibration(ModelArgs),
    /// Checks a diagonal action on a Weierstrass model.
    Action {
        #[command(flatten)]
        model: ModelArgs,
        /// lambda as order:exponent (default: the family's action).
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long)]
        mu: Option<String>,
        #[arg(long)]
        nu: Option<String>,
    },
    /// Determinant, rank and signature of a sum of named lattices, e.g. "U(2)+D4".
    Lattice {
        expr: String,
        /// JSON file with Gram matrices of lattices not built in (H5).
        #[arg(long)]
        lattice_data: Option<std::path::PathBuf>,
    },
    /// Dumps the embedded reference tables.
    Tables {
        #[arg(long)]
        id: Option<String>,
    },
}

#[derive(Args)]
struct ModelArgs {
    /// Family id from the reference data.
    #[arg(long)]
    family: Option<String>,
    /// Parameter value, e.g. a=2 or a=-3/4.
    #[arg(long = "param", allow_hyphen_values = true)]
    param: Vec<String>,
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long = "B", allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, default_value_t = 2)]
    scale: u32,
}

enum Failure {
    Usage(String),
    Data(String),
}

impl From<FibrationError> for Failure {
    fn from(e: FibrationError) -> Self {
        Failure::Usage(e.to_string())
    }
}

struct Out {
    text: String,
    code: u8,
}

fn emit<T: Serialize>(cli: &Cli, argv: &[String], t0: Instant, results: T, diff: Option<serde_json::Value>, table: TextTable) -> String {
    let report = RunReport {
        command: argv.to_vec(),
        input_digest: digest(argv),
        results,
        diff,
        timing_ms: cli.timing.then(|| t0.elapsed().as_millis()),
    };
    render(cli.format, &report, &table)
}

fn cells<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn model_from(args: &ModelArgs) -> Result<(WeierstrassModel, Option<DiagonalAction>, Option<bool>), Failure> {
    match (&args.family, &args.a, &args.b) {
        (Some(id), None, None) => {
            let mut assigns = Vec::new();
            for p in &args.param {
                assigns.push(parse_assignment(p).map_err(|e| Failure::Usage(e.to_string()))?);
            }
            let s = specialize(id, &assigns)?;
            let act = family_model(id)?.action;
            Ok((s.model, act, Some(s.generic)))
        }
        (None, a, b) if a.is_some() || b.is_some() => {
            let m = WeierstrassModel::parse(a.as_deref().unwrap_or("0"), b.as_deref().unwrap_or("0"), args.scale)?;
            Ok((m, None, None))
        }
        _ => Err(Failure::Usage("give either --family or --A/--B".into())),
    }
}

fn run(cli: &Cli, argv: &[String]) -> Result<Out, Failure> {
    let t0 = Instant::now();
    let usage = |e: &dyn std::fmt::Display| Failure::Usage(e.to_string());
    let ok = |text| Ok(Out { text, code: 0 });
    match &cli.cmd {
        Cmd::Dims { n, fix } => {
            let mut cons = Vec::new();
            for f in fix {
                cons.push(parse_dim_constraint(f).map_err(|e| usage(&e))?);
            }
            let dims = enumerate_dims(*n, &cons).map_err(|e| usage(&e))?;
            let mut header: Vec<String> = divisors_desc(*n).iter().map(|k| format!("d{k}")).collect();
            let chis: Vec<u64> = divisors_desc(*n).into_iter().filter(|&k| k > 1).collect();
            header.extend(chis.iter().map(|k| format!("chi{k}")));
            let mut t = TextTable::new(header);
            for d in &dims {
                let c = ChiVector::of(d);
                let mut row = cells(&d.to_desc());
                row.extend(chis.iter().map(|&k| c.of_order(k).map_or("-".into(), |v| v.to_string())));
                t.push(row);
            }
            ok(emit(cli, argv, t0, &dims, None, t))
        }
        Cmd::Chi { n, d } => {
            let v = parse_vector(d).map_err(|e| usage(&e))?;
            let d = EigenDims::from_desc(*n, &v).map_err(|e| usage(&e))?;
            let c = ChiVector::of(&d);
            let ks: Vec<u64> = divisors_desc(*n).into_iter().filter(|&k| k > 1).collect();
            let mut t = TextTable::new(ks.iter().map(|k| format!("chi{k}")).collect());
            t.push(ks.iter().map(|&k| c.of_order(k).unwrap().to_string()).collect());
            ok(emit(cli, argv, t0, &c, None, t))
        }
        Cmd::Holo { n, omega, bound, alpha_min, alpha_max, constrain } => {
            let mut cons = Vec::new();
            for c in constrain {
                cons.push(parse_constraint(c).map_err(|e| usage(&e))?);
            }
            let b = HoloBounds::uniform(*n, *bound, *alpha_min, *alpha_max);
            let sols = holo_solve(*n, *omega, &b, &cons).map_err(|e| usage(&e))?;
            let mut t = TextTable::new(vec!["a".into(), "alpha".into(), "N".into(), "N+2alpha".into()]);
            for s in &sols {
                t.push(vec![format!("({})", cells(&s.a).join(",")), s.alpha.to_string(), s.points().to_string(), s.chi().to_string()]);
            }
            ok(emit(cli, argv, t0, &sols, None, t))
        }
        Cmd::Classify { n, dn, diff, no_geometric, admissible_only } => {
            let opts = ClassifyOptions { dn: *dn, a_cap: None, geometric_flags: !no_geometric };
            let c = classify_order(*n, &opts).map_err(|e| usage(&e))?;
            let report = match diff {
                Some(id) => Some(compare_with_reference(&c.rows, id).map_err(|e| usage(&e))?),
                None => None,
            };
            let mut t = TextTable::new(
                ["label", "d", "a", "alpha", "fixed loci", "status"].iter().map(|s| s.to_string()).collect(),
            );
            for r in c.rows.iter().filter(|r| !admissible_only || r.status.is_admissible()) {
                let prof: Vec<String> = r.profiles.iter().map(|(k, p)| format!("{k}:{p}")).collect();
                let status = match &r.status {
                    Status::EliminatedArithmetic { reason } => format!("eliminated: {reason}"),
                    Status::RequiresGeometricAnalysis { note, .. } => format!("geometric: {note}"),
                    Status::MatchesPaperRow { table, label } => format!("matches {table}/{label}"),
                    Status::Admissible => "admissible".into(),
                };
                t.push(vec![r.label.clone(), r.d.to_string(), format!("({})", cells(&r.holo.a).join(",")), r.holo.alpha.to_string(), prof.join(" "), status]);
            }
            let code = match &report {
                Some(rep) if !rep.is_empty() => 1,
                _ => 0,
            };
            let mut text = emit(cli, argv, t0, &c, report.as_ref().map(|r| serde_json::to_value(r).unwrap()), t);
            if let (Some(rep), Format::Table) = (&report, cli.format) {
                text.push_str(&format!(
                    "\ndiff against {}: {} matched, missing [{}], extra [{}]\n",
                    rep.table,
                    rep.matched.len(),
                    rep.missing.join(", "),
                    rep.extra.join(", ")
                ));
                for note in &rep.status_notes {
                    text.push_str(&format!("  note: {note}\n"));
                }
            }
            Ok(Out { text, code })
        }
        Cmd::Fibration(args) => {
            let (m, _, generic) = model_from(args)?;
            let reports = fiber_analysis(&m)?;
            let ok_euler = euler_check(&reports, m.scale);
            let mut t = TextTable::new(
                ["place", "count", "vA", "vB", "vD", "type", "euler"].iter().map(|s| s.to_string()).collect(),
            );
            let o = |v: Option<u32>| v.map_or("inf".to_string(), |x| x.to_string());
            for r in &reports {
                t.push(vec![r.place.to_string(), r.count.to_string(), o(r.va), o(r.vb), r.vd.to_string(), r.kodaira.to_string(), r.total_euler().to_string()]);
            }
            #[derive(Serialize)]
            struct R<'a> {
                fibers: &'a [k3aut::fibration::FiberReport],
                euler_sum: u32,
                euler_ok: bool,
                generic: Option<bool>,
            }
            let sum = reports.iter().map(|r| r.total_euler()).sum();
            let mut text = emit(cli, argv, t0, R { fibers: &reports, euler_sum: sum, euler_ok: ok_euler, generic }, None, t);
            if cli.format == Format::Table {
                text.push_str(&format!("euler sum {sum} (expected {}){}\n", 12 * m.scale, match generic {
                    Some(g) => format!(", generic member: {g}"),
                    None => String::new(),
                }));
            }
            ok(text)
        }
        Cmd::Action { model, lambda, mu, nu } => {
            // a family without --param is checked for all parameter values
            let fam = match (&model.family, model.param.is_empty()) {
                (Some(id), true) => Some(family_model(id)?),
                _ => None,
            };
            let (m, fam_act) = match &fam {
                Some(f) => (None, f.action),
                None => {
                    let (m, a, _) = model_from(model)?;
                    (Some(m), a)
                }
            };
            let act = match (lambda, mu, nu, fam_act) {
                (Some(l), Some(u), Some(v), _) => DiagonalAction::parse(l, u, v).map_err(|e| usage(&e))?,
                (None, None, None, Some(a)) => a,
                _ => return Err(Failure::Usage("give --lambda, --mu and --nu".into())),
            };
            let r = match (&fam, &m) {
                (Some(f), _) => f.check_action(&act)?,
                (None, Some(m)) => check_automorphism(m, &act)?,
                (None, None) => unreachable!(),
            };
            let mut t = TextTable::new(
                ["equivariant", "omega multiplier", "non-symplectic order", "order"].iter().map(|s| s.to_string()).collect(),
            );
            t.push(vec![r.equivariant.to_string(), r.omega_multiplier.to_string(), r.purely_nonsymplectic_order.to_string(), r.order.to_string()]);
            ok(emit(cli, argv, t0, &r, None, t))
        }
        Cmd::Lattice { expr, lattice_data } => {
            let ext = match lattice_data {
                Some(p) => {
                    let s = std::fs::read_to_string(p).map_err(|e| Failure::Data(format!("{}: {e}", p.display())))?;
                    Some(ExternalLattices::parse(&s).map_err(|e| Failure::Data(e.to_string()))?)
                }
                None => None,
            };
            let l = parse_lattice_expr(expr, ext.as_ref()).map_err(|e| match e {
                LatticeError::ExternalDataRequired(_) | LatticeError::BadData(_) => Failure::Data(e.to_string()),
                _ => Failure::Usage(e.to_string()),
            })?;
            let s = summary(&l);
            let mut t = TextTable::new(["lattice", "rank", "det", "even", "signature"].iter().map(|s| s.to_string()).collect());
            t.push(vec![s.name.clone(), s.rank.to_string(), s.det.clone(), s.even.to_string(), s.signature.to_string()]);
            ok(emit(cli, argv, t0, &s, None, t))
        }
        Cmd::Tables { id } => {
            let data = reference();
            let tables: Vec<_> = match id {
                Some(id) => vec![data.table(id).map_err(|e| usage(&e))?],
                None => data.tables.iter().collect(),
            };
            if cli.format == Format::Json {
                return ok(emit(cli, argv, t0, &tables, None, TextTable::new(vec![])));
            }
            let mut text = String::new();
            for t in tables {
                if cli.format == Format::Table {
                    text.push_str(&format!("# {}: {}\n", t.id, t.caption));
                }
                text.push_str(&render(cli.format, &t, &reference_text_table(t)));
                text.push('\n');
            }
            ok(text)
        }
    }
}

/// `d22=2`, `d1>=3`, `d2<=1`.
fn parse_dim_constraint(s: &str) -> Result<DimConstraint, String> {
    let ops = [("<=", Relation::Le), (">=", Relation::Ge), ("=", Relation::Eq)];
    for (sym, rel) in ops {
        if let Some((k, v)) = s.split_once(sym) {
            let k = k.trim().trim_start_matches('d');
            let k: u64 = k.parse().map_err(|_| format!("{s:?}: bad divisor"))?;
            let value: u64 = v.trim().parse().map_err(|_| format!("{s:?}: bad value"))?;
            return Ok(DimConstraint { k, rel, value });
        }
    }
    Err(format!("{s:?}: expected dK=V, dK<=V or dK>=V"))
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    if let Err(e) = reference().validate() {
        eprintln!("reference data: {e}");
        return ExitCode::from(3);
    }
    match run(&cli, &argv[1..]) {
        Ok(out) => {
            print!("{}", out.text);
            ExitCode::from(out.code)
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Data(m)) => {
            eprintln!("data error: {m}");
            ExitCode::from(3)
        }
    }
}
