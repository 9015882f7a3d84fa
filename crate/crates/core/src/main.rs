use std::fmt::Display;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vassiliev::diagram::{parse_gauss, parse_pd, Diagram};
use vassiliev::exact::{to_f64, Rational};
use vassiliev::generators::{torus_pd, whitehead_pd, TorusParams, WhiteheadIndex};
use vassiliev::jones::{InvariantPair, JonesEngine};
use vassiliev::plot::{emit_csv, emit_fish_svg, emit_torus_overlay_svg, read_csv, FishOptions, CSV_HEADER};
use vassiliev::table::{
    amphicheiral_candidates, bound_audit, bundled_table, compute_all, crossing_maxima, load_table, KnotRecord, RowField,
};
use vassiliev::torus::{pseudo_invariants, torus_crossing, torus_unknotting, torus_v2v3, TorusAudit, TorusError};

/// Degree two and three Vassiliev invariants of knots.
#[derive(Debug, Parser)]
#[command(name = "vassiliev", version)]
struct Cli {
    /// Largest diagram the state sum accepts [default: $VASSILIEV_CROSSING_CAP or 20]
    #[arg(long, global = true)]
    cap: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Jones polynomial and (v2, v3) of a PD or signed Gauss code, given inline or as a file
    Invariants { input: String },
    /// Evaluate a knot table (name<TAB>PD[...] per line); the bundled table when no file is given
    Table(TableArgs),
    /// Fish plot of one crossing number
    Plot(PlotArgs),
    /// Closed-form invariants of the torus knot T(p,q)
    #[command(allow_negative_numbers = true)]
    Torus {
        p: i64,
        q: i64,
        /// Check every relation between v2, v3, u and c
        #[arg(long)]
        report: bool,
    },
    /// Pseudo-unknotting and pseudo-crossing numbers of a pair (v2, v3)
    #[command(allow_negative_numbers = true)]
    Pseudo { v2: i64, v3: i64 },
    /// Print a diagram of a torus knot or Whitehead double
    #[command(subcommand)]
    Generate(Generate),
    /// Torus knot curves of fixed unknotting and crossing number as SVG
    Curves(CurvesArgs),
}

#[derive(Debug, Args)]
struct TableArgs {
    file: Option<PathBuf>,
    /// Per-crossing-number maxima of |v2|, |v3| against the bounds
    #[arg(long)]
    maxima: bool,
    /// List knots violating the crossing-number bounds
    #[arg(long)]
    audit: bool,
    /// List knots with v3 = 0
    #[arg(long)]
    amphicheiral: bool,
    /// Write name,crossings,v2,v3 to this file
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PlotArgs {
    /// Knot table, or a CSV previously written by `table --csv`; the bundled table when omitted
    file: Option<PathBuf>,
    #[arg(long)]
    crossing: u32,
    #[arg(long)]
    svg: PathBuf,
    /// Plot each knot once, without its mirror image
    #[arg(long)]
    no_mirrors: bool,
}

#[derive(Debug, Subcommand)]
enum Generate {
    #[command(allow_negative_numbers = true)]
    Torus {
        p: i64,
        q: i64,
        #[arg(long)]
        gauss: bool,
    },
    #[command(allow_negative_numbers = true)]
    Whitehead {
        i: i64,
        #[arg(long)]
        gauss: bool,
    },
}

#[derive(Debug, Args)]
struct CurvesArgs {
    /// Unknotting numbers, e.g. `1..9`
    #[arg(long, default_value = "")]
    unknotting: String,
    /// Crossing numbers, e.g. `3,5..17`
    #[arg(long, default_value = "")]
    crossing: String,
    #[arg(long)]
    svg: PathBuf,
    #[arg(long, default_value_t = 64)]
    samples: usize,
}

enum Failure {
    Input(String),
    Compute(String),
}

fn input(e: impl Display) -> Failure {
    Failure::Input(e.to_string())
}

fn compute(e: impl Display) -> Failure {
    Failure::Compute(e.to_string())
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let engine = cli.cap.map(JonesEngine::with_cap).unwrap_or_else(JonesEngine::from_env);
    let result = match cli.command {
        Command::Invariants { input } => invariants(&engine, &input),
        Command::Table(args) => table(&engine, args),
        Command::Plot(args) => plot(&engine, args),
        Command::Torus { p, q, report } => torus(p, q, report),
        Command::Pseudo { v2, v3 } => pseudo(v2, v3),
        Command::Generate(g) => generate(g),
        Command::Curves(args) => curves(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_diagram(arg: &str) -> Result<Diagram, Failure> {
    let text = if Path::new(arg).is_file() {
        fs::read_to_string(arg).map_err(|e| input(format!("{arg}: {e}")))?
    } else {
        arg.to_owned()
    };
    let text = text.trim();
    if text.starts_with("PD") || text.starts_with('X') || text.is_empty() {
        parse_pd(text).map_err(input)
    } else {
        parse_gauss(text).map_err(input)
    }
}

fn invariants(engine: &JonesEngine, arg: &str) -> Outcome {
    let d = read_diagram(arg)?;
    let jones = engine.jones(&d).map_err(compute)?;
    let pair = engine.v2_v3(&d).map_err(compute)?;
    println!("(v2,v3) = {pair}");
    println!("J(q) = {jones}");
    Ok(())
}

fn load_records(file: Option<&Path>, engine: &JonesEngine) -> Result<Vec<KnotRecord>, Failure> {
    let Some(path) = file else {
        let mut recs = bundled_table();
        evaluate(&mut recs, engine)?;
        return Ok(recs);
    };
    let text = fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
    if text.lines().next().is_some_and(|l| l.trim() == CSV_HEADER.join(",")) {
        let rows = read_csv(text.as_bytes()).map_err(input)?;
        return Ok(rows.into_iter().map(|r| KnotRecord::synthetic(r.name, r.crossings, r.invariants)).collect());
    }
    let mut recs = load_table(path).map_err(input)?;
    evaluate(&mut recs, engine)?;
    Ok(recs)
}

fn evaluate(recs: &mut [KnotRecord], engine: &JonesEngine) -> Outcome {
    let failures = compute_all(recs, engine);
    for f in &failures {
        eprintln!("error: {}: {}", f.name, f.error);
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(compute(format!("{} of {} knots failed", failures.len(), recs.len())))
    }
}

fn half(r: &Rational) -> String {
    format!("{}", to_f64(r))
}

fn table(engine: &JonesEngine, args: TableArgs) -> Outcome {
    let recs = load_records(args.file.as_deref(), engine)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    if let Some(path) = &args.csv {
        let file = fs::File::create(path).map_err(|e| input(format!("{}: {e}", path.display())))?;
        emit_csv(&recs, io::BufWriter::new(file), &mut io::stderr()).map_err(compute)?;
    }
    if args.csv.is_none() && !args.maxima && !args.audit && !args.amphicheiral {
        emit_csv(&recs, &mut out, &mut io::stderr()).map_err(compute)?;
    }
    if args.maxima {
        let _ = writeln!(out, "c\tmax|v2|\tbound_v2\tmax|v3|\tbound_v3\tnote");
        for row in crossing_maxima(&recs) {
            let mut note = Vec::new();
            if let Some(r) = row.reference {
                for field in row.mismatches() {
                    note.push(match field {
                        RowField::MaxAbsV2 => format!("reference max|v2| {}", r.max_abs_v2),
                        RowField::MaxAbsV3 => format!("reference max|v3| {}", r.max_abs_v3),
                        RowField::BoundV2 => format!("printed bound_v2 {}", half(&r.bound_v2())),
                        RowField::BoundV3 => format!("printed bound_v3 {}", half(&r.bound_v3())),
                    });
                }
            }
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}",
                row.crossing_number,
                row.max_abs_v2,
                half(&row.bound_v2),
                row.max_abs_v3,
                half(&row.bound_v3),
                if note.is_empty() { "ok".to_owned() } else { note.join("; ") }
            );
        }
    }
    if args.audit {
        let violations = bound_audit(&recs);
        for v in &violations {
            let _ = writeln!(
                out,
                "{} (c = {}): {:?} value {} exceeds {}",
                v.name,
                v.crossing_number,
                v.bound,
                v.value,
                half(&v.limit)
            );
        }
        let _ = writeln!(out, "bound violations: {}", violations.len());
    }
    if args.amphicheiral {
        let cands = amphicheiral_candidates(&recs);
        for c in &cands {
            let _ = writeln!(out, "{}\t{}", c.name, c.crossing_number);
        }
        let odd = cands.iter().filter(|c| !c.even_crossing_number).count();
        let _ = writeln!(out, "v3 = 0: {} knots, {} with odd crossing number", cands.len(), odd);
    }
    Ok(())
}

fn plot(engine: &JonesEngine, args: PlotArgs) -> Outcome {
    let recs = load_records(args.file.as_deref(), engine)?;
    let svg = emit_fish_svg(&recs, args.crossing, FishOptions { synthesize_mirrors: !args.no_mirrors });
    fs::write(&args.svg, svg).map_err(|e| input(format!("{}: {e}", args.svg.display())))
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "pass"
    } else {
        "FAIL"
    }
}

fn torus(p: i64, q: i64, report: bool) -> Outcome {
    let t = TorusParams::new(p, q).map_err(input)?;
    let pair = torus_v2v3(t);
    println!("{t}");
    println!("(v2,v3) = {pair}");
    println!("u = {}", torus_unknotting(t));
    match torus_crossing(t) {
        Ok(c) => println!("c = {c}"),
        Err(TorusError::Unknot(_)) if !report => {
            println!("c = 0");
            return Ok(());
        }
        Err(e) => return Err(compute(e)),
    }
    let audit = TorusAudit::new(t).map_err(compute)?;
    println!("rho = {}", audit.report.rho);
    if !report {
        return Ok(());
    }
    let u = audit.report.unknotting;
    let c = audit.report.crossing;
    let cubic = audit.cubic;
    let ub = &audit.unknotting_bounds;
    let cb = &audit.crossing_bounds;
    let eq = |e: bool| if e { " (equality)" } else { "" };
    println!("{}: (2/3)v2^3 + (1/3)v2^2 <= v3^2{}", mark(cubic.lower1_holds), eq(cubic.lower1_equality));
    println!("{}: v3^2 <= (8/9)v2^3 + (1/9)v2^2{}", mark(cubic.upper_holds), eq(cubic.upper_equality));
    println!("{}: (2/3)v2^3 + (1/3)v2 v3 <= v3^2{}", mark(cubic.lower2_holds), eq(cubic.lower2_equality));
    println!("{}: v2^2 + u(u-1)v2/6 = u|v3|", mark(audit.unknotting_relation));
    println!("{}: smaller root recovers u = {u}", mark(audit.recovered_unknotting == Ok(u)));
    println!("{}: u(u+1)/2 >= v2{}", mark(ub.upper_holds), eq(ub.upper_equality));
    println!("{}: v2 >= u(u + sqrt(8u+1) + 2)/6{}", mark(ub.lower_holds), eq(ub.lower_equality));
    println!(
        "{}: (sqrt(24v2+25) - 5)/2 >= u >= (sqrt(8v2+1) - 1)/2{}",
        mark(ub.corollary_upper_holds && ub.corollary_lower_holds),
        eq(ub.corollary_lower_equality)
    );
    println!("{}: 24v2(c-rho)^2 = c((c-rho)^2-1)(2rho-c)", mark(audit.quartic));
    let recovered = audit.recovered_crossing.as_ref().ok().and_then(|r| r.as_integer());
    println!("{}: recovery formula gives c = {c}", mark(recovered == Some(c)));
    println!("{}: (c^2-1)/8 >= v2{}", mark(cb.upper_holds), eq(cb.upper_equality));
    println!("{}: v2 >= c(c + 1 + 2sqrt(c+1))/24{}", mark(cb.lower_holds), eq(cb.lower_equality));
    println!(
        "{}: (sqrt(96v2+25) - 5)/2 >= c >= sqrt(8v2+1){}",
        mark(cb.corollary_upper_holds && cb.corollary_lower_holds),
        eq(cb.corollary_lower_equality)
    );
    println!(
        "note: with constants 1/24 and 2 in place of 1/2 and 1 the last line would {}",
        if cb.printed_corollary_holds { "also hold" } else { "fail" }
    );
    let pseudo_ok =
        audit.pseudo.as_ref().is_ok_and(|p| p.unknotting.as_integer() == Some(u) && p.crossing.as_integer() == Some(c));
    println!("{}: pseudo-invariants equal u and c", mark(pseudo_ok));
    if audit.all_pass() {
        println!("all checks pass");
        Ok(())
    } else {
        Err(compute(format!("{t}: some checks failed")))
    }
}

fn pseudo(v2: i64, v3: i64) -> Outcome {
    let p = pseudo_invariants(InvariantPair::new(v2, v3)).map_err(compute)?;
    println!("u~ = {}", p.unknotting);
    println!("c~ = {}", p.crossing);
    Ok(())
}

fn generate(g: Generate) -> Outcome {
    let (d, gauss) = match g {
        Generate::Torus { p, q, gauss } => (torus_pd(TorusParams::new(p, q).map_err(input)?), gauss),
        Generate::Whitehead { i, gauss } => (whitehead_pd(WhiteheadIndex(i)), gauss),
    };
    if gauss {
        println!("{}", d.to_gauss());
    } else {
        println!("{d}");
    }
    Ok(())
}

/// Parses `3,5..17`: a range `a..b` continues with the step from the
/// preceding value, or 1 when it comes first.
fn parse_values(s: &str) -> Result<Vec<i64>, Failure> {
    let bad = || input(format!("bad value list {s:?}"));
    let mut out: Vec<i64> = Vec::new();
    for item in s.split(',').map(str::trim).filter(|i| !i.is_empty()) {
        if let Some((a, b)) = item.split_once("..") {
            let a: i64 = a.trim().parse().map_err(|_| bad())?;
            let b: i64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            let step = out.last().map_or(1, |&prev| a - prev);
            if step <= 0 || b < a {
                return Err(bad());
            }
            out.extend((a..=b).step_by(step as usize));
        } else {
            out.push(item.parse().map_err(|_| bad())?);
        }
    }
    Ok(out)
}

fn curves(args: CurvesArgs) -> Outcome {
    let us = parse_values(&args.unknotting)?;
    let cs = parse_values(&args.crossing)?;
    let svg = emit_torus_overlay_svg(&us, &cs, args.samples).map_err(input)?;
    fs::write(&args.svg, svg).map_err(|e| input(format!("{}: {e}", args.svg.display())))
}
