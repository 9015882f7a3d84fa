//! Acceptance criteria, one line each. Run with
//! `cargo test -p vassiliev --test acceptance`.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;

use vassiliev::diagram::Diagram;
use vassiliev::generators::{torus_pd, whitehead_closed_form, whitehead_pd, TorusParams, WhiteheadIndex};
use vassiliev::jones::{invariants_from_jones, InvariantPair, JonesEngine};
use vassiliev::plot::{csv_string, emit_fish_svg, FishOptions};
use vassiliev::table::{bound_audit, bundled_table, compute_all, crossing_maxima, KnotRecord};
use vassiliev::torus::{pseudo_invariants, torus_v2v3, TorusAudit};

/// Lower limit for the pseudo-unknotting number of Wh(10^6).
const PSEUDO_LIMIT_FLOOR: f64 = 1.99;
const LARGE_INDEX: i64 = 1_000_000;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration) -> Check {
    ensure(elapsed <= limit, || format!("took {elapsed:?}, limit {limit:?}"))
}

fn engine() -> JonesEngine {
    JonesEngine::default()
}

fn evaluated_table() -> Result<Vec<KnotRecord>, String> {
    let mut recs = bundled_table();
    let failures = compute_all(&mut recs, &engine());
    ensure(failures.is_empty(), || format!("{} knots failed, first {}", failures.len(), failures[0].name))?;
    Ok(recs)
}

fn trefoil_anchor() -> Check {
    let start = Instant::now();
    let d: Diagram = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]".parse().map_err(|e| format!("{e}"))?;
    let e = engine();
    let v = e.v2_v3(&d).map_err(|e| e.to_string())?;
    let m = e.v2_v3(&d.mirror()).map_err(|e| e.to_string())?;
    ensure(v == InvariantPair::new(1, 1), || format!("trefoil gave {v}"))?;
    ensure(m == InvariantPair::new(1, -1), || format!("mirror gave {m}"))?;
    within(start.elapsed(), Duration::from_secs(1))
}

fn table_maxima() -> Check {
    let start = Instant::now();
    let rows = crossing_maxima(&evaluated_table()?);
    let v2: Vec<i64> = rows.iter().map(|r| r.max_abs_v2).collect();
    let v3: Vec<i64> = rows.iter().map(|r| r.max_abs_v3).collect();
    let cs: Vec<u32> = rows.iter().map(|r| r.crossing_number).collect();
    ensure(cs == (3..=10).collect::<Vec<_>>(), || format!("crossing numbers {cs:?}"))?;
    ensure(v2 == [1, 1, 3, 2, 6, 5, 10, 9], || format!("max |v2| {v2:?}"))?;
    ensure(v3 == [1, 0, 5, 1, 14, 10, 30, 25], || format!("max |v3| {v3:?}"))?;
    within(start.elapsed(), Duration::from_secs(60))
}

fn whitehead_table() -> Check {
    let e = engine();
    let expected = [(-3, 3), (-2, 1), (-1, 0), (0, 0), (1, 1), (2, 3), (3, 6), (4, 10)];
    for (i, (v2, v3)) in (-3..=4).zip(expected) {
        let got = e.v2_v3(&whitehead_pd(WhiteheadIndex(i))).map_err(|e| e.to_string())?;
        ensure(got == InvariantPair::new(v2, v3), || format!("Wh({i}) gave {got}"))?;
        ensure(whitehead_closed_form(WhiteheadIndex(i)) == got, || format!("closed form differs at {i}"))?;
    }
    let table: BTreeMap<String, KnotRecord> = evaluated_table()?.into_iter().map(|r| (r.name.clone(), r)).collect();
    for (i, name) in [(-3, "8_1"), (-2, "6_1"), (-1, "4_1"), (1, "3_1"), (2, "5_2"), (3, "7_2"), (4, "9_2")] {
        let w = whitehead_closed_form(WhiteheadIndex(i));
        let k = table[name].invariants.unwrap();
        ensure((k.v2.abs(), k.v3.abs()) == (w.v2.abs(), w.v3.abs()), || format!("{name} has {k}, Wh({i}) has {w}"))?;
    }
    Ok(())
}

fn torus_diagrams() -> Check {
    let start = Instant::now();
    let e = engine();
    let mut seen = Vec::new();
    for a in 2i64..=15 {
        for b in 2i64..=15 {
            if a.gcd(&b) != 1 {
                continue;
            }
            for (p, q) in [(a, b), (-a, b), (a, -b), (-a, -b)] {
                let t = TorusParams::new(p, q).map_err(|e| e.to_string())?;
                if t.braid_crossings() > 14 {
                    continue;
                }
                let got = e.v2_v3(&torus_pd(t)).map_err(|e| e.to_string())?;
                ensure(got == torus_v2v3(t), || format!("{t}: diagram {got}, closed form {}", torus_v2v3(t)))?;
                seen.push((p, q));
            }
        }
    }
    for required in [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5)] {
        ensure(seen.contains(&required), || format!("T{required:?} not covered"))?;
    }
    within(start.elapsed(), Duration::from_secs(60))
}

fn torus_relations() -> Check {
    let start = Instant::now();
    for p in 2i64..=25 {
        for q in (p + 1)..=25 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let t = TorusParams::new(p, q).unwrap();
            for variant in [t, t.swapped(), t.mirror(), t.swapped().mirror(), TorusParams::new(-p, -q).unwrap()] {
                let audit = TorusAudit::new(variant).map_err(|e| e.to_string())?;
                ensure(audit.all_pass(), || format!("{variant}: a relation fails: {audit:?}"))?;
                ensure(audit.equality_cases_match(), || format!("{variant}: equality cases off: {audit:?}"))?;
            }
        }
    }
    within(start.elapsed(), Duration::from_secs(5))
}

fn crossing_bounds_audit() -> Check {
    let violations = bound_audit(&evaluated_table()?);
    ensure(violations.is_empty(), || format!("{} violations, first {:?}", violations.len(), violations[0]))
}

fn property_suites() -> Check {
    let e = engine();
    let table = evaluated_table()?;
    for r in &table {
        let v = r.invariants.unwrap();
        let m = e.v2_v3(&r.diagram.mirror()).map_err(|e| format!("{}: {e}", r.name))?;
        ensure(m == v.mirror(), || format!("{}: mirror gave {m}, knot {v}", r.name))?;
    }
    let pick = |n: &str| table.iter().find(|r| r.name == n).unwrap();
    let names = ["3_1", "4_1", "5_2"];
    for a in names {
        for b in names {
            let (ka, kb) = (pick(a), pick(b));
            let sum = ka.diagram.connect_sum(&kb.diagram);
            let js = e.jones(&sum).map_err(|e| e.to_string())?;
            let product = e.jones(&ka.diagram).unwrap() * e.jones(&kb.diagram).unwrap();
            ensure(js == product, || format!("J({a} # {b}) is not the product"))?;
            let v = invariants_from_jones(&js).map_err(|e| e.to_string())?;
            let expected = ka.invariants.unwrap() + kb.invariants.unwrap();
            ensure(v == expected, || format!("{a} # {b}: {v} != {expected}"))?;
        }
    }
    Ok(())
}

fn pseudo_unknotting(i: i64) -> Result<f64, String> {
    pseudo_invariants(whitehead_closed_form(WhiteheadIndex(i)))
        .map(|p| p.unknotting.to_f64())
        .map_err(|e| format!("Wh({i}): {e}"))
}

fn pseudo_limit() -> Check {
    let mut indices: Vec<i64> = (1..=20_000).collect();
    indices.extend((20_000..=LARGE_INDEX).step_by(1_000).skip(1));
    let mut prev = f64::NEG_INFINITY;
    for i in indices {
        let u = pseudo_unknotting(i)?;
        ensure((1.0..2.0).contains(&u), || format!("u~(Wh({i})) = {u} outside [1, 2)"))?;
        ensure(u > prev, || format!("u~ not increasing at i = {i}: {prev} then {u}"))?;
        prev = u;
    }
    let last = pseudo_unknotting(LARGE_INDEX)?;
    ensure(last > PSEUDO_LIMIT_FLOOR, || format!("u~(Wh({LARGE_INDEX})) = {last}"))
}

fn determinism() -> Check {
    let (a, b) = (evaluated_table()?, evaluated_table()?);
    for c in 3..=10 {
        let opts = FishOptions::default();
        ensure(emit_fish_svg(&a, c, opts) == emit_fish_svg(&b, c, opts), || format!("fish plot {c} differs"))?;
    }
    let (ca, cb) = (csv_string(&a).map_err(|e| e.to_string())?, csv_string(&b).map_err(|e| e.to_string())?);
    ensure(ca == cb, || "CSV differs".to_owned())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("trefoil anchor", trefoil_anchor),
        ("crossing-number maxima c = 3..10", table_maxima),
        ("Whitehead doubles i = -3..4", whitehead_table),
        ("torus diagrams vs closed form", torus_diagrams),
        ("torus relations, exact", torus_relations),
        ("crossing-number bound audit", crossing_bounds_audit),
        ("mirror, connect sum, multiplicativity", property_suites),
        ("pseudo-unknotting limit on Wh(i)", pseudo_limit),
        ("deterministic CSV and SVG", determinism),
    ];
    let mut failed = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let ms = start.elapsed().as_millis();
        match result {
            Ok(()) => println!("PASS {} {name} ({ms} ms)", n + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name} ({ms} ms): {why}", n + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
