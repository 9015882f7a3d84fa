use num_integer::Integer;

use vassiliev::generators::{torus_pd, whitehead_closed_form, whitehead_pd, TorusParams, WhiteheadIndex};
use vassiliev::jones::JonesEngine;
use vassiliev::table::bundled_table;
use vassiliev::torus::torus_v2v3;

#[test]
fn whitehead_doubles_match_closed_form() {
    let engine = JonesEngine::default();
    for i in -5..=6 {
        let w = WhiteheadIndex(i);
        let d = whitehead_pd(w);
        assert_eq!(d.crossing_count(), 2 * i.unsigned_abs() as usize + 2, "Wh({i})");
        assert_eq!(engine.v2_v3(&d).unwrap(), whitehead_closed_form(w), "Wh({i})");
    }
}

#[test]
fn whitehead_doubles_are_twist_knots() {
    let engine = JonesEngine::default();
    let table = bundled_table();
    let jones_of = |name: &str| {
        let rec = table.iter().find(|r| r.name == name).unwrap();
        engine.jones(&rec.diagram).unwrap()
    };
    for (i, name) in [(1, "3_1"), (-1, "4_1"), (2, "5_2"), (-2, "6_1"), (3, "7_2"), (-3, "8_1"), (4, "9_2")] {
        let j = engine.jones(&whitehead_pd(WhiteheadIndex(i))).unwrap();
        let r = jones_of(name);
        assert!(j == r || j == r.invert_variable(), "Wh({i}) is not {name}: {j}");
    }
}

#[test]
fn torus_sweep_matches_closed_form() {
    let engine = JonesEngine::default();
    let mut checked = 0;
    for p in 2i64..=15 {
        for q in (p + 1)..=15 {
            if p.gcd(&q) != 1 {
                continue;
            }
            let t = TorusParams::new(p, q).unwrap();
            if t.braid_crossings() > 14 {
                continue;
            }
            let expected = torus_v2v3(t);
            for variant in [t, t.swapped(), t.mirror(), t.mirror().swapped()] {
                if variant.braid_crossings() > 14 {
                    continue;
                }
                let got = engine.v2_v3(&torus_pd(variant)).unwrap();
                let want = if variant == t || variant == t.swapped() { expected } else { expected.mirror() };
                assert_eq!(got, want, "{variant}");
                assert_eq!(got, torus_v2v3(variant), "{variant}");
                checked += 1;
            }
        }
    }
    assert!(checked >= 20, "only {checked} diagrams checked");
}

#[test]
fn torus_unknots_are_trivial() {
    let engine = JonesEngine::default();
    for (p, q) in [(1, 5), (5, 1), (-1, 4), (1, -1)] {
        let t = TorusParams::new(p, q).unwrap();
        assert_eq!(engine.v2_v3(&torus_pd(t)).unwrap(), Default::default(), "{t}");
    }
}
