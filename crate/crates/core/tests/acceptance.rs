//! Acceptance run: criteria 1 to 8, each under its wall-clock limit. Prints
//! one line per criterion and fails if any criterion fails.

mod common;

use std::time::{Duration, Instant};

use fractopo::certificates::{
    cantor_projection, disjointness, invariant_subset, osc_violation_witness, parse_expr, section_equation,
    section_equation_cover, verify_interval_identity, ExpectedSection, SectionMode, Witness,
};
use fractopo::corpus::{run_scenario, scenario_names};
use fractopo::exec::Engine;
use fractopo::ifs::{e1, e4, e4_projection, f3, g_cube, g_parts, moran_dimension, x_strip};
use fractopo::numeric::{q, RBox, RPoint, Rational};
use fractopo::topology::{
    classify, complement_analysis, component_count_profile, is_connected_exact, local_component_census,
    threshold_value, Verdict,
};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn comb_cube() -> Outcome {
    let e = Engine::default();
    let mut digits = e4().project_digits(0).map_err(err)?;
    digits.sort();
    let want = vec![vec![0, 0], vec![0, 2], vec![1, 0], vec![2, 0], vec![2, 1]];
    ensure!(digits == want, "projected digits {digits:?}");
    let shadow = e4_projection();
    let (_, _, wrap) = complement_analysis(&shadow, 2, &e).map_err(err)?;
    let dirs: Vec<[i64; 2]> = wrap.directions().iter().map(|d| [d[0], d[1]]).collect();
    ensure!(dirs == vec![[1, 0]], "wrap directions {dirs:?}");
    let c = classify(&shadow, 3, &e).map_err(err)?;
    ensure!(
        matches!(c.verdict, Verdict::SegmentsOrPoints { direction: Some(d) } if d[..2] == [1, 0]),
        "verdict {:?}",
        c.verdict
    );
    let g = e4();
    let find = |d: [i64; 3]| g.digits().iter().position(|x| *x == d).unwrap();
    let comb = ExpectedSection::Images(vec![(find([0, 2, 0]), q(1, 1)), (find([0, 2, 1]), q(0, 1))]);
    for k in [2, 3] {
        let cert = section_equation(&g, 2, &q(1, 3), &comb, k, SectionMode::Component, &e).map_err(err)?;
        ensure!(cert.is_proved(), "section at k={k}: {}", cert.status);
        let Witness::Section { single_component, .. } = cert.witness else {
            return Err("section witness missing".into());
        };
        ensure!(single_component == Some(true), "section cells split in 3D at k={k}");
    }
    Ok("digits, wrap (1,0), segments (1,0), sections k=2,3, one 3D component".into())
}

fn cantor_strips() -> Outcome {
    let e = Engine::default();
    let g = e1();
    let p = component_count_profile(&g, 8, &e).map_err(err)?;
    ensure!(p == vec![2, 4, 8, 16, 32, 64, 128, 256], "profile {p:?}");
    ensure!(!is_connected_exact(&g).map_err(err)?, "reported connected");
    let c = classify(&g, 4, &e).map_err(err)?;
    ensure!(
        matches!(c.verdict, Verdict::SegmentsOrPoints { direction: Some(d) } if d[..2] == [0, 1]),
        "verdict {:?}",
        c.verdict
    );
    Ok("profile 2..256, disconnected, segments (0,1)".into())
}

fn leaves() -> Outcome {
    let e = Engine::default();
    let s = f3().to_ifs();
    let osc = osc_violation_witness(&s, 2, &e).map_err(err)?;
    let Witness::WordPair { first_name, second_name, map, .. } = &osc.witness else {
        return Err(format!("no word pair: {}", osc.status));
    };
    ensure!(
        first_name == "f8∘f9" && second_name == "f9∘f4",
        "pair {first_name}, {second_name}"
    );
    ensure!(map.ratio() == &q(1, 16), "ratio {}", map.ratio());
    ensure!(map.shift().coords() == [q(1, 1), q(15, 16)], "shift {}", map.shift());
    ensure!(map.sym().is_identity(), "rotated composite");
    let seg = RBox::from_bounds(&[(q(1, 1), q(7, 3)), (q(1, 1), q(1, 1))]).map_err(err)?;
    let a = invariant_subset(&s, &seg).map_err(err)?;
    ensure!(a.is_proved(), "segment: {}", a.status);
    let line = RBox::from_bounds(&[(q(5, 8), q(5, 8)), (q(0, 1), q(1, 1))]).map_err(err)?;
    let b = disjointness(&s, &line, 6, &e).map_err(err)?;
    let level = match b.witness {
        Witness::Separation { level, .. } if b.is_proved() => level,
        _ => return Err(format!("line: {}", b.status)),
    };
    // Frozen golden: the first separating level.
    ensure!(level == 1, "separating level {level}");
    let g = f3();
    let x0 = RPoint::new(vec![q(2, 1), q(3, 4)]).map_err(err)?;
    let v = RBox::from_bounds(&[(q(61, 32), q(65, 32)), (q(5, 8), q(7, 8))]).map_err(err)?;
    let mut near = Vec::new();
    for k in 3..=6 {
        near.push(local_component_census(&g, &x0, &v, &q(1, 16), k, &e).map_err(err)?.near);
    }
    ensure!(near.windows(2).all(|w| w[0] < w[1]), "census {near:?}");
    Ok(format!("f8∘f9 = f9∘f4, segment proved, line level {level}, census {near:?}"))
}

fn oracle() -> Outcome {
    let mut r = common::rng(20240601);
    let t = common::oracle_equivalence(&mut r, 300, 6).map_err(err)?;
    ensure!(t.unsound.is_empty(), "automaton connected but a level splits: {:?}", t.unsound);
    ensure!(t.late.is_empty(), "levelwise connected to k=6 but automaton disconnected: {:?}", t.late);
    Ok(format!("{} digit sets, no discrepancies", t.cases))
}

fn intervals_and_g() -> Outcome {
    let e = Engine::default();
    let x = x_strip();
    let sum: Rational = x.maps().iter().map(|m| m.ratio() * m.ratio()).sum();
    ensure!(sum == Rational::one(), "sum of squared ratios {sum}");
    let m = moran_dimension(&x, &q(1, 1_000_000_000)).map_err(err)?;
    ensure!(m.exact == Some(q(2, 1)), "dimension {:?}", m.exact);
    let ex = |s: &str| parse_expr(s).map_err(err);
    for (lhs, rhs) in [
        ("[0,1]", "E | 1/2 E"),
        ("E", "1/4 E | [1/2,1]"),
        ("[0,1/2]", "F | 1/2 F | 1/4 F | 1/8 F"),
        ("F", "1/16 F | [1/4,1/2]"),
    ] {
        let c = verify_interval_identity(&ex(lhs)?, &ex(rhs)?, 6, None).map_err(err)?;
        ensure!(c.is_proved(), "{lhs} = {rhs}: {}", c.status);
    }
    let g = g_cube().map_err(err)?;
    let (lo, hi) = (q(3, 5), q(4, 5));
    let inside = g.maps().iter().filter(|f| {
        let z = f.shift().coord(2);
        &lo < z && z < &hi
    });
    ensure!(inside.count() == 0, "a height shift lies in (3/5, 4/5)");
    let c = cantor_projection(&g, 2, 3, &e).map_err(err)?;
    ensure!(c.is_proved(), "height projection: {}", c.status);
    let parts = g_parts().map_err(err)?;
    for (z0, part) in [(q(0, 1), &parts.bottom), (q(1, 1), &parts.top)] {
        let planar = part.drop_axis(2).ok_or("part mixes heights")?;
        let c = section_equation_cover(
            &g,
            2,
            &z0,
            &planar,
            &q(1, 25),
            Some(&RBox::unit(3)),
            Some(&RBox::unit(2)),
            &e,
        )
        .map_err(err)?;
        ensure!(c.is_proved(), "section at z={z0}: {}", c.status);
    }
    Ok("dimension 2, four identities at m=6, gap, Cantor heights, both faces".into())
}

fn thresholds() -> Outcome {
    for (n, num, den) in [(2, 25, 2), (3, 100, 3), (4, 289, 4)] {
        let t = threshold_value(n).map_err(err)?;
        ensure!(t.coeff == q(num, den), "threshold({n}) = {t}");
        // Rationals just either side of c√2, placed by integer arithmetic:
        // p/10^6 > (a/b)√2  ⟺  p² b² > 2 a² 10^12.
        let (a, b) = (num as i128, den as i128);
        let scale: i128 = 1_000_000;
        let mut p = (t.to_f64() * scale as f64) as i128 - 2;
        while p * p * b * b <= 2 * a * a * scale * scale {
            p += 1;
        }
        let above = Rational::new(p as i64, scale as i64);
        let below = Rational::new((p - 1) as i64, scale as i64);
        ensure!(t.is_exceeded_by(&above) && !t.is_exceeded_by(&below), "comparison at n={n}");
        ensure!(t.exceeds(&below) && !t.exceeds(&above), "comparison at n={n}");
    }
    let (_, _, wrap) = complement_analysis(&e4_projection(), 2, &Engine::default()).map_err(err)?;
    ensure!(
        wrap.threshold.exceeds(&wrap.max_bounded_diameter),
        "bounded diameter {} above {}",
        wrap.max_bounded_diameter,
        wrap.threshold
    );
    Ok("25√2/2, 100√2/3, 289√2/4".into())
}

fn properties() -> Outcome {
    let mut r = common::rng(7);
    common::pasting(&mut r, 200)?;
    common::monotone_profiles(&mut r, 300)?;
    common::duality(&mut r, 500)?;
    common::nesting(4_000_000)?;
    common::brick_wall(&mut r, 100)?;
    common::scaled_arcs(30_000_000)?;
    Ok("pasting 200, monotone 300, duality 500, nesting, brick wall 100, scaled arcs".into())
}

fn determinism() -> Outcome {
    let e = Engine::default();
    let mut images = 0;
    for name in scenario_names() {
        let a = run_scenario(name, &e).map_err(err)?;
        let b = run_scenario(name, &e).map_err(err)?;
        ensure!(a.report.to_json() == b.report.to_json(), "{name}: reports differ");
        ensure!(a.images == b.images, "{name}: images differ");
        images += a.images.len();
    }
    Ok(format!("{} scenarios, {images} images identical", scenario_names().len()))
}

#[test]
fn acceptance() {
    let criteria: [(u32, &str, u64, fn() -> Outcome); 8] = [
        (1, "comb cube chain", 10, comb_cube),
        (2, "Cantor strips", 5, cantor_strips),
        (3, "leaves", 30, leaves),
        (4, "exact vs levelwise connectedness", 60, oracle),
        (5, "interval sets and the path-split cube", 10, intervals_and_g),
        (6, "threshold arithmetic", 10, thresholds),
        (7, "property suites", 120, properties),
        (8, "determinism", 60, determinism),
    ];
    let mut failed = Vec::new();
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let res = run();
        let took = start.elapsed();
        let over = took > Duration::from_secs(limit);
        let line = match (&res, over) {
            (Ok(msg), false) => format!("criterion {id} PASS {name} ({:.2}s / {limit}s): {msg}", took.as_secs_f64()),
            (Ok(msg), true) => format!("criterion {id} FAIL {name} ({:.2}s over {limit}s): {msg}", took.as_secs_f64()),
            (Err(msg), _) => format!("criterion {id} FAIL {name} ({:.2}s): {msg}", took.as_secs_f64()),
        };
        println!("{line}");
        if res.is_err() || over {
            failed.push(id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
