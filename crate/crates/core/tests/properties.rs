mod common;

use proptest::prelude::*;

use fractopo::cellset::{cover_boxes, iterate_grid, iterate_hull};
use fractopo::certificates::{
    cantor_projection, disjointness, invariant_subset, parse_expr, verify_interval_identity, Witness,
};
use fractopo::exec::Engine;
use fractopo::ifs::{e1, e4_projection, f3, carpet, GridIFS, IFSystem};
use fractopo::numeric::{q, RBox, RPoint, Rational};
use fractopo::topology::{
    complement_analysis, component_count_profile, is_connected_exact, label_components, Adjacency,
};

fn digit_set(n: i64) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let cells = (n * n) as usize;
    prop::collection::btree_set(0..cells, 2..=cells).prop_map(move |s| {
        s.into_iter().map(|i| vec![i as i64 % n, i as i64 / n]).collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pasting_keeps_far_components(seed in any::<u64>()) {
        prop_assert_eq!(common::pasting(&mut common::rng(seed), 4), Ok(()));
    }

    #[test]
    fn duality_on_masks(seed in any::<u64>()) {
        prop_assert_eq!(common::duality(&mut common::rng(seed), 8), Ok(()));
    }

    #[test]
    fn brick_wall_paths(seed in any::<u64>()) {
        prop_assert_eq!(common::brick_wall(&mut common::rng(seed), 4), Ok(()));
    }

    #[test]
    fn profiles_never_decrease(d in digit_set(3)) {
        let g = GridIFS::new(2, 3, d).unwrap();
        let p = component_count_profile(&g, 4, &Engine::default()).unwrap();
        prop_assert!(p.windows(2).all(|w| w[0] <= w[1]), "{:?}", p);
    }

    #[test]
    fn bitmap_oracle_matches_labeling(d in digit_set(3)) {
        let g = GridIFS::new(2, 3, d).unwrap();
        let e = Engine::default();
        let by_label = (1..=4).all(|k| {
            let f = iterate_grid(&g, k, &e).unwrap();
            label_components(&f, Adjacency::Foreground, &e).count == 1
        });
        prop_assert_eq!(common::levelwise_connected(&g, 4), by_label);
    }

    #[test]
    fn exact_connectedness_is_levelwise(d in digit_set(3)) {
        let g = GridIFS::new(2, 3, d).unwrap();
        let exact = is_connected_exact(&g).unwrap();
        let level = common::levelwise_connected(&g, 5);
        // A split level refutes connectedness outright.
        prop_assert!(!exact || level);
        prop_assert_eq!(exact, level);
    }

    #[test]
    fn identities_are_symmetric(m in 2u32..7) {
        let ex = |s: &str| parse_expr(s).unwrap();
        for (a, b) in [("[0,1]", "E | 1/2 E"), ("E", "1/4 E | [1/2,1]"), ("F", "1/16 F | [1/4,1/2]")] {
            let ab = verify_interval_identity(&ex(a), &ex(b), m, None).unwrap();
            let ba = verify_interval_identity(&ex(b), &ex(a), m, None).unwrap();
            prop_assert_eq!(ab.status, ba.status);
        }
    }

    #[test]
    fn identities_survive_window_shrinking(num in 1i64..64) {
        let ex = |s: &str| parse_expr(s).unwrap();
        let lo = q(1, 4096);
        let hi = Rational::one() - q(num, 128);
        let c = verify_interval_identity(&ex("[0,1]"), &ex("E | 1/2 E"), 6, Some((lo, hi))).unwrap();
        prop_assert!(c.is_proved());
    }
}

#[test]
fn nesting_on_corpus() {
    assert_eq!(common::nesting(4_000_000), Ok(()));
}

#[test]
fn scaled_arcs_on_corpus() {
    assert_eq!(common::scaled_arcs(5_000_000), Ok(()));
}

#[test]
fn corpus_profiles_never_decrease() {
    let e = Engine::default();
    for (name, g) in common::corpus_grids() {
        let p = component_count_profile(&g, 4, &e).unwrap();
        assert!(p.windows(2).all(|w| w[0] <= w[1]), "{name}: {p:?}");
    }
}

/// Re-labels the periodic complement on an `m × m` window without torus
/// identification; returns the largest component diameter bound in units.
fn window_diameter(g: &GridIFS, k: u32, m: i64) -> Rational {
    let e = Engine::default();
    let h = iterate_hull(g, k, &e).unwrap().periodic_window([m, m, 0], &e).unwrap();
    let comp = h.complement_cells(&e).unwrap();
    let lab = label_components(&comp, Adjacency::Background, &e);
    lab.components.iter().map(|c| c.diameter_lb.clone()).max().unwrap()
}

#[test]
fn wrapping_components_are_long() {
    for g in [e4_projection(), e1()] {
        let (_, _, rep) = complement_analysis(&g, 2, &Engine::default()).unwrap();
        assert!(!rep.wrapping.is_empty());
        let d3 = window_diameter(&g, 2, 3);
        let d5 = window_diameter(&g, 2, 5);
        assert!(d3 >= q(2, 1), "{d3}");
        assert!(d5 >= q(4, 1) && d5 > d3, "{d5}");
    }
    // The carpet's complement does not wrap and stays bounded.
    let (_, _, rep) = complement_analysis(&carpet(), 2, &Engine::default()).unwrap();
    assert!(rep.wrapping.is_empty());
    assert!(window_diameter(&carpet(), 2, 5) < q(1, 1));
}

fn sample_points(b: &RBox, steps: i64) -> Vec<RPoint> {
    let axes: Vec<Vec<Rational>> = (0..b.dim())
        .map(|a| {
            let (lo, hi) = (b.lo().coord(a), b.hi().coord(a));
            (0..=steps).map(|i| lo + &((hi - lo) * q(i, steps))).collect()
        })
        .collect();
    let mut pts = vec![vec![]];
    for ax in axes {
        pts = pts
            .into_iter()
            .flat_map(|p: Vec<Rational>| {
                ax.iter().map(move |x| {
                    let mut p = p.clone();
                    p.push(x.clone());
                    p
                })
            })
            .collect();
    }
    pts.into_iter().map(|p| RPoint::new(p).unwrap()).collect()
}

#[test]
fn proved_subsets_lie_in_the_cover() {
    let e = Engine::default();
    let s = f3().to_ifs();
    let seg = RBox::from_bounds(&[(q(1, 1), q(7, 3)), (q(1, 1), q(1, 1))]).unwrap();
    assert!(invariant_subset(&s, &seg).unwrap().is_proved());
    let cover = cover_boxes(&s, &q(1, 64), None, &e).unwrap();
    for p in sample_points(&seg, 48) {
        assert!(cover.boxes().iter().any(|b| b.contains_point(&p)), "{p} uncovered");
    }
}

#[test]
fn disjointness_is_stable_in_the_level() {
    let e = Engine::default();
    let s = f3().to_ifs();
    for j in 1..=3 {
        let x = Rational::one() - q(3, 8) * q(1, 4).pow(j);
        let line = RBox::from_bounds(&[(x.clone(), x), (q(0, 1), q(1, 1))]).unwrap();
        let first = disjointness(&s, &line, 6, &e).unwrap();
        let Witness::Separation { level, .. } = first.witness else { panic!("line {j} not separated") };
        for kmax in level..=level + 2 {
            assert!(disjointness(&s, &line, kmax, &e).unwrap().is_proved());
        }
    }
}

#[test]
fn cantor_projection_implies_growing_counts() {
    let e = Engine::default();
    let k = GridIFS::new(1, 4, vec![vec![0], vec![3]]).unwrap();
    assert!(cantor_projection(&k.to_ifs(), 0, 2, &e).unwrap().is_proved());
    let p = component_count_profile(&k, 4, &e).unwrap();
    assert!(p.windows(2).all(|w| w[0] < w[1]), "{p:?}");
    // The strips project onto the same Cantor set along x.
    let strips: IFSystem = e1().to_ifs();
    assert!(cantor_projection(&strips, 0, 2, &e).unwrap().is_proved());
    let shadow = GridIFS::new(1, 4, e1().project_digits(1).unwrap()).unwrap();
    assert_eq!(component_count_profile(&shadow, 4, &e).unwrap(), p);
}
