//! Seeded property checks shared by the acceptance run and the property
//! suites. Each returns the first counterexample as an error message.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use fractopo::cellset::{iterate_grid, iterate_hull, pow_side, Cell, CellSet};
use fractopo::exec::Engine;
use fractopo::ifs::{build_corpus, GridIFS, CORPUS};
use fractopo::topology::{component_count_profile, crossing_path, is_connected_exact, label_components, Adjacency};

pub type Check = Result<(), String>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn cell(x: i64, y: i64) -> Cell {
    [x, y, 0]
}

/// Planar cell set on a `2^level` grid.
pub fn planar(level: u32, cells: Vec<Cell>) -> CellSet {
    CellSet::new(2, 2, level, cells).unwrap()
}

/// All digit sets of `{0..n-1}^2` with at least two digits, in a fixed order.
pub fn all_digit_sets(n: i64) -> Vec<Vec<Vec<i64>>> {
    let all: Vec<Vec<i64>> = (0..n).flat_map(|y| (0..n).map(move |x| vec![x, y])).collect();
    (1u32..1 << all.len())
        .filter(|m| m.count_ones() >= 2)
        .map(|m| (0..all.len()).filter(|i| m >> i & 1 == 1).map(|i| all[i].clone()).collect())
        .collect()
}

/// Uniform digit count in `2..=n^dim`, then a uniform subset of that size.
pub fn random_digits(r: &mut ChaCha8Rng, dim: usize, n: i64) -> Vec<Vec<i64>> {
    let mut all: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..dim {
        all = all
            .into_iter()
            .flat_map(|p| {
                (0..n).map(move |x| {
                    let mut q = p.clone();
                    q.push(x);
                    q
                })
            })
            .collect();
    }
    let size = r.random_range(2..=all.len());
    all.shuffle(r);
    let mut d: Vec<Vec<i64>> = all.into_iter().take(size).collect();
    d.sort();
    d
}

/// Connected components by plain BFS, as a sorted list of sorted cell lists.
pub fn bfs_components(cells: &[Cell], adj: Adjacency) -> Vec<Vec<Cell>> {
    let set: HashSet<Cell> = cells.iter().copied().collect();
    let steps = adj.steps(2);
    let mut seen: HashSet<Cell> = HashSet::new();
    let mut out = Vec::new();
    for &c in cells {
        if !seen.insert(c) {
            continue;
        }
        let mut comp = vec![c];
        let mut q = VecDeque::from([c]);
        while let Some(x) = q.pop_front() {
            for s in &steps {
                let nb = [x[0] + s[0], x[1] + s[1], 0];
                if set.contains(&nb) && seen.insert(nb) {
                    comp.push(nb);
                    q.push_back(nb);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out.sort();
    out
}

pub fn label_partition(c: &CellSet, adj: Adjacency) -> Vec<Vec<Cell>> {
    let lab = label_components(c, adj, &Engine::default());
    let mut out: Vec<Vec<Cell>> = lab
        .members()
        .into_iter()
        .map(|m| {
            let mut v: Vec<Cell> = m.into_iter().map(|i| c.cells()[i]).collect();
            v.sort();
            v
        })
        .collect();
    out.sort();
    out
}

fn cheb(a: &Cell, b: &Cell) -> i64 {
    (a[0] - b[0]).abs().max((a[1] - b[1]).abs())
}

/// A component `Y1` of `Y` at Chebyshev distance ≥ 2 from `Z` is a
/// component of `Y ∪ Z`.
pub fn pasting(r: &mut ChaCha8Rng, cases: usize) -> Check {
    let level = 4;
    let side = 16;
    for case in 0..cases {
        let dy = r.random_range(0.1..0.5);
        let dz = r.random_range(0.1..0.5);
        let y: Vec<Cell> = (0..side)
            .flat_map(|a| (0..side).map(move |b| cell(a, b)))
            .filter(|_| r.random_bool(dy))
            .collect();
        if y.is_empty() {
            continue;
        }
        let ys = planar(level, y.clone());
        let comps = label_partition(&ys, Adjacency::Foreground);
        let y1 = comps[r.random_range(0..comps.len())].clone();
        let z: Vec<Cell> = (0..side)
            .flat_map(|a| (0..side).map(move |b| cell(a, b)))
            .filter(|c| r.random_bool(dz) && y1.iter().all(|d| cheb(c, d) >= 2))
            .collect();
        let mut u = y.clone();
        u.extend(z);
        let us = planar(level, u);
        if !label_partition(&us, Adjacency::Foreground).contains(&y1) {
            return Err(format!("pasting case {case}: component of Y lost in Y ∪ Z"));
        }
    }
    Ok(())
}

/// Component counts of `F_k` never decrease, k ≤ 5.
pub fn monotone_profiles(r: &mut ChaCha8Rng, systems: usize) -> Check {
    let e = Engine::default();
    for case in 0..systems {
        let (dim, n) = match case % 4 {
            0 => (2, 2),
            1 => (2, 3),
            2 => (2, 4),
            _ => (3, 2),
        };
        let g = GridIFS::new(dim, n, random_digits(r, dim, n)).unwrap();
        let p = component_count_profile(&g, 5, &e).map_err(|x| x.to_string())?;
        if p.windows(2).any(|w| w[0] > w[1]) {
            return Err(format!("profile {p:?} decreases for {:?}", g.digits()));
        }
    }
    Ok(())
}

/// Foreground (Chebyshev) and background (face) labelings of a random mask
/// agree with BFS; in every diagonal 2×2 block the foreground pair shares a
/// label, and the background pair shares one only when a face path joins
/// them. Exactly one of a top-bottom foreground crossing and a left-right
/// background crossing exists.
pub fn duality(r: &mut ChaCha8Rng, masks: usize) -> Check {
    for case in 0..masks {
        let (w, h) = (r.random_range(2..=10), r.random_range(2..=10));
        let p = r.random_range(0.2..0.8);
        let window: Vec<Cell> = (0..w).flat_map(|x| (0..h).map(move |y| cell(x, y))).collect();
        let fg: Vec<Cell> = window.iter().copied().filter(|_| r.random_bool(p)).collect();
        // Force one diagonal block so every mask exercises the corner rule.
        let (x, y) = (r.random_range(0..w - 1), r.random_range(0..h - 1));
        let mut fg: Vec<Cell> = fg.into_iter().filter(|c| *c != cell(x + 1, y) && *c != cell(x, y + 1)).collect();
        for c in [cell(x, y), cell(x + 1, y + 1)] {
            if !fg.contains(&c) {
                fg.push(c);
            }
        }
        let bg: Vec<Cell> = window.iter().copied().filter(|c| !fg.contains(c)).collect();
        let fs = planar(4, fg.clone());
        let bs = planar(4, bg.clone());
        let fl = label_partition(&fs, Adjacency::Foreground);
        let bl = label_partition(&bs, Adjacency::Background);
        if fl != bfs_components(&fg, Adjacency::Foreground) || bl != bfs_components(&bg, Adjacency::Background) {
            return Err(format!("mask {case}: labeling disagrees with BFS"));
        }
        let comp_of = |parts: &[Vec<Cell>], c: &Cell| parts.iter().position(|p| p.contains(c));
        for bx in 0..w - 1 {
            for by in 0..h - 1 {
                let quad = [cell(bx, by), cell(bx + 1, by + 1), cell(bx + 1, by), cell(bx, by + 1)];
                let inf = quad.map(|c| fg.contains(&c));
                for (f0, f1, b0, b1) in [(0, 1, 2, 3), (2, 3, 0, 1)] {
                    if inf[f0] && inf[f1] && !inf[b0] && !inf[b1] {
                        if comp_of(&fl, &quad[f0]) != comp_of(&fl, &quad[f1]) {
                            return Err(format!("mask {case}: diagonal foreground pair split"));
                        }
                        let joined = comp_of(&bl, &quad[b0]) == comp_of(&bl, &quad[b1]);
                        let oracle = bfs_components(&bg, Adjacency::Background)
                            .iter()
                            .any(|p| p.contains(&quad[b0]) && p.contains(&quad[b1]));
                        if joined != oracle {
                            return Err(format!("mask {case}: diagonal background pair mislabeled"));
                        }
                    }
                }
            }
        }
        let fg_cross = fl.iter().any(|p| p.iter().any(|c| c[1] == 0) && p.iter().any(|c| c[1] == h - 1));
        let bg_cross = bl.iter().any(|p| p.iter().any(|c| c[0] == 0) && p.iter().any(|c| c[0] == w - 1));
        if fg_cross == bg_cross {
            return Err(format!("mask {case}: crossings fg={fg_cross} bg={bg_cross}"));
        }
    }
    Ok(())
}

pub fn corpus_grids() -> Vec<(&'static str, GridIFS)> {
    CORPUS
        .iter()
        .filter_map(|c| build_corpus(c.name).ok()?.as_grid().cloned().map(|g| (c.name, g)))
        .collect()
}

/// Every `(k+1)`-cell of the hull iterate lies in a `k`-cell of the
/// previous one, k ≤ 5.
pub fn nesting(max_cells: usize) -> Check {
    let e = Engine::default();
    for (name, g) in corpus_grids() {
        let n = g.base();
        let mut prev = iterate_hull(&g, 0, &e).map_err(|x| x.to_string())?;
        for k in 1..=5 {
            let next = iterate_hull(&g, k, &e).map_err(|x| x.to_string())?;
            if next.len() > max_cells {
                break;
            }
            for c in next.cells() {
                let mut p = [0i64; 3];
                for a in 0..g.dim() {
                    p[a] = c[a].div_euclid(n);
                }
                if !prev.contains(&p) {
                    return Err(format!("{name}: cell {c:?} of level {k} has no parent"));
                }
            }
            prev = next;
        }
    }
    Ok(())
}

/// Random closed-disjoint `A`, `B` with `A` off the right column and `B` off
/// the left column always admit a bottom-to-top free path.
pub fn brick_wall(r: &mut ChaCha8Rng, pairs: usize) -> Check {
    for case in 0..pairs {
        let (w, h) = (r.random_range(3..=16i64), r.random_range(1..=16i64));
        let pa = r.random_range(0.1..0.7);
        let pb = r.random_range(0.1..0.7);
        let a: Vec<Cell> = (0..w - 1)
            .flat_map(|x| (0..h).map(move |y| cell(x, y)))
            .filter(|_| r.random_bool(pa))
            .collect();
        let b: Vec<Cell> = (1..w)
            .flat_map(|x| (0..h).map(move |y| cell(x, y)))
            .filter(|c| r.random_bool(pb) && a.iter().all(|d| cheb(c, d) >= 2))
            .collect();
        let sa = planar(4, a.clone());
        let sb = planar(4, b.clone());
        let path = crossing_path(&sa, &sb, (cell(0, 0), cell(w, h))).map_err(|x| x.to_string())?;
        let Some(pts) = path else {
            return Err(format!("pair {case}: no crossing path ({w}x{h})"));
        };
        // Interior points are centres of free cells, consecutive ones face
        // neighbours.
        let cells: Vec<Cell> = pts[1..pts.len() - 1]
            .iter()
            .map(|p| {
                let x = p.coord(0) * &fractopo::numeric::Rational::int(16);
                let y = p.coord(1) * &fractopo::numeric::Rational::int(16);
                cell(x.floor_i64().unwrap(), y.floor_i64().unwrap())
            })
            .collect();
        let bad = cells.iter().any(|c| a.contains(c) || b.contains(c))
            || cells.windows(2).any(|s| (s[0][0] - s[1][0]).abs() + (s[0][1] - s[1][1]).abs() != 1)
            || cells[0][1] != 0
            || cells.last().unwrap()[1] != h - 1;
        if bad {
            return Err(format!("pair {case}: malformed path"));
        }
    }
    Ok(())
}

/// For standard corpus systems and `N ≤ 3`: every level-`(N+k)` cell inside
/// an `N`-cell of `F_N` but outside `F_{N+k}`, scaled by `n^N` and reduced
/// mod 1, is a cell outside `H_k`, for `k ≤ 3`. Also walks one background
/// path per `N`-cell and checks its scaled image the same way.
pub fn scaled_arcs(max_cells: usize) -> Check {
    let e = Engine::default();
    for (name, g) in corpus_grids().into_iter().filter(|(_, g)| g.is_standard()) {
        let n = g.base();
        let d = g.dim();
        for big_n in 1..=3u32 {
            let f_n = iterate_grid(&g, big_n, &e).map_err(|x| x.to_string())?;
            for k in 1..=3u32 {
                let m = pow_side(n, k).unwrap();
                let local_cells = (m as usize).pow(d as u32);
                if f_n.len() * local_cells > max_cells {
                    continue;
                }
                let fine = iterate_grid(&g, big_n + k, &e).map_err(|x| x.to_string())?;
                let h_k = iterate_grid(&g, k, &e).map_err(|x| x.to_string())?;
                let in_h = |u: &Cell| {
                    let mut v = [0i64; 3];
                    for a in 0..d {
                        v[a] = u[a].rem_euclid(m);
                    }
                    h_k.contains(&v)
                };
                for p in f_n.cells() {
                    let mut free = Vec::new();
                    for idx in 0..local_cells {
                        let mut u = [0i64; 3];
                        let mut rest = idx as i64;
                        for a in 0..d {
                            u[a] = rest % m;
                            rest /= m;
                        }
                        let mut c = [0i64; 3];
                        for a in 0..d {
                            c[a] = p[a] * m + u[a];
                        }
                        if !fine.contains(&c) {
                            if in_h(&u) {
                                return Err(format!("{name}: N={big_n} k={k} cell {c:?} lands in H_k"));
                            }
                            free.push(u);
                        }
                    }
                    // A background path: face-connected run of free local
                    // cells from the first one.
                    if let Some(&start) = free.first() {
                        let set: HashSet<Cell> = free.iter().copied().collect();
                        let mut seen: HashMap<Cell, ()> = HashMap::from([(start, ())]);
                        let mut q = VecDeque::from([start]);
                        while let Some(x) = q.pop_front() {
                            if in_h(&x) {
                                return Err(format!("{name}: scaled path meets H_{k}"));
                            }
                            for s in Adjacency::Background.steps(d) {
                                let mut nb = x;
                                for a in 0..d {
                                    nb[a] += s[a];
                                }
                                if set.contains(&nb) && seen.insert(nb, ()).is_none() {
                                    q.push_back(nb);
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Connectedness of `F_k` for `k = 1..=kmax`, stopping at the first split.
/// Planar, digits in range: each level is a dense bitmap refined from the
/// previous one and flood-filled with Chebyshev steps.
pub fn levelwise_connected(g: &GridIFS, kmax: u32) -> bool {
    let n = g.base() as usize;
    let digits: Vec<(usize, usize)> = g.digits().iter().map(|d| (d[0] as usize, d[1] as usize)).collect();
    let mut side = 1usize;
    let mut bits = vec![true];
    for _ in 1..=kmax {
        let next_side = side * n;
        let mut next = vec![false; next_side * next_side];
        for y in 0..side {
            for x in 0..side {
                if bits[y * side + x] {
                    for &(dx, dy) in &digits {
                        next[(n * y + dy) * next_side + n * x + dx] = true;
                    }
                }
            }
        }
        side = next_side;
        bits = next;
        let total = bits.iter().filter(|&&b| b).count();
        let mut seen = vec![false; bits.len()];
        let start = bits.iter().position(|&b| b).unwrap();
        seen[start] = true;
        let mut stack = vec![start];
        let mut reached = 1;
        while let Some(i) = stack.pop() {
            let (x, y) = ((i % side) as i64, (i / side) as i64);
            for dy in -1..=1i64 {
                for dx in -1..=1i64 {
                    let (u, v) = (x + dx, y + dy);
                    if u < 0 || v < 0 || u >= side as i64 || v >= side as i64 {
                        continue;
                    }
                    let j = v as usize * side + u as usize;
                    if bits[j] && !seen[j] {
                        seen[j] = true;
                        reached += 1;
                        stack.push(j);
                    }
                }
            }
        }
        if reached != total {
            return false;
        }
    }
    true
}

pub struct OracleTally {
    pub cases: usize,
    /// Automaton connected, some level split.
    pub unsound: Vec<Vec<Vec<i64>>>,
    /// Levelwise connected to `kmax`, automaton disconnected.
    pub late: Vec<Vec<Vec<i64>>>,
}

pub fn oracle_equivalence(r: &mut ChaCha8Rng, random: usize, kmax: u32) -> fractopo::Result<OracleTally> {
    let mut sets = all_digit_sets(2).into_iter().map(|d| (2, d)).collect::<Vec<_>>();
    for i in 0..random {
        let n = if i % 2 == 0 { 3 } else { 4 };
        sets.push((n, random_digits(r, 2, n)));
    }
    let mut t = OracleTally {
        cases: sets.len(),
        unsound: vec![],
        late: vec![],
    };
    for (n, d) in sets {
        let g = GridIFS::new(2, n, d.clone())?;
        let exact = is_connected_exact(&g)?;
        let level = levelwise_connected(&g, kmax);
        if exact && !level {
            t.unsound.push(d);
        } else if !exact && level {
            t.late.push(d);
        }
    }
    Ok(t)
}
