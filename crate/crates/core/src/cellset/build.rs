use std::sync::atomic::{AtomicU64, Ordering};

use super::{window_cells, Cell, CellSet};
use crate::error::{Error, Result};
use crate::exec::{map_range, sort_dedup, Engine};
use crate::ifs::{GridIFS, Symmetry};
use crate::numeric::{RBox, Rational};

/// `n^k` as a cell count per unit length, failing on overflow.
pub fn pow_side(base: i64, level: u32) -> Result<i64> {
    base.checked_pow(level)
        .filter(|&v| v <= i64::MAX / 64)
        .ok_or_else(|| Error::ResourceLimit {
            what: format!("grid side {base}^{level}"),
            needed: (base as u128).saturating_pow(level),
            budget: (i64::MAX / 64) as u128,
        })
}

/// `F_k` seeded from the unit cube: the union of `f_α([0,1]^d)` over words
/// of length `k`.
pub fn iterate_grid(g: &GridIFS, k: u32, engine: &Engine) -> Result<CellSet> {
    let mut hi = [0i64; 3];
    hi[..g.dim()].fill(1);
    let seed = CellSet::from_sorted(g.dim(), g.base(), 0, window_cells(g.dim(), &[0; 3], &hi));
    iterate_from(g, &seed, k, engine)
}

/// `F_k` seeded from the hull tile. The tile is mapped into itself, so these
/// approximations are nested and contain the attractor. For digits in range
/// this coincides with [`iterate_grid`].
pub fn iterate_hull(g: &GridIFS, k: u32, engine: &Engine) -> Result<CellSet> {
    let (lo, hi) = g.hull_tile();
    let seed = CellSet::from_sorted(g.dim(), g.base(), 0, window_cells(g.dim(), &lo, &hi));
    iterate_from(g, &seed, k, engine)
}

/// Applies `A ↦ ∪_d (σ_d(A) + d n^j)` `k` times to a level-`j` seed.
pub fn iterate_from(g: &GridIFS, seed: &CellSet, k: u32, engine: &Engine) -> Result<CellSet> {
    if seed.dim() != g.dim() || seed.base() != g.base() {
        return Err(Error::invalid("seed lives on a different grid"));
    }
    pow_side(g.base(), seed.level() + k)?;
    let mut cur = seed.clone();
    for _ in 0..k {
        cur = step(g, &cur, engine)?;
    }
    Ok(cur)
}

fn step(g: &GridIFS, cur: &CellSet, engine: &Engine) -> Result<CellSet> {
    let needed = cur.len() as u128 * g.len() as u128;
    engine.check("cell iteration", needed)?;
    let side = cur.side();
    let dim = g.dim();
    let parts: Vec<Vec<Cell>> = map_range(engine.exec, g.len(), |i| {
        let d = g.digits()[i];
        let sym = g.syms()[i];
        let ident = sym.is_identity();
        cur.cells()
            .iter()
            .map(|c| {
                let mut out = if ident { *c } else { sym.apply_cell(c, side) };
                for a in 0..dim {
                    out[a] += d[a] * side;
                }
                out
            })
            .collect()
    });
    let mut cells: Vec<Cell> = Vec::with_capacity(needed as usize);
    for p in parts {
        cells.extend(p);
    }
    sort_dedup(engine.exec, &mut cells);
    Ok(CellSet::from_sorted(dim, g.base(), cur.level() + 1, cells))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::Exec;
    use crate::ifs::{e1, e2, e4, f3, Symmetry};

    fn eng() -> Engine {
        Engine::new(Exec::Parallel)
    }

    #[test]
    fn full_digit_set() {
        let g = GridIFS::new(2, 2, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]).unwrap();
        assert_eq!(iterate_grid(&g, 3, &eng()).unwrap().len(), 64);
    }

    #[test]
    fn e1_level_one() {
        let s = iterate_grid(&e1(), 1, &eng()).unwrap();
        assert_eq!(s.len(), 8);
        assert!(s.cells().iter().all(|c| c[0] == 0 || c[0] == 3));
    }

    #[test]
    fn f3_level_one_spans_two_units() {
        let s = iterate_grid(&f3(), 1, &eng()).unwrap();
        assert_eq!(s.len(), 12);
        let (lo, hi) = s.bounds().unwrap();
        assert_eq!((lo[0], hi[0] + 1), (0, 8));
    }

    #[test]
    fn f3_word_collision_at_level_two() {
        let s = iterate_grid(&f3(), 2, &eng()).unwrap();
        assert!(s.len() < 144);
    }

    #[test]
    fn modes_agree() {
        for g in [e1(), e2(), e4(), f3()] {
            let a = iterate_hull(&g, 3, &Engine::new(Exec::Sequential)).unwrap();
            let b = iterate_hull(&g, 3, &eng()).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn symmetric_pieces_match_exact_maps() {
        // Every level-2 cell of E2 must be the image of the unit square under
        // some word map.
        let g = e2();
        let s = iterate_grid(&g, 2, &eng()).unwrap();
        let ifs = g.to_ifs();
        let mut want = Vec::new();
        for i in 0..g.len() {
            for j in 0..g.len() {
                let b = ifs.word_map(&[i, j]).unwrap().image_box(&crate::numeric::RBox::unit(2));
                let c = [
                    (b.lo().coord(0) * &crate::numeric::q(16, 1)).to_i64().unwrap(),
                    (b.lo().coord(1) * &crate::numeric::q(16, 1)).to_i64().unwrap(),
                    0,
                ];
                want.push(c);
            }
        }
        want.sort();
        want.dedup();
        assert_eq!(s.cells(), &want[..]);
        assert!(g.syms().contains(&Symmetry::quarter_turn()));
    }

    #[test]
    fn budget_is_enforced() {
        let e = eng().with_max_cells(100);
        assert!(matches!(
            iterate_grid(&e4(), 3, &e),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn nested_hull_iterates() {
        for g in [e1(), e2(), e4(), f3()] {
            let e = eng();
            let mut prev = iterate_hull(&g, 0, &e).unwrap();
            for k in 1..=4 {
                let cur = iterate_hull(&g, k, &e).unwrap();
                let n = g.base();
                for c in cur.cells() {
                    let mut up = *c;
                    for a in 0..g.dim() {
                        up[a] = c[a].div_euclid(n);
                    }
                    assert!(prev.contains(&up), "k={k} cell {c:?}");
                }
                prev = cur;
            }
        }
    }
}

/// Cells of the hull-seeded `F_k` that meet the closed box `region`, found
/// by a word search that prunes every prefix whose tile image misses it.
pub fn iterate_region(g: &GridIFS, k: u32, region: &RBox, engine: &Engine) -> Result<CellSet> {
    let dim = g.dim();
    if region.dim() != dim {
        return Err(Error::invalid("region dimension differs from the system"));
    }
    let n = g.base();
    let side = pow_side(n, k)?;
    let nk = Rational::int(side);
    let mut rlo = [0i64; 3];
    let mut rhi = [0i64; 3];
    for a in 0..dim {
        rlo[a] = (region.lo().coord(a) * &nk)
            .ceil()
            .try_into()
            .map_err(|_| Error::invalid("region too large"))?;
        rhi[a] = (region.hi().coord(a) * &nk)
            .floor_i64()
            .ok_or_else(|| Error::invalid("region too large"))?;
    }
    let (tlo, thi) = g.hull_tile();
    let tile = window_cells(dim, &tlo, &thi);
    let pow: Vec<i64> = (0..=k).map(|j| n.pow(j)).collect();
    // Image of the tile under x ↦ (σ(x) + D) / n^j, as integer bounds.
    let meets = |sym: &Symmetry, d: &Cell, j: u32| -> bool {
        let scale = pow[(k - j) as usize];
        (0..dim).all(|i| {
            let p = sym.perm()[i] as usize;
            let (a, b) = if sym.flips()[i] {
                (1 - thi[p], 1 - tlo[p])
            } else {
                (tlo[p], thi[p])
            };
            (a + d[i]) * scale <= rhi[i] && (b + d[i]) * scale >= rlo[i]
        })
    };
    let produced = AtomicU64::new(0);
    let budget = engine.max_cells.min(u64::MAX as u128) as u64;
    let parts: Vec<Result<Vec<Cell>>> = map_range(engine.exec, g.len().max(1), |first| {
        let mut out = Vec::new();
        let mut stack: Vec<(Symmetry, Cell, u32)> = Vec::new();
        if k == 0 {
            if first == 0 {
                stack.push((Symmetry::identity(dim), [0; 3], 0));
            }
        } else {
            let (s, d) = child(g, &Symmetry::identity(dim), &[0; 3], first);
            stack.push((s, d, 1));
        }
        while let Some((sym, d, j)) = stack.pop() {
            if !meets(&sym, &d, j) {
                continue;
            }
            if j == k {
                for u in &tile {
                    let mut c = [0; 3];
                    for i in 0..dim {
                        let p = sym.perm()[i] as usize;
                        c[i] = if sym.flips()[i] { -u[p] } else { u[p] } + d[i];
                    }
                    if (0..dim).all(|i| c[i] <= rhi[i] && c[i] + 1 >= rlo[i]) {
                        out.push(c);
                    }
                }
                if produced.fetch_add(tile.len() as u64, Ordering::Relaxed) > budget {
                    return Err(Error::ResourceLimit {
                        what: "region iteration".into(),
                        needed: budget as u128 + 1,
                        budget: budget as u128,
                    });
                }
                continue;
            }
            for i in (0..g.len()).rev() {
                let (s, dd) = child(g, &sym, &d, i);
                stack.push((s, dd, j + 1));
            }
        }
        Ok(out)
    });
    let mut cells = Vec::new();
    for p in parts {
        cells.extend(p?);
    }
    sort_dedup(engine.exec, &mut cells);
    Ok(CellSet::from_sorted(dim, n, k, cells))
}

/// `f_α ∘ f_i` from `f_α(x) = (σ(x) + D) / n^j`:
/// `D' = n D + P_σ d_i + (n - 1) c_σ`, `σ' = σ ∘ σ_i`.
fn child(g: &GridIFS, sym: &Symmetry, d: &Cell, i: usize) -> (Symmetry, Cell) {
    let n = g.base();
    let di = g.digits()[i];
    let mut out = [0; 3];
    for a in 0..g.dim() {
        let p = sym.perm()[a] as usize;
        let (lin, c) = if sym.flips()[a] { (-di[p], 1) } else { (di[p], 0) };
        out[a] = n * d[a] + lin + (n - 1) * c;
    }
    (sym.compose(&g.syms()[i]), out)
}
