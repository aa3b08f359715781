//! Execution mode for the data-parallel kernels.
//!
//! With the `parallel` feature (default) the kernels fan out over rayon's
//! global pool; without it every mode runs sequentially. Results never depend
//! on the mode.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over threads.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }
}

/// Maps `f` over `items`, in parallel when enabled, preserving order.
pub(crate) fn map_collect<T, R, F>(exec: Exec, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Maps `f` over a range of indices, preserving order.
pub(crate) fn map_range<R, F>(exec: Exec, n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return (0..n).into_par_iter().map(f).collect();
    }
    let _ = exec;
    (0..n).map(f).collect()
}

pub(crate) fn sort_dedup<T: Ord + Send>(exec: Exec, v: &mut Vec<T>) {
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        v.par_sort_unstable();
        v.dedup();
        return;
    }
    let _ = exec;
    v.sort_unstable();
    v.dedup();
}

/// Environment variable overriding the default cell budget.
pub const MAX_CELLS_ENV: &str = "FRACTOPO_MAX_CELLS";

/// Default cap on the number of cells or boxes a single construction may
/// hold.
pub const DEFAULT_MAX_CELLS: u128 = 1 << 25;

/// Execution settings threaded through the heavy kernels.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Engine {
    pub exec: Exec,
    pub max_cells: u128,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(Exec::default())
    }
}

impl Engine {
    /// Reads the budget from the environment, falling back to the default.
    pub fn new(exec: Exec) -> Self {
        let max_cells = std::env::var(MAX_CELLS_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_MAX_CELLS);
        Engine { exec, max_cells }
    }

    pub fn sequential() -> Self {
        Engine::new(Exec::Sequential)
    }

    pub fn with_max_cells(mut self, max_cells: u128) -> Self {
        self.max_cells = max_cells;
        self
    }

    pub(crate) fn check(&self, what: &str, needed: u128) -> crate::Result<()> {
        if needed > self.max_cells {
            return Err(crate::Error::ResourceLimit {
                what: what.to_string(),
                needed,
                budget: self.max_cells,
            });
        }
        Ok(())
    }
}
