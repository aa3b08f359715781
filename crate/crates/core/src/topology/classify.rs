use serde::Serialize;

use super::automaton::{is_connected_exact, neighbor_automaton};
use super::profile::component_count_profile;
use super::wrap::{complement_analysis, WrapReport};
use crate::cellset::{pow_side, Cell};
use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::GridIFS;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    /// `heuristic` is false when the exact piece-graph test applied.
    Connected { heuristic: bool },
    /// Every component is a segment or a point; `direction` is the common
    /// wrap direction of the complement when there is one.
    SegmentsOrPoints { direction: Option<Cell> },
    /// The component-count profile levelled off; never a proof.
    FinitelyMany { count: u128, heuristic: bool },
    Undetermined { level: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    #[serde(flatten)]
    pub verdict: Verdict,
    pub exact_connected: Option<bool>,
    pub survivors: Option<Vec<Cell>>,
    pub profile: Vec<u128>,
    pub wrap_level: Option<u32>,
    pub wrap: Option<WrapReport>,
}

/// Combines the exact piece-graph test, the component profile and torus wrap
/// detection.
pub fn classify(g: &GridIFS, kmax: u32, engine: &Engine) -> Result<Classification> {
    if kmax < 2 {
        return Err(Error::invalid("classification needs kmax ≥ 2"));
    }
    let (exact, survivors) = if g.is_standard() {
        let aut = neighbor_automaton(g)?;
        (Some(is_connected_exact(g)?), Some(aut.survivors))
    } else {
        (None, None)
    };
    let profile = component_count_profile(g, kmax, engine)?;
    let mut out = Classification {
        verdict: Verdict::Undetermined { level: kmax },
        exact_connected: exact,
        survivors,
        profile: profile.clone(),
        wrap_level: None,
        wrap: None,
    };
    if exact == Some(true) {
        out.verdict = Verdict::Connected { heuristic: false };
        return Ok(out);
    }
    let levelwise_connected = profile.iter().all(|&c| c == 1);
    if exact.is_none() && levelwise_connected {
        out.verdict = Verdict::Connected { heuristic: true };
        return Ok(out);
    }
    // A disconnected F_k refutes connectedness of F outright.
    let disconnected = exact == Some(false) || !levelwise_connected;
    if g.is_standard() && g.dim() == 2 && disconnected {
        for k in 1..=kmax {
            let side = pow_side(g.base(), k)? as u128;
            if side * side > engine.max_cells {
                break;
            }
            let (_, _, rep) = complement_analysis(g, k, engine)?;
            if rep.unbounded_complement_certified {
                out.verdict = Verdict::SegmentsOrPoints {
                    direction: rep.common_direction(),
                };
                out.wrap_level = Some(k);
                out.wrap = Some(rep);
                return Ok(out);
            }
        }
    }
    let n = profile.len();
    if n >= 3 && profile[n - 1] == profile[n - 2] && profile[n - 2] == profile[n - 3] {
        out.verdict = Verdict::FinitelyMany {
            count: profile[n - 1],
            heuristic: true,
        };
    }
    Ok(out)
}
