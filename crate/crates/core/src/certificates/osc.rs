use std::collections::HashMap;

use super::{Certificate, CertificateKind, Status, Witness};
use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::{word_name, AffineMap, IFSystem};

/// Searches words of length `1..=lmax`, by length and then
/// lexicographically, for the first one whose map equals that of an
/// earlier distinct word.
///
/// Two distinct words with the same map force overlapping pieces in every
/// candidate open set, so the open set condition fails. The converse does
/// not hold: systems can violate the condition without exact coincidences,
/// and those stay undetermined.
pub fn osc_violation_witness(s: &IFSystem, lmax: u32, engine: &Engine) -> Result<Certificate> {
    if lmax == 0 {
        return Err(Error::invalid("word length bound must be at least 1"));
    }
    let kind = CertificateKind::OscViolation;
    let mut seen: HashMap<AffineMap, Vec<usize>> = HashMap::new();
    let mut level: Vec<(Vec<usize>, AffineMap)> = vec![(Vec::new(), AffineMap::identity(s.dim()))];
    for _ in 1..=lmax {
        engine.check("word maps", (seen.len() + level.len() * s.len()) as u128)?;
        let mut next = Vec::with_capacity(level.len() * s.len());
        for (w, m) in &level {
            for (i, f) in s.maps().iter().enumerate() {
                let mut word = w.clone();
                word.push(i);
                let map = m.compose(f)?;
                if let Some(first) = seen.get(&map) {
                    return Ok(Certificate::new(
                        kind,
                        Status::Proved,
                        Witness::WordPair {
                            first_name: word_name(first),
                            second_name: word_name(&word),
                            first: first.clone(),
                            second: word,
                            map,
                        },
                    ));
                }
                seen.insert(map.clone(), word.clone());
                next.push((word, map));
            }
        }
        level = next;
    }
    Ok(Certificate::new(
        kind,
        Status::Undetermined { level: lmax },
        Witness::Exhausted { words: seen.len() },
    ))
}
