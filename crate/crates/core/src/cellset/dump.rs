//! Plain-text cell dump.
//!
//! ```text
//! cellset dim=2 base=4 level=1 torus=1,1 window=-
//! 0 0
//! 0 1
//! ```
//!
//! One line per cell in sorted order. `torus` and `window` are `-` when
//! absent; a window is written `lo0,lo1:hi0,hi1` in cell coordinates.

use std::fmt::Write as _;

use super::{Cell, CellSet};
use crate::error::{Error, Result};

fn join(c: &Cell, dim: usize, sep: &str) -> String {
    c[..dim].iter().map(|x| x.to_string()).collect::<Vec<_>>().join(sep)
}

fn parse_vec(s: &str, dim: usize, sep: char) -> Result<Cell> {
    let parts: Vec<&str> = s.split(sep).filter(|p| !p.is_empty()).collect();
    if parts.len() != dim {
        return Err(Error::Parse(format!("expected {dim} coordinates in {s:?}")));
    }
    let mut out = [0; 3];
    for (a, p) in parts.iter().enumerate() {
        out[a] = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad coordinate {p:?}")))?;
    }
    Ok(out)
}

impl CellSet {
    pub fn dump(&self) -> String {
        let d = self.dim;
        let torus = self.torus.map_or("-".to_string(), |t| join(&t, d, ","));
        let window = self
            .window
            .map_or("-".to_string(), |(lo, hi)| format!("{}:{}", join(&lo, d, ","), join(&hi, d, ",")));
        let mut out = format!(
            "cellset dim={} base={} level={} torus={} window={}\n",
            d, self.base, self.level, torus, window
        );
        for c in &self.cells {
            writeln!(out, "{}", join(c, d, " ")).unwrap();
        }
        out
    }
}

pub fn parse_dump(text: &str) -> Result<CellSet> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::Parse("empty cell dump".into()))?;
    let mut fields = header.split_whitespace();
    if fields.next() != Some("cellset") {
        return Err(Error::Parse("missing cellset header".into()));
    }
    let mut get = |key: &str| -> Result<String> {
        let f = fields
            .next()
            .ok_or_else(|| Error::Parse(format!("missing {key}")))?;
        f.strip_prefix(key)
            .and_then(|r| r.strip_prefix('='))
            .map(str::to_string)
            .ok_or_else(|| Error::Parse(format!("expected {key}=, found {f:?}")))
    };
    let num = |s: String| -> Result<i64> { s.parse().map_err(|_| Error::Parse(format!("bad number {s:?}"))) };
    let dim = num(get("dim")?)? as usize;
    let base = num(get("base")?)?;
    let level = num(get("level")?)? as u32;
    let torus = get("torus")?;
    let window = get("window")?;
    let mut cells = Vec::new();
    for l in lines.filter(|l| !l.trim().is_empty()) {
        cells.push(parse_vec(l, dim, ' ')?);
    }
    let mut s = CellSet::new(dim, base, level, cells)?;
    if torus != "-" {
        s.torus = Some(parse_vec(&torus, dim, ',')?);
    }
    if window != "-" {
        let (lo, hi) = window
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("bad window {window:?}")))?;
        s.window = Some((parse_vec(lo, dim, ',')?, parse_vec(hi, dim, ',')?));
    }
    Ok(s)
}
