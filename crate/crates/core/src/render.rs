//! Raster output as portable pixmaps.
//!
//! Gray images are binary PGM (`P5`), colour images binary PPM (`P6`), both
//! with maxval 255. Rows run top to bottom; by default the top row holds the
//! highest `y`, so pictures appear in mathematical orientation. Each cell is
//! a square of `pixels_per_cell` pixels.

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::cellset::{Cell, CellSet};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Palette {
    /// Gray: foreground black on white.
    #[default]
    Binary,
    /// Foreground coloured by component label.
    PerComponent,
    /// Foreground dark gray, overlay cells coloured by their labels.
    ComplementOverlay,
    /// Foreground black, path cells red.
    PathOverlay,
}

/// What to draw. Labels index the cells of the set they accompany.
#[derive(Clone, Copy, Debug)]
pub struct RenderSpec<'a> {
    pub cells: &'a CellSet,
    pub labels: Option<&'a [u32]>,
    pub overlay: Option<(&'a CellSet, &'a [u32])>,
    pub path: &'a [Cell],
    pub pixels_per_cell: u32,
    pub palette: Palette,
    /// Put `y = 0` on the top row instead.
    pub flip: bool,
}

impl<'a> RenderSpec<'a> {
    pub fn new(cells: &'a CellSet, palette: Palette) -> Self {
        RenderSpec {
            cells,
            labels: None,
            overlay: None,
            path: &[],
            pixels_per_cell: 1,
            palette,
            flip: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Image {
    pub width: u32,
    pub height: u32,
    /// 1 for gray, 3 for RGB.
    pub channels: u8,
    pub data: Vec<u8>,
}

const WHITE: [u8; 3] = [255, 255, 255];
const BLACK: [u8; 3] = [0, 0, 0];
const DARK: [u8; 3] = [64, 64, 64];
const RED: [u8; 3] = [220, 30, 30];
const MAX_PIXELS: u64 = 1 << 28;

/// Fixed 32-colour wheel: evenly spaced hues at high saturation.
fn wheel(i: u32) -> [u8; 3] {
    let h = (i % 32) * 6 * 256 / 32;
    let (sector, f) = (h / 256, h % 256);
    let (hi, lo) = (230u32, 40u32);
    let up = lo + (hi - lo) * f / 256;
    let down = hi - (hi - lo) * f / 256;
    let (r, g, b) = match sector {
        0 => (hi, up, lo),
        1 => (down, hi, lo),
        2 => (lo, hi, up),
        3 => (lo, down, hi),
        4 => (up, lo, hi),
        _ => (hi, lo, down),
    };
    [r as u8, g as u8, b as u8]
}

/// Colour of component `label`; neighbouring labels land far apart on the
/// wheel.
pub fn label_color(label: u32) -> [u8; 3] {
    wheel(label.wrapping_mul(13) % 32)
}

/// Pixel extent in cells: the window if set, else the unit square grid
/// grown to the set's bounding box.
fn extent(c: &CellSet) -> (Cell, Cell) {
    if let Some(w) = c.window() {
        return w;
    }
    let n = c.side();
    let (mut lo, mut hi) = ([0, 0, 0], [n, n, 0]);
    if let Some((a, b)) = c.bounds() {
        for i in 0..2 {
            lo[i] = lo[i].min(a[i]);
            hi[i] = hi[i].max(b[i] + 1);
        }
    }
    (lo, hi)
}

pub fn render(spec: &RenderSpec) -> Result<Image> {
    let set = spec.cells;
    if set.dim() != 2 {
        return Err(Error::invalid(format!("can only render planar sets, got dimension {}", set.dim())));
    }
    if spec.pixels_per_cell == 0 {
        return Err(Error::invalid("pixels per cell must be positive"));
    }
    if let Some(l) = spec.labels {
        if l.len() != set.len() {
            return Err(Error::invalid("labels do not match the cell set"));
        }
    }
    if let Some((o, l)) = spec.overlay {
        if l.len() != o.len() || o.dim() != 2 {
            return Err(Error::invalid("overlay labels do not match the overlay set"));
        }
    }
    match spec.palette {
        Palette::PerComponent if spec.labels.is_none() => {
            return Err(Error::invalid("per-component colouring needs labels"))
        }
        Palette::ComplementOverlay if spec.overlay.is_none() => {
            return Err(Error::invalid("complement overlay needs an overlay set"))
        }
        _ => {}
    }
    let (lo, hi) = extent(set);
    let ppc = spec.pixels_per_cell as u64;
    let (cw, ch) = ((hi[0] - lo[0]).max(0) as u64, (hi[1] - lo[1]).max(0) as u64);
    let (w, h) = (cw * ppc, ch * ppc);
    if w * h > MAX_PIXELS {
        return Err(Error::ResourceLimit {
            what: "image pixels".into(),
            needed: (w * h) as u128,
            budget: MAX_PIXELS as u128,
        });
    }
    let gray = spec.palette == Palette::Binary;
    let channels: u8 = if gray { 1 } else { 3 };
    // One colour per cell of the extent, then scaled up.
    let mut grid = vec![WHITE; (cw * ch) as usize];
    let mut put = |c: &Cell, col: [u8; 3]| {
        if (lo[0]..hi[0]).contains(&c[0]) && (lo[1]..hi[1]).contains(&c[1]) {
            let i = (c[1] - lo[1]) as u64 * cw + (c[0] - lo[0]) as u64;
            grid[i as usize] = col;
        }
    };
    if let (Palette::ComplementOverlay, Some((o, labels))) = (spec.palette, spec.overlay) {
        for (c, l) in o.cells().iter().zip(labels) {
            put(c, label_color(*l));
        }
    }
    for (i, c) in set.cells().iter().enumerate() {
        let col = match spec.palette {
            Palette::PerComponent => label_color(spec.labels.expect("checked")[i]),
            Palette::ComplementOverlay => DARK,
            _ => BLACK,
        };
        put(c, col);
    }
    if spec.palette == Palette::PathOverlay {
        for c in spec.path {
            put(c, RED);
        }
    }
    let mut data = Vec::with_capacity((w * h) as usize * channels as usize);
    for py in 0..h {
        let r = py / ppc;
        let row = if spec.flip { r } else { ch - 1 - r };
        for px in 0..w {
            let col = grid[(row * cw + px / ppc) as usize];
            if gray {
                data.push(col[0]);
            } else {
                data.extend_from_slice(&col);
            }
        }
    }
    Ok(Image {
        width: w as u32,
        height: h as u32,
        channels,
        data,
    })
}

impl Image {
    /// Encoded `P5`/`P6` bytes.
    pub fn to_pnm(&self) -> Vec<u8> {
        let magic = if self.channels == 1 { "P5" } else { "P6" };
        let mut out = format!("{magic}\n{} {}\n255\n", self.width, self.height).into_bytes();
        out.extend_from_slice(&self.data);
        out
    }

    pub fn write(&self, path: &Path) -> std::io::Result<()> {
        let mut f = std::fs::File::create(path)?;
        f.write_all(&self.to_pnm())
    }

    pub fn pixel(&self, x: u32, y: u32) -> &[u8] {
        let c = self.channels as usize;
        let i = (y as usize * self.width as usize + x as usize) * c;
        &self.data[i..i + c]
    }
}
