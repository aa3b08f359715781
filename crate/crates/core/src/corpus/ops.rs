//! Check operations: parameters in, observed JSON out. Every operation is
//! a thin call into the library.

use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::cellset::{iterate_grid, iterate_hull, Cell, CellSet};
use crate::certificates::{
    cantor_projection, contained_in_polygon, disjointness, invariant_subset, invariant_subset_subsystem,
    osc_violation_witness, parse_expr, section_equation, section_equation_cover, verify_interval_identity,
    Certificate, ConvexPolygon, ExpectedSection, SectionMode, Status, Witness,
};
use crate::error::{Error, Result};
use crate::exec::Engine;
use crate::ifs::{g_parts, moran_dimension, GridIFS, NamedSystem};
use crate::numeric::{RBox, RPoint, Rational};
use crate::render::{render, Palette, RenderSpec};
use crate::topology::{
    channel_path, classify, complement_analysis, component_count_profile, direct_profile,
    is_connected_exact, label_components, local_component_census, Adjacency, Verdict,
};

pub(crate) struct Observation {
    pub value: Value,
    /// File extension and encoded bytes.
    pub image: Option<(&'static str, Vec<u8>)>,
}

impl From<Value> for Observation {
    fn from(value: Value) -> Self {
        Observation { value, image: None }
    }
}

fn params<P: DeserializeOwned>(op: &str, t: &toml::Table) -> Result<P> {
    t.clone()
        .try_into()
        .map_err(|e| Error::Parse(format!("parameters of {op}: {e}")))
}

fn grid<'a>(op: &str, s: &'a NamedSystem) -> Result<&'a GridIFS> {
    s.as_grid()
        .ok_or_else(|| Error::Unsupported(format!("{op} needs a grid system")))
}

fn trim(c: &Cell, dim: usize) -> Vec<i64> {
    c[..dim].to_vec()
}

fn status_str(s: &Status) -> &'static str {
    match s {
        Status::Proved => "proved",
        Status::Refuted => "refuted",
        Status::Undetermined { .. } => "undetermined",
    }
}

/// Status plus the full certificate for re-checking.
fn cert_value(c: &Certificate) -> Value {
    json!({
        "status": status_str(&c.status),
        "certificate": c,
    })
}

fn witness_type(c: &Certificate) -> Value {
    serde_json::to_value(&c.witness)
        .ok()
        .and_then(|v| v.get("type").cloned())
        .unwrap_or(Value::Null)
}

fn rbox(lo: &[Rational], hi: &[Rational]) -> Result<RBox> {
    RBox::new(RPoint::new(lo.to_vec())?, RPoint::new(hi.to_vec())?)
}

#[derive(Deserialize)]
struct Kmax {
    kmax: u32,
    #[serde(default)]
    direct: bool,
}

#[derive(Deserialize)]
struct Level {
    k: u32,
}

#[derive(Deserialize)]
struct Axis {
    axis: usize,
}

#[derive(Deserialize)]
struct Projection {
    axis: usize,
    kmax: u32,
}

#[derive(Deserialize)]
struct ShiftGap {
    axis: usize,
    lo: Rational,
    hi: Rational,
}

#[derive(Deserialize)]
struct Moran {
    #[serde(default = "default_tol")]
    tol: Rational,
}

fn default_tol() -> Rational {
    Rational::new(1, 1_000_000_000)
}

#[derive(Deserialize)]
struct Identity {
    lhs: String,
    rhs: String,
    m: u32,
    #[serde(default)]
    window: Option<(Rational, Rational)>,
}

#[derive(Deserialize)]
struct Osc {
    lmax: u32,
}

#[derive(Deserialize)]
struct Target {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
    #[serde(default)]
    kmax: u32,
}

#[derive(Deserialize)]
struct Subsystem {
    maps: Vec<usize>,
    factors: Vec<Vec<i64>>,
}

#[derive(Deserialize)]
struct Polygon {
    vertices: Vec<(Rational, Rational)>,
    #[serde(default)]
    kmax: u32,
}

#[derive(Deserialize)]
struct ImageTerm {
    digit: Vec<i64>,
    from: Rational,
}

#[derive(Deserialize)]
struct SectionBox {
    lo: Vec<Rational>,
    hi: Vec<Rational>,
}

#[derive(Deserialize)]
struct Section {
    axis: usize,
    z0: Rational,
    k: u32,
    #[serde(default)]
    component: bool,
    #[serde(default)]
    terms: Vec<ImageTerm>,
    #[serde(default)]
    boxes: Vec<SectionBox>,
}

#[derive(Deserialize)]
struct SectionCover {
    axis: usize,
    z0: Rational,
    delta: Rational,
    /// `bottom` or `top`: the lifted part whose planar maps should form the
    /// section.
    part: String,
}

#[derive(Deserialize)]
struct CensusParams {
    x0: Vec<Rational>,
    lo: Vec<Rational>,
    hi: Vec<Rational>,
    r: Rational,
    ks: Vec<u32>,
}

#[derive(Deserialize)]
struct Channel {
    k: u32,
    y0: Rational,
    #[serde(default = "one")]
    ppc: u32,
}

fn one() -> u32 {
    1
}

#[derive(Deserialize)]
struct Render {
    k: u32,
    #[serde(default = "one")]
    ppc: u32,
    #[serde(default)]
    palette: Palette,
    #[serde(default)]
    hull: bool,
}

fn image(img: crate::render::Image) -> (Value, Option<(&'static str, Vec<u8>)>) {
    let ext = if img.channels == 1 { "pgm" } else { "ppm" };
    let v = json!({ "width": img.width, "height": img.height, "channels": img.channels });
    (v, Some((ext, img.to_pnm())))
}

pub(crate) fn run_op(op: &str, t: &toml::Table, sys: &NamedSystem, engine: &Engine) -> Result<Observation> {
    match op {
        "profile" => {
            let p: Kmax = params(op, t)?;
            let g = grid(op, sys)?;
            let v = if p.direct {
                direct_profile(g, p.kmax, engine)?
            } else {
                component_count_profile(g, p.kmax, engine)?
            };
            Ok(json!({ "profile": v }).into())
        }
        "connected-exact" => Ok(json!({ "connected": is_connected_exact(grid(op, sys)?)? }).into()),
        "classify" => {
            let p: Kmax = params(op, t)?;
            let g = grid(op, sys)?;
            let c = classify(g, p.kmax, engine)?;
            let mut v = json!({
                "exact_connected": c.exact_connected,
                "profile": c.profile,
                "wrap_level": c.wrap_level,
            });
            let extra = match &c.verdict {
                Verdict::Connected { heuristic } => json!({ "verdict": "connected", "heuristic": heuristic }),
                Verdict::SegmentsOrPoints { direction } => json!({
                    "verdict": "segments-or-points",
                    "direction": direction.map(|d| trim(&d, g.dim())),
                }),
                Verdict::FinitelyMany { count, heuristic } => {
                    json!({ "verdict": "finitely-many", "count": count, "heuristic": heuristic })
                }
                Verdict::Undetermined { level } => json!({ "verdict": "undetermined", "level": level }),
            };
            merge(&mut v, extra);
            Ok(v.into())
        }
        "project-digits" => {
            let p: Axis = params(op, t)?;
            Ok(json!({ "digits": grid(op, sys)?.project_digits(p.axis)? }).into())
        }
        "wrap" => {
            let p: Level = params(op, t)?;
            let g = grid(op, sys)?;
            let (_, lab, rep) = complement_analysis(g, p.k, engine)?;
            let dirs: Vec<Vec<i64>> = rep.directions().iter().map(|d| trim(d, g.dim())).collect();
            Ok(json!({
                "directions": dirs,
                "components": lab.count,
                "wrapping_components": rep.wrapping.len(),
                "max_bounded_diameter": rep.max_bounded_diameter,
                "threshold": rep.threshold,
                "threshold_exceeded": rep.threshold_exceeded,
                "unbounded_complement_certified": rep.unbounded_complement_certified,
            })
            .into())
        }
        "section" => {
            let p: Section = params(op, t)?;
            let g = grid(op, sys)?;
            let expected = if p.terms.is_empty() {
                let boxes = p
                    .boxes
                    .iter()
                    .map(|b| rbox(&b.lo, &b.hi))
                    .collect::<Result<Vec<_>>>()?;
                ExpectedSection::Boxes(boxes)
            } else {
                let terms = p
                    .terms
                    .iter()
                    .map(|term| {
                        let i = g
                            .digits()
                            .iter()
                            .position(|d| d[..g.dim()] == term.digit[..])
                            .ok_or_else(|| Error::invalid(format!("no digit {:?}", term.digit)))?;
                        Ok((i, term.from.clone()))
                    })
                    .collect::<Result<Vec<_>>>()?;
                ExpectedSection::Images(terms)
            };
            let mode = if p.component {
                SectionMode::Component
            } else {
                SectionMode::Exact
            };
            let c = section_equation(g, p.axis, &p.z0, &expected, p.k, mode, engine)?;
            let single = match &c.witness {
                Witness::Section { single_component, .. } => json!(single_component),
                _ => Value::Null,
            };
            let mut v = cert_value(&c);
            merge(&mut v, json!({ "single_component": single }));
            Ok(v.into())
        }
        "section-cover" => {
            let p: SectionCover = params(op, t)?;
            let parts = g_parts()?;
            let lifted = match p.part.as_str() {
                "bottom" => parts.bottom,
                "top" => parts.top,
                other => return Err(Error::invalid(format!("unknown part {other:?}"))),
            };
            let planar = lifted
                .drop_axis(p.axis)
                .ok_or_else(|| Error::invalid("part mixes the section axis"))?;
            let s = sys.to_ifs();
            let d = s.dim();
            let c = section_equation_cover(
                &s,
                p.axis,
                &p.z0,
                &planar,
                &p.delta,
                Some(&RBox::unit(d)),
                Some(&RBox::unit(d - 1)),
                engine,
            )?;
            Ok(cert_value(&c).into())
        }
        "cantor-projection" => {
            let p: Projection = params(op, t)?;
            let c = cantor_projection(&sys.to_ifs(), p.axis, p.kmax, engine)?;
            let mut v = cert_value(&c);
            merge(&mut v, json!({ "method": witness_type(&c) }));
            Ok(v.into())
        }
        "shift-gap" => {
            let p: ShiftGap = params(op, t)?;
            let s = sys.to_ifs();
            if p.axis >= s.dim() {
                return Err(Error::invalid(format!("axis {} outside dimension {}", p.axis, s.dim())));
            }
            let inside: Vec<usize> = s
                .maps()
                .iter()
                .enumerate()
                .filter(|(_, m)| {
                    let c = m.shift().coord(p.axis);
                    &p.lo < c && c < &p.hi
                })
                .map(|(i, _)| i)
                .collect();
            Ok(json!({ "outside": inside.is_empty(), "maps": s.len(), "inside": inside }).into())
        }
        "moran" => {
            let p: Moran = params(op, t)?;
            let s = sys.to_ifs();
            let m = moran_dimension(&s, &p.tol)?;
            let sum_sq: Rational = s.maps().iter().map(|f| f.ratio() * f.ratio()).sum();
            Ok(json!({ "exact": m.exact, "estimate": m.value, "sum_of_squares": sum_sq }).into())
        }
        "interval-identity" => {
            let p: Identity = params(op, t)?;
            let c = verify_interval_identity(&parse_expr(&p.lhs)?, &parse_expr(&p.rhs)?, p.m, p.window)?;
            Ok(cert_value(&c).into())
        }
        "osc" => {
            let p: Osc = params(op, t)?;
            let c = osc_violation_witness(&sys.to_ifs(), p.lmax, engine)?;
            let mut v = cert_value(&c);
            if let Witness::WordPair {
                first_name,
                second_name,
                map,
                ..
            } = &c.witness
            {
                merge(
                    &mut v,
                    json!({
                        "first": first_name,
                        "second": second_name,
                        "ratio": map.ratio(),
                        "shift": map.shift().coords(),
                    }),
                );
            }
            Ok(v.into())
        }
        "invariant-subset" => {
            let p: Target = params(op, t)?;
            let c = invariant_subset(&sys.to_ifs(), &rbox(&p.lo, &p.hi)?)?;
            let mut v = cert_value(&c);
            if let Witness::Covering { pieces } = &c.witness {
                let idx: Vec<usize> = pieces.iter().map(|p| p.0 + 1).collect();
                merge(&mut v, json!({ "maps": idx }));
            }
            Ok(v.into())
        }
        "subsystem" => {
            let p: Subsystem = params(op, t)?;
            let c = invariant_subset_subsystem(grid(op, sys)?, &p.maps, &p.factors)?;
            Ok(cert_value(&c).into())
        }
        "disjointness" => {
            let p: Target = params(op, t)?;
            let c = disjointness(&sys.to_ifs(), &rbox(&p.lo, &p.hi)?, p.kmax, engine)?;
            let mut v = cert_value(&c);
            if let Witness::Separation { level, .. } = &c.witness {
                merge(&mut v, json!({ "level": level }));
            }
            Ok(v.into())
        }
        "polygon" => {
            let p: Polygon = params(op, t)?;
            let verts = p
                .vertices
                .into_iter()
                .map(|(x, y)| RPoint::new(vec![x, y]))
                .collect::<Result<Vec<_>>>()?;
            let c = contained_in_polygon(&sys.to_ifs(), &ConvexPolygon::new(verts)?, p.kmax, engine)?;
            let mut v = cert_value(&c);
            merge(&mut v, json!({ "method": witness_type(&c) }));
            Ok(v.into())
        }
        "census" => {
            let p: CensusParams = params(op, t)?;
            let g = grid(op, sys)?;
            let x0 = RPoint::new(p.x0)?;
            let v = rbox(&p.lo, &p.hi)?;
            let rows = p
                .ks
                .iter()
                .map(|&k| local_component_census(g, &x0, &v, &p.r, k, engine))
                .collect::<Result<Vec<_>>>()?;
            let comps: Vec<usize> = rows.iter().map(|c| c.components).collect();
            let near: Vec<usize> = rows.iter().map(|c| c.near).collect();
            let cells: Vec<usize> = rows.iter().map(|c| c.cells).collect();
            let increasing = near.windows(2).all(|w| w[0] < w[1]);
            Ok(json!({
                "components": comps,
                "near": near,
                "cells": cells,
                "strictly_increasing": increasing,
            })
            .into())
        }
        "channel" => {
            let p: Channel = params(op, t)?;
            let g = grid(op, sys)?;
            let f = iterate_grid(g, p.k, engine)?;
            let found = channel_path(&f, &p.y0)?;
            let path: Vec<Cell> = found.as_ref().map(|(c, _)| c.clone()).unwrap_or_default();
            let mut spec = RenderSpec::new(&f, Palette::PathOverlay);
            spec.path = &path;
            spec.pixels_per_cell = p.ppc;
            let (mut v, img) = image(render(&spec)?);
            let cells: Vec<Vec<i64>> = path.iter().map(|c| trim(c, 2)).collect();
            let points = found.map(|(_, pts)| pts);
            merge(
                &mut v,
                json!({ "found": !path.is_empty(), "cells": cells, "polyline": points }),
            );
            Ok(Observation { value: v, image: img })
        }
        "render" => {
            let p: Render = params(op, t)?;
            let g = grid(op, sys)?;
            let f = if p.hull {
                iterate_hull(g, p.k, engine)?
            } else {
                iterate_grid(g, p.k, engine)?
            };
            render_set(&f, g, p, engine)
        }
        other => Err(Error::invalid(format!("unknown check operation {other:?}"))),
    }
}

fn render_set(f: &CellSet, g: &GridIFS, p: Render, engine: &Engine) -> Result<Observation> {
    let mut spec = RenderSpec::new(f, p.palette);
    spec.pixels_per_cell = p.ppc;
    let fg = label_components(f, Adjacency::Foreground, engine);
    let comp;
    let comp_lab;
    match p.palette {
        Palette::PerComponent => spec.labels = Some(&fg.labels),
        Palette::ComplementOverlay => {
            let (c, lab, _) = complement_analysis(g, p.k, engine)?;
            comp = c;
            comp_lab = lab;
            spec.overlay = Some((&comp, &comp_lab.labels));
        }
        _ => {}
    }
    let (mut v, img) = image(render(&spec)?);
    merge(&mut v, json!({ "cells": f.len(), "components": fg.count }));
    Ok(Observation { value: v, image: img })
}

fn merge(into: &mut Value, from: Value) {
    if let (Value::Object(a), Value::Object(b)) = (into, from) {
        a.extend(b);
    }
}
