//! SVG figures of patches and their edge reversals.
//!
//! Layout mirrors the combinatorial construction. The base tile is a regular
//! m-gon; every other tile is placed by reflecting its parent across their
//! shared edge, as a Euclidean reflection for the three flat tilings and as
//! an inversion in the circle carrying the shared edge's geodesic in the
//! Poincaré disk otherwise. Edges are drawn as arrows from source to target;
//! edges reversed by the supplied map are highlighted. Output is a pure
//! function of its inputs, byte for byte.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::alignment::EdgeReversal;
use crate::error::{Error, Result};
use crate::patch::{CoxeterParams, TilingPatch};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Geometry {
    Euclidean,
    PoincareDisk,
}

/// Figure options; geometry is derived from the tiling parameters.
#[derive(Debug, Clone, Copy)]
pub struct RenderStyle {
    pub geometry: Geometry,
    pub show_edge_labels: bool,
    pub fill_tiles: bool,
}

impl RenderStyle {
    pub fn for_params(params: CoxeterParams) -> Self {
        Self {
            geometry: if params.is_euclidean() {
                Geometry::Euclidean
            } else {
                Geometry::PoincareDisk
            },
            show_edge_labels: false,
            fill_tiles: true,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Point {
    x: f64,
    y: f64,
}

/// Reflection across the line through two points, or inversion in the circle
/// through them orthogonal to the unit circle.
enum Mirror {
    Line { px: f64, py: f64, nx: f64, ny: f64 },
    Circle { cx: f64, cy: f64, r2: f64 },
}

impl Mirror {
    fn across(p1: Point, p2: Point, geometry: Geometry) -> Mirror {
        if let Geometry::PoincareDisk = geometry {
            // Circle orthogonal to the unit circle through p1, p2:
            // 2 x.c = |x|^2 + 1 for both points; degenerate to a diameter
            // when p1, p2, 0 are collinear.
            let det = p1.x * p2.y - p2.x * p1.y;
            if det.abs() > 1e-9 {
                let b1 = (p1.x * p1.x + p1.y * p1.y + 1.0) / 2.0;
                let b2 = (p2.x * p2.x + p2.y * p2.y + 1.0) / 2.0;
                let cx = (b1 * p2.y - b2 * p1.y) / det;
                let cy = (p1.x * b2 - p2.x * b1) / det;
                let r2 = cx * cx + cy * cy - 1.0;
                return Mirror::Circle { cx, cy, r2 };
            }
        }
        let (nx, ny) = {
            let dx = p2.x - p1.x;
            let dy = p2.y - p1.y;
            let len = (dx * dx + dy * dy).sqrt();
            (-dy / len, dx / len)
        };
        Mirror::Line {
            px: p1.x,
            py: p1.y,
            nx,
            ny,
        }
    }

    fn apply(&self, p: Point) -> Point {
        match *self {
            Mirror::Line { px, py, nx, ny } => {
                let d = (p.x - px) * nx + (p.y - py) * ny;
                Point {
                    x: p.x - 2.0 * d * nx,
                    y: p.y - 2.0 * d * ny,
                }
            }
            Mirror::Circle { cx, cy, r2 } => {
                let dx = p.x - cx;
                let dy = p.y - cy;
                let scale = r2 / (dx * dx + dy * dy);
                Point {
                    x: cx + dx * scale,
                    y: cy + dy * scale,
                }
            }
        }
    }
}

/// Vertex coordinates assigned by walking the tile tree from the base.
fn layout(patch: &TilingPatch, geometry: Geometry) -> Result<HashMap<u32, Point>> {
    let m = patch.m() as f64;
    let n = patch.n() as f64;
    let circumradius = match geometry {
        Geometry::Euclidean => 1.0,
        Geometry::PoincareDisk => {
            let a = std::f64::consts::PI / m;
            let b = std::f64::consts::PI / n;
            ((a + b).cos() / (a - b).cos()).sqrt()
        }
    };
    let mut coords: HashMap<u32, Point> = HashMap::new();
    let base = &patch.tiles()[patch.base_tile() as usize];
    for (k, &v) in base.corners.iter().enumerate() {
        let angle = -2.0 * std::f64::consts::PI * (k as f64) / m + std::f64::consts::FRAC_PI_2;
        coords.insert(
            v,
            Point {
                x: circumradius * angle.cos(),
                y: circumradius * angle.sin(),
            },
        );
    }
    // Breadth-first placement following each tile's stored word.
    let mut placed = vec![false; patch.tiles().len()];
    placed[patch.base_tile() as usize] = true;
    let mut queue = std::collections::VecDeque::from([patch.base_tile()]);
    while let Some(x) = queue.pop_front() {
        for (_, y) in patch.adjacencies(x) {
            if placed[y as usize] {
                continue;
            }
            let shared = {
                let tx = &patch.tiles()[x as usize];
                let ty = &patch.tiles()[y as usize];
                *tx.edges
                    .iter()
                    .find(|e| ty.edges.contains(e))
                    .expect("adjacent tiles share an edge")
            };
            let edge = &patch.edges()[shared as usize];
            let (pa, pb) = (coords[&edge.src], coords[&edge.tgt]);
            let mirror = Mirror::across(pa, pb, geometry);
            // Pair the corner sequences of the two tiles, both traversed
            // from one endpoint of the shared edge to the other.
            let seq_x = corner_walk(patch, x, edge.src, edge.tgt)?;
            let seq_y = corner_walk(patch, y, edge.src, edge.tgt)?;
            for (vx, vy) in seq_x.into_iter().zip(seq_y) {
                if !coords.contains_key(&vy) {
                    let p = coords[&vx];
                    coords.insert(vy, mirror.apply(p));
                }
            }
            placed[y as usize] = true;
            queue.push_back(y);
        }
    }
    Ok(coords)
}

/// Corners of a tile in cyclic order starting at `from` and stepping first
/// to `to`.
fn corner_walk(patch: &TilingPatch, tile: u32, from: u32, to: u32) -> Result<Vec<u32>> {
    let corners = &patch.tiles()[tile as usize].corners;
    let m = corners.len();
    let i = corners
        .iter()
        .position(|&v| v == from)
        .ok_or(Error::UnknownId { kind: "vertex", id: from })?;
    let forward = corners[(i + 1) % m] == to;
    Ok((0..m)
        .map(|k| {
            if forward {
                corners[(i + k) % m]
            } else {
                corners[(i + m - k) % m]
            }
        })
        .collect())
}

fn fmt_coord(v: f64) -> String {
    // Normalize the sign of zero so output is byte-stable.
    let v = if v.abs() < 5e-7 { 0.0 } else { v };
    format!("{v:.6}")
}

/// Render the patch (and optionally an edge reversal on it) as SVG.
pub fn render_svg(
    patch: &TilingPatch,
    tau: Option<&EdgeReversal>,
    style: &RenderStyle,
) -> Result<String> {
    if let Some(t) = tau {
        if t.len() != patch.edges().len() {
            return Err(Error::Schema {
                context: "render".into(),
                message: format!(
                    "reversal covers {} edges, patch has {}",
                    t.len(),
                    patch.edges().len()
                ),
            });
        }
    }
    let coords = layout(patch, style.geometry)?;
    let (mut min_x, mut min_y, mut max_x, mut max_y) =
        (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in coords.values() {
        min_x = min_x.min(p.x);
        min_y = min_y.min(p.y);
        max_x = max_x.max(p.x);
        max_y = max_y.max(p.y);
    }
    if let Geometry::PoincareDisk = style.geometry {
        (min_x, min_y, max_x, max_y) = (-1.0, -1.0, 1.0, 1.0);
    }
    let margin = 0.08 * (max_x - min_x).max(max_y - min_y).max(1.0);
    let view = format!(
        "{} {} {} {}",
        fmt_coord(min_x - margin),
        fmt_coord(min_y - margin),
        fmt_coord(max_x - min_x + 2.0 * margin),
        fmt_coord(max_y - min_y + 2.0 * margin)
    );
    let stroke = 0.012 * (max_x - min_x).max(1.0);

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{view}\">"
    );
    let _ = writeln!(
        svg,
        "<defs>\
<marker id=\"ak\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"5\" markerHeight=\"5\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#1a1a1a\"/></marker>\
<marker id=\"ar\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"5\" markerHeight=\"5\" orient=\"auto-start-reverse\"><path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"#c0392b\"/></marker>\
</defs>"
    );
    if let Geometry::PoincareDisk = style.geometry {
        let _ = writeln!(
            svg,
            "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#888888\" stroke-width=\"{}\"/>",
            fmt_coord(stroke * 0.5)
        );
    }
    if style.fill_tiles {
        for tile in patch.tiles() {
            let points: Vec<String> = tile
                .corners
                .iter()
                .map(|v| {
                    let p = coords[v];
                    format!("{},{}", fmt_coord(p.x), fmt_coord(p.y))
                })
                .collect();
            let fill = if tile.color == 1 { "#dbe9f6" } else { "#f6e7db" };
            let _ = writeln!(
                svg,
                "<polygon points=\"{}\" fill=\"{fill}\" stroke=\"none\"/>",
                points.join(" ")
            );
        }
    }
    for edge in patch.edges() {
        let a = coords[&edge.src];
        let b = coords[&edge.tgt];
        // Pull the arrow in from both endpoints so heads stay readable.
        let (sx, sy) = (a.x + 0.12 * (b.x - a.x), a.y + 0.12 * (b.y - a.y));
        let (tx, ty) = (a.x + 0.84 * (b.x - a.x), a.y + 0.84 * (b.y - a.y));
        let reversed = tau.map(|t| t.value(edge.id) == -1).unwrap_or(false);
        let (color, marker) = if reversed {
            ("#c0392b", "ar")
        } else {
            ("#1a1a1a", "ak")
        };
        let _ = writeln!(
            svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\" marker-end=\"url(#{marker})\"/>",
            fmt_coord(sx),
            fmt_coord(sy),
            fmt_coord(tx),
            fmt_coord(ty),
            fmt_coord(stroke)
        );
        if style.show_edge_labels {
            let (mx, my) = ((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
            let label = edge.slots[0].1;
            let _ = writeln!(
                svg,
                "<text x=\"{}\" y=\"{}\" font-size=\"{}\" fill=\"#555555\">{label}</text>",
                fmt_coord(mx),
                fmt_coord(my),
                fmt_coord(stroke * 6.0)
            );
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
