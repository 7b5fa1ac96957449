//! Finite patches of directed {m,n} tilings: construction of the reflective
//! alignment, validity checks, tracks, and geodesics.
//!
//! A patch stores presheaf-level data: vertices with a rotationally ordered
//! edge fan, edges with a source and target, and tiles with an ordered edge
//! list whose position records the label `d_i`. Tiles also carry the route of
//! a shortest track from the base tile (their word) and a color alternating
//! across adjacencies.
//!
//! Growth is corona by corona. Every boundary edge with a free tile slot
//! spawns the mirror image of its tile: the shared edge keeps its label, the
//! remaining labels continue in reversed rotational order, and a vertex is
//! closed by identifying the two free end edges of its fan once its tile
//! count reaches `n`. Ids are assigned in breadth-first creation order, which
//! keeps every construction deterministic.

use std::collections::{BTreeMap, HashSet, VecDeque};

use crate::dihedral::Sign;
use crate::error::{Error, Result};
use crate::mgon::MGonCategory;

/// Parameters of an {m,n} tiling together with its Coxeter matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoxeterParams {
    m: usize,
    n: usize,
}

impl CoxeterParams {
    /// Requires `m >= 3`, even `n >= 4`, and `(m-2)(n-2) >= 4` (Euclidean or
    /// hyperbolic; the spherical range is excluded, and odd vertex degrees
    /// admit no reflective alignment).
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m < 3 {
            return Err(Error::InvalidParams(format!("m must be >= 3, got {m}")));
        }
        if n < 4 || n % 2 != 0 {
            return Err(Error::InvalidParams(format!(
                "reflective tilings require even n >= 4, got n = {n}"
            )));
        }
        if (m - 2) * (n - 2) < 4 {
            return Err(Error::InvalidParams(format!(
                "{{{m},{n}}} is spherical: (m-2)(n-2) = {} < 4",
                (m - 2) * (n - 2)
            )));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `(m-2)(n-2) = 4` exactly for the Euclidean tilings.
    pub fn is_euclidean(&self) -> bool {
        (self.m - 2) * (self.n - 2) == 4
    }

    /// The m x m Coxeter matrix: 1 on the diagonal, n/2 for cyclically
    /// adjacent generator indices, 2 otherwise.
    pub fn matrix(&self) -> Vec<Vec<u32>> {
        let m = self.m;
        (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| {
                        if i == j {
                            1
                        } else if (i + 1) % m == j || (j + 1) % m == i {
                            (self.n / 2) as u32
                        } else {
                            2
                        }
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub id: u32,
    /// Incident edges in rotational order. While the vertex is on the patch
    /// boundary this is a path (a tile sits between consecutive entries);
    /// once closed it is read cyclically.
    pub fan: Vec<u32>,
    pub closed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: u32,
    pub src: u32,
    pub tgt: u32,
    /// Incident tiles with the label this edge carries in each, at most two.
    pub slots: Vec<(u32, usize)>,
}

impl Edge {
    pub fn is_interior(&self) -> bool {
        self.slots.len() == 2
    }

    pub fn other_endpoint(&self, v: u32) -> u32 {
        if self.src == v {
            self.tgt
        } else {
            self.src
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub id: u32,
    /// `edges[k]` is the edge labeled `d_{k+1}`.
    pub edges: Vec<u32>,
    /// `corners[k]` is the vertex `v_{k+1}`, shared by `d_k` and `d_{k+1}`.
    pub corners: Vec<u32>,
    pub color: Sign,
    /// Route of a shortest track from the base tile.
    pub word: Vec<usize>,
}

/// One invariant violation found by [`TilingPatch::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// Edge directions of a tile disagree with the category code.
    PresheafLaw { tile: u32, label: usize },
    /// A tile with repeated edges or repeated corners.
    Nonsingular { tile: u32 },
    /// Two tiles sharing more than one edge.
    SharedEdgeBound { tile_a: u32, tile_b: u32 },
    /// A closed vertex without exactly n incident edges.
    InteriorVertexDegree { vertex: u32, degree: usize },
    /// An edge between two closed vertices lacking two incident tiles.
    InteriorEdgeTileCount { edge: u32, count: usize },
    /// Adjacent tiles with equal colors.
    ColorLaw { edge: u32 },
    /// V - E + F differs from 1, so the patch is not a disk.
    EulerCharacteristic { value: i64 },
    /// A shared edge carrying different labels in its two tiles.
    ReflectiveLabel { edge: u32 },
    /// Edge labels around a closed vertex fail to alternate between
    /// consecutive values.
    LabelAlternation { vertex: u32 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::PresheafLaw { tile, label } => {
                write!(f, "presheaf law broken at tile {tile}, edge d_{label}")
            }
            Violation::Nonsingular { tile } => {
                write!(f, "tile {tile} repeats an edge or corner")
            }
            Violation::SharedEdgeBound { tile_a, tile_b } => {
                write!(f, "tiles {tile_a} and {tile_b} share more than one edge")
            }
            Violation::InteriorVertexDegree { vertex, degree } => {
                write!(f, "interior vertex {vertex} has {degree} edges")
            }
            Violation::InteriorEdgeTileCount { edge, count } => {
                write!(f, "interior edge {edge} has {count} tiles")
            }
            Violation::ColorLaw { edge } => {
                write!(f, "tiles sharing edge {edge} have equal colors")
            }
            Violation::EulerCharacteristic { value } => {
                write!(f, "V - E + F = {value}, expected 1")
            }
            Violation::ReflectiveLabel { edge } => {
                write!(f, "edge {edge} carries different labels in its two tiles")
            }
            Violation::LabelAlternation { vertex } => {
                write!(f, "labels around vertex {vertex} do not alternate")
            }
        }
    }
}

/// Outcome of [`TilingPatch::validate`]; an empty report means every checked
/// invariant holds.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

/// A finite fragment of a directed {m,n} tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TilingPatch {
    params: CoxeterParams,
    category: MGonCategory,
    radius: usize,
    reflective: bool,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    tiles: Vec<Tile>,
}

impl TilingPatch {
    pub fn params(&self) -> CoxeterParams {
        self.params
    }

    pub fn category(&self) -> &MGonCategory {
        &self.category
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn n(&self) -> usize {
        self.params.n
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    /// Every shared edge carries the same label in both of its tiles.
    pub fn is_reflective(&self) -> bool {
        self.reflective
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn base_tile(&self) -> u32 {
        0
    }

    pub fn tile(&self, id: u32) -> Result<&Tile> {
        self.tiles
            .get(id as usize)
            .ok_or(Error::UnknownId { kind: "tile", id })
    }

    pub fn edge(&self, id: u32) -> Result<&Edge> {
        self.edges
            .get(id as usize)
            .ok_or(Error::UnknownId { kind: "edge", id })
    }

    pub fn vertex(&self, id: u32) -> Result<&Vertex> {
        self.vertices
            .get(id as usize)
            .ok_or(Error::UnknownId { kind: "vertex", id })
    }

    /// A tile is interior when all of its corners are closed; every neighbor
    /// of an interior tile is present in the patch.
    pub fn tile_is_interior(&self, id: u32) -> bool {
        self.tiles[id as usize]
            .corners
            .iter()
            .all(|&v| self.vertices[v as usize].closed)
    }

    pub fn interior_tiles(&self) -> Vec<u32> {
        (0..self.tiles.len() as u32)
            .filter(|&t| self.tile_is_interior(t))
            .collect()
    }

    /// The tile across edge `d_label(tile)`, if present.
    pub fn neighbor(&self, tile: u32, label: usize) -> Option<u32> {
        let e = &self.edges[self.tiles[tile as usize].edges[label - 1] as usize];
        e.slots.iter().map(|&(t, _)| t).find(|&t| t != tile)
    }

    /// Label the shared edge carries inside `tile`.
    pub fn label_of_edge_in(&self, edge: u32, tile: u32) -> Option<usize> {
        self.edges[edge as usize]
            .slots
            .iter()
            .find(|&&(t, _)| t == tile)
            .map(|&(_, l)| l)
    }

    /// Build the reflective directed {m,n} tiling out to `radius` coronas,
    /// with enough extra collar that every tile at distance `< radius` is
    /// fully interior.
    pub fn build_reflective(
        params: CoxeterParams,
        category: MGonCategory,
        radius: usize,
    ) -> Result<TilingPatch> {
        if category.m() != params.m {
            return Err(Error::DimensionMismatch {
                expected: params.m,
                got: category.m(),
            });
        }
        let mut patch = TilingPatch::base_tile_patch(params, category, radius);
        let mut coronas = 0usize;
        while !(coronas >= radius && patch.core_is_interior(radius)) {
            coronas += 1;
            // Safety net against a growth bug looping forever.
            if coronas > radius + params.n + 4 {
                return Err(Error::InvalidParams(format!(
                    "corona growth failed to stabilize for {{{},{}}} radius {radius}",
                    params.m, params.n
                )));
            }
            let boundary: Vec<u32> = patch
                .edges
                .iter()
                .filter(|e| e.slots.len() == 1)
                .map(|e| e.id)
                .collect();
            for e in boundary {
                if patch.edges[e as usize].slots.len() == 1 {
                    patch.grow_mirror_tile(e)?;
                }
            }
        }
        patch.reflective = patch.compute_reflective();
        debug_assert!(patch.reflective);
        Ok(patch)
    }

    /// Every tile at distance `< radius` has all corners closed.
    fn core_is_interior(&self, radius: usize) -> bool {
        self.tiles.iter().filter(|t| t.word.len() < radius).all(|t| {
            t.corners
                .iter()
                .all(|&v| self.vertices[v as usize].closed)
        })
    }

    fn base_tile_patch(params: CoxeterParams, category: MGonCategory, radius: usize) -> Self {
        let m = params.m;
        let delta = category.code().clone();
        let mut vertices = Vec::with_capacity(m);
        let mut edges = Vec::with_capacity(m);
        for k in 0..m {
            // Edge d_{k+1} connects corners v_{k+1} (id k) and v_{k+2} (id k+1).
            let (a, b) = (k as u32, ((k + 1) % m) as u32);
            let (src, tgt) = if delta.entry(k + 1) == 1 { (a, b) } else { (b, a) };
            edges.push(Edge {
                id: k as u32,
                src,
                tgt,
                slots: vec![(0, k + 1)],
            });
            vertices.push(Vertex {
                id: k as u32,
                fan: vec![((k + m - 1) % m) as u32, k as u32],
                closed: false,
            });
        }
        let tile = Tile {
            id: 0,
            edges: (0..m as u32).collect(),
            corners: (0..m as u32).collect(),
            color: 1,
            word: Vec::new(),
        };
        TilingPatch {
            params,
            category,
            radius,
            reflective: true,
            vertices,
            edges,
            tiles: vec![tile],
        }
    }

    /// Create the mirror image of the tile across `seed`, absorbing existing
    /// edges wherever a vertex closes.
    fn grow_mirror_tile(&mut self, seed: u32) -> Result<u32> {
        let m = self.params.m;
        let n = self.params.n;
        let (parent, label) = self.edges[seed as usize].slots[0];
        let new_tile = self.tiles.len() as u32;
        // Slot storage for y's edges and corners, 1-based labels.
        let mut edge_of: Vec<Option<u32>> = vec![None; m + 1];
        let mut corner_of: Vec<Option<u32>> = vec![None; m + 1];
        let parent_tile = &self.tiles[parent as usize];
        edge_of[label] = Some(seed);
        // The mirror fixes the shared edge pointwise, so y inherits the two
        // corners v_label and v_{label+1} from its parent.
        let a = parent_tile.corners[label - 1];
        let b = parent_tile.corners[label % m];
        corner_of[label] = Some(a);
        corner_of[(label % m) + 1] = Some(b);

        let wrap = |j: isize| -> usize { (j - 1).rem_euclid(m as isize) as usize + 1 };

        // Forward walk from corner v_{label+1}: absorb while the vertex closes.
        let mut fw = 0usize;
        {
            let mut cur_vertex = b;
            let mut arrival = seed;
            while fw < m - 1 {
                let fan = &self.vertices[cur_vertex as usize];
                if fan.closed || fan.fan.len() != n {
                    break;
                }
                let absorbed = self.other_fan_end(cur_vertex, arrival)?;
                let j = wrap(label as isize + fw as isize + 1);
                let other_slot = &self.edges[absorbed as usize].slots;
                debug_assert_eq!(other_slot.len(), 1);
                debug_assert_eq!(other_slot[0].1, j, "mirror labels must continue");
                edge_of[j] = Some(absorbed);
                cur_vertex = self.edges[absorbed as usize].other_endpoint(cur_vertex);
                corner_of[wrap(j as isize + 1)] = Some(cur_vertex);
                arrival = absorbed;
                fw += 1;
            }
        }
        // Backward walk from corner v_label.
        let mut bw = 0usize;
        {
            let mut cur_vertex = a;
            let mut arrival = seed;
            while fw + bw < m - 1 {
                let fan = &self.vertices[cur_vertex as usize];
                if fan.closed || fan.fan.len() != n {
                    break;
                }
                let absorbed = self.other_fan_end(cur_vertex, arrival)?;
                let j = wrap(label as isize - bw as isize - 1);
                let other_slot = &self.edges[absorbed as usize].slots;
                debug_assert_eq!(other_slot.len(), 1);
                debug_assert_eq!(other_slot[0].1, j, "mirror labels must continue");
                edge_of[j] = Some(absorbed);
                cur_vertex = self.edges[absorbed as usize].other_endpoint(cur_vertex);
                corner_of[j] = Some(cur_vertex);
                arrival = absorbed;
                bw += 1;
            }
        }

        // Remaining labels are fresh edges; interior corners of the fresh arc
        // are fresh vertices.
        let delta = self.category.code().clone();
        for step in 0..m {
            let j = wrap(label as isize + fw as isize + 1 + step as isize);
            if edge_of[j].is_some() {
                continue;
            }
            let jn = wrap(j as isize + 1);
            if corner_of[j].is_none() {
                let id = self.vertices.len() as u32;
                self.vertices.push(Vertex {
                    id,
                    fan: Vec::new(),
                    closed: false,
                });
                corner_of[j] = Some(id);
            }
            if corner_of[jn].is_none() {
                let id = self.vertices.len() as u32;
                self.vertices.push(Vertex {
                    id,
                    fan: Vec::new(),
                    closed: false,
                });
                corner_of[jn] = Some(id);
            }
            let (p, q) = (corner_of[j].unwrap(), corner_of[jn].unwrap());
            let (src, tgt) = if delta.entry(j) == 1 { (p, q) } else { (q, p) };
            let id = self.edges.len() as u32;
            self.edges.push(Edge {
                id,
                src,
                tgt,
                slots: Vec::new(),
            });
            edge_of[j] = Some(id);
        }

        let tile_edges: Vec<u32> = (1..=m).map(|j| edge_of[j].unwrap()).collect();
        let tile_corners: Vec<u32> = (1..=m).map(|j| corner_of[j].unwrap()).collect();

        // Record the slot on every edge of y.
        for (k, &e) in tile_edges.iter().enumerate() {
            self.edges[e as usize].slots.push((new_tile, k + 1));
            debug_assert!(self.edges[e as usize].slots.len() <= 2);
        }

        // Update the fan at every corner of y.
        for k in 0..m {
            let v = tile_corners[k];
            let before = tile_edges[(k + m - 1) % m];
            let after = tile_edges[k];
            let vertex = &mut self.vertices[v as usize];
            let has_before = vertex.fan.contains(&before);
            let has_after = vertex.fan.contains(&after);
            match (has_before, has_after) {
                (false, false) => {
                    vertex.fan = vec![before, after];
                }
                (true, true) => {
                    // y fills the outer gap; the two edges must be the fan
                    // ends and the vertex becomes interior.
                    let first = *vertex.fan.first().unwrap();
                    let last = *vertex.fan.last().unwrap();
                    debug_assert!(
                        (first == before && last == after) || (first == after && last == before),
                        "closing edges must be the fan ends"
                    );
                    debug_assert_eq!(vertex.fan.len(), n, "closure at the wrong tile count");
                    vertex.closed = true;
                }
                (true, false) => {
                    if *vertex.fan.last().unwrap() == before {
                        vertex.fan.push(after);
                    } else {
                        debug_assert_eq!(*vertex.fan.first().unwrap(), before);
                        vertex.fan.insert(0, after);
                    }
                }
                (false, true) => {
                    if *vertex.fan.last().unwrap() == after {
                        vertex.fan.push(before);
                    } else {
                        debug_assert_eq!(*vertex.fan.first().unwrap(), after);
                        vertex.fan.insert(0, before);
                    }
                }
            }
        }

        let mut word = self.tiles[parent as usize].word.clone();
        word.push(label);
        let color = -self.tiles[parent as usize].color;
        self.tiles.push(Tile {
            id: new_tile,
            edges: tile_edges,
            corners: tile_corners,
            color,
            word,
        });
        Ok(new_tile)
    }

    fn other_fan_end(&self, vertex: u32, arrival: u32) -> Result<u32> {
        let fan = &self.vertices[vertex as usize].fan;
        let first = *fan.first().expect("fans are never empty");
        let last = *fan.last().expect("fans are never empty");
        if arrival == first {
            Ok(last)
        } else if arrival == last {
            Ok(first)
        } else {
            Err(Error::InvalidParams(format!(
                "edge {arrival} is not a free end of the fan at vertex {vertex}"
            )))
        }
    }

    fn compute_reflective(&self) -> bool {
        self.edges
            .iter()
            .all(|e| e.slots.len() < 2 || e.slots[0].1 == e.slots[1].1)
    }

    /// Assemble a patch from raw tables, recomputing tile corners, edge
    /// slots, and the reflectivity flag. Used by file loading and by the
    /// edge-reversal transformation.
    #[allow(clippy::type_complexity)]
    pub fn from_parts(
        params: CoxeterParams,
        category: MGonCategory,
        radius: usize,
        vertices: Vec<(Vec<u32>, bool)>,
        edges: Vec<(u32, u32)>,
        tiles: Vec<(Vec<u32>, Sign, Vec<usize>)>,
    ) -> Result<TilingPatch> {
        if category.m() != params.m {
            return Err(Error::DimensionMismatch {
                expected: params.m,
                got: category.m(),
            });
        }
        let m = params.m;
        let vcount = vertices.len() as u32;
        let ecount = edges.len() as u32;
        let vertices: Vec<Vertex> = vertices
            .into_iter()
            .enumerate()
            .map(|(id, (fan, closed))| Vertex {
                id: id as u32,
                fan,
                closed,
            })
            .collect();
        for v in &vertices {
            for &e in &v.fan {
                if e >= ecount {
                    return Err(Error::UnknownId { kind: "edge", id: e });
                }
            }
        }
        let mut edges: Vec<Edge> = edges
            .into_iter()
            .enumerate()
            .map(|(id, (src, tgt))| Edge {
                id: id as u32,
                src,
                tgt,
                slots: Vec::new(),
            })
            .collect();
        for e in &edges {
            if e.src >= vcount || e.tgt >= vcount {
                return Err(Error::UnknownId {
                    kind: "vertex",
                    id: e.src.max(e.tgt),
                });
            }
        }
        let mut built_tiles = Vec::with_capacity(tiles.len());
        for (id, (tile_edges, color, word)) in tiles.into_iter().enumerate() {
            if tile_edges.len() != m {
                return Err(Error::InvalidParams(format!(
                    "tile {id} has {} edges, expected {m}",
                    tile_edges.len()
                )));
            }
            if color != 1 && color != -1 {
                return Err(Error::InvalidParams(format!(
                    "tile {id} has color {color}, expected +1 or -1"
                )));
            }
            for &e in &tile_edges {
                if e >= ecount {
                    return Err(Error::UnknownId { kind: "edge", id: e });
                }
            }
            // Corner v_{k+1} is the vertex shared by d_k and d_{k+1}.
            let mut corners = Vec::with_capacity(m);
            for k in 0..m {
                let before = &edges[tile_edges[(k + m - 1) % m] as usize];
                let after = &edges[tile_edges[k] as usize];
                let ends_a = [before.src, before.tgt];
                let shared: Vec<u32> = [after.src, after.tgt]
                    .into_iter()
                    .filter(|v| ends_a.contains(v))
                    .collect();
                match shared.as_slice() {
                    [v] => corners.push(*v),
                    _ => {
                        return Err(Error::InvalidParams(format!(
                            "tile {id}: edges d_{k} and d_{} do not share a unique vertex",
                            k + 1
                        )))
                    }
                }
            }
            for (k, &e) in tile_edges.iter().enumerate() {
                edges[e as usize].slots.push((id as u32, k + 1));
                if edges[e as usize].slots.len() > 2 {
                    return Err(Error::InvalidParams(format!(
                        "edge {e} is incident to more than two tiles"
                    )));
                }
            }
            built_tiles.push(Tile {
                id: id as u32,
                edges: tile_edges,
                corners,
                color,
                word,
            });
        }
        let mut patch = TilingPatch {
            params,
            category,
            radius,
            reflective: false,
            vertices,
            edges,
            tiles: built_tiles,
        };
        patch.reflective = patch.compute_reflective();
        Ok(patch)
    }

    /// Check every structural invariant and report the violations.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let m = self.params.m;
        let n = self.params.n;
        let delta = self.category.code();

        for tile in &self.tiles {
            // Presheaf law: the vertex shared by d_i and d_{i+1} sits as
            // source or target of d_i exactly as the category code dictates.
            for k in 0..m {
                let e = &self.edges[tile.edges[k] as usize];
                let (va, vb) = (tile.corners[k], tile.corners[(k + 1) % m]);
                let ok = if delta.entry(k + 1) == 1 {
                    e.src == va && e.tgt == vb
                } else {
                    e.src == vb && e.tgt == va
                };
                if !ok {
                    report.violations.push(Violation::PresheafLaw {
                        tile: tile.id,
                        label: k + 1,
                    });
                }
            }
            let distinct_edges: HashSet<u32> = tile.edges.iter().copied().collect();
            let distinct_corners: HashSet<u32> = tile.corners.iter().copied().collect();
            if distinct_edges.len() != m || distinct_corners.len() != m {
                report
                    .violations
                    .push(Violation::Nonsingular { tile: tile.id });
            }
        }

        let mut shared: BTreeMap<(u32, u32), usize> = BTreeMap::new();
        for e in &self.edges {
            if let [(t1, _), (t2, _)] = e.slots[..] {
                let key = (t1.min(t2), t1.max(t2));
                *shared.entry(key).or_insert(0) += 1;
                if self.tiles[t1 as usize].color == self.tiles[t2 as usize].color {
                    report.violations.push(Violation::ColorLaw { edge: e.id });
                }
            }
        }
        for ((a, b), count) in shared {
            if count > 1 {
                report
                    .violations
                    .push(Violation::SharedEdgeBound { tile_a: a, tile_b: b });
            }
        }

        for v in &self.vertices {
            if v.closed && v.fan.len() != n {
                report.violations.push(Violation::InteriorVertexDegree {
                    vertex: v.id,
                    degree: v.fan.len(),
                });
            }
        }

        for e in &self.edges {
            let both_closed =
                self.vertices[e.src as usize].closed && self.vertices[e.tgt as usize].closed;
            if both_closed && e.slots.len() != 2 {
                report.violations.push(Violation::InteriorEdgeTileCount {
                    edge: e.id,
                    count: e.slots.len(),
                });
            }
        }

        let euler = self.vertices.len() as i64 - self.edges.len() as i64 + self.tiles.len() as i64;
        if euler != 1 {
            report
                .violations
                .push(Violation::EulerCharacteristic { value: euler });
        }

        if self.reflective {
            for e in &self.edges {
                if let [(_, l1), (_, l2)] = e.slots[..] {
                    if l1 != l2 {
                        report
                            .violations
                            .push(Violation::ReflectiveLabel { edge: e.id });
                    }
                }
            }
            for v in &self.vertices {
                if !v.closed {
                    continue;
                }
                let labels: Vec<usize> = v
                    .fan
                    .iter()
                    .map(|&e| self.edges[e as usize].slots[0].1)
                    .collect();
                let alternates = labels.len() % 2 == 0
                    && labels.iter().enumerate().all(|(k, &l)| l == labels[k % 2])
                    && (labels[0] % m + 1 == labels[1] || labels[1] % m + 1 == labels[0]);
                if !alternates {
                    report
                        .violations
                        .push(Violation::LabelAlternation { vertex: v.id });
                }
            }
        }

        report
    }

    /// Adjacent tiles of `tile` as `(label, neighbor)`, in label order.
    pub fn adjacencies(&self, tile: u32) -> Vec<(usize, u32)> {
        let t = &self.tiles[tile as usize];
        (1..=self.params.m)
            .filter_map(|label| {
                self.edges[t.edges[label - 1] as usize]
                    .slots
                    .iter()
                    .map(|&(other, _)| other)
                    .find(|&other| other != tile)
                    .map(|other| (label, other))
            })
            .collect()
    }

    /// Route of a shortest track from `x` to `y`. Consecutive tiles of the
    /// track share the edge carrying the returned label.
    pub fn track_between(&self, x: u32, y: u32) -> Result<Vec<usize>> {
        self.tile(x)?;
        self.tile(y)?;
        if x == y {
            return Ok(Vec::new());
        }
        let mut prev: Vec<Option<(u32, usize)>> = vec![None; self.tiles.len()];
        let mut queue = VecDeque::from([x]);
        let mut seen = vec![false; self.tiles.len()];
        seen[x as usize] = true;
        while let Some(cur) = queue.pop_front() {
            if cur == y {
                break;
            }
            for (label, next) in self.adjacencies(cur) {
                if !seen[next as usize] {
                    seen[next as usize] = true;
                    prev[next as usize] = Some((cur, label));
                    queue.push_back(next);
                }
            }
        }
        if !seen[y as usize] {
            return Err(Error::NoTrack { from: x, to: y });
        }
        let mut route = Vec::new();
        let mut cur = y;
        while cur != x {
            let (p, label) = prev[cur as usize].expect("reached tiles have a parent");
            route.push(label);
            cur = p;
        }
        route.reverse();
        Ok(route)
    }

    /// Maximal extension of `e` through opposite edges at closed vertices,
    /// ordered from one end to the other. Returns the singleton when no
    /// extension exists.
    pub fn geodesic_through(&self, e: u32) -> Result<Vec<u32>> {
        self.edge(e)?;
        let n = self.params.n;
        let mut seen: HashSet<u32> = HashSet::from([e]);
        let extend = |start_vertex: u32, seen: &mut HashSet<u32>| -> Vec<u32> {
            let mut path = Vec::new();
            let mut cur_edge = e;
            let mut cur_vertex = start_vertex;
            loop {
                let vertex = &self.vertices[cur_vertex as usize];
                if !vertex.closed {
                    break;
                }
                let idx = vertex
                    .fan
                    .iter()
                    .position(|&f| f == cur_edge)
                    .expect("edge incident to its endpoint");
                let next = vertex.fan[(idx + n / 2) % n];
                if !seen.insert(next) {
                    break;
                }
                path.push(next);
                cur_vertex = self.edges[next as usize].other_endpoint(cur_vertex);
                cur_edge = next;
            }
            path
        };
        let src_side = extend(self.edges[e as usize].src, &mut seen);
        let tgt_side = extend(self.edges[e as usize].tgt, &mut seen);
        let mut out: Vec<u32> = src_side.into_iter().rev().collect();
        out.push(e);
        out.extend(tgt_side);
        Ok(out)
    }

    /// The stored word of a tile: the route of a shortest track from the
    /// base tile.
    pub fn coxeter_word(&self, tile: u32) -> Result<&[usize]> {
        Ok(&self.tile(tile)?.word)
    }

    /// All geodesics containing at least one interior edge, each listed once.
    pub fn interior_geodesics(&self) -> Vec<Vec<u32>> {
        let mut assigned: HashSet<u32> = HashSet::new();
        let mut out = Vec::new();
        for e in &self.edges {
            if !e.is_interior() || assigned.contains(&e.id) {
                continue;
            }
            let geo = self.geodesic_through(e.id).expect("edge id is valid");
            for &g in &geo {
                assigned.insert(g);
            }
            out.push(geo);
        }
        out
    }
}
