//! Edge reversals of patches, the realignment construction, reflection
//! schemes with their generated reversals, and the symmetry checks for
//! reflections across geodesics.
//!
//! An [`EdgeReversal`] assigns `+1` (keep) or `-1` (flip) to every edge of a
//! patch. Viewed tile by tile it gives a sign tuple per tile; when every such
//! tuple lies in the restricted direction set of a target category, the patch
//! can be rebuilt over the target by flipping the marked edges and permuting
//! each tile's labels by a dihedral element chosen per tile.
//!
//! A [`ReflectionScheme`] prescribes, per edge label, how a tile's reversal
//! tuple changes across that edge. For vertex degrees divisible by 4 the
//! scheme extends to a homomorphism from the tiling's Coxeter group into the
//! direction group, and the reversal it generates changes by a fixed code
//! under every reflection across a geodesic.

use std::collections::BTreeMap;

use crate::dihedral::{DihedralElement, EdgeReversalCode, Sign};
use crate::error::{Error, Result};
use crate::mgon::MGonCategory;
use crate::patch::TilingPatch;
use crate::reversal::ReversalClosedSubset;

/// A total assignment of signs to the edges of one patch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeReversal {
    values: Vec<Sign>,
}

impl EdgeReversal {
    pub fn constant(patch: &TilingPatch, sign: Sign) -> Self {
        Self {
            values: vec![sign; patch.edges().len()],
        }
    }

    /// Assign explicit `(edge id, sign)` pairs; every edge must be covered
    /// exactly once.
    pub fn from_pairs(patch: &TilingPatch, pairs: &[(u32, Sign)]) -> Result<Self> {
        let mut values: Vec<Option<Sign>> = vec![None; patch.edges().len()];
        for &(id, sign) in pairs {
            if sign != 1 && sign != -1 {
                return Err(Error::InvalidSignString(sign.to_string()));
            }
            let slot = values
                .get_mut(id as usize)
                .ok_or(Error::UnknownId { kind: "edge", id })?;
            if slot.is_some() {
                return Err(Error::Schema {
                    context: "edge reversal".into(),
                    message: format!("edge {id} assigned twice"),
                });
            }
            *slot = Some(sign);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(id, v)| {
                v.ok_or(Error::Schema {
                    context: "edge reversal".into(),
                    message: format!("edge {id} missing a sign"),
                })
            })
            .collect::<Result<Vec<Sign>>>()?;
        Ok(Self { values })
    }

    /// Give every tile the same sign tuple. Requires a reflective patch so
    /// that the two tiles of a shared edge agree on its sign.
    pub fn uniform(patch: &TilingPatch, tuple: &EdgeReversalCode) -> Result<Self> {
        if tuple.m() != patch.m() {
            return Err(Error::DimensionMismatch {
                expected: patch.m(),
                got: tuple.m(),
            });
        }
        Self::from_tile_tuples(patch, |_| tuple.clone())
    }

    /// Build from a per-tile tuple assignment, checking that the two tiles
    /// of every shared edge agree.
    pub fn from_tile_tuples(
        patch: &TilingPatch,
        tuple_of: impl Fn(u32) -> EdgeReversalCode,
    ) -> Result<Self> {
        let mut values: Vec<Option<Sign>> = vec![None; patch.edges().len()];
        for tile in patch.tiles() {
            let tuple = tuple_of(tile.id);
            for (k, &e) in tile.edges.iter().enumerate() {
                let sign = tuple.entry(k + 1);
                match values[e as usize] {
                    None => values[e as usize] = Some(sign),
                    Some(prev) if prev == sign => {}
                    Some(_) => {
                        return Err(Error::Schema {
                            context: "edge reversal".into(),
                            message: format!(
                                "tiles disagree on the sign of edge {e}; the tuple assignment is not a map on edges"
                            ),
                        })
                    }
                }
            }
        }
        Ok(Self {
            values: values.into_iter().map(|v| v.expect("edges all touched")).collect(),
        })
    }

    pub fn value(&self, edge: u32) -> Sign {
        self.values[edge as usize]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn pairs(&self) -> Vec<(u32, Sign)> {
        self.values
            .iter()
            .enumerate()
            .map(|(id, &s)| (id as u32, s))
            .collect()
    }

    /// The tuple `(tau(d_1(x)), ..., tau(d_m(x)))` of one tile.
    pub fn tile_tuple(&self, patch: &TilingPatch, tile: u32) -> Result<EdgeReversalCode> {
        let t = patch.tile(tile)?;
        EdgeReversalCode::new(t.edges.iter().map(|&e| self.values[e as usize]).collect())
    }
}

/// Rebuild a patch over `target`, reversing every edge with a `-1` and
/// permuting each tile's labels by the least dihedral element that matches
/// its tuple. Returns the new patch and the chosen element per tile.
pub fn apply_reversal(
    patch: &TilingPatch,
    tau: &EdgeReversal,
    target: &MGonCategory,
) -> Result<(TilingPatch, BTreeMap<u32, DihedralElement>)> {
    let m = patch.m();
    if target.m() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            got: target.m(),
        });
    }
    if tau.len() != patch.edges().len() {
        return Err(Error::Schema {
            context: "edge reversal".into(),
            message: format!(
                "reversal covers {} edges, patch has {}",
                tau.len(),
                patch.edges().len()
            ),
        });
    }
    let base_code = patch.category().code();
    // sigma -> base . sigma(target), the realizable tuples in order.
    let candidates: Vec<(DihedralElement, EdgeReversalCode)> = DihedralElement::all(m)
        .into_iter()
        .map(|s| {
            let code = base_code
                .product(&s.act_on_code(target.code()).expect("same m"))
                .expect("same m");
            (s, code)
        })
        .collect();
    let flip = DihedralElement::reflection(m);

    let mut sigma_of: BTreeMap<u32, DihedralElement> = BTreeMap::new();
    let mut new_tiles = Vec::with_capacity(patch.tiles().len());
    for tile in patch.tiles() {
        let tuple = tau.tile_tuple(patch, tile.id)?;
        let sigma = candidates
            .iter()
            .find(|(_, code)| *code == tuple)
            .map(|(s, _)| *s)
            .ok_or_else(|| Error::NotRealizable {
                tile: tile.id,
                tuple: tuple.to_string(),
            })?;
        sigma_of.insert(tile.id, sigma);
        // The label permutation is the index action of the conjugate element
        // f . sigma . f; this is what keeps the new labels running cyclically
        // around each tile after the flips.
        let relabel = flip.conjugate(&sigma)?;
        let edges: Vec<u32> = (1..=m)
            .map(|i| tile.edges[relabel.act_on_index(i).expect("index in range") - 1])
            .collect();
        new_tiles.push((edges, tile.color, tile.word.clone()));
    }

    let new_edges: Vec<(u32, u32)> = patch
        .edges()
        .iter()
        .map(|e| {
            if tau.value(e.id) == 1 {
                (e.src, e.tgt)
            } else {
                (e.tgt, e.src)
            }
        })
        .collect();
    let vertices: Vec<(Vec<u32>, bool)> = patch
        .vertices()
        .iter()
        .map(|v| (v.fan.clone(), v.closed))
        .collect();
    let new_patch = TilingPatch::from_parts(
        patch.params(),
        target.clone(),
        patch.radius(),
        vertices,
        new_edges,
        new_tiles,
    )?;
    Ok((new_patch, sigma_of))
}

/// Per-label reversal codes prescribing how adjacent tiles differ, valid over
/// a reversal-closed subset for the target category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReflectionScheme {
    base: MGonCategory,
    target: MGonCategory,
    n: usize,
    gamma: ReversalClosedSubset,
    values: Vec<EdgeReversalCode>,
}

impl ReflectionScheme {
    pub fn new(
        base: MGonCategory,
        target: MGonCategory,
        n: usize,
        gamma: ReversalClosedSubset,
        values: Vec<EdgeReversalCode>,
    ) -> Result<Self> {
        let m = base.m();
        if target.m() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                got: target.m(),
            });
        }
        if n == 0 || n % 4 != 0 {
            return Err(Error::InvalidScheme(format!(
                "degree must be a positive multiple of 4, got {n}"
            )));
        }
        if gamma.delta() != target.code() {
            return Err(Error::InvalidScheme(format!(
                "gamma is reversal-closed for {}, not the target code {}",
                gamma.delta(),
                target.code()
            )));
        }
        if values.len() != m {
            return Err(Error::InvalidScheme(format!(
                "expected {m} values, got {}",
                values.len()
            )));
        }
        let lambda_gamma: Vec<EdgeReversalCode> = gamma
            .elements()
            .iter()
            .map(|s| {
                target
                    .code()
                    .product(&s.act_on_code(target.code()).expect("same m"))
                    .expect("same m")
            })
            .collect();
        for (k, phi) in values.iter().enumerate() {
            if phi.m() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    got: phi.m(),
                });
            }
            if phi.entry(k + 1) != 1 {
                return Err(Error::InvalidScheme(format!(
                    "phi(s_{}) = {phi} must have +1 in component {}",
                    k + 1,
                    k + 1
                )));
            }
            if !lambda_gamma.contains(phi) {
                return Err(Error::InvalidScheme(format!(
                    "phi(s_{}) = {phi} lies outside the gamma-restricted direction set",
                    k + 1
                )));
            }
        }
        Ok(Self {
            base,
            target,
            n,
            gamma,
            values,
        })
    }

    pub fn m(&self) -> usize {
        self.base.m()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> &MGonCategory {
        &self.base
    }

    pub fn target(&self) -> &MGonCategory {
        &self.target
    }

    pub fn gamma(&self) -> &ReversalClosedSubset {
        &self.gamma
    }

    pub fn values(&self) -> &[EdgeReversalCode] {
        &self.values
    }

    /// `phi(s_label)`, 1-based.
    pub fn phi(&self, label: usize) -> &EdgeReversalCode {
        &self.values[label - 1]
    }

    /// Image of a route under the scheme read as a homomorphism.
    pub fn phi_of_route(&self, route: &[usize]) -> EdgeReversalCode {
        route.iter().fold(
            EdgeReversalCode::all_ones(self.m()),
            |acc, &label| acc.product(self.phi(label)).expect("same m"),
        )
    }
}

/// All value tuples `(phi(s_1), ..., phi(s_m))` that satisfy the component
/// rule and extend to a homomorphism from the {m,n} Coxeter group: adjacent
/// generators need `(phi_i . phi_j)^(n/2) = 1`, which for `n = 2 (mod 4)`
/// forces `phi_i = phi_j`.
pub fn enumerate_coxeter_value_tuples(m: usize, n: usize) -> Result<Vec<Vec<EdgeReversalCode>>> {
    if n < 4 || n % 2 != 0 {
        return Err(Error::InvalidParams(format!(
            "vertex degree must be even and at least 4, got {n}"
        )));
    }
    let adjacent_must_match = (n / 2) % 2 == 1;
    if m > 4 && !adjacent_must_match {
        return Err(Error::BoundExceeded {
            m,
            bound: 4,
            what: "unconstrained scheme enumeration",
        });
    }
    // Candidates for phi(s_i): +1 in component i.
    let candidates_for = |i: usize| -> Vec<EdgeReversalCode> {
        (0..1u32 << m)
            .map(|bits| {
                EdgeReversalCode::new(
                    (0..m)
                        .map(|k| if bits >> k & 1 == 1 { -1 } else { 1 })
                        .collect(),
                )
                .expect("valid signs")
            })
            .filter(|c| c.entry(i) == 1)
            .collect()
    };
    let mut out = Vec::new();
    let mut partial: Vec<EdgeReversalCode> = Vec::new();
    fn extend(
        m: usize,
        adjacent_must_match: bool,
        candidates_for: &dyn Fn(usize) -> Vec<EdgeReversalCode>,
        partial: &mut Vec<EdgeReversalCode>,
        out: &mut Vec<Vec<EdgeReversalCode>>,
    ) {
        let i = partial.len() + 1;
        if i > m {
            if !adjacent_must_match || partial[m - 1] == partial[0] {
                out.push(partial.clone());
            }
            return;
        }
        for c in candidates_for(i) {
            if adjacent_must_match && i > 1 && partial[i - 2] != c {
                continue;
            }
            partial.push(c);
            extend(m, adjacent_must_match, candidates_for, partial, out);
            partial.pop();
        }
    }
    extend(m, adjacent_must_match, &candidates_for, &mut partial, &mut out);
    Ok(out)
}

fn require_reflective(patch: &TilingPatch) -> Result<()> {
    if !patch.is_reflective() {
        return Err(Error::InvalidParams(
            "operation requires a reflective-labeled patch".into(),
        ));
    }
    Ok(())
}

/// The unique scheme-generated edge reversal with
/// `tau(base tile) = d^C . sigma0(d^C')`.
pub fn generate_from_scheme(
    patch: &TilingPatch,
    scheme: &ReflectionScheme,
    sigma0: &DihedralElement,
) -> Result<EdgeReversal> {
    require_reflective(patch)?;
    if patch.category() != scheme.base() {
        return Err(Error::InvalidScheme(format!(
            "patch category {} differs from scheme base {}",
            patch.category().code(),
            scheme.base().code()
        )));
    }
    if patch.n() != scheme.n() {
        return Err(Error::InvalidScheme(format!(
            "patch degree {} differs from scheme degree {}",
            patch.n(),
            scheme.n()
        )));
    }
    if !scheme.gamma().contains(sigma0) {
        return Err(Error::InvalidScheme(format!(
            "sigma0 = {sigma0} is not in gamma"
        )));
    }
    let start = patch
        .category()
        .code()
        .product(&sigma0.act_on_code(scheme.target().code())?)?;
    let tuples: Vec<EdgeReversalCode> = patch
        .tiles()
        .iter()
        .map(|t| start.product(&scheme.phi_of_route(&t.word)).expect("same m"))
        .collect();
    EdgeReversal::from_tile_tuples(patch, |t| tuples[t as usize].clone())
}

/// Does `tau(neighbor_i(x)) = phi(s_i) . tau(x)` hold at every interior tile?
pub fn check_phi_generated(
    patch: &TilingPatch,
    tau: &EdgeReversal,
    scheme: &ReflectionScheme,
) -> Result<bool> {
    require_reflective(patch)?;
    for &x in &patch.interior_tiles() {
        let tx = tau.tile_tuple(patch, x)?;
        for i in 1..=patch.m() {
            let y = patch
                .neighbor(x, i)
                .expect("interior tiles have all neighbors");
            let expected = scheme.phi(i).product(&tx)?;
            if tau.tile_tuple(patch, y)? != expected {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Two adjacent tiles whose tuples disagree about a scheme value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeInconsistency {
    pub label: usize,
    pub tile_a: u32,
    pub tile_b: u32,
    pub first_value: EdgeReversalCode,
    pub conflicting_value: EdgeReversalCode,
}

/// Outcome of [`infer_scheme`].
#[derive(Debug, Clone)]
pub enum InferOutcome {
    Scheme(ReflectionScheme),
    Inconsistent(SchemeInconsistency),
}

/// Read the candidate `phi(s_i) := tau(x) . tau(y)` off every interior
/// adjacency and either assemble the unique validated scheme or report the
/// first disagreeing pair of tiles.
pub fn infer_scheme(patch: &TilingPatch, tau: &EdgeReversal) -> Result<InferOutcome> {
    require_reflective(patch)?;
    if patch.radius() < 2 {
        return Err(Error::InvalidParams(
            "scheme inference needs radius >= 2 so every label has an interior adjacency".into(),
        ));
    }
    let m = patch.m();
    let mut phi: Vec<Option<(EdgeReversalCode, u32, u32)>> = vec![None; m + 1];
    for edge in patch.edges() {
        if !edge.is_interior() {
            continue;
        }
        let [(ta, label), (tb, _)] = edge.slots[..] else {
            continue;
        };
        if !patch.tile_is_interior(ta) || !patch.tile_is_interior(tb) {
            continue;
        }
        let value = tau
            .tile_tuple(patch, ta)?
            .product(&tau.tile_tuple(patch, tb)?)?;
        match &phi[label] {
            None => phi[label] = Some((value, ta, tb)),
            Some((prev, _, _)) if *prev == value => {}
            Some((prev, _, _)) => {
                return Ok(InferOutcome::Inconsistent(SchemeInconsistency {
                    label,
                    tile_a: ta,
                    tile_b: tb,
                    first_value: prev.clone(),
                    conflicting_value: value,
                }));
            }
        }
    }
    let values: Vec<EdgeReversalCode> = (1..=m)
        .map(|i| {
            phi[i]
                .as_ref()
                .map(|(v, _, _)| v.clone())
                .ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "no interior adjacency witnesses label {i}; grow the patch"
                    ))
                })
        })
        .collect::<Result<Vec<_>>>()?;

    // The target code is determined up to the choice of sigma0; taking the
    // base tile's tuple fixes sigma0 = e.
    let target_code = patch
        .category()
        .code()
        .product(&tau.tile_tuple(patch, patch.base_tile())?)?;
    let target = MGonCategory::new(target_code.clone())?;
    let lambda_of = |gamma: &ReversalClosedSubset| -> Vec<EdgeReversalCode> {
        gamma
            .elements()
            .iter()
            .map(|s| {
                target_code
                    .product(&s.act_on_code(&target_code).expect("same m"))
                    .expect("same m")
            })
            .collect()
    };
    let gamma = crate::reversal::enumerate_maximal(&target_code)?
        .into_iter()
        .find(|g| {
            let lam = lambda_of(g);
            values.iter().all(|v| lam.contains(v))
        })
        .ok_or_else(|| {
            Error::InvalidScheme(
                "inferred values lie in no maximal reversal-closed direction set".into(),
            )
        })?;
    let scheme = ReflectionScheme::new(
        patch.category().clone(),
        target,
        patch.n(),
        gamma,
        values,
    )?;
    Ok(InferOutcome::Scheme(scheme))
}

/// The involutive tile map induced by reflecting across a geodesic, defined
/// on the largest sub-patch the patch can witness.
pub fn reflect_automorphism(
    patch: &TilingPatch,
    geodesic: &[u32],
) -> Result<BTreeMap<u32, u32>> {
    require_reflective(patch)?;
    let mut map: BTreeMap<u32, u32> = BTreeMap::new();
    let mut queue: Vec<u32> = Vec::new();
    for &e in geodesic {
        let edge = patch.edge(e)?;
        if let [(a, _), (b, _)] = edge.slots[..] {
            map.insert(a, b);
            map.insert(b, a);
            queue.push(a);
            queue.push(b);
        }
    }
    if map.is_empty() {
        return Err(Error::EmptyDomain(
            "geodesic has no interior edge to seed the reflection".into(),
        ));
    }
    while let Some(x) = queue.pop() {
        let gx = map[&x];
        for (label, y) in patch.adjacencies(x) {
            let Some(gy) = patch.neighbor(gx, label) else {
                continue;
            };
            match map.get(&y) {
                None => {
                    map.insert(y, gy);
                    map.insert(gy, y);
                    queue.push(y);
                }
                Some(&prev) if prev == gy => {}
                Some(&prev) => {
                    return Err(Error::InvalidParams(format!(
                        "reflection is not well-defined: tile {y} maps to both {prev} and {gy}"
                    )));
                }
            }
        }
    }
    Ok(map)
}

/// Does `tau(gamma(x)) = psi . tau(x)` hold for every tile in the domain?
pub fn check_psi_reflective(
    patch: &TilingPatch,
    tau: &EdgeReversal,
    gamma: &BTreeMap<u32, u32>,
    psi: &EdgeReversalCode,
) -> Result<bool> {
    if gamma.is_empty() {
        return Err(Error::EmptyDomain("automorphism has no domain".into()));
    }
    for (&x, &gx) in gamma {
        if tau.tile_tuple(patch, gx)? != psi.product(&tau.tile_tuple(patch, x)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Infer the code by which `tau` changes under an automorphism, from its
/// first mapped pair.
pub fn infer_psi(
    patch: &TilingPatch,
    tau: &EdgeReversal,
    gamma: &BTreeMap<u32, u32>,
) -> Result<EdgeReversalCode> {
    let (&x, &gx) = gamma
        .iter()
        .next()
        .ok_or_else(|| Error::EmptyDomain("automorphism has no domain".into()))?;
    tau.tile_tuple(patch, gx)?
        .product(&tau.tile_tuple(patch, x)?)
}

/// Compose reflections across the given geodesics (applied left to right)
/// and return the product of their per-reflection codes together with the
/// composite map. The composite changes `tau` by exactly the returned code.
pub fn composite_symmetry(
    patch: &TilingPatch,
    tau: &EdgeReversal,
    geodesics: &[Vec<u32>],
) -> Result<(EdgeReversalCode, BTreeMap<u32, u32>)> {
    let mut psi = EdgeReversalCode::all_ones(patch.m());
    let mut composite: Option<BTreeMap<u32, u32>> = None;
    for geodesic in geodesics {
        let reflection = reflect_automorphism(patch, geodesic)?;
        psi = psi.product(&infer_psi(patch, tau, &reflection)?)?;
        composite = Some(match composite {
            None => reflection,
            Some(prev) => prev
                .into_iter()
                .filter_map(|(x, mid)| reflection.get(&mid).map(|&end| (x, end)))
                .collect(),
        });
    }
    let composite = composite.unwrap_or_default();
    if composite.is_empty() {
        return Err(Error::EmptyDomain(
            "composite automorphism has empty domain".into(),
        ));
    }
    Ok((psi, composite))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patch::CoxeterParams;

    fn code(s: &str) -> EdgeReversalCode {
        EdgeReversalCode::parse(s).unwrap()
    }

    fn build(m: usize, n: usize, cat: &str, radius: usize) -> TilingPatch {
        TilingPatch::build_reflective(
            CoxeterParams::new(m, n).unwrap(),
            MGonCategory::parse(cat).unwrap(),
            radius,
        )
        .unwrap()
    }

    fn elem(m: usize, name: &str) -> DihedralElement {
        DihedralElement::parse(m, name).unwrap()
    }

    fn gamma(delta: &str, names: &[&str]) -> ReversalClosedSubset {
        let d = code(delta);
        ReversalClosedSubset::new(
            d.clone(),
            names.iter().map(|n| elem(d.m(), n)).collect::<Vec<_>>(),
        )
        .unwrap()
    }

    fn whole_group(delta: &str) -> ReversalClosedSubset {
        let d = code(delta);
        ReversalClosedSubset::new(d.clone(), DihedralElement::all(d.m())).unwrap()
    }

    /// The square scheme with phi(s_1) = phi(s_2) = (1,1,-1,-1) over the
    /// category coded (-1,-1,1,-1).
    fn square_scheme() -> ReflectionScheme {
        ReflectionScheme::new(
            MGonCategory::parse("--+-").unwrap(),
            MGonCategory::parse("--+-").unwrap(),
            4,
            whole_group("--+-"),
            vec![code("++--"), code("++--"), code("--++"), code("--++")],
        )
        .unwrap()
    }

    /// The pentagon scheme phi = (++---, +++++, --+++, --+++, --+++) over a
    /// cyclic base, valid for the target coded (-1,1,1,1,1).
    fn pentagon_scheme() -> ReflectionScheme {
        ReflectionScheme::new(
            MGonCategory::cyclic(5),
            MGonCategory::parse("-++++").unwrap(),
            4,
            gamma("-++++", &["e", "r^4", "f r^1", "f r^2"]),
            vec![
                code("++---"),
                code("+++++"),
                code("--+++"),
                code("--+++"),
                code("--+++"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn identity_reversal_is_the_identity_transformation() {
        let patch = build(4, 4, "++++", 1);
        let tau = EdgeReversal::constant(&patch, 1);
        let (out, sigmas) = apply_reversal(&patch, &tau, patch.category()).unwrap();
        assert!(sigmas.values().all(|s| s.is_identity()));
        assert_eq!(out.edges(), patch.edges());
        assert_eq!(out.tiles(), patch.tiles());
        assert!(out.validate().is_empty());
    }

    #[test]
    fn pentagon_realignment_matches_the_worked_example() {
        // tau = (-1,1,1,1,-1) on every tile of the cyclic {5,4} patch,
        // aimed at the category coded (1,1,-1,-1,-1).
        let patch = build(5, 4, "+++++", 2);
        let tau = EdgeReversal::uniform(&patch, &code("-+++-")).unwrap();
        let target = MGonCategory::parse("++---").unwrap();
        let (out, sigmas) = apply_reversal(&patch, &tau, &target).unwrap();
        let fr = elem(5, "f r^1");
        assert!(sigmas.values().all(|s| *s == fr));
        // Relabeling d1' = d1, d2' = d5, d3' = d4, d4' = d3, d5' = d2.
        for tile in patch.tiles() {
            let new = &out.tiles()[tile.id as usize];
            let old = &tile.edges;
            assert_eq!(
                new.edges,
                vec![old[0], old[4], old[3], old[2], old[1]],
                "tile {}",
                tile.id
            );
        }
        // Edges labeled d_1 or d_5 were reversed, the rest kept.
        for e in patch.edges() {
            let old_label = e.slots[0].1;
            let new_edge = &out.edges()[e.id as usize];
            if old_label == 1 || old_label == 5 {
                assert_eq!((new_edge.src, new_edge.tgt), (e.tgt, e.src));
            } else {
                assert_eq!((new_edge.src, new_edge.tgt), (e.src, e.tgt));
            }
        }
        assert!(out.validate().is_empty(), "{:?}", out.validate().violations);
    }

    #[test]
    fn lone_flipped_edge_is_not_realizable() {
        let patch = build(4, 4, "++++", 1);
        let mut pairs = EdgeReversal::constant(&patch, 1).pairs();
        pairs[0].1 = -1;
        let tau = EdgeReversal::from_pairs(&patch, &pairs).unwrap();
        let err = apply_reversal(&patch, &tau, patch.category()).unwrap_err();
        match err {
            Error::NotRealizable { tile, .. } => {
                let flipped: Vec<u32> =
                    patch.edges()[0].slots.iter().map(|&(t, _)| t).collect();
                assert!(flipped.contains(&tile));
            }
            other => panic!("expected NotRealizable, got {other}"),
        }
    }

    #[test]
    fn round_trip_restores_directions() {
        let patch = build(5, 4, "+++++", 2);
        let tau = EdgeReversal::uniform(&patch, &code("-+++-")).unwrap();
        let target = MGonCategory::parse("++---").unwrap();
        let (forward, _) = apply_reversal(&patch, &tau, &target).unwrap();
        let (back, _) = apply_reversal(&forward, &tau, patch.category()).unwrap();
        assert!(back.validate().is_empty());
        for e in patch.edges() {
            let b = &back.edges()[e.id as usize];
            assert_eq!((b.src, b.tgt), (e.src, e.tgt));
        }
        // Tiles keep their edge sets; labels may differ by a stabilizing
        // permutation.
        for t in patch.tiles() {
            let mut old: Vec<u32> = t.edges.clone();
            let mut new: Vec<u32> = back.tiles()[t.id as usize].edges.clone();
            old.sort_unstable();
            new.sort_unstable();
            assert_eq!(old, new);
        }
    }

    #[test]
    fn all_ones_scheme_generates_a_constant_reversal() {
        let patch = build(4, 4, "++++", 2);
        let scheme = ReflectionScheme::new(
            MGonCategory::cyclic(4),
            MGonCategory::cyclic(4),
            4,
            whole_group("++++"),
            vec![code("++++"); 4],
        )
        .unwrap();
        let f = elem(4, "f");
        let tau = generate_from_scheme(&patch, &scheme, &f).unwrap();
        let expected = f.act_on_code(&code("++++")).unwrap();
        for t in patch.tiles() {
            assert_eq!(tau.tile_tuple(&patch, t.id).unwrap(), expected);
        }
        assert!(check_phi_generated(&patch, &tau, &scheme).unwrap());
    }

    #[test]
    fn square_scheme_generates_the_diagonal_pattern() {
        let patch = build(4, 4, "--+-", 3);
        let scheme = square_scheme();
        let e = DihedralElement::identity(4);
        let tau = generate_from_scheme(&patch, &scheme, &e).unwrap();
        assert_eq!(
            tau.tile_tuple(&patch, patch.base_tile()).unwrap(),
            code("++++")
        );
        assert!(check_phi_generated(&patch, &tau, &scheme).unwrap());
        // Tiles whose words have equal counts of {1,2}-letters mod 2 and
        // {3,4}-letters mod 2 get equal tuples.
        let class = |word: &[usize]| {
            (
                word.iter().filter(|&&l| l <= 2).count() % 2,
                word.iter().filter(|&&l| l >= 3).count() % 2,
            )
        };
        for a in patch.tiles() {
            for b in patch.tiles() {
                if class(&a.word) == class(&b.word) {
                    assert_eq!(
                        tau.tile_tuple(&patch, a.id).unwrap(),
                        tau.tile_tuple(&patch, b.id).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn pentagon_scheme_is_phi_generated_everywhere() {
        let patch = build(5, 4, "+++++", 2);
        let scheme = pentagon_scheme();
        let tau =
            generate_from_scheme(&patch, &scheme, &DihedralElement::identity(5)).unwrap();
        assert!(check_phi_generated(&patch, &tau, &scheme).unwrap());
        // Gamma-stability: every tuple lies in d^C . { s(d^C') : s in Gamma }.
        let base = patch.category().code();
        let reachable: Vec<EdgeReversalCode> = scheme
            .gamma()
            .elements()
            .iter()
            .map(|s| {
                base.product(&s.act_on_code(scheme.target().code()).unwrap())
                    .unwrap()
            })
            .collect();
        for t in patch.tiles() {
            assert!(reachable.contains(&tau.tile_tuple(&patch, t.id).unwrap()));
        }
        // Lemma smoke tests: scheme values square to one and commute.
        for a in scheme.values() {
            assert!(a.product(a).unwrap().is_all_ones());
            for b in scheme.values() {
                assert_eq!(a.product(b).unwrap(), b.product(a).unwrap());
            }
        }
    }

    #[test]
    fn phi_check_fails_for_the_wrong_scheme() {
        let patch = build(4, 4, "--+-", 2);
        let scheme = square_scheme();
        let tau = EdgeReversal::constant(&patch, 1);
        assert!(!check_phi_generated(&patch, &tau, &scheme).unwrap());
    }

    #[test]
    fn scheme_generation_is_track_independent() {
        // Recompute tau along alternate tracks through a waypoint: the
        // concatenated route must give the same tuple.
        let patch = build(5, 4, "+++++", 2);
        let scheme = pentagon_scheme();
        let sigma0 = elem(5, "r^4");
        let tau = generate_from_scheme(&patch, &scheme, &sigma0).unwrap();
        let start = patch
            .category()
            .code()
            .product(&sigma0.act_on_code(scheme.target().code()).unwrap())
            .unwrap();
        for &tile in &[3u32, 7, 11] {
            for waypoint in [1u32, 2, 5] {
                let mut route = patch.track_between(0, waypoint).unwrap();
                route.extend(patch.track_between(waypoint, tile).unwrap());
                let recomputed = start.product(&scheme.phi_of_route(&route)).unwrap();
                assert_eq!(recomputed, tau.tile_tuple(&patch, tile).unwrap());
            }
        }
    }

    #[test]
    fn infer_recovers_the_generating_scheme() {
        let patch = build(5, 4, "+++++", 2);
        let scheme = pentagon_scheme();
        let tau =
            generate_from_scheme(&patch, &scheme, &DihedralElement::identity(5)).unwrap();
        match infer_scheme(&patch, &tau).unwrap() {
            InferOutcome::Scheme(inferred) => {
                assert_eq!(inferred.values(), scheme.values());
                assert_eq!(inferred.target().code(), scheme.target().code());
            }
            InferOutcome::Inconsistent(w) => panic!("unexpected inconsistency {w:?}"),
        }
    }

    #[test]
    fn translation_invariant_square_reversal_checks_out() {
        // The {4,4} alignment whose rows alternate, generated by
        // phi = (+-+-, -+-+, +-+-, -+-+) over the cyclic base.
        let patch = build(4, 4, "++++", 2);
        let scheme = ReflectionScheme::new(
            MGonCategory::cyclic(4),
            MGonCategory::parse("+--+").unwrap(),
            4,
            whole_group("+--+"),
            vec![code("+-+-"), code("-+-+"), code("+-+-"), code("-+-+")],
        )
        .unwrap();
        let tau =
            generate_from_scheme(&patch, &scheme, &DihedralElement::identity(4)).unwrap();
        assert_eq!(
            tau.tile_tuple(&patch, patch.base_tile()).unwrap(),
            code("+--+")
        );
        assert!(check_phi_generated(&patch, &tau, &scheme).unwrap());
        match infer_scheme(&patch, &tau).unwrap() {
            InferOutcome::Scheme(inferred) => {
                assert_eq!(inferred.values(), scheme.values());
            }
            InferOutcome::Inconsistent(w) => panic!("unexpected inconsistency {w:?}"),
        }
    }

    #[test]
    fn randomized_reversal_is_inconsistent() {
        use rand::{Rng, SeedableRng};
        let patch = build(4, 4, "++++", 2);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let pairs: Vec<(u32, Sign)> = (0..patch.edges().len() as u32)
            .map(|id| (id, if rng.gen_bool(0.5) { 1 } else { -1 }))
            .collect();
        let tau = EdgeReversal::from_pairs(&patch, &pairs).unwrap();
        match infer_scheme(&patch, &tau) {
            Ok(InferOutcome::Inconsistent(_)) | Err(Error::InvalidScheme(_)) => {}
            other => panic!("expected inconsistency, got {other:?}"),
        }
    }

    #[test]
    fn scheme_validation_rejects_bad_inputs() {
        let base = MGonCategory::parse("--+-").unwrap();
        // Degree not divisible by 4.
        assert!(matches!(
            ReflectionScheme::new(
                base.clone(),
                base.clone(),
                6,
                whole_group("--+-"),
                vec![code("++--"); 4]
            ),
            Err(Error::InvalidScheme(_))
        ));
        // Component rule: phi(s_3) needs +1 in component 3.
        assert!(matches!(
            ReflectionScheme::new(
                base.clone(),
                base.clone(),
                4,
                whole_group("--+-"),
                vec![code("++--"), code("++--"), code("++--"), code("--++")]
            ),
            Err(Error::InvalidScheme(_))
        ));
        // Values must lie in the gamma-restricted set.
        assert!(matches!(
            ReflectionScheme::new(
                base.clone(),
                base,
                4,
                gamma("--+-", &["e"]),
                vec![code("++--"), code("++--"), code("--++"), code("--++")]
            ),
            Err(Error::InvalidScheme(_))
        ));
    }

    #[test]
    fn degree_twice_odd_admits_only_the_trivial_scheme() {
        let tuples = enumerate_coxeter_value_tuples(4, 6).unwrap();
        assert_eq!(tuples.len(), 1);
        assert!(tuples[0].iter().all(|c| c.is_all_ones()));
        // For comparison, degree 4 admits plenty.
        assert_eq!(
            enumerate_coxeter_value_tuples(3, 4).unwrap().len(),
            4usize.pow(3)
        );
    }

    #[test]
    fn reflections_pair_tiles_and_preserve_labels() {
        let patch = build(4, 4, "++++", 2);
        let geodesic = {
            let e = patch.tiles()[0].edges[0];
            patch.geodesic_through(e).unwrap()
        };
        let gamma = reflect_automorphism(&patch, &geodesic).unwrap();
        // Base pairing across the geodesic.
        for &e in &geodesic {
            if let [(a, _), (b, _)] = patch.edges()[e as usize].slots[..] {
                assert_eq!(gamma[&a], b);
                assert_eq!(gamma[&b], a);
            }
        }
        // Involution.
        for (&x, &gx) in &gamma {
            assert_eq!(gamma[&gx], x);
        }
        // Label preservation: mapped neighbors stay neighbors across the
        // same label.
        for (&x, &gx) in &gamma {
            for (label, y) in patch.adjacencies(x) {
                if let (Some(&gy), Some(n)) = (gamma.get(&y), patch.neighbor(gx, label)) {
                    assert_eq!(gy, n);
                }
            }
        }
    }

    #[test]
    fn psi_reflectivity() {
        let patch = build(5, 4, "+++++", 2);
        let scheme = pentagon_scheme();
        let tau =
            generate_from_scheme(&patch, &scheme, &DihedralElement::identity(5)).unwrap();
        // The reflective tiling itself: tau constant, psi all-ones.
        let plain = EdgeReversal::uniform(&patch, &code("+++++")).unwrap();
        for geodesic in patch.interior_geodesics() {
            let gamma = reflect_automorphism(&patch, &geodesic).unwrap();
            assert!(check_psi_reflective(
                &patch,
                &plain,
                &gamma,
                &EdgeReversalCode::all_ones(5)
            )
            .unwrap());
            // For the generated tau: psi equals phi of the geodesic label.
            let label = patch.edges()[geodesic[0] as usize].slots[0].1;
            let psi = infer_psi(&patch, &tau, &gamma).unwrap();
            assert_eq!(psi, *scheme.phi(label));
            assert!(check_psi_reflective(&patch, &tau, &gamma, &psi).unwrap());
            // A perturbed code fails unless it coincides.
            let wrong = psi.product(&code("-++++")).unwrap();
            assert!(!check_psi_reflective(&patch, &tau, &gamma, &wrong).unwrap());
        }
    }

    #[test]
    fn composite_symmetries_of_the_pentagon_tiling() {
        let patch = build(5, 4, "+++++", 3);
        let scheme = pentagon_scheme();
        let tau =
            generate_from_scheme(&patch, &scheme, &DihedralElement::identity(5)).unwrap();
        let geodesic_labeled = |label: usize| {
            patch
                .interior_geodesics()
                .into_iter()
                .find(|g| patch.edges()[g[0] as usize].slots[0].1 == label)
                .expect("geodesic with the label exists")
        };
        // Translation: reflect over a 5-labeled geodesic, then a 2-labeled.
        let (psi, composed) =
            composite_symmetry(&patch, &tau, &[geodesic_labeled(5), geodesic_labeled(2)])
                .unwrap();
        assert_eq!(psi, code("--+++"));
        assert!(check_psi_reflective(&patch, &tau, &composed, &psi).unwrap());
        // Rotation: reflect over a 1-labeled geodesic, then a 2-labeled.
        let (psi, composed) =
            composite_symmetry(&patch, &tau, &[geodesic_labeled(1), geodesic_labeled(2)])
                .unwrap();
        assert_eq!(psi, code("++---"));
        assert!(check_psi_reflective(&patch, &tau, &composed, &psi).unwrap());
        // An even repetition of one reflection is trivial.
        let g = geodesic_labeled(3);
        let (psi, _) = composite_symmetry(&patch, &tau, &[g.clone(), g]).unwrap();
        assert!(psi.is_all_ones());
    }
}
