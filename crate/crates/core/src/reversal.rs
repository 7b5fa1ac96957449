//! Reversal-closed subsets of `D_m` for a fixed code, their enumeration, and
//! the structural operations that carry them between codes and group orders.
//!
//! A subset `Gamma` is reversal-closed for `d` when for all `s1, s2` in
//! `Gamma` some `s3` in `Gamma` satisfies `d . s1(d) . s2(d) = s3(d)`. The
//! codes `d . s(d)` for `s` in such a subset can then be applied to tiles in
//! the orbit of `d` arbitrarily often without ever leaving that orbit.
//!
//! Enumeration of the maximal subsets follows a three-step pipeline: build
//! the conflict relation on `D_m`, enumerate maximal conflict-free subsets
//! (maximal cliques of the compatibility graph), and filter the candidates by
//! the closure law. A brute-force enumeration over all `2^(2m)` subsets is
//! kept alongside as the ground-truth oracle for small m.

use std::collections::BTreeSet;
use std::fmt;

use crate::dihedral::{DihedralElement, EdgeReversalCode};
use crate::error::{Error, Result};

/// Default bound on m for the clique-based enumeration (24-vertex graphs).
pub const ENUMERATION_BOUND: usize = 12;

/// Bound on m for the brute-force oracle (`2^(2m)` subsets).
pub const BRUTE_FORCE_BOUND: usize = 8;

/// A subset of `D_m` satisfying the closure law for its code.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ReversalClosedSubset {
    delta: EdgeReversalCode,
    elements: BTreeSet<DihedralElement>,
    maximal: bool,
}

impl ReversalClosedSubset {
    /// Build and verify the closure law. `maximal` starts out false; the
    /// enumeration entry points mark their outputs.
    pub fn new(
        delta: EdgeReversalCode,
        elements: impl IntoIterator<Item = DihedralElement>,
    ) -> Result<Self> {
        let elements: BTreeSet<DihedralElement> = elements.into_iter().collect();
        for s in &elements {
            if s.m() != delta.m() {
                return Err(Error::DimensionMismatch {
                    expected: delta.m(),
                    got: s.m(),
                });
            }
        }
        if !is_reversal_closed(&delta, &elements)? {
            return Err(Error::NotReversalClosed {
                subset: format_elements(&elements),
                code: delta.to_string(),
            });
        }
        Ok(Self {
            delta,
            elements,
            maximal: false,
        })
    }

    fn with_maximal(mut self, maximal: bool) -> Self {
        self.maximal = maximal;
        self
    }

    pub fn delta(&self) -> &EdgeReversalCode {
        &self.delta
    }

    pub fn elements(&self) -> &BTreeSet<DihedralElement> {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_maximal(&self) -> bool {
        self.maximal
    }

    pub fn contains(&self, s: &DihedralElement) -> bool {
        self.elements.contains(s)
    }

    /// Conjugate every element by `sigma`; the result is reversal-closed for
    /// `sigma(delta)`.
    pub fn conjugate(&self, sigma: &DihedralElement) -> Result<Self> {
        let delta = sigma.act_on_code(&self.delta)?;
        let elements = self
            .elements
            .iter()
            .map(|t| sigma.conjugate(t))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Self {
            delta,
            elements,
            maximal: self.maximal,
        })
    }

    /// For `sigma` stabilizing the code, the translates `Gamma sigma` and
    /// `sigma Gamma`, both reversal-closed for the same code.
    pub fn stabilizer_translate(&self, sigma: &DihedralElement) -> Result<(Self, Self)> {
        if sigma.act_on_code(&self.delta)? != self.delta {
            return Err(Error::StabilizerViolation {
                element: sigma.to_string(),
                code: self.delta.to_string(),
            });
        }
        let right = self
            .elements
            .iter()
            .map(|t| t.compose(sigma))
            .collect::<Result<BTreeSet<_>>>()?;
        let left = self
            .elements
            .iter()
            .map(|t| sigma.compose(t))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok((
            Self {
                delta: self.delta.clone(),
                elements: right,
                maximal: self.maximal,
            },
            Self {
                delta: self.delta.clone(),
                elements: left,
                maximal: self.maximal,
            },
        ))
    }

    /// Preimage under `D_{km} -> D_m` (`f -> f`, `r -> r`), reversal-closed
    /// for the code repeated `k` times. Maximality carries over both ways.
    pub fn lift_repeat(&self, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "lift requires k >= 2, got {k}"
            )));
        }
        let m = self.delta.m();
        let km = m * k;
        let mut elements = BTreeSet::new();
        for s in &self.elements {
            for j in 0..k {
                elements.insert(DihedralElement::new(
                    km,
                    (s.rot() + j * m) as isize,
                    s.flip(),
                ));
            }
        }
        Ok(Self {
            delta: self.delta.repeat(k),
            elements,
            maximal: self.maximal,
        })
    }

    /// Image under `D_m -> D_{km}` (`f -> f`, `r -> r^k`), reversal-closed
    /// for the stretched code. Maximality is not preserved in general.
    pub fn lift_stretch(&self, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParams(format!(
                "lift requires k >= 2, got {k}"
            )));
        }
        let km = self.delta.m() * k;
        let elements = self
            .elements
            .iter()
            .map(|s| DihedralElement::new(km, (s.rot() * k) as isize, s.flip()))
            .collect();
        Ok(Self {
            delta: self.delta.stretch(k),
            elements,
            maximal: false,
        })
    }

    pub fn element_names(&self) -> Vec<String> {
        self.elements.iter().map(|s| s.to_string()).collect()
    }
}

impl fmt::Display for ReversalClosedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_elements(&self.elements))
    }
}

fn format_elements(elements: &BTreeSet<DihedralElement>) -> String {
    let names: Vec<String> = elements.iter().map(|s| s.to_string()).collect();
    format!("{{{}}}", names.join(", "))
}

/// Does the closure law hold for every pair from `gamma`?
pub fn is_reversal_closed(
    delta: &EdgeReversalCode,
    gamma: &BTreeSet<DihedralElement>,
) -> Result<bool> {
    let acted: Vec<EdgeReversalCode> = gamma
        .iter()
        .map(|s| s.act_on_code(delta))
        .collect::<Result<Vec<_>>>()?;
    let available: BTreeSet<&EdgeReversalCode> = acted.iter().collect();
    for a in &acted {
        for b in &acted {
            let needed = delta.product(a)?.product(b)?;
            if !available.contains(&needed) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Precomputed pair table: for elements indexed in enumeration order,
/// `table[i][j]` is the bitmask of all `s3` in `D_m` solving the closure
/// equation for the pair `(i, j)`. A zero entry is a conflict.
struct PairTable {
    n: usize,
    table: Vec<Vec<u32>>,
}

impl PairTable {
    fn build(delta: &EdgeReversalCode) -> Self {
        let elements = DihedralElement::all(delta.m());
        let n = elements.len();
        let acted: Vec<EdgeReversalCode> = elements
            .iter()
            .map(|s| s.act_on_code(delta).expect("same m"))
            .collect();
        let mut table = vec![vec![0u32; n]; n];
        for i in 0..n {
            for j in i..n {
                let needed = delta
                    .product(&acted[i])
                    .and_then(|p| p.product(&acted[j]))
                    .expect("same m");
                let mut mask = 0u32;
                for (k, c) in acted.iter().enumerate() {
                    if *c == needed {
                        mask |= 1 << k;
                    }
                }
                table[i][j] = mask;
                table[j][i] = mask;
            }
        }
        Self { n, table }
    }

    fn closed(&self, subset: u32) -> bool {
        let mut rest = subset;
        while rest != 0 {
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let mut rest2 = subset;
            while rest2 != 0 {
                let j = rest2.trailing_zeros() as usize;
                rest2 &= rest2 - 1;
                if self.table[i][j] & subset == 0 {
                    return false;
                }
            }
        }
        true
    }

    /// Compatibility adjacency: pairs admitting at least one solution in `D_m`.
    fn compatibility(&self) -> Vec<u32> {
        (0..self.n)
            .map(|i| {
                let mut adj = 0u32;
                for j in 0..self.n {
                    if j != i && self.table[i][j] != 0 {
                        adj |= 1 << j;
                    }
                }
                adj
            })
            .collect()
    }
}

fn subset_from_mask(delta: &EdgeReversalCode, mask: u32, maximal: bool) -> ReversalClosedSubset {
    let elements = DihedralElement::all(delta.m());
    let set: BTreeSet<DihedralElement> = (0..elements.len())
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| elements[i])
        .collect();
    ReversalClosedSubset::new(delta.clone(), set)
        .expect("mask passed the closure check")
        .with_maximal(maximal)
}

/// All maximal reversal-closed subsets for `delta`, via the conflict-graph
/// pipeline. Cross-checked against [`brute_force_maximal`] for small m.
pub fn enumerate_maximal(delta: &EdgeReversalCode) -> Result<Vec<ReversalClosedSubset>> {
    let m = delta.m();
    if m > ENUMERATION_BOUND {
        return Err(Error::BoundExceeded {
            m,
            bound: ENUMERATION_BOUND,
            what: "maximal subset enumeration",
        });
    }
    let pairs = PairTable::build(delta);
    let adj = pairs.compatibility();
    let mut cliques = Vec::new();
    let all: u32 = if pairs.n == 32 {
        u32::MAX
    } else {
        (1u32 << pairs.n) - 1
    };
    bron_kerbosch(&adj, 0, all, 0, &mut cliques);

    // Candidates that fail the closure filter are discarded outright.
    let mut masks: Vec<u32> = cliques.into_iter().filter(|&c| pairs.closed(c)).collect();
    masks.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then(sort_key(*a).cmp(&sort_key(*b)))
    });
    Ok(masks
        .into_iter()
        .map(|mask| subset_from_mask(delta, mask, true))
        .collect())
}

/// Bit-reversed mask so that subsets containing earlier elements sort first.
fn sort_key(mask: u32) -> u32 {
    mask.reverse_bits()
}

/// Bron-Kerbosch maximal clique enumeration with pivoting, on bitmasks.
fn bron_kerbosch(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
    if p == 0 && x == 0 {
        out.push(r);
        return;
    }
    // Pivot on the vertex of p | x with the most neighbours in p.
    let pivot = {
        let mut best = 0usize;
        let mut best_count = u32::MAX;
        let mut candidates = p | x;
        while candidates != 0 {
            let v = candidates.trailing_zeros() as usize;
            candidates &= candidates - 1;
            let missing = (p & !adj[v]).count_ones();
            if best_count == u32::MAX || missing < best_count {
                best_count = missing;
                best = v;
            }
        }
        best
    };
    let mut ext = p & !adj[pivot];
    while ext != 0 {
        let v = ext.trailing_zeros() as usize;
        ext &= ext - 1;
        let bit = 1u32 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

/// Ground-truth enumeration: test all `2^(2m)` subsets for the closure law
/// and keep the inclusion-maximal ones. Only for m up to [`BRUTE_FORCE_BOUND`].
pub fn brute_force_maximal(delta: &EdgeReversalCode) -> Result<Vec<ReversalClosedSubset>> {
    let m = delta.m();
    if m > BRUTE_FORCE_BOUND {
        return Err(Error::BoundExceeded {
            m,
            bound: BRUTE_FORCE_BOUND,
            what: "brute-force subset enumeration",
        });
    }
    let pairs = PairTable::build(delta);
    let n = pairs.n;
    let mut closed: Vec<u32> = (0u32..1u32 << n).filter(|&s| pairs.closed(s)).collect();
    closed.sort_by_key(|s| std::cmp::Reverse(s.count_ones()));
    let mut maximal: Vec<u32> = Vec::new();
    for s in closed {
        if !maximal.iter().any(|&kept| kept | s == kept) {
            maximal.push(s);
        }
    }
    maximal.sort_by(|a, b| {
        b.count_ones()
            .cmp(&a.count_ones())
            .then(sort_key(*a).cmp(&sort_key(*b)))
    });
    Ok(maximal
        .into_iter()
        .map(|mask| subset_from_mask(delta, mask, true))
        .collect())
}
