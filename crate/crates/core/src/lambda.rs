//! The direction group at tile level and its restricted subsets.
//!
//! The full set of sign tuples forms an elementary abelian 2-group under
//! componentwise multiplication. Restricting to the codes that carry one
//! directed m-gon shape onto another (up to rotation and reflection), or to
//! the slice of an orbit cut out by a subset of `D_m`, yields the direction
//! sets used to realign tilings.

use std::collections::BTreeSet;

use crate::dihedral::{DihedralElement, EdgeReversalCode};
use crate::error::{Error, Result};
use crate::mgon::MGonCategory;

/// Componentwise product, the group operation on sign tuples.
pub fn multiply(a: &EdgeReversalCode, b: &EdgeReversalCode) -> Result<EdgeReversalCode> {
    a.product(b)
}

/// Which restriction a [`RestrictedDirectionSet`] carries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RestrictionKind {
    /// All of `{+1,-1}^m`.
    Full,
    /// `{ d^C . s(d^C') : s in D_m }`, the codes sending `C`-tiles to
    /// `C'`-tiles up to rotation and reflection.
    DihedralRestricted,
    /// `{ d^C' . s(d^C') : s in Gamma }` for a chosen subset of `D_m`.
    GammaRestricted,
}

/// A set of edge-reversal codes cut out by one of the three restrictions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedDirectionSet {
    kind: RestrictionKind,
    base: MGonCategory,
    target: MGonCategory,
    gamma: Option<Vec<DihedralElement>>,
    members: BTreeSet<EdgeReversalCode>,
}

impl RestrictedDirectionSet {
    /// The unrestricted set of all sign tuples over the base category.
    pub fn full(base: MGonCategory) -> Self {
        let m = base.m();
        let members = (0..1u32 << m)
            .map(|bits| {
                EdgeReversalCode::new(
                    (0..m)
                        .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
                        .collect(),
                )
                .expect("signs are valid")
            })
            .collect();
        Self {
            kind: RestrictionKind::Full,
            target: base.clone(),
            base,
            gamma: None,
            members,
        }
    }

    /// Build the dihedral-restricted set (no `gamma`) or the gamma-restricted
    /// set (with `gamma`) for the given base and target categories.
    pub fn restricted(
        base: MGonCategory,
        target: MGonCategory,
        gamma: Option<Vec<DihedralElement>>,
    ) -> Result<Self> {
        if base.m() != target.m() {
            return Err(Error::DimensionMismatch {
                expected: base.m(),
                got: target.m(),
            });
        }
        let (kind, members) = match &gamma {
            None => {
                let members = DihedralElement::all(base.m())
                    .iter()
                    .map(|s| {
                        base.code()
                            .product(&s.act_on_code(target.code()).expect("same m"))
                            .expect("same m")
                    })
                    .collect();
                (RestrictionKind::DihedralRestricted, members)
            }
            Some(subset) => {
                let mut members = BTreeSet::new();
                for s in subset {
                    if s.m() != base.m() {
                        return Err(Error::DimensionMismatch {
                            expected: base.m(),
                            got: s.m(),
                        });
                    }
                    members.insert(
                        target
                            .code()
                            .product(&s.act_on_code(target.code())?)?,
                    );
                }
                (RestrictionKind::GammaRestricted, members)
            }
        };
        Ok(Self {
            kind,
            base,
            target,
            gamma,
            members,
        })
    }

    pub fn kind(&self) -> RestrictionKind {
        self.kind
    }

    pub fn base(&self) -> &MGonCategory {
        &self.base
    }

    pub fn target(&self) -> &MGonCategory {
        &self.target
    }

    pub fn gamma(&self) -> Option<&[DihedralElement]> {
        self.gamma.as_deref()
    }

    pub fn members(&self) -> &BTreeSet<EdgeReversalCode> {
        &self.members
    }

    pub fn contains(&self, code: &EdgeReversalCode) -> bool {
        code.m() == self.base.m() && self.members.contains(code)
    }

    /// Members as sorted sign strings, the serialization form.
    pub fn member_strings(&self) -> Vec<String> {
        self.members.iter().map(|c| c.to_string()).collect()
    }
}
