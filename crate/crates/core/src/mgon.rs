//! m-gon categories represented by their edge-reversal codes: relative codes,
//! dihedral orbits, canonical representatives, and the count of isomorphism
//! classes.
//!
//! An m-gon category is determined by which of its m edges point clockwise,
//! so a sign tuple is the whole story. Two categories are isomorphic exactly
//! when their codes lie in the same orbit of the `D_m` action.

use std::collections::BTreeSet;

use crate::dihedral::{DihedralElement, EdgeReversalCode};
use crate::error::{Error, Result};

/// An m-gon category, i.e. a directed m-gon shape.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MGonCategory {
    code: EdgeReversalCode,
}

impl MGonCategory {
    pub fn new(code: EdgeReversalCode) -> Result<Self> {
        if code.m() < 3 {
            return Err(Error::InvalidParams(format!(
                "an m-gon category requires m >= 3, got m = {}",
                code.m()
            )));
        }
        Ok(Self { code })
    }

    /// The cyclic category, in which every edge points clockwise.
    pub fn cyclic(m: usize) -> Self {
        Self {
            code: EdgeReversalCode::all_ones(m),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        Self::new(EdgeReversalCode::parse(s)?)
    }

    pub fn m(&self) -> usize {
        self.code.m()
    }

    pub fn code(&self) -> &EdgeReversalCode {
        &self.code
    }

    /// The code that reverses edges of `self` to produce `other`,
    /// the componentwise product of the two codes.
    pub fn relative_code(&self, other: &Self) -> Result<EdgeReversalCode> {
        self.code.product(&other.code)
    }

    /// The full orbit of this category's code under `D_m`.
    pub fn orbit(&self) -> BTreeSet<EdgeReversalCode> {
        orbit_of(&self.code)
    }

    /// The least code in the orbit, under the `+1 < -1` ordering.
    pub fn canonical_form(&self) -> EdgeReversalCode {
        self.orbit().into_iter().next().expect("orbit is nonempty")
    }
}

/// Orbit of an arbitrary code under the dihedral action.
pub fn orbit_of(code: &EdgeReversalCode) -> BTreeSet<EdgeReversalCode> {
    DihedralElement::all(code.m())
        .iter()
        .map(|s| s.act_on_code(code).expect("same m"))
        .collect()
}

/// Number of isomorphism classes of m-gon categories, by the closed
/// Burnside formulas (one for odd m, one for even m).
pub fn count_isomorphism_classes(m: usize) -> Result<u64> {
    if m < 3 {
        return Err(Error::InvalidParams(format!(
            "class counting requires m >= 3, got m = {m}"
        )));
    }
    let m64 = m as u64;
    let total = if m % 2 == 1 {
        let sum: u64 = (1..=(m64 - 1) / 2).map(|i| 1u64 << gcd(i, m64)).sum();
        (1u64 << m64) + 2 * sum
    } else {
        let sum: u64 = (1..m64 / 2).map(|i| 1u64 << gcd(i, m64)).sum();
        (1u64 << m64) + (m64 / 2 + 1) * (1u64 << (m64 / 2)) + 2 * sum
    };
    debug_assert_eq!(total % (2 * m64), 0, "Burnside sum must divide evenly");
    Ok(total / (2 * m64))
}

/// Number of orbits of `D_m` on `{+1,-1}^m` by explicit partitioning.
///
/// Exhaustive cross-check for [`count_isomorphism_classes`]; only feasible
/// for small m (it walks all `2^m` tuples).
pub fn orbit_partition_count(m: usize) -> Result<usize> {
    if m < 3 {
        return Err(Error::InvalidParams(format!(
            "orbit partitioning requires m >= 3, got m = {m}"
        )));
    }
    if m > 20 {
        return Err(Error::BoundExceeded {
            m,
            bound: 20,
            what: "orbit partitioning",
        });
    }
    let mut seen = vec![false; 1 << m];
    let mut orbits = 0usize;
    for bits in 0..1u32 << m {
        if seen[bits as usize] {
            continue;
        }
        orbits += 1;
        for code in orbit_of(&code_from_bits(m, bits)) {
            seen[bits_from_code(&code) as usize] = true;
        }
    }
    Ok(orbits)
}

/// One category per isomorphism class, each in canonical form, sorted.
pub fn enumerate_representatives(m: usize) -> Result<Vec<MGonCategory>> {
    if m < 3 {
        return Err(Error::InvalidParams(format!(
            "enumeration requires m >= 3, got m = {m}"
        )));
    }
    if m > 20 {
        return Err(Error::BoundExceeded {
            m,
            bound: 20,
            what: "representative enumeration",
        });
    }
    let mut reps = Vec::new();
    for bits in 0..1u32 << m {
        let code = code_from_bits(m, bits);
        if code == orbit_of(&code).into_iter().next().expect("nonempty") {
            reps.push(MGonCategory::new(code)?);
        }
    }
    reps.sort();
    Ok(reps)
}

fn code_from_bits(m: usize, bits: u32) -> EdgeReversalCode {
    EdgeReversalCode::new(
        (0..m)
            .map(|i| if bits >> i & 1 == 1 { -1 } else { 1 })
            .collect(),
    )
    .expect("signs are valid")
}

fn bits_from_code(code: &EdgeReversalCode) -> u32 {
    code.entries()
        .iter()
        .enumerate()
        .fold(0u32, |acc, (i, &s)| {
            if s == -1 {
                acc | 1 << i
            } else {
                acc
            }
        })
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn code(s: &str) -> EdgeReversalCode {
        EdgeReversalCode::parse(s).unwrap()
    }

    #[test]
    fn relative_codes() {
        // Fig. of the two squares: (+--+) against (--+-) differs at 1, 3, 4.
        let c = MGonCategory::parse("+--+").unwrap();
        let c2 = MGonCategory::parse("--+-").unwrap();
        assert_eq!(c.relative_code(&c2).unwrap(), code("-+--"));
        assert_eq!(c.relative_code(&c).unwrap(), code("++++"));
        // Relative to the cyclic category, the relative code is the code itself.
        let cyc = MGonCategory::cyclic(4);
        assert_eq!(cyc.relative_code(&c).unwrap(), *c.code());
        assert!(MGonCategory::cyclic(3)
            .relative_code(&c)
            .is_err());
    }

    #[test]
    fn relative_code_transports_codes() {
        // d . d^{C,C'} = d' for all pairs of squares.
        for a in 0..16u32 {
            for b in 0..16u32 {
                let ca = MGonCategory::new(code_from_bits(4, a)).unwrap();
                let cb = MGonCategory::new(code_from_bits(4, b)).unwrap();
                let rel = ca.relative_code(&cb).unwrap();
                assert_eq!(ca.code().product(&rel).unwrap(), *cb.code());
            }
        }
    }

    #[test]
    fn orbits() {
        let cyc3 = MGonCategory::cyclic(3);
        let orbit: Vec<_> = cyc3.orbit().into_iter().collect();
        assert_eq!(orbit, vec![code("+++"), code("---")]);
        for m in 3..=7 {
            let orbit = MGonCategory::cyclic(m).orbit();
            assert_eq!(orbit.len(), 2);
        }
        assert_eq!(MGonCategory::parse("+-+").unwrap().orbit().len(), 6);
        for bits in 0..1u32 << 5 {
            let n = orbit_of(&code_from_bits(5, bits)).len();
            assert_eq!(10 % n, 0, "orbit size must divide 2m");
        }
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(
            MGonCategory::parse("---").unwrap().canonical_form(),
            code("+++")
        );
        assert_eq!(
            MGonCategory::parse("-++").unwrap().canonical_form(),
            code("++-")
        );
        assert_eq!(MGonCategory::cyclic(6).canonical_form(), code("++++++"));
        // Constant on orbits and idempotent.
        for bits in 0..1u32 << 4 {
            let c = MGonCategory::new(code_from_bits(4, bits)).unwrap();
            let canon = c.canonical_form();
            for member in c.orbit() {
                assert_eq!(MGonCategory::new(member).unwrap().canonical_form(), canon);
            }
            assert_eq!(
                MGonCategory::new(canon.clone()).unwrap().canonical_form(),
                canon
            );
        }
    }

    #[test]
    fn class_counts_match_figures() {
        assert_eq!(count_isomorphism_classes(3).unwrap(), 2);
        assert_eq!(count_isomorphism_classes(4).unwrap(), 4);
        assert_eq!(count_isomorphism_classes(5).unwrap(), 4);
        assert!(count_isomorphism_classes(2).is_err());
    }

    #[test]
    fn class_counts_match_orbit_partition() {
        for m in 3..=12 {
            assert_eq!(
                count_isomorphism_classes(m).unwrap(),
                orbit_partition_count(m).unwrap() as u64,
                "mismatch at m = {m}"
            );
        }
    }

    #[test]
    fn representatives() {
        let reps3 = enumerate_representatives(3).unwrap();
        assert_eq!(reps3.len(), 2);
        assert_eq!(*reps3[0].code(), code("+++"));
        let reps4 = enumerate_representatives(4).unwrap();
        let codes: Vec<String> = reps4.iter().map(|c| c.code().to_string()).collect();
        assert_eq!(codes, ["++++", "+++-", "++--", "+-+-"]);
        for m in 3..=8 {
            assert_eq!(
                enumerate_representatives(m).unwrap().len() as u64,
                count_isomorphism_classes(m).unwrap()
            );
        }
    }
}
