//! The dihedral group `D_m`, its action on sign tuples and on edge indices,
//! and the sign homomorphism `D_m -> {1,-1}`.
//!
//! Elements are kept in the normal form `f^flip r^rot` with `0 <= rot < m`,
//! subject to `r^m = e`, `f^2 = e`, and `f r f = r^{-1}`. The enumeration
//! order used everywhere a deterministic choice is needed is
//! `e, r, r^2, ..., r^{m-1}, f, f r, ..., f r^{m-1}`.
//!
//! The action on sign tuples rotates by a *left* cyclic shift,
//! `r(d_1, ..., d_m) = (d_2, ..., d_m, d_1)`, and reflects by
//! `f(d_1, ..., d_m) = (-d_m, ..., -d_2, -d_1)`.

use std::fmt;

use crate::error::{Error, Result};

/// A sign, restricted by convention to `+1` or `-1`.
pub type Sign = i8;

/// A length-m tuple over `{+1, -1}`.
///
/// Doubles as the descriptor of an m-gon category (entry `i` records whether
/// edge `d_i` points clockwise) and as an instruction for which edges of a
/// tile to reverse.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EdgeReversalCode {
    entries: Vec<Sign>,
}

impl EdgeReversalCode {
    pub fn new(entries: Vec<Sign>) -> Result<Self> {
        if entries.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidSignString(format!("{entries:?}")));
        }
        Ok(Self { entries })
    }

    /// The all-ones tuple, the identity of the level-2 direction group.
    pub fn all_ones(m: usize) -> Self {
        Self {
            entries: vec![1; m],
        }
    }

    /// Parse a sign string such as `"+--+-"` (position `i` is entry `i`).
    pub fn parse(s: &str) -> Result<Self> {
        let entries = s
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                _ => Err(Error::InvalidSignString(s.to_string())),
            })
            .collect::<Result<Vec<Sign>>>()?;
        Ok(Self { entries })
    }

    pub fn m(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Sign] {
        &self.entries
    }

    /// Entry for edge `d_i`, with `i` in `1..=m`.
    pub fn entry(&self, i: usize) -> Sign {
        self.entries[i - 1]
    }

    pub fn is_all_ones(&self) -> bool {
        self.entries.iter().all(|&s| s == 1)
    }

    /// Componentwise product. Every tuple is its own inverse.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if self.m() != other.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m(),
                got: other.m(),
            });
        }
        Ok(Self {
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a * b)
                .collect(),
        })
    }

    /// The tuple obtained by repeating this one `k` times, `k(d)` on `km` entries.
    pub fn repeat(&self, k: usize) -> Self {
        let mut entries = Vec::with_capacity(self.m() * k);
        for _ in 0..k {
            entries.extend_from_slice(&self.entries);
        }
        Self { entries }
    }

    /// The tuple in which each entry is repeated `k` times in place, `d(k)`.
    pub fn stretch(&self, k: usize) -> Self {
        let mut entries = Vec::with_capacity(self.m() * k);
        for &s in &self.entries {
            for _ in 0..k {
                entries.push(s);
            }
        }
        Self { entries }
    }
}

impl fmt::Display for EdgeReversalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.entries {
            write!(f, "{}", if s == 1 { '+' } else { '-' })?;
        }
        Ok(())
    }
}

// Ordering convention: +1 comes before -1, so the all-ones tuple is least.
// This agrees with byte order on the "+/-" sign strings.
impl Ord for EdgeReversalCode {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let key = |s: &Sign| if *s == 1 { 0u8 } else { 1u8 };
        self.entries
            .iter()
            .map(key)
            .cmp(other.entries.iter().map(key))
            .then(self.m().cmp(&other.m()))
    }
}

impl PartialOrd for EdgeReversalCode {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// An element `f^flip r^rot` of the dihedral group `D_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    m: usize,
    // Field order matters for the derived Ord: rotations sort before
    // reflections, each by ascending exponent.
    flip: bool,
    rot: usize,
}

impl DihedralElement {
    pub fn new(m: usize, rot: isize, flip: bool) -> Self {
        assert!(m >= 3, "dihedral group requires m >= 3");
        Self {
            m,
            flip,
            rot: rot.rem_euclid(m as isize) as usize,
        }
    }

    pub fn identity(m: usize) -> Self {
        Self::new(m, 0, false)
    }

    pub fn rotation(m: usize, k: isize) -> Self {
        Self::new(m, k, false)
    }

    pub fn reflection(m: usize) -> Self {
        Self::new(m, 0, true)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn rot(&self) -> usize {
        self.rot
    }

    pub fn flip(&self) -> bool {
        self.flip
    }

    pub fn is_identity(&self) -> bool {
        !self.flip && self.rot == 0
    }

    /// All `2m` elements in the enumeration order `e, r, ..., f, f r, ...`.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::with_capacity(2 * m);
        for rot in 0..m {
            out.push(Self::new(m, rot as isize, false));
        }
        for rot in 0..m {
            out.push(Self::new(m, rot as isize, true));
        }
        out
    }

    fn check_m(&self, other: &Self) -> Result<()> {
        if self.m != other.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: other.m,
            });
        }
        Ok(())
    }

    /// Group product `self . other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        self.check_m(other)?;
        // f^a r^x . f^b r^y = f^(a+b) r^(y-x) when b = 1, else f^a r^(x+y).
        let rot = if other.flip {
            other.rot as isize - self.rot as isize
        } else {
            self.rot as isize + other.rot as isize
        };
        Ok(Self::new(self.m, rot, self.flip ^ other.flip))
    }

    pub fn inverse(&self) -> Self {
        if self.flip {
            *self
        } else {
            Self::new(self.m, -(self.rot as isize), false)
        }
    }

    /// `self . other . self^{-1}`.
    pub fn conjugate(&self, other: &Self) -> Result<Self> {
        self.compose(other)?.compose(&self.inverse())
    }

    /// The sign homomorphism sending `r` to `+1` and `f` to `-1`.
    pub fn sign(&self) -> Sign {
        if self.flip {
            -1
        } else {
            1
        }
    }

    /// Act on a sign tuple: `rot` left shifts, then (for a flip) negate and
    /// reverse. This is a left action: `act(a.compose(b), d) = act(a, act(b, d))`.
    pub fn act_on_code(&self, code: &EdgeReversalCode) -> Result<EdgeReversalCode> {
        if self.m != code.m() {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                got: code.m(),
            });
        }
        let m = self.m;
        let mut entries: Vec<Sign> = (0..m).map(|j| code.entries[(j + self.rot) % m]).collect();
        if self.flip {
            entries.reverse();
            for s in &mut entries {
                *s = -*s;
            }
        }
        EdgeReversalCode::new(entries)
    }

    /// Act on an edge index in `1..=m`: `r(i) = i + 1 (mod m)` and
    /// `f(i) = m + 1 - i`, composed as a left action.
    pub fn act_on_index(&self, i: usize) -> Result<usize> {
        if i < 1 || i > self.m {
            return Err(Error::IndexOutOfRange { index: i, m: self.m });
        }
        let m = self.m;
        let rotated = (i - 1 + self.rot) % m + 1;
        Ok(if self.flip { m + 1 - rotated } else { rotated })
    }

    /// Parse an element name as rendered by `Display`.
    pub fn parse(m: usize, s: &str) -> Result<Self> {
        let parse_exp = |t: &str| -> Result<usize> {
            t.strip_prefix("r^")
                .and_then(|e| e.parse::<usize>().ok())
                .filter(|&e| e >= 1 && e < m)
                .ok_or_else(|| Error::Schema {
                    context: "dihedral element".into(),
                    message: format!("unrecognized element name {s:?} for m = {m}"),
                })
        };
        let s = s.trim();
        match s {
            "e" => Ok(Self::identity(m)),
            "f" => Ok(Self::reflection(m)),
            _ => {
                if let Some(rest) = s.strip_prefix("f ") {
                    Ok(Self::new(m, parse_exp(rest.trim())? as isize, true))
                } else {
                    Ok(Self::new(m, parse_exp(s)? as isize, false))
                }
            }
        }
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.flip, self.rot) {
            (false, 0) => write!(f, "e"),
            (false, k) => write!(f, "r^{k}"),
            (true, 0) => write!(f, "f"),
            (true, k) => write!(f, "f r^{k}"),
        }
    }
}
