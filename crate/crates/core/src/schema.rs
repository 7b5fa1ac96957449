//! File formats for patches, edge reversals, and reflection schemes.
//!
//! Each document is a single JSON object. Codes are sign strings ("+--+-"),
//! dihedral elements are names ("e", "r^2", "f r^1"), and ids refer to the
//! owning patch. Serialization is deterministic: writing, reading, and
//! writing again produces byte-identical files.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::alignment::{EdgeReversal, ReflectionScheme};
use crate::dihedral::{DihedralElement, EdgeReversalCode, Sign};
use crate::error::{Error, Result};
use crate::mgon::MGonCategory;
use crate::patch::{CoxeterParams, TilingPatch};
use crate::reversal::ReversalClosedSubset;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VertexDoc {
    pub id: u32,
    pub edges: Vec<u32>,
    pub interior: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EdgeDoc {
    pub id: u32,
    pub src: u32,
    pub tgt: u32,
    pub interior: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TileDoc {
    pub id: u32,
    pub edges: Vec<u32>,
    pub color: Sign,
    pub word: Vec<usize>,
}

/// One patch document.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PatchDoc {
    pub m: usize,
    pub n: usize,
    pub code: String,
    pub radius: usize,
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub tiles: Vec<TileDoc>,
}

/// An edge reversal: a patch reference plus one sign per edge.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReversalDoc {
    pub patch: String,
    pub values: Vec<(u32, Sign)>,
}

/// A reflection scheme: categories as sign strings, gamma as element names,
/// values as sign strings.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchemeDoc {
    pub base: String,
    pub target: String,
    pub n: usize,
    pub gamma: Vec<String>,
    pub phi: Vec<String>,
}

pub fn patch_to_doc(patch: &TilingPatch) -> PatchDoc {
    PatchDoc {
        m: patch.m(),
        n: patch.n(),
        code: patch.category().code().to_string(),
        radius: patch.radius(),
        vertices: patch
            .vertices()
            .iter()
            .map(|v| VertexDoc {
                id: v.id,
                edges: v.fan.clone(),
                interior: v.closed,
            })
            .collect(),
        edges: patch
            .edges()
            .iter()
            .map(|e| EdgeDoc {
                id: e.id,
                src: e.src,
                tgt: e.tgt,
                interior: e.is_interior(),
            })
            .collect(),
        tiles: patch
            .tiles()
            .iter()
            .map(|t| TileDoc {
                id: t.id,
                edges: t.edges.clone(),
                color: t.color,
                word: t.word.clone(),
            })
            .collect(),
    }
}

pub fn patch_from_doc(doc: &PatchDoc) -> Result<TilingPatch> {
    let schema_err = |message: String| Error::Schema {
        context: "patch document".into(),
        message,
    };
    let params = CoxeterParams::new(doc.m, doc.n)?;
    let category = MGonCategory::parse(&doc.code)?;
    if category.m() != doc.m {
        return Err(schema_err(format!(
            "code {} has length {}, expected m = {}",
            doc.code,
            category.m(),
            doc.m
        )));
    }
    for (i, v) in doc.vertices.iter().enumerate() {
        if v.id as usize != i {
            return Err(schema_err(format!(
                "vertex ids must be 0..count in order; found {} at position {i}",
                v.id
            )));
        }
    }
    for (i, e) in doc.edges.iter().enumerate() {
        if e.id as usize != i {
            return Err(schema_err(format!(
                "edge ids must be 0..count in order; found {} at position {i}",
                e.id
            )));
        }
    }
    for (i, t) in doc.tiles.iter().enumerate() {
        if t.id as usize != i {
            return Err(schema_err(format!(
                "tile ids must be 0..count in order; found {} at position {i}",
                t.id
            )));
        }
    }
    let patch = TilingPatch::from_parts(
        params,
        category,
        doc.radius,
        doc.vertices
            .iter()
            .map(|v| (v.edges.clone(), v.interior))
            .collect(),
        doc.edges.iter().map(|e| (e.src, e.tgt)).collect(),
        doc.tiles
            .iter()
            .map(|t| (t.edges.clone(), t.color, t.word.clone()))
            .collect(),
    )?;
    for (e, stored) in patch.edges().iter().zip(&doc.edges) {
        if e.is_interior() != stored.interior {
            return Err(schema_err(format!(
                "edge {}: stored interior flag {} disagrees with its {} incident tiles",
                e.id,
                stored.interior,
                e.slots.len()
            )));
        }
    }
    Ok(patch)
}

pub fn reversal_to_doc(tau: &EdgeReversal, patch_ref: &str) -> ReversalDoc {
    ReversalDoc {
        patch: patch_ref.to_string(),
        values: tau.pairs(),
    }
}

pub fn reversal_from_doc(doc: &ReversalDoc, patch: &TilingPatch) -> Result<EdgeReversal> {
    EdgeReversal::from_pairs(patch, &doc.values)
}

pub fn scheme_to_doc(scheme: &ReflectionScheme) -> SchemeDoc {
    SchemeDoc {
        base: scheme.base().code().to_string(),
        target: scheme.target().code().to_string(),
        n: scheme.n(),
        gamma: scheme.gamma().element_names(),
        phi: scheme.values().iter().map(|c| c.to_string()).collect(),
    }
}

pub fn scheme_from_doc(doc: &SchemeDoc) -> Result<ReflectionScheme> {
    let base = MGonCategory::parse(&doc.base)?;
    let target = MGonCategory::parse(&doc.target)?;
    let m = target.m();
    let elements = doc
        .gamma
        .iter()
        .map(|name| DihedralElement::parse(m, name))
        .collect::<Result<Vec<_>>>()?;
    let gamma = ReversalClosedSubset::new(target.code().clone(), elements)?;
    let values = doc
        .phi
        .iter()
        .map(|s| EdgeReversalCode::parse(s))
        .collect::<Result<Vec<_>>>()?;
    ReflectionScheme::new(base, target, doc.n, gamma, values)
}

/// Serialize any document with the fixed layout used by every writer.
pub fn to_json_string<T: Serialize>(doc: &T) -> String {
    let mut out = serde_json::to_string_pretty(doc).expect("documents serialize");
    out.push('\n');
    out
}

fn from_json_str<T: for<'de> Deserialize<'de>>(content: &str, context: &str) -> Result<T> {
    serde_json::from_str(content).map_err(|e| Error::Schema {
        context: context.to_string(),
        message: e.to_string(),
    })
}

pub fn write_patch(path: &Path, patch: &TilingPatch) -> Result<()> {
    std::fs::write(path, to_json_string(&patch_to_doc(patch)))?;
    Ok(())
}

pub fn read_patch(path: &Path) -> Result<TilingPatch> {
    let content = std::fs::read_to_string(path)?;
    let doc: PatchDoc = from_json_str(&content, &path.display().to_string())?;
    patch_from_doc(&doc)
}

pub fn write_reversal(path: &Path, tau: &EdgeReversal, patch_ref: &str) -> Result<()> {
    std::fs::write(path, to_json_string(&reversal_to_doc(tau, patch_ref)))?;
    Ok(())
}

pub fn read_reversal(path: &Path, patch: &TilingPatch) -> Result<EdgeReversal> {
    let content = std::fs::read_to_string(path)?;
    let doc: ReversalDoc = from_json_str(&content, &path.display().to_string())?;
    reversal_from_doc(&doc, patch)
}

pub fn write_scheme(path: &Path, scheme: &ReflectionScheme) -> Result<()> {
    std::fs::write(path, to_json_string(&scheme_to_doc(scheme)))?;
    Ok(())
}

pub fn read_scheme(path: &Path) -> Result<ReflectionScheme> {
    let content = std::fs::read_to_string(path)?;
    let doc: SchemeDoc = from_json_str(&content, &path.display().to_string())?;
    scheme_from_doc(&doc)
}
