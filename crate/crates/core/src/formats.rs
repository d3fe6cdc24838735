//! JSON file formats: instances of every kind, solutions with embedded
//! certificates, and the exact string encoding of rationals.
//!
//! Rationals are encoded as canonical strings (`"n"` or `"n/d"`, lowest
//! terms, positive denominator), never as floats, so serialize-parse is
//! the identity on canonical documents byte for byte.

use crate::geometry::{Point, Segment};
use crate::hardness::{Gadget, S3scInstance};
use crate::model::{MultitoleranceVertex, ShadowRepresentation, ToleranceVertex, Tolerances};
use crate::rational::{format_rat, parse_rat};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("rational: {0}")]
    Rational(#[from] crate::rational::RationalParseError),
    #[error("geometry: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("unexpected document kind `{0}`")]
    WrongKind(String),
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ToleranceVertexDoc {
    pub id: String,
    pub l: String,
    pub r: String,
    pub t: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct MultitoleranceVertexDoc {
    pub id: String,
    pub l: String,
    pub r: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lt: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rt: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unbounded: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct PointDoc {
    pub id: String,
    pub x: String,
    pub y: String,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct SegmentDoc {
    pub id: String,
    pub x1: String,
    pub y1: String,
    pub x2: String,
    pub y2: String,
}

/// Any instance or solution document, discriminated by `kind`.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum InstanceFile {
    Tolerance {
        vertices: Vec<ToleranceVertexDoc>,
    },
    Multitolerance {
        vertices: Vec<MultitoleranceVertexDoc>,
    },
    Shadow {
        horizontal: bool,
        delta: String,
        points: Vec<PointDoc>,
        segments: Vec<SegmentDoc>,
    },
    S3sc {
        m: usize,
        n: usize,
        gadgets: Vec<[usize; 3]>,
    },
    Solution {
        problem: String,
        status: String,
        size: usize,
        vertices: Vec<String>,
        /// certificate: element id -> id of a solution member dominating
        /// it (itself when the element is in the solution)
        witness: BTreeMap<String, String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        note: Option<String>,
    },
}

pub fn to_json(doc: &InstanceFile) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}

pub fn from_json(s: &str) -> Result<InstanceFile, FormatError> {
    Ok(serde_json::from_str(s)?)
}

pub fn tolerance_to_doc(vs: &[ToleranceVertex]) -> InstanceFile {
    InstanceFile::Tolerance {
        vertices: vs
            .iter()
            .map(|v| ToleranceVertexDoc {
                id: v.id.clone(),
                l: format_rat(&v.l),
                r: format_rat(&v.r),
                t: format_rat(&v.t),
            })
            .collect(),
    }
}

pub fn doc_to_tolerance(doc: &InstanceFile) -> Result<Vec<ToleranceVertex>, FormatError> {
    match doc {
        InstanceFile::Tolerance { vertices } => vertices
            .iter()
            .map(|d| {
                Ok(ToleranceVertex {
                    id: d.id.clone(),
                    l: parse_rat(&d.l)?,
                    r: parse_rat(&d.r)?,
                    t: parse_rat(&d.t)?,
                })
            })
            .collect(),
        other => Err(FormatError::WrongKind(kind_name(other))),
    }
}

pub fn multitolerance_to_doc(vs: &[MultitoleranceVertex]) -> InstanceFile {
    InstanceFile::Multitolerance {
        vertices: vs
            .iter()
            .map(|v| match &v.tol {
                Tolerances::Bounded { lt, rt } => MultitoleranceVertexDoc {
                    id: v.id.clone(),
                    l: format_rat(&v.l),
                    r: format_rat(&v.r),
                    lt: Some(format_rat(lt)),
                    rt: Some(format_rat(rt)),
                    unbounded: false,
                },
                Tolerances::Unbounded => MultitoleranceVertexDoc {
                    id: v.id.clone(),
                    l: format_rat(&v.l),
                    r: format_rat(&v.r),
                    lt: None,
                    rt: None,
                    unbounded: true,
                },
            })
            .collect(),
    }
}

pub fn doc_to_multitolerance(doc: &InstanceFile) -> Result<Vec<MultitoleranceVertex>, FormatError> {
    match doc {
        InstanceFile::Multitolerance { vertices } => vertices
            .iter()
            .map(|d| {
                let tol = if d.unbounded {
                    Tolerances::Unbounded
                } else {
                    Tolerances::Bounded {
                        lt: parse_rat(d.lt.as_deref().unwrap_or("0"))?,
                        rt: parse_rat(d.rt.as_deref().unwrap_or("0"))?,
                    }
                };
                Ok(MultitoleranceVertex {
                    id: d.id.clone(),
                    l: parse_rat(&d.l)?,
                    r: parse_rat(&d.r)?,
                    tol,
                })
            })
            .collect(),
        other => Err(FormatError::WrongKind(kind_name(other))),
    }
}

pub fn shadow_to_doc(rep: &ShadowRepresentation) -> InstanceFile {
    InstanceFile::Shadow {
        horizontal: rep.horizontal,
        delta: format_rat(&rep.delta),
        points: rep
            .points
            .iter()
            .map(|(id, p)| PointDoc { id: id.clone(), x: format_rat(&p.x), y: format_rat(&p.y) })
            .collect(),
        segments: rep
            .segments
            .iter()
            .map(|(id, s)| SegmentDoc {
                id: id.clone(),
                x1: format_rat(&s.left().x),
                y1: format_rat(&s.left().y),
                x2: format_rat(&s.right().x),
                y2: format_rat(&s.right().y),
            })
            .collect(),
    }
}

pub fn doc_to_shadow(doc: &InstanceFile) -> Result<ShadowRepresentation, FormatError> {
    match doc {
        InstanceFile::Shadow { horizontal, delta, points, segments } => {
            let pts = points
                .iter()
                .map(|d| Ok((d.id.clone(), Point::new(parse_rat(&d.x)?, parse_rat(&d.y)?))))
                .collect::<Result<Vec<_>, FormatError>>()?;
            let segs = segments
                .iter()
                .map(|d| {
                    let p1 = Point::new(parse_rat(&d.x1)?, parse_rat(&d.y1)?);
                    let p2 = Point::new(parse_rat(&d.x2)?, parse_rat(&d.y2)?);
                    Ok((d.id.clone(), Segment::new(p1, p2)?))
                })
                .collect::<Result<Vec<_>, FormatError>>()?;
            Ok(ShadowRepresentation {
                points: pts,
                segments: segs,
                delta: parse_rat(delta)?,
                horizontal: *horizontal,
            })
        }
        other => Err(FormatError::WrongKind(kind_name(other))),
    }
}

pub fn s3sc_to_doc(inst: &S3scInstance) -> InstanceFile {
    InstanceFile::S3sc {
        m: inst.m,
        n: inst.n,
        gadgets: inst.gadgets.iter().map(|g| [g.i, g.j, g.k]).collect(),
    }
}

pub fn doc_to_s3sc(doc: &InstanceFile) -> Result<S3scInstance, FormatError> {
    match doc {
        InstanceFile::S3sc { m, n, gadgets } => Ok(S3scInstance {
            m: *m,
            n: *n,
            gadgets: gadgets.iter().map(|g| Gadget { i: g[0], j: g[1], k: g[2] }).collect(),
        }),
        other => Err(FormatError::WrongKind(kind_name(other))),
    }
}

/// Build a solution document with its domination certificate: every
/// element of the representation maps to a solution member dominating it.
pub fn solution_doc(
    problem: &str,
    rep: &ShadowRepresentation,
    chosen: &std::collections::BTreeSet<String>,
    note: Option<String>,
) -> InstanceFile {
    let mut witness = BTreeMap::new();
    let ids = rep.ids();
    for id in &ids {
        if chosen.contains(id) {
            witness.insert(id.clone(), id.clone());
            continue;
        }
        let dominator = chosen
            .iter()
            .find(|c| crate::model::shadow_adjacent(rep, id, c).unwrap_or(false))
            .cloned()
            .unwrap_or_default();
        witness.insert(id.clone(), dominator);
    }
    InstanceFile::Solution {
        problem: problem.to_string(),
        status: "ok".into(),
        size: chosen.len(),
        vertices: chosen.iter().cloned().collect(),
        witness,
        note,
    }
}

pub fn infeasible_doc(problem: &str, note: &str) -> InstanceFile {
    InstanceFile::Solution {
        problem: problem.to_string(),
        status: "infeasible".into(),
        size: 0,
        vertices: vec![],
        witness: BTreeMap::new(),
        note: Some(note.to_string()),
    }
}

/// Re-check a solution document against its instance using only the
/// adjacency oracle: every element's witness must be a chosen vertex
/// equal or adjacent to it.
pub fn verify_solution_doc(
    rep: &ShadowRepresentation,
    doc: &InstanceFile,
) -> Result<(), String> {
    match doc {
        InstanceFile::Solution { status, vertices, witness, .. } => {
            if status != "ok" {
                return Ok(()); // infeasibility marks carry no certificate
            }
            let chosen: std::collections::BTreeSet<&String> = vertices.iter().collect();
            for id in rep.ids() {
                let w = witness
                    .get(&id)
                    .ok_or_else(|| format!("element {id} missing from the witness map"))?;
                if !chosen.contains(w) {
                    return Err(format!("witness {w} of {id} is not a chosen vertex"));
                }
                if *w != id
                    && !crate::model::shadow_adjacent(rep, &id, w).map_err(|e| e.to_string())?
                {
                    return Err(format!("witness {w} does not dominate {id}"));
                }
            }
            Ok(())
        }
        other => Err(format!("not a solution document: {}", kind_name(other))),
    }
}

pub fn kind_name(doc: &InstanceFile) -> String {
    match doc {
        InstanceFile::Tolerance { .. } => "tolerance",
        InstanceFile::Multitolerance { .. } => "multitolerance",
        InstanceFile::Shadow { .. } => "shadow",
        InstanceFile::S3sc { .. } => "s3sc",
        InstanceFile::Solution { .. } => "solution",
    }
    .to_string()
}
