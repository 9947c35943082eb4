//! Placements, representations and their JSON form.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{Point, SignVector};
use crate::rational::Rational;
use crate::tree::{RootedTree, Tree};

/// Where one vertex sits and how it got there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Placement {
    pub position: Point,
    pub radius: Rational,
    /// `radius` for leaves of the rooted tree, `2 * radius` otherwise.
    pub super_radius: Rational,
    /// Axis (1-indexed) the position was shifted along; normal children only.
    pub shift_axis: Option<usize>,
    /// Sign vector of the corner of the parent's ball this vertex was placed
    /// at (or, for a normal child, attached to).
    pub attached_corner: Option<SignVector>,
    /// Axis of the parent-ball edge a normal child was attached to.
    pub attached_edge_axis: Option<usize>,
}

/// How a representation was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// The one-dimensional placement of a single edge.
    SingleEdge,
    /// The corner-and-edge construction over the special rooted tree.
    Rooted,
    /// A star with its leaves on the corners of the centre's ball.
    StarCorners,
}

/// A candidate SIG representation of a tree: one placement per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    pub dimension: usize,
    /// Indexed by dense vertex id.
    pub placements: Vec<Placement>,
    pub tree: Tree,
    /// The rooted tree the placements were derived from (absent for
    /// constructions that do not use one).
    pub rooted: Option<RootedTree>,
    pub method: Method,
}

impl Representation {
    pub fn placement(&self, v: usize) -> &Placement {
        &self.placements[v]
    }

    pub fn to_file(&self) -> RepresentationFile {
        RepresentationFile {
            dimension: self.dimension,
            vertices: self
                .placements
                .iter()
                .enumerate()
                .map(|(v, p)| VertexRecord {
                    id: self.tree.label(v),
                    position: p.position.clone(),
                    radius: p.radius.clone(),
                    super_radius: p.super_radius.clone(),
                    shift_axis: p.shift_axis,
                })
                .collect(),
        }
    }

    pub fn to_json(&self, pretty: bool) -> String {
        self.to_file().to_json(pretty)
    }
}

/// The on-disk form of a representation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepresentationFile {
    pub dimension: usize,
    pub vertices: Vec<VertexRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexRecord {
    pub id: u64,
    pub position: Point,
    pub radius: Rational,
    pub super_radius: Rational,
    pub shift_axis: Option<usize>,
}

impl RepresentationFile {
    pub fn from_json(text: &str) -> Result<RepresentationFile> {
        let file: RepresentationFile = serde_json::from_str(text)?;
        if let Some(v) = file.vertices.iter().find(|v| v.position.dim() != file.dimension) {
            return Err(Error::DimensionMismatch {
                expected: file.dimension,
                found: v.position.dim(),
            });
        }
        Ok(file)
    }

    pub fn to_json(&self, pretty: bool) -> String {
        if pretty {
            serde_json::to_string_pretty(self).expect("representation serializes")
        } else {
            serde_json::to_string(self).expect("representation serializes")
        }
    }
}
