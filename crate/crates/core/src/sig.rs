//! Sphere-of-influence graphs computed from first principles, representation
//! checking and dimension bounds.
//!
//! Every point gets the open L∞ ball whose radius is its nearest-neighbour
//! distance; two points are adjacent when their balls meet. All comparisons
//! are exact.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt::Write as _;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::Point;
use crate::lattice::Lattice;
use crate::rational::Rational;
use crate::repr::RepresentationFile;
use crate::tree::{leaf_stats, Tree};

/// `ceil(log2(x))` for `x >= 1`, via bit length.
pub fn ceil_log2(x: u64) -> usize {
    assert!(x >= 1);
    if x == 1 {
        0
    } else {
        (u64::BITS - (x - 1).leading_zeros()) as usize
    }
}

/// A labelled point set with at least two distinct labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    dimension: usize,
    points: Vec<(u64, Point)>,
}

impl PointSet {
    pub fn new(dimension: usize, points: Vec<(u64, Point)>) -> Result<PointSet> {
        if dimension == 0 {
            return Err(Error::InvalidParam("dimension must be positive".into()));
        }
        if points.len() < 2 {
            return Err(Error::InvalidParam(format!(
                "a point set needs at least 2 points, got {}",
                points.len()
            )));
        }
        let mut labels = HashSet::new();
        for (label, p) in &points {
            if p.dim() != dimension {
                return Err(Error::DimensionMismatch {
                    expected: dimension,
                    found: p.dim(),
                });
            }
            if !labels.insert(*label) {
                return Err(Error::InvalidParam(format!("label {label} appears twice")));
            }
        }
        Ok(PointSet { dimension, points })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn points(&self) -> &[(u64, Point)] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Reads the point-set JSON form. Extra fields (such as radii in a
    /// representation file) are ignored.
    pub fn from_json(text: &str) -> Result<PointSet> {
        let file: PointSetFile = serde_json::from_str(text)?;
        file.try_into()
    }

    pub fn to_json(&self, pretty: bool) -> String {
        let file = PointSetFile {
            dimension: self.dimension,
            vertices: self
                .points
                .iter()
                .map(|(id, p)| PointRecord {
                    id: *id,
                    position: p.clone(),
                })
                .collect(),
        };
        if pretty {
            serde_json::to_string_pretty(&file).expect("point set serializes")
        } else {
            serde_json::to_string(&file).expect("point set serializes")
        }
    }

    /// Applies `x -> scale * x + offset` to every point.
    pub fn transformed(&self, scale: &Rational, offset: &Point) -> PointSet {
        let points = self
            .points
            .iter()
            .map(|(id, p)| {
                let coords = p
                    .coords()
                    .iter()
                    .zip(offset.coords())
                    .map(|(c, o)| &(scale * c) + o)
                    .collect();
                (*id, Point::new(coords))
            })
            .collect();
        PointSet {
            dimension: self.dimension,
            points,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointSetFile {
    dimension: usize,
    vertices: Vec<PointRecord>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct PointRecord {
    id: u64,
    position: Point,
}

impl TryFrom<PointSetFile> for PointSet {
    type Error = Error;

    fn try_from(file: PointSetFile) -> Result<PointSet> {
        PointSet::new(
            file.dimension,
            file.vertices.into_iter().map(|r| (r.id, r.position)).collect(),
        )
    }
}

/// Nearest-neighbour radii and adjacency, on the integer grid.
struct SigCore {
    lattice: Lattice,
    radii: Vec<BigInt>,
}

impl SigCore {
    fn compute(ps: &PointSet) -> Result<SigCore> {
        let refs: Vec<&Point> = ps.points.iter().map(|(_, p)| p).collect();
        let lattice = Lattice::new(&refs, std::iter::empty());
        let n = ps.len();
        // Each distance is computed once and offered to both endpoints.
        let mut nearest: Vec<Option<(BigInt, usize)>> = vec![None; n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = lattice.dist(i, j);
                if nearest[j].as_ref().is_none_or(|(b, _)| d < *b) {
                    nearest[j] = Some((d.clone(), i));
                }
                if nearest[i].as_ref().is_none_or(|(b, _)| d < *b) {
                    nearest[i] = Some((d, j));
                }
            }
        }
        let mut radii = Vec::with_capacity(n);
        for (i, (d, j)) in nearest.into_iter().map(|b| b.expect("at least two points")).enumerate() {
            if d == BigInt::from(0) {
                let (a, b) = (ps.points[i].0, ps.points[j].0);
                return Err(Error::DuplicatePoints(a.min(b), a.max(b)));
            }
            radii.push(d);
        }
        Ok(SigCore { lattice, radii })
    }

    fn adjacent(&self, i: usize, j: usize) -> bool {
        self.lattice.dist(i, j) < &self.radii[i] + &self.radii[j]
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.radii.len();
        (0..n)
            .into_par_iter()
            .flat_map_iter(|i| ((i + 1)..n).filter(move |&j| self.adjacent(i, j)).map(move |j| (i, j)))
            .collect()
    }
}

/// Distance from each point to its nearest neighbour, keyed by label.
pub fn nearest_neighbor_radii(ps: &PointSet) -> Result<BTreeMap<u64, Rational>> {
    let core = SigCore::compute(ps)?;
    Ok(ps
        .points
        .iter()
        .zip(&core.radii)
        .map(|((label, _), r)| (*label, core.lattice.lower(r)))
        .collect())
}

/// Undirected graph over point labels.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SigGraph {
    /// `(a, b)` with `a < b`, ascending.
    pub edges: Vec<(u64, u64)>,
}

impl SigGraph {
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (a, b) in &self.edges {
            let _ = writeln!(out, "{a} {b}");
        }
        out
    }
}

/// The sphere-of-influence graph of a point set.
pub fn sig_graph(ps: &PointSet) -> Result<SigGraph> {
    let core = SigCore::compute(ps)?;
    let mut edges: Vec<(u64, u64)> = core
        .edges()
        .into_iter()
        .map(|(i, j)| {
            let (a, b) = (ps.points[i].0, ps.points[j].0);
            (a.min(b), a.max(b))
        })
        .collect();
    edges.sort_unstable();
    Ok(SigGraph { edges })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RadiusMismatch {
    pub id: u64,
    pub stored: Rational,
    pub nearest_neighbor: Rational,
}

/// Outcome of comparing a representation's SIG against a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SigCheck {
    pub ok: bool,
    /// Tree edges whose balls do not meet.
    pub missing_edges: Vec<(u64, u64)>,
    /// SIG edges that are not tree edges.
    pub extra_edges: Vec<(u64, u64)>,
    /// Vertices whose stored radius differs from the nearest-neighbour distance.
    pub radius_mismatches: Vec<RadiusMismatch>,
    /// Structural problems that prevented the comparison (unplaced vertices,
    /// duplicate points, ...).
    pub problems: Vec<String>,
}

impl SigCheck {
    fn failed(problems: Vec<String>) -> SigCheck {
        SigCheck {
            ok: false,
            missing_edges: Vec::new(),
            extra_edges: Vec::new(),
            radius_mismatches: Vec::new(),
            problems,
        }
    }
}

/// Whether `rep` is a SIG representation of `t` with stored radii equal to
/// the nearest-neighbour distances.
pub fn is_sig_representation(t: &Tree, rep: &RepresentationFile) -> SigCheck {
    let mut problems = Vec::new();
    let mut by_label = BTreeMap::new();
    for record in &rep.vertices {
        if record.position.dim() != rep.dimension {
            problems.push(format!(
                "vertex {} has {} coordinates in a {}-dimensional representation",
                record.id,
                record.position.dim(),
                rep.dimension
            ));
        }
        if by_label.insert(record.id, record).is_some() {
            problems.push(format!("vertex {} is placed twice", record.id));
        }
    }
    let tree_labels: BTreeSet<u64> = t.labels().iter().copied().collect();
    for label in &tree_labels {
        if !by_label.contains_key(label) {
            problems.push(format!("vertex {label} has no placement"));
        }
    }
    for label in by_label.keys() {
        if !tree_labels.contains(label) {
            problems.push(format!("placement for unknown vertex {label}"));
        }
    }
    if !problems.is_empty() {
        return SigCheck::failed(problems);
    }

    let records: Vec<_> = t.labels().iter().map(|l| by_label[l]).collect();
    let ps = match PointSet::new(
        rep.dimension,
        records.iter().map(|r| (r.id, r.position.clone())).collect(),
    ) {
        Ok(ps) => ps,
        Err(e) => return SigCheck::failed(vec![e.to_string()]),
    };
    let core = match SigCore::compute(&ps) {
        Ok(core) => core,
        Err(e) => return SigCheck::failed(vec![e.to_string()]),
    };

    let radius_mismatches: Vec<RadiusMismatch> = records
        .iter()
        .zip(&core.radii)
        .filter_map(|(rec, r)| {
            let nearest = core.lattice.lower(r);
            (nearest != rec.radius).then(|| RadiusMismatch {
                id: rec.id,
                stored: rec.radius.clone(),
                nearest_neighbor: nearest,
            })
        })
        .collect();

    let sig_edges: BTreeSet<(usize, usize)> = core.edges().into_iter().collect();
    let tree_edges: BTreeSet<(usize, usize)> = t.edges().iter().copied().collect();
    let label_pair = |&(u, v): &(usize, usize)| {
        let (a, b) = (t.label(u), t.label(v));
        (a.min(b), a.max(b))
    };
    let mut missing_edges: Vec<_> = tree_edges.difference(&sig_edges).map(label_pair).collect();
    let mut extra_edges: Vec<_> = sig_edges.difference(&tree_edges).map(label_pair).collect();
    missing_edges.sort_unstable();
    extra_edges.sort_unstable();

    SigCheck {
        ok: missing_edges.is_empty() && extra_edges.is_empty() && radius_mismatches.is_empty(),
        missing_edges,
        extra_edges,
        radius_mismatches,
        problems,
    }
}

/// Lower and upper bounds on the L∞ SIG dimension of a tree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimensionReport {
    pub beta: usize,
    /// `ceil(log2(beta + 1))`.
    pub lower: usize,
    /// `ceil(log2(beta + 2))`.
    pub upper: usize,
    /// Set when the bounds coincide.
    pub exact: Option<usize>,
    /// The bounds differ by one (`beta + 1` is a power of two); which value
    /// holds is not decided here.
    pub ambiguous: bool,
}

impl DimensionReport {
    pub fn from_beta(beta: usize) -> DimensionReport {
        assert!(beta >= 1);
        let lower = ceil_log2(beta as u64 + 1);
        let upper = ceil_log2(beta as u64 + 2);
        DimensionReport {
            beta,
            lower,
            upper,
            exact: (lower == upper).then_some(upper),
            ambiguous: lower != upper,
        }
    }
}

pub fn dimension_bounds(t: &Tree) -> DimensionReport {
    let beta = leaf_stats(t).beta;
    if t.len() == 2 {
        // A single edge is realised on a line.
        return DimensionReport {
            beta,
            lower: 1,
            upper: 1,
            exact: Some(1),
            ambiguous: false,
        };
    }
    DimensionReport::from_beta(beta)
}
