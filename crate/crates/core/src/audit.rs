//! Exact audit of the geometric facts the embedding relies on.
//!
//! Ball containment and disjointness for L∞ balls reduce to centre-distance
//! inequalities: `B(p, r) ⊆ B(q, R)` iff `dist(p, q) + r <= R`, and two open
//! balls are disjoint iff `dist(p, q) >= r + R`. Every check runs on the
//! common-denominator integer grid; failures are reported with both sides of
//! the violated relation as exact rationals.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::geometry::{Point, SignVector};
use crate::lattice::Lattice;
use crate::rational::Rational;
use crate::repr::{Method, Representation};
use crate::sig::{nearest_neighbor_radii, PointSet};
use crate::tree::{leaf_stats, ChildKind, RootedTree};

/// The individual properties audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckId {
    /// A normal child sits at distance `r(u) + r(v)/2` from its parent.
    NormalChildDistance,
    /// Corner children occupy distinct corners, never the normal children's
    /// attachment corner.
    CornerExclusivity,
    /// Exactly one corner (corner children) or exactly one edge's two corners
    /// (normal children) of `B(v)` lie inside the parent's ball, with the
    /// predicted sign vectors.
    CornerContainment,
    /// Enough corners of `B(u)` lie outside the parent's ball.
    FreeCorners,
    /// Super-balls of siblings are disjoint.
    SiblingSuperBalls,
    /// A child's super-ball is contained in its parent's.
    ChildNesting,
    /// Every descendant's ball lies in the ancestor's super-ball.
    DescendantContainment,
    /// A vertex's ball misses its grandchildren's super-balls.
    GrandchildSeparation,
    /// Balls of non-adjacent vertices are disjoint.
    NonEdgeDisjoint,
    /// Adjacent centres are at least `max(r(u), r(v))` apart and their balls
    /// meet.
    EdgeContact,
    /// Stored radii equal nearest-neighbour distances.
    NearestNeighborRadii,
    /// A leaf's ball meets its neighbour's ball in volume at least
    /// `r_z^d`.
    LeafVolume,
}

impl CheckId {
    pub const ALL: [CheckId; 12] = [
        CheckId::NormalChildDistance,
        CheckId::CornerExclusivity,
        CheckId::CornerContainment,
        CheckId::FreeCorners,
        CheckId::SiblingSuperBalls,
        CheckId::ChildNesting,
        CheckId::DescendantContainment,
        CheckId::GrandchildSeparation,
        CheckId::NonEdgeDisjoint,
        CheckId::EdgeContact,
        CheckId::NearestNeighborRadii,
        CheckId::LeafVolume,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CheckId::NormalChildDistance => "normal-child-distance",
            CheckId::CornerExclusivity => "corner-exclusivity",
            CheckId::CornerContainment => "corner-containment",
            CheckId::FreeCorners => "free-corners",
            CheckId::SiblingSuperBalls => "sibling-super-balls",
            CheckId::ChildNesting => "child-nesting",
            CheckId::DescendantContainment => "descendant-containment",
            CheckId::GrandchildSeparation => "grandchild-separation",
            CheckId::NonEdgeDisjoint => "non-edge-disjoint",
            CheckId::EdgeContact => "edge-contact",
            CheckId::NearestNeighborRadii => "nearest-neighbor-radii",
            CheckId::LeafVolume => "leaf-volume",
        }
    }

    /// Checks that only make sense for the rooted construction.
    fn structural(self) -> bool {
        !matches!(
            self,
            CheckId::NonEdgeDisjoint
                | CheckId::EdgeContact
                | CheckId::NearestNeighborRadii
                | CheckId::LeafVolume
        )
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The relation that was required to hold between `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<")]
    Lt,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Relation {
    pub fn holds(self, lhs: &Rational, rhs: &Rational) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Ge => ">=",
            Relation::Eq => "=",
        }
    }
}

/// One failed instance: `lhs relation rhs` was required and does not hold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    /// Vertex ids involved, in the order the check names them.
    pub context: Vec<u64>,
    pub what: String,
    pub lhs: Rational,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub id: CheckId,
    /// Number of instances (vertices, pairs, ...) examined.
    pub evaluated: usize,
    pub violations: Vec<Violation>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub checks: Vec<CheckOutcome>,
    pub all_pass: bool,
}

impl AuditReport {
    pub fn check(&self, id: CheckId) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.id == id)
    }

    /// Plain-text table, one row per check.
    pub fn to_table(&self) -> String {
        let mut out = format!("{:<24} {:>10} {:>10}  status\n", "check", "evaluated", "failed");
        for c in &self.checks {
            out.push_str(&format!(
                "{:<24} {:>10} {:>10}  {}\n",
                c.id.name(),
                c.evaluated,
                c.violations.len(),
                if c.passed() { "pass" } else { "FAIL" }
            ));
            for v in c.violations.iter().take(5) {
                out.push_str(&format!(
                    "    {:?} {}: need {} {} {}\n",
                    v.context,
                    v.what,
                    v.lhs,
                    v.relation.symbol(),
                    v.rhs
                ));
            }
        }
        out.push_str(if self.all_pass { "all checks pass\n" } else { "audit FAILED\n" });
        out
    }
}

struct Frame<'a> {
    rep: &'a Representation,
    lattice: Lattice,
    /// `None` when the positions do not form a valid point set.
    nearest: Option<Result<BTreeMap<u64, Rational>>>,
    radius: Vec<BigInt>,
    super_radius: Vec<BigInt>,
}

impl Frame<'_> {
    fn label(&self, v: usize) -> u64 {
        self.rep.tree.label(v)
    }

    fn q(&self, x: &BigInt) -> Rational {
        self.lattice.lower(x)
    }

    /// Records a violation unless `lhs relation rhs` holds on the grid.
    fn require(
        &self,
        out: &mut Vec<Violation>,
        context: &[usize],
        what: &str,
        lhs: BigInt,
        relation: Relation,
        rhs: BigInt,
    ) {
        let ok = match relation {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
        };
        if !ok {
            out.push(Violation {
                context: context.iter().map(|&v| self.label(v)).collect(),
                what: what.to_string(),
                lhs: self.q(&lhs),
                relation,
                rhs: self.q(&rhs),
            });
        }
    }

    /// Sign vectors of the corners of `B(v)` that lie inside `B(u)`.
    fn corners_inside(&self, v: usize, u: usize) -> Vec<SignVector> {
        let pv = self.lattice.coords(v);
        let pu = self.lattice.coords(u);
        SignVector::enumerate(self.rep.dimension)
            .filter(|s| {
                pv.iter().zip(pu).zip(s.signs()).all(|((a, b), &sign)| {
                    let c = if sign > 0 { a + &self.radius[v] } else { a - &self.radius[v] };
                    let off = c - b;
                    off < self.radius[u] && -off < self.radius[u]
                })
            })
            .collect()
    }
}

fn count(n: usize) -> Rational {
    Rational::from(n as i64)
}

/// Runs every applicable check on `rep`.
///
/// Constructions other than the rooted one only get the checks that do not
/// depend on the rooted tree.
pub fn audit(rep: &Representation) -> AuditReport {
    let points: Vec<&Point> = rep.placements.iter().map(|p| &p.position).collect();
    let extra = rep
        .placements
        .iter()
        .flat_map(|p| [&p.radius, &p.super_radius]);
    let lattice = Lattice::new(&points, extra);
    let radius = rep.placements.iter().map(|p| lattice.lift(&p.radius)).collect();
    let super_radius = rep.placements.iter().map(|p| lattice.lift(&p.super_radius)).collect();
    let nearest = point_set(rep).map(|ps| nearest_neighbor_radii(&ps));
    let frame = Frame {
        rep,
        lattice,
        nearest,
        radius,
        super_radius,
    };

    let rooted = match (rep.method, &rep.rooted) {
        (Method::Rooted, Some(r)) => Some(r),
        _ => None,
    };
    let mut checks = Vec::new();
    for id in CheckId::ALL {
        if id.structural() && rooted.is_none() {
            continue;
        }
        checks.push(run_check(&frame, rooted, id));
    }
    let all_pass = checks.iter().all(CheckOutcome::passed);
    AuditReport { checks, all_pass }
}

fn run_check(f: &Frame<'_>, rooted: Option<&RootedTree>, id: CheckId) -> CheckOutcome {
    let mut violations = Vec::new();
    let evaluated = match (id, rooted) {
        (CheckId::NormalChildDistance, Some(r)) => normal_child_distance(f, r, &mut violations),
        (CheckId::CornerExclusivity, Some(r)) => corner_exclusivity(f, r, &mut violations),
        (CheckId::CornerContainment, Some(r)) => corner_containment(f, r, &mut violations),
        (CheckId::FreeCorners, Some(r)) => free_corners(f, r, &mut violations),
        (CheckId::SiblingSuperBalls, Some(r)) => sibling_super_balls(f, r, &mut violations),
        (CheckId::ChildNesting, Some(r)) => child_nesting(f, r, &mut violations),
        (CheckId::DescendantContainment, Some(r)) => descendant_containment(f, r, &mut violations),
        (CheckId::GrandchildSeparation, Some(r)) => grandchild_separation(f, r, &mut violations),
        (CheckId::NonEdgeDisjoint, _) => non_edge_disjoint(f, &mut violations),
        (CheckId::EdgeContact, _) => edge_contact(f, &mut violations),
        (CheckId::NearestNeighborRadii, _) => nearest_radii(f, &mut violations),
        (CheckId::LeafVolume, _) => leaf_volume(f, &mut violations),
        (_, None) => unreachable!("structural checks need a rooted tree"),
    };
    CheckOutcome {
        id,
        evaluated,
        violations,
    }
}

fn non_root(r: &RootedTree) -> impl Iterator<Item = (usize, usize)> + '_ {
    r.bfs_order()[1..].iter().map(move |&v| (v, r.parent(v).unwrap()))
}

fn normal_child_distance(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for (v, u) in non_root(r).filter(|&(v, _)| r.kind(v) == ChildKind::Normal) {
        n += 1;
        // 2 * dist = 2 r(u) + r(v)
        let two_dist = f.lattice.dist(u, v) * 2;
        let rhs = &f.radius[u] * 2 + &f.radius[v];
        f.require(out, &[u, v], "2 * dist(u, v) = 2 r(u) + r(v)", two_dist, Relation::Eq, rhs);
    }
    n
}

fn corner_exclusivity(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for u in (0..f.rep.tree.len()).filter(|&u| u != r.root() && !r.is_leaf(u)) {
        n += 1;
        let kids = r.corner_children(u);
        let mut signs: Vec<&SignVector> = Vec::new();
        for &y in &kids {
            match &f.rep.placements[y].attached_corner {
                Some(s) => {
                    // The child must actually sit on that corner of B(u).
                    let on_corner = f
                        .lattice
                        .coords(y)
                        .iter()
                        .zip(f.lattice.coords(u))
                        .zip(s.signs())
                        .all(|((a, b), &sign)| {
                            if sign > 0 {
                                *a == b + &f.radius[u]
                            } else {
                                *a == b - &f.radius[u]
                            }
                        });
                    if !on_corner {
                        out.push(Violation {
                            context: vec![f.label(u), f.label(y)],
                            what: format!("child placed on corner {s:?} of B(u)"),
                            lhs: count(0),
                            relation: Relation::Eq,
                            rhs: count(1),
                        });
                    }
                    signs.push(s);
                }
                None => out.push(Violation {
                    context: vec![f.label(u), f.label(y)],
                    what: "corner child has an attachment corner".into(),
                    lhs: count(0),
                    relation: Relation::Eq,
                    rhs: count(1),
                }),
            }
        }
        let mut distinct = signs.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != signs.len() {
            out.push(Violation {
                context: vec![f.label(u)],
                what: "distinct corners among corner children".into(),
                lhs: count(distinct.len()),
                relation: Relation::Eq,
                rhs: count(signs.len()),
            });
        }
        if let Some(&first) = r.normal_children(u).first() {
            if let Some(q) = &f.rep.placements[first].attached_corner {
                let reused = signs.iter().filter(|s| **s == q).count();
                if reused > 0 {
                    out.push(Violation {
                        context: vec![f.label(u)],
                        what: format!("corner children on the attachment corner {q:?}"),
                        lhs: count(reused),
                        relation: Relation::Eq,
                        rhs: count(0),
                    });
                }
            }
        }
    }
    n
}

fn corner_containment(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for (v, u) in non_root(r) {
        n += 1;
        let inside = f.corners_inside(v, u);
        let p = &f.rep.placements[v];
        let Some(s1) = &p.attached_corner else {
            out.push(Violation {
                context: vec![f.label(u), f.label(v)],
                what: "vertex has an attachment corner".into(),
                lhs: count(0),
                relation: Relation::Eq,
                rhs: count(1),
            });
            continue;
        };
        let mut expected = vec![s1.negated()];
        if r.kind(v) == ChildKind::Normal {
            match p.attached_edge_axis {
                Some(l) => expected.push(s1.negated().flipped(l)),
                None => {
                    out.push(Violation {
                        context: vec![f.label(u), f.label(v)],
                        what: "normal child has an attachment edge".into(),
                        lhs: count(0),
                        relation: Relation::Eq,
                        rhs: count(1),
                    });
                    continue;
                }
            }
        }
        expected.sort();
        if inside.len() != expected.len() {
            out.push(Violation {
                context: vec![f.label(u), f.label(v)],
                what: "corners of B(v) inside B(parent)".into(),
                lhs: count(inside.len()),
                relation: Relation::Eq,
                rhs: count(expected.len()),
            });
        } else if inside != expected {
            out.push(Violation {
                context: vec![f.label(u), f.label(v)],
                what: format!("inside corners {inside:?} match predicted {expected:?}"),
                lhs: count(0),
                relation: Relation::Eq,
                rhs: count(1),
            });
        } else if inside.len() == 2 {
            let differing = inside[0]
                .signs()
                .iter()
                .zip(inside[1].signs())
                .filter(|(a, b)| a != b)
                .count();
            if differing != 1 {
                out.push(Violation {
                    context: vec![f.label(u), f.label(v)],
                    what: "the two inside corners differ on exactly one axis".into(),
                    lhs: count(differing),
                    relation: Relation::Eq,
                    rhs: count(1),
                });
            }
        }
    }
    n
}

fn free_corners(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let beta = leaf_stats(&f.rep.tree).beta;
    let total = 1usize << f.rep.dimension;
    let mut n = 0;
    for (u, parent) in non_root(r).filter(|&(u, _)| !r.is_leaf(u)) {
        n += 1;
        let free = total - f.corners_inside(u, parent).len();
        let ctx = [f.label(parent), f.label(u)];
        let needed = r.corner_children(u).len();
        let (relation, bound) = match r.kind(u) {
            ChildKind::PseudoLeaf => (Relation::Ge, beta + 1),
            _ => (Relation::Ge, beta),
        };
        if free < bound {
            out.push(Violation {
                context: ctx.to_vec(),
                what: "free corners against beta".into(),
                lhs: count(free),
                relation,
                rhs: count(bound),
            });
        }
        let extra = usize::from(r.kind(u) == ChildKind::PseudoLeaf && !r.normal_children(u).is_empty());
        if free < needed + extra {
            out.push(Violation {
                context: ctx.to_vec(),
                what: "free corners against corner children".into(),
                lhs: count(free),
                relation: Relation::Ge,
                rhs: count(needed + extra),
            });
        }
    }
    n
}

fn sibling_super_balls(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for u in 0..f.rep.tree.len() {
        let kids = r.children(u);
        for (a, &v) in kids.iter().enumerate() {
            for &w in &kids[a + 1..] {
                n += 1;
                let rhs = &f.super_radius[v] + &f.super_radius[w];
                f.require(out, &[v, w], "dist(v, w) >= R(v) + R(w)", f.lattice.dist(v, w), Relation::Ge, rhs);
            }
        }
    }
    n
}

fn child_nesting(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for (v, u) in non_root(r) {
        n += 1;
        let lhs = f.lattice.dist(u, v) + &f.super_radius[v];
        // A leaf child touches the boundary of its parent's super-ball from
        // inside; every other child is strictly interior.
        if r.kind(v) == ChildKind::Leaf {
            f.require(out, &[u, v], "dist(u, v) + R(v) <= R(u)", lhs, Relation::Le, f.super_radius[u].clone());
        } else {
            f.require(out, &[u, v], "dist(u, v) + R(v) < R(u)", lhs, Relation::Lt, f.super_radius[u].clone());
        }
    }
    n
}

fn descendant_containment(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for &v in r.bfs_order() {
        let mut anc = r.parent(v);
        while let Some(u) = anc {
            n += 1;
            let lhs = f.lattice.dist(u, v) + &f.radius[v];
            f.require(out, &[u, v], "dist(u, v) + r(v) <= R(u)", lhs, Relation::Le, f.super_radius[u].clone());
            anc = r.parent(u);
        }
    }
    n
}

fn grandchild_separation(f: &Frame<'_>, r: &RootedTree, out: &mut Vec<Violation>) -> usize {
    let mut n = 0;
    for &w in r.bfs_order() {
        if let Some(u) = r.parent(w).and_then(|v| r.parent(v)) {
            n += 1;
            let rhs = &f.radius[u] + &f.super_radius[w];
            f.require(out, &[u, w], "dist(u, w) >= r(u) + R(w)", f.lattice.dist(u, w), Relation::Ge, rhs);
        }
    }
    n
}

fn non_edge_disjoint(f: &Frame<'_>, out: &mut Vec<Violation>) -> usize {
    let t = &f.rep.tree;
    let n = t.len();
    let found: Vec<Vec<Violation>> = (0..n)
        .into_par_iter()
        .map(|u| {
            let mut local = Vec::new();
            for v in (u + 1)..n {
                if !t.has_edge(u, v) {
                    let rhs = &f.radius[u] + &f.radius[v];
                    f.require(&mut local, &[u, v], "dist(u, v) >= r(u) + r(v)", f.lattice.dist(u, v), Relation::Ge, rhs);
                }
            }
            local
        })
        .collect();
    out.extend(found.into_iter().flatten());
    n * (n - 1) / 2 - (n - 1)
}

fn edge_contact(f: &Frame<'_>, out: &mut Vec<Violation>) -> usize {
    for &(u, v) in f.rep.tree.edges() {
        let d = f.lattice.dist(u, v);
        let big = f.radius[u].clone().max(f.radius[v].clone());
        f.require(out, &[u, v], "dist(u, v) >= max(r(u), r(v))", d.clone(), Relation::Ge, big);
        let sum = &f.radius[u] + &f.radius[v];
        f.require(out, &[u, v], "dist(u, v) < r(u) + r(v)", d, Relation::Lt, sum);
    }
    f.rep.tree.edges().len()
}

fn point_set(rep: &Representation) -> Option<PointSet> {
    let t = &rep.tree;
    PointSet::new(
        rep.dimension,
        (0..t.len())
            .map(|v| (t.label(v), rep.placements[v].position.clone()))
            .collect(),
    )
    .ok()
}

fn nearest_radii(f: &Frame<'_>, out: &mut Vec<Violation>) -> usize {
    let t = &f.rep.tree;
    let radii = match &f.nearest {
        Some(Ok(radii)) => radii,
        Some(Err(e)) => {
            out.push(Violation {
                context: Vec::new(),
                what: e.to_string(),
                lhs: count(0),
                relation: Relation::Eq,
                rhs: count(1),
            });
            return t.len();
        }
        None => return 0,
    };
    for v in 0..t.len() {
        let nearest = &radii[&t.label(v)];
        let stored = &f.rep.placements[v].radius;
        if nearest != stored {
            out.push(Violation {
                context: vec![t.label(v)],
                what: "nearest-neighbour distance = r(v)".into(),
                lhs: nearest.clone(),
                relation: Relation::Eq,
                rhs: stored.clone(),
            });
        }
    }
    t.len()
}

fn leaf_volume(f: &Frame<'_>, out: &mut Vec<Violation>) -> usize {
    let t = &f.rep.tree;
    // The volume bound is stated for nearest-neighbour radii; fall back to the
    // stored radii when those cannot be computed (the radii check reports it).
    let radii: Vec<Rational> = match &f.nearest {
        Some(Ok(m)) => (0..t.len()).map(|v| m[&t.label(v)].clone()).collect(),
        _ => f.rep.placements.iter().map(|p| p.radius.clone()).collect(),
    };
    let lattice = Lattice::new(
        &f.rep.placements.iter().map(|p| &p.position).collect::<Vec<_>>(),
        radii.iter(),
    );
    let d = f.rep.dimension as u32;
    let zero = BigInt::from(0);
    let mut n = 0;
    for y in (0..t.len()).filter(|&y| t.is_leaf(y)) {
        n += 1;
        let z = t.neighbors(y)[0];
        let (ry, rz) = (lattice.lift(&radii[y]), lattice.lift(&radii[z]));
        // Both sides carry a factor scale^d, so compare them on the grid.
        let mut vol = BigInt::from(1);
        for (a, b) in lattice.coords(y).iter().zip(lattice.coords(z)) {
            let lo = (a - &ry).max(b - &rz);
            let hi = (a + &ry).min(b + &rz);
            vol *= (hi - lo).max(zero.clone());
        }
        let bound = num_traits::pow(rz, d as usize);
        if vol < bound {
            let scale_d = num_traits::pow(lattice.scale().clone(), d as usize);
            out.push(Violation {
                context: vec![t.label(y), t.label(z)],
                what: "vol(B(y) ∩ B(z)) >= r_z^d".into(),
                lhs: Rational::new(vol, scale_d.clone()),
                relation: Relation::Ge,
                rhs: Rational::new(bound, scale_d),
            });
        }
    }
    n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{embed, embed_star};
    use crate::generate::{gen_random_tree, gen_star};
    use crate::geometry::linf_distance;
    use crate::rational::q;

    #[test]
    fn embedded_random_trees_pass() {
        for seed in 0..20 {
            let t = gen_random_tree(3 + (seed as usize * 7) % 60, seed).unwrap();
            let report = audit(&embed(&t).unwrap());
            assert!(report.all_pass, "seed {seed}:\n{}", report.to_table());
            assert_eq!(report.checks.len(), CheckId::ALL.len());
        }
    }

    #[test]
    fn star_through_algorithm_passes() {
        let report = audit(&embed(&gen_star(5).unwrap()).unwrap());
        assert!(report.all_pass, "{}", report.to_table());
        assert!(report.check(CheckId::LeafVolume).unwrap().evaluated == 5);
    }

    #[test]
    fn star_corners_get_geometric_checks_only() {
        let report = audit(&embed_star(8).unwrap());
        assert!(report.all_pass, "{}", report.to_table());
        assert_eq!(report.checks.len(), 4);
    }

    #[test]
    fn doubled_radius_is_caught() {
        let t = gen_random_tree(30, 9).unwrap();
        let mut rep = embed(&t).unwrap();
        let victim = 4;
        let p = &mut rep.placements[victim];
        p.radius = &p.radius * &q(2, 1);
        p.super_radius = &p.super_radius * &q(2, 1);
        let report = audit(&rep);
        assert!(!report.all_pass);
        let radii = report.check(CheckId::NearestNeighborRadii).unwrap();
        assert_eq!(radii.violations.len(), 1);
        let w = &radii.violations[0];
        assert_eq!(w.context, vec![t.label(victim)]);
        assert!(!w.relation.holds(&w.lhs, &w.rhs));
        assert_eq!(&w.lhs * &q(2, 1), w.rhs);
    }

    #[test]
    fn witnesses_reverify_independently() {
        // Move a vertex onto its sibling's corner region; every reported
        // pairwise witness must re-check with plain rational geometry.
        let t = gen_random_tree(40, 21).unwrap();
        let mut rep = embed(&t).unwrap();
        let target = rep.placements[7].position.clone();
        rep.placements[8].position = crate::geometry::shift(&target, 1, 1, &q(1, 1_000_000));
        let report = audit(&rep);
        assert!(!report.all_pass);
        for c in &report.checks {
            for v in &c.violations {
                assert!(!v.relation.holds(&v.lhs, &v.rhs), "{c:?}");
                if c.id == CheckId::NonEdgeDisjoint {
                    let a = t.index_of(v.context[0]).unwrap();
                    let b = t.index_of(v.context[1]).unwrap();
                    let d = linf_distance(&rep.placements[a].position, &rep.placements[b].position).unwrap();
                    assert_eq!(d, v.lhs);
                    assert_eq!(&rep.placements[a].radius + &rep.placements[b].radius, v.rhs);
                }
            }
        }
    }
}
