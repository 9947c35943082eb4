//! Constructive L∞ sphere-of-influence embedding of trees.
//!
//! The tree is rooted at a leaf next to a vertex of maximum leaf-degree. The
//! root sits at the origin with radius 1 and its only child at the all-ones
//! point with radius 1/8. Every later vertex `u` places its children relative
//! to its own ball `B(u)`:
//!
//! * leaf children (or the single pseudo-leaf) go to distinct corners of
//!   `B(u)` that lie outside the parent's ball;
//! * the `t` normal children are spread along one edge `A_l(q)` of `B(u)` at
//!   distances `r(u)/2 * (1 + i/(t+1))` from the corner `q`, then pushed off
//!   the edge by `r(u) / (16(t+1))` along a second axis `j`.
//!
//! Radii shrink by `8(t+1)` for non-leaf children and are inherited by leaf
//! children. The resulting point set realises the tree as its SIG in
//! `ceil(log2(beta + 2))` dimensions.

use crate::error::{Error, Result};
use crate::generate::gen_star;
use crate::geometry::{contains_open, corners, shift, OpenBox, Point, SignVector};
use crate::rational::Rational;
use crate::repr::{Method, Placement, Representation};
use crate::sig::ceil_log2;
use crate::tree::{build_special_rooted_tree, leaf_stats, ChildKind, RootedTree, Tree};

/// `ceil(log2(beta + 2))`, the dimension the construction works in.
pub fn target_dimension(beta: usize) -> Result<usize> {
    if beta < 1 {
        return Err(Error::InvalidParam(format!("beta must be >= 1, got {beta}")));
    }
    Ok(ceil_log2(beta as u64 + 2))
}

fn super_radius(rooted: &RootedTree, v: usize, radius: &Rational) -> Rational {
    if rooted.is_leaf(v) {
        radius.clone()
    } else {
        radius + radius
    }
}

/// Embeds any tree with at least two vertices.
pub fn embed(t: &Tree) -> Result<Representation> {
    let rooted = build_special_rooted_tree(t);
    if t.len() == 2 {
        return Ok(single_edge(t, rooted));
    }
    let dimension = target_dimension(leaf_stats(t).beta)?;
    let mut slots: Vec<Option<Placement>> = vec![None; t.len()];

    let root = rooted.root();
    let one = Rational::one();
    slots[root] = Some(Placement {
        position: Point::origin(dimension),
        super_radius: super_radius(&rooted, root, &one),
        radius: one.clone(),
        shift_axis: None,
        attached_corner: None,
        attached_edge_axis: None,
    });
    let first = rooted.children(root)[0];
    let first_radius = Rational::new(1, 8);
    slots[first] = Some(Placement {
        position: Point::splat(dimension, one),
        super_radius: super_radius(&rooted, first, &first_radius),
        radius: first_radius,
        shift_axis: None,
        attached_corner: Some(SignVector::all_positive(dimension)),
        attached_edge_axis: None,
    });

    for &u in &rooted.bfs_order()[1..] {
        if !rooted.is_leaf(u) {
            place_children(t, &rooted, u, dimension, &mut slots)?;
        }
    }

    let placements = slots
        .into_iter()
        .enumerate()
        .map(|(v, p)| {
            p.ok_or_else(|| Error::InternalInvariantViolation {
                vertex: t.label(v),
                message: "vertex was never placed".into(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Representation {
        dimension,
        placements,
        tree: t.clone(),
        rooted: Some(rooted),
        method: Method::Rooted,
    })
}

fn single_edge(t: &Tree, rooted: RootedTree) -> Representation {
    let placements = (0..2)
        .map(|v| {
            let radius = Rational::one();
            Placement {
                position: Point::from_ints(&[v as i64]),
                super_radius: super_radius(&rooted, v, &radius),
                radius,
                shift_axis: None,
                attached_corner: None,
                attached_edge_axis: None,
            }
        })
        .collect();
    Representation {
        dimension: 1,
        placements,
        tree: t.clone(),
        rooted: Some(rooted),
        method: Method::SingleEdge,
    }
}

fn place_children(
    t: &Tree,
    rooted: &RootedTree,
    u: usize,
    dimension: usize,
    slots: &mut [Option<Placement>],
) -> Result<()> {
    let violation = |message: String| Error::InternalInvariantViolation {
        vertex: t.label(u),
        message,
    };
    let parent = rooted.parent(u).expect("non-root vertex has a parent");
    let (ball, parent_ball, own) = {
        let pu = slots[u].as_ref().expect("parents are placed before children");
        let pp = slots[parent].as_ref().expect("grandparent placed");
        (
            OpenBox::new(pu.position.clone(), pu.radius.clone())?,
            OpenBox::new(pp.position.clone(), pp.radius.clone())?,
            pu.clone(),
        )
    };
    let r = own.radius.clone();
    let normal = rooted.normal_children(u);
    let t_count = normal.len() as i64;
    let shrunk = &r / &Rational::from(8 * (t_count + 1));

    // Corners of B(u) outside the parent's ball, in lexicographic order.
    let mut available = Vec::new();
    for (signs, corner) in corners(&ball) {
        if !contains_open(&parent_ball, &corner)? {
            available.push((signs, corner));
        }
    }

    let corner_kids = rooted.corner_children(u);
    let needs_extra = rooted.kind(u) == ChildKind::PseudoLeaf && !normal.is_empty();
    if available.len() < corner_kids.len() + usize::from(needs_extra) {
        return Err(violation(format!(
            "{} free corners for {} corner children",
            available.len(),
            corner_kids.len()
        )));
    }
    for (&y, (signs, corner)) in corner_kids.iter().zip(&available) {
        let radius = if rooted.is_leaf(y) { r.clone() } else { shrunk.clone() };
        slots[y] = Some(Placement {
            position: corner.clone(),
            super_radius: super_radius(rooted, y, &radius),
            radius,
            shift_axis: None,
            attached_corner: Some(signs.clone()),
            attached_edge_axis: None,
        });
    }
    if normal.is_empty() {
        return Ok(());
    }

    let (q_signs, edge_axis, shift_axis) = match rooted.kind(u) {
        ChildKind::PseudoLeaf => (available[corner_kids.len()].0.clone(), 1, 2),
        ChildKind::Normal => {
            let s1 = own
                .attached_corner
                .as_ref()
                .ok_or_else(|| violation("normal child without an attachment corner".into()))?;
            let l = own
                .shift_axis
                .ok_or_else(|| violation("normal child without a shift axis".into()))?;
            // Antipode of the parent's attachment corner: one of the two
            // corners of B(u) inside the parent's ball.
            let q_signs = s1.negated();
            if !contains_open(&parent_ball, &ball.corner(&q_signs))? {
                return Err(violation("antipodal corner is outside the parent ball".into()));
            }
            let j = (1..=dimension).find(|&j| j != l).expect("dimension >= 2");
            (q_signs, l, j)
        }
        kind => return Err(violation(format!("unexpected vertex kind {kind:?} with children"))),
    };

    let q = ball.corner(&q_signs);
    let half = &r / &Rational::from(2);
    let nudge = &r / &Rational::from(16 * (t_count + 1));
    for (i, &child) in normal.iter().enumerate() {
        let along = &half * &(Rational::one() + Rational::new(i as i64 + 1, t_count + 1));
        // The edge A_l(q) runs from q towards the opposite face on axis l.
        let on_edge = shift(&q, edge_axis, -q_signs.at(edge_axis), &along);
        let position = shift(&on_edge, shift_axis, q_signs.at(shift_axis), &nudge);
        slots[child] = Some(Placement {
            position,
            super_radius: super_radius(rooted, child, &shrunk),
            radius: shrunk.clone(),
            shift_axis: Some(shift_axis),
            attached_corner: Some(q_signs.clone()),
            attached_edge_axis: Some(edge_axis),
        });
    }
    Ok(())
}

/// The star `K(1, m)` with its centre at the origin and the `m` leaves on
/// distinct corners of the unit ball, in `max(1, ceil(log2 m))` dimensions.
pub fn embed_star(m: usize) -> Result<Representation> {
    let tree = gen_star(m)?;
    let dimension = ceil_log2(m as u64).max(1);
    let one = Rational::one();
    let center = OpenBox::new(Point::origin(dimension), one.clone())?;
    let mut placements = vec![Placement {
        position: Point::origin(dimension),
        radius: one.clone(),
        super_radius: &one + &one,
        shift_axis: None,
        attached_corner: None,
        attached_edge_axis: None,
    }];
    for (signs, corner) in corners(&center).into_iter().take(m) {
        placements.push(Placement {
            position: corner,
            radius: one.clone(),
            super_radius: one.clone(),
            shift_axis: None,
            attached_corner: Some(signs),
            attached_edge_axis: None,
        });
    }
    Ok(Representation {
        dimension,
        placements,
        tree,
        rooted: None,
        method: Method::StarCorners,
    })
}
