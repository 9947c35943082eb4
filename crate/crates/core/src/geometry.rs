//! Exact L∞ geometry: points, open hypercube balls, corners, edges and the
//! shifting move.
//!
//! Axis arguments are 1-indexed (`1..=d`) throughout the public API; storage
//! is 0-indexed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// A point in `d`-dimensional space with exact rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Point {
        Point(coords)
    }

    pub fn origin(d: usize) -> Point {
        Point(vec![Rational::zero(); d])
    }

    /// The all-`value` point.
    pub fn splat(d: usize, value: Rational) -> Point {
        Point(vec![value; d])
    }

    pub fn from_ints(coords: &[i64]) -> Point {
        Point(coords.iter().map(|&c| Rational::from(c)).collect())
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    /// Coordinate on a 1-indexed axis.
    pub fn at(&self, axis: usize) -> &Rational {
        &self.0[axis - 1]
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

fn check_dims(a: &Point, b: &Point) -> Result<()> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(())
}

/// Chebyshev distance `max_i |p[i] - q[i]|`.
pub fn linf_distance(p: &Point, q: &Point) -> Result<Rational> {
    check_dims(p, q)?;
    Ok(p.0
        .iter()
        .zip(&q.0)
        .map(|(a, b)| (a - b).abs())
        .fold(Rational::zero(), Rational::max))
}

/// A vector of signs in `{-1, +1}^d`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SignVector(Vec<i8>);

impl SignVector {
    pub fn new(signs: Vec<i8>) -> Result<SignVector> {
        if signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(Error::InvalidParam("sign vector entries must be -1 or +1".into()));
        }
        Ok(SignVector(signs))
    }

    pub fn all_positive(d: usize) -> SignVector {
        SignVector(vec![1; d])
    }

    /// All `2^d` sign vectors in lexicographic order with `-1 < +1`.
    pub fn enumerate(d: usize) -> impl Iterator<Item = SignVector> {
        (0..1usize << d).map(move |mask| {
            SignVector(
                (0..d)
                    .map(|i| if mask >> (d - 1 - i) & 1 == 1 { 1 } else { -1 })
                    .collect(),
            )
        })
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.0
    }

    /// Sign on a 1-indexed axis.
    pub fn at(&self, axis: usize) -> i8 {
        self.0[axis - 1]
    }

    pub fn negated(&self) -> SignVector {
        SignVector(self.0.iter().map(|s| -s).collect())
    }

    /// Copy with the sign on a 1-indexed axis flipped.
    pub fn flipped(&self, axis: usize) -> SignVector {
        let mut out = self.clone();
        out.0[axis - 1] = -out.0[axis - 1];
        out
    }
}

impl fmt::Debug for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: String = self.0.iter().map(|&x| if x > 0 { '+' } else { '-' }).collect();
        write!(f, "[{s}]")
    }
}

/// The open L∞ ball `B(p, r)`, i.e. the open axis-aligned cube
/// `prod_i (p[i] - r, p[i] + r)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OpenBox {
    center: Point,
    radius: Rational,
}

impl OpenBox {
    pub fn new(center: Point, radius: Rational) -> Result<OpenBox> {
        if !radius.is_positive() {
            return Err(Error::InvalidParam(format!("radius must be positive, got {radius}")));
        }
        Ok(OpenBox { center, radius })
    }

    pub fn center(&self) -> &Point {
        &self.center
    }

    pub fn radius(&self) -> &Rational {
        &self.radius
    }

    pub fn dim(&self) -> usize {
        self.center.dim()
    }

    /// The corner `center + radius * signs`.
    pub fn corner(&self, signs: &SignVector) -> Point {
        Point(
            self.center
                .0
                .iter()
                .zip(signs.signs())
                .map(|(c, &s)| if s > 0 { c + &self.radius } else { c - &self.radius })
                .collect(),
        )
    }

    /// Sign vector of `q` if it is a corner of this box.
    pub fn corner_signs(&self, q: &Point) -> Result<SignVector> {
        check_dims(&self.center, q)?;
        let mut signs = Vec::with_capacity(q.dim());
        for (c, x) in self.center.0.iter().zip(&q.0) {
            let off = x - c;
            if off == self.radius {
                signs.push(1);
            } else if -&off == self.radius {
                signs.push(-1);
            } else {
                return Err(Error::NotACorner);
            }
        }
        Ok(SignVector(signs))
    }
}

/// All `2^d` corners, paired with their sign vectors, in lexicographic sign
/// order.
pub fn corners(b: &OpenBox) -> Vec<(SignVector, Point)> {
    SignVector::enumerate(b.dim())
        .map(|s| {
            let p = b.corner(&s);
            (s, p)
        })
        .collect()
}

/// The corner joined to corner `q` by the box edge along `axis`.
pub fn edge_other_endpoint(b: &OpenBox, q: &Point, axis: usize) -> Result<Point> {
    let signs = b.corner_signs(q)?;
    if axis == 0 || axis > b.dim() {
        return Err(Error::InvalidParam(format!("axis {axis} outside 1..={}", b.dim())));
    }
    Ok(b.corner(&signs.flipped(axis)))
}

/// `z + sign * delta * e_axis`.
pub fn shift(z: &Point, axis: usize, sign: i8, delta: &Rational) -> Point {
    assert!(axis >= 1 && axis <= z.dim(), "axis {axis} outside 1..={}", z.dim());
    assert!(sign == 1 || sign == -1);
    let mut out = z.clone();
    let c = &mut out.0[axis - 1];
    *c = if sign > 0 { &*c + delta } else { &*c - delta };
    out
}

/// Whether `x` lies in the open box (boundary excluded).
pub fn contains_open(b: &OpenBox, x: &Point) -> Result<bool> {
    Ok(linf_distance(&b.center, x)? < b.radius)
}

/// Whether two open boxes share a point.
pub fn boxes_intersect_open(a: &OpenBox, b: &OpenBox) -> Result<bool> {
    Ok(linf_distance(&a.center, &b.center)? < &a.radius + &b.radius)
}

/// Exact volume of the intersection of two boxes.
pub fn box_intersection_volume(a: &OpenBox, b: &OpenBox) -> Result<Rational> {
    check_dims(&a.center, &b.center)?;
    let mut volume = Rational::one();
    for (ca, cb) in a.center.0.iter().zip(&b.center.0) {
        let hi = (ca + &a.radius).min(cb + &b.radius);
        let lo = (ca - &a.radius).max(cb - &b.radius);
        let overlap = hi - lo;
        if !overlap.is_positive() {
            return Ok(Rational::zero());
        }
        volume = volume * overlap;
    }
    Ok(volume)
}
