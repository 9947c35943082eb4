//! Exact pairwise computations on a common-denominator integer grid.
//!
//! Every coordinate and radius of a configuration is multiplied by the least
//! common multiple of all denominators, so pairwise distances and sums become
//! plain big-integer operations with no gcd reductions in the inner loops.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::geometry::Point;
use crate::rational::Rational;

#[derive(Debug, Clone)]
pub struct Lattice {
    scale: BigInt,
    coords: Vec<Vec<BigInt>>,
}

impl Lattice {
    /// Builds a grid fine enough for `points` and for every value in `extra`.
    /// All points must share one dimension.
    pub fn new<'a>(points: &[&'a Point], extra: impl IntoIterator<Item = &'a Rational>) -> Lattice {
        let mut denoms: HashSet<&BigInt> = HashSet::new();
        for p in points {
            for c in p.coords() {
                denoms.insert(c.denom());
            }
        }
        for r in extra {
            denoms.insert(r.denom());
        }
        let mut scale = BigInt::one();
        for d in denoms {
            if !d.is_one() {
                scale = scale.lcm(d);
            }
        }
        let coords = points
            .iter()
            .map(|p| p.coords().iter().map(|c| scaled(c, &scale)).collect())
            .collect();
        Lattice { scale, coords }
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// `value * scale` as an integer. The value's denominator must divide
    /// the scale.
    pub fn lift(&self, value: &Rational) -> BigInt {
        scaled(value, &self.scale)
    }

    /// Back from the grid to an exact rational.
    pub fn lower(&self, value: &BigInt) -> Rational {
        Rational::new(value.clone(), self.scale.clone())
    }

    pub fn coords(&self, i: usize) -> &[BigInt] {
        &self.coords[i]
    }

    /// Scaled Chebyshev distance between points `i` and `j`.
    pub fn dist(&self, i: usize, j: usize) -> BigInt {
        let mut best = BigInt::zero();
        for (a, b) in self.coords[i].iter().zip(&self.coords[j]) {
            let diff = if a >= b { a - b } else { b - a };
            if diff > best {
                best = diff;
            }
        }
        best
    }
}

fn scaled(value: &Rational, scale: &BigInt) -> BigInt {
    debug_assert!((scale % value.denom()).is_zero());
    value.numer() * (scale / value.denom())
}
