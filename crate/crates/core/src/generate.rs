//! Tree generators: stars, paths, caterpillars, the H family and uniform
//! random labelled trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::tree::Tree;

/// `K(1, m)`: vertex 0 is the centre, `1..=m` are the leaves.
pub fn gen_star(m: usize) -> Result<Tree> {
    if m < 1 {
        return Err(Error::InvalidParam("star needs at least one leaf".into()));
    }
    let edges: Vec<(usize, usize)> = (1..=m).map(|v| (0, v)).collect();
    Tree::from_edges(m + 1, &edges)
}

/// Path `0 - 1 - ... - (n-1)`.
pub fn gen_path(n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("path needs n >= 2, got {n}")));
    }
    let edges: Vec<(usize, usize)> = (1..n).map(|v| (v - 1, v)).collect();
    Tree::from_edges(n, &edges)
}

/// Caterpillar with spine `0..legs.len()`; spine vertex `i` gets `legs[i]`
/// pendant leaves.
pub fn gen_caterpillar(legs: &[usize]) -> Result<Tree> {
    let spine = legs.len();
    let n = spine + legs.iter().sum::<usize>();
    if spine == 0 || n < 2 {
        return Err(Error::InvalidParam("caterpillar needs at least 2 vertices".into()));
    }
    let mut edges: Vec<(usize, usize)> = (1..spine).map(|v| (v - 1, v)).collect();
    let mut next = spine;
    for (i, &k) in legs.iter().enumerate() {
        for _ in 0..k {
            edges.push((i, next));
            next += 1;
        }
    }
    Tree::from_edges(n, &edges)
}

/// Fixed vertex ids of the H tree: `z` joins `x` and `y`; `x` and `y` each
/// carry `beta` leaves and one non-leaf neighbour (`x_bar`, `y_bar`), and
/// each of those carries a single leaf.
pub mod h_ids {
    pub const Z: usize = 0;
    pub const X: usize = 1;
    pub const Y: usize = 2;
    pub const X_BAR: usize = 3;
    pub const Y_BAR: usize = 4;
    pub const X_BAR_LEAF: usize = 5;
    pub const Y_BAR_LEAF: usize = 6;
    /// First of the `beta` leaves of `x`; the leaves of `y` follow them.
    pub const FIRST_LEAF: usize = 7;
}

/// The tree H on `2 * beta + 7` vertices whose leaf-degree maximum `beta` is
/// attained at `x` and `y`.
///
/// The exact drawing of this family is not available, so the topology is
/// reconstructed from its stated properties: `{x_bar, z, x_1, ..., x_beta}` is
/// an independent set, `x` is the only neighbour of each `x_i`, and `z` has
/// exactly the two neighbours `x` and `y`.
pub fn gen_h_graph(beta: usize) -> Result<Tree> {
    use h_ids::*;
    if beta < 1 {
        return Err(Error::InvalidParam("H graph needs beta >= 1".into()));
    }
    let n = 2 * beta + 7;
    let mut edges = vec![
        (Z, X),
        (Z, Y),
        (X, X_BAR),
        (Y, Y_BAR),
        (X_BAR, X_BAR_LEAF),
        (Y_BAR, Y_BAR_LEAF),
    ];
    for i in 0..beta {
        edges.push((X, FIRST_LEAF + i));
        edges.push((Y, FIRST_LEAF + beta + i));
    }
    Tree::from_edges(n, &edges)
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into its tree.
pub fn from_prufer(n: usize, seq: &[usize]) -> Result<Tree> {
    if n < 2 || seq.len() != n - 2 {
        return Err(Error::InvalidParam(format!(
            "Prüfer sequence for n = {n} must have length n - 2"
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&s| s >= n) {
        return Err(Error::InvalidParam(format!("Prüfer entry {bad} out of range")));
    }
    let mut degree = vec![1usize; n];
    for &s in seq {
        degree[s] += 1;
    }
    // Linear-time decoding: `ptr` scans for the smallest leaf, `leaf` follows
    // freshly created leaves that are smaller than `ptr`.
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = degree.iter().position(|&d| d == 1).unwrap();
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, n - 1));
    Tree::from_edges(n, &edges)
}

/// Uniform random labelled tree on `n` vertices, reproducible from `seed`.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Tree> {
    if n < 2 {
        return Err(Error::InvalidParam(format!("random tree needs n >= 2, got {n}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    from_prufer(n, &seq)
}

/// Shape families mixed into [`mixed_corpus`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusShape {
    Random,
    Path,
    Star,
    Caterpillar,
    H,
}

/// A deterministic mix of tree shapes with `3..=max_n` vertices: uniform
/// random trees, paths, stars with at most 64 leaves, caterpillars with random
/// leg counts and H graphs with `beta <= 15`.
pub fn mixed_corpus(count: usize, max_n: usize, seed: u64) -> Vec<(CorpusShape, Tree)> {
    assert!(max_n >= 3);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        let (shape, tree) = match i % 10 {
            0 => {
                let m = rng.gen_range(2..=64.min(max_n - 1));
                (CorpusShape::Star, gen_star(m))
            }
            1 => (CorpusShape::Path, gen_path(rng.gen_range(3..=max_n))),
            2 | 3 => {
                let spine = rng.gen_range(1..=(max_n / 4).max(1));
                let max_legs = rng.gen_range(0..=8usize);
                let mut legs: Vec<usize> = (0..spine).map(|_| rng.gen_range(0..=max_legs)).collect();
                let total: usize = spine + legs.iter().sum::<usize>();
                if total < 3 {
                    legs[0] += 3 - total;
                }
                while spine + legs.iter().sum::<usize>() > max_n {
                    let j = legs.iter().position(|&k| k > 0).unwrap();
                    legs[j] -= 1;
                }
                (CorpusShape::Caterpillar, gen_caterpillar(&legs))
            }
            4 => {
                let beta = rng.gen_range(1..=15usize.min((max_n - 7) / 2).max(1));
                (CorpusShape::H, gen_h_graph(beta))
            }
            _ => {
                let n = rng.gen_range(3..=max_n);
                (CorpusShape::Random, gen_random_tree(n, rng.gen()))
            }
        };
        out.push((shape, tree.expect("corpus generator produced an invalid tree")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::leaf_stats;

    #[test]
    fn star_sizes() {
        let k2 = gen_star(1).unwrap();
        assert_eq!(k2.len(), 2);
        assert_eq!(leaf_stats(&gen_star(4).unwrap()).beta, 3);
        for k in 1..8 {
            assert_eq!(leaf_stats(&gen_star(1 << k).unwrap()).beta, (1 << k) - 1);
        }
        assert!(gen_star(0).is_err());
    }

    #[test]
    fn h_graph_shape() {
        for beta in 1..=20 {
            let h = gen_h_graph(beta).unwrap();
            assert_eq!(h.len(), 2 * beta + 7);
            let s = leaf_stats(&h);
            assert_eq!(s.alpha, beta);
            assert_eq!(s.beta, beta);
            if beta >= 2 {
                assert_eq!(s.argmax, vec![h_ids::X, h_ids::Y]);
            } else {
                assert!(s.argmax.contains(&h_ids::X) && s.argmax.contains(&h_ids::Y));
            }
            // z has exactly the neighbours x and y; x_bar, z, x_i independent.
            assert_eq!(h.neighbors(h_ids::Z), &[h_ids::X, h_ids::Y]);
            let mut indep = vec![h_ids::X_BAR, h_ids::Z];
            indep.extend((0..beta).map(|i| h_ids::FIRST_LEAF + i));
            for &a in &indep {
                for &b in &indep {
                    assert!(!h.has_edge(a, b));
                }
            }
        }
        assert_eq!(gen_h_graph(3).unwrap().len(), 13);
        assert!(gen_h_graph(0).is_err());
    }

    #[test]
    fn prufer_known_sequence() {
        // The classic example: sequence [3, 3, 3, 4] on 6 vertices.
        let t = from_prufer(6, &[3, 3, 3, 4]).unwrap();
        assert_eq!(t.edges(), &[(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
    }

    #[test]
    fn random_tree_determinism() {
        let a = gen_random_tree(5, 42).unwrap();
        assert_eq!(a.len(), 5);
        assert_eq!(a, gen_random_tree(5, 42).unwrap());
        assert_eq!(gen_random_tree(2, 9).unwrap().edges(), &[(0, 1)]);
        assert!(gen_random_tree(1, 0).is_err());
        let b = gen_random_tree(200, 1).unwrap();
        let c = gen_random_tree(200, 2).unwrap();
        assert_ne!(b, c);
    }

    #[test]
    fn prufer_uniform_on_four_vertices() {
        // 16 labelled trees on 4 vertices; each of the 16 sequences maps to a
        // distinct tree.
        let mut seen = std::collections::BTreeSet::new();
        for a in 0..4 {
            for b in 0..4 {
                seen.insert(from_prufer(4, &[a, b]).unwrap().edges().to_vec());
            }
        }
        assert_eq!(seen.len(), 16);
    }

    #[test]
    fn caterpillar_and_corpus() {
        let c = gen_caterpillar(&[2, 0, 3]).unwrap();
        assert_eq!(c.len(), 8);
        assert!(gen_caterpillar(&[0]).is_err());
        let corpus = mixed_corpus(50, 60, 3);
        assert_eq!(corpus.len(), 50);
        assert!(corpus.iter().all(|(_, t)| (3..=60).contains(&t.len())));
    }
}
