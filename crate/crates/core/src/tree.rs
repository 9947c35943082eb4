//! Trees, leaf-degree statistics and the special rooted tree used by the
//! embedding algorithm.
//!
//! Vertices are dense indices `0..n`. The original ids from an edge-list file
//! are kept in a label table so that everything written back out uses the
//! caller's ids.

use std::collections::{BTreeMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected tree on `n >= 2` vertices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    labels: Vec<u64>,
}

impl Tree {
    /// Builds a tree over vertices `0..n` with identity labels.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        Tree::with_labels((0..n as u64).collect(), edges)
    }

    /// Builds a tree whose vertex `i` carries the external id `labels[i]`.
    pub fn with_labels(labels: Vec<u64>, edges: &[(usize, usize)]) -> Result<Tree> {
        let n = labels.len();
        if n < 2 {
            return Err(Error::NotATree(format!("need at least 2 vertices, got {n}")));
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::NotATree(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {}", labels[u])));
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        if let Some(w) = normalized.windows(2).find(|w| w[0] == w[1]) {
            let (u, v) = w[0];
            return Err(Error::NotATree(format!(
                "duplicate edge {} {}",
                labels[u], labels[v]
            )));
        }
        if normalized.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges on {n} vertices (a tree has {})",
                normalized.len(),
                n - 1
            )));
        }
        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &v in &adjacency[u] {
                if !seen[v] {
                    seen[v] = true;
                    reached += 1;
                    stack.push(v);
                }
            }
        }
        if reached != n {
            return Err(Error::NotATree("graph is disconnected or has a cycle".into()));
        }
        Ok(Tree {
            edges: normalized,
            adjacency,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.adjacency[v].len() == 1
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn label(&self, v: usize) -> u64 {
        self.labels[v]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    /// Dense index of an external id.
    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.labels.iter().position(|&l| l == label)
    }

    /// Edge pairs in external ids, each ordered and the list ascending.
    pub fn labeled_edges(&self) -> Vec<(u64, u64)> {
        let mut out: Vec<(u64, u64)> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (self.labels[u], self.labels[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// Renders the tree in edge-list form: one `"u v"` per line, ascending.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for (u, v) in self.labeled_edges() {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

/// Parses whitespace-separated integer pairs, one edge per line. `#` starts a
/// comment. Ids are remapped densely in ascending order of the original id.
pub fn parse_edge_list(text: &str) -> Result<Tree> {
    let mut raw = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = line.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.len() != 2 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected two vertex ids, found {}", tokens.len()),
            });
        }
        let mut ids = [0u64; 2];
        for (slot, tok) in ids.iter_mut().zip(&tokens) {
            *slot = tok.parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("{tok:?} is not a non-negative integer"),
            })?;
        }
        raw.push((ids[0], ids[1]));
    }
    let mut index: BTreeMap<u64, usize> = BTreeMap::new();
    for &(a, b) in &raw {
        index.insert(a, 0);
        index.insert(b, 0);
    }
    let labels: Vec<u64> = index.keys().copied().collect();
    for (i, slot) in index.values_mut().enumerate() {
        *slot = i;
    }
    let edges: Vec<(usize, usize)> = raw.iter().map(|(a, b)| (index[a], index[b])).collect();
    Tree::with_labels(labels, &edges)
}

/// Leaf-degree parameters of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeafStats {
    /// Maximum number of leaf neighbours over all vertices.
    pub alpha: usize,
    /// Vertices attaining `alpha`, ascending.
    pub argmax: Vec<usize>,
    /// `alpha` when at least two vertices attain it, `alpha - 1` otherwise.
    pub beta: usize,
}

pub fn leaf_degree(t: &Tree, v: usize) -> usize {
    t.neighbors(v).iter().filter(|&&w| t.is_leaf(w)).count()
}

pub fn leaf_stats(t: &Tree) -> LeafStats {
    let degrees: Vec<usize> = (0..t.len()).map(|v| leaf_degree(t, v)).collect();
    let alpha = degrees.iter().copied().max().unwrap_or(0);
    let argmax: Vec<usize> = (0..t.len()).filter(|&v| degrees[v] == alpha).collect();
    let beta = if argmax.len() >= 2 { alpha } else { alpha - 1 };
    LeafStats { alpha, argmax, beta }
}

/// Role of a vertex with respect to its parent in the rooted tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ChildKind {
    Root,
    /// No children in the rooted tree.
    Leaf,
    /// The designated child of a parent that has no leaf children.
    PseudoLeaf,
    /// Any other child.
    Normal,
}

/// The tree rooted at a leaf hanging off a vertex of maximum leaf-degree,
/// with every child classified as leaf, pseudo-leaf or normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    root: usize,
    pivot: usize,
    parent: Vec<Option<usize>>,
    children: Vec<Vec<usize>>,
    kind: Vec<ChildKind>,
    normal: Vec<Vec<usize>>,
    leaf_children: Vec<Vec<usize>>,
    pseudo_leaf: Vec<Option<usize>>,
    order: Vec<usize>,
    depth: Vec<usize>,
}

impl RootedTree {
    pub fn root(&self) -> usize {
        self.root
    }

    /// The vertex of maximum leaf-degree the root hangs off.
    pub fn pivot(&self) -> usize {
        self.pivot
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    /// Children in ascending id order.
    pub fn children(&self, v: usize) -> &[usize] {
        &self.children[v]
    }

    pub fn kind(&self, v: usize) -> ChildKind {
        self.kind[v]
    }

    /// Normal children `A(v)`, ascending.
    pub fn normal_children(&self, v: usize) -> &[usize] {
        &self.normal[v]
    }

    /// Children that are leaves of the rooted tree, ascending.
    pub fn leaf_children(&self, v: usize) -> &[usize] {
        &self.leaf_children[v]
    }

    pub fn pseudo_leaf(&self, v: usize) -> Option<usize> {
        self.pseudo_leaf[v]
    }

    /// Children that are not normal: the leaf children, or the pseudo-leaf.
    pub fn corner_children(&self, v: usize) -> Vec<usize> {
        match self.pseudo_leaf[v] {
            Some(y) => vec![y],
            None => self.leaf_children[v].clone(),
        }
    }

    pub fn is_leaf(&self, v: usize) -> bool {
        self.children[v].is_empty()
    }

    /// Vertices in breadth-first order from the root.
    pub fn bfs_order(&self) -> &[usize] {
        &self.order
    }

    /// Number of edges between the root and `v`.
    pub fn depth(&self, v: usize) -> usize {
        self.depth[v]
    }
}

pub fn build_special_rooted_tree(t: &Tree) -> RootedTree {
    let n = t.len();
    let stats = leaf_stats(t);
    let (pivot, root) = if n == 2 {
        (1, 0)
    } else {
        let pivot = stats.argmax[0];
        let root = *t
            .neighbors(pivot)
            .iter()
            .find(|&&w| t.is_leaf(w))
            .expect("vertex of maximum leaf-degree has a leaf neighbour");
        (pivot, root)
    };

    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    let mut depth = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut visited = vec![false; n];
    let mut queue = VecDeque::from([root]);
    visited[root] = true;
    while let Some(u) = queue.pop_front() {
        order.push(u);
        for &w in t.neighbors(u) {
            if !visited[w] {
                visited[w] = true;
                parent[w] = Some(u);
                depth[w] = depth[u] + 1;
                children[u].push(w);
                queue.push_back(w);
            }
        }
    }

    let mut kind = vec![ChildKind::Normal; n];
    let mut normal = vec![Vec::new(); n];
    let mut leaf_children = vec![Vec::new(); n];
    let mut pseudo_leaf = vec![None; n];
    kind[root] = ChildKind::Root;
    for u in 0..n {
        if children[u].is_empty() {
            continue;
        }
        let leaves: Vec<usize> = children[u]
            .iter()
            .copied()
            .filter(|&c| children[c].is_empty())
            .collect();
        if leaves.is_empty() {
            let y = children[u][0];
            pseudo_leaf[u] = Some(y);
            kind[y] = ChildKind::PseudoLeaf;
            normal[u] = children[u][1..].to_vec();
        } else {
            for &c in &leaves {
                kind[c] = ChildKind::Leaf;
            }
            normal[u] = children[u]
                .iter()
                .copied()
                .filter(|c| !leaves.contains(c))
                .collect();
            leaf_children[u] = leaves;
        }
    }

    RootedTree {
        root,
        pivot,
        parent,
        children,
        kind,
        normal,
        leaf_children,
        pseudo_leaf,
        order,
        depth,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_single_edge() {
        let t = parse_edge_list("0 1").unwrap();
        assert_eq!(t.len(), 2);
        assert_eq!(t.edges(), &[(0, 1)]);
    }

    #[test]
    fn parse_star() {
        let t = parse_edge_list("0 1\n0 2\n0 3\n0 4\n").unwrap();
        assert_eq!(t.len(), 5);
        assert_eq!(t.degree(0), 4);
        assert!((1..5).all(|v| t.is_leaf(v)));
    }

    #[test]
    fn parse_rejects_cycle() {
        assert!(matches!(
            parse_edge_list("0 1\n1 2\n2 0"),
            Err(Error::NotATree(_))
        ));
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(matches!(parse_edge_list("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_edge_list("0 1\n0 -2"), Err(Error::Parse { line: 2, .. })));
        assert!(matches!(parse_edge_list("a b"), Err(Error::Parse { .. })));
        assert!(matches!(parse_edge_list(""), Err(Error::NotATree(_))));
        assert!(matches!(parse_edge_list("3 3"), Err(Error::NotATree(_))));
        assert!(matches!(parse_edge_list("0 1\n1 0"), Err(Error::NotATree(_))));
        assert!(matches!(parse_edge_list("0 1\n2 3"), Err(Error::NotATree(_))));
    }

    #[test]
    fn parse_comments_and_sparse_ids() {
        let t = parse_edge_list("# a tree\n10 20 # first\n\n20 35\n").unwrap();
        assert_eq!(t.labels(), &[10, 20, 35]);
        assert_eq!(t.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(t.to_edge_list(), "10 20\n20 35\n");
        assert_eq!(t.index_of(35), Some(2));
    }

    #[test]
    fn stats_star() {
        let t = parse_edge_list("0 1\n0 2\n0 3\n0 4").unwrap();
        let s = leaf_stats(&t);
        assert_eq!((s.alpha, s.argmax.clone(), s.beta), (4, vec![0], 3));
    }

    #[test]
    fn stats_path4() {
        let t = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let s = leaf_stats(&t);
        assert_eq!((s.alpha, s.argmax.clone(), s.beta), (1, vec![1, 2], 1));
    }

    #[test]
    fn stats_single_edge() {
        let t = Tree::from_edges(2, &[(0, 1)]).unwrap();
        let s = leaf_stats(&t);
        assert_eq!((s.alpha, s.argmax.clone(), s.beta), (1, vec![0, 1], 1));
    }

    #[test]
    fn rooting_single_edge() {
        let t = Tree::from_edges(2, &[(0, 1)]).unwrap();
        let r = build_special_rooted_tree(&t);
        assert_eq!(r.root(), 0);
        assert_eq!(r.children(0), &[1]);
        assert_eq!(r.kind(1), ChildKind::Leaf);
    }

    #[test]
    fn rooting_star() {
        let t = parse_edge_list("0 1\n0 2\n0 3\n0 4").unwrap();
        let r = build_special_rooted_tree(&t);
        assert_eq!(r.pivot(), 0);
        assert_eq!(r.root(), 1);
        assert_eq!(r.children(1), &[0]);
        assert_eq!(r.children(0), &[2, 3, 4]);
        assert_eq!(r.leaf_children(0), &[2, 3, 4]);
        assert!(r.normal_children(0).is_empty());
        assert_eq!(r.kind(0), ChildKind::PseudoLeaf);
    }

    #[test]
    fn rooting_path() {
        let t = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let r = build_special_rooted_tree(&t);
        assert_eq!(r.pivot(), 1);
        assert_eq!(r.root(), 0);
        assert_eq!(r.children(1), &[2]);
        assert!(r.leaf_children(1).is_empty());
        assert_eq!(r.pseudo_leaf(1), Some(2));
        assert_eq!(r.kind(2), ChildKind::PseudoLeaf);
        assert_eq!(r.children(2), &[3]);
        assert_eq!(r.kind(3), ChildKind::Leaf);
        assert_eq!(r.bfs_order(), &[0, 1, 2, 3]);
        assert_eq!(r.depth(3), 3);
    }

    #[test]
    fn mixed_children_classification() {
        // 0-1, 1 has leaf 2 and a subtree 3-4; 1 also has leaf 5 so the root hangs off 1.
        let t = Tree::from_edges(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (1, 5)]).unwrap();
        let r = build_special_rooted_tree(&t);
        assert_eq!(r.pivot(), 1);
        assert_eq!(r.root(), 0);
        assert_eq!(r.leaf_children(1), &[2, 5]);
        assert_eq!(r.normal_children(1), &[3]);
        assert_eq!(r.kind(3), ChildKind::Normal);
        assert_eq!(r.corner_children(1), vec![2, 5]);
    }
}
