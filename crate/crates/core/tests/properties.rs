use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use sigdim::generate::{from_prufer, gen_random_tree};
use sigdim::geometry::{
    box_intersection_volume, boxes_intersect_open, contains_open, corners, linf_distance,
};
use sigdim::rational::q;
use sigdim::sig::nearest_neighbor_radii;
use sigdim::tree::{leaf_degree, ChildKind};
use sigdim::{
    audit, build_special_rooted_tree, embed, is_sig_representation, leaf_stats, parse_edge_list,
    sig_graph, target_dimension, OpenBox, Point, PointSet, Rational, RepresentationFile, Tree,
};

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn positive() -> impl Strategy<Value = Rational> {
    (1i64..60, 1i64..12).prop_map(|(n, d)| q(n, d))
}

fn point(d: usize) -> impl Strategy<Value = Point> {
    prop::collection::vec(rational(), d).prop_map(Point::new)
}

fn boxes() -> impl Strategy<Value = (OpenBox, OpenBox)> {
    (1usize..5).prop_flat_map(|d| {
        (point(d), positive(), point(d), positive()).prop_map(|(p, r, c, s)| {
            (OpenBox::new(p, r).unwrap(), OpenBox::new(c, s).unwrap())
        })
    })
}

fn point_set() -> impl Strategy<Value = PointSet> {
    (1usize..4, 2usize..14)
        .prop_flat_map(|(d, n)| (Just(d), prop::collection::btree_set(prop::collection::vec(-40i64..40, d), n)))
        .prop_map(|(d, pts)| {
            let points = pts
                .into_iter()
                .enumerate()
                .map(|(i, c)| (i as u64, Point::new(c.iter().map(|&x| q(x, 3)).collect())))
                .collect();
            PointSet::new(d, points).unwrap()
        })
}

fn tree(max_n: usize) -> impl Strategy<Value = Tree> {
    (3usize..=max_n, any::<u64>()).prop_map(|(n, seed)| gen_random_tree(n, seed).unwrap())
}

/// Open-interval overlap length on one axis, straight from the endpoints.
fn overlap(c1: &BigRational, r1: &BigRational, c2: &BigRational, r2: &BigRational) -> BigRational {
    let lo = (c1 - r1).max(c2 - r2);
    let hi = (c1 + r1).min(c2 + r2);
    if hi > lo {
        hi - lo
    } else {
        BigRational::from_integer(BigInt::from(0))
    }
}

fn volume_oracle(a: &OpenBox, b: &OpenBox) -> BigRational {
    a.center()
        .coords()
        .iter()
        .zip(b.center().coords())
        .map(|(x, y)| overlap(x.as_big(), a.radius().as_big(), y.as_big(), b.radius().as_big()))
        .fold(BigRational::from_integer(BigInt::from(1)), |acc, v| acc * v)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn linf_is_a_metric(d in 1usize..5, seed in any::<u64>()) {
        let pts: Vec<Point> = (0..3)
            .map(|i| Point::new((0..d).map(|k| q(((seed >> (i * 7 + k)) % 41) as i64 - 20, 1 + (k as i64 % 3))).collect()))
            .collect();
        let (a, b, c) = (&pts[0], &pts[1], &pts[2]);
        let ab = linf_distance(a, b).unwrap();
        prop_assert_eq!(&ab, &linf_distance(b, a).unwrap());
        prop_assert!(linf_distance(a, a).unwrap().is_zero());
        prop_assert_eq!(ab.is_zero(), a == b);
        let ac = linf_distance(a, c).unwrap();
        let cb = linf_distance(c, b).unwrap();
        prop_assert!(ab <= &ac + &cb);
    }

    #[test]
    fn corners_sit_on_the_boundary((b, _) in boxes()) {
        let cs = corners(&b);
        prop_assert_eq!(cs.len(), 1 << b.dim());
        let distinct: BTreeSet<_> = cs.iter().map(|(_, p)| p.clone()).collect();
        prop_assert_eq!(distinct.len(), cs.len());
        for (s, p) in &cs {
            prop_assert_eq!(&linf_distance(p, b.center()).unwrap(), b.radius());
            prop_assert!(!contains_open(&b, p).unwrap());
            prop_assert_eq!(&b.corner_signs(p).unwrap(), s);
        }
    }

    #[test]
    fn intersection_matches_volume((a, b) in boxes()) {
        let vol = box_intersection_volume(&a, &b).unwrap();
        prop_assert_eq!(vol.as_big(), &volume_oracle(&a, &b));
        prop_assert_eq!(&vol, &box_intersection_volume(&b, &a).unwrap());
        prop_assert_eq!(boxes_intersect_open(&a, &b).unwrap(), vol.is_positive());
        let d = linf_distance(a.center(), b.center()).unwrap();
        prop_assert_eq!(boxes_intersect_open(&a, &b).unwrap(), d < a.radius() + b.radius());
    }

    #[test]
    fn self_volume_is_full((a, _) in boxes()) {
        let side = a.radius() * &q(2, 1);
        prop_assert_eq!(box_intersection_volume(&a, &a).unwrap(), side.pow(a.dim() as u32));
    }

    #[test]
    fn prufer_degrees(n in 2usize..40, seed in any::<u64>()) {
        let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|i| ((seed >> (i % 60)) as usize ^ (i * 31)) % n).collect();
        let t = from_prufer(n, &seq).unwrap();
        for v in 0..n {
            prop_assert_eq!(t.degree(v), 1 + seq.iter().filter(|&&s| s == v).count());
        }
    }

    #[test]
    fn leaf_stats_by_brute_force(t in tree(120)) {
        let n = t.len();
        let deg: Vec<usize> = (0..n).map(|v| t.edges().iter().filter(|&&(a, b)| a == v || b == v).count()).collect();
        let leafy: Vec<usize> = (0..n)
            .map(|v| t.edges().iter().filter(|&&(a, b)| (a == v && deg[b] == 1) || (b == v && deg[a] == 1)).count())
            .collect();
        let alpha = *leafy.iter().max().unwrap();
        let argmax: Vec<usize> = (0..n).filter(|&v| leafy[v] == alpha).collect();
        let s = leaf_stats(&t);
        prop_assert_eq!(s.alpha, alpha);
        prop_assert_eq!(&s.argmax, &argmax);
        prop_assert_eq!(s.beta, if argmax.len() >= 2 { alpha } else { alpha - 1 });
        prop_assert!(s.beta >= 1 || (alpha == 1 && argmax.len() == 1));
    }

    #[test]
    fn rooted_tree_shape(t in tree(120)) {
        let r = build_special_rooted_tree(&t);
        let s = leaf_stats(&t);
        prop_assert_eq!(r.bfs_order().len(), t.len());
        prop_assert_eq!(r.bfs_order()[0], r.root());
        prop_assert!(t.is_leaf(r.root()));
        prop_assert_eq!(r.children(r.root()), &[r.pivot()][..]);
        prop_assert_eq!(leaf_degree(&t, r.pivot()), s.alpha);
        for v in 0..t.len() {
            for &c in r.children(v) {
                prop_assert_eq!(r.parent(c), Some(v));
                prop_assert!(t.has_edge(v, c));
                prop_assert_eq!(r.depth(c), r.depth(v) + 1);
            }
            let leaves = r.leaf_children(v);
            prop_assert!(leaves.windows(2).all(|w| w[0] < w[1]));
            match r.pseudo_leaf(v) {
                Some(p) => {
                    prop_assert!(leaves.is_empty());
                    prop_assert_eq!(r.kind(p), ChildKind::PseudoLeaf);
                    prop_assert_eq!(Some(&p), r.children(v).iter().min());
                }
                None => prop_assert!(r.is_leaf(v) || !leaves.is_empty() || v == r.root()),
            }
            prop_assert!(r.normal_children(v).windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn sig_has_no_isolated_vertices(ps in point_set()) {
        let g = sig_graph(&ps).unwrap();
        let touched: BTreeSet<u64> = g.edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        prop_assert_eq!(touched.len(), ps.len());
    }

    #[test]
    fn sig_matches_pairwise_definition(ps in point_set()) {
        let pts = ps.points();
        let radii: Vec<Rational> = pts
            .iter()
            .map(|(i, p)| {
                pts.iter()
                    .filter(|(j, _)| j != i)
                    .map(|(_, other)| linf_distance(p, other).unwrap())
                    .min()
                    .unwrap()
            })
            .collect();
        let nn = nearest_neighbor_radii(&ps).unwrap();
        for ((id, _), r) in pts.iter().zip(&radii) {
            prop_assert_eq!(&nn[id], r);
        }
        let mut expected = Vec::new();
        for a in 0..pts.len() {
            for b in a + 1..pts.len() {
                let ba = OpenBox::new(pts[a].1.clone(), radii[a].clone()).unwrap();
                let bb = OpenBox::new(pts[b].1.clone(), radii[b].clone()).unwrap();
                if boxes_intersect_open(&ba, &bb).unwrap() {
                    expected.push((pts[a].0.min(pts[b].0), pts[a].0.max(pts[b].0)));
                }
            }
        }
        expected.sort_unstable();
        prop_assert_eq!(sig_graph(&ps).unwrap().edges, expected);
    }

    #[test]
    fn sig_invariant_under_similarity(ps in point_set(), num in 1i64..30, den in 1i64..30, shift in -20i64..20) {
        let offset = Point::splat(ps.dimension(), q(shift, 7));
        let moved = ps.transformed(&q(num, den), &offset);
        prop_assert_eq!(sig_graph(&ps).unwrap(), sig_graph(&moved).unwrap());
    }

    #[test]
    fn point_set_json_round_trip(ps in point_set()) {
        prop_assert_eq!(PointSet::from_json(&ps.to_json(true)).unwrap(), ps.clone());
        prop_assert_eq!(PointSet::from_json(&ps.to_json(false)).unwrap(), ps);
    }

    #[test]
    fn rational_text_round_trip(x in rational()) {
        prop_assert_eq!(x.to_string().parse::<Rational>().unwrap(), x);
    }

    #[test]
    fn edge_list_round_trip(t in tree(60), offset in 0u64..1000, stride in 1u64..9) {
        let relabelled: String = t
            .labeled_edges()
            .iter()
            .map(|&(a, b)| format!("{} {}\n", offset + stride * b, offset + stride * a))
            .collect();
        let back = parse_edge_list(&relabelled).unwrap();
        prop_assert_eq!(back.len(), t.len());
        prop_assert_eq!(leaf_stats(&back), leaf_stats(&t));
        let again = parse_edge_list(&back.to_edge_list()).unwrap();
        prop_assert_eq!(again.labeled_edges(), back.labeled_edges());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn embedding_realises_the_tree(t in tree(90)) {
        let rep = embed(&t).unwrap();
        prop_assert_eq!(rep.dimension, target_dimension(leaf_stats(&t).beta).unwrap());
        let check = is_sig_representation(&t, &rep.to_file());
        prop_assert!(check.ok, "{:?}", check);
        let report = audit(&rep);
        prop_assert!(report.all_pass, "{}", report.to_table());
    }

    #[test]
    fn representation_json_round_trip(t in tree(60)) {
        let file = embed(&t).unwrap().to_file();
        for pretty in [true, false] {
            let text = file.to_json(pretty);
            let back = RepresentationFile::from_json(&text).unwrap();
            prop_assert_eq!(&back, &file);
            prop_assert_eq!(back.to_json(pretty), text);
        }
    }
}
