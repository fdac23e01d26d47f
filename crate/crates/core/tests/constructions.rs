use std::collections::{BTreeMap, BTreeSet};

use cayley_census::f2linalg::F2Vector;
use cayley_census::graphs::{
    automorphism_group, canonical_certificate, cayley_graph, coset_graph, families, is_grr,
    is_vertex_transitive, s_arc_transitivity, transitive_subgroup_gens, voltage_cover, Graph,
};
use cayley_census::permgroup::{FiniteGroup, Subgroup, TABLE_CAP};
use cayley_census::presentations::{build_quotient, DEFAULT_COSET_CAP};

#[test]
fn cayley_graph_examples() {
    let c2 = FiniteGroup::cyclic(2).unwrap();
    assert_eq!(cayley_graph(&c2, &[1]).unwrap(), families::complete(2));

    let v4 = FiniteGroup::elementary_abelian(2).unwrap();
    let k4 = cayley_graph(&v4, &[1, 2, 3]).unwrap();
    // any two distinct elements differ by an involution
    for u in 0..4 {
        for v in 0..4 {
            assert_eq!(k4.has_edge(u, v), u != v);
        }
    }

    let q = build_quotient(3, 2, DEFAULT_COSET_CAP).unwrap();
    let g = cayley_graph(&q.group, &q.xgens).unwrap();
    assert_eq!(g.order(), 64);
    assert_eq!(g.valency(), Some(3));
    assert!(g.is_connected());
    assert!(is_vertex_transitive(&g));
}

/// Right cosets `A x` as sorted element lists, by direct expansion.
fn right_cosets(g: &FiniteGroup, a: &[u32]) -> Vec<Vec<u32>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for x in 0..g.order() as u32 {
        let mut coset: Vec<u32> = a.iter().map(|&h| g.mul(h, x)).collect();
        coset.sort_unstable();
        if seen.insert(coset.clone()) {
            out.push(coset);
        }
    }
    out
}

#[test]
fn coset_graph_of_sym3_matches_direct_expansion() {
    let s3 = FiniteGroup::dihedral(3).unwrap();
    // elements 1, 3, 5 are the reflections r^i s
    let a = Subgroup::generated(&s3, &[1]);
    let b = 3;
    let g = coset_graph(&s3, &a, b).unwrap();
    let cosets = right_cosets(&s3, a.elements());
    assert_eq!(g.order(), cosets.len());
    // edges {Ax, Abx} for every x
    let mut expected = BTreeSet::new();
    for x in 0..6u32 {
        let from = cosets.iter().position(|c| c.contains(&x)).unwrap();
        let to = cosets.iter().position(|c| c.contains(&s3.mul(b, x))).unwrap();
        expected.insert((from.min(to), from.max(to)));
    }
    let edges: BTreeSet<(usize, usize)> = g.edges().into_iter().collect();
    assert_eq!(edges, expected);
    assert_eq!(g, families::complete(3));
}

#[test]
fn coset_graph_rebuilds_tutte_coxeter() {
    let tc = families::tutte_coxeter();
    let aut = automorphism_group(&tc);
    let (group, perms) = FiniteGroup::from_permutations_with_elements(aut.generators(), TABLE_CAP).unwrap();
    assert_eq!(group.order(), 1440);
    let stab: Vec<u32> = (0..1440u32).filter(|&x| perms[x as usize].apply(0) == 0).collect();
    assert_eq!(stab.len(), 48);
    let a = Subgroup::generated(&group, &stab);
    let w = tc.neighbors(0)[0] as usize;
    let b = (0..1440u32)
        .find(|&x| perms[x as usize].apply(0) == w && perms[x as usize].apply(w) == 0)
        .unwrap();
    let rebuilt = coset_graph(&group, &a, b).unwrap();
    assert_eq!(canonical_certificate(&rebuilt), canonical_certificate(&tc));
    assert!(is_vertex_transitive(&rebuilt));
}

#[test]
fn voltage_cover_of_k4_is_the_cube() {
    let k4 = families::complete(4);
    let volt: BTreeMap<(u32, u32), F2Vector> = k4
        .edges()
        .into_iter()
        .map(|(u, v)| ((u as u32, v as u32), F2Vector::new(1, 1).unwrap()))
        .collect();
    let cover = voltage_cover(&k4, 1, &volt).unwrap();
    assert_eq!(canonical_certificate(&cover), canonical_certificate(&families::hypercube(3)));
}

#[test]
fn tutte_coxeter_symmetry() {
    let tc = families::tutte_coxeter();
    assert_eq!((tc.order(), tc.size(), tc.girth()), (30, 45, Some(8)));
    let aut = automorphism_group(&tc);
    assert_eq!(aut.order(), 1440u32.into());
    assert_eq!(aut.stabilizer_order(0), 48u32.into());
    let gens = transitive_subgroup_gens(&tc, &aut).unwrap();
    assert_eq!(gens.len(), 3);
    for (g, &v) in gens.iter().zip(tc.neighbors(0)) {
        assert_eq!(g.apply(0), v as usize);
    }
    let report = s_arc_transitivity(&tc, 6).unwrap();
    assert_eq!(report.max_s, Some(5));
    assert!(!is_grr(&tc));
}

#[test]
fn relabeled_corpus_keeps_certificates() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    let corpus: Vec<Graph> = vec![
        families::petersen(),
        families::tutte_coxeter(),
        families::hypercube(4),
        families::prism(6),
        families::complete_bipartite(3, 4),
        families::cycle(9),
    ];
    for g in &corpus {
        let cert = canonical_certificate(g);
        for _ in 0..10 {
            let mut images: Vec<usize> = (0..g.order()).collect();
            images.shuffle(&mut rng);
            let p = cayley_census::permgroup::Permutation::from_images(&images).unwrap();
            assert_eq!(canonical_certificate(&g.relabel(&p)), cert);
        }
    }
    assert_ne!(canonical_certificate(&families::cycle(6)), canonical_certificate(&families::prism(3)));
    assert_ne!(canonical_certificate(&families::complete(4)), canonical_certificate(&families::cycle(4)));
}
