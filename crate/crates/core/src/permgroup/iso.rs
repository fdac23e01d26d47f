use super::finite::{FiniteGroup, Subgroup};

#[derive(PartialEq, Eq)]
struct Fingerprint {
    order_multiset: Vec<usize>,
    center: usize,
    derived_length: usize,
}

fn fingerprint(g: &FiniteGroup) -> Fingerprint {
    let mut order_multiset = g.element_orders();
    order_multiset.sort_unstable();
    Fingerprint {
        order_multiset,
        center: g.center().len(),
        derived_length: g.derived_length(),
    }
}

/// Per-element invariant used to restrict candidate images: element order
/// and centralizer size.
fn element_classes(g: &FiniteGroup) -> Vec<(usize, usize)> {
    let n = g.order() as u32;
    (0..n)
        .map(|a| {
            let cent = (0..n).filter(|&b| g.mul(a, b) == g.mul(b, a)).count();
            (g.element_order(a), cent)
        })
        .collect()
}

/// A small generating set: repeatedly add the element of largest order
/// outside the current subgroup.
fn greedy_generators(g: &FiniteGroup, classes: &[(usize, usize)]) -> Vec<u32> {
    let mut by_order: Vec<u32> = (1..g.order() as u32).collect();
    by_order.sort_by_key(|&a| (std::cmp::Reverse(classes[a as usize].0), a));
    let mut gens = Vec::new();
    let mut current = Subgroup::trivial(g);
    while current.order() < g.order() {
        let next = *by_order
            .iter()
            .find(|&&a| !current.contains(a))
            .expect("a proper subgroup misses some element");
        gens.push(next);
        current = Subgroup::generated(g, &gens);
    }
    gens
}

/// An isomorphism `g1 → g2` as an element map, if one exists.
pub fn find_isomorphism(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Vec<u32>> {
    if g1.order() != g2.order() || fingerprint(g1) != fingerprint(g2) {
        return None;
    }
    let c1 = element_classes(g1);
    let c2 = element_classes(g2);
    let gens = greedy_generators(g1, &c1);
    let source = g1.with_gens(gens.clone()).expect("greedy generators generate");
    let candidates: Vec<Vec<u32>> = gens
        .iter()
        .map(|&a| {
            (0..g2.order() as u32)
                .filter(|&b| c2[b as usize] == c1[a as usize])
                .collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    backtrack(g1, g2, &source, &gens, &candidates, &mut images)
}

fn backtrack(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    source: &FiniteGroup,
    gens: &[u32],
    candidates: &[Vec<u32>],
    images: &mut Vec<u32>,
) -> Option<Vec<u32>> {
    let depth = images.len();
    if depth == gens.len() {
        let phi = source.extend_homomorphism(g2, images)?;
        let mut hit = vec![false; g2.order()];
        for &y in &phi {
            if std::mem::replace(&mut hit[y as usize], true) {
                return None;
            }
        }
        return Some(phi);
    }
    for &b in &candidates[depth] {
        let consistent = (0..depth).all(|e| {
            g1.element_order(g1.mul(gens[e], gens[depth]))
                == g2.element_order(g2.mul(images[e], b))
        });
        if !consistent {
            continue;
        }
        images.push(b);
        if let Some(phi) = backtrack(g1, g2, source, gens, candidates, images) {
            return Some(phi);
        }
        images.pop();
    }
    None
}

/// Whether the two tables describe isomorphic groups.
pub fn are_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> bool {
    find_isomorphism(g1, g2).is_some()
}
