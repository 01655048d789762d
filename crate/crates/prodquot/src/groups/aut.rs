//! Automorphism groups and isomorphism testing by generator-image search.
//!
//! Candidate images of a minimal generating sequence are pruned by element
//! order and conjugacy-class size; a candidate tuple is validated by
//! extending it over the Cayley graph of the source group and checking every
//! edge, which certifies the extension is a homomorphism.

use super::{ElementId, FiniteGroup, GroupError};

/// A homomorphism between materialized groups, stored as the full image table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct GroupMap {
    images: Vec<ElementId>,
}

impl GroupMap {
    pub fn identity(n: usize) -> GroupMap {
        GroupMap {
            images: (0..n as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<ElementId>) -> GroupMap {
        GroupMap { images }
    }

    pub fn apply(&self, x: ElementId) -> ElementId {
        self.images[x as usize]
    }

    pub fn images(&self) -> &[ElementId] {
        &self.images
    }

    /// `self` then `other`.
    pub fn compose(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            images: self
                .images
                .iter()
                .map(|&x| other.images[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> GroupMap {
        let mut inv = vec![0 as ElementId; self.images.len()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as ElementId;
        }
        GroupMap { images: inv }
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.images.len()];
        for &x in &self.images {
            if seen[x as usize] {
                return false;
            }
            seen[x as usize] = true;
        }
        true
    }
}

/// Greedy minimal generating sequence: scan ids ascending, keep an element
/// whenever it enlarges the generated subgroup.
fn greedy_generators(g: &FiniteGroup) -> Vec<ElementId> {
    let mut gens: Vec<ElementId> = Vec::new();
    let mut size = 1usize;
    for x in 1..g.element_count() as u32 {
        if size as u64 == g.order() {
            break;
        }
        let mut trial = gens.clone();
        trial.push(x as ElementId);
        let closure = g.subgroup_closure(&trial).len();
        if closure > size {
            gens = trial;
            size = closure;
        }
    }
    gens
}

/// Breadth-first Cayley tree over the generating sequence: each element gets
/// a parent and the generator index of the edge reaching it.
struct CayleyTree {
    order: Vec<ElementId>,
    parent: Vec<ElementId>,
    via: Vec<usize>,
}

fn cayley_tree(g: &FiniteGroup, gens: &[ElementId]) -> CayleyTree {
    let n = g.element_count();
    let mut parent = vec![u16::MAX; n];
    let mut via = vec![usize::MAX; n];
    let mut order = vec![0 as ElementId];
    parent[0] = 0;
    let mut qi = 0;
    while qi < order.len() {
        let cur = order[qi];
        qi += 1;
        for (gi, &s) in gens.iter().enumerate() {
            let next = g.mul(cur, s);
            if parent[next as usize] == u16::MAX && next != 0 {
                parent[next as usize] = cur;
                via[next as usize] = gi;
                order.push(next);
            }
        }
    }
    CayleyTree { order, parent, via }
}

/// Extend candidate generator images over the tree and validate every Cayley
/// edge in the target; returns the image table if it is a homomorphism.
fn extend_and_check(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[ElementId],
    tree: &CayleyTree,
    targets: &[ElementId],
) -> Option<Vec<ElementId>> {
    let n = g.element_count();
    let mut img = vec![0 as ElementId; n];
    for &x in tree.order.iter().skip(1) {
        let p = tree.parent[x as usize];
        let gi = tree.via[x as usize];
        img[x as usize] = h.mul(img[p as usize], targets[gi]);
    }
    for x in 0..n as u32 {
        for (gi, &s) in gens.iter().enumerate() {
            let lhs = img[g.mul(x as ElementId, s) as usize];
            let rhs = h.mul(img[x as usize], targets[gi]);
            if lhs != rhs {
                return None;
            }
        }
    }
    Some(img)
}

fn morphism_search(
    g: &FiniteGroup,
    h: &FiniteGroup,
    first_only: bool,
) -> Vec<GroupMap> {
    let gens = greedy_generators(g);
    let tree = cayley_tree(g, &gens);
    // candidates per generator: same order and same class size in the target
    let candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&s| {
            let ord = g.order_of(s);
            let cs = g.class_size(s);
            (0..h.element_count() as u32)
                .map(|i| i as ElementId)
                .filter(|&t| h.order_of(t) == ord && h.class_size(t) == cs)
                .collect()
        })
        .collect();
    let mut found = Vec::new();
    let mut picks = vec![0 as ElementId; gens.len()];
    fn rec(
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[ElementId],
        tree: &CayleyTree,
        candidates: &[Vec<ElementId>],
        picks: &mut Vec<ElementId>,
        depth: usize,
        found: &mut Vec<GroupMap>,
        first_only: bool,
    ) {
        if first_only && !found.is_empty() {
            return;
        }
        if depth == gens.len() {
            if let Some(img) = extend_and_check(g, h, gens, tree, picks) {
                let map = GroupMap { images: img };
                if map.is_bijective() {
                    found.push(map);
                }
            }
            return;
        }
        for &t in &candidates[depth] {
            picks[depth] = t;
            rec(g, h, gens, tree, candidates, picks, depth + 1, found, first_only);
        }
    }
    rec(
        g, h, &gens, &tree, &candidates, &mut picks, 0, &mut found, first_only,
    );
    found.sort();
    found
}

/// All automorphisms of `G`; refuses above the cap (the caller may load a
/// precomputed set from a file instead).
pub fn automorphisms(g: &FiniteGroup, cap: u64) -> Result<Vec<GroupMap>, GroupError> {
    if g.order() > cap {
        return Err(GroupError::AutCapExceeded {
            order: g.order(),
            cap,
        });
    }
    Ok(morphism_search(g, g, false))
}

/// Isomorphism test between materialized groups.
pub fn isomorphic(g: &FiniteGroup, h: &FiniteGroup) -> bool {
    if g.order() != h.order() {
        return false;
    }
    let prof = |x: &FiniteGroup| {
        let mut orders: Vec<u32> = (0..x.element_count() as u32)
            .map(|i| x.order_of(i as ElementId))
            .collect();
        orders.sort_unstable();
        orders
    };
    if prof(g) != prof(h) {
        return false;
    }
    let classes = |x: &FiniteGroup| {
        let mut sizes: Vec<u32> = (0..x.class_count())
            .map(|c| {
                (0..x.element_count() as u32)
                    .filter(|&i| x.class_of(i as ElementId) == c as u32)
                    .count() as u32
            })
            .collect();
        sizes.sort_unstable();
        sizes
    };
    if classes(g) != classes(h) {
        return false;
    }
    !morphism_search(g, h, true).is_empty()
}
