//! Spherical generating vectors, Hurwitz orbits and equivalence classes.
//!
//! A generating vector of signature `(m_1,...,m_r)` is a sequence of group
//! elements of exactly those orders whose product is the identity and which
//! generates the group. Two surfaces coincide when their vector pairs differ
//! by Hurwitz moves on either factor and a simultaneous automorphism, so the
//! searches return one representative per orbit of that action. Orbits are
//! computed by partitioning all vectors into braid orbits first and then
//! letting the (inner) automorphisms act on orbit labels, which keeps the
//! memory proportional to the number of vectors rather than the class sizes.

use std::collections::HashMap;

use crate::baskets::Basket;
use crate::groups::{ElementId, FiniteGroup, GroupMap};
use crate::signatures::Signature;
use crate::surface;

/// A full generating vector: element ids, one per signature entry.
pub type GenVector = Vec<ElementId>;

/// Signature entries as element orders, descending.
fn slot_orders(t: &Signature) -> Vec<u32> {
    t.entries().iter().map(|&m| m as u32).collect()
}

/// Checks a full vector: orders match the (descending) signature, the product
/// is the identity, and the entries generate the group.
pub fn is_gen_vector(g: &FiniteGroup, t: &Signature, v: &[ElementId]) -> bool {
    let orders = slot_orders(t);
    if v.len() != orders.len() {
        return false;
    }
    if v.iter().zip(&orders).any(|(&e, &m)| g.order_of(e) != m) {
        return false;
    }
    let prod = v.iter().fold(g.identity(), |acc, &e| g.mul(acc, e));
    prod == g.identity() && g.generates(v)
}

fn search_vectors(g: &FiniteGroup, t: &Signature, mut on_found: impl FnMut(GenVector) -> bool) {
    let orders = slot_orders(t);
    let r = orders.len();
    if r < 2 {
        return;
    }
    let slots: Vec<Vec<ElementId>> = orders[..r - 1]
        .iter()
        .map(|&m| g.elements_of_order(m).unwrap_or_default())
        .collect();
    if slots.iter().any(|s| s.is_empty()) {
        return;
    }
    let last_order = orders[r - 1];
    let mut picks: Vec<ElementId> = vec![0; r - 1];
    let mut prods: Vec<ElementId> = vec![g.identity(); r];
    // depth-first over the first r-1 slots; the last entry is forced
    let mut depth = 0usize;
    let mut cursor = vec![0usize; r - 1];
    loop {
        if cursor[depth] == slots[depth].len() {
            if depth == 0 {
                return;
            }
            cursor[depth] = 0;
            depth -= 1;
            cursor[depth] += 1;
            continue;
        }
        let e = slots[depth][cursor[depth]];
        picks[depth] = e;
        prods[depth + 1] = g.mul(prods[depth], e);
        if depth + 1 < r - 1 {
            depth += 1;
            continue;
        }
        let last = g.inv(prods[r - 1]);
        if g.order_of(last) == last_order {
            let mut full = picks.clone();
            full.push(last);
            if g.generates(&full) && !on_found(full) {
                return;
            }
        }
        cursor[depth] += 1;
    }
}

/// True iff a generating vector of signature `t` exists over `G`.
pub fn exists_gen_vector(g: &FiniteGroup, t: &Signature) -> bool {
    let mut found = false;
    search_vectors(g, t, |_| {
        found = true;
        false
    });
    found
}

/// All generating vectors of signature `t`, in deterministic search order.
pub fn gen_vectors(g: &FiniteGroup, t: &Signature) -> Vec<GenVector> {
    let mut out = Vec::new();
    search_vectors(g, t, |v| {
        out.push(v);
        true
    });
    out
}

/// One representative per simultaneous-conjugation class.
pub fn gen_vectors_up_to_conj(g: &FiniteGroup, t: &Signature) -> Vec<GenVector> {
    let mut seen: HashMap<GenVector, ()> = HashMap::new();
    let mut reps = Vec::new();
    for v in gen_vectors(g, t) {
        if seen.contains_key(&v) {
            continue;
        }
        for c in 0..g.element_count() as u32 {
            let w: GenVector = v.iter().map(|&e| g.conj(e, c as ElementId)).collect();
            seen.insert(w, ());
        }
        reps.push(v);
    }
    reps
}

/// The braid move at `i` (0-based): `(..., v_i, v_{i+1}, ...)` becomes
/// `(..., v_{i+1}, v_{i+1}^-1 v_i v_{i+1}, ...)`. Preserves the product, the
/// generated subgroup and the multiset of orders.
pub fn hurwitz_move(g: &FiniteGroup, v: &[ElementId], i: usize) -> GenVector {
    assert!(i + 1 < v.len(), "move index out of range");
    let mut w = v.to_vec();
    w[i] = v[i + 1];
    w[i + 1] = g.conj(v[i], v[i + 1]);
    w
}

fn order_pattern_canonical(g: &FiniteGroup, v: &[ElementId]) -> bool {
    v.windows(2).all(|w| g.order_of(w[0]) >= g.order_of(w[1]))
}

/// Closure of `v` under braid moves, filtered to the members whose element
/// orders never increase along the sequence; sorted.
pub fn hurwitz_orbit(g: &FiniteGroup, v: &[ElementId]) -> Vec<GenVector> {
    let mut orbit: HashMap<GenVector, ()> = HashMap::new();
    let mut queue = vec![v.to_vec()];
    orbit.insert(v.to_vec(), ());
    let mut qi = 0;
    while qi < queue.len() {
        let cur = queue[qi].clone();
        qi += 1;
        for i in 0..cur.len() - 1 {
            let next = hurwitz_move(g, &cur, i);
            if !orbit.contains_key(&next) {
                orbit.insert(next.clone(), ());
                queue.push(next);
            }
        }
    }
    let mut out: Vec<GenVector> = queue
        .into_iter()
        .filter(|w| order_pattern_canonical(g, w))
        .collect();
    out.sort();
    out
}

/// Braid orbits of a set of vectors: a label per vector (closure included)
/// and, per orbit, the lexicographically least member with canonical order
/// pattern.
pub struct HurwitzPartition {
    orbit_of: HashMap<GenVector, u32>,
    reps: Vec<GenVector>,
}

impl HurwitzPartition {
    pub fn build(g: &FiniteGroup, vectors: &[GenVector]) -> HurwitzPartition {
        let mut orbit_of: HashMap<GenVector, u32> = HashMap::new();
        let mut reps: Vec<GenVector> = Vec::new();
        for v in vectors {
            if orbit_of.contains_key(v) {
                continue;
            }
            let id = reps.len() as u32;
            let mut queue = vec![v.clone()];
            orbit_of.insert(v.clone(), id);
            let mut rep = v.clone();
            let mut qi = 0;
            while qi < queue.len() {
                let cur = queue[qi].clone();
                qi += 1;
                for i in 0..cur.len() - 1 {
                    let next = hurwitz_move(g, &cur, i);
                    if !orbit_of.contains_key(&next) {
                        orbit_of.insert(next.clone(), id);
                        if order_pattern_canonical(g, &next) && next < rep {
                            rep = next.clone();
                        }
                        queue.push(next);
                    }
                }
            }
            reps.push(rep);
        }
        HurwitzPartition { orbit_of, reps }
    }

    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn orbit_id(&self, v: &[ElementId]) -> Option<u32> {
        self.orbit_of.get(v).copied()
    }

    pub fn rep(&self, orbit: u32) -> &GenVector {
        &self.reps[orbit as usize]
    }

    /// Image of an orbit under an automorphism (well defined on labels).
    fn map_orbit(&self, orbit: u32, phi: &GroupMap) -> u32 {
        let image: GenVector = self.reps[orbit as usize]
            .iter()
            .map(|&e| phi.apply(e))
            .collect();
        self.orbit_of[&image]
    }
}

/// One representative per orbit of generating vectors under braid moves and
/// simultaneous inner automorphisms; sorted.
pub fn find_curves(g: &FiniteGroup, t: &Signature) -> Vec<GenVector> {
    let vectors = gen_vectors(g, t);
    let part = HurwitzPartition::build(g, &vectors);
    let n = part.orbit_count();
    let mut class_of = vec![u32::MAX; n];
    let mut classes: Vec<Vec<u32>> = Vec::new();
    for o in 0..n as u32 {
        if class_of[o as usize] != u32::MAX {
            continue;
        }
        let c = classes.len() as u32;
        let mut members = vec![o];
        class_of[o as usize] = c;
        let mut qi = 0;
        while qi < members.len() {
            let cur = members[qi];
            qi += 1;
            let rep = part.rep(cur).clone();
            for h in 0..g.element_count() as u32 {
                let conj: GenVector = rep.iter().map(|&e| g.conj(e, h as ElementId)).collect();
                let img = part
                    .orbit_id(&conj)
                    .expect("conjugate vector was enumerated");
                if class_of[img as usize] == u32::MAX {
                    class_of[img as usize] = c;
                    members.push(img);
                }
            }
        }
        classes.push(members);
    }
    let mut out: Vec<GenVector> = classes
        .iter()
        .map(|members| {
            members
                .iter()
                .map(|&o| part.rep(o).clone())
                .min()
                .expect("classes are nonempty")
        })
        .collect();
    out.sort();
    out
}

/// One representative pair per equivalence class of vector pairs under braid
/// moves on each factor and simultaneous automorphisms on both, retaining
/// only classes whose induced singularities match the basket.
pub fn find_surfaces(
    g: &FiniteGroup,
    basket: &Basket,
    t1: &Signature,
    t2: &Signature,
    auts: &[GroupMap],
) -> Vec<(GenVector, GenVector)> {
    let vectors1 = gen_vectors(g, t1);
    let part1 = HurwitzPartition::build(g, &vectors1);
    let part2_store;
    let p2: &HurwitzPartition = if t1 == t2 {
        &part1
    } else {
        let vectors2 = gen_vectors(g, t2);
        part2_store = HurwitzPartition::build(g, &vectors2);
        &part2_store
    };
    let (n1, n2) = (part1.orbit_count(), p2.orbit_count());

    let mut class_of = vec![u32::MAX; n1 * n2];
    let mut out = Vec::new();
    for o1 in 0..n1 as u32 {
        for o2 in 0..n2 as u32 {
            let key = (o1 as usize) * n2 + o2 as usize;
            if class_of[key] != u32::MAX {
                continue;
            }
            let cls = out.len() as u32;
            let mut members = vec![(o1, o2)];
            class_of[key] = cls;
            let mut qi = 0;
            while qi < members.len() {
                let (a, b) = members[qi];
                qi += 1;
                for phi in auts {
                    let ia = part1.map_orbit(a, phi);
                    let ib = p2.map_orbit(b, phi);
                    let k = (ia as usize) * n2 + ib as usize;
                    if class_of[k] == u32::MAX {
                        class_of[k] = cls;
                        members.push((ia, ib));
                    }
                }
            }
            let rep = members
                .iter()
                .map(|&(a, b)| (part1.rep(a).clone(), p2.rep(b).clone()))
                .min()
                .expect("classes are nonempty");
            out.push(rep);
        }
    }
    out.retain(|(v1, v2)| surface::check_sings(g, basket, v1, v2));
    out.sort();
    out
}
