//! Database-free enumeration of all groups of order at most 16.
//!
//! Every group of order <= 16 is solvable, hence has a normal subgroup of
//! prime index, so the isomorphism classes of order `n` arise as cyclic
//! extensions of the classes of order `n/p`: pairs `(alpha, a)` with
//! `alpha in Aut(N)`, `alpha(a) = a` and `alpha^p = conj_a` yield the group
//! `<N, t | t^-1 n t = alpha(n), t^p = a>`. Duplicates are removed with the
//! generator-image isomorphism test.

use std::sync::{Arc, OnceLock};

use super::aut::{automorphisms, isomorphic, GroupMap};
use super::perm::Permutation;
use super::{ElementId, FiniteGroup};

fn trivial_group() -> FiniteGroup {
    FiniteGroup::with_cap(vec![Permutation::identity(1)], 16).unwrap()
}

/// Regular representation of the cyclic extension of `n_grp` by `Z_p`
/// defined by `(alpha, a)`; `None` when the data fails the section checks.
fn cyclic_extension(
    n_grp: &FiniteGroup,
    p: u32,
    alpha: &GroupMap,
    a: ElementId,
) -> Option<FiniteGroup> {
    if alpha.apply(a) != a {
        return None;
    }
    // alpha^p must be conjugation by a
    let mut ap = GroupMap::identity(n_grp.element_count());
    for _ in 0..p {
        ap = ap.compose(alpha);
    }
    let conj_a = GroupMap::from_images(
        (0..n_grp.element_count() as u32)
            .map(|x| n_grp.conj(x as ElementId, a))
            .collect(),
    );
    if ap != conj_a {
        return None;
    }

    let nn = n_grp.element_count();
    let order = nn * p as usize;
    let inv_alpha = alpha.inverse();
    let mut inv_pows = vec![GroupMap::identity(nn)];
    for i in 1..p as usize {
        inv_pows.push(inv_pows[i - 1].compose(&inv_alpha));
    }
    // elements are n * t^i encoded as x * p + i
    let point = |x: ElementId, i: u32| -> usize { x as usize * p as usize + i as usize };
    let mul = |x: ElementId, i: u32, y: ElementId, j: u32| -> (ElementId, u32) {
        let mut nx = n_grp.mul(x, inv_pows[i as usize].apply(y));
        let mut k = i + j;
        if k >= p {
            nx = n_grp.mul(nx, a);
            k -= p;
        }
        (nx, k)
    };

    let mut gens = Vec::new();
    for &g in n_grp.generator_ids().ok()? {
        let mut images = vec![0u16; order];
        for x in 0..nn as u32 {
            for i in 0..p {
                let (nx, ni) = mul(x as ElementId, i, g, 0);
                images[point(x as ElementId, i)] = point(nx, ni) as u16;
            }
        }
        gens.push(Permutation::from_images(images).ok()?);
    }
    {
        let mut images = vec![0u16; order];
        for x in 0..nn as u32 {
            for i in 0..p {
                let (nx, ni) = mul(x as ElementId, i, 0, 1);
                images[point(x as ElementId, i)] = point(nx, ni) as u16;
            }
        }
        gens.push(Permutation::from_images(images).ok()?);
    }
    let ext = FiniteGroup::with_cap(gens, order as u64).ok()?;
    (ext.order() == order as u64).then_some(ext)
}

fn primes_dividing(n: u32) -> Vec<u32> {
    [2u32, 3, 5, 7, 11, 13].into_iter().filter(|p| n % p == 0).collect()
}

/// All isomorphism classes of groups of each order `1..=16`, indexed by order.
pub fn groups_of_order_upto_16() -> &'static Vec<Vec<Arc<FiniteGroup>>> {
    static CACHE: OnceLock<Vec<Vec<Arc<FiniteGroup>>>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let mut by_order: Vec<Vec<Arc<FiniteGroup>>> = vec![Vec::new(); 17];
        by_order[1].push(Arc::new(trivial_group()));
        for n in 2..=16u32 {
            let mut classes: Vec<Arc<FiniteGroup>> = Vec::new();
            for p in primes_dividing(n) {
                let m = (n / p) as usize;
                for base in by_order[m].clone() {
                    let auts = automorphisms(&base, 16).expect("orders <= 16 stay under the cap");
                    for alpha in &auts {
                        for a in 0..base.element_count() as u32 {
                            let Some(ext) = cyclic_extension(&base, p, alpha, a as ElementId)
                            else {
                                continue;
                            };
                            if !classes.iter().any(|g| isomorphic(g, &ext)) {
                                let mut ext = ext;
                                ext.set_name(format!("order{}-{}", n, classes.len() + 1));
                                classes.push(Arc::new(ext));
                            }
                        }
                    }
                }
            }
            by_order[n as usize] = classes;
        }
        by_order
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts_match_known_values() {
        let known = [0, 1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1, 14];
        let all = groups_of_order_upto_16();
        for n in 1..=16usize {
            assert_eq!(
                all[n].len(),
                known[n],
                "wrong class count at order {n}: {:?}",
                all[n].iter().map(|g| g.order()).collect::<Vec<_>>()
            );
        }
    }

    #[test]
    fn catalogue_groups_recognized() {
        let all = groups_of_order_upto_16();
        let cat = super::super::Catalogue::builtin().unwrap();
        for name in ["Z2^3", "Z2^4", "Z4^2", "Z2xD4", "G(16,3)", "Z4xZ2", "Z3^2"] {
            let g = cat.group(name).unwrap();
            let n = g.order() as usize;
            let hits = all[n].iter().filter(|h| isomorphic(h, &g)).count();
            assert_eq!(hits, 1, "{name} should match exactly one class");
        }
    }
}
