//! Semidirect products `(Z_m)^dim x| A` via the right regular representation.
//!
//! The acting group `A` is given by named generators, each carrying an
//! invertible `dim x dim` matrix over `Z_m` and optionally an abstract
//! carrier permutation (needed when the matrix action is not faithful).
//! With generators `x_1..x_dim` for the translation part, the group
//! satisfies `y^-1 x_i y = M y . e_i` where `M_y` is the matrix attached to
//! `y`, matching the presentations the shipped generating vectors are
//! written in.

use super::perm::Permutation;
use super::{FiniteGroup, GroupError};
use std::collections::HashMap;

/// A named generator of the acting group.
#[derive(Clone, Debug)]
pub struct Actor {
    pub name: String,
    /// Row-major `dim x dim` matrix over `Z_m`; column `i` is the image of `e_i`.
    pub matrix: Vec<i64>,
    /// Abstract carrier when the matrix action has a kernel.
    pub perm: Option<Permutation>,
}

type Mat = Vec<i64>;

fn mat_mul(a: &Mat, b: &Mat, dim: usize, m: i64) -> Mat {
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let av = a[i * dim + k];
            if av == 0 {
                continue;
            }
            for j in 0..dim {
                out[i * dim + j] = (out[i * dim + j] + av * b[k * dim + j]) % m;
            }
        }
    }
    out
}

fn mat_identity(dim: usize) -> Mat {
    let mut out = vec![0i64; dim * dim];
    for i in 0..dim {
        out[i * dim + i] = 1;
    }
    out
}

fn mat_vec(a: &Mat, v: &[i64], dim: usize, m: i64) -> Vec<i64> {
    let mut out = vec![0i64; dim];
    for i in 0..dim {
        for j in 0..dim {
            out[i] = (out[i] + a[i * dim + j] * v[j]) % m;
        }
    }
    out
}

/// Multiplicative order of `a` mod `m`, or an error if no power returns to
/// the identity (the matrix is singular mod m).
fn mat_order(a: &Mat, dim: usize, m: i64) -> Result<u32, GroupError> {
    let id = mat_identity(dim);
    let mut p = a.clone();
    let mut seen = std::collections::HashSet::new();
    let mut ord = 1u32;
    loop {
        if p == id {
            return Ok(ord);
        }
        if !seen.insert(p.clone()) {
            return Err(GroupError::MatrixNotInvertible);
        }
        p = mat_mul(&p, a, dim, m);
        ord += 1;
    }
}

/// Elements of the acting group as (abstract carrier, action matrix) pairs.
#[derive(Clone, PartialEq, Eq, Hash)]
struct Pair {
    carrier: Vec<i64>,
    matrix: Mat,
}

pub fn semidirect_product(
    dim: usize,
    modulus: i64,
    actors: &[Actor],
    actor_relations: &[String],
) -> Result<FiniteGroup, GroupError> {
    assert!(dim >= 1 && modulus >= 2);
    let m = modulus;

    // actor generator pairs: the attached matrix acts as conjugation by the
    // inverse, so the pair stores M^-1 as its action component
    let mut gen_pairs = Vec::new();
    for a in actors {
        if a.matrix.len() != dim * dim {
            return Err(GroupError::CatalogueParse(format!(
                "actor `{}` matrix has wrong shape",
                a.name
            )));
        }
        let matrix: Mat = a.matrix.iter().map(|&x| x.rem_euclid(m)).collect();
        let ord = mat_order(&matrix, dim, m)?;
        let mut inv = mat_identity(dim);
        for _ in 0..ord - 1 {
            inv = mat_mul(&inv, &matrix, dim, m);
        }
        let carrier = match &a.perm {
            Some(p) => p.images().iter().map(|&x| x as i64).collect(),
            None => matrix.clone(),
        };
        gen_pairs.push(Pair {
            carrier,
            matrix: inv,
        });
    }

    // closure of the pairs; the abstract carriers must determine the matrices
    let flags: Vec<bool> = actors.iter().map(|a| a.perm.is_some()).collect();
    if flags.iter().any(|&x| x) && !flags.iter().all(|&x| x) {
        return Err(GroupError::CatalogueParse(
            "either all actors carry permutations or none".into(),
        ));
    }
    let perm_carriers = flags.first().copied().unwrap_or(false);
    let carrier_mul = move |a: &Vec<i64>, b: &Vec<i64>| -> Vec<i64> {
        if perm_carriers {
            // permutation carriers compose left to right
            a.iter().map(|&x| b[x as usize]).collect()
        } else {
            mat_mul(a, b, dim, m)
        }
    };

    let identity_pair = Pair {
        carrier: if perm_carriers {
            let d = actors[0].perm.as_ref().unwrap().degree();
            (0..d as i64).collect()
        } else {
            mat_identity(dim)
        },
        matrix: mat_identity(dim),
    };
    let mut pairs = vec![identity_pair.clone()];
    let mut pair_index: HashMap<Pair, usize> = HashMap::new();
    pair_index.insert(identity_pair, 0);
    let mut qi = 0;
    while qi < pairs.len() {
        let cur = pairs[qi].clone();
        qi += 1;
        for g in &gen_pairs {
            let next = Pair {
                carrier: carrier_mul(&cur.carrier, &g.carrier),
                matrix: mat_mul(&cur.matrix, &g.matrix, dim, m),
            };
            if !pair_index.contains_key(&next) {
                pair_index.insert(next.clone(), pairs.len());
                pairs.push(next);
            }
        }
    }
    // faithfulness of the carrier: carriers alone must be pairwise distinct
    {
        let carriers: std::collections::HashSet<_> =
            pairs.iter().map(|p| p.carrier.clone()).collect();
        if carriers.len() != pairs.len() {
            return Err(GroupError::ActionNotWellDefined);
        }
    }

    // evaluate a relation word over actor names inside the pair group
    let actor_pair = |name: &str| -> Option<&Pair> {
        actors
            .iter()
            .position(|a| a.name == name)
            .map(|i| &gen_pairs[i])
    };
    for rel in actor_relations {
        let mut acc = pairs[0].clone();
        for token in rel.replace('*', " ").split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| GroupError::WordParse(rel.clone()))?,
                ),
                None => (token, 1),
            };
            let base = actor_pair(name)
                .ok_or_else(|| GroupError::WordParse(format!("unknown actor `{name}`")))?
                .clone();
            let base = if exp >= 0 {
                base
            } else {
                // inverse via the pair's order in the closure
                let mut ord = 1u32;
                let mut p = base.clone();
                while p != pairs[0] {
                    p = Pair {
                        carrier: carrier_mul(&p.carrier, &base.carrier),
                        matrix: mat_mul(&p.matrix, &base.matrix, dim, m),
                    };
                    ord += 1;
                }
                let mut inv = pairs[0].clone();
                for _ in 0..ord - 1 {
                    inv = Pair {
                        carrier: carrier_mul(&inv.carrier, &base.carrier),
                        matrix: mat_mul(&inv.matrix, &base.matrix, dim, m),
                    };
                }
                inv
            };
            for _ in 0..exp.unsigned_abs() {
                acc = Pair {
                    carrier: carrier_mul(&acc.carrier, &base.carrier),
                    matrix: mat_mul(&acc.matrix, &base.matrix, dim, m),
                };
            }
        }
        if acc != pairs[0] {
            return Err(GroupError::RelationFailed(rel.clone()));
        }
    }

    // enumerate the group: (vector, pair index), vectors in lexicographic order
    let vec_count = (m as usize).pow(dim as u32);
    let order = vec_count * pairs.len();
    let vec_at = |idx: usize| -> Vec<i64> {
        let mut v = vec![0i64; dim];
        let mut rest = idx;
        for i in (0..dim).rev() {
            v[i] = (rest % m as usize) as i64;
            rest /= m as usize;
        }
        v
    };
    let vec_index = |v: &[i64]| -> usize {
        v.iter().fold(0usize, |acc, &x| acc * m as usize + x as usize)
    };
    let point = |v: &[i64], ai: usize| -> usize { vec_index(v) * pairs.len() + ai };

    // right regular representation of each generator
    let mut perm_gens = Vec::new();
    let mut names = Vec::new();
    for i in 0..dim {
        let mut e = vec![0i64; dim];
        e[i] = 1;
        // (v, a) * (e_i, 1) = (v + mat(a) e_i, a)
        let mut images = vec![0u16; order];
        for vi in 0..vec_count {
            let v = vec_at(vi);
            for (ai, pair) in pairs.iter().enumerate() {
                let shift = mat_vec(&pair.matrix, &e, dim, m);
                let nv: Vec<i64> = v.iter().zip(&shift).map(|(&a, &b)| (a + b) % m).collect();
                images[point(&v, ai)] = point(&nv, ai) as u16;
            }
        }
        perm_gens.push(Permutation::from_images(images)?);
        names.push(format!("x{}", i + 1));
    }
    for (gi, a) in actors.iter().enumerate() {
        // (v, a) * (0, y) = (v, a y)
        let mut images = vec![0u16; order];
        for vi in 0..vec_count {
            let v = vec_at(vi);
            for (ai, pair) in pairs.iter().enumerate() {
                let next = Pair {
                    carrier: carrier_mul(&pair.carrier, &gen_pairs[gi].carrier),
                    matrix: mat_mul(&pair.matrix, &gen_pairs[gi].matrix, dim, m),
                };
                images[point(&v, ai)] = point(&v, pair_index[&next]) as u16;
            }
        }
        perm_gens.push(Permutation::from_images(images)?);
        names.push(a.name.clone());
    }

    let mut group = FiniteGroup::with_cap(perm_gens, order.max(2) as u64)?;
    group.set_gen_names(names);
    debug_assert_eq!(group.order(), order as u64);
    Ok(group)
}
