//! First homology of a product-quotient surface.
//!
//! The fundamental group of `X = (C_1 x C_2)/G` is the quotient of
//! `H = f^-1(diagonal) <= T_1 x T_2` by the subgroup generated by the
//! elements acting with fixed points, one relator per power coincidence
//! `g_1^{d_1} ~ g_2^{d_2}` and centralizer element. `H` is rewritten on
//! Schreier generators and everything is abelianized through an integer
//! Smith normal form, which is exactly the `H_1` column of the tables.

mod coset;
mod presentation;
mod snf;

pub use coset::{
    diagonal_preimage_table, rewrite_subgroup, CosetTable, SchreierRewriter, TreeStrategy,
};
pub use presentation::{
    free_reduce, invert_word, polygonal_evaluation, polygonal_presentation, product_presentation,
    FinitePresentation, Word,
};
pub use snf::{normalize_chain, smith_invariants, smith_invariants_dense};

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::groups::{ElementId, FiniteGroup};

/// Invariant factors of a finitely generated abelian group:
/// `Z^free_rank + Z/d_1 + ... + Z/d_k` with `d_i | d_{i+1}`, all `d_i > 1`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianInvariants {
    pub fn trivial() -> AbelianInvariants {
        AbelianInvariants {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Table-style form with primary factors grouped, e.g. `Z2^2 x Z4`.
    pub fn table_form(&self) -> String {
        let mut parts = Vec::new();
        if self.free_rank == 1 {
            parts.push("Z".to_string());
        } else if self.free_rank > 1 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let mut j = i;
            while j < self.torsion.len() && self.torsion[j] == self.torsion[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("Z{}", self.torsion[i]));
            } else {
                parts.push(format!("Z{}^{}", self.torsion[i], j - i));
            }
            i = j;
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" x ")
        }
    }

    /// Parse a table-style form like `Z2^2 x Z4`; factors are normalized
    /// into a divisor chain.
    pub fn parse(s: &str) -> Option<AbelianInvariants> {
        let mut free_rank = 0usize;
        let mut torsion = Vec::new();
        let t = s.trim();
        if t == "0" || t == "1" {
            return Some(AbelianInvariants::trivial());
        }
        for part in t.split('x') {
            let part = part.trim();
            let (base, exp) = match part.split_once('^') {
                Some((b, e)) => (b.trim(), e.trim().parse::<usize>().ok()?),
                None => (part, 1),
            };
            if base == "Z" {
                free_rank += exp;
            } else {
                let d: u64 = base.strip_prefix('Z')?.parse().ok()?;
                for _ in 0..exp {
                    torsion.push(d);
                }
            }
        }
        normalize_chain(&mut torsion);
        torsion.retain(|&d| d > 1);
        Some(AbelianInvariants { free_rank, torsion })
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" x "))
    }
}

/// Abelianization of a finite presentation via the Smith normal form of its
/// exponent matrix.
pub fn abelianization(p: &FinitePresentation) -> AbelianInvariants {
    let rows: Vec<Vec<(u32, i64)>> = p
        .relators
        .iter()
        .map(|w| exponent_row(w))
        .filter(|r| !r.is_empty())
        .collect();
    let (rank, torsion) = smith_invariants(&rows, p.gens);
    AbelianInvariants {
        free_rank: p.gens - rank,
        torsion,
    }
}

fn exponent_row(word: &[i32]) -> Vec<(u32, i64)> {
    let mut acc: HashMap<u32, i64> = HashMap::new();
    for &lit in word {
        *acc.entry(lit.unsigned_abs() - 1).or_insert(0) += if lit > 0 { 1 } else { -1 };
    }
    let mut row: Vec<(u32, i64)> = acc.into_iter().filter(|&(_, v)| v != 0).collect();
    row.sort_unstable();
    row
}

fn presentation_from_orders(orders: &[u32]) -> FinitePresentation {
    let r = orders.len();
    let mut relators: Vec<Word> = Vec::with_capacity(r + 1);
    for (i, &m) in orders.iter().enumerate() {
        relators.push(vec![i as i32 + 1; m as usize]);
    }
    relators.push((1..=r as i32).collect());
    FinitePresentation::new(r, relators)
}

/// Words in `T_1 x T_2` killing the elements with fixed points: for every
/// conjugacy coincidence `g_1^{d_1} = (g_2^{d_2})^h` and every centralizer
/// element `c`, the relator `x_i^{d_1} (y_j^{d_2})^{w}` with
/// `phi_2(w) = h^-1 c`.
pub fn torsion_relators(g: &FiniteGroup, v1: &[ElementId], v2: &[ElementId]) -> Vec<Word> {
    let r1 = v1.len() as i32;
    // breadth-first preimage words of every element under phi_2
    let n = g.element_count();
    let mut via: Vec<(u32, usize)> = vec![(u32::MAX, usize::MAX); n];
    via[0] = (0, usize::MAX);
    let mut queue = vec![0 as ElementId];
    let mut qi = 0;
    while qi < queue.len() {
        let cur = queue[qi];
        qi += 1;
        for (j, &e) in v2.iter().enumerate() {
            let next = g.mul(cur, e);
            if via[next as usize].0 == u32::MAX && next != 0 {
                via[next as usize] = (cur as u32, j);
                queue.push(next);
            }
        }
    }
    let word_of = |e: ElementId| -> Word {
        let mut w = Vec::new();
        let mut cur = e;
        while cur != 0 {
            let (p, j) = via[cur as usize];
            w.push(r1 + j as i32 + 1);
            cur = p as ElementId;
        }
        w.reverse();
        w
    };

    let mut out = Vec::new();
    for (i, &a) in v1.iter().enumerate() {
        for (j, &b) in v2.iter().enumerate() {
            for d1 in 1..g.order_of(a) {
                let lhs = g.pow(a, d1);
                for d2 in 1..g.order_of(b) {
                    let rhs = g.pow(b, d2);
                    let Some(h) = g.conjugacy_witness(lhs, rhs) else {
                        continue;
                    };
                    for c in g.centralizer(lhs) {
                        let t = word_of(g.mul(g.inv(h), c));
                        let mut rel: Word = Vec::new();
                        rel.extend(std::iter::repeat(i as i32 + 1).take(d1 as usize));
                        rel.extend(invert_word(&t));
                        rel.extend(std::iter::repeat(r1 + j as i32 + 1).take(d2 as usize));
                        rel.extend(&t);
                        out.push(free_reduce(&rel));
                    }
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// `H_1(S, Z)` of the surface given by the pair of generating vectors.
pub fn h1(g: &FiniteGroup, v1: &[ElementId], v2: &[ElementId]) -> AbelianInvariants {
    h1_with_strategy(g, v1, v2, TreeStrategy::Bfs)
}

pub fn h1_with_strategy(
    g: &FiniteGroup,
    v1: &[ElementId],
    v2: &[ElementId],
    strategy: TreeStrategy,
) -> AbelianInvariants {
    let o1: Vec<u32> = v1.iter().map(|&e| g.order_of(e)).collect();
    let o2: Vec<u32> = v2.iter().map(|&e| g.order_of(e)).collect();
    let p1 = presentation_from_orders(&o1);
    let p2 = presentation_from_orders(&o2);
    let prod = product_presentation(&p1, &p2);
    let table = diagonal_preimage_table(g, v1, v2);
    let (sub, rw) = rewrite_subgroup(&prod, &table, strategy);
    let mut rows: Vec<Vec<(u32, i64)>> = sub
        .relators
        .iter()
        .map(|w| exponent_row(w))
        .filter(|r| !r.is_empty())
        .collect();
    for word in torsion_relators(g, v1, v2) {
        let w = rw
            .rewrite(&table, 0, &word)
            .expect("torsion relators lie in the diagonal preimage");
        let row = exponent_row(&w);
        if !row.is_empty() {
            rows.push(row);
        }
    }
    let (rank, torsion) = smith_invariants(&rows, sub.gens);
    AbelianInvariants {
        free_rank: sub.gens - rank,
        torsion,
    }
}
