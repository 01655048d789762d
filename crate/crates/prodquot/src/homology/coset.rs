//! Coset tables and Reidemeister-Schreier rewriting.
//!
//! The subgroup `H = f^-1(diagonal)` of `T_1 x T_2` has index `|G|`; its
//! cosets are labelled by group elements directly, so no coset enumeration
//! is needed: the right coset of a word pair `(w_1, w_2)` is
//! `phi_2(w_2)^-1 phi_1(w_1)`, a generator of `T_1` acts by right
//! multiplication with its image and a generator of `T_2` by left
//! multiplication with the inverse image.

use std::collections::HashMap;

use super::presentation::{free_reduce, FinitePresentation, Word};
use crate::groups::{ElementId, FiniteGroup};

/// Right-coset action table: one permutation of cosets per generator.
pub struct CosetTable {
    pub n_cosets: usize,
    fwd: Vec<Vec<u32>>,
    inv: Vec<Vec<u32>>,
}

impl CosetTable {
    pub fn new(n_cosets: usize, fwd: Vec<Vec<u32>>) -> CosetTable {
        let inv = fwd
            .iter()
            .map(|col| {
                let mut r = vec![0u32; n_cosets];
                for (i, &x) in col.iter().enumerate() {
                    r[x as usize] = i as u32;
                }
                r
            })
            .collect();
        CosetTable {
            n_cosets,
            fwd,
            inv,
        }
    }

    pub fn n_gens(&self) -> usize {
        self.fwd.len()
    }

    pub fn step(&self, coset: u32, lit: i32) -> u32 {
        if lit > 0 {
            self.fwd[(lit - 1) as usize][coset as usize]
        } else {
            self.inv[(-lit - 1) as usize][coset as usize]
        }
    }

    /// The table is transitive when every coset is reachable from 0.
    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.n_cosets];
        seen[0] = true;
        let mut stack = vec![0u32];
        while let Some(u) = stack.pop() {
            for g in 0..self.n_gens() {
                for v in [self.fwd[g][u as usize], self.inv[g][u as usize]] {
                    if !seen[v as usize] {
                        seen[v as usize] = true;
                        stack.push(v);
                    }
                }
            }
        }
        seen.into_iter().all(|x| x)
    }
}

/// Coset table of the preimage of the diagonal under
/// `(w_1, w_2) -> (phi_1 w_1, phi_2 w_2)`, on `|G|` cosets.
pub fn diagonal_preimage_table(
    g: &FiniteGroup,
    v1: &[ElementId],
    v2: &[ElementId],
) -> CosetTable {
    let n = g.element_count();
    let mut fwd: Vec<Vec<u32>> = Vec::with_capacity(v1.len() + v2.len());
    for &e in v1 {
        fwd.push((0..n as u32).map(|u| g.mul(u as ElementId, e) as u32).collect());
    }
    for &e in v2 {
        let ei = g.inv(e);
        fwd.push((0..n as u32).map(|u| g.mul(ei, u as ElementId) as u32).collect());
    }
    CosetTable::new(n, fwd)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TreeStrategy {
    Bfs,
    Dfs,
}

/// Schreier data over a spanning tree of the coset graph: tree edges rewrite
/// to nothing, every other forward edge is a subgroup generator.
pub struct SchreierRewriter {
    sgen_of_edge: HashMap<(u32, usize), usize>,
    pub n_sgens: usize,
}

impl SchreierRewriter {
    pub fn new(table: &CosetTable, strategy: TreeStrategy) -> SchreierRewriter {
        let n = table.n_cosets;
        let mut tree_edge: Vec<(u32, usize)> = Vec::new();
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut frontier = std::collections::VecDeque::new();
        frontier.push_back(0u32);
        while let Some(u) = match strategy {
            TreeStrategy::Bfs => frontier.pop_front(),
            TreeStrategy::Dfs => frontier.pop_back(),
        } {
            for gi in 0..table.n_gens() {
                let v = table.fwd[gi][u as usize];
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    tree_edge.push((u, gi));
                    frontier.push_back(v);
                }
                let w = table.inv[gi][u as usize];
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    // reaching w along an inverse edge marks (w, gi) as tree
                    tree_edge.push((w, gi));
                    frontier.push_back(w);
                }
            }
        }
        assert!(seen.iter().all(|&x| x), "coset table must be transitive");
        let tree: std::collections::HashSet<(u32, usize)> = tree_edge.into_iter().collect();
        let mut sgen_of_edge = HashMap::new();
        let mut n_sgens = 0;
        for u in 0..n as u32 {
            for gi in 0..table.n_gens() {
                if !tree.contains(&(u, gi)) {
                    sgen_of_edge.insert((u, gi), n_sgens);
                    n_sgens += 1;
                }
            }
        }
        SchreierRewriter {
            sgen_of_edge,
            n_sgens,
        }
    }

    /// Rewrite a word starting at `start` into Schreier generators; `None`
    /// when the word does not return to its starting coset.
    pub fn rewrite(&self, table: &CosetTable, start: u32, word: &[i32]) -> Option<Word> {
        let mut out: Word = Vec::new();
        let mut u = start;
        for &lit in word {
            if lit > 0 {
                let gi = (lit - 1) as usize;
                if let Some(&s) = self.sgen_of_edge.get(&(u, gi)) {
                    out.push(s as i32 + 1);
                }
                u = table.fwd[gi][u as usize];
            } else {
                let gi = (-lit - 1) as usize;
                let v = table.inv[gi][u as usize];
                if let Some(&s) = self.sgen_of_edge.get(&(v, gi)) {
                    out.push(-(s as i32 + 1));
                }
                u = v;
            }
        }
        (u == start).then(|| free_reduce(&out))
    }
}

/// Reidemeister-Schreier presentation of the subgroup realized by the table:
/// Schreier generators for the non-tree edges, relators rewritten over every
/// coset, freely reduced and deduplicated.
pub fn rewrite_subgroup(
    p: &FinitePresentation,
    table: &CosetTable,
    strategy: TreeStrategy,
) -> (FinitePresentation, SchreierRewriter) {
    assert_eq!(p.gens, table.n_gens());
    let rw = SchreierRewriter::new(table, strategy);
    let mut relators: Vec<Word> = Vec::new();
    for u in 0..table.n_cosets as u32 {
        for r in &p.relators {
            let w = rw
                .rewrite(table, u, r)
                .expect("presentation relators act trivially on cosets");
            if !w.is_empty() {
                relators.push(w);
            }
        }
    }
    (FinitePresentation::new(rw.n_sgens, relators), rw)
}
