//! A self-contained finite-group engine on permutation representations.
//!
//! Every group, however constructed, is carried as a permutation group: the
//! natural action when generators are given explicitly, the right regular
//! representation for semidirect products. Groups small enough are fully
//! materialized (element list in a deterministic order, inverse/order/class
//! tables, and a multiplication table), which is what the downstream searches
//! operate on; larger groups keep only the stabilizer chain and refuse
//! element-level operations.

mod aut;
mod catalogue;
mod chain;
mod perm;
mod semidirect;
mod smallgroups;

pub use aut::{automorphisms, isomorphic, GroupMap};
pub use catalogue::{Catalogue, CatalogueEntry};
pub use perm::Permutation;
pub use semidirect::{semidirect_product, Actor};
pub use smallgroups::groups_of_order_upto_16;

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use chain::StabChain;

/// Index of an element in the materialized element list.
pub type ElementId = u16;

/// Groups searched by the pipeline stay at or below this order.
pub const DEFAULT_ELEMENT_CAP: u64 = 2000;
/// Above this order the automorphism search refuses.
pub const DEFAULT_AUT_CAP: u64 = 512;
const MULT_TABLE_CAP: u64 = 4096;

#[derive(Debug, Error)]
pub enum GroupError {
    #[error("generators have mismatched degrees")]
    DegreeMismatch,
    #[error("image vector is not a permutation")]
    NotAPermutation,
    #[error("cannot parse cycles: {0}")]
    CycleParse(String),
    #[error("group of order {order} exceeds the materialization cap {cap}")]
    NotMaterialized { order: u64, cap: u64 },
    #[error("automorphism search refused: order {order} exceeds cap {cap}")]
    AutCapExceeded { order: u64, cap: u64 },
    #[error("element is not in the group")]
    NotInGroup,
    #[error("unknown catalogue group `{0}`")]
    UnknownGroup(String),
    #[error("catalogue parse error: {0}")]
    CatalogueParse(String),
    #[error("order assertion failed for `{name}`: computed {got}, file says {want}")]
    OrderAssertion { name: String, got: u64, want: u64 },
    #[error("cannot parse word `{0}`")]
    WordParse(String),
    #[error("actor matrix is not invertible modulo the modulus")]
    MatrixNotInvertible,
    #[error("actor matrices do not define an action of the actor group")]
    ActionNotWellDefined,
    #[error("actor relation `{0}` does not hold")]
    RelationFailed(String),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

/// A finite permutation group, fully materialized when its order is at most
/// the cap passed at construction.
pub struct FiniteGroup {
    name: Option<String>,
    degree: usize,
    generators: Vec<Permutation>,
    gen_names: Vec<String>,
    gen_ids: Vec<ElementId>,
    order: u64,
    chain: StabChain,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElementId>,
    inverse: Vec<ElementId>,
    elem_order: Vec<u32>,
    class_of: Vec<u32>,
    class_sizes: Vec<u32>,
    mult: Option<Vec<ElementId>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FiniteGroup({}, degree {}, order {})",
            self.name.as_deref().unwrap_or("?"),
            self.degree,
            self.order
        )
    }
}

impl FiniteGroup {
    pub fn from_generators(gens: Vec<Permutation>) -> Result<FiniteGroup, GroupError> {
        FiniteGroup::with_cap(gens, DEFAULT_ELEMENT_CAP)
    }

    pub fn with_cap(gens: Vec<Permutation>, cap: u64) -> Result<FiniteGroup, GroupError> {
        if gens.is_empty() {
            return Err(GroupError::DegreeMismatch);
        }
        let degree = gens[0].degree();
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch);
        }
        let chain = StabChain::new(&gens, degree);
        let order = chain.order();

        let mut group = FiniteGroup {
            name: None,
            degree,
            gen_names: (1..=gens.len()).map(|i| format!("g{i}")).collect(),
            generators: gens,
            gen_ids: Vec::new(),
            order,
            chain,
            elements: Vec::new(),
            index: HashMap::new(),
            inverse: Vec::new(),
            elem_order: Vec::new(),
            class_of: Vec::new(),
            class_sizes: Vec::new(),
            mult: None,
        };
        if order <= cap {
            group.materialize();
        }
        Ok(group)
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = Some(name.into());
    }

    pub fn set_gen_names(&mut self, names: Vec<String>) {
        assert_eq!(names.len(), self.generators.len());
        self.gen_names = names;
    }

    fn materialize(&mut self) {
        // closure, then sort lexicographically; the identity lands at id 0
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut queue = vec![Permutation::identity(self.degree)];
        seen.insert(queue[0].clone(), ());
        let mut qi = 0;
        while qi < queue.len() {
            let cur = queue[qi].clone();
            qi += 1;
            for g in &self.generators {
                let next = cur.compose(g);
                if !seen.contains_key(&next) {
                    seen.insert(next.clone(), ());
                    queue.push(next);
                }
            }
        }
        debug_assert_eq!(queue.len() as u64, self.order);
        queue.sort();
        self.index = queue
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i as ElementId))
            .collect();
        self.elements = queue;
        self.gen_ids = self.generators.iter().map(|g| self.index[g]).collect();
        self.inverse = self
            .elements
            .iter()
            .map(|p| self.index[&p.inverse()])
            .collect();
        self.elem_order = self.elements.iter().map(|p| p.order()).collect();
        if self.order <= MULT_TABLE_CAP {
            let n = self.order as usize;
            let mut table = vec![0 as ElementId; n * n];
            for (i, p) in self.elements.iter().enumerate() {
                for (j, q) in self.elements.iter().enumerate() {
                    table[i * n + j] = self.index[&p.compose(q)];
                }
            }
            self.mult = Some(table);
        }
        self.compute_classes();
    }

    fn compute_classes(&mut self) {
        let n = self.order as usize;
        let mut class_of = vec![u32::MAX; n];
        let mut sizes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cls = sizes.len() as u32;
            let mut stack = vec![start as ElementId];
            class_of[start] = cls;
            let mut size = 0u32;
            while let Some(x) = stack.pop() {
                size += 1;
                for gi in self.gen_ids.clone() {
                    let y = self.conj(x, gi);
                    if class_of[y as usize] == u32::MAX {
                        class_of[y as usize] = cls;
                        stack.push(y);
                    }
                }
            }
            sizes.push(size);
        }
        self.class_of = class_of;
        self.class_sizes = sizes;
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> Result<&[ElementId], GroupError> {
        self.ensure_materialized()?;
        Ok(&self.gen_ids)
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    pub fn is_materialized(&self) -> bool {
        !self.elements.is_empty()
    }

    fn ensure_materialized(&self) -> Result<(), GroupError> {
        if self.is_materialized() {
            Ok(())
        } else {
            Err(GroupError::NotMaterialized {
                order: self.order,
                cap: 0,
            })
        }
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.chain.contains(p)
    }

    pub fn element_count(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, id: ElementId) -> &Permutation {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, p: &Permutation) -> Result<ElementId, GroupError> {
        self.ensure_materialized()?;
        self.index.get(p).copied().ok_or(GroupError::NotInGroup)
    }

    pub fn identity(&self) -> ElementId {
        0
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        match &self.mult {
            Some(t) => t[a as usize * self.order as usize + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inverse[a as usize]
    }

    #[inline]
    pub fn order_of(&self, a: ElementId) -> u32 {
        self.elem_order[a as usize]
    }

    /// `a^g = g^-1 a g`.
    #[inline]
    pub fn conj(&self, a: ElementId, g: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(g), a), g)
    }

    pub fn pow(&self, a: ElementId, e: u32) -> ElementId {
        let mut acc = self.identity();
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn class_of(&self, a: ElementId) -> u32 {
        self.class_of[a as usize]
    }

    pub fn class_size(&self, a: ElementId) -> u32 {
        self.class_sizes[self.class_of[a as usize] as usize]
    }

    pub fn class_count(&self) -> usize {
        self.class_sizes.len()
    }

    /// Exactly the elements of order `k`, ascending by id.
    pub fn elements_of_order(&self, k: u32) -> Result<Vec<ElementId>, GroupError> {
        self.ensure_materialized()?;
        Ok((0..self.element_count() as u32)
            .map(|i| i as ElementId)
            .filter(|&i| self.elem_order[i as usize] == k)
            .collect())
    }

    /// Closure of the given elements together with the identity, ascending.
    pub fn subgroup_closure(&self, elems: &[ElementId]) -> Vec<ElementId> {
        let mut in_set = vec![false; self.element_count()];
        in_set[0] = true;
        let mut members = vec![0 as ElementId];
        let mut qi = 0;
        while qi < members.len() {
            let cur = members[qi];
            qi += 1;
            for &g in elems {
                let next = self.mul(cur, g);
                if !in_set[next as usize] {
                    in_set[next as usize] = true;
                    members.push(next);
                }
            }
        }
        members.sort_unstable();
        members
    }

    /// True iff the closure of `elems` is the whole group.
    pub fn generates(&self, elems: &[ElementId]) -> bool {
        self.subgroup_closure(elems).len() as u64 == self.order
    }

    /// Some `h` with `x^h = y`, or `None`; scans ids ascending so the witness
    /// is deterministic.
    pub fn conjugacy_witness(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        if self.class_of[x as usize] != self.class_of[y as usize] {
            return None;
        }
        (0..self.element_count() as u32)
            .map(|i| i as ElementId)
            .find(|&g| self.conj(x, g) == y)
    }

    pub fn centralizer(&self, x: ElementId) -> Vec<ElementId> {
        (0..self.element_count() as u32)
            .map(|i| i as ElementId)
            .filter(|&g| self.mul(g, x) == self.mul(x, g))
            .collect()
    }

    /// Right-coset data for the subgroup generated by `h_gens`: one
    /// representative per coset `Hg` plus the map element -> coset index.
    pub fn right_transversal(&self, h_gens: &[ElementId]) -> (Vec<ElementId>, Vec<u32>) {
        let h = self.subgroup_closure(h_gens);
        let mut coset_of = vec![u32::MAX; self.element_count()];
        let mut reps = Vec::new();
        for gi in 0..self.element_count() as u32 {
            let g = gi as ElementId;
            if coset_of[g as usize] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            for &x in &h {
                coset_of[self.mul(x, g) as usize] = idx;
            }
        }
        (reps, coset_of)
    }

    /// Order of the abelianization `G/[G,G]`.
    pub fn abelianization_order(&self) -> u64 {
        let mut comms = Vec::new();
        for &a in &self.gen_ids {
            for &b in &self.gen_ids {
                let c = self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b));
                if c != 0 {
                    comms.push(c);
                }
            }
        }
        // normal closure: conjugate and re-close until stable
        let mut sub = self.subgroup_closure(&comms);
        loop {
            let mut extra = Vec::new();
            for &x in &sub {
                for &g in &self.gen_ids {
                    let y = self.conj(x, g);
                    if sub.binary_search(&y).is_err() {
                        extra.push(y);
                    }
                }
            }
            if extra.is_empty() {
                break;
            }
            sub.extend_from_slice(&extra);
            let all: Vec<ElementId> = sub.clone();
            sub = self.subgroup_closure(&all);
        }
        self.order / sub.len() as u64
    }

    pub fn is_perfect(&self) -> bool {
        self.abelianization_order() == 1
    }

    /// Evaluate a word like `y5^2 x1 y2^-1` over the named generators.
    pub fn evaluate_word(&self, word: &str) -> Result<Permutation, GroupError> {
        let mut acc = Permutation::identity(self.degree);
        let cleaned = word.replace('*', " ");
        for token in cleaned.split_whitespace() {
            let (name, exp) = match token.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>()
                        .map_err(|_| GroupError::WordParse(word.to_string()))?,
                ),
                None => (token, 1),
            };
            let gi = self.gen_names.iter().position(|g| g == name).ok_or_else(|| {
                GroupError::WordParse(format!("unknown generator `{name}` in `{word}`"))
            })?;
            let base = if exp >= 0 {
                self.generators[gi].clone()
            } else {
                self.generators[gi].inverse()
            };
            for _ in 0..exp.unsigned_abs() {
                acc = acc.compose(&base);
            }
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(gens: &[&str], d: usize) -> FiniteGroup {
        FiniteGroup::from_generators(
            gens.iter()
                .map(|s| Permutation::parse_cycles(s, d).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn id_of(g: &FiniteGroup, s: &str) -> ElementId {
        g.id_of(&Permutation::parse_cycles(s, g.degree()).unwrap())
            .unwrap()
    }

    #[test]
    fn from_generators_orders() {
        assert_eq!(group(&["(1 2)"], 2).order(), 2);
        assert_eq!(group(&["(3 6 7)(4 5 8)", "(1 8 2)(4 5 6)"], 8).order(), 168);
        assert_eq!(group(&["(1 2)", "(1 3)", "(1 4)", "(5 6)"], 6).order(), 48);
    }

    #[test]
    fn element_table_consistency() {
        let g = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert_eq!(g.element_count(), 60);
        assert!(g.element(0).is_identity());
        for i in 0..g.element_count() as ElementId {
            assert_eq!(g.mul(i, g.inv(i)), 0);
            assert_eq!(g.mul(0, i), i);
        }
    }

    #[test]
    fn elements_of_order_counts() {
        let z4 = group(&["(1 2 3 4)"], 4);
        assert_eq!(z4.elements_of_order(2).unwrap().len(), 1);
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert_eq!(a5.elements_of_order(5).unwrap().len(), 24);
        assert_eq!(a5.elements_of_order(4).unwrap().len(), 0);
    }

    #[test]
    fn generates_examples() {
        let z22 = group(&["(1 2)", "(3 4)"], 4);
        let a = id_of(&z22, "(1 2)");
        let b = id_of(&z22, "(3 4)");
        assert!(z22.generates(&[a, b]));
        let z4 = group(&["(1 2 3 4)"], 4);
        let sq = id_of(&z4, "(1 3)(2 4)");
        assert!(!z4.generates(&[sq]));
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert!(a5.generates(&[id_of(&a5, "(1 2 3 4 5)"), id_of(&a5, "(1 2)(3 4)")]));
    }

    #[test]
    fn conjugacy_and_centralizer() {
        let s3 = group(&["(1 2 3)", "(1 2)"], 3);
        let t1 = id_of(&s3, "(1 2)");
        let t2 = id_of(&s3, "(1 3)");
        assert!(s3.conjugacy_witness(t1, t2).is_some());
        assert_eq!(s3.conjugacy_witness(t1, t1), Some(0));
        let r = id_of(&s3, "(1 2 3)");
        assert_eq!(s3.centralizer(r).len(), 3);
        assert_eq!(s3.centralizer(0).len(), 6);

        // the two order-7 classes of PSL(2,7) on 8 points
        let psl = group(&["(3 6 7)(4 5 8)", "(1 8 2)(4 5 6)"], 8);
        let a = id_of(&psl, "(1 8 2 4 3 7 5)");
        let b = id_of(&psl, "(1 5 8 2 3 4 6)");
        assert!(psl.conjugacy_witness(a, b).is_none());
    }

    #[test]
    fn transversal_counts() {
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let c5 = id_of(&a5, "(1 2 3 4 5)");
        let (reps, coset_of) = a5.right_transversal(&[c5]);
        assert_eq!(reps.len(), 12);
        let mut seen = std::collections::HashSet::new();
        for &r in &reps {
            assert!(seen.insert(coset_of[r as usize]));
        }
        let (all, _) = a5.right_transversal(&[]);
        assert_eq!(all.len(), 60);
        let (one, _) = a5.right_transversal(&[c5, id_of(&a5, "(1 2 3)")]);
        assert_eq!(one.len(), 1);
    }

    #[test]
    fn brute_force_order_agreement() {
        // stabilizer-chain order vs element enumeration for several groups
        for (gens, d) in [
            (vec!["(1 2 3 4 5)", "(1 2 3)"], 5),
            (vec!["(1 2 3 4)", "(1 2)"], 4),
            (vec!["(3 6 7)(4 5 8)", "(1 8 2)(4 5 6)"], 8),
            (vec!["(1 2)", "(1 3)", "(1 4)", "(5 6)"], 6),
            (vec!["(1 2 3)", "(4 5 6)", "(4 5)"], 6),
        ] {
            let g = group(&gens, d);
            assert_eq!(g.order() as usize, g.element_count());
        }
    }

    #[test]
    fn perfectness() {
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        assert!(a5.is_perfect());
        let s4 = group(&["(1 2 3 4)", "(1 2)"], 4);
        assert!(!s4.is_perfect());
        assert_eq!(s4.abelianization_order(), 2);
    }

    #[test]
    fn word_evaluation() {
        let mut g = group(&["(1 2 3)", "(1 2)"], 3);
        g.set_gen_names(vec!["r".into(), "s".into()]);
        let w = g.evaluate_word("r^2 s").unwrap();
        let r = Permutation::parse_cycles("(1 2 3)", 3).unwrap();
        let s = Permutation::parse_cycles("(1 2)", 3).unwrap();
        assert_eq!(w, r.compose(&r).compose(&s));
        assert!(g.evaluate_word("q").is_err());
    }
}
