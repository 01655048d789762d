//! Enumeration of baskets of singularities with prescribed invariant `B`.
//!
//! A basket is a multiset of cyclic quotient singularities; for a
//! product-quotient surface with `chi = 1` and given `K^2` the basket
//! satisfies `B(basket) = 3(8 - K^2)` and admits a representation (choosing
//! `a` or `a'` per point) whose numerators sum to an integer. Enumeration
//! peels the singularity of largest `B` first, recursing on the exact
//! remainder; a memoized variant is provided for the performance study since
//! this stage dominates the running time as `K^2` decreases.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::singtypes::{QuotSing, Rational};

/// A multiset of singularities, each stored as its canonical representative,
/// kept sorted for multiset equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Basket {
    sings: Vec<QuotSing>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BasketInvariants {
    pub b: Rational,
    pub e: Rational,
    pub k: Rational,
}

impl Basket {
    pub fn empty() -> Basket {
        Basket { sings: Vec::new() }
    }

    pub fn from_sings<I: IntoIterator<Item = QuotSing>>(iter: I) -> Basket {
        let mut sings: Vec<QuotSing> = iter.into_iter().map(|q| q.canonical()).collect();
        sings.sort();
        Basket { sings }
    }

    pub fn parse(s: &str) -> Result<Basket, crate::singtypes::SingError> {
        let body = s.trim().trim_start_matches('{').trim_end_matches('}');
        if body.trim().is_empty() {
            return Ok(Basket::empty());
        }
        let mut sings = Vec::new();
        for part in body.split(',') {
            sings.push(QuotSing::parse(part)?);
        }
        Ok(Basket::from_sings(sings))
    }

    pub fn sings(&self) -> &[QuotSing] {
        &self.sings
    }

    pub fn len(&self) -> usize {
        self.sings.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sings.is_empty()
    }

    pub fn invariants(&self) -> BasketInvariants {
        let b: Rational = self.sings.iter().map(|q| q.inv_b()).sum();
        let e: Rational = self.sings.iter().map(|q| q.inv_e()).sum();
        BasketInvariants { b, e, k: b - e - e }
    }

    /// lcm of the indices of the members; 1 for the empty basket.
    pub fn gorenstein_index(&self) -> i64 {
        self.sings
            .iter()
            .fold(1i64, |acc, q| num_integer::lcm(acc, q.index()))
    }

    fn with(&self, q: QuotSing) -> Basket {
        let mut sings = self.sings.clone();
        let c = q.canonical();
        let pos = sings.partition_point(|x| *x < c);
        sings.insert(pos, c);
        Basket { sings }
    }

    /// Multiset equality after canonicalising both sides (`a` vs `a'` per point).
    pub fn equivalent(&self, other: &Basket) -> bool {
        self == &Basket::from_sings(other.sings.iter().copied())
    }
}

impl fmt::Display for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.sings.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for Basket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Exponent-grouped form used in table-style reports, e.g. `1/7, 2/7^2`.
pub fn basket_table_form(b: &Basket) -> String {
    if b.is_empty() {
        return "-".to_string();
    }
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    let sings = b.sings();
    while i < sings.len() {
        let mut j = i;
        while j < sings.len() && sings[j] == sings[i] {
            j += 1;
        }
        if j - i == 1 {
            parts.push(format!("{}", sings[i]));
        } else {
            parts.push(format!("{}^{}", sings[i], j - i));
        }
        i = j;
    }
    parts.join(", ")
}

/// Every singularity `q` with `B(q) <= max_b`, one canonical representative
/// each, sorted by `B` descending.
///
/// Candidates come from Hirzebruch-Jung strings of weight at most
/// `ceil(max_b) - 1`, which is exhaustive since `B` strictly exceeds the
/// string weight.
pub fn rats_with_bounded_b(max_b: Rational) -> Vec<QuotSing> {
    let cap = max_b.ceil().to_integer() - 1;
    let mut found: HashSet<QuotSing> = HashSet::new();
    // DFS over strings [b_1,...,b_l], entries >= 2, total weight <= cap
    let mut stack: Vec<Vec<i64>> = (2..=cap).map(|b| vec![b]).collect();
    while let Some(s) = stack.pop() {
        let w: i64 = s.iter().sum();
        let q = crate::singtypes::HJString::new(s.clone()).unwrap().rat_num();
        if q.inv_b() <= max_b {
            found.insert(q.canonical());
        }
        for b in 2..=(cap - w) {
            let mut next = s.clone();
            next.push(b);
            stack.push(next);
        }
    }
    let mut out: Vec<QuotSing> = found.into_iter().collect();
    out.sort_by(|x, y| {
        y.inv_b()
            .cmp(&x.inv_b())
            .then(x.denom().cmp(&y.denom()))
            .then(x.numer().cmp(&y.numer()))
    });
    out
}

/// Enumeration strategy for [`baskets_with_b`]-based search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EnumStrategy {
    /// Peel the largest-`B` singularity first and recurse on the remainder.
    #[default]
    Greedy,
    /// Same recursion with memoization on (suffix, remainder).
    Memoized,
}

fn cut_prefix(rats: &[QuotSing], max_b: Rational) -> &[QuotSing] {
    let mut i = 0;
    while i < rats.len() && rats[i].inv_b() > max_b {
        i += 1;
    }
    &rats[i..]
}

fn greedy_rec(rats: &[QuotSing], target: Rational, out: &mut HashSet<Basket>) {
    let mut rats = cut_prefix(rats, target);
    while let Some(&big) = rats.first() {
        let b = big.inv_b();
        if b == target {
            out.insert(Basket::from_sings([big]));
        } else {
            let mut sub = HashSet::new();
            greedy_rec(rats, target - b, &mut sub);
            for basket in sub {
                out.insert(basket.with(big));
            }
        }
        rats = &rats[1..];
    }
}

fn memo_rec<'a>(
    rats: &'a [QuotSing],
    target: Rational,
    memo: &mut HashMap<(usize, Rational), Vec<Basket>>,
) -> Vec<Basket> {
    let cut = cut_prefix(rats, target);
    let key = (cut.len(), target);
    if let Some(hit) = memo.get(&key) {
        return hit.clone();
    }
    let mut out = Vec::new();
    for (i, &big) in cut.iter().enumerate() {
        let b = big.inv_b();
        if b == target {
            out.push(Basket::from_sings([big]));
        } else {
            for basket in memo_rec(&cut[i..], target - b, memo) {
                out.push(basket.with(big));
            }
        }
    }
    out.sort();
    out.dedup();
    memo.insert(key, out.clone());
    out
}

/// All multisets of singularities whose `B` invariants sum exactly to `target`.
pub fn baskets_with_b(target: Rational) -> Vec<Basket> {
    baskets_with_b_strategy(target, EnumStrategy::Greedy)
}

pub fn baskets_with_b_strategy(target: Rational, strategy: EnumStrategy) -> Vec<Basket> {
    assert!(target > Rational::zero(), "target must be positive");
    let rats = rats_with_bounded_b(target);
    let mut out: Vec<Basket> = match strategy {
        EnumStrategy::Greedy => {
            let mut set = HashSet::new();
            greedy_rec(&rats, target, &mut set);
            set.into_iter().collect()
        }
        EnumStrategy::Memoized => {
            let mut memo = HashMap::new();
            memo_rec(&rats, target, &mut memo)
        }
    };
    out.sort();
    out.dedup();
    out
}

/// True iff some choice of representative (`a` or `a'` independently per
/// member) makes the numerator sum integral.
pub fn test_basket_integrality(b: &Basket) -> bool {
    fn rec(sings: &[QuotSing], acc: Rational) -> bool {
        match sings.split_first() {
            None => acc.is_integer(),
            Some((&q, rest)) => {
                if rec(rest, acc + q.as_ratio()) {
                    return true;
                }
                let inv = q.inverse_type();
                inv != q && rec(rest, acc + inv.as_ratio())
            }
        }
    }
    rec(b.sings(), Rational::zero())
}

/// The possible baskets of singularities for `(K^2, 1)` with
/// `target = 3(8 - K^2)`: exact-`B` multisets passing the integrality test.
/// `target = 0` yields exactly the empty basket (the smooth case).
pub fn enumerate_baskets(target: Rational) -> Vec<Basket> {
    enumerate_baskets_strategy(target, EnumStrategy::Greedy)
}

pub fn enumerate_baskets_strategy(target: Rational, strategy: EnumStrategy) -> Vec<Basket> {
    if target.is_zero() {
        return vec![Basket::empty()];
    }
    baskets_with_b_strategy(target, strategy)
        .into_iter()
        .filter(test_basket_integrality)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singtypes::Rational;

    fn q(a: i64, n: i64) -> QuotSing {
        QuotSing::new(a, n).unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn invariants_examples() {
        assert_eq!(
            Basket::empty().invariants(),
            BasketInvariants {
                b: rat(0),
                e: rat(0),
                k: rat(0)
            }
        );
        let b = Basket::from_sings([q(1, 3), q(2, 3)]);
        let inv = b.invariants();
        assert_eq!(inv.b, rat(9));
        assert_eq!(inv.e, Rational::new(13, 3));
        assert_eq!(inv.k, Rational::new(1, 3));

        let fake = Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]);
        let inv = fake.invariants();
        assert_eq!(inv.b, rat(21));
        assert_eq!(inv.k, Rational::new(41, 7));
    }

    #[test]
    fn gorenstein_examples() {
        assert_eq!(Basket::empty().gorenstein_index(), 1);
        assert_eq!(Basket::from_sings([q(1, 3), q(2, 3)]).gorenstein_index(), 3);
        assert_eq!(
            Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]).gorenstein_index(),
            7
        );
    }

    #[test]
    fn bounded_rats_examples() {
        assert_eq!(rats_with_bounded_b(rat(3)), vec![q(1, 2)]);
        let r = rats_with_bounded_b(Rational::new(11, 3));
        assert!(r.contains(&q(1, 3)) && r.contains(&q(1, 2)));
        assert!(rats_with_bounded_b(rat(2)).is_empty());
        // descending by B
        let r = rats_with_bounded_b(rat(9));
        for w in r.windows(2) {
            assert!(w[0].inv_b() >= w[1].inv_b());
        }
        assert!(r.contains(&q(5, 13)));
    }

    #[test]
    fn baskets_with_b_examples() {
        assert_eq!(baskets_with_b(rat(3)), vec![Basket::from_sings([q(1, 2)])]);
        let got = baskets_with_b(rat(6));
        let expect = vec![
            Basket::from_sings([q(1, 2), q(1, 2)]),
            Basket::from_sings([q(2, 5)]),
        ];
        assert_eq!(got.len(), 2);
        for b in expect {
            assert!(got.contains(&b));
        }
        let got = baskets_with_b(rat(9));
        assert!(got.contains(&Basket::from_sings([q(1, 3), q(2, 3)])));
        assert!(got.contains(&Basket::from_sings([q(1, 2), q(1, 2), q(1, 2)])));
    }

    #[test]
    fn integrality_examples() {
        assert!(test_basket_integrality(&Basket::empty()));
        assert!(test_basket_integrality(&Basket::from_sings([
            q(1, 3),
            q(2, 3)
        ])));
        assert!(!test_basket_integrality(&Basket::from_sings([q(1, 3)])));
        assert!(!test_basket_integrality(&Basket::from_sings([q(5, 13)])));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(enumerate_baskets(rat(0)), vec![Basket::empty()]);
        let got = enumerate_baskets(rat(9));
        assert!(got.contains(&Basket::from_sings([q(1, 3), q(2, 3)])));
        for b in &got {
            assert!(test_basket_integrality(b));
            assert_eq!(b.invariants().b, rat(9));
            assert!(b.len() as i64 <= 3);
        }
        let got = enumerate_baskets(rat(12));
        assert!(got.contains(&Basket::from_sings([q(1, 2), q(1, 2), q(1, 2), q(1, 2)])));
        assert!(got.contains(&Basket::from_sings([q(2, 5), q(2, 5)])));
    }

    /// Independent brute force: all singularities q with B(q) <= target drawn
    /// from denominators up to 27 (the continuant of a string is at most the
    /// product of its entries, and products with weight < 10 stay below 28),
    /// combined by DFS into exact-sum multisets.
    fn brute_force(target: Rational) -> Vec<Basket> {
        let mut universe = Vec::new();
        for n in 2..=27 {
            for a in 1..n {
                if let Ok(qs) = QuotSing::new(a, n) {
                    let c = qs.canonical();
                    if c == qs && c.inv_b() <= target {
                        universe.push(c);
                    }
                }
            }
        }
        universe.sort();
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn dfs(
            universe: &[QuotSing],
            from: usize,
            left: Rational,
            cur: &mut Vec<QuotSing>,
            out: &mut Vec<Basket>,
        ) {
            if left.is_zero() {
                out.push(Basket::from_sings(cur.iter().copied()));
                return;
            }
            for i in from..universe.len() {
                if universe[i].inv_b() <= left {
                    cur.push(universe[i]);
                    dfs(universe, i, left - universe[i].inv_b(), cur, out);
                    cur.pop();
                }
            }
        }
        dfs(&universe, 0, target, &mut cur, &mut out);
        out.sort();
        out.dedup();
        out
    }

    #[test]
    fn completeness_oracle_small_targets() {
        for t in 3..=9 {
            let target = rat(t);
            let brute = brute_force(target);
            let greedy = baskets_with_b_strategy(target, EnumStrategy::Greedy);
            let memo = baskets_with_b_strategy(target, EnumStrategy::Memoized);
            assert_eq!(greedy, brute, "greedy mismatch at target {t}");
            assert_eq!(memo, brute, "memoized mismatch at target {t}");
        }
    }

    #[test]
    fn table_baskets_present() {
        // every basket of the paper's tables appears for its K^2
        let rows: &[(i64, &[(i64, i64)])] = &[
            (8, &[]),
            (6, &[(1, 2), (1, 2)]),
            (5, &[(1, 3), (2, 3)]),
            (4, &[(1, 2), (1, 2), (1, 2), (1, 2)]),
            (4, &[(2, 5), (2, 5)]),
            (3, &[(1, 5), (4, 5)]),
            (3, &[(1, 3), (1, 2), (1, 2), (2, 3)]),
            (2, &[(1, 3), (1, 3), (2, 3), (2, 3)]),
            (2, &[(1, 2), (1, 2), (1, 2), (1, 2), (1, 2), (1, 2)]),
            (2, &[(1, 4), (1, 2), (1, 2), (3, 4)]),
        ];
        for (k2, sings) in rows {
            let target = rat(3 * (8 - k2));
            let basket = Basket::from_sings(sings.iter().map(|&(a, n)| q(a, n)));
            assert!(
                enumerate_baskets(target).contains(&basket),
                "missing basket {basket} for K^2 = {k2}"
            );
        }
    }

    #[test]
    fn table_form_display() {
        let b = Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]);
        assert_eq!(basket_table_form(&b), "1/7, 2/7^2");
        assert_eq!(b.to_string(), "{1/7, 2/7, 2/7}");
        assert_eq!(Basket::parse("{1/7, 2/7, 2/7}").unwrap(), b);
        assert_eq!(Basket::parse("{}").unwrap(), Basket::empty());
    }
}
