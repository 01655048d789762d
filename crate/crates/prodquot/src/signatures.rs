//! Signatures of polygonal groups and the numerology attached to a basket.
//!
//! A signature is the multiset `{m_1,...,m_r}` of branching orders of a
//! polygonal group `T(m_1,...,m_r)`. For a fixed basket the quantities
//! `Theta(t) = -2 + sum(1 - 1/m_i)` and `alpha(t, B) = (K^2 + k)/(4 Theta)`
//! bound everything: `alpha + 1` is the genus of the covering curve, and
//! `|G| = 8 alpha(t_1) alpha(t_2) / (K^2 + k)`. Enumeration applies the
//! divisibility and size bounds exactly, with an exception budget of
//! `floor(|basket|/2)` entries allowed to violate the sharper inequalities.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::baskets::{enumerate_baskets, Basket};
use crate::singtypes::Rational;

/// A signature, stored sorted descending; entries are all `>= 2`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature {
    m: Vec<i64>,
}

impl Signature {
    pub fn new<I: IntoIterator<Item = i64>>(entries: I) -> Signature {
        let mut m: Vec<i64> = entries.into_iter().collect();
        assert!(m.iter().all(|&x| x >= 2), "signature entries must be >= 2");
        m.sort_unstable_by(|a, b| b.cmp(a));
        Signature { m }
    }

    /// Entries in descending order.
    pub fn entries(&self) -> &[i64] {
        &self.m
    }

    pub fn len(&self) -> usize {
        self.m.len()
    }

    pub fn is_empty(&self) -> bool {
        self.m.is_empty()
    }

    /// Table-style form with ascending entries and exponents, e.g. `2^3, 4`.
    pub fn table_form(&self) -> String {
        let mut asc = self.m.clone();
        asc.reverse();
        let mut parts = Vec::new();
        let mut i = 0;
        while i < asc.len() {
            let mut j = i;
            while j < asc.len() && asc[j] == asc[i] {
                j += 1;
            }
            if j - i == 1 {
                parts.push(format!("{}", asc[i]));
            } else {
                parts.push(format!("{}^{}", asc[i], j - i));
            }
            i = j;
        }
        parts.join(", ")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.table_form())
    }
}

impl fmt::Debug for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.table_form())
    }
}

/// `Theta(t) = -2 + sum(1 - 1/m_i)`.
pub fn theta(t: &Signature) -> Rational {
    let mut acc = Rational::from_integer(-2);
    for &m in t.entries() {
        acc += Rational::one() - Rational::new(1, m);
    }
    acc
}

/// `alpha(t, B) = (12 + k - e) / (6 Theta(t))`; requires `Theta(t) > 0`.
pub fn alpha(t: &Signature, basket: &Basket) -> Rational {
    let th = theta(t);
    assert!(th > Rational::zero(), "alpha needs Theta > 0");
    let inv = basket.invariants();
    (Rational::from_integer(12) + inv.k - inv.e) / (Rational::from_integer(6) * th)
}

/// `|G| = 8 alpha(t_1) alpha(t_2) / (K^2 + k)`; non-integral outputs are
/// valid and act as a filter upstream.
pub fn group_order(t1: &Signature, t2: &Signature, basket: &Basket) -> Rational {
    let inv = basket.invariants();
    let k2 = Rational::from_integer(8) - inv.b / Rational::from_integer(3);
    Rational::from_integer(8) * alpha(t1, basket) * alpha(t2, basket) / (k2 + inv.k)
}

/// All multisets of `length` entries from `[2..=floor(h_bound/C)]`, of which
/// at most `floor(card_basket/2)` exceed `floor(s_bound/C)`, where
/// `C = max(1/6, (length-3)/2)`.
pub fn candidate_signatures(
    card_basket: usize,
    length: usize,
    s_bound: Rational,
    h_bound: Rational,
) -> Vec<Signature> {
    assert!(s_bound <= h_bound);
    let c = std::cmp::max(Rational::new(1, 6), Rational::new(length as i64 - 3, 2));
    let s = (s_bound / c).floor().to_integer();
    let h = (h_bound / c).floor().to_integer();
    let exc = card_basket / 2;
    let mut out = Vec::new();
    if length <= exc {
        for t in multisets(2, h, length) {
            out.push(Signature::new(t));
        }
    } else {
        for t in multisets(2, s, length) {
            out.push(Signature::new(t));
        }
        for k in 1..=exc {
            for begin in multisets(2, s, length - k) {
                for end in multisets(s + 1, h, k) {
                    let mut t = begin.clone();
                    t.extend_from_slice(&end);
                    out.push(Signature::new(t));
                }
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Multisets of `size` values drawn from `lo..=hi`, as ascending vectors.
fn multisets(lo: i64, hi: i64, size: usize) -> Vec<Vec<i64>> {
    fn rec(lo: i64, hi: i64, size: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        let start = *cur.last().unwrap_or(&lo);
        for v in start.max(lo)..=hi {
            cur.push(v);
            rec(lo, hi, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if size == 0 {
        out.push(Vec::new());
        return out;
    }
    if lo > hi {
        return out;
    }
    let mut cur = Vec::with_capacity(size);
    rec(lo, hi, size, &mut cur, &mut out);
    out
}

/// All signatures numerically compatible with the basket: `0 < Theta <= maxTh`
/// with `maxTh = (K^2 + k)/4`, integral `alpha`, every entry dividing
/// `2 alpha I`, and at most `floor(|basket|/2)` entries failing `m | alpha`.
pub fn signatures_for_basket(basket: &Basket) -> Vec<Signature> {
    let inv = basket.invariants();
    let idx = Rational::from_integer(basket.gorenstein_index());
    let k2 = Rational::from_integer(8) - inv.b / Rational::from_integer(3);
    let max_th = (k2 + inv.k) / Rational::from_integer(4);
    if max_th <= Rational::zero() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let len_cap = (Rational::from_integer(2) * max_th + Rational::from_integer(4))
        .floor()
        .to_integer();
    for h in 3..=len_cap {
        let cands = candidate_signatures(
            basket.len(),
            h as usize,
            max_th + Rational::one(),
            Rational::from_integer(2) * idx * max_th + Rational::one(),
        );
        for cand in cands {
            let th = theta(&cand);
            if th <= Rational::zero() || th > max_th {
                continue;
            }
            let alpha = max_th / th;
            if !alpha.is_integer() {
                continue;
            }
            if !cand.entries().iter().all(|&m| {
                (Rational::from_integer(2) * alpha * idx / Rational::from_integer(m)).is_integer()
            }) {
                continue;
            }
            let bads = cand
                .entries()
                .iter()
                .filter(|&&m| !(alpha / Rational::from_integer(m)).is_integer())
                .count();
            if bads <= basket.len() / 2 {
                out.push(cand);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// For each possible basket of `K^2`, the nonempty set of compatible signatures.
pub fn list_of_types(k2: i64) -> Vec<(Basket, Vec<Signature>)> {
    assert!((1..=8).contains(&k2), "K^2 must lie in 1..=8");
    let target = Rational::from_integer(3 * (8 - k2));
    let mut out = Vec::new();
    for basket in enumerate_baskets(target) {
        let sigs = signatures_for_basket(&basket);
        if !sigs.is_empty() {
            out.push((basket, sigs));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::singtypes::QuotSing;

    fn sig(entries: &[i64]) -> Signature {
        Signature::new(entries.iter().copied())
    }

    fn q(a: i64, n: i64) -> QuotSing {
        QuotSing::new(a, n).unwrap()
    }

    fn rat(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    #[test]
    fn theta_examples() {
        assert_eq!(theta(&sig(&[2, 3, 7])), Rational::new(1, 42));
        assert_eq!(theta(&sig(&[3, 3, 3, 3])), Rational::new(2, 3));
        assert_eq!(theta(&sig(&[2, 2, 2])), Rational::new(-1, 2));
    }

    #[test]
    fn alpha_examples() {
        assert_eq!(alpha(&sig(&[3, 3, 3, 3]), &Basket::empty()), rat(3));
        let fake = Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]);
        assert_eq!(alpha(&sig(&[3, 3, 7]), &fake), rat(9));
        assert_eq!(alpha(&sig(&[2, 4, 7]), &fake), rat(16));
    }

    #[test]
    fn group_order_examples() {
        let half2 = Basket::from_sings([q(1, 2), q(1, 2)]);
        assert_eq!(
            group_order(&sig(&[2, 5, 5]), &sig(&[2, 3, 3, 3]), &half2),
            rat(60)
        );
        assert_eq!(
            group_order(&sig(&[2, 2, 2, 2, 4]), &sig(&[2, 4, 6]), &half2),
            rat(48)
        );
        let fake = Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]);
        assert_eq!(
            group_order(&sig(&[3, 3, 7]), &sig(&[2, 4, 7]), &fake),
            rat(168)
        );
    }

    #[test]
    fn candidate_signature_shapes() {
        // no exceptions allowed: plain bounded multisets
        let c = candidate_signatures(0, 3, rat(12), rat(12));
        assert!(c.contains(&sig(&[2, 2, 2])));
        assert!(c.contains(&sig(&[72, 72, 72])));
        assert!(!c.contains(&sig(&[73, 2, 2])));
        // budget of one exception
        let c = candidate_signatures(2, 4, rat(2), rat(4));
        assert!(c.contains(&sig(&[4, 4, 4, 4])));
        assert!(c.contains(&sig(&[8, 4, 4, 4])));
        assert!(!c.contains(&sig(&[8, 8, 4, 4])));
        // exception budget floor(1/2) = 0
        let c = candidate_signatures(1, 5, rat(2), rat(4));
        for t in &c {
            assert!(t.entries().iter().all(|&m| m <= 2));
        }
    }

    #[test]
    fn signatures_for_half2() {
        let b = Basket::from_sings([q(1, 2), q(1, 2)]);
        let sigs = signatures_for_basket(&b);
        for want in [
            sig(&[2, 5, 5]),
            sig(&[2, 3, 3, 3]),
            sig(&[2, 4, 10]),
            sig(&[2, 4, 6]),
            sig(&[2, 7, 7]),
            sig(&[3, 3, 4]),
            sig(&[2, 4, 5]),
            sig(&[2, 2, 2, 2, 4]),
            sig(&[2, 2, 2, 4]),
        ] {
            assert!(sigs.contains(&want), "missing {want:?}");
        }
        let inv = b.invariants();
        let k2 = rat(8) - inv.b / rat(3);
        for t in &sigs {
            let a = alpha(t, &b);
            assert!(a.is_integer() && a >= Rational::one());
            // r <= (K^2 + k)/2 + 4
            assert!(
                rat(t.len() as i64) <= (k2 + inv.k) / rat(2) + rat(4),
                "length bound violated for {t:?}"
            );
        }
    }

    #[test]
    fn signatures_for_fake_godeaux_basket() {
        let b = Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]);
        let sigs = signatures_for_basket(&b);
        assert!(sigs.contains(&sig(&[3, 3, 7])));
        assert!(sigs.contains(&sig(&[2, 4, 7])));
    }

    #[test]
    fn signatures_for_empty_basket() {
        let sigs = signatures_for_basket(&Basket::empty());
        assert!(sigs.contains(&sig(&[5, 5, 5])));
        assert!(sigs.contains(&sig(&[2, 2, 2, 2, 2])));
        assert!(sigs.contains(&sig(&[2, 2, 2, 2, 2, 2])));
        assert!(sigs.contains(&sig(&[2, 4, 6])));
        assert!(sigs.contains(&sig(&[2, 2, 4, 4])));
    }

    #[test]
    fn list_of_types_examples() {
        let l8 = list_of_types(8);
        assert_eq!(l8.len(), 1);
        assert!(l8[0].0.is_empty());
        let l5 = list_of_types(5);
        let entry = l5
            .iter()
            .find(|(b, _)| *b == Basket::from_sings([q(1, 3), q(2, 3)]))
            .expect("basket {1/3, 2/3} admits signatures");
        assert!(entry.1.contains(&sig(&[2, 4, 6])));
    }

    /// Brute-force filter equivalence for K^2 = 6: enumerate all multisets
    /// with entries <= 100 and length <= 10, keep those satisfying the
    /// post-conditions, and compare.
    #[test]
    fn filter_equivalence_k2_6() {
        let b = Basket::from_sings([q(1, 2), q(1, 2)]);
        let inv = b.invariants();
        let idx = rat(b.gorenstein_index());
        let k2 = rat(8) - inv.b / rat(3);
        let max_th = (k2 + inv.k) / rat(4); // = 3/2
        let mut brute = Vec::new();
        // Ascending multisets with entries <= 100 and length <= 10. Adding an
        // entry m >= 2 raises theta by 1 - 1/m, so any prefix already above
        // maxTh can be cut, and within a level the increments grow with m.
        let mut cur: Vec<i64> = Vec::new();
        fn grow(
            cur: &mut Vec<i64>,
            th: Rational,
            max_th: Rational,
            idx: Rational,
            half: usize,
            brute: &mut Vec<Signature>,
        ) {
            if cur.len() >= 3 && th > Rational::zero() {
                let a = max_th / th;
                if a.is_integer()
                    && cur
                        .iter()
                        .all(|&m| (rat_i(2) * a * idx / rat_i(m)).is_integer())
                    && cur
                        .iter()
                        .filter(|&&m| !(a / rat_i(m)).is_integer())
                        .count()
                        <= half
                {
                    brute.push(Signature::new(cur.iter().copied()));
                }
            }
            if cur.len() == 10 {
                return;
            }
            let lo = *cur.last().unwrap_or(&2);
            for m in lo..=100 {
                let next = th + Rational::one() - Rational::new(1, m);
                if next > max_th {
                    break;
                }
                cur.push(m);
                grow(cur, next, max_th, idx, half, brute);
                cur.pop();
            }
        }
        fn rat_i(n: i64) -> Rational {
            Rational::from_integer(n)
        }
        grow(
            &mut cur,
            rat(-2),
            max_th,
            idx,
            b.len() / 2,
            &mut brute,
        );
        brute.sort();
        brute.dedup();
        assert_eq!(signatures_for_basket(&b), brute);
    }

    #[test]
    fn table_form_matches() {
        assert_eq!(sig(&[2, 2, 2, 4]).table_form(), "2^3, 4");
        assert_eq!(sig(&[5, 5, 2]).table_form(), "2, 5^2");
        assert_eq!(sig(&[3, 3, 7]).to_string(), "3^2, 7");
    }
}
