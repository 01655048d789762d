//! Per-candidate geometry: induced singularities, numerical invariants and
//! the minimality criterion.
//!
//! The singular points of `X = (C_1 x C_2)/G` over a pair of branch points
//! correspond to orbits of `<g_1>` on the coset space `G/<g_2>`; each orbit
//! with nontrivial stabilizer contributes a cyclic quotient singularity
//! whose type is read off from the first power coincidence
//! `g_1^{d_1 a_1} = (g_2^{d_2 a_2})^rep`. Two independent routes compute
//! this set: a double-coset sweep with first-match semantics, and the
//! orbit-by-orbit stabilizer computation; they are asserted equal on all
//! shipped fixtures.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::baskets::{Basket, BasketInvariants};
use crate::groups::{ElementId, FiniteGroup};
use crate::signatures::{alpha, Signature};
use crate::singtypes::{QuotSing, Rational};

/// Singularities contributed by one pair of stabilizer generators, as the
/// sorted multiset of types `a/n`.
pub fn basket_by_pair(g: &FiniteGroup, g1: ElementId, g2: ElementId) -> Vec<QuotSing> {
    let o1 = g.order_of(g1) as i64;
    let o2 = g.order_of(g2) as i64;
    let delta = num_integer::gcd(o1, o2);
    let mut out = Vec::new();
    if delta == 1 || g1 == g.identity() || g2 == g.identity() {
        return out;
    }
    let alpha1 = (o1 / delta) as u32;
    let alpha2 = (o2 / delta) as u32;
    let (reps, coset_of) = g.right_transversal(&[g2]);
    let h1 = g.subgroup_closure(&[g1]);

    // a representative per <g1>-orbit of right cosets of <g2>
    let mut chosen: HashSet<u32> = HashSet::new();
    let mut sweep = Vec::new();
    for (idx, &rep) in reps.iter().enumerate() {
        let covered = h1
            .iter()
            .any(|&h| chosen.contains(&coset_of[g.mul(rep, h) as usize]));
        if !covered {
            chosen.insert(idx as u32);
            sweep.push(rep);
        }
    }

    for &rep in &sweep {
        'd1loop: for d1 in 1..delta {
            let lhs = g.pow(g1, d1 as u32 * alpha1);
            for d2 in 1..delta {
                let rhs = g.conj(g.pow(g2, d2 as u32 * alpha2), rep);
                if lhs == rhs {
                    out.push(
                        QuotSing::from_ratio(Rational::new(d2, delta))
                            .expect("power coincidence yields a valid type"),
                    );
                    break 'd1loop;
                }
            }
        }
    }
    out.sort();
    out
}

/// Independent route: orbits of `<g1>` acting by left multiplication on the
/// left cosets `g <g2>`; each orbit with stabilizer of order `n > 1` yields
/// `1/n(1,a)` with `a = n gamma / o(g2)` from the minimal power coincidence.
pub fn basket_by_pair_oracle(g: &FiniteGroup, g1: ElementId, g2: ElementId) -> Vec<QuotSing> {
    let o2 = g.order_of(g2);
    let mut out = Vec::new();
    if g1 == g.identity() || g2 == g.identity() {
        return out;
    }
    let h2 = g.subgroup_closure(&[g2]);
    let n_el = g.element_count();
    let mut coset_of = vec![u32::MAX; n_el];
    let mut coset_rep: Vec<ElementId> = Vec::new();
    for x in 0..n_el as u32 {
        if coset_of[x as usize] != u32::MAX {
            continue;
        }
        let c = coset_rep.len() as u32;
        coset_rep.push(x as ElementId);
        for &h in &h2 {
            coset_of[g.mul(x as ElementId, h) as usize] = c;
        }
    }
    // orbits of left multiplication by g1 on cosets
    let mut seen = vec![false; coset_rep.len()];
    for c0 in 0..coset_rep.len() {
        if seen[c0] {
            continue;
        }
        let mut orbit_len = 0usize;
        let mut c = c0;
        loop {
            seen[c] = true;
            orbit_len += 1;
            c = coset_of[g.mul(g1, coset_rep[c]) as usize] as usize;
            if c == c0 {
                break;
            }
        }
        // stabilizer of the coset inside <g1> is generated by g1^orbit_len
        let delta = orbit_len as u32;
        let n = g.order_of(g1) / delta;
        if n == 1 {
            continue;
        }
        let x = coset_rep[c0];
        // g1^delta fixes x<g2>, so x^-1 g1^delta x lies in <g2>
        let inside = g.conj(g.pow(g1, delta), x);
        let gamma = (1..=o2)
            .find(|&k| g.pow(g2, k) == inside)
            .expect("stabilizer generator is a power of g2");
        let a = (n as i64 * gamma as i64) / o2 as i64;
        debug_assert_eq!((n as i64 * gamma as i64) % o2 as i64, 0);
        out.push(QuotSing::new(a, n as i64).expect("orbit data yields a valid type"));
    }
    out.sort();
    out
}

/// True iff the union of `basket_by_pair` over all entry pairs equals the
/// target, allowing either representative per point; fails fast on the first
/// unmatched singularity.
pub fn check_sings(g: &FiniteGroup, target: &Basket, v1: &[ElementId], v2: &[ElementId]) -> bool {
    let mut bas: Vec<QuotSing> = target.sings().to_vec();
    for &e1 in v1 {
        for &e2 in v2 {
            for r in basket_by_pair(g, e1, e2) {
                let r1 = r.inverse_type();
                if let Some(pos) = bas.iter().position(|&x| x == r) {
                    bas.remove(pos);
                } else if let Some(pos) = bas.iter().position(|&x| x == r1) {
                    bas.remove(pos);
                } else {
                    return false;
                }
            }
        }
    }
    bas.is_empty()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub enum Minimality {
    GuaranteedMinimal,
    Unknown,
}

impl fmt::Display for Minimality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Minimality::GuaranteedMinimal => write!(f, "guaranteed"),
            Minimality::Unknown => write!(f, "unknown"),
        }
    }
}

fn is_rdp(q: &QuotSing) -> bool {
    q.is_rdp()
}

fn matches_criterion(rep: &[QuotSing]) -> bool {
    // two conjugate points 1/n(1,a), 1/n(1,n-a)
    if rep.len() == 2 && rep[0].denom() == rep[1].denom() {
        let n = rep[0].denom();
        if rep[0].numer() + rep[1].numer() == n {
            let a = rep[0].numer().min(rep[1].numer());
            if n <= 4 || (n <= 7 && a != 1 && 2 * a < n) {
                return true;
            }
        }
    }
    // at most one non-RDP point with n <= 4, or n <= 7 and a != 1, plus RDPs
    {
        let non_rdp: Vec<&QuotSing> = rep.iter().filter(|q| !is_rdp(q)).collect();
        match non_rdp.len() {
            0 => return true,
            1 => {
                let p = non_rdp[0];
                if p.denom() <= 4 || (p.denom() <= 7 && p.numer() != 1) {
                    return true;
                }
            }
            _ => {}
        }
    }
    // two 1/3(1,1) points plus RDPs
    {
        let thirds = rep
            .iter()
            .filter(|q| q.denom() == 3 && q.numer() == 1)
            .count();
        if thirds == 2 && rep.iter().all(|q| is_rdp(q) || (q.denom() == 3 && q.numer() == 1)) {
            return true;
        }
    }
    // exactly {1/5(1,1), 1/5(1,4)}
    if rep.len() == 2 {
        let mut ns: Vec<(i64, i64)> = rep.iter().map(|q| (q.numer(), q.denom())).collect();
        ns.sort_unstable();
        if ns == vec![(1, 5), (4, 5)] {
            return true;
        }
    }
    false
}

/// The basket criterion: `GuaranteedMinimal` when some representation of the
/// basket matches one of the three minimality shapes, `Unknown` otherwise.
pub fn classify_minimality(basket: &Basket) -> Minimality {
    let sings = basket.sings();
    let k = sings.len();
    // try every representative choice (a or a' per point)
    for mask in 0..1u32 << k {
        let rep: Vec<QuotSing> = sings
            .iter()
            .enumerate()
            .map(|(i, q)| {
                if mask >> i & 1 == 1 {
                    q.inverse_type()
                } else {
                    *q
                }
            })
            .collect();
        if matches_criterion(&rep) {
            return Minimality::GuaranteedMinimal;
        }
    }
    Minimality::Unknown
}

/// Numerical invariants of an accepted candidate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub k2: i64,
    pub euler: Rational,
    /// genus of the curve with signature `t1` is `alpha(t2) + 1` and vice versa
    pub g1: i64,
    pub g2: i64,
}

/// Fills `K^2`, `e(S)` and the genera, asserting the two routes for `K^2`
/// agree and Noether's formula holds.
pub fn compute_invariants(
    g: &FiniteGroup,
    basket: &Basket,
    t1: &Signature,
    t2: &Signature,
) -> Invariants {
    let inv: BasketInvariants = basket.invariants();
    let a1 = alpha(t1, basket);
    let a2 = alpha(t2, basket);
    assert!(a1.is_integer() && a2.is_integer(), "non-integral genus data");
    let g1 = a2.to_integer() + 1;
    let g2 = a1.to_integer() + 1;
    let order = Rational::from_integer(g.order() as i64);
    let k2_geom =
        Rational::from_integer(8 * (g1 - 1) * (g2 - 1)) / order - inv.k;
    let k2_basket = Rational::from_integer(8) - inv.b / Rational::from_integer(3);
    assert_eq!(k2_geom, k2_basket, "K^2 routes disagree");
    assert!(k2_geom.is_integer(), "K^2 must be an integer");
    let euler = Rational::from_integer(4 * (g1 - 1) * (g2 - 1)) / order + inv.e;
    assert_eq!(
        k2_geom + euler,
        Rational::from_integer(12),
        "Noether consistency failed"
    );
    assert!(!euler.is_zero());
    Invariants {
        k2: k2_geom.to_integer(),
        euler,
        g1,
        g2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::Permutation;
    use crate::signatures::Signature;

    fn group(gens: &[&str], d: usize) -> FiniteGroup {
        FiniteGroup::from_generators(
            gens.iter()
                .map(|s| Permutation::parse_cycles(s, d).unwrap())
                .collect(),
        )
        .unwrap()
    }

    fn q(a: i64, n: i64) -> QuotSing {
        QuotSing::new(a, n).unwrap()
    }

    #[test]
    fn pair_basket_tiny_cases() {
        let z2 = group(&["(1 2)"], 2);
        let g1 = z2.id_of(&Permutation::parse_cycles("(1 2)", 2).unwrap()).unwrap();
        assert_eq!(basket_by_pair(&z2, g1, g1), vec![q(1, 2)]);

        // one <g1>-orbit on the cosets means one singular point: its type is
        // 2/3 for the pair (g, g^2) and 1/3 for (g, g)
        let z3 = group(&["(1 2 3)"], 3);
        let a = z3.id_of(&Permutation::parse_cycles("(1 2 3)", 3).unwrap()).unwrap();
        let b = z3.inv(a);
        assert_eq!(basket_by_pair(&z3, a, b), vec![q(2, 3)]);
        assert_eq!(basket_by_pair(&z3, a, a), vec![q(1, 3)]);
        assert_eq!(basket_by_pair_oracle(&z3, a, b), vec![q(2, 3)]);
    }

    #[test]
    fn oracle_matches_code_on_random_pairs() {
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        for g1 in (1..60).step_by(7) {
            for g2 in (1..60).step_by(5) {
                assert_eq!(
                    basket_by_pair(&a5, g1, g2),
                    basket_by_pair_oracle(&a5, g1, g2),
                    "mismatch at ({g1},{g2})"
                );
            }
        }
    }

    #[test]
    fn pair_basket_invariant_under_conjugation() {
        let s4 = group(&["(1 2 3 4)", "(1 2)"], 4);
        for g1 in [1u16, 5, 9] {
            for g2 in [2u16, 7, 11] {
                let base = basket_by_pair(&s4, g1, g2);
                for c in 0..24u16 {
                    assert_eq!(base, basket_by_pair(&s4, s4.conj(g1, c), s4.conj(g2, c)));
                }
            }
        }
    }

    #[test]
    fn check_sings_a5_fixture() {
        // K^2 = 5 data over A5 with basket {1/3, 2/3}
        let a5 = group(&["(1 2 3 4 5)", "(1 2 3)"], 5);
        let id = |s: &str| a5.id_of(&Permutation::parse_cycles(s, 5).unwrap()).unwrap();
        let v1 = vec![id("(1 5 2)"), id("(1 4)(2 3)"), id("(2 3)(4 5)"), id("(1 4)(2 5)")];
        let v2 = vec![id("(1 5 4 2 3)"), id("(1 3 4 2 5)"), id("(2 5 4)")];
        let target = Basket::from_sings([q(1, 3), q(2, 3)]);
        assert!(check_sings(&a5, &target, &v1, &v2));
        let wrong = Basket::from_sings([q(1, 3), q(1, 3)]);
        assert!(!check_sings(&a5, &wrong, &v1, &v2));
        // equivalent representations collapse to one canonical basket
        assert_eq!(
            Basket::from_sings([q(2, 5), q(3, 5)]),
            Basket::from_sings([q(2, 5), q(2, 5)])
        );
    }

    #[test]
    fn minimality_examples() {
        let m = |sings: &[(i64, i64)]| {
            classify_minimality(&Basket::from_sings(
                sings.iter().map(|&(a, n)| q(a, n)),
            ))
        };
        assert_eq!(m(&[(1, 2), (1, 2)]), Minimality::GuaranteedMinimal);
        assert_eq!(m(&[(2, 5), (2, 5)]), Minimality::GuaranteedMinimal);
        assert_eq!(m(&[(1, 7), (2, 7), (2, 7)]), Minimality::Unknown);
        assert_eq!(m(&[]), Minimality::GuaranteedMinimal);
        assert_eq!(m(&[(1, 3), (2, 3)]), Minimality::GuaranteedMinimal);
        assert_eq!(m(&[(1, 5), (4, 5)]), Minimality::GuaranteedMinimal);
        assert_eq!(
            m(&[(1, 3), (1, 3), (2, 3), (2, 3)]),
            Minimality::GuaranteedMinimal
        );
        assert_eq!(
            m(&[(1, 4), (1, 2), (1, 2), (3, 4)]),
            Minimality::GuaranteedMinimal
        );
        // a lone 1/5(1,1) is not covered by any case
        assert_eq!(m(&[(1, 5), (1, 2)]), Minimality::Unknown);
    }

    #[test]
    fn invariants_for_fake_godeaux_shape() {
        let psl = group(&["(3 6 7)(4 5 8)", "(1 8 2)(4 5 6)"], 8);
        let basket = Basket::from_sings([q(1, 7), q(2, 7), q(2, 7)]);
        let t1 = Signature::new([3, 3, 7]);
        let t2 = Signature::new([2, 4, 7]);
        let inv = compute_invariants(&psl, &basket, &t1, &t2);
        assert_eq!(inv.k2, 1);
        assert_eq!(inv.g1, 17);
        assert_eq!(inv.g2, 10);
        assert_eq!(inv.euler, Rational::from_integer(11));
    }

    #[test]
    fn invariants_etale_k2_8() {
        let z5sq = group(&["(1 2 3 4 5)", "(6 7 8 9 10)"], 10);
        let t = Signature::new([5, 5, 5]);
        let inv = compute_invariants(&z5sq, &Basket::empty(), &t, &t);
        assert_eq!(inv.k2, 8);
        assert_eq!(inv.g1, 6);
        assert_eq!(inv.g2, 6);
        assert_eq!(inv.euler, Rational::from_integer(4));
    }
}
