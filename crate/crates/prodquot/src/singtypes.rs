//! Arithmetic of cyclic quotient singularities `1/n(1,a)`.
//!
//! A singularity of type `1/n(1,a)` (with `gcd(a,n) = 1`, `0 < a < n`) is
//! encoded as the reduced fraction `a/n`. Its minimal resolution is a
//! Hirzebruch-Jung string of rational curves with self-intersections `-b_i`,
//! where `n/a = [b_1,...,b_l]` as a continued fraction with all `b_i >= 2`.
//! The correction terms `k`, `e` and `B = 2e + k` attached to each
//! singularity drive the basket enumeration: `K^2 = 8 - B/3` for `chi = 1`.

use std::fmt;

use num_rational::Rational64;
use num_traits::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub type Rational = Rational64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SingError {
    #[error("invalid singularity type {a}/{n}: need 0 < a < n with gcd(a,n) = 1")]
    InvalidType { a: i64, n: i64 },
    #[error("invalid Hirzebruch-Jung string: entries must all be >= 2 and nonempty")]
    InvalidString,
    #[error("cannot parse `{0}` as a singularity type a/n")]
    Parse(String),
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a.abs()
}

/// A cyclic quotient singularity `1/n(1,a)`, stored as the reduced fraction `a/n`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuotSing {
    a: i64,
    n: i64,
}

impl PartialOrd for QuotSing {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuotSing {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        // ascending as rationals, denominator as tiebreak (cannot tie when reduced)
        (self.a * other.n)
            .cmp(&(other.a * self.n))
            .then(self.n.cmp(&other.n))
    }
}

impl QuotSing {
    pub fn new(a: i64, n: i64) -> Result<Self, SingError> {
        if n < 2 || a <= 0 || a >= n || gcd(a, n) != 1 {
            return Err(SingError::InvalidType { a, n });
        }
        Ok(QuotSing { a, n })
    }

    /// Build from an exact rational in (0,1); the fraction is reduced by `Rational`.
    pub fn from_ratio(r: Rational) -> Result<Self, SingError> {
        QuotSing::new(*r.numer(), *r.denom())
    }

    pub fn numer(&self) -> i64 {
        self.a
    }

    pub fn denom(&self) -> i64 {
        self.n
    }

    pub fn as_ratio(&self) -> Rational {
        Rational::new(self.a, self.n)
    }

    /// Continued-fraction expansion `n/a = [b_1,...,b_l]`, all entries `>= 2`.
    pub fn cont_frac(&self) -> HJString {
        let mut cf = Vec::new();
        let mut r = Rational::new(self.n, self.a);
        while !r.is_integer() {
            let c = r.ceil();
            cf.push(c.to_integer());
            r = Rational::one() / (c - r);
        }
        cf.push(r.to_integer());
        HJString(cf)
    }

    /// The type `1/n(1,a')` of the same point, with `a·a' = 1 (mod n)`.
    pub fn inverse_type(&self) -> QuotSing {
        let mut ap = 1i64;
        // n is small here; repeated addition beats carrying an extended gcd
        while (ap * self.a) % self.n != 1 {
            ap += 1;
        }
        QuotSing { a: ap, n: self.n }
    }

    /// Canonical representative of the pair `{a, a'}`: the smaller numerator.
    pub fn canonical(&self) -> QuotSing {
        let inv = self.inverse_type();
        if inv.a < self.a {
            inv
        } else {
            *self
        }
    }

    /// Correction term `k = -2 + (2 + a + a')/n + sum(b_i - 2) >= 0`.
    pub fn inv_k(&self) -> Rational {
        let ap = self.inverse_type().a;
        let cf = self.cont_frac();
        let tail: i64 = cf.entries().iter().map(|b| b - 2).sum();
        Rational::new(2 + self.a + ap, self.n) + Rational::from_integer(tail - 2)
    }

    /// Correction term `e = l + 1 - 1/n > 0`.
    pub fn inv_e(&self) -> Rational {
        Rational::from_integer(self.cont_frac().len() as i64 + 1) - Rational::new(1, self.n)
    }

    /// Correction term `B = 2e + k = (a + a')/n + sum(b_i) >= 3`.
    pub fn inv_b(&self) -> Rational {
        let ap = self.inverse_type().a;
        let wgt: i64 = self.cont_frac().entries().iter().sum();
        Rational::new(self.a + ap, self.n) + Rational::from_integer(wgt)
    }

    /// Gorenstein index `n / gcd(n, a+1)`.
    pub fn index(&self) -> i64 {
        self.n / gcd(self.n, self.a + 1)
    }

    /// Rational double point, i.e. type `1/n(1,n-1)`: every `b_i = 2`.
    pub fn is_rdp(&self) -> bool {
        self.a == self.n - 1
    }

    pub fn parse(s: &str) -> Result<Self, SingError> {
        let mut parts = s.trim().split('/');
        let a = parts
            .next()
            .and_then(|p| p.trim().parse::<i64>().ok())
            .ok_or_else(|| SingError::Parse(s.into()))?;
        let n = parts
            .next()
            .and_then(|p| p.trim().parse::<i64>().ok())
            .ok_or_else(|| SingError::Parse(s.into()))?;
        if parts.next().is_some() {
            return Err(SingError::Parse(s.into()));
        }
        QuotSing::new(a, n)
    }
}

impl fmt::Display for QuotSing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.n)
    }
}

impl fmt::Debug for QuotSing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.a, self.n)
    }
}

/// A Hirzebruch-Jung string `[b_1,...,b_l]`, every entry `>= 2`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct HJString(Vec<i64>);

impl HJString {
    pub fn new(entries: Vec<i64>) -> Result<Self, SingError> {
        if entries.is_empty() || entries.iter().any(|&b| b < 2) {
            return Err(SingError::InvalidString);
        }
        Ok(HJString(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HJString {
        let mut v = self.0.clone();
        v.reverse();
        HJString(v)
    }

    /// Sum of the entries; a strict lower bound for `B` of the singularity.
    pub fn weight(&self) -> i64 {
        self.0.iter().sum()
    }

    /// Inverse of [`QuotSing::cont_frac`]: evaluates `b_1 - 1/(b_2 - ...)` and
    /// returns the reduced `a/n` with `n/a` equal to that value.
    pub fn rat_num(&self) -> QuotSing {
        let mut x = Rational::from_integer(*self.0.last().expect("nonempty"));
        for &b in self.0.iter().rev().skip(1) {
            x = Rational::from_integer(b) - Rational::one() / x;
        }
        debug_assert!(x > Rational::one());
        QuotSing::from_ratio(Rational::one() / x).expect("HJ string evaluates into (0,1)")
    }
}

impl fmt::Display for HJString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, b) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use proptest::prelude::*;

    fn q(a: i64, n: i64) -> QuotSing {
        QuotSing::new(a, n).unwrap()
    }

    #[test]
    fn rejects_invalid_types() {
        assert!(QuotSing::new(2, 4).is_err());
        assert!(QuotSing::new(0, 3).is_err());
        assert!(QuotSing::new(3, 3).is_err());
        assert!(QuotSing::new(4, 3).is_err());
    }

    #[test]
    fn cont_frac_examples() {
        assert_eq!(q(1, 3).cont_frac().entries(), &[3]);
        assert_eq!(q(2, 5).cont_frac().entries(), &[3, 2]);
        assert_eq!(q(2, 7).cont_frac().entries(), &[4, 2]);
        assert_eq!(q(5, 13).cont_frac().entries(), &[3, 3, 2]);
    }

    #[test]
    fn rat_num_examples() {
        assert_eq!(HJString::new(vec![3]).unwrap().rat_num(), q(1, 3));
        assert_eq!(HJString::new(vec![2, 3]).unwrap().rat_num(), q(3, 5));
        assert_eq!(HJString::new(vec![4, 2]).unwrap().rat_num(), q(2, 7));
    }

    #[test]
    fn inverse_type_examples() {
        assert_eq!(q(1, 2).inverse_type(), q(1, 2));
        assert_eq!(q(2, 5).inverse_type(), q(3, 5));
        assert_eq!(q(2, 7).inverse_type(), q(4, 7));
    }

    #[test]
    fn invariant_examples() {
        assert_eq!(q(1, 2).inv_k(), Rational::zero());
        assert_eq!(q(1, 2).inv_e(), Rational::new(3, 2));
        assert_eq!(q(1, 2).inv_b(), Rational::from_integer(3));

        assert_eq!(q(1, 3).inv_k(), Rational::new(1, 3));
        assert_eq!(q(1, 3).inv_e(), Rational::new(5, 3));
        assert_eq!(q(1, 3).inv_b(), Rational::new(11, 3));

        assert_eq!(q(2, 5).inv_k(), Rational::new(2, 5));
        assert_eq!(q(2, 5).inv_e(), Rational::new(14, 5));
        assert_eq!(q(2, 5).inv_b(), Rational::from_integer(6));
    }

    #[test]
    fn index_examples() {
        assert_eq!(q(1, 2).index(), 1);
        assert_eq!(q(1, 3).index(), 3);
        assert_eq!(q(2, 3).index(), 1);
        assert_eq!(q(2, 7).index(), 7);
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(2, 5).to_string(), "2/5");
        assert_eq!(q(2, 5).cont_frac().to_string(), "[3,2]");
        assert_eq!(QuotSing::parse("2/5").unwrap(), q(2, 5));
        assert!(QuotSing::parse("5/2").is_err());
    }

    /// All valid types with denominator up to 50.
    fn all_upto(max_n: i64) -> Vec<QuotSing> {
        let mut v = Vec::new();
        for n in 2..=max_n {
            for a in 1..n {
                if let Ok(q) = QuotSing::new(a, n) {
                    v.push(q);
                }
            }
        }
        v
    }

    #[test]
    fn roundtrip_and_involution_exhaustive() {
        for q in all_upto(50) {
            assert_eq!(q.cont_frac().rat_num(), q, "round trip failed for {q}");
            assert_eq!(q.inverse_type().inverse_type(), q);
            assert_eq!(q.cont_frac().reversed(), q.inverse_type().cont_frac());
            assert_eq!(q.inv_b(), Rational::from_integer(2) * q.inv_e() + q.inv_k());
            assert!(q.inv_k() >= Rational::zero());
            assert!(q.inv_b() >= Rational::from_integer(3));
            assert_eq!(
                q.inv_b() == Rational::from_integer(3),
                q == QuotSing::new(1, 2).unwrap()
            );
            // B, e, k and the index only depend on the point, not the representative
            let inv = q.inverse_type();
            assert_eq!(q.inv_b(), inv.inv_b());
            assert_eq!(q.inv_e(), inv.inv_e());
            assert_eq!(q.inv_k(), inv.inv_k());
            assert_eq!(q.index(), inv.index());
            // alternative route for B
            let ap = inv.numer();
            assert_eq!(
                q.inv_b(),
                Rational::new(q.numer() + ap, q.denom())
                    + Rational::from_integer(q.cont_frac().weight())
            );
        }
    }

    proptest! {
        #[test]
        fn string_roundtrip(entries in proptest::collection::vec(2i64..6, 1..6)) {
            let s = HJString::new(entries).unwrap();
            let q = s.rat_num();
            prop_assert_eq!(q.cont_frac(), s);
        }
    }
}
