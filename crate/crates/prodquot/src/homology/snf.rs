//! Smith normal form over the integers.
//!
//! Presentation matrices from Reidemeister-Schreier rewriting are large but
//! extremely sparse and almost every pivot is a unit, so a sparse
//! elimination peels unit pivots first (each contributing an invariant
//! factor 1) and the small remaining core goes through a dense reduction
//! with minimal-absolute-value pivoting. All arithmetic is checked `i128`;
//! on overflow the whole computation restarts with arbitrary precision.

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub(crate) trait Ent: Clone + PartialEq + Eq + Ord + std::fmt::Debug {
    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn is_unit(&self) -> bool;
    fn abs(&self) -> Self;
    fn csub(&self, o: &Self) -> Option<Self>;
    fn cmul(&self, o: &Self) -> Option<Self>;
    fn quot(&self, o: &Self) -> Self;
    fn to_u64(&self) -> u64;
    fn from_i64(v: i64) -> Self;
}

impl Ent for i128 {
    fn zero() -> Self {
        0
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs(&self) -> Self {
        i128::abs(*self)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn to_u64(&self) -> u64 {
        u64::try_from(*self).expect("invariant factor fits u64")
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
}

impl Ent for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_unit(&self) -> bool {
        Signed::abs(self) == BigInt::one()
    }
    fn abs(&self) -> Self {
        Signed::abs(self)
    }
    fn csub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn cmul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn quot(&self, o: &Self) -> Self {
        self / o
    }
    fn to_u64(&self) -> u64 {
        ToPrimitive::to_u64(self).expect("invariant factor fits u64")
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

struct Overflow;

/// `(rank, invariant factors > 1)` of the integer matrix given as sparse rows.
pub fn smith_invariants(rows: &[Vec<(u32, i64)>], n_cols: usize) -> (usize, Vec<u64>) {
    match run::<i128>(rows, n_cols) {
        Ok(r) => r,
        Err(Overflow) => run::<BigInt>(rows, n_cols)
            .unwrap_or_else(|_| unreachable!("arbitrary precision does not overflow")),
    }
}

/// Dense-input convenience used by oracle-style tests.
pub fn smith_invariants_dense(matrix: &[Vec<i64>]) -> (usize, Vec<u64>) {
    let n_cols = matrix.first().map_or(0, |r| r.len());
    let rows: Vec<Vec<(u32, i64)>> = matrix
        .iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(j, &v)| (j as u32, v))
                .collect()
        })
        .collect();
    smith_invariants(&rows, n_cols)
}

fn run<T: Ent>(input: &[Vec<(u32, i64)>], n_cols: usize) -> Result<(usize, Vec<u64>), Overflow> {
    // deduplicated sparse rows
    let mut seen: HashSet<Vec<(u32, i64)>> = HashSet::new();
    let mut rows: Vec<HashMap<u32, T>> = Vec::new();
    for r in input {
        if r.is_empty() || !seen.insert(r.clone()) {
            continue;
        }
        rows.push(r.iter().map(|&(c, v)| (c, T::from_i64(v))).collect());
    }
    let mut live: Vec<bool> = vec![true; rows.len()];
    let mut col_rows: Vec<HashSet<usize>> = vec![HashSet::new(); n_cols];
    for (i, r) in rows.iter().enumerate() {
        for (&c, _) in r {
            col_rows[c as usize].insert(i);
        }
    }
    let mut col_live = vec![true; n_cols];
    let mut rank = 0usize;

    // unit-pivot peeling
    loop {
        let mut best: Option<(usize, usize, u32)> = None; // score, row, col
        for (i, r) in rows.iter().enumerate() {
            if !live[i] {
                continue;
            }
            for (&c, v) in r {
                if v.is_unit() {
                    let score = (r.len() - 1) * (col_rows[c as usize].len() - 1);
                    let cand = (score, i, c);
                    if best.map_or(true, |b| cand < b) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, pr, pc)) = best else { break };
        let pivot_row: Vec<(u32, T)> = rows[pr].iter().map(|(&c, v)| (c, v.clone())).collect();
        let p = rows[pr][&pc].clone();
        let others: Vec<usize> = col_rows[pc as usize]
            .iter()
            .copied()
            .filter(|&i| i != pr && live[i])
            .collect();
        for i in others {
            let a = rows[i][&pc].clone();
            let q = a.quot(&p);
            for (c, v) in &pivot_row {
                let delta = q.cmul(v).ok_or(Overflow)?;
                let cur = rows[i].get(c).cloned().unwrap_or_else(T::zero);
                let next = cur.csub(&delta).ok_or(Overflow)?;
                if next.is_zero() {
                    rows[i].remove(c);
                    col_rows[*c as usize].remove(&i);
                } else {
                    if !rows[i].contains_key(c) {
                        col_rows[*c as usize].insert(i);
                    }
                    rows[i].insert(*c, next);
                }
            }
            if rows[i].is_empty() {
                live[i] = false;
            }
        }
        for (c, _) in &pivot_row {
            col_rows[*c as usize].remove(&pr);
        }
        live[pr] = false;
        col_live[pc as usize] = false;
        rank += 1;
    }

    // dense core
    let live_cols: Vec<u32> = (0..n_cols as u32).filter(|&c| col_live[c as usize]).collect();
    let col_pos: HashMap<u32, usize> = live_cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut dense: Vec<Vec<T>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        if !live[i] || r.is_empty() {
            continue;
        }
        let mut row = vec![T::zero(); live_cols.len()];
        for (&c, v) in r {
            row[col_pos[&c]] = v.clone();
        }
        dense.push(row);
    }
    let diag = dense_smith(dense)?;
    rank += diag.len();
    let mut factors: Vec<u64> = diag.iter().map(|d| d.to_u64()).collect();
    normalize_chain(&mut factors);
    factors.retain(|&d| d > 1);
    Ok((rank, factors))
}

/// Diagonalize by row/column reduction with minimal-absolute-value pivoting;
/// returns the nonzero diagonal (not yet a divisor chain).
fn dense_smith<T: Ent>(mut m: Vec<Vec<T>>) -> Result<Vec<T>, Overflow> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut k = 0usize;
    while k < rows.min(cols) {
        let mut best: Option<(T, usize, usize)> = None;
        for i in k..rows {
            for j in k..cols {
                if m[i][j].is_zero() {
                    continue;
                }
                let a = m[i][j].abs();
                if best.as_ref().map_or(true, |(b, _, _)| a < *b) {
                    best = Some((a, i, j));
                }
            }
        }
        let Some((_, pi, pj)) = best else { break };
        m.swap(k, pi);
        for row in m.iter_mut() {
            row.swap(k, pj);
        }
        loop {
            let mut disturbed = false;
            for i in k + 1..rows {
                if m[i][k].is_zero() {
                    continue;
                }
                let q = m[i][k].quot(&m[k][k]);
                if !q.is_zero() {
                    for j in k..cols {
                        let delta = q.cmul(&m[k][j]).ok_or(Overflow)?;
                        m[i][j] = m[i][j].csub(&delta).ok_or(Overflow)?;
                    }
                }
                if !m[i][k].is_zero() {
                    m.swap(k, i);
                    disturbed = true;
                }
            }
            if disturbed {
                continue;
            }
            for j in k + 1..cols {
                if m[k][j].is_zero() {
                    continue;
                }
                let q = m[k][j].quot(&m[k][k]);
                if !q.is_zero() {
                    for i in k..rows {
                        let delta = q.cmul(&m[i][k]).ok_or(Overflow)?;
                        m[i][j] = m[i][j].csub(&delta).ok_or(Overflow)?;
                    }
                }
                if !m[k][j].is_zero() {
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                    disturbed = true;
                }
            }
            if !disturbed {
                break;
            }
        }
        diag.push(m[k][k].abs());
        k += 1;
    }
    Ok(diag)
}

/// Turn a diagonal multiset into the divisor chain `d_1 | d_2 | ...` by
/// repeated gcd/lcm exchanges.
pub fn normalize_chain(factors: &mut Vec<u64>) {
    factors.retain(|&d| d != 0);
    loop {
        let mut changed = false;
        for i in 0..factors.len() {
            for j in i + 1..factors.len() {
                let (a, b) = (factors[i], factors[j]);
                let g = num_integer::gcd(a, b);
                if g != a {
                    factors[i] = g;
                    factors[j] = a / g * b;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
        factors.sort_unstable();
    }
    factors.sort_unstable();
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn diagonal_cases() {
        // <x | x^6>
        assert_eq!(smith_invariants_dense(&[vec![6]]), (1, vec![6]));
        // diag(2,3) ~ Z/6
        assert_eq!(
            smith_invariants_dense(&[vec![2, 0], vec![0, 3]]),
            (2, vec![6])
        );
        // no relators: rank 0
        assert_eq!(smith_invariants(&[], 4), (0, vec![]));
        // unit pivot kills the factor
        assert_eq!(
            smith_invariants_dense(&[vec![1, 2], vec![0, 5]]),
            (2, vec![5])
        );
    }

    #[test]
    fn chain_normalization() {
        let mut f = vec![4, 6];
        normalize_chain(&mut f);
        assert_eq!(f, vec![2, 12]);
        let mut f = vec![10, 10];
        normalize_chain(&mut f);
        assert_eq!(f, vec![10, 10]);
    }

    /// Divisor-chain oracle via gcds of k x k minors, in exact arithmetic.
    fn minors_oracle(m: &[Vec<i64>]) -> (usize, Vec<u64>) {
        use num_bigint::BigInt;
        let rows = m.len();
        let cols = m.first().map_or(0, |r| r.len());
        let mut dk: Vec<BigInt> = vec![<BigInt as num_traits::One>::one()];
        for k in 1..=rows.min(cols) {
            let mut g = <BigInt as num_traits::Zero>::zero();
            for rsel in combos(rows, k) {
                for csel in combos(cols, k) {
                    let d = det(m, &rsel, &csel);
                    g = num_integer::Integer::gcd(&g, &d);
                }
            }
            dk.push(g);
        }
        let mut rank = 0;
        let mut factors = Vec::new();
        for k in 1..dk.len() {
            if num_traits::Zero::is_zero(&dk[k]) {
                break;
            }
            rank = k;
            let f = (&dk[k] / &dk[k - 1]).magnitude().to_u64_digits();
            factors.push(if f.is_empty() { 0 } else { f[0] });
        }
        factors.retain(|&d| d > 1);
        (rank, factors)
    }

    fn combos(n: usize, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        fn rec(n: usize, k: usize, from: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if cur.len() == k {
                out.push(cur.clone());
                return;
            }
            for i in from..n {
                cur.push(i);
                rec(n, k, i + 1, cur, out);
                cur.pop();
            }
        }
        rec(n, k, 0, &mut cur, &mut out);
        out
    }

    fn det(m: &[Vec<i64>], rsel: &[usize], csel: &[usize]) -> num_bigint::BigInt {
        use num_bigint::BigInt;
        let k = rsel.len();
        if k == 1 {
            return BigInt::from(m[rsel[0]][csel[0]]);
        }
        let mut acc = <BigInt as num_traits::Zero>::zero();
        for (i, &r) in rsel.iter().enumerate() {
            let rest: Vec<usize> = rsel.iter().copied().filter(|&x| x != r).collect();
            let sub = det(m, &rest, &csel[1..]);
            let term = BigInt::from(m[r][csel[0]]) * sub;
            if i % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn random_matrices_match_minors_oracle() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        for _ in 0..250 {
            let rows = rng.gen_range(1..=6);
            let cols = rng.gen_range(1..=6);
            let m: Vec<Vec<i64>> = (0..rows)
                .map(|_| (0..cols).map(|_| rng.gen_range(-5..=5)).collect())
                .collect();
            assert_eq!(
                smith_invariants_dense(&m),
                minors_oracle(&m),
                "mismatch on {m:?}"
            );
        }
    }
}
