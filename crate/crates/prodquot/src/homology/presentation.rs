//! Finite presentations as words of signed generator indices.

use crate::groups::{ElementId, FiniteGroup, GroupError};
use crate::signatures::Signature;

/// A word: nonzero signed 1-based generator indices, `-i` meaning the inverse.
pub type Word = Vec<i32>;

/// Free reduction: cancel adjacent `x x^-1` pairs.
pub fn free_reduce(word: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(word.len());
    for &lit in word {
        if out.last() == Some(&-lit) {
            out.pop();
        } else {
            out.push(lit);
        }
    }
    out
}

pub fn invert_word(word: &[i32]) -> Word {
    word.iter().rev().map(|&l| -l).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinitePresentation {
    pub gens: usize,
    pub relators: Vec<Word>,
}

impl FinitePresentation {
    /// Plain-text dump for external cross-checking: one `gens` line, then
    /// every relator as its signed index sequence.
    pub fn dump(&self) -> String {
        let mut out = format!("gens {}\n", self.gens);
        for r in &self.relators {
            out.push_str("rel");
            for &l in r {
                out.push_str(&format!(" {l}"));
            }
            out.push('\n');
        }
        out
    }

    pub fn new(gens: usize, relators: Vec<Word>) -> FinitePresentation {
        let mut reduced: Vec<Word> = relators
            .into_iter()
            .map(|w| {
                debug_assert!(w.iter().all(|&l| l != 0 && l.unsigned_abs() as usize <= gens));
                free_reduce(&w)
            })
            .filter(|w| !w.is_empty())
            .collect();
        reduced.sort();
        reduced.dedup();
        FinitePresentation {
            gens,
            relators: reduced,
        }
    }
}

/// `<c_1..c_r | c_i^{m_i}, c_1...c_r>` for the signature's descending entries.
pub fn polygonal_presentation(t: &Signature) -> FinitePresentation {
    let r = t.len();
    let mut relators: Vec<Word> = Vec::with_capacity(r + 1);
    for (i, &m) in t.entries().iter().enumerate() {
        relators.push(vec![i as i32 + 1; m as usize]);
    }
    relators.push((1..=r as i32).collect());
    FinitePresentation::new(r, relators)
}

/// The homomorphism to `G` sending `c_i` to the vector's `i`-th entry;
/// errors when the entry orders do not match the signature.
pub fn polygonal_evaluation(
    g: &FiniteGroup,
    t: &Signature,
    v: &[ElementId],
) -> Result<Vec<ElementId>, GroupError> {
    if v.len() != t.len()
        || v.iter()
            .zip(t.entries())
            .any(|(&e, &m)| g.order_of(e) as i64 != m)
    {
        return Err(GroupError::NotInGroup);
    }
    Ok(v.to_vec())
}

/// Direct product: generators concatenated, relators of both sides plus all
/// cross commutators.
pub fn product_presentation(
    p1: &FinitePresentation,
    p2: &FinitePresentation,
) -> FinitePresentation {
    let n1 = p1.gens as i32;
    let mut relators: Vec<Word> = p1.relators.clone();
    for r in &p2.relators {
        relators.push(r.iter().map(|&l| if l > 0 { l + n1 } else { l - n1 }).collect());
    }
    for i in 1..=n1 {
        for j in 1..=p2.gens as i32 {
            relators.push(vec![-i, -(n1 + j), i, n1 + j]);
        }
    }
    FinitePresentation::new(p1.gens + p2.gens, relators)
}
