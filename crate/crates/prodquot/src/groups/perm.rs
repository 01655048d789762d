//! Permutations on `{1..d}`, stored 0-based as image vectors.
//!
//! Products compose left to right: `x^(p*q) = (x^p)^q`. This matches the
//! convention under which the shipped generating-vector data multiplies to
//! the identity.

use std::fmt;

use super::GroupError;

/// A permutation of `{0..degree-1}`; `images[i]` is the image of point `i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u16]>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Permutation {
        Permutation {
            images: (0..degree as u16).collect(),
        }
    }

    pub fn from_images(images: Vec<u16>) -> Result<Permutation, GroupError> {
        let d = images.len();
        let mut seen = vec![false; d];
        for &x in &images {
            if (x as usize) >= d || seen[x as usize] {
                return Err(GroupError::NotAPermutation);
            }
            seen[x as usize] = true;
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.images
    }

    pub fn apply(&self, point: u16) -> u16 {
        self.images[point as usize]
    }

    /// `self * other`: apply `self` first, then `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&x| other.images[x as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u16; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize] = i as u16;
        }
        Permutation {
            images: inv.into_boxed_slice(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i as u16 == x)
    }

    pub fn order(&self) -> u32 {
        let mut ord = 1u32;
        let mut p = self.clone();
        while !p.is_identity() {
            p = p.compose(self);
            ord += 1;
        }
        ord
    }

    /// Parse disjoint cycles in 1-based notation, e.g. `(1 2 3)(4 5)` or
    /// `(1,2,3)(4,5)`. The empty string or `()` is the identity.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Permutation, GroupError> {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        let mut moved = vec![false; degree];
        let body = s.trim();
        if body.is_empty() || body == "()" {
            return Ok(Permutation {
                images: images.into_boxed_slice(),
            });
        }
        if !body.starts_with('(') || !body.ends_with(')') {
            return Err(GroupError::CycleParse(s.to_string()));
        }
        for cycle in body[1..body.len() - 1].split(")(") {
            let pts: Vec<u16> = cycle
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|p| !p.is_empty())
                .map(|p| {
                    p.parse::<u16>()
                        .map_err(|_| GroupError::CycleParse(s.to_string()))
                })
                .collect::<Result<_, _>>()?;
            if pts.is_empty() {
                continue;
            }
            for &p in &pts {
                if p == 0 || p as usize > degree {
                    return Err(GroupError::CycleParse(format!(
                        "point {p} out of range 1..={degree} in `{s}`"
                    )));
                }
                if moved[(p - 1) as usize] {
                    return Err(GroupError::CycleParse(format!(
                        "point {p} repeated in `{s}`"
                    )));
                }
                moved[(p - 1) as usize] = true;
            }
            for i in 0..pts.len() {
                let from = pts[i] - 1;
                let to = pts[(i + 1) % pts.len()] - 1;
                images[from as usize] = to;
            }
        }
        Ok(Permutation {
            images: images.into_boxed_slice(),
        })
    }

    /// Cycle-notation string, 1-based; identity prints as `()`.
    pub fn to_cycles(&self) -> String {
        let mut s = String::new();
        let mut seen = vec![false; self.degree()];
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                seen[start] = true;
                continue;
            }
            s.push('(');
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    s.push(' ');
                }
                s.push_str(&(p + 1).to_string());
                first = false;
                p = self.images[p] as usize;
            }
            s.push(')');
        }
        if s.is_empty() {
            s.push_str("()");
        }
        s
    }

    /// Pad with fixed points up to a larger degree.
    pub fn extend_degree(&self, degree: usize) -> Permutation {
        assert!(degree >= self.degree());
        let mut images: Vec<u16> = self.images.to_vec();
        images.extend(self.degree() as u16..degree as u16);
        Permutation {
            images: images.into_boxed_slice(),
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_cycles())
    }
}
