//! Schreier-Sims stabilizer chain: group order and membership testing.

use super::perm::Permutation;

struct Level {
    base: u16,
    /// transversal[p] = Some(g) with base^g = p
    transversal: Vec<Option<Permutation>>,
    gens: Vec<Permutation>,
}

impl Level {
    fn new(base: u16, degree: usize) -> Level {
        let mut transversal = vec![None; degree];
        transversal[base as usize] = Some(Permutation::identity(degree));
        Level {
            base,
            transversal,
            gens: Vec::new(),
        }
    }

    fn orbit_size(&self) -> u64 {
        self.transversal.iter().filter(|t| t.is_some()).count() as u64
    }
}

/// A stabilizer chain for the group generated by the input permutations.
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn new(gens: &[Permutation], degree: usize) -> StabChain {
        let mut chain = StabChain {
            degree,
            levels: Vec::new(),
        };
        for g in gens {
            if !g.is_identity() {
                chain.extend(0, g.clone());
            }
        }
        chain
    }

    pub fn order(&self) -> u64 {
        self.levels.iter().map(|l| l.orbit_size()).product()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.sift(p).is_identity()
    }

    /// Residue of `p` after stripping transversal factors level by level.
    fn sift(&self, p: &Permutation) -> Permutation {
        let mut cur = p.clone();
        for level in &self.levels {
            let image = cur.apply(level.base);
            match &level.transversal[image as usize] {
                Some(t) => cur = cur.compose(&t.inverse()),
                None => return cur,
            }
        }
        cur
    }

    fn extend(&mut self, from_level: usize, gen: Permutation) {
        if gen.is_identity() {
            return;
        }
        if from_level == self.levels.len() {
            let base = (0..self.degree as u16)
                .find(|&p| gen.apply(p) != p)
                .expect("non-identity permutation moves a point");
            self.levels.push(Level::new(base, self.degree));
        }
        // residue check against the chain below this level
        let residue = {
            let mut cur = gen.clone();
            for level in &self.levels[from_level..] {
                let image = cur.apply(level.base);
                match &level.transversal[image as usize] {
                    Some(t) => cur = cur.compose(&t.inverse()),
                    None => break,
                }
            }
            cur
        };
        let _ = residue;

        self.levels[from_level].gens.push(gen);
        self.rebuild_orbit(from_level);
    }

    /// Recompute the orbit/transversal of a level and push Schreier
    /// generators down the chain.
    fn rebuild_orbit(&mut self, li: usize) {
        loop {
            let mut queue: Vec<u16> = self.levels[li]
                .transversal
                .iter()
                .enumerate()
                .filter_map(|(p, t)| t.as_ref().map(|_| p as u16))
                .collect();
            let mut qi = 0;
            while qi < queue.len() {
                let p = queue[qi];
                qi += 1;
                let rep = self.levels[li].transversal[p as usize]
                    .clone()
                    .expect("queued points have representatives");
                for g in self.levels[li].gens.clone() {
                    let image = g.apply(p);
                    if self.levels[li].transversal[image as usize].is_none() {
                        self.levels[li].transversal[image as usize] = Some(rep.compose(&g));
                        queue.push(image);
                    }
                }
            }
            // Schreier generators: t(p) * g * t(p^g)^-1 stabilizes the base
            let mut new_below: Vec<Permutation> = Vec::new();
            {
                let level = &self.levels[li];
                for p in 0..self.degree as u16 {
                    let Some(rep) = &level.transversal[p as usize] else {
                        continue;
                    };
                    for g in &level.gens {
                        let image = g.apply(p);
                        let to = level.transversal[image as usize]
                            .as_ref()
                            .expect("orbit is closed");
                        let schreier = rep.compose(g).compose(&to.inverse());
                        if !schreier.is_identity() && !self.contains_from(li + 1, &schreier) {
                            new_below.push(schreier);
                        }
                    }
                }
            }
            if new_below.is_empty() {
                return;
            }
            for s in new_below {
                if !self.contains_from(li + 1, &s) {
                    self.extend(li + 1, s);
                }
            }
            // adding generators below may not change this level; loop to recheck
            if self.levels[li].gens.is_empty() {
                return;
            }
            // fixed point reached when all Schreier generators sift to identity
            let mut all_ok = true;
            {
                let level = &self.levels[li];
                'outer: for p in 0..self.degree as u16 {
                    let Some(rep) = &level.transversal[p as usize] else {
                        continue;
                    };
                    for g in &level.gens {
                        let image = g.apply(p);
                        let to = level.transversal[image as usize].as_ref().unwrap();
                        let schreier = rep.compose(g).compose(&to.inverse());
                        if !schreier.is_identity() && !self.contains_from(li + 1, &schreier) {
                            all_ok = false;
                            break 'outer;
                        }
                    }
                }
            }
            if all_ok {
                return;
            }
        }
    }

    fn contains_from(&self, from: usize, p: &Permutation) -> bool {
        let mut cur = p.clone();
        for level in &self.levels[from..] {
            if cur.is_identity() {
                return true;
            }
            let image = cur.apply(level.base);
            match &level.transversal[image as usize] {
                Some(t) => cur = cur.compose(&t.inverse()),
                None => return false,
            }
        }
        cur.is_identity()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(s: &str, d: usize) -> Permutation {
        Permutation::parse_cycles(s, d).unwrap()
    }

    #[test]
    fn orders_of_standard_groups() {
        let s5 = StabChain::new(&[perm("(1 2 3 4 5)", 5), perm("(1 2)", 5)], 5);
        assert_eq!(s5.order(), 120);
        let a5 = StabChain::new(&[perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)], 5);
        assert_eq!(a5.order(), 60);
        let a7 = StabChain::new(&[perm("(1 2 3 4 5 6 7)", 7), perm("(1 2 3)", 7)], 7);
        assert_eq!(a7.order(), 2520);
        let psl = StabChain::new(&[perm("(3 6 7)(4 5 8)", 8), perm("(1 8 2)(4 5 6)", 8)], 8);
        assert_eq!(psl.order(), 168);
        let s4z2 = StabChain::new(
            &[
                perm("(1 2)", 6),
                perm("(1 3)", 6),
                perm("(1 4)", 6),
                perm("(5 6)", 6),
            ],
            6,
        );
        assert_eq!(s4z2.order(), 48);
    }

    #[test]
    fn membership() {
        let a5 = StabChain::new(&[perm("(1 2 3 4 5)", 5), perm("(1 2 3)", 5)], 5);
        assert!(a5.contains(&perm("(1 2)(3 4)", 5)));
        assert!(!a5.contains(&perm("(1 2)", 5)));
        assert!(a5.contains(&Permutation::identity(5)));
    }
}
