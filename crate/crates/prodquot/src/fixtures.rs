//! Shipped generating-vector data and its verification.
//!
//! Each fixture is a pair of spherical generating vectors over a catalogue
//! group together with the expected basket, `K^2` and first homology.
//! Entries are written either in cycle notation or as words in the group's
//! named generators:
//!
//! ```text
//! fixture k2=5; group=A5; basket={1/3, 2/3}; h1=Z2 x Z10
//! s1 (1 5 2); (1 4)(2 3); (2 3)(4 5); (1 4)(2 5)
//! s2 (1 5 4 2 3); (1 3 4 2 5); (2 5 4)
//! ```

use std::sync::Arc;

use crate::baskets::Basket;
use crate::genvec::GenVector;
use crate::groups::{Catalogue, ElementId, FiniteGroup, GroupError, Permutation};
use crate::homology::AbelianInvariants;
use crate::signatures::Signature;
use crate::singtypes::QuotSing;
use crate::surface::Minimality;

#[derive(Clone, Debug)]
pub struct Fixture {
    pub k2: i64,
    pub group: String,
    pub basket: Basket,
    pub h1: AbelianInvariants,
    pub minimal: Minimality,
    pub s1: Vec<String>,
    pub s2: Vec<String>,
}

/// Parse a fixtures file: stanzas of a `fixture` header line followed by
/// `s1` and `s2` lines; `#` starts a comment.
pub fn parse_fixtures(text: &str) -> Result<Vec<Fixture>, GroupError> {
    let mut out: Vec<Fixture> = Vec::new();
    for raw in text.lines() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(rest) = line.strip_prefix("fixture ") {
            let mut k2 = None;
            let mut group = None;
            let mut basket = None;
            let mut h1 = None;
            let mut minimal = Minimality::GuaranteedMinimal;
            for field in rest.split(';') {
                let (key, value) = field
                    .split_once('=')
                    .ok_or_else(|| GroupError::CatalogueParse(format!("bad field `{field}`")))?;
                let value = value.trim();
                match key.trim() {
                    "k2" => k2 = value.parse().ok(),
                    "group" => group = Some(value.to_string()),
                    "basket" => basket = Basket::parse(value).ok(),
                    "h1" => h1 = AbelianInvariants::parse(value),
                    "minimal" => {
                        minimal = if value == "unknown" {
                            Minimality::Unknown
                        } else {
                            Minimality::GuaranteedMinimal
                        }
                    }
                    other => {
                        return Err(GroupError::CatalogueParse(format!(
                            "unknown fixture field `{other}`"
                        )))
                    }
                }
            }
            out.push(Fixture {
                k2: k2.ok_or_else(|| GroupError::CatalogueParse("missing k2".into()))?,
                group: group.ok_or_else(|| GroupError::CatalogueParse("missing group".into()))?,
                basket: basket
                    .ok_or_else(|| GroupError::CatalogueParse("missing basket".into()))?,
                h1: h1.ok_or_else(|| GroupError::CatalogueParse("missing h1".into()))?,
                minimal,
                s1: Vec::new(),
                s2: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("s1 ") {
            let fixture = out
                .last_mut()
                .ok_or_else(|| GroupError::CatalogueParse("s1 before fixture".into()))?;
            fixture.s1 = rest.split(';').map(|s| s.trim().to_string()).collect();
        } else if let Some(rest) = line.strip_prefix("s2 ") {
            let fixture = out
                .last_mut()
                .ok_or_else(|| GroupError::CatalogueParse("s2 before fixture".into()))?;
            fixture.s2 = rest.split(';').map(|s| s.trim().to_string()).collect();
        } else {
            return Err(GroupError::CatalogueParse(format!(
                "cannot parse fixture line `{line}`"
            )));
        }
    }
    Ok(out)
}

/// The fixtures shipped with the crate.
pub fn builtin_fixtures() -> Vec<Fixture> {
    parse_fixtures(include_str!("../data/fixtures/generating_vectors.fix"))
        .expect("shipped fixtures parse")
}

fn parse_entry(g: &FiniteGroup, text: &str) -> Result<ElementId, GroupError> {
    let perm = if text.starts_with('(') {
        Permutation::parse_cycles(text, g.degree())?
    } else {
        g.evaluate_word(text)?
    };
    g.id_of(&perm)
}

impl Fixture {
    /// Resolve the textual entries inside the named catalogue group.
    pub fn resolve(
        &self,
        catalogue: &Catalogue,
    ) -> Result<(Arc<FiniteGroup>, GenVector, GenVector), GroupError> {
        let g = catalogue.group(&self.group)?;
        let v1 = self
            .s1
            .iter()
            .map(|s| parse_entry(&g, s))
            .collect::<Result<Vec<_>, _>>()?;
        let v2 = self
            .s2
            .iter()
            .map(|s| parse_entry(&g, s))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((g, v1, v2))
    }

    /// The signatures read off the element orders.
    pub fn signatures(&self, g: &FiniteGroup, v1: &[ElementId], v2: &[ElementId]) -> (Signature, Signature) {
        let sig = |v: &[ElementId]| {
            Signature::new(v.iter().map(|&e| g.order_of(e) as i64))
        };
        (sig(v1), sig(v2))
    }
}

/// Full verification of one fixture: vector validity, singularity check
/// (and rejection of a mutated basket), numerical invariants, minimality,
/// and optionally the first homology.
pub fn verify(fixture: &Fixture, catalogue: &Catalogue, with_h1: bool) -> Result<(), String> {
    let (g, v1, v2) = fixture
        .resolve(catalogue)
        .map_err(|e| format!("resolve: {e}"))?;
    for v in [&v1, &v2] {
        let prod = v.iter().fold(g.identity(), |acc, &e| g.mul(acc, e));
        if prod != g.identity() {
            return Err("product of entries is not the identity".into());
        }
        if !g.generates(v) {
            return Err("entries do not generate the group".into());
        }
    }
    if !crate::surface::check_sings(&g, &fixture.basket, &v1, &v2) {
        return Err(format!("singularities do not match basket {}", fixture.basket));
    }
    if crate::surface::check_sings(&g, &mutate_basket(&fixture.basket), &v1, &v2) {
        return Err("mutated basket was not rejected".into());
    }
    let (t1, t2) = fixture.signatures(&g, &v1, &v2);
    let inv = crate::surface::compute_invariants(&g, &fixture.basket, &t1, &t2);
    if inv.k2 != fixture.k2 {
        return Err(format!("K^2 = {} but fixture says {}", inv.k2, fixture.k2));
    }
    let minimality = crate::surface::classify_minimality(&fixture.basket);
    if minimality != fixture.minimal {
        return Err(format!(
            "minimality {minimality} but fixture says {}",
            fixture.minimal
        ));
    }
    if with_h1 {
        let got = crate::homology::h1(&g, &v1, &v2);
        if got.free_rank != 0 || got != fixture.h1 {
            return Err(format!(
                "H1 = {} but fixture says {}",
                got.table_form(),
                fixture.h1.table_form()
            ));
        }
    }
    Ok(())
}

/// A deterministically mutated basket, guaranteed inequivalent to the input;
/// used to exercise the rejection path of the singularity check.
pub fn mutate_basket(b: &Basket) -> Basket {
    let half = QuotSing::new(1, 2).unwrap();
    let third = QuotSing::new(1, 3).unwrap();
    if b.is_empty() {
        return Basket::from_sings([half]);
    }
    let mut sings: Vec<QuotSing> = b.sings().to_vec();
    sings[0] = if sings[0] == half { third } else { half };
    let mutated = Basket::from_sings(sings);
    assert!(!mutated.equivalent(b), "mutation must change the basket");
    mutated
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_fixtures_parse_and_resolve() {
        let cat = Catalogue::builtin().unwrap();
        let fixtures = builtin_fixtures();
        assert!(fixtures.len() >= 30);
        for f in &fixtures {
            let (g, v1, v2) = f.resolve(&cat).unwrap_or_else(|e| {
                panic!("fixture over {} fails to resolve: {e}", f.group)
            });
            // full vectors: product is the identity, entries generate
            for v in [&v1, &v2] {
                let prod = v.iter().fold(g.identity(), |acc, &e| g.mul(acc, e));
                assert_eq!(prod, g.identity(), "product not identity over {}", f.group);
                assert!(g.generates(v), "entries do not generate {}", f.group);
                // arranged against the sorted signature
                assert!(
                    v.windows(2).all(|w| g.order_of(w[0]) >= g.order_of(w[1])),
                    "orders not descending over {}",
                    f.group
                );
            }
        }
    }

    #[test]
    fn mutation_changes_every_fixture_basket() {
        for f in builtin_fixtures() {
            let m = mutate_basket(&f.basket);
            assert!(!m.equivalent(&f.basket));
        }
    }
}
