//! Classification of product-quotient surfaces of general type with `p_g = 0`.
//!
//! A product-quotient surface is the minimal resolution `S` of
//! `X = (C_1 x C_2)/G`, where `G` is a finite group acting diagonally on a
//! product of curves of genus at least two. For `p_g = q = 0` the whole
//! classification reduces to finite combinatorics: enumerate baskets of
//! cyclic quotient singularities with prescribed invariant `B = 3(8 - K^2)`,
//! enumerate branching signatures compatible with each basket, search finite
//! groups for pairs of spherical generating vectors, verify the induced
//! singularities, reduce modulo Hurwitz moves and automorphisms, and compute
//! the first homology of each surviving surface.
//!
//! The crate is organised along those pipeline stages:
//!
//! - [`singtypes`] — arithmetic of cyclic quotient singularities `1/n(1,a)`
//! - [`baskets`] — basket enumeration with the integrality test
//! - [`signatures`] — signature enumeration and the numerology `Theta`, `alpha`, `|G|`
//! - [`groups`] — a self-contained permutation-group engine plus the group catalogue
//! - [`genvec`] — spherical generating vectors, Hurwitz orbits, equivalence classes
//! - [`surface`] — induced singularities, numerical invariants, minimality
//! - [`homology`] — Reidemeister-Schreier rewriting and Smith normal form for `H_1`
//! - [`pipeline`] — the end-to-end classification driver and report formats

pub mod baskets;
pub mod fixtures;
pub mod genvec;
pub mod groups;
pub mod homology;
pub mod pipeline;
pub mod signatures;
pub mod singtypes;
pub mod surface;

pub use singtypes::{HJString, QuotSing};
