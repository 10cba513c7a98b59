//! Multiplicities in the Euler characteristic of the pushforward of the
//! structure sheaf of `O_1` from its Segre desingularization.
//!
//! The multiplicity of `S_lam A (x) S_mu B (x) S_nu C` is
//!
//! ```text
//! lim_r  - sum_{I,J,K in {1},{2}}  < Sym(V), S_{(lam - 4)(r,I)} A (x) S_{(mu - 4)(r,J)} B (x) S_{(nu - 4)(r,K)} C >
//! ```
//!
//! where `pi(r, {1}) = pi + (r, 0)` and `pi(r, {2}) = pi + (0, r)`, and each
//! non-dominant factor is rewritten by Bott's rule. All eight terms are summed.

use crate::characters::{mult_sym_v, stabilized_limit};
use crate::error::{Error, Result};
use crate::weights::{TripleWeight, Weight2, DET_V_SHIFT};

/// One of the two singleton subsets of `{1, 2}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Slot {
    First,
    Second,
}

impl Slot {
    pub const BOTH: [Slot; 2] = [Slot::First, Slot::Second];

    /// `(r^I)`: `r` in the chosen slot and zero in the other.
    pub fn shift(self, r: i64) -> Weight2 {
        match self {
            Slot::First => Weight2::new(r, 0),
            Slot::Second => Weight2::new(0, r),
        }
    }
}

/// A choice `(I, J, K)` together with the shift `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftIndex {
    pub slots: [Slot; 3],
    pub r: i64,
}

impl ShiftIndex {
    pub fn all(r: i64) -> impl Iterator<Item = ShiftIndex> {
        Slot::BOTH.into_iter().flat_map(move |i| {
            Slot::BOTH.into_iter().flat_map(move |j| {
                Slot::BOTH.into_iter().map(move |k| ShiftIndex { slots: [i, j, k], r })
            })
        })
    }
}

/// Signed `Sym(V)` multiplicity of a single term, after Bott normalization.
pub fn term(w: &TripleWeight, index: ShiftIndex) -> i64 {
    let mut sign = 1i64;
    let mut normalized = [Weight2::new(0, 0); 3];
    for (slot, (factor, out)) in index.slots.iter().zip(w.factors().iter().zip(normalized.iter_mut())) {
        let s = slot.shift(index.r);
        let shifted = factor.twist(-DET_V_SHIFT).shift(s.a, s.b);
        let bott = shifted.bott_normalize();
        if bott.sign == 0 {
            return 0;
        }
        sign *= i64::from(bott.sign);
        *out = bott.normalized;
    }
    sign * mult_sym_v(&TripleWeight::from(normalized)) as i64
}

/// `-sum` of the eight terms at a fixed `r`.
pub fn euler_sum(w: &TripleWeight, r: i64) -> i64 {
    -ShiftIndex::all(r).map(|idx| term(w, idx)).sum::<i64>()
}

pub fn euler_mult(w: &TripleWeight) -> Result<i64> {
    if !w.is_dominant() {
        return Err(Error::NotDominant(
            w.factors().into_iter().find(|x| !x.is_dominant()).expect("some factor is not dominant"),
        ));
    }
    stabilized_limit(w, |r| Ok(euler_sum(w, r)))
}
