//! Pointwise characters in the Grothendieck group of admissible representations.
//!
//! Every query returns the multiplicity of a single irreducible
//! `S_lam A (x) S_mu B (x) S_nu C`. Localizations are limits of twisted copies
//! of `S`, evaluated with [`stabilized_limit`].

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::multiplicities::{m_closed_form, TwoRowTriple};
use crate::symchar::schur_dim_gl2;
use crate::weights::{dominant_triples_in_range, TripleWeight, DET_V_SHIFT};

/// Largest `r` tried before a limit is declared unstable.
pub const STABILIZATION_CAP: i64 = 512;

const STABILIZATION_OFFSET: i64 = 8;

/// `lim_{r -> oo} seq(r)`, accepted once three consecutive values agree.
///
/// Starts at `r0 = max|entry of w| + 8` and moves `r0` up by 8 on each failure.
pub fn stabilized_limit(w: &TripleWeight, mut seq: impl FnMut(i64) -> Result<i64>) -> Result<i64> {
    let mut r0 = w.max_abs() + STABILIZATION_OFFSET;
    while r0 + 2 <= STABILIZATION_CAP {
        let v0 = seq(r0)?;
        if seq(r0 + 1)? == v0 && seq(r0 + 2)? == v0 {
            return Ok(v0);
        }
        r0 += STABILIZATION_OFFSET;
    }
    Err(Error::StabilizationNotReached { weight: *w, cap: STABILIZATION_CAP })
}

fn nonneg(value: i64, what: &str, w: &TripleWeight) -> Result<u64> {
    u64::try_from(value).map_err(|_| Error::Internal(format!("negative {what} multiplicity {value} at {w}")))
}

/// `Sym(V)`: the closed form on two-row partitions of equal size, zero elsewhere.
pub fn mult_sym_v(w: &TripleWeight) -> u64 {
    match TwoRowTriple::from_triple(*w) {
        // The closed form is non-negative on admissible input; an error here is a bug.
        Ok(t) => m_closed_form(&t).expect("closed form on admissible triple"),
        Err(_) => 0,
    }
}

/// `S = Sym(V*)`, which lives in non-positive weights.
pub fn mult_s(w: &TripleWeight) -> u64 {
    mult_sym_v(&w.dual())
}

/// `E = Sym(V) (x) det(V)`.
pub fn mult_e(w: &TripleWeight) -> u64 {
    mult_sym_v(&w.twist(-DET_V_SHIFT))
}

/// The localization `S_h`, as the limit of `S` twisted by `h^{-r}`.
pub fn mult_sh(w: &TripleWeight) -> Result<u64> {
    let v = stabilized_limit(w, |r| Ok(mult_s(&w.twist(-2 * r)) as i64))?;
    nonneg(v, "S_h", w)
}

/// `S_h * sqrt(h)`; `sqrt(h)` has weight `(-1,-1)^3`.
pub fn mult_sh_sqrt(w: &TripleWeight) -> Result<u64> {
    mult_sh(&w.twist(1))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NamedCharacter {
    S,
    SymV,
    E,
    Sh,
    ShSqrt,
}

impl NamedCharacter {
    pub const ALL: [NamedCharacter; 5] = [Self::S, Self::SymV, Self::E, Self::Sh, Self::ShSqrt];

    pub fn name(self) -> &'static str {
        match self {
            Self::S => "S",
            Self::SymV => "SymV",
            Self::E => "E",
            Self::Sh => "S_h",
            Self::ShSqrt => "S_h_sqrt",
        }
    }

    pub fn mult(self, w: &TripleWeight) -> Result<u64> {
        match self {
            Self::S => Ok(mult_s(w)),
            Self::SymV => Ok(mult_sym_v(w)),
            Self::E => Ok(mult_e(w)),
            Self::Sh => mult_sh(w),
            Self::ShSqrt => mult_sh_sqrt(w),
        }
    }
}

impl fmt::Display for NamedCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for NamedCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Unknown { kind: "character", name: s.to_string() })
    }
}

/// A box of weights: every one of the six entries lies in `[lo, hi]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WeightBox {
    pub lo: i64,
    pub hi: i64,
}

impl WeightBox {
    pub fn new(lo: i64, hi: i64) -> Self {
        Self { lo, hi }
    }

    pub fn contains(&self, w: &TripleWeight) -> bool {
        w.to_six().iter().all(|&x| self.lo <= x && x <= self.hi)
    }

    /// Componentwise dominant triples in the box, in lexicographic order.
    pub fn dominant_triples(&self) -> Vec<TripleWeight> {
        if self.lo > self.hi {
            return Vec::new();
        }
        dominant_triples_in_range(self.lo, self.hi)
    }
}

/// A finitely supported element of the Grothendieck group, zero terms omitted.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GLClass {
    coeffs: BTreeMap<TripleWeight, i64>,
    pub window: Option<WeightBox>,
}

impl GLClass {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, w: TripleWeight, coeff: i64) {
        let entry = self.coeffs.entry(w).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&w);
        }
    }

    pub fn get(&self, w: &TripleWeight) -> i64 {
        self.coeffs.get(w).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&TripleWeight, &i64)> {
        self.coeffs.iter()
    }

    /// `sum coeff * dim`, the virtual dimension of the class.
    pub fn total_dimension(&self) -> Result<i64> {
        self.coeffs.iter().try_fold(0i64, |acc, (w, &c)| {
            let dim: u64 = w
                .factors()
                .iter()
                .map(|&x| schur_dim_gl2(x))
                .product::<Result<u64>>()?;
            Ok(acc + c * dim as i64)
        })
    }
}

impl Serialize for GLClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.coeffs.len()))?;
        for (w, c) in &self.coeffs {
            let key = serde_json::to_string(w).map_err(serde::ser::Error::custom)?;
            map.serialize_entry(&key, c)?;
        }
        map.end()
    }
}

/// All nonzero multiplicities of `id` at dominant weights inside `window`.
pub fn dump_window(id: NamedCharacter, window: WeightBox) -> Result<GLClass> {
    let mut class = GLClass { window: Some(window), ..GLClass::default() };
    for w in window.dominant_triples() {
        let m = id.mult(&w)?;
        if m != 0 {
            class.add(w, m as i64);
        }
    }
    Ok(class)
}
