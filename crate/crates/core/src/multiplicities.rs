//! Closed-form invariant dimensions for triples of two-row partitions.
//!
//! For `lam, mu, nu` partitions of `d` with at most two rows, set
//! `f = max(lam2, mu2, nu2)` and `e = lam2 + mu2 + nu2`. Then
//! `dim([lam] (x) [mu] (x) [nu])^{Sigma_d}` is given by a three-branch rule
//! (see [`m_closed_form`]). The module also carries the exhaustive comparison
//! of that rule with the character-theoretic oracle in [`crate::symchar`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::symchar::{CharacterTable, Partition};
use crate::weights::{TripleWeight, Weight2};

/// Three two-row partitions of a common size.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoRowTriple {
    weights: TripleWeight,
    d: i64,
}

impl TwoRowTriple {
    pub fn new(lam: Weight2, mu: Weight2, nu: Weight2) -> Result<Self> {
        Self::from_triple(TripleWeight::new(lam, mu, nu))
    }

    pub fn from_triple(t: TripleWeight) -> Result<Self> {
        if !Self::admissible(&t) {
            return Err(Error::NotTwoRowTriple);
        }
        Ok(Self { weights: t, d: t.lam.size() })
    }

    /// Whether `t` consists of two-row partitions of equal size.
    pub fn admissible(t: &TripleWeight) -> bool {
        t.factors().iter().all(|w| w.is_two_row_partition())
            && t.lam.size() == t.mu.size()
            && t.lam.size() == t.nu.size()
    }

    pub fn weights(&self) -> TripleWeight {
        self.weights
    }

    pub fn degree(&self) -> i64 {
        self.d
    }

    /// `max(lam2, mu2, nu2)`.
    pub fn f(&self) -> i64 {
        self.weights.factors().iter().map(|w| w.b).max().unwrap_or(0)
    }

    /// `lam2 + mu2 + nu2`.
    pub fn e(&self) -> i64 {
        self.weights.factors().iter().map(|w| w.b).sum()
    }
}

/// The piecewise formula. Branches are tested in the order
/// `e < 2f`, then `e >= d - 1`, then `e < d - 1`.
pub fn m_closed_form(t: &TwoRowTriple) -> Result<u64> {
    let (d, e, f) = (t.degree(), t.e(), t.f());
    let value = if e < 2 * f {
        0
    } else if e >= d - 1 {
        if e % 2 == 1 && d % 2 == 0 {
            d / 2 - f
        } else {
            d / 2 - f + 1
        }
    } else {
        let half = (e + 1).div_euclid(2);
        if e % 2 == 1 {
            half - f
        } else {
            half - f + 1
        }
    };
    u64::try_from(value).map_err(|_| {
        Error::Internal(format!("closed form is negative ({value}) at {}", t.weights()))
    })
}

/// Convenience wrapper: the closed form on any triple, `Err` if it is not admissible.
pub fn m_of(t: TripleWeight) -> Result<u64> {
    m_closed_form(&TwoRowTriple::from_triple(t)?)
}

/// The two-row partitions `(d - k, k)` of `d`, `k = 0..=d/2`.
pub fn two_row_partitions(d: i64) -> Vec<Weight2> {
    (0..=d / 2).map(|k| Weight2::new(d - k, k)).collect()
}

/// Every ordered triple of two-row partitions of `d`.
pub fn two_row_triples(d: i64) -> Vec<TwoRowTriple> {
    let parts = two_row_partitions(d);
    let mut out = Vec::with_capacity(parts.len().pow(3));
    for &lam in &parts {
        for &mu in &parts {
            for &nu in &parts {
                out.push(TwoRowTriple { weights: TripleWeight::new(lam, mu, nu), d });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub triple: TripleWeight,
    pub closed_form: Option<u64>,
    pub oracle: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OracleReport {
    pub d_max: usize,
    pub checked: usize,
    pub mismatches: Vec<Mismatch>,
}

impl OracleReport {
    pub fn first_discrepancy(&self) -> Option<&Mismatch> {
        self.mismatches.first()
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare [`m_closed_form`] with the character oracle on every triple of
/// two-row partitions of every `d <= d_max`.
pub fn verify_against_oracle(table: &CharacterTable, d_max: usize) -> Result<OracleReport> {
    if d_max > table.max_degree() {
        return Err(Error::DegreeCapExceeded { degree: d_max, cap: table.max_degree() });
    }
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for d in 0..=d_max as i64 {
        for t in two_row_triples(d) {
            checked += 1;
            let w = t.weights();
            let closed = m_closed_form(&t).ok();
            let oracle = match (
                Partition::from_weight(w.lam),
                Partition::from_weight(w.mu),
                Partition::from_weight(w.nu),
            ) {
                (Ok(a), Ok(b), Ok(c)) => table.kron_invariant_dim(&a, &b, &c).ok(),
                _ => None,
            };
            if closed.is_none() || closed != oracle {
                mismatches.push(Mismatch { triple: w, closed_form: closed, oracle });
            }
        }
    }
    Ok(OracleReport { d_max, checked, mismatches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symchar::schur_dim_gl2;

    fn triple(pairs: [(i64, i64); 3]) -> TwoRowTriple {
        TwoRowTriple::from_triple(TripleWeight::from_pairs(pairs)).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(m_closed_form(&triple([(1, 1); 3])).unwrap(), 0);
        assert_eq!(m_closed_form(&triple([(4, 4); 3])).unwrap(), 1);
        assert_eq!(m_closed_form(&triple([(4, 0); 3])).unwrap(), 1);
        assert_eq!(m_closed_form(&triple([(7, 5), (6, 6), (6, 6)])).unwrap(), 0);
    }

    #[test]
    fn rejects_non_two_row_input() {
        let bad = [
            TripleWeight::from_pairs([(2, 0), (1, 1), (3, 0)]),
            TripleWeight::from_pairs([(1, -1), (0, 0), (0, 0)]),
            TripleWeight::from_pairs([(1, 2), (3, 0), (3, 0)]),
        ];
        for t in bad {
            assert_eq!(TwoRowTriple::from_triple(t), Err(Error::NotTwoRowTriple));
        }
    }

    #[test]
    fn oracle_small_degrees() {
        let table = CharacterTable::default();
        let r0 = verify_against_oracle(&table, 0).unwrap();
        assert_eq!((r0.checked, r0.passed()), (1, true));
        assert_eq!(m_of(TripleWeight::uniform(0, 0)).unwrap(), 1);
        assert!(verify_against_oracle(&table, 2).unwrap().passed());
        let r8 = verify_against_oracle(&table, 8).unwrap();
        assert!(r8.passed(), "{:?}", r8.first_discrepancy());
    }

    #[test]
    fn oracle_cap_is_checked() {
        let table = CharacterTable::with_max_degree(4);
        assert!(verify_against_oracle(&table, 5).is_err());
    }

    fn binomial(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn graded_dimension_of_sym_v() {
        for d in 0..=10 {
            let total: u64 = two_row_triples(d)
                .iter()
                .map(|t| {
                    let dims: u64 = t
                        .weights()
                        .factors()
                        .iter()
                        .map(|&w| schur_dim_gl2(w).unwrap())
                        .product();
                    m_closed_form(t).unwrap() * dims
                })
                .sum();
            assert_eq!(total, binomial(d as u64 + 7, 7), "degree {d}");
        }
    }
}
